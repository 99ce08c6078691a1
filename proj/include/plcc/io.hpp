#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "plcc/errors.hpp"
#include "plcc/estimate.hpp"
#include "plcc/simulate.hpp"
#include "plcc/study.hpp"
#include "plcc/vine.hpp"

namespace plcc {

using Json = nlohmann::ordered_json;

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---- jump CSV -------------------------------------------------------------

inline void write_jumps_csv(std::ostream& os, const JumpSeries& s) {
    os << "time";
    for (int k = 1; k <= s.dim; ++k) os << ",x" << k;
    os << '\n';
    for (std::size_t e = 0; e < s.count(); ++e) {
        os << format_double(s.times[e]);
        for (double x : s.row(e)) os << ',' << format_double(x);
        os << '\n';
    }
}

namespace detail {

inline double parse_double(std::string_view field, std::size_t line) {
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
        throw format_error("line " + std::to_string(line) + ": cannot parse number '" + std::string(field) + "'");
    return x;
}

inline std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(',', start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace detail

// Parses a jump CSV. `dim` (if given) must match the header. An input with no
// header at all yields an empty series of dimension `dim`.
inline JumpSeries read_jumps_csv(std::istream& is, double horizon, std::optional<int> dim = std::nullopt) {
    JumpSeries s;
    s.horizon = horizon;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = detail::split_commas(line);
        if (!have_header) {
            if (fields.size() < 2 || fields[0] != "time")
                throw format_error("line " + std::to_string(lineno) + ": header must be time,x1,...,xd");
            for (std::size_t k = 1; k < fields.size(); ++k)
                if (fields[k] != "x" + std::to_string(k))
                    throw format_error("line " + std::to_string(lineno) + ": header must be time,x1,...,xd");
            s.dim = static_cast<int>(fields.size()) - 1;
            if (dim && *dim != s.dim)
                throw format_error("jump file has " + std::to_string(s.dim) + " dimensions, expected " +
                                   std::to_string(*dim));
            have_header = true;
            continue;
        }
        if (static_cast<int>(fields.size()) != s.dim + 1)
            throw format_error("line " + std::to_string(lineno) + ": expected " + std::to_string(s.dim + 1) + " fields");
        const double t = detail::parse_double(fields[0], lineno);
        if (!(t >= 0.0 && t <= horizon))
            throw format_error("line " + std::to_string(lineno) + ": time outside [0, horizon]");
        if (!s.times.empty() && t < s.times.back())
            throw format_error("line " + std::to_string(lineno) + ": events not sorted by time");
        s.times.push_back(t);
        for (int k = 1; k <= s.dim; ++k) {
            const double x = detail::parse_double(fields[k], lineno);
            if (!(x > 0.0 && std::isfinite(x)))
                throw format_error("line " + std::to_string(lineno) + ": jump sizes must be positive and finite");
            s.sizes.push_back(x);
        }
    }
    if (!have_header) s.dim = dim.value_or(0);
    return s;
}

// ---- vine JSON ------------------------------------------------------------

inline Json to_json(const VineSpec& v) {
    Json trees = Json::array();
    for (const auto& tree : v.trees) {
        Json edges = Json::array();
        for (const auto& e : tree) {
            Json j;
            j["pair"] = {e.label.first, e.label.second};
            j["given"] = e.label.given;
            j["family"] = family_name(e.family);
            if (const auto* c = std::get_if<ClaytonLevy>(&e.family)) {
                j["param"] = c->theta;
            } else if (const auto* g = std::get_if<GaussianCopula>(&e.family)) {
                j["param"] = g->rho;
            } else {
                j["param"] = nullptr;
            }
            edges.push_back(std::move(j));
        }
        trees.push_back(std::move(edges));
    }
    Json j;
    j["dimension"] = v.dim;
    j["kind"] = to_string(v.kind);
    j["order"] = v.order;
    j["trees"] = std::move(trees);
    return j;
}

namespace detail {

inline void check_keys(const Json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!j.is_object()) throw format_error(where + ": expected an object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw format_error(where + ": unknown key '" + key + "'");
    }
}

template <typename T>
T get_field(const Json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw format_error(where + ": missing key '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw format_error(where + ": key '" + key + "' has the wrong type");
    }
}

inline double get_number(const Json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number()) throw format_error(where + ": key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

}  // namespace detail

inline VineSpec vine_from_json(const Json& j) {
    detail::check_keys(j, {"dimension", "kind", "order", "trees"}, "vine");
    VineSpec v;
    v.dim = detail::get_field<int>(j, "dimension", "vine");
    const auto kind = detail::get_field<std::string>(j, "kind", "vine");
    if (kind == "D") {
        v.kind = VineKind::D;
    } else if (kind == "C") {
        v.kind = VineKind::C;
    } else {
        throw format_error("vine: kind must be \"D\" or \"C\"");
    }
    v.order = detail::get_field<std::vector<int>>(j, "order", "vine");
    if (!j.contains("trees") || !j["trees"].is_array()) throw format_error("vine: trees must be an array");
    for (const auto& tree : j["trees"]) {
        if (!tree.is_array()) throw format_error("vine: each tree must be an array of edges");
        std::vector<VineEdge> edges;
        for (const auto& e : tree) {
            detail::check_keys(e, {"pair", "given", "family", "param"}, "vine edge");
            const auto pair = detail::get_field<std::vector<int>>(e, "pair", "vine edge");
            if (pair.size() != 2) throw format_error("vine edge: pair must hold two labels");
            VineEdge edge;
            edge.label.first = pair[0];
            edge.label.second = pair[1];
            edge.label.given = e.contains("given") ? detail::get_field<std::vector<int>>(e, "given", "vine edge")
                                                   : std::vector<int>{};
            const auto fam = detail::get_field<std::string>(e, "family", "vine edge");
            if (fam == "clayton") {
                edge.family = ClaytonLevy{detail::get_number(e, "param", "vine edge")};
            } else if (fam == "gaussian") {
                edge.family = GaussianCopula{detail::get_number(e, "param", "vine edge")};
            } else if (fam == "independence") {
                edge.family = IndependenceCopula{};
            } else {
                throw format_error("vine edge: unknown family '" + fam + "'");
            }
            edges.push_back(std::move(edge));
        }
        v.trees.push_back(std::move(edges));
    }
    return v;
}

// ---- config JSON ----------------------------------------------------------

inline Json to_json(const StudyConfig& c) {
    Json j;
    if (c.scenario) j["scenario"] = std::string(1, *c.scenario);
    j["epsilon"] = c.epsilon;
    j["horizon"] = c.horizon;
    j["reps"] = c.reps;
    j["seed"] = c.seed;
    j["safety"] = c.safety;
    j["mc_samples"] = c.mc_samples;
    if (c.vine) j["vine"] = to_json(*c.vine);
    if (c.margins) {
        Json m = Json::array();
        for (const auto& p : *c.margins) m.push_back({{"alpha", p.alpha}, {"beta", p.beta}});
        j["margins"] = std::move(m);
    }
    return j;
}

inline StudyConfig config_from_json(const Json& j) {
    detail::check_keys(j, {"scenario", "epsilon", "horizon", "reps", "seed", "safety", "mc_samples", "vine", "margins"},
                       "config");
    StudyConfig c;
    if (j.contains("scenario")) {
        const auto s = detail::get_field<std::string>(j, "scenario", "config");
        if (s.size() != 1) throw format_error("config: scenario must be one of \"H\", \"M\", \"L\"");
        c.scenario = s[0];
    }
    if (j.contains("epsilon")) c.epsilon = detail::get_number(j, "epsilon", "config");
    if (j.contains("horizon")) c.horizon = detail::get_number(j, "horizon", "config");
    if (j.contains("reps")) c.reps = detail::get_field<int>(j, "reps", "config");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw format_error("config: seed must be a nonnegative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("safety")) c.safety = detail::get_number(j, "safety", "config");
    if (j.contains("mc_samples")) {
        if (!j["mc_samples"].is_number_unsigned()) throw format_error("config: mc_samples must be a positive integer");
        c.mc_samples = j["mc_samples"].get<std::size_t>();
    }
    if (j.contains("vine")) c.vine = vine_from_json(j["vine"]);
    if (j.contains("margins")) {
        if (!j["margins"].is_array()) throw format_error("config: margins must be an array");
        std::vector<StableParams> m;
        for (const auto& e : j["margins"]) {
            detail::check_keys(e, {"alpha", "beta"}, "config margin");
            m.push_back({detail::get_number(e, "alpha", "config margin"), detail::get_number(e, "beta", "config margin")});
        }
        c.margins = std::move(m);
    }
    try {
        check(c);
    } catch (const std::exception& e) {
        throw format_error(e.what());
    }
    return c;
}

inline StudyConfig read_config(std::istream& is) {
    Json j;
    try {
        j = Json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw format_error(std::string("config: invalid JSON: ") + e.what());
    }
    return config_from_json(j);
}

// ---- report JSON ----------------------------------------------------------

namespace detail {

inline Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline double number_or_nan(const Json& j) { return j.is_number() ? j.get<double>() : std::numeric_limits<double>::quiet_NaN(); }

}  // namespace detail

inline Json to_json(const EstimationReport& r) {
    Json margins = Json::array();
    for (const auto& m : r.marginals) {
        Json j;
        j["label"] = m.label;
        j["alpha"] = m.params ? Json(m.params->alpha) : Json(nullptr);
        j["beta"] = m.params ? Json(m.params->beta) : Json(nullptr);
        j["count"] = m.count;
        j["clamped"] = m.clamped;
        j["note"] = m.note;
        margins.push_back(std::move(j));
    }
    Json trees = Json::array();
    for (const auto& tree : r.trees) {
        Json edges = Json::array();
        for (const auto& e : tree) {
            Json j;
            j["tree"] = e.tree;
            j["index"] = e.index;
            j["pair"] = {e.label.first, e.label.second};
            j["given"] = e.label.given;
            j["family"] = e.family;
            j["param"] = e.param ? detail::number_or_null(*e.param) : Json(nullptr);
            j["fitted"] = e.fitted;
            j["count"] = e.count;
            j["loglik"] = detail::number_or_null(e.loglik);
            j["normalizer"] = e.normalizer ? detail::number_or_null(e.normalizer->value) : Json(nullptr);
            j["normalizer_se"] = e.normalizer ? detail::number_or_null(e.normalizer->std_error) : Json(nullptr);
            j["mc_samples"] = e.mc_samples;
            j["normalizer_flag"] = e.normalizer_flag;
            j["note"] = e.note;
            edges.push_back(std::move(j));
        }
        trees.push_back(std::move(edges));
    }
    Json j;
    j["marginals"] = std::move(margins);
    j["trees"] = std::move(trees);
    j["epsilon"] = r.epsilon;
    j["horizon"] = r.horizon;
    j["seed"] = r.seed;
    return j;
}

inline EstimationReport report_from_json(const Json& j) {
    detail::check_keys(j, {"marginals", "trees", "epsilon", "horizon", "seed"}, "report");
    EstimationReport r;
    try {
        for (const auto& m : j.at("marginals")) {
            MarginalEstimate me;
            me.label = m.at("label").get<int>();
            if (m.at("alpha").is_number()) me.params = StableParams{m["alpha"].get<double>(), m.at("beta").get<double>()};
            me.count = m.at("count").get<std::size_t>();
            me.clamped = m.at("clamped").get<bool>();
            me.note = m.at("note").get<std::string>();
            r.marginals.push_back(me);
        }
        for (const auto& tree : j.at("trees")) {
            std::vector<EdgeFit> edges;
            for (const auto& e : tree) {
                EdgeFit f;
                f.tree = e.at("tree").get<int>();
                f.index = e.at("index").get<int>();
                const auto pair = e.at("pair").get<std::vector<int>>();
                if (pair.size() != 2) throw format_error("report: pair must hold two labels");
                f.label = {pair[0], pair[1], e.at("given").get<std::vector<int>>()};
                f.family = e.at("family").get<std::string>();
                if (e.at("param").is_number()) f.param = e["param"].get<double>();
                f.fitted = e.at("fitted").get<bool>();
                f.count = e.at("count").get<std::size_t>();
                f.loglik = detail::number_or_nan(e.at("loglik"));
                if (e.at("normalizer").is_number())
                    f.normalizer = McEstimate{e["normalizer"].get<double>(), detail::number_or_nan(e.at("normalizer_se"))};
                f.mc_samples = e.at("mc_samples").get<std::size_t>();
                f.normalizer_flag = e.at("normalizer_flag").get<bool>();
                f.note = e.at("note").get<std::string>();
                edges.push_back(std::move(f));
            }
            r.trees.push_back(std::move(edges));
        }
        r.epsilon = j.at("epsilon").get<double>();
        r.horizon = j.at("horizon").get<double>();
        r.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("report: ") + e.what());
    }
    return r;
}

// ---- study tables -----------------------------------------------------------

inline void write_study_table(std::ostream& os, const StudyResult& res) {
    const std::string name = res.config.scenario ? std::string(1, *res.config.scenario) : "custom";
    os << "scenario,epsilon,tree,jumps,true_value,mean,bias,rmse\n";
    for (const auto& t : res.trees) {
        os << name << ',' << format_double(res.config.epsilon) << ',' << t.tree << ',' << format_double(t.jumps) << ','
           << format_double(t.true_value) << ',' << format_double(t.mean) << ',' << format_double(t.bias) << ','
           << format_double(t.rmse) << '\n';
    }
}

// One row per (replicate, edge); `estimate` is empty when the edge was not fitted.
inline void write_study_estimates(std::ostream& os, const StudyResult& res) {
    const std::string name = res.config.scenario ? std::string(1, *res.config.scenario) : "custom";
    os << "scenario,epsilon,replicate,tree,edge,label,count,estimate\n";
    for (std::size_t r = 0; r < res.replicates.size(); ++r) {
        for (const auto& tree : res.replicates[r].trees) {
            for (const auto& e : tree) {
                os << name << ',' << format_double(res.config.epsilon) << ',' << r << ',' << e.tree << ',' << e.index
                   << ",\"" << e.label.str() << "\"," << e.count << ',';
                if (e.fitted && e.param) os << format_double(*e.param);
                os << '\n';
            }
        }
    }
}

}  // namespace plcc
