#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "plcc/dist_copulas.hpp"
#include "plcc/errors.hpp"
#include "plcc/levy_copulas.hpp"
#include "plcc/random.hpp"

namespace plcc {

enum class VineKind { D, C };

inline std::string to_string(VineKind k) { return k == VineKind::D ? "D" : "C"; }

// Any bivariate building block. Tree 1 must hold Lévy copulas, every
// higher tree distributional copulas; validate() enforces the typing.
using EdgeFamily = std::variant<ClaytonLevy, GaussianCopula, IndependenceCopula>;

inline bool is_levy(const EdgeFamily& f) { return std::holds_alternative<ClaytonLevy>(f); }

inline std::string family_name(const EdgeFamily& f) {
    return std::visit([](const auto& c) { return family_name(c); }, f);
}

// Conditioned pair and conditioning set, as 1-based dimension labels.
struct EdgeLabel {
    int first = 0;
    int second = 0;
    std::vector<int> given;

    std::string str() const {
        std::string s = std::to_string(first) + "," + std::to_string(second);
        if (!given.empty()) {
            s += "|";
            for (std::size_t i = 0; i < given.size(); ++i) s += (i ? "," : "") + std::to_string(given[i]);
        }
        return s;
    }
};

struct VineEdge {
    EdgeLabel label;
    EdgeFamily family;
};

// trees[t-1] holds the d-t edges of tree t.
struct VineSpec {
    int dim = 0;
    VineKind kind = VineKind::D;
    std::vector<int> order;  // dimension labels in simulation order; for a C-vine order[0] is the root
    std::vector<std::vector<VineEdge>> trees;
};

// Positions (indices into the simulation order) joined by edge i of tree t.
//   D-vine: (i, i+t | i+1..i+t-1)
//   C-vine: (t-1, t+i | 0..t-2)
struct SlotPositions {
    int first;
    int second;
    std::vector<int> given;
};

inline SlotPositions slot_positions(VineKind kind, int t, int i) {
    SlotPositions s;
    if (kind == VineKind::D) {
        s.first = i;
        s.second = i + t;
        for (int g = i + 1; g < i + t; ++g) s.given.push_back(g);
    } else {
        s.first = t - 1;
        s.second = t + i;
        for (int g = 0; g < t - 1; ++g) s.given.push_back(g);
    }
    return s;
}

inline EdgeLabel slot_label(VineKind kind, std::span<const int> order, int t, int i) {
    const auto pos = slot_positions(kind, t, i);
    EdgeLabel l{order[pos.first], order[pos.second], {}};
    for (int g : pos.given) l.given.push_back(order[g]);
    std::sort(l.given.begin(), l.given.end());
    return l;
}

// Builds a spec with the canonical edge labels; families are listed per tree in slot order.
inline VineSpec make_vine(VineKind kind, std::vector<int> order, const std::vector<LevyCopula>& tree1,
                          const std::vector<std::vector<DistCopula>>& higher) {
    VineSpec s;
    s.dim = static_cast<int>(order.size());
    s.kind = kind;
    s.order = std::move(order);
    s.trees.resize(s.dim > 1 ? s.dim - 1 : 0);
    for (int t = 1; t < s.dim; ++t) {
        for (int i = 0; i < s.dim - t; ++i) {
            EdgeFamily fam = t == 1 ? EdgeFamily{std::get<ClaytonLevy>(tree1.at(i))}
                                    : std::visit([](const auto& c) { return EdgeFamily{c}; }, higher.at(t - 2).at(i));
            s.trees[t - 1].push_back({slot_label(kind, s.order, t, i), fam});
        }
    }
    return s;
}

// Every tree-1 edge carries `levy`, every higher edge `dist`.
inline VineSpec make_uniform_vine(VineKind kind, int dim, const LevyCopula& levy, const DistCopula& dist) {
    std::vector<int> order(dim);
    std::iota(order.begin(), order.end(), 1);
    std::vector<LevyCopula> t1(dim - 1, levy);
    std::vector<std::vector<DistCopula>> higher;
    for (int t = 2; t < dim; ++t) higher.emplace_back(dim - t, dist);
    return make_vine(kind, order, t1, higher);
}

struct Violation {
    int tree = 0;   // 1-based, 0 when the violation concerns the whole spec
    int edge = -1;  // index within the declared tree, -1 when not edge specific
    std::string message;
};

inline std::vector<Violation> validate(const VineSpec& spec) {
    std::vector<Violation> out;
    const int d = spec.dim;
    if (d < 2) {
        out.push_back({0, -1, "dimension must be at least 2"});
        return out;
    }
    std::vector<int> sorted = spec.order;
    std::sort(sorted.begin(), sorted.end());
    bool perm = static_cast<int>(sorted.size()) == d;
    for (int i = 0; perm && i < d; ++i) perm = sorted[i] == i + 1;
    if (!perm) {
        out.push_back({0, -1, "order must be a permutation of 1.." + std::to_string(d)});
        return out;
    }
    if (static_cast<int>(spec.trees.size()) != d - 1) {
        out.push_back({0, -1, "expected " + std::to_string(d - 1) + " trees, got " + std::to_string(spec.trees.size())});
    }
    const std::string kind = to_string(spec.kind) + "-vine";
    for (int t = 1; t <= std::min<int>(d - 1, static_cast<int>(spec.trees.size())); ++t) {
        const auto& tree = spec.trees[t - 1];
        if (static_cast<int>(tree.size()) != d - t) {
            out.push_back({t, -1, "tree " + std::to_string(t) + " must have " + std::to_string(d - t) + " edges, got " +
                                      std::to_string(tree.size())});
        }
        std::vector<bool> used(d - t, false);
        for (int e = 0; e < static_cast<int>(tree.size()); ++e) {
            const auto& edge = tree[e];
            if (t == 1 && !is_levy(edge.family)) {
                out.push_back({t, e, "tree 1 edge " + edge.label.str() + " must be a Levy copula, got " +
                                         family_name(edge.family)});
            }
            if (t > 1 && is_levy(edge.family)) {
                out.push_back({t, e, "tree " + std::to_string(t) + " edge " + edge.label.str() +
                                         " must be a distributional copula, got " + family_name(edge.family)});
            }
            const bool params_ok = std::visit([](const auto& c) { return c.valid(); }, edge.family);
            if (!params_ok) out.push_back({t, e, "edge " + edge.label.str() + " has an invalid parameter"});

            std::vector<int> given = edge.label.given;
            std::sort(given.begin(), given.end());
            int match = -1;
            for (int i = 0; i < d - t && match < 0; ++i) {
                const auto want = slot_label(spec.kind, spec.order, t, i);
                const bool same_pair = (want.first == edge.label.first && want.second == edge.label.second) ||
                                       (want.first == edge.label.second && want.second == edge.label.first);
                if (same_pair && want.given == given) match = i;
            }
            if (match < 0) {
                out.push_back({t, e, "edge " + edge.label.str() + " is not an edge of the " + kind + " on this order"});
            } else if (used[match]) {
                out.push_back({t, e, "edge " + edge.label.str() + " is declared twice"});
            } else {
                used[match] = true;
            }
        }
    }
    return out;
}

class invalid_vine : public std::invalid_argument {
public:
    explicit invalid_vine(std::vector<Violation> v)
        : std::invalid_argument(describe(v)), violations_(std::move(v)) {}

    const std::vector<Violation>& violations() const { return violations_; }

private:
    static std::string describe(const std::vector<Violation>& v) {
        std::string s = "invalid vine specification";
        for (const auto& x : v) s += "; " + x.message;
        return s;
    }

    std::vector<Violation> violations_;
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// Running mean and variance from sums of y - y_first. Draws that are all
// close to 1 keep their small deficits, which a plain running sum rounds away.
class MeanAccumulator {
public:
    void add(double y) {
        if (n_ == 0) shift_ = y;
        const double d = y - shift_;
        ++n_;
        s1_ += d;
        s2_ += d * d;
    }

    // k draws that contributed exactly zero
    void add_zeros(std::size_t k) {
        if (k == 0) return;
        if (n_ == 0) shift_ = 0.0;
        const double kd = static_cast<double>(k);
        n_ += k;
        s1_ -= kd * shift_;
        s2_ += kd * shift_ * shift_;
    }

    std::size_t count() const { return n_; }

    // estimate of scale * E[y] with its standard error
    McEstimate scaled(double scale) const {
        const double n = static_cast<double>(n_);
        const double mean = shift_ + s1_ / n;
        const double var = n_ > 1 ? std::max(0.0, (s2_ - s1_ * s1_ / n) / (n - 1.0)) : std::numeric_limits<double>::infinity();
        return {scale * mean, scale * std::sqrt(var / n)};
    }

private:
    std::size_t n_ = 0;
    double shift_ = 0.0;
    double s1_ = 0.0;
    double s2_ = 0.0;
};

// Arguments of the top edge of a chain when a new last coordinate is appended,
// as normal scores: Phi^-1 F_{last|top-conditioning}(x) and Phi^-1 of the
// conditioning margin F_{other|...}.
struct TopArgs {
    double target;
    double given;
};

// A validated pair Lévy copula construction. Coordinates passed to the
// evaluation methods are indexed by dimension label (x1..xd) unless the
// method name says otherwise; the recursions themselves run over positions
// in the simulation order.
class PairLevyCopula {
public:
    explicit PairLevyCopula(const VineSpec& spec) {
        auto v = validate(spec);
        if (!v.empty()) throw invalid_vine(std::move(v));
        spec_.dim = spec.dim;
        spec_.kind = spec.kind;
        spec_.order = spec.order;
        spec_.trees.resize(spec.dim - 1);
        levy_.resize(spec.dim - 1);
        dist_.resize(spec.dim > 2 ? spec.dim - 2 : 0);
        for (int t = 1; t < spec.dim; ++t) {
            spec_.trees[t - 1].resize(spec.dim - t);
            if (t > 1) dist_[t - 2].resize(spec.dim - t);
            for (const auto& edge : spec.trees[t - 1]) {
                const int i = slot_of(t, edge.label);
                spec_.trees[t - 1][i] = {slot_label(spec.kind, spec.order, t, i), edge.family};
                if (t == 1) {
                    levy_[i] = std::get<ClaytonLevy>(edge.family);
                } else {
                    dist_[t - 2][i] = std::visit(
                        [](const auto& c) -> DistCopula {
                            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, ClaytonLevy>) {
                                throw std::logic_error("unreachable");
                            } else {
                                return c;
                            }
                        },
                        edge.family);
                }
            }
        }
    }

    int dim() const { return spec_.dim; }
    VineKind kind() const { return spec_.kind; }
    const std::vector<int>& order() const { return spec_.order; }
    // Canonical spec: edges sorted into slot order with canonical labels.
    const VineSpec& spec() const { return spec_; }

    const LevyCopula& levy_edge(int i) const { return levy_[i]; }
    const DistCopula& dist_edge(int t, int i) const { return dist_[t - 2][i]; }
    const EdgeFamily& edge_family(int t, int i) const { return spec_.trees[t - 1][i].family; }

    PairLevyCopula with_edge(int t, int i, const EdgeFamily& fam) const {
        VineSpec s = spec_;
        s.trees.at(t - 1).at(i).family = fam;
        return PairLevyCopula(s);
    }

    // Sub-construction on a set of positions whose margin is again a vine of
    // the same kind: a contiguous block for a D-vine, a prefix plus one further
    // position for a C-vine.
    PairLevyCopula sub_vine(std::span<const int> positions) const {
        const int m = static_cast<int>(positions.size());
        if (m < 2) throw domain_error("sub_vine: need at least two positions");
        for (int r = 1; r < m; ++r)
            if (positions[r] <= positions[r - 1]) throw domain_error("sub_vine: positions must be increasing");
        if (spec_.kind == VineKind::D) {
            if (positions[m - 1] - positions[0] != m - 1) throw domain_error("sub_vine: D-vine margin must be contiguous");
        } else {
            for (int r = 0; r + 1 < m; ++r)
                if (positions[r] != r) throw domain_error("sub_vine: C-vine margin must be a prefix plus one position");
        }
        // Labels of the margin are renumbered 1..m by rank of the original
        // label; sub_labels() gives the inverse map.
        const auto labels = sub_labels(positions);
        VineSpec s;
        s.dim = m;
        s.kind = spec_.kind;
        for (int p : positions) {
            const auto it = std::find(labels.begin(), labels.end(), spec_.order.at(p));
            s.order.push_back(static_cast<int>(it - labels.begin()) + 1);
        }
        s.trees.resize(m - 1);
        for (int t = 1; t < m; ++t) {
            for (int i = 0; i < m - t; ++i) {
                const auto sub = slot_positions(s.kind, t, i);
                const int a = positions[sub.first];
                const int b = positions[sub.second];
                const int orig = s.kind == VineKind::D ? a : b - t;
                s.trees[t - 1].push_back({slot_label(s.kind, s.order, t, i), spec_.trees[t - 1][orig].family});
            }
        }
        return PairLevyCopula(s);
    }

    // Original labels of a sub_vine's dimensions: entry r is the label of sub-dimension r+1.
    std::vector<int> sub_labels(std::span<const int> positions) const {
        std::vector<int> labels;
        for (int p : positions) labels.push_back(spec_.order.at(p));
        std::sort(labels.begin(), labels.end());
        return labels;
    }

    // F_{target | positions 0..target-1}(x); `given` holds the values at those positions.
    double cond_cdf(int target, std::span<const double> given, double x) const;
    double cond_cdf_inv(int target, std::span<const double> given, double w) const;

    double log_density(std::span<const double> u) const;

    // Monte Carlo value C(u_1, ..., u_d); coordinates may be kInfiniteRate.
    McEstimate value_mc(std::span<const double> u, std::size_t samples, Rng& rng) const;

    // Values indexed by dimension label rearranged into simulation order.
    std::vector<double> to_positions(std::span<const double> by_label) const {
        std::vector<double> out(spec_.dim);
        for (int p = 0; p < spec_.dim; ++p) out[p] = by_label[spec_.order[p] - 1];
        return out;
    }

private:
    int slot_of(int t, const EdgeLabel& label) const {
        std::vector<int> given = label.given;
        std::sort(given.begin(), given.end());
        for (int i = 0; i < spec_.dim - t; ++i) {
            const auto want = slot_label(spec_.kind, spec_.order, t, i);
            if (((want.first == label.first && want.second == label.second) ||
                 (want.first == label.second && want.second == label.first)) &&
                want.given == given)
                return i;
        }
        throw std::logic_error("slot_of: edge not found after validation");
    }

    VineSpec spec_;
    std::vector<LevyCopula> levy_;
    std::vector<std::vector<DistCopula>> dist_;
};

// Incremental evaluation of the vine recursions along the simulation order.
// Holds the conditional distribution values of every pushed coordinate
// (the forward/backward arrays of the D-vine algorithm, the single array of
// the C-vine algorithm) as normal scores, and the accumulated log-density.
class VineChain {
public:
    explicit VineChain(const PairLevyCopula& vine)
        : vine_(&vine), d_(vine.dim()), x_(d_), a_(d_ * d_), b_(d_ * d_) {}

    void reset() {
        n_ = 0;
        log_density_ = 0.0;
    }

    int size() const { return n_; }
    double value(int pos) const { return x_[pos]; }
    double log_density() const { return log_density_; }

    // Appends the coordinate at position size(); it must be positive and finite.
    void push(double x) {
        const int k = n_;
        x_[k] = x;
        if (vine_->kind() == VineKind::D) {
            fwd(0, k) = bwd(0, k) = x;
            if (k >= 1) {
                const auto& e = vine_->levy_edge(k - 1);
                fwd(1, k - 1) = detail::lc_conditional_score_unchecked(e, x_[k - 1], x);
                bwd(1, k - 1) = detail::lc_conditional_score_unchecked(e, x, x_[k - 1]);
                log_density_ += detail::lc_log_density_unchecked(e, x_[k - 1], x);
            }
            for (int t = 2; t <= k; ++t) {
                const int i = k - t;
                const auto& e = vine_->dist_edge(t, i);
                const double lo = bwd(t - 1, i);
                const double hi = fwd(t - 1, i + 1);
                log_density_ += detail::log_density_score_unchecked(e, lo, hi);
                fwd(t, i) = detail::h_score_unchecked(e, hi, lo);
                bwd(t, i) = detail::h_score_unchecked(e, lo, hi);
            }
        } else {
            cv(0, k) = x;
            if (k >= 1) {
                const auto& e = vine_->levy_edge(k - 1);
                cv(1, k) = detail::lc_conditional_score_unchecked(e, x_[0], x);
                log_density_ += detail::lc_log_density_unchecked(e, x_[0], x);
            }
            for (int t = 2; t <= k; ++t) {
                const auto& e = vine_->dist_edge(t, k - t);
                const double root = cv(t - 1, t - 1);
                log_density_ += detail::log_density_score_unchecked(e, root, cv(t - 1, k));
                cv(t, k) = detail::h_score_unchecked(e, cv(t - 1, k), root);
            }
        }
        ++n_;
    }

    // Arguments of the top edge (tree size()) for a candidate value x at
    // position size() >= 2. The top edge is dist_edge(size(), 0).
    TopArgs top_args(double x) const {
        const int k = n_;
        const auto& e1 = vine_->levy_edge(k - 1);
        if (vine_->kind() == VineKind::D) {
            double f = detail::lc_conditional_score_unchecked(e1, x_[k - 1], x);
            for (int t = 2; t < k; ++t) f = detail::h_score_unchecked(vine_->dist_edge(t, k - t), f, bwd(t - 1, k - t));
            return {f, bwd(k - 1, 0)};
        }
        double f = detail::lc_conditional_score_unchecked(e1, x_[0], x);
        for (int t = 2; t < k; ++t) f = detail::h_score_unchecked(vine_->dist_edge(t, k - t), f, cv(t - 1, t - 1));
        return {f, cv(k - 1, k - 1)};
    }

    // F_{k | 0..k-1}(x) for k = size() >= 1.
    double next_cdf(double x) const {
        const int k = n_;
        if (x <= 0.0) return 0.0;
        if (x == kInfiniteRate) return 1.0;
        const int cond = vine_->kind() == VineKind::D ? k - 1 : 0;
        if (k == 1) return detail::lc_conditional_unchecked(vine_->levy_edge(0), x_[cond], x);
        const auto args = top_args(x);
        return norm_cdf(detail::h_score_unchecked(vine_->dist_edge(k, 0), args.target, args.given));
    }

    // Inverse of next_cdf for w in (0, 1).
    double next_inv(double w) const {
        const int k = n_;
        const int cond = vine_->kind() == VineKind::D ? k - 1 : 0;
        if (k == 1) return detail::lc_conditional_inv_unchecked(vine_->levy_edge(0), x_[0], w);
        double z = detail::ppnd16(w);
        for (int t = k; t >= 2; --t) {
            const double y = vine_->kind() == VineKind::D ? bwd(t - 1, k - t) : cv(t - 1, t - 1);
            z = detail::h_inv_score_unchecked(vine_->dist_edge(t, k - t), z, y);
        }
        return detail::lc_conditional_inv_score_unchecked(vine_->levy_edge(k - 1), x_[cond], z);
    }

private:
    double& fwd(int t, int i) { return a_[t * d_ + i]; }
    double fwd(int t, int i) const { return a_[t * d_ + i]; }
    double& bwd(int t, int i) { return b_[t * d_ + i]; }
    double bwd(int t, int i) const { return b_[t * d_ + i]; }
    double& cv(int t, int j) { return a_[t * d_ + j]; }
    double cv(int t, int j) const { return a_[t * d_ + j]; }

    const PairLevyCopula* vine_;
    int d_;
    int n_ = 0;
    double log_density_ = 0.0;
    std::vector<double> x_;
    std::vector<double> a_;
    std::vector<double> b_;
};

namespace detail {

inline void check_given(std::span<const double> given, int target, int dim) {
    require(target >= 1 && target < dim, "cond_cdf: target position must lie in 1..d-1");
    require(static_cast<int>(given.size()) == target, "cond_cdf: need one value per preceding position");
    for (double g : given) require(g > 0.0 && std::isfinite(g), "cond_cdf: conditioning values must be positive and finite");
}

// Runs the conditional-sampling estimator of C(u) on positions 0..m-1 with
// u[0] and u[m-1] finite. For each of `samples` draws, Gamma_0 ~ U(0, u[0])
// and Gamma_1..Gamma_{m-2} follow the conditional inverse chain; a draw is
// killed as soon as some Gamma_k exceeds u[k]. `visit(chain, alive)` is
// called once per draw with positions 0..m-2 pushed when alive.
template <typename Visitor>
void for_each_mc_draw(const PairLevyCopula& vine, std::span<const double> u, std::size_t samples, Rng& rng,
                      Visitor&& visit) {
    const int m = static_cast<int>(u.size());
    VineChain chain(vine);
    for (std::size_t s = 0; s < samples; ++s) {
        chain.reset();
        chain.push(u[0] * rng.uniform());
        bool alive = true;
        for (int k = 1; k + 1 < m; ++k) {
            const double g = chain.next_inv(rng.uniform());
            if (!(g <= u[k])) {
                alive = false;
                break;
            }
            chain.push(g);
        }
        visit(chain, alive);
    }
}

}  // namespace detail

inline double PairLevyCopula::cond_cdf(int target, std::span<const double> given, double x) const {
    detail::check_given(given, target, spec_.dim);
    detail::require(x >= 0.0, "cond_cdf: target value must be nonnegative");
    VineChain chain(*this);
    for (double g : given) chain.push(g);
    return chain.next_cdf(x);
}

inline double PairLevyCopula::cond_cdf_inv(int target, std::span<const double> given, double w) const {
    detail::check_given(given, target, spec_.dim);
    detail::require(w > 0.0 && w < 1.0, "cond_cdf_inv: probability must lie in (0, 1)");
    VineChain chain(*this);
    for (double g : given) chain.push(g);
    return chain.next_inv(w);
}

inline double PairLevyCopula::log_density(std::span<const double> u) const {
    detail::require(static_cast<int>(u.size()) == spec_.dim, "plcc_log_density: need one coordinate per dimension");
    for (double x : u) detail::require(x > 0.0 && std::isfinite(x), "plcc_log_density: coordinates must be positive and finite");
    VineChain chain(*this);
    for (double x : to_positions(u)) chain.push(x);
    return chain.log_density();
}

inline McEstimate PairLevyCopula::value_mc(std::span<const double> u, std::size_t samples, Rng& rng) const {
    detail::require(static_cast<int>(u.size()) == spec_.dim, "plcc_value_mc: need one coordinate per dimension");
    detail::require(samples >= 1, "plcc_value_mc: need at least one sample");
    for (double x : u) detail::require(x >= 0.0, "plcc_value_mc: coordinates must be nonnegative");
    const auto pos = to_positions(u);
    if (std::any_of(pos.begin(), pos.end(), [](double x) { return x == 0.0; })) return {0.0, 0.0};

    // Infinite coordinates at the ends of the order are margins of the
    // construction and are dropped; for a C-vine only trailing ones can be.
    int lo = 0;
    int hi = spec_.dim - 1;
    while (hi >= 0 && pos[hi] == kInfiniteRate) --hi;
    if (hi < 0) throw domain_error("plcc_value_mc: at least one coordinate must be finite");
    if (spec_.kind == VineKind::D) {
        while (pos[lo] == kInfiniteRate) ++lo;
    } else if (pos[0] == kInfiniteRate) {
        throw domain_error("plcc_value_mc: the C-vine root coordinate must be finite");
    }
    if (lo == hi) return {pos[lo], 0.0};

    std::vector<int> idx(hi - lo + 1);
    std::iota(idx.begin(), idx.end(), lo);
    const bool whole = lo == 0 && hi == spec_.dim - 1;
    const PairLevyCopula sub = whole ? *this : sub_vine(idx);
    const std::span<const double> us(pos.data() + lo, idx.size());
    const double last = us.back();

    MeanAccumulator acc;
    detail::for_each_mc_draw(sub, us, samples, rng,
                             [&](const VineChain& chain, bool alive) { acc.add(alive ? chain.next_cdf(last) : 0.0); });
    return acc.scaled(us[0]);
}

// Free-function spellings of the construction's operations.
inline std::vector<Violation> validate_vine(const VineSpec& spec) { return validate(spec); }

inline double cond_cdf(const PairLevyCopula& v, int target, std::span<const double> given, double x) {
    return v.cond_cdf(target, given, x);
}

inline double cond_cdf_inv(const PairLevyCopula& v, int target, std::span<const double> given, double w) {
    return v.cond_cdf_inv(target, given, w);
}

inline double plcc_log_density(const PairLevyCopula& v, std::span<const double> u) { return v.log_density(u); }

inline McEstimate plcc_value_mc(const PairLevyCopula& v, std::span<const double> u, std::size_t samples, Rng& rng) {
    return v.value_mc(u, samples, rng);
}

}  // namespace plcc
