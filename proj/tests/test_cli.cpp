#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "plcc/io.hpp"

using namespace plcc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("plcc_cli_" + std::to_string(::getpid()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Result {
    int code;
    std::string err;
};

// Runs the command-line tool with `args`, capturing standard error.
Result run(const TempDir& dir, const std::string& args) {
    const std::string err = dir / "stderr.txt";
    const std::string cmd = std::string(PLCC_CLI_PATH) + " " + args + " 2> " + err;
    const int status = std::system(cmd.c_str());
    std::ifstream in(err);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::size_t lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST_CASE("simulate writes a jump CSV", "[cli]") {
    TempDir dir;
    const auto out = dir / "h.csv";
    const auto r = run(dir, "simulate --scenario H --seed 1 --eps 1e-4 --out " + out);
    REQUIRE(r.code == 0);
    const auto text = slurp(out);
    CHECK(text.rfind("time,x1,x2,x3,x4,x5\n", 0) == 0);
    // tau = 10 * U(1e-4) = 1000 rows expected
    const double rows = static_cast<double>(lines(text) - 1);
    CHECK(std::fabs(rows - 1000.0) < 4.0 * std::sqrt(1000.0));
    std::istringstream is(text);
    CHECK(read_jumps_csv(is, 1.0, 5).count() == lines(text) - 1);

    // the reps field of a config is irrelevant to a single series
    write_file(dir / "c1.json", R"({"scenario": "H", "epsilon": 1e-4, "seed": 1, "reps": 3})");
    write_file(dir / "c2.json", R"({"scenario": "H", "epsilon": 1e-4, "seed": 1, "reps": 50})");
    REQUIRE(run(dir, "simulate --config " + (dir / "c1.json") + " --out " + (dir / "a.csv")).code == 0);
    REQUIRE(run(dir, "simulate --config " + (dir / "c2.json") + " --out " + (dir / "b.csv")).code == 0);
    CHECK(slurp(dir / "a.csv") == text);
    CHECK(slurp(dir / "b.csv") == text);
}

TEST_CASE("configuration and usage errors", "[cli]") {
    TempDir dir;
    write_file(dir / "bad.json", "{\"scenario\": \"H\", ");
    auto r = run(dir, "simulate --config " + (dir / "bad.json") + " --out " + (dir / "x.csv"));
    CHECK(r.code == 1);
    CHECK(r.err.find("error") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "x.csv"));

    write_file(dir / "typo.json", R"({"scenario": "H", "epsilonn": 1e-4})");
    CHECK(run(dir, "simulate --config " + (dir / "typo.json") + " --out " + (dir / "x.csv")).code == 1);
    CHECK(run(dir, "simulate --config " + (dir / "missing.json") + " --out " + (dir / "x.csv")).code == 1);
    CHECK(run(dir, "simulate --out " + (dir / "x.csv")).code == 1);
    CHECK(run(dir, "simulate --scenario Z --out " + (dir / "x.csv")).code == 1);
    CHECK(run(dir, "study --scenario H --reps 0 --out " + (dir / "x.csv")).code == 1);
    CHECK(run(dir, "").code == 1);
    CHECK(run(dir, "frobnicate").code == 1);
    CHECK(run(dir, "simulate --no-such-flag").code == 1);
    CHECK(run(dir, "estimate --scenario H").code == 1);
    CHECK(run(dir, "--help > /dev/null").code == 0);
}

TEST_CASE("simulate then estimate recovers the construction", "[cli]") {
    TempDir dir;
    const auto jumps = dir / "m.csv";
    REQUIRE(run(dir, "simulate --scenario M --seed 4 --eps 1e-6 --out " + jumps).code == 0);
    const auto report = dir / "m.json";
    const auto r = run(dir, "estimate --scenario M --seed 9 --eps 1e-6 --out " + report + " " + jumps);
    REQUIRE(r.code == 0);
    const auto j = Json::parse(slurp(report));
    const auto rep = report_from_json(j);
    CHECK(rep.epsilon == 1e-6);
    REQUIRE(rep.trees.size() == 4);
    // tree-1 RMSE of a replicate at this threshold is 0.0965
    for (const auto& e : rep.trees[0]) {
        REQUIRE(e.fitted);
        CHECK(std::fabs(*e.param - 2.0) <= 3.0 * 0.0965);
    }
    for (const auto& tree : rep.trees)
        for (const auto& e : tree) CHECK(e.fitted);

    // same seed, same bytes
    REQUIRE(run(dir, "estimate --scenario M --seed 9 --eps 1e-6 --out " + (dir / "again.json") + " " + jumps).code == 0);
    CHECK(slurp(dir / "again.json") == slurp(report));
}

TEST_CASE("estimate data errors", "[cli]") {
    TempDir dir;
    write_file(dir / "three.csv", "time,x1,x2,x3\n0.5,1,1,1\n");
    CHECK(run(dir, "estimate --scenario H --eps 1e-4 --out " + (dir / "r.json") + " " + (dir / "three.csv")).code == 2);
    write_file(dir / "garbled.csv", "time,x1,x2,x3,x4,x5\n0.5,1,1,1,1,what\n");
    const auto r = run(dir, "estimate --scenario H --eps 1e-4 --out " + (dir / "r.json") + " " + (dir / "garbled.csv"));
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(run(dir, "estimate --scenario H --out " + (dir / "r.json") + " " + (dir / "absent.csv")).code == 2);
}

TEST_CASE("estimate on an empty jump file", "[cli]") {
    TempDir dir;
    write_file(dir / "empty.csv", "time,x1,x2,x3,x4,x5\n");
    const auto r = run(dir, "estimate --scenario L --eps 1e-4 --out " + (dir / "r.json") + " " + (dir / "empty.csv"));
    CHECK(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    const auto rep = report_from_json(Json::parse(slurp(dir / "r.json")));
    for (const auto& m : rep.marginals) CHECK_FALSE(m.params.has_value());
    for (const auto& tree : rep.trees)
        for (const auto& e : tree) {
            CHECK_FALSE(e.fitted);
            CHECK_FALSE(e.note.empty());
        }
}

TEST_CASE("study writes the summary and the raw estimates", "[cli]") {
    TempDir dir;
    const auto out = dir / "study.csv";
    const auto r = run(dir, "study --scenario M --eps 1e-4 --reps 2 --mc-samples 5000 --threads 2 --out " + out);
    REQUIRE(r.code == 0);
    const auto table = slurp(out);
    CHECK(table.rfind("scenario,epsilon,tree,jumps,true_value,mean,bias,rmse\n", 0) == 0);
    CHECK(lines(table) == 5);
    const auto raw = slurp(dir / "study_estimates.csv");
    CHECK(lines(raw) == 1 + 2 * 10);

    // explicit estimates path, single thread, same numbers
    REQUIRE(run(dir, "study --scenario M --eps 1e-4 --reps 2 --mc-samples 5000 --threads 1 --out " + (dir / "s1.csv") +
                         " --estimates " + (dir / "raw1.csv"))
                .code == 0);
    CHECK(slurp(dir / "s1.csv") == table);
    CHECK(slurp(dir / "raw1.csv") == raw);

    // truncation that drops jumps is reported
    const auto l = run(dir, "study --scenario L --eps 1e-4 --reps 1 --mc-samples 2000 --out " + (dir / "l.csv"));
    CHECK(l.code == 0);
    CHECK(l.err.find("truncation") != std::string::npos);
}
