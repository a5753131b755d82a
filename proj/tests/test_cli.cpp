// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line surface: exit-code taxonomy,
// report/trace artifacts on disk, determinism of seeded runs.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QFP_CLI_BIN) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return {WEXITSTATUS(status)};
}

class TempDir {
public:
    TempDir() {
        base_ = fs::temp_directory_path() /
                ("qfp_cli_test_" + std::to_string(counter_++));
        fs::create_directories(base_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(base_, ec);
    }
    fs::path path(const std::string& name) const { return base_ / name; }
    std::string str(const std::string& name) const { return path(name).string(); }

private:
    static inline int counter_ = 0;
    fs::path base_;
};

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json read_json(const fs::path& p) { return json::parse(read_file(p)); }

} // namespace

TEST_CASE("solve task: cosine to the dottie point") {
    TempDir dir;
    write_file(dir.path("cfg.json"), R"({
        "task": "solve",
        "space": {"kind": "euclidean", "dim": 1},
        "map": {"family": "cos"},
        "start": 0.0,
        "eps": 1e-9
    })");
    const auto run = run_cli("run " + dir.str("cfg.json") + " --out " + dir.str("out"));
    CHECK(run.exit_code == 0);
    const json report = read_json(dir.path("out") / "report.json");
    CHECK(report["version"] == 1);
    CHECK(report["task"] == "solve");
    CHECK(report["result"]["status"] == "Converged");
    const double fp = report["result"]["fixed_point"][0].get<double>();
    CHECK(std::abs(fp - 0.7390851332151607) < 1e-9);
    CHECK(report["result"]["residual"].get<double>() < 1e-9);
}

TEST_CASE("classify task: a failed bound exits 2 with a witness") {
    TempDir dir;
    write_file(dir.path("cfg.json"), R"({
        "task": "classify",
        "space": {"kind": "euclidean", "dim": 1},
        "map": {"family": "affine", "scale": 0.5},
        "class": "Banach",
        "q": 0.4,
        "pairs": 0,
        "witness_pairs": [[0.0, 1.0]]
    })");
    const auto run = run_cli("run " + dir.str("cfg.json") + " --out " + dir.str("out"));
    CHECK(run.exit_code == 2);
    const json report = read_json(dir.path("out") / "report.json");
    CHECK(report["verdict"]["outcome"] == "Falsified");
    CHECK(report["verdict"]["witness"]["lhs"].get<double>() == 0.5);
    CHECK(report["verdict"]["witness"]["rhs"].get<double>() == 0.4);
}

TEST_CASE("a config missing its space is an input error naming the field") {
    TempDir dir;
    write_file(dir.path("cfg.json"), R"({
        "task": "solve",
        "map": {"family": "cos"},
        "start": 0.0,
        "eps": 1e-9
    })");
    const std::string cmd = std::string(QFP_CLI_BIN) + " run " + dir.str("cfg.json") +
                            " > /dev/null 2> " + dir.str("stderr.txt");
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 1);
    const std::string diagnostic = read_file(dir.path("stderr.txt"));
    CHECK(diagnostic.find("'space'") != std::string::npos);
}

TEST_CASE("unknown fields are rejected") {
    TempDir dir;
    write_file(dir.path("cfg.json"), R"({
        "task": "solve",
        "space": {"kind": "euclidean", "dim": 1},
        "map": {"family": "cos"},
        "start": 0.0,
        "eps": 1e-9,
        "typo_field": true
    })");
    CHECK(run_cli("run " + dir.str("cfg.json")).exit_code == 1);
}

TEST_CASE("malformed json is an input error") {
    TempDir dir;
    write_file(dir.path("cfg.json"), "{ not json");
    CHECK(run_cli("run " + dir.str("cfg.json")).exit_code == 1);
    CHECK(run_cli("run " + dir.str("missing.json")).exit_code == 1);
}

TEST_CASE("solve trace lands next to the report when requested") {
    TempDir dir;
    write_file(dir.path("cfg.json"), R"({
        "task": "solve",
        "space": {"kind": "euclidean", "dim": 1},
        "map": {"family": "affine", "scale": 0.5},
        "start": 1.0,
        "eps": 1e-6,
        "phi": {"family": "affine", "q": 0.5}
    })");
    const auto run = run_cli("run " + dir.str("cfg.json") + " --trace --out " +
                             dir.str("out"));
    CHECK(run.exit_code == 0);
    const std::string trace = read_file(dir.path("out") / "trace.csv");
    CHECK(trace.rfind("step,dist_prev,dist_base,diam_trunc\n", 0) == 0);
    CHECK(std::count(trace.begin(), trace.end(), '\n') >= 3);
}

TEST_CASE("multi-start solve flags non-unique fixed points with exit 2") {
    TempDir dir;
    write_file(dir.path("cfg.json"), R"({
        "task": "solve",
        "space": {"kind": "euclidean", "dim": 1},
        "map": {"family": "affine", "scale": 1.0},
        "starts": [0.0, 1.0],
        "eps": 1e-6
    })");
    const auto run = run_cli("run " + dir.str("cfg.json") + " --out " + dir.str("out"));
    CHECK(run.exit_code == 2);
    const json report = read_json(dir.path("out") / "report.json");
    CHECK(report["multi_start"]["unique_within"] == false);
    CHECK(report["multi_start"]["max_mutual_distance"].get<double>() == 1.0);
}

TEST_CASE("probe task distinguishes bounded and escaping orbits") {
    TempDir dir;
    write_file(dir.path("bounded.json"), R"({
        "task": "probe",
        "space": {"kind": "euclidean", "dim": 1},
        "map": {"family": "affine", "scale": 0.5},
        "start": 1.0,
        "depth": 512
    })");
    CHECK(run_cli("run " + dir.str("bounded.json") + " --out " + dir.str("a"))
              .exit_code == 0);

    write_file(dir.path("walk.json"), R"({
        "task": "probe",
        "space": {"kind": "euclidean", "dim": 1},
        "map": {"family": "affine", "scale": 1.0, "offset": 1.0},
        "start": 0.0,
        "depth": 4096,
        "threshold": 1000.0
    })");
    CHECK(run_cli("run " + dir.str("walk.json") + " --out " + dir.str("b"))
              .exit_code == 2);
    const json report = read_json(dir.path("b") / "report.json");
    CHECK(report["verdict"]["verdict"] == "ThresholdExceeded");
    CHECK(report["verdict"]["step"] == 1000);
}

TEST_CASE("attractor task writes the point cloud and certificate") {
    TempDir dir;
    write_file(dir.path("cfg.json"), R"({
        "task": "attractor",
        "ifs": {"named": "cantor"},
        "seed_point": [0.5],
        "eps": 1e-3
    })");
    const auto run = run_cli("run " + dir.str("cfg.json") + " --out " + dir.str("out"));
    CHECK(run.exit_code == 0);
    const json report = read_json(dir.path("out") / "report.json");
    CHECK(report["certificate"]["depth"] == 6);
    CHECK(report["certificate"]["bound"].get<double>() < 1e-3);
    const std::string cloud = read_file(dir.path("out") / "points.csv");
    CHECK(std::count(cloud.begin(), cloud.end(), '\n') == 64); // 2^6 points
}

TEST_CASE("picard task exports the discrete solution") {
    TempDir dir;
    write_file(dir.path("cfg.json"), R"({
        "task": "picard",
        "ivp": {"rhs": {"kind": "linear", "a": 1.0}, "t0": 0.0, "t1": 0.5,
                 "y0": 1.0, "lipschitz": 1.0, "nodes": 65},
        "eps": 1e-8
    })");
    const auto run = run_cli("run " + dir.str("cfg.json") + " --out " + dir.str("out"));
    CHECK(run.exit_code == 0);
    const std::string csv = read_file(dir.path("out") / "points.csv");
    CHECK(csv.rfind("t,y\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 66);
}

TEST_CASE("identical config and seed produce byte-identical reports") {
    TempDir dir;
    write_file(dir.path("cfg.json"), R"({
        "task": "classify",
        "space": {"kind": "euclidean", "dim": 1, "sample_box": [0.0, 1.0]},
        "map": {"family": "rational"},
        "class": "NonlinearContraction",
        "phi": {"family": "rational"},
        "seed": 0
    })");
    CHECK(run_cli("run " + dir.str("cfg.json") + " --out " + dir.str("a")).exit_code ==
          0);
    CHECK(run_cli("run " + dir.str("cfg.json") + " --out " + dir.str("b")).exit_code ==
          0);
    CHECK(read_file(dir.path("a") / "report.json") ==
          read_file(dir.path("b") / "report.json"));
}

TEST_CASE("seed override changes the sampled report") {
    TempDir dir;
    write_file(dir.path("cfg.json"), R"({
        "task": "classify",
        "space": {"kind": "euclidean", "dim": 1, "sample_box": [0.0, 1.0]},
        "map": {"family": "rational"},
        "class": "Banach",
        "q": 0.5,
        "seed": 0
    })");
    CHECK(run_cli("run " + dir.str("cfg.json") + " --out " + dir.str("a")).exit_code ==
          2);
    CHECK(run_cli("run " + dir.str("cfg.json") + " --seed 9 --out " + dir.str("b"))
              .exit_code == 2);
    const json a = read_json(dir.path("a") / "report.json");
    const json b = read_json(dir.path("b") / "report.json");
    CHECK(a["verdict"]["seed"] == 0);
    CHECK(b["verdict"]["seed"] == 9);
}

TEST_CASE("gallery subcommand filters entries and reports status") {
    CHECK(run_cli("gallery --filter cos").exit_code == 0);
    CHECK(run_cli("gallery --filter zzz").exit_code == 1);

    TempDir dir;
    CHECK(run_cli("gallery --filter 'c*' --out " + dir.str("g")).exit_code == 0);
    CHECK(fs::exists(dir.path("g") / "gallery_cos.json"));
    CHECK(fs::exists(dir.path("g") / "gallery_cantor.json"));
}

TEST_CASE("kannan-like map is expressible as a piecewise config") {
    TempDir dir;
    write_file(dir.path("cfg.json"), R"({
        "task": "classify",
        "space": {"kind": "euclidean", "dim": 1, "sample_box": [0.0, 1.0]},
        "map": {"family": "piecewise", "pieces": [
            {"from": 0.0, "to": 1.0, "scale": 0.25},
            {"from": 1.0, "to": 1.0, "scale": 0.0, "offset": 0.125}
        ]},
        "class": "StrongQuasi",
        "phi": {"family": "affine", "q": 0.25},
        "witness_pairs": [[0.9, 1.0], [0.999, 1.0]]
    })");
    CHECK(run_cli("run " + dir.str("cfg.json") + " --out " + dir.str("out"))
              .exit_code == 0);
    const json report = read_json(dir.path("out") / "report.json");
    CHECK(report["verdict"]["outcome"] == "Satisfied");
}
