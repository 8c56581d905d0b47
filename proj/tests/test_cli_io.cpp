#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fivh/cli.hpp"
#include "fivh/config.hpp"
#include "fivh/csv.hpp"
#include "oracles.hpp"

using namespace fivh;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::vector<std::string>& args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    const int rc = cli::run_command(args, out, err);
    if (out_text) *out_text = out.str();
    return rc;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("fivh_test_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("parse_config: defaults, comments, overrides") {
    const io::RunConfig empty = io::parse_config("");
    CHECK(empty.params.gamma == 1.0);
    CHECK(empty.params.theta == 0.1);
    CHECK(empty.params.xi_x == 0.1);
    CHECK(empty.params.xi_q == 0.1);
    CHECK(empty.params.mu == 0.1);
    CHECK(empty.params.xi == 0.1);
    CHECK(empty.params.eta == 1.0);
    CHECK(empty.initial.X == 0.0);
    CHECK(empty.initial.V == 0.0);

    const io::RunConfig cfg = io::parse_config(
        "# a comment\n"
        "alpha = 0.25  # trailing comment\n"
        "beta = 0.5\n"
        "\n"
        "v0 = 0.2\n"
        "dt = 0.002\n"
        "init_v = -0.3\n");
    CHECK(cfg.params.alpha == 0.25);
    CHECK(cfg.params.beta == 0.5);
    CHECK(cfg.params.V0 == 0.2);
    CHECK(cfg.dt == 0.002);
    CHECK(cfg.initial.V == -0.3);
}

TEST_CASE("parse_config: errors name the line and key") {
    try {
        io::parse_config("alpha = 0.1\nbogus_key = 1\n");
        FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("bogus_key") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parse_config("alpha = -1\n"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config("gamma = 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config("alpha = fast\n"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config("alpha 0.1\n"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse_config("dt = -0.5\n"), std::invalid_argument);
}

TEST_CASE("format_double: 17 significant digits round-trip exactly") {
    oracles::Rng rng(2718);
    for (int i = 0; i < 10000; ++i) {
        double v = rng.uniform(-1e6, 1e6);
        if (i % 3 == 0) v *= 1e-9;
        if (i % 7 == 0) v *= 1e12;
        const std::string text = io::format_double(v);
        const double back = std::strtod(text.c_str(), nullptr);
        CHECK(back == v);
    }
    CHECK(io::format_double(0.0) == "0");
}

TEST_CASE("write_csv: header-only table, determinism, row width guard") {
    TempDir tmp;
    io::CsvTable t;
    t.schema = "curve";
    t.header = {"X", "F_s"};
    const fs::path path = tmp.path / "empty.csv";
    io::write_csv(t, path.string());
    CHECK(read_file(path) == "X,F_s\n");

    t.add_row({io::format_double(0.5), io::format_double(0.5857864376269049)});
    const fs::path path2 = tmp.path / "one.csv";
    io::write_csv(t, path2.string());
    io::write_csv(t, (tmp.path / "two.csv").string());
    CHECK(read_file(path2) == read_file(tmp.path / "two.csv"));
    CHECK(read_file(path2).find("0.58578643762690485") != std::string::npos);

    CHECK_THROWS_AS(t.add_row({"1"}), std::invalid_argument);
    CHECK_THROWS_AS(io::write_csv(t, (tmp.path / "no_dir" / "x.csv").string()),
                    std::runtime_error);
}

TEST_CASE("run_command: classify prints the label") {
    std::string out;
    CHECK(run({"classify", "--alpha", "0", "--beta", "1"}, &out) == 0);
    CHECK(out == "QZS3\n");
    CHECK(run({"classify", "--alpha", "0.5", "--beta", "0.25"}, &out) == 0);
    CHECK(out == "TW\n");
}

TEST_CASE("run_command: usage errors exit 2, computation errors exit 1") {
    CHECK(run({"no_such_command"}) == 2);
    CHECK(run({}) == 2);
    CHECK(run({"classify", "--bad-flag", "3"}) == 2);
    // degenerate geometry passes flag parsing, fails validation
    CHECK(run({"classify", "--alpha", "0", "--beta", "0"}) == 1);
    CHECK(run({"simulate", "--config", "/nonexistent/path.cfg"}) == 1);
}

TEST_CASE("run_command: simulate writes a timeseries starting from rest") {
    TempDir tmp;
    std::string out;
    CHECK(run({"simulate", "--out", tmp.path.string(), "--t-end", "1", "--stride", "100"},
              &out) == 0);
    const std::string csv = read_file(tmp.path / "timeseries.csv");
    CHECK(csv.rfind("T,X,V,Q,I,mode,U,P\n", 0) == 0);
    const std::string first_row = csv.substr(csv.find('\n') + 1, 100);
    CHECK(first_row.rfind("0,0,0,0,0,", 0) == 0);
}

TEST_CASE("run_command: equilibria and bifurcation tables") {
    TempDir tmp;
    std::string out;
    CHECK(run({"equilibria", "--alpha", "0.25", "--beta", "0.5", "--out", tmp.path.string()},
              &out) == 0);
    const std::string eq = read_file(tmp.path / "equilibria.csv");
    CHECK(eq.rfind("X_star,stability,local_stiffness\n", 0) == 0);
    CHECK(std::count(eq.begin(), eq.end(), '\n') == 4); // header + 3 equilibria

    CHECK(run({"bifurcation", "--resolution", "32", "--out", tmp.path.string()}, &out) == 0);
    const std::string bf = read_file(tmp.path / "bifurcation.csv");
    CHECK(bf.rfind("set,alpha,beta\n", 0) == 0);
    CHECK(bf.find("B_B,") != std::string::npos);
    CHECK(bf.find("B_H,") != std::string::npos);
    CHECK(bf.find("B_D,") != std::string::npos);
}

TEST_CASE("run_command: codim2 prints the region") {
    std::string out;
    CHECK(run({"codim2", "--plane", "a1", "--a1", "1.0", "--xi", "0.77"}, &out) == 0);
    CHECK(out == "III\n");
    CHECK(run({"codim2", "--plane", "a1", "--a1", "1.0", "--xi", "0.752"}, &out) == 0);
    CHECK(out == "on-set(B_po)\n");
}

TEST_CASE("run_command: amplitude emits the declared schema") {
    TempDir tmp;
    std::string out;
    CHECK(run({"amplitude", "--alpha", "0", "--beta", "1", "--omega-min", "0.2", "--omega-max",
               "2", "--grid", "64", "--source", "real", "--hb-mode", "verbatim", "--out",
               tmp.path.string()},
              &out) == 0);
    const std::string amp = read_file(tmp.path / "amplitude.csv");
    CHECK(amp.rfind("Omega,branch,A_X,source\n", 0) == 0);
    CHECK(amp.find(",real\n") != std::string::npos);
}

TEST_CASE("run_command: identical sweep invocations produce identical bytes") {
    TempDir a, b;
    const std::vector<std::string> args = {"sweep",  "--vary", "theta", "--from", "0",
                                           "--to",   "0.6",    "--steps", "3",    "--t-end",
                                           "40",     "--window", "10"};
    auto with_out = [&](const std::string& dir) {
        std::vector<std::string> v = args;
        v.push_back("--out");
        v.push_back(dir);
        return v;
    };
    CHECK(run(with_out(a.path.string())) == 0);
    CHECK(run(with_out(b.path.string())) == 0);
    const std::string ca = read_file(a.path / "sweep.csv");
    CHECK(!ca.empty());
    CHECK(ca == read_file(b.path / "sweep.csv"));
    CHECK(ca.rfind("case,param,value,Q_rms,I_rms,U_rms,P_avg\n", 0) == 0);
}
