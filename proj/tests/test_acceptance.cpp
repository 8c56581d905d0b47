// Acceptance suite: one ordered pass/fail line per criterion on stdout.
// Every tolerance is pinned in code; the suite is the release gate.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fivh/cli.hpp"
#include "fivh/fivh.hpp"
#include "oracles.hpp"

using namespace fivh;
namespace fs = std::filesystem;

namespace {

void report(int n, const char* name, bool ok) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", n, name);
    std::fflush(stdout);
    CHECK_MESSAGE(ok, "criterion ", n, " (", name, ")");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<State> reference_grid() {
    std::vector<State> grid;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            State s;
            s.X = -1.0 + 0.5 * i;
            s.V = -1.0 + 0.5 * j;
            grid.push_back(s);
        }
    return grid;
}

struct CaseGeometry {
    const char* name;
    double alpha, beta;
    int expected_cycles;
};

constexpr CaseGeometry kCycleCases[] = {
    {"SW", 0.0, 1.0, 1}, {"DW", 0.25, 2.5, 2}, {"TW", 0.5, 0.2, 3}};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// metric helpers for the sweep monotonicity checks; values below the
// ring-down noise floor are treated as zero
double floored(double v) { return v < 1e-6 ? 0.0 : v; }

bool non_increasing(const std::vector<SweepRow>& rows, double metric(const SteadyStats&)) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!rows[i].ok || !rows[i - 1].ok) return false;
        const double a = floored(metric(rows[i - 1].stats));
        const double b = floored(metric(rows[i].stats));
        if (b > a + 1e-9 + 1e-9 * a) return false;
    }
    return true;
}

bool non_decreasing(const std::vector<SweepRow>& rows, double metric(const SteadyStats&)) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!rows[i].ok || !rows[i - 1].ok) return false;
        const double a = floored(metric(rows[i - 1].stats));
        const double b = floored(metric(rows[i].stats));
        if (b < a - 1e-9 - 1e-9 * a) return false;
    }
    return true;
}

double mQ(const SteadyStats& s) { return s.Q_rms; }
double mI(const SteadyStats& s) { return s.I_rms; }
double mU(const SteadyStats& s) { return s.U_rms; }
double mP(const SteadyStats& s) { return s.P_avg; }

} // namespace

TEST_CASE("criterion 1: QZS point exactness") {
    const double a0 = 4.0 * std::sqrt(5.0) / 25.0;
    const double b0 = 8.0 * std::sqrt(5.0) / 25.0;
    const auto t0 = std::chrono::steady_clock::now();
    const TaylorCoeffs tc = taylor_coefficients(a0, b0);
    const double elapsed = seconds_since(t0);
    const bool ok = std::abs(tc.A1) < 1e-12 && std::abs(tc.A3) < 1e-12 && elapsed < 1e-3;
    report(1, "QZS point exactness (|A1|, |A3| < 1e-12, < 1 ms)", ok);
}

TEST_CASE("criterion 2: friction curve shape") {
    const double mu_s = 1.5, mu_m = 1.0, v_m = 1.0;
    const double d1 = stribeck_d1(mu_s, mu_m, v_m);
    const double d3 = stribeck_d3(mu_s, mu_m, v_m);
    // stationary point of the slip branch and its value
    const double v_star = std::sqrt(d1 / (3.0 * d3));
    const double f_star = dimensional_slip_friction(v_star, mu_s, d1, d3);
    bool ok = std::abs(v_star - 1.0) < 1e-12 && std::abs(f_star - mu_m) < 1e-12;
    // the 0+ limit recovers the static level
    ok = ok && dimensional_slip_friction(1e-300, mu_s, d1, d3) == mu_s;
    // dense scan confirms the stationary point is the one-sided minimum
    double best_v = 0.0, best_f = 1e30;
    for (int i = 1; i <= 30000; ++i) {
        const double v = 3.0 * i / 30000.0;
        const double f = dimensional_slip_friction(v, mu_s, d1, d3);
        if (f < best_f) {
            best_f = f;
            best_v = v;
        }
    }
    ok = ok && std::abs(best_v - 1.0) < 1e-3 && best_f >= f_star - 1e-12;
    report(2, "slip friction minimum at v_m with value mu_m", ok);
}

TEST_CASE("criterion 3: force-potential consistency") {
    const auto t0 = std::chrono::steady_clock::now();
    oracles::Rng rng(3001);
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.uniform(0.0, 1.5);
        const double b = rng.uniform(0.1, 2.0);
        const double x = rng.uniform(-2.0, 2.0);
        const double fs = restoring_force(x, a, b);
        const double fd = oracles::central_diff(
            [&](double xx) { return potential_energy(xx, a, b); }, x, 1e-5);
        if (std::abs(fd - fs) / (1.0 + std::abs(fs)) >= 1e-6) ok = false;
    }
    ok = ok && seconds_since(t0) < 1.0;
    report(3, "dPEN/dX equals F_s to 1e-6 at 1000 samples (< 1 s)", ok);
}

TEST_CASE("criterion 4: Taylor coefficients match the derivative oracle") {
    oracles::Rng rng(99);
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform(0.05, 1.2);
        const double b = rng.uniform(0.2, 1.2);
        const double r = std::sqrt(a * a + b * b);
        const TaylorCoeffs tc = taylor_coefficients(a, b);
        auto fc = [&](std::complex<double> z) {
            const std::complex<double> up = z + a, um = z - a;
            return up * (1.0 - 1.0 / std::sqrt(up * up + b * b)) +
                   um * (1.0 - 1.0 / std::sqrt(um * um + b * b));
        };
        const oracles::OddTaylor fd = oracles::cauchy_taylor(fc, 0.5 * r);
        if (std::abs(fd.a1 - tc.A1) / std::max(std::abs(tc.A1), 1e-9) >= 1e-4) ok = false;
        if (std::abs(fd.a3 - tc.A3) / std::max(std::abs(tc.A3), 1e-9) >= 1e-4) ok = false;
        if (std::abs(fd.a5 - tc.A5) / std::max(std::abs(tc.A5), 1e-9) >= 1e-4) ok = false;
    }
    report(4, "A1/A3/A5 match derivative oracle to 1e-4 at 100 samples", ok);
}

TEST_CASE("criterion 5: equilibrium counts across the three regions") {
    const auto t0 = std::chrono::steady_clock::now();
    // region I: monostable (includes the named point (0, 1.0))
    std::vector<std::array<double, 2>> region1 = {{0.0, 1.0}};
    for (double a : {0.05, 0.3, 0.55, 0.8, 1.0})
        for (double b : {1.1, 1.4, 1.8})
            region1.push_back({a, b});
    region1.push_back({0.9, 1.05});
    region1.push_back({0.45, 1.6});
    region1.push_back({0.7, 2.0});
    region1.push_back({0.2, 1.25});
    // region II: bistable (includes (0.25, 0.5))
    std::vector<std::array<double, 2>> region2 = {
        {0.25, 0.5},  {0.0, 0.3},  {0.0, 0.5},  {0.0, 0.7},  {0.0, 0.9},   {0.05, 0.35},
        {0.05, 0.85}, {0.1, 0.4},  {0.1, 0.6},  {0.1, 0.8},  {0.1, 0.9},   {0.15, 0.5},
        {0.15, 0.7},  {0.15, 0.85}, {0.2, 0.45}, {0.2, 0.6}, {0.2, 0.75},  {0.25, 0.65},
        {0.3, 0.55},  {0.3, 0.7}};
    // region III: tristable (includes (0.5, 0.25))
    std::vector<std::array<double, 2>> region3 = {
        {0.5, 0.25},  {0.4, 0.15}, {0.4, 0.2},  {0.4, 0.25}, {0.4, 0.3},  {0.45, 0.18},
        {0.45, 0.25}, {0.45, 0.3}, {0.5, 0.15}, {0.5, 0.2},  {0.5, 0.3},  {0.55, 0.15},
        {0.55, 0.22}, {0.55, 0.28}, {0.6, 0.15}, {0.6, 0.2}, {0.6, 0.25}, {0.65, 0.15},
        {0.65, 0.2},  {0.45, 0.12}};
    bool ok = region1.size() == 20 && region2.size() == 20 && region3.size() == 20;
    auto audit = [&ok](const std::vector<std::array<double, 2>>& pts, std::size_t expected) {
        for (const auto& p : pts) {
            if (find_equilibria(p[0], p[1]).size() != expected) ok = false;
            // independent dense sign-change count agrees
            const int dense = oracles::count_sign_changes(
                [&](double x) { return restoring_force(x, p[0], p[1]); }, -3.0, 3.0, 100000);
            if (dense != static_cast<int>(expected)) ok = false;
        }
    };
    audit(region1, 1);
    audit(region2, 3);
    audit(region3, 5);
    ok = ok && seconds_since(t0) < 1.0;
    report(5, "region samples give 1/3/5 equilibria (named points included, < 1 s)", ok);
}

TEST_CASE("criterion 6: energy conservation and integrator order") {
    auto drift = [](double dt, double x0) {
        Params p;
        p.alpha = 0.0;
        p.beta = 1.0;
        p.theta = 0.0;
        p.xi_x = 0.0;
        p.mu = p.xi = p.eta = 0.0;
        p.V0 = 10.0; // contact line outside the orbit
        p.F0 = 0.0;
        State s0;
        s0.X = x0;
        const Trajectory traj = integrate(p, s0, 100.0, dt);
        const double h0 = hamiltonian(x0, 0.0, p.alpha, p.beta);
        double worst = 0.0;
        for (const State& s : traj.samples)
            worst = std::max(worst, std::abs(hamiltonian(s.X, s.V, p.alpha, p.beta) - h0));
        return worst;
    };
    const bool bound_ok = drift(1e-3, 0.5) < 1e-8;
    // order ratio measured where truncation is above the roundoff floor
    const double coarse = drift(0.2, 1.5);
    const double fine = drift(0.1, 1.5);
    const bool order_ok = coarse > 1e-12 && coarse / fine >= 8.0;
    report(6, "Hamiltonian drift < 1e-8 at dt = 1e-3; halving dt shrinks drift >= 8x",
           bound_ok && order_ok);
}

TEST_CASE("criteria 7 and 8: coexisting limit cycles and the stick contract") {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<State> grid = reference_grid();
    bool counts_ok = true;
    for (const CaseGeometry& cs : kCycleCases) {
        const Params p = self_excited_reference_params(cs.alpha, cs.beta);
        std::vector<std::string> diag;
        const auto cycles = detect_limit_cycles(p, grid, 400.0, 200.0, 1e-3, &diag);
        if (static_cast<int>(cycles.size()) != cs.expected_cycles) {
            counts_ok = false;
            std::printf("  %s: expected %d cycles, found %zu (%zu excluded)\n", cs.name,
                        cs.expected_cycles, cycles.size(), diag.size());
        }
        if (!diag.empty()) counts_ok = false;
    }
    const double elapsed = seconds_since(t0);
    report(7, "1 / 2 / 3 coexisting limit cycles over the 5x5 grid (< 60 s)",
           counts_ok && elapsed < 60.0);

    bool stick_ok = true;
    for (const CaseGeometry& cs : kCycleCases) {
        const Params p = self_excited_reference_params(cs.alpha, cs.beta);
        for (const State& ic : grid) {
            const Trajectory traj = integrate(p, ic, 600.0, 1e-3);
            for (const State& s : traj.samples) {
                if (s.mode != Mode::Stick) continue;
                if (s.V != p.V0) stick_ok = false;
                const double g = -p.theta * s.I -
                                 damping_force(s.X, p.V0, p.alpha, p.beta, p.xi_x) -
                                 restoring_force(s.X, p.alpha, p.beta) +
                                 p.F0 * std::sin(p.Omega0 * s.T);
                if (std::abs(g) > p.mu * (1.0 + 1e-12) + 1e-12) stick_ok = false;
            }
        }
    }
    report(8, "stick segments: V pinned to V0 exactly, holding force within the static bound",
           stick_ok);
}

TEST_CASE("criterion 9: amplitude-curve residuals, multivaluedness, inertia trend") {
    const TaylorCoeffs tc = taylor_coefficients(0.0, 1.0);
    bool residual_ok = true;
    int max_roots = 0;
    for (double gamma : {0.25, 0.5, 0.75, 1.0}) {
        Params p;
        p.gamma = gamma;
        for (HBSource src : {HBSource::RealPart, HBSource::ImagPart}) {
            const AmplitudeCurve curve = amplitude_curve(p, tc, 0.05, 3.0, 128, src);
            for (const AmplitudePoint& pt : curve.points)
                if (std::abs(hb_residual(pt.A_X, pt.Omega, p, tc, src)) >= 1e-8)
                    residual_ok = false;
        }
        for (int i = 0; i < 128; ++i) {
            const double w = 0.05 + (3.0 - 0.05) * i / 127.0;
            const auto roots = amplitude_roots(w, p, tc, HBSource::RealPart);
            max_roots = std::max(max_roots, static_cast<int>(roots.size()));
        }
    }
    const bool multi_ok = max_roots >= 2;
    bool gamma_ok = true;
    for (int i = 0; i < 20; ++i) {
        const double w = 7.2 + (12.0 - 7.2) * i / 19.0;
        double prev = 1e30;
        for (double gamma : {0.25, 0.5, 0.75, 1.0}) {
            Params p;
            p.gamma = gamma;
            const auto roots = amplitude_roots(w, p, tc, HBSource::ImagPart);
            if (roots.empty()) {
                gamma_ok = false;
                break;
            }
            if (roots.front() > prev + 1e-9) gamma_ok = false;
            prev = roots.front();
        }
    }
    report(9, "HB residuals < 1e-8; multi-valued response; amplitude shrinks with gamma",
           residual_ok && multi_ok && gamma_ok);
}

TEST_CASE("criterion 10: electrical-output sweep trends") {
    const auto t0 = std::chrono::steady_clock::now();
    Params base; // defaults: gamma 1, theta .1, xi_x .1, xi_q .1, mu .1, xi .1, eta 1, V0 .5
    bool ok = true;

    const auto xi_x_sweep = sweep(base, SweepParam::XiX, 0.0, 1.0, 20);
    for (const SweepResult& r : xi_x_sweep)
        if (!non_increasing(r.rows, mQ) || !non_increasing(r.rows, mI) ||
            !non_increasing(r.rows, mU) || !non_increasing(r.rows, mP)) {
            ok = false;
            std::printf("  xi_x sweep not non-increasing for %s\n", r.case_name.c_str());
        }

    const auto theta_sweep = sweep(base, SweepParam::Theta, 0.0, 1.0, 20);
    for (const SweepResult& r : theta_sweep)
        if (!non_decreasing(r.rows, mQ) || !non_decreasing(r.rows, mI) ||
            !non_decreasing(r.rows, mU)) {
            ok = false;
            std::printf("  theta sweep not non-decreasing for %s\n", r.case_name.c_str());
        }

    const auto xi_q_sweep = sweep(base, SweepParam::XiQ, 0.0, 1.0, 20);
    for (const SweepResult& r : xi_q_sweep)
        if (!non_increasing(r.rows, mQ) || !non_increasing(r.rows, mI)) {
            ok = false;
            std::printf("  xi_q sweep not non-increasing for %s\n", r.case_name.c_str());
        }

    const double elapsed = seconds_since(t0);
    report(10, "sweep trends in xi_x, theta, xi_q across all four cases (< 5 min)",
           ok && elapsed < 300.0);
}

TEST_CASE("criterion 11: CLI sweep determinism") {
    const fs::path base = fs::temp_directory_path() / "fivh_acceptance";
    fs::remove_all(base);
    const fs::path dir_a = base / "a";
    const fs::path dir_b = base / "b";
    fs::create_directories(dir_a);
    fs::create_directories(dir_b);
    bool ok = true;
    for (const fs::path& dir : {dir_a, dir_b}) {
        std::ostringstream out, err;
        const int rc = cli::run_command({"sweep", "--vary", "theta", "--out", dir.string()},
                                        out, err);
        if (rc != 0) ok = false;
    }
    const std::string bytes_a = read_file(dir_a / "sweep.csv");
    const std::string bytes_b = read_file(dir_b / "sweep.csv");
    ok = ok && !bytes_a.empty() && bytes_a == bytes_b;
    fs::remove_all(base);
    report(11, "two consecutive full sweep CLI runs are byte-identical", ok);
}
