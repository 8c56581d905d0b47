#pragma once

// Steady-state electrical-output sweeps: run the full simulation from rest
// for each parameter value and geometry case, then reduce to RMS/mean
// electrical metrics.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fivh/dynamics.hpp"

namespace fivh {

enum class SweepParam { V0, Theta, XiX, XiQ };

inline const char* to_string(SweepParam p) {
    switch (p) {
        case SweepParam::V0: return "V0";
        case SweepParam::Theta: return "theta";
        case SweepParam::XiX: return "xi_x";
        case SweepParam::XiQ: return "xi_q";
    }
    return "?";
}

/// Geometry presets used for the electrical-output studies.
struct CasePreset {
    std::string name;
    double alpha;
    double beta;
};

inline std::vector<CasePreset> default_cases() {
    return {{"QZS3", 0.0, 1.0}, {"QZS5", 0.25, 0.72}, {"BS", 0.25, 0.5}, {"TS", 0.5, 0.25}};
}

struct SimConfig {
    double dt = 1e-3;
    double T_end = 400.0;
    double window = 100.0; ///< trailing analysis window (time units)
    State s0{};            ///< zero initial conditions by default
};

struct SweepRow {
    double value = 0.0;
    bool ok = false;
    SteadyStats stats{};
};

struct SweepResult {
    SweepParam varied;
    std::string case_name;
    std::vector<SweepRow> rows; ///< ordered by parameter value
};

/// Pointwise voltage and power series U = xi_q I, P = xi_q I^2.
inline std::vector<std::pair<double, double>> electrical_outputs(const Trajectory& traj,
                                                                 double xi_q) {
    if (traj.samples.empty()) throw std::invalid_argument("electrical_outputs: empty trajectory");
    std::vector<std::pair<double, double>> out;
    out.reserve(traj.samples.size());
    for (const State& s : traj.samples)
        out.push_back({xi_q * s.I, xi_q * s.I * s.I});
    return out;
}

/// Run one simulation per (case, parameter value) from the configured initial
/// state and reduce each to steady-state metrics. A diverged simulation marks
/// its row failed and the sweep continues.
inline std::vector<SweepResult> sweep(const Params& base, SweepParam varied, double from,
                                      double to, int steps,
                                      const std::vector<CasePreset>& cases = default_cases(),
                                      const SimConfig& sim = {}) {
    if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
    if (cases.empty()) throw std::invalid_argument("sweep: no case presets");

    std::vector<SweepResult> out;
    for (const CasePreset& cs : cases) {
        SweepResult result{varied, cs.name, {}};
        for (int i = 0; i < steps; ++i) {
            const double value = from + (to - from) * i / (steps - 1.0);
            Params p = base;
            p.alpha = cs.alpha;
            p.beta = cs.beta;
            switch (varied) {
                case SweepParam::V0: p.V0 = value; break;
                case SweepParam::Theta: p.theta = value; break;
                case SweepParam::XiX: p.xi_x = value; break;
                case SweepParam::XiQ: p.xi_q = value; break;
            }
            SweepRow row;
            row.value = value;
            try {
                const Trajectory traj = integrate(p, sim.s0, sim.T_end, sim.dt);
                row.stats = steady_state(traj, p.xi_q, 0, sim.window);
                row.ok = true;
            } catch (const std::exception&) {
                row.ok = false;
            }
            result.rows.push_back(row);
        }
        out.push_back(std::move(result));
    }
    return out;
}

} // namespace fivh
