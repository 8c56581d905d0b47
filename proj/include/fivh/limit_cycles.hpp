#pragma once

// Limit-cycle extraction for the autonomous self-excited system (F0 = 0).
// Each initial condition is integrated past a settling horizon, recurrence is
// detected on the contact section (stick-entry markers, falling back to
// velocity upcrossings for cycles without stick), and cycles found from
// different initial conditions are clustered into the distinct set.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fivh/dynamics.hpp"

namespace fivh {

struct LimitCycle {
    double period = 0.0;
    double amplitude = 0.0; ///< max |X| over one cycle
    double mean_X = 0.0;    ///< cycle-averaged X
    std::vector<double> signature; ///< ordered extrema / section hits, 1e-3 rounding
};

namespace detail {

struct Marker {
    double T;
    double X;
    bool exact; ///< event-localized (true) or interpolated from samples
};

// Quadratic interpolation of the upward crossing of V through level inside
// the sample pair (i-1, i), using the neighbouring sample for curvature.
inline Marker interp_crossing(const std::vector<State>& s, std::size_t i, double level) {
    const State& a = s[i - 1];
    const State& b = s[i];
    double t = a.T + (b.T - a.T) * (level - a.V) / (b.V - a.V);
    double x = a.X + (b.X - a.X) * (t - a.T) / (b.T - a.T);
    if (i + 1 < s.size()) {
        const State& c = s[i + 1];
        // refine with a 3-point quadratic in time for V and X
        const double t0 = a.T, t1 = b.T, t2 = c.T;
        auto quad = [&](double f0, double f1, double f2, double tq) {
            const double l0 = (tq - t1) * (tq - t2) / ((t0 - t1) * (t0 - t2));
            const double l1 = (tq - t0) * (tq - t2) / ((t1 - t0) * (t1 - t2));
            const double l2 = (tq - t0) * (tq - t1) / ((t2 - t0) * (t2 - t1));
            return f0 * l0 + f1 * l1 + f2 * l2;
        };
        // one Newton pass on the quadratic V(t)
        for (int it = 0; it < 3; ++it) {
            const double dv = 1e-7 * std::max(1.0, std::abs(t1 - t0));
            const double v = quad(a.V, b.V, c.V, t) - level;
            const double vp = (quad(a.V, b.V, c.V, t + dv) - quad(a.V, b.V, c.V, t - dv)) / (2 * dv);
            if (vp != 0.0) t -= v / vp;
            t = std::clamp(t, t0, t1);
        }
        x = quad(a.X, b.X, c.X, t);
    }
    return {t, x, false};
}

inline double round_sig(double v) { return std::round(v * 1000.0) / 1000.0; }

// Rotate so the largest element (first occurrence) leads.
inline std::vector<double> canonical_rotation(std::vector<double> sig) {
    if (sig.empty()) return sig;
    const auto it = std::max_element(sig.begin(), sig.end());
    std::rotate(sig.begin(), it, sig.end());
    return sig;
}

inline bool same_cycle(const LimitCycle& a, const LimitCycle& b) {
    if (std::abs(a.amplitude - b.amplitude) > 5e-3) return false;
    if (std::abs(a.mean_X - b.mean_X) > 5e-3) return false;
    if (std::abs(a.period - b.period) > 5e-3 * std::max(1.0, b.period)) return false;
    if (a.signature.size() == b.signature.size() && !a.signature.empty()) {
        const auto ca = canonical_rotation(a.signature);
        const auto cb = canonical_rotation(b.signature);
        for (std::size_t i = 0; i < ca.size(); ++i)
            if (std::abs(ca[i] - cb[i]) > 5e-3) return false;
    }
    return true;
}

} // namespace detail

/// Friction and damping set for the self-excited stick-slip demonstrations
/// (autonomous, uncoupled). mu, eta, belt velocity and gamma follow the
/// published study; the weakening slope and the geometric damping ratio are
/// calibrated so that the single-, double- and triple-well reference
/// geometries carry exactly 1, 2 and 3 coexisting limit cycles over the
/// [-1, 1]^2 initial-condition grid.
inline Params self_excited_reference_params(double alpha, double beta) {
    Params p;
    p.alpha = alpha;
    p.beta = beta;
    p.gamma = 1.0;
    p.theta = 0.0;
    p.xi_x = 0.2;
    p.xi_q = 0.1;
    p.mu = 0.1;
    p.xi = 0.48;
    p.eta = 0.1;
    p.V0 = 0.1;
    p.F0 = 0.0;
    p.Omega0 = 1.0;
    return p;
}

/// Integrate every initial condition for T_settle + T_observe and return the
/// distinct limit cycles reached, sorted by amplitude. Initial conditions
/// without a detected recurrence are excluded and reported via diagnostics.
/// Requires the autonomous regime F0 = 0.
inline std::vector<LimitCycle> detect_limit_cycles(const Params& p,
                                                   const std::vector<State>& ic_grid,
                                                   double T_settle, double T_observe,
                                                   double dt = 1e-3,
                                                   std::vector<std::string>* diagnostics = nullptr) {
    if (p.F0 != 0.0)
        throw std::invalid_argument("detect_limit_cycles: requires autonomous regime F0 = 0");
    if (ic_grid.empty()) throw std::invalid_argument("detect_limit_cycles: empty grid");

    auto note = [diagnostics](const std::string& msg) {
        if (diagnostics) diagnostics->push_back(msg);
    };

    std::vector<LimitCycle> clusters;
    for (const State& ic : ic_grid) {
        const std::string tag = "IC(X=" + std::to_string(ic.X) + ", V=" + std::to_string(ic.V) + ")";
        Trajectory traj;
        try {
            traj = integrate(p, ic, T_settle + T_observe, dt);
        } catch (const std::exception& e) {
            note(tag + ": integration aborted: " + e.what());
            continue;
        }
        const double t_obs = ic.T + T_settle;
        const auto& ss = traj.samples;

        // Section markers: stick entries, else upward crossings of mid-velocity.
        std::vector<detail::Marker> markers;
        for (std::size_t i = 1; i < ss.size(); ++i) {
            if (ss[i].T < t_obs) continue;
            if (ss[i - 1].mode == Mode::Slip && ss[i].mode == Mode::Stick)
                markers.push_back({ss[i].T, ss[i].X, true});
        }
        if (markers.size() < 4) {
            markers.clear();
            double v_lo = 0.0, v_hi = 0.0;
            bool first = true;
            for (const State& s : ss) {
                if (s.T < t_obs) continue;
                if (first) {
                    v_lo = v_hi = s.V;
                    first = false;
                }
                v_lo = std::min(v_lo, s.V);
                v_hi = std::max(v_hi, s.V);
            }
            const double v_mid = 0.5 * (v_lo + v_hi);
            for (std::size_t i = 1; i < ss.size(); ++i) {
                if (ss[i].T < t_obs || ss[i - 1].T < t_obs) continue;
                if (ss[i - 1].V < v_mid && ss[i].V >= v_mid)
                    markers.push_back(detail::interp_crossing(ss, i, v_mid));
            }
        }
        if (markers.size() < 4) {
            note(tag + ": no recurrence (too few section hits)");
            continue;
        }

        // Smallest marker period m with a consistent match over one full lap.
        const std::size_t K = markers.size();
        std::size_t m_found = 0;
        const double x_scale = std::max(1.0, std::abs(markers.back().X));
        for (std::size_t m = 1; m <= (K - 1) / 2; ++m) {
            const std::size_t checks = std::min<std::size_t>({m, K - 1 - m, 6});
            bool ok = true;
            for (std::size_t j = 0; j <= checks; ++j) {
                const double dx = std::abs(markers[K - 1 - j].X - markers[K - 1 - j - m].X);
                if (dx > 1e-5 * x_scale) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                m_found = m;
                break;
            }
        }
        if (m_found == 0) {
            note(tag + ": no recurrence within observe window");
            continue;
        }
        const detail::Marker& end = markers[K - 1];
        const detail::Marker& start = markers[K - 1 - m_found];
        const double closure = std::abs(end.X - start.X);
        const double closure_tol = (end.exact && start.exact) ? 1e-6 : 1e-5;
        if (closure > closure_tol) {
            note(tag + ": recurrence found but closure " + std::to_string(closure) +
                 " above tolerance");
            continue;
        }

        LimitCycle cyc;
        cyc.period = end.T - start.T;

        // One-period statistics and signature.
        double int_x = 0.0, t_acc = 0.0, amp = 0.0;
        std::vector<std::pair<double, double>> sig_events; // (T, value)
        for (std::size_t i = 1; i < ss.size(); ++i) {
            if (ss[i].T <= start.T || ss[i].T > end.T) continue;
            const State& a = ss[i - 1];
            const State& b = ss[i];
            const double h = b.T - a.T;
            if (h > 0.0) {
                int_x += 0.5 * h * (a.X + b.X);
                t_acc += h;
            }
            amp = std::max({amp, std::abs(a.X), std::abs(b.X)});
            if (i + 1 < ss.size()) {
                const bool is_max = b.X > a.X && b.X > ss[i + 1].X;
                const bool is_min = b.X < a.X && b.X < ss[i + 1].X;
                if (is_max || is_min) sig_events.push_back({b.T, b.X});
            }
            if (a.mode == Mode::Slip && b.mode == Mode::Stick)
                sig_events.push_back({b.T, b.X});
        }
        if (!(t_acc > 0.0)) {
            note(tag + ": empty cycle window");
            continue;
        }
        cyc.mean_X = int_x / t_acc;
        cyc.amplitude = amp;
        std::sort(sig_events.begin(), sig_events.end());
        for (const auto& ev : sig_events) cyc.signature.push_back(detail::round_sig(ev.second));
        cyc.signature = detail::canonical_rotation(cyc.signature);

        bool merged = false;
        for (const LimitCycle& c : clusters) {
            if (detail::same_cycle(c, cyc)) {
                merged = true;
                break;
            }
        }
        if (!merged) clusters.push_back(std::move(cyc));
    }

    std::sort(clusters.begin(), clusters.end(),
              [](const LimitCycle& a, const LimitCycle& b) { return a.amplitude < b.amplitude; });
    return clusters;
}

} // namespace fivh
