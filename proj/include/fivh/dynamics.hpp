#pragma once

// Event-driven time integration of the coupled electromechanical system with
// stick-slip switching. Slip segments run fixed-step RK4; a step that crosses
// the contact line V = V0 is bisected to the crossing, where the mass either
// sticks (holding force within the static bound) or re-enters slip on the
// other friction branch. Stick segments pin V to V0 exactly and integrate the
// circuit until break-away.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "fivh/forces.hpp"
#include "fivh/params.hpp"

namespace fivh {

struct State {
    double X = 0.0;
    double V = 0.0;
    double Q = 0.0;
    double I = 0.0;
    Mode mode = Mode::Slip;
    double T = 0.0;
};

struct Event {
    enum class Transition { StickToSlip, SlipToStick };
    double T;
    Transition kind;
};

struct Trajectory {
    std::vector<State> samples;
    std::vector<Event> events;
    Params params;
};

struct Rates {
    double dX, dV, dQ, dI;
};

namespace detail {

// Net non-friction force on the mass; this is also the force the contact
// would have to supply to hold V = V0.
inline double holding_force(double X, double V, double I, double T, const Params& p) {
    return -p.theta * I - damping_force(X, V, p.alpha, p.beta, p.xi_x) -
           restoring_force(X, p.alpha, p.beta) + p.F0 * std::sin(p.Omega0 * T);
}

// Slip vector field. sgn_at_zero selects the friction branch when the state
// sits exactly on V_r = 0 (just after an event).
inline Rates slip_rates(double X, double V, double Q, double I, double T, const Params& p,
                        double sgn_at_zero) {
    const double Vr = V - p.V0;
    const double fd = (Vr == 0.0) ? p.mu * sgn_at_zero : slip_friction(Vr, p.mu, p.xi, p.eta);
    Rates r;
    r.dX = V;
    r.dV = holding_force(X, V, I, T, p) - fd;
    r.dQ = I;
    r.dI = (-p.xi_q * I - p.theta * V - Q) / p.gamma;
    return r;
}

// Stick vector field: V is a constant of the motion (dV = 0), so RK4 keeps
// V = V0 bit-exact and X advances linearly.
inline Rates stick_rates(double Q, double I, double V0, const Params& p) {
    Rates r;
    r.dX = V0;
    r.dV = 0.0;
    r.dQ = I;
    r.dI = (-p.xi_q * I - p.theta * V0 - Q) / p.gamma;
    return r;
}

template <typename RatesFn>
inline State rk4_step(const State& s, double h, RatesFn&& f) {
    const Rates k1 = f(s.X, s.V, s.Q, s.I, s.T);
    const Rates k2 = f(s.X + 0.5 * h * k1.dX, s.V + 0.5 * h * k1.dV, s.Q + 0.5 * h * k1.dQ,
                       s.I + 0.5 * h * k1.dI, s.T + 0.5 * h);
    const Rates k3 = f(s.X + 0.5 * h * k2.dX, s.V + 0.5 * h * k2.dV, s.Q + 0.5 * h * k2.dQ,
                       s.I + 0.5 * h * k2.dI, s.T + 0.5 * h);
    const Rates k4 =
        f(s.X + h * k3.dX, s.V + h * k3.dV, s.Q + h * k3.dQ, s.I + h * k3.dI, s.T + h);
    State out = s;
    out.X += h / 6.0 * (k1.dX + 2.0 * k2.dX + 2.0 * k3.dX + k4.dX);
    out.V += h / 6.0 * (k1.dV + 2.0 * k2.dV + 2.0 * k3.dV + k4.dV);
    out.Q += h / 6.0 * (k1.dQ + 2.0 * k2.dQ + 2.0 * k3.dQ + k4.dQ);
    out.I += h / 6.0 * (k1.dI + 2.0 * k2.dI + 2.0 * k3.dI + k4.dI);
    out.T += h;
    return out;
}

inline std::string describe(const State& s) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "T=%.12g X=%.12g V=%.12g Q=%.12g I=%.12g mode=%s", s.T, s.X,
                  s.V, s.Q, s.I, s.mode == Mode::Stick ? "Stick" : "Slip");
    return std::string(buf);
}

} // namespace detail

/// Instantaneous state rate under the mode recorded in the state. The slip
/// friction uses sgn(V_r) with sgn(0) = 0; the integrator resolves the branch
/// at crossings itself.
inline Rates derivative(const State& s, const Params& p) {
    if (s.mode == Mode::Stick) return detail::stick_rates(s.Q, s.I, p.V0, p);
    return detail::slip_rates(s.X, s.V, s.Q, s.I, s.T, p, 0.0);
}

/// Fixed-step RK4 integration with stick-slip event localization.
/// Crossings of V_r = 0 are bracketed to within dt * 1e-6; sticking happens
/// iff the holding force fits inside [-mu, mu]. Stick segments keep V = V0
/// exactly and end when the required force leaves the static range.
inline Trajectory integrate(const Params& p, State s0, double T_end, double dt) {
    p.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
    if (!(T_end > 0.0)) throw std::invalid_argument("integrate: T_end must be > 0");
    if (!(std::isfinite(s0.X) && std::isfinite(s0.V) && std::isfinite(s0.Q) &&
          std::isfinite(s0.I) && std::isfinite(s0.T)))
        throw std::invalid_argument("integrate: non-finite initial state");
    if (s0.mode == Mode::Stick && s0.V != p.V0)
        throw std::invalid_argument("integrate: Stick initial state requires V = V0");

    // Resolve the initial mode on the contact line.
    double branch = 0.0; // friction branch hint at V_r = 0
    if (s0.V == p.V0) {
        const double g = detail::holding_force(s0.X, p.V0, s0.I, s0.T, p);
        if (std::abs(g) <= p.mu) {
            s0.mode = Mode::Stick;
        } else {
            s0.mode = Mode::Slip;
            branch = (g > 0.0) ? 1.0 : -1.0;
        }
    } else {
        s0.mode = Mode::Slip;
    }

    Trajectory traj;
    traj.params = p;
    traj.samples.reserve(static_cast<std::size_t>(T_end / dt) + 64);
    traj.samples.push_back(s0);

    State s = s0;
    const double T_final = s0.T + T_end;
    auto slip_field = [&p, &branch](double X, double V, double Q, double I, double T) {
        return detail::slip_rates(X, V, Q, I, T, p, branch);
    };
    auto stick_field = [&p](double, double, double Q, double I, double) {
        return detail::stick_rates(Q, I, p.V0, p);
    };

    while (s.T < T_final - 1e-12 * std::max(1.0, std::abs(T_final))) {
        const double h = std::min(dt, T_final - s.T);

        if (s.mode == Mode::Slip) {
            State s1 = detail::rk4_step(s, h, slip_field);
            const double vr0 = s.V - p.V0;
            const double vr1 = s1.V - p.V0;
            const bool crossed = (vr0 > 0.0 && vr1 <= 0.0) || (vr0 < 0.0 && vr1 >= 0.0);
            if (crossed) {
                // bisect the step fraction to the crossing
                double lo = 0.0, hi = h;
                State s_ev = s1;
                while (hi - lo > h * 1e-6) {
                    const double mid = 0.5 * (lo + hi);
                    const State sm = detail::rk4_step(s, mid, slip_field);
                    if ((vr0 > 0.0) == (sm.V - p.V0 > 0.0))
                        lo = mid;
                    else
                        hi = mid;
                }
                s_ev = detail::rk4_step(s, hi, slip_field);
                s_ev.V = p.V0; // pin onto the contact line
                const double g = detail::holding_force(s_ev.X, p.V0, s_ev.I, s_ev.T, p);
                if (std::abs(g) <= p.mu) {
                    s_ev.mode = Mode::Stick;
                    traj.events.push_back({s_ev.T, Event::Transition::SlipToStick});
                } else {
                    s_ev.mode = Mode::Slip;
                    branch = (g > 0.0) ? 1.0 : -1.0;
                }
                s = s_ev;
            } else {
                branch = 0.0; // away from the line the formula sign rules
                s = s1;
            }
        } else {
            State s1 = detail::rk4_step(s, h, stick_field);
            const double g1 = detail::holding_force(s1.X, p.V0, s1.I, s1.T, p);
            if (std::abs(g1) > p.mu) {
                // bisect to the break-away instant
                double lo = 0.0, hi = h;
                while (hi - lo > h * 1e-6) {
                    const double mid = 0.5 * (lo + hi);
                    const State sm = detail::rk4_step(s, mid, stick_field);
                    const double gm = detail::holding_force(sm.X, p.V0, sm.I, sm.T, p);
                    if (std::abs(gm) <= p.mu)
                        lo = mid;
                    else
                        hi = mid;
                }
                State s_ev = detail::rk4_step(s, hi, stick_field);
                const double g = detail::holding_force(s_ev.X, p.V0, s_ev.I, s_ev.T, p);
                s_ev.mode = Mode::Slip;
                branch = (g > 0.0) ? 1.0 : -1.0;
                traj.events.push_back({s_ev.T, Event::Transition::StickToSlip});
                s = s_ev;
            } else {
                s = s1;
            }
        }

        if (!(std::isfinite(s.X) && std::isfinite(s.V) && std::isfinite(s.Q) &&
              std::isfinite(s.I)))
            throw std::runtime_error("integrate: state became non-finite; last good sample " +
                                     detail::describe(traj.samples.back()));
        traj.samples.push_back(s);
    }
    return traj;
}

/// Steady-state electrical and displacement metrics over a trailing window.
struct SteadyStats {
    double Q_rms = 0.0;
    double I_rms = 0.0;
    double U_rms = 0.0;
    double P_avg = 0.0;
    double X_amp = 0.0;
};

/// Time-weighted RMS / mean statistics over the analysis window. With forcing
/// (F0 > 0) the window is the last n_periods forcing periods, clipped to an
/// integer period count inside the trailing half of the run; without forcing
/// it is the trailing `window_time` units (at most half the run).
inline SteadyStats steady_state(const Trajectory& traj, double xi_q, int n_periods,
                                double window_time = 50.0) {
    if (traj.samples.size() < 2) throw std::invalid_argument("steady_state: empty trajectory");
    const double t0 = traj.samples.front().T;
    const double t1 = traj.samples.back().T;
    const double span = t1 - t0;
    if (!(span > 0.0)) throw std::invalid_argument("steady_state: zero-length trajectory");

    double window;
    if (traj.params.F0 > 0.0 && traj.params.Omega0 > 0.0) {
        const double period = 2.0 * M_PI / traj.params.Omega0;
        int n_fit = static_cast<int>(std::floor(0.5 * span / period));
        if (n_periods > 0) n_fit = std::min(n_fit, n_periods);
        if (n_fit < 1) throw std::invalid_argument("steady_state: window shorter than one period");
        window = n_fit * period;
    } else {
        window = std::min(window_time, 0.5 * span);
        if (!(window > 0.0)) throw std::invalid_argument("steady_state: empty analysis window");
    }
    const double t_start = t1 - window;

    double int_Q2 = 0.0, int_I2 = 0.0, t_acc = 0.0;
    double x_min = 0.0, x_max = 0.0;
    bool first = true;
    const auto& ss = traj.samples;
    for (std::size_t i = 1; i < ss.size(); ++i) {
        if (ss[i].T < t_start) continue;
        const State& a = ss[i - 1];
        const State& b = ss[i];
        const double h = b.T - a.T;
        if (h <= 0.0) continue;
        int_Q2 += 0.5 * h * (a.Q * a.Q + b.Q * b.Q);
        int_I2 += 0.5 * h * (a.I * a.I + b.I * b.I);
        t_acc += h;
        if (first) {
            x_min = x_max = a.X;
            first = false;
        }
        x_min = std::min({x_min, a.X, b.X});
        x_max = std::max({x_max, a.X, b.X});
    }
    if (!(t_acc > 0.0)) throw std::invalid_argument("steady_state: no samples in window");

    SteadyStats st;
    st.Q_rms = std::sqrt(int_Q2 / t_acc);
    st.I_rms = std::sqrt(int_I2 / t_acc);
    st.U_rms = xi_q * st.I_rms;
    st.P_avg = xi_q * (int_I2 / t_acc);
    st.X_amp = 0.5 * (x_max - x_min);
    return st;
}

} // namespace fivh
