#pragma once

// Equilibrium location and well-topology classification for the V-spring
// oscillator, plus the equilibrium shift caused by belt friction.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fivh/forces.hpp"

namespace fivh {

enum class Stability { Center, Saddle };

struct Equilibrium {
    double X_star = 0.0;
    Stability stability = Stability::Center;
    double local_stiffness = 0.0;
    bool degenerate = false; ///< |dF_s/dX| below tolerance at the root
};

enum class WellTopology { SW, QZS3, QZS5, DW, TW };

struct WellClass {
    WellTopology label;
    int equilibrium_count;
};

inline const char* to_string(WellTopology w) {
    switch (w) {
        case WellTopology::SW: return "SW";
        case WellTopology::QZS3: return "QZS3";
        case WellTopology::QZS5: return "QZS5";
        case WellTopology::DW: return "DW";
        case WellTopology::TW: return "TW";
    }
    return "?";
}

namespace detail {

// Bisection on a bracketing interval down to 1e-14 width.
inline double bisect_root(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::logic_error("bisect_root: interval does not bracket");
    for (int i = 0; i < 200 && (b - a) > 1e-14; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (fa * fm < 0.0) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

// All roots of f on [-X_max, X_max] via sign-change bracketing on a 4096-point
// grid followed by bisection; duplicates within 1e-8 are merged.
inline std::vector<double> scan_roots(const std::function<double(double)>& f, double X_max) {
    constexpr int n = 4096;
    std::vector<double> roots;
    const double h = 2.0 * X_max / n;
    double x_prev = -X_max;
    double f_prev = f(x_prev);
    for (int i = 1; i <= n; ++i) {
        const double x = -X_max + i * h;
        const double fx = f(x);
        if (f_prev == 0.0) {
            roots.push_back(x_prev);
        } else if (f_prev * fx < 0.0) {
            roots.push_back(bisect_root(f, x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    if (f_prev == 0.0) roots.push_back(x_prev);
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots) {
        if (unique.empty() || std::abs(r - unique.back()) > 1e-8) unique.push_back(r);
    }
    return unique;
}

// Stability from the local stiffness sign; a side test settles the
// zero-stiffness case (restoring in higher order -> center).
inline Equilibrium classify_equilibrium(double x, double stiffness,
                                        const std::function<double(double)>& f) {
    Equilibrium e;
    e.X_star = x;
    e.local_stiffness = stiffness;
    constexpr double tol_k = 1e-9;
    if (stiffness > tol_k) {
        e.stability = Stability::Center;
    } else if (stiffness < -tol_k) {
        e.stability = Stability::Saddle;
    } else {
        e.degenerate = true;
        const double d = 1e-3;
        e.stability = (f(x + d) - f(x - d) > 0.0) ? Stability::Center : Stability::Saddle;
    }
    return e;
}

} // namespace detail

/// All equilibria of the free oscillator (roots of F_s) on [-X_max, X_max],
/// sorted by position and classified by the sign of the local stiffness.
/// Valid geometries yield 1, 3 or 5 roots; any other count throws.
inline std::vector<Equilibrium> find_equilibria(double alpha, double beta, double X_max = 3.0) {
    if (X_max <= 0.0) throw std::invalid_argument("find_equilibria: X_max must be > 0");
    auto f = [alpha, beta](double x) { return restoring_force(x, alpha, beta); };
    std::vector<double> roots = detail::scan_roots(f, X_max);

    std::vector<Equilibrium> out;
    out.reserve(roots.size());
    for (double r : roots) {
        // snap the symmetric root at the origin
        if (std::abs(r) < 1e-9) r = 0.0;
        out.push_back(detail::classify_equilibrium(r, restoring_stiffness(r, alpha, beta), f));
    }
    const auto n = out.size();
    if (n != 1 && n != 3 && n != 5)
        throw std::runtime_error("find_equilibria: unexpected equilibrium count " +
                                 std::to_string(n));
    return out;
}

/// Well topology from the equilibrium count; single wells are refined to
/// QZS3 / QZS5 when the leading Taylor coefficients vanish (tol 1e-6).
inline WellClass classify_wells(double alpha, double beta) {
    constexpr double tol_qzs = 1e-6;
    const int count = static_cast<int>(find_equilibria(alpha, beta).size());
    if (count == 3) return {WellTopology::DW, 3};
    if (count == 5) return {WellTopology::TW, 5};
    const TaylorCoeffs tc = taylor_coefficients(alpha, beta);
    if (std::abs(tc.A1) < tol_qzs) {
        if (std::abs(tc.A3) < tol_qzs) return {WellTopology::QZS5, 1};
        return {WellTopology::QZS3, 1};
    }
    return {WellTopology::SW, 1};
}

/// Friction relative to its value at the shifted rest point, as a function of
/// the velocity v in the shifted frame (v = 0 at rest):
///   F_dr(v) = F_d(v - V0) - F_d(-V0),  so F_dr(0) = 0 exactly.
/// Both evaluations use the slip branch.
inline double relative_friction(double v, double V0, double mu, double xi, double eta) {
    const double at_rest = (V0 > 0.0) ? slip_friction(-V0, mu, xi, eta) : -mu;
    const double moving = (v == V0) ? at_rest : slip_friction(v - V0, mu, xi, eta);
    return moving - at_rest;
}

/// Rest points of the belt-driven mass: roots of F_s(X) + F_d(-V0) = 0,
/// classified like free equilibria. F_d(-V0) uses the slip branch; at V0 = 0
/// the 0- limit -mu is taken.
inline std::vector<Equilibrium> shifted_equilibrium(double alpha, double beta, double V0,
                                                    double mu, double xi, double eta,
                                                    double X_max = 3.0) {
    const double fd = (V0 > 0.0) ? slip_friction(-V0, mu, xi, eta) : -mu;
    auto f = [=](double x) { return restoring_force(x, alpha, beta) + fd; };
    std::vector<double> roots = detail::scan_roots(f, X_max);
    if (roots.empty())
        throw std::runtime_error("shifted_equilibrium: no root in scan range");
    std::vector<Equilibrium> out;
    out.reserve(roots.size());
    for (double r : roots)
        out.push_back(detail::classify_equilibrium(r, restoring_stiffness(r, alpha, beta), f));
    return out;
}

} // namespace fivh
