#pragma once

// Single-harmonic amplitude-frequency analysis of the quintic-truncated
// coupled system. The complex balance determinant splits into a real
// condition a1 a4 - a2 a5 + a3^2 = 0 and an imaginary condition
// a1 a5 + a2 a4 = 0; amplitude curves are the nonnegative roots in A_X of
// either residual, chained into branches across the frequency grid.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fivh/forces.hpp"
#include "fivh/params.hpp"

namespace fivh {

enum class HBMode {
    Verbatim, ///< coefficients exactly as published
    Corrected ///< with the 3/4 and 5/8 describing-function factors
};

enum class HBSource { RealPart, ImagPart };

struct HBCoefficients {
    double a1, a2, a3, a4, a5;
};

/// Balance coefficients at response amplitude A_X and frequency Omega.
/// Verbatim:  a1 = A1 + A3 A^2 + A5 A^4 - W^2,  a2 = W (xi - eta A^2),
///            a3 = -W theta,  a4 = 1 - W^2 gamma,  a5 = W.
/// Corrected: a1 = A1 + (3/4) A3 A^2 + (5/8) A5 A^4 - W^2,
///            a2 = W (xi - (3/4) eta W^2 A^2); a3, a4, a5 unchanged.
inline HBCoefficients hb_coefficients(double A_X, double Omega, const Params& p,
                                      const TaylorCoeffs& tc, HBMode mode = HBMode::Verbatim) {
    const double A2 = A_X * A_X;
    const double A4 = A2 * A2;
    HBCoefficients c;
    if (mode == HBMode::Verbatim) {
        c.a1 = tc.A1 + tc.A3 * A2 + tc.A5 * A4 - Omega * Omega;
        c.a2 = Omega * (p.xi - p.eta * A2);
    } else {
        c.a1 = tc.A1 + 0.75 * tc.A3 * A2 + 0.625 * tc.A5 * A4 - Omega * Omega;
        c.a2 = Omega * (p.xi - 0.75 * p.eta * Omega * Omega * A2);
    }
    c.a3 = -Omega * p.theta;
    c.a4 = 1.0 - Omega * Omega * p.gamma;
    c.a5 = Omega;
    return c;
}

inline double hb_residual(double A_X, double Omega, const Params& p, const TaylorCoeffs& tc,
                          HBSource source, HBMode mode = HBMode::Verbatim) {
    const HBCoefficients c = hb_coefficients(A_X, Omega, p, tc, mode);
    if (source == HBSource::RealPart) return c.a1 * c.a4 - c.a2 * c.a5 + c.a3 * c.a3;
    return c.a1 * c.a5 + c.a2 * c.a4;
}

struct AmplitudePoint {
    double Omega;
    double A_X;
    int branch;
};

struct AmplitudeCurve {
    HBSource source;
    std::vector<AmplitudePoint> points; ///< grouped by branch, ordered in Omega
};

/// All nonnegative amplitude roots of the selected residual at one frequency,
/// found by sign-change scanning over [0, A_max] and bisection to 1e-10.
inline std::vector<double> amplitude_roots(double Omega, const Params& p, const TaylorCoeffs& tc,
                                           HBSource source, HBMode mode = HBMode::Verbatim,
                                           double A_max = 5.0, int scan_n = 2048) {
    std::vector<double> roots;
    auto f = [&](double A) { return hb_residual(A, Omega, p, tc, source, mode); };
    double a_prev = 0.0;
    double f_prev = f(0.0);
    if (f_prev == 0.0) roots.push_back(0.0);
    for (int i = 1; i <= scan_n; ++i) {
        const double a = A_max * static_cast<double>(i) / scan_n;
        const double fa = f(a);
        if (fa == 0.0) {
            roots.push_back(a);
        } else if (f_prev != 0.0 && f_prev * fa < 0.0) {
            double lo = a_prev, hi = a;
            while (hi - lo > 1e-10) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                } else if ((f_prev > 0.0) == (fm > 0.0)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        a_prev = a;
        f_prev = fa;
    }
    return roots;
}

/// Sweep the residual over a frequency grid and chain roots into branches by
/// nearest-neighbour continuation (ties resolved toward minimal |dA_X|).
/// Frequencies with no roots simply contribute no points.
inline AmplitudeCurve amplitude_curve(const Params& p, const TaylorCoeffs& tc, double Omega_min,
                                      double Omega_max, int grid_n, HBSource source,
                                      HBMode mode = HBMode::Verbatim, double A_max = 5.0) {
    if (!(Omega_min > 0.0) || !(Omega_max > Omega_min))
        throw std::invalid_argument("amplitude_curve: need 0 < Omega_min < Omega_max");
    if (grid_n < 64) throw std::invalid_argument("amplitude_curve: grid_n must be >= 64");

    AmplitudeCurve curve;
    curve.source = source;
    std::vector<double> open_A;   // last amplitude per open branch
    std::vector<int> open_id;
    int next_id = 0;
    for (int i = 0; i < grid_n; ++i) {
        const double Omega = Omega_min + (Omega_max - Omega_min) * i / (grid_n - 1.0);
        std::vector<double> roots = amplitude_roots(Omega, p, tc, source, mode, A_max);
        std::vector<double> new_A;
        std::vector<int> new_id;
        std::vector<bool> used(open_A.size(), false);
        for (double r : roots) {
            int best = -1;
            double best_d = 0.0;
            for (std::size_t k = 0; k < open_A.size(); ++k) {
                if (used[k]) continue;
                const double d = std::abs(open_A[k] - r);
                if (best < 0 || d < best_d) {
                    best = static_cast<int>(k);
                    best_d = d;
                }
            }
            int id;
            if (best >= 0 && best_d < 0.25 * A_max) {
                used[best] = true;
                id = open_id[best];
            } else {
                id = next_id++;
            }
            curve.points.push_back({Omega, r, id});
            new_A.push_back(r);
            new_id.push_back(id);
        }
        open_A = std::move(new_A);
        open_id = std::move(new_id);
    }
    std::sort(curve.points.begin(), curve.points.end(), [](const AmplitudePoint& a,
                                                           const AmplitudePoint& b) {
        if (a.branch != b.branch) return a.branch < b.branch;
        return a.Omega < b.Omega;
    });
    return curve;
}

} // namespace fivh
