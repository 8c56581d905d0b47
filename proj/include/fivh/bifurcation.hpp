#pragma once

// Bifurcation sets of the V-spring oscillator: the pitchfork / hysteresis /
// double-limit curves in the (alpha, beta) plane, the sign-condition regions
// of the quintic truncation, and the codimension-two limit-cycle sets.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fivh/forces.hpp"

namespace fivh {

struct BifurcationCurve {
    std::string name; ///< B_B, B_H or B_D
    std::vector<std::array<double, 2>> points; ///< (alpha, beta)
    std::vector<double> critical_X; ///< degenerate-equilibrium position per point
};

namespace detail {

// Partial derivatives of F_s and dF_s/dX with respect to alpha and beta,
// used by the Newton corrector of the curve tracer.
struct CriticalSystem {
    double F;       // F_s(X)
    double Fx;      // dF_s/dX
    double dF_da;   // dF/dalpha
    double dF_db;   // dF/dbeta
    double dFx_da;  // dFx/dalpha
    double dFx_db;  // dFx/dbeta
};

inline CriticalSystem critical_system(double X, double alpha, double beta) {
    auto term = [beta](double u, double& g, double& gp, double& gpp, double& g_b, double& gp_b) {
        const double r2 = u * u + beta * beta;
        const double r = std::sqrt(r2);
        const double r3 = r2 * r;
        const double r5 = r3 * r2;
        g = u * (1.0 - 1.0 / r);
        gp = 1.0 - 1.0 / r + u * u / r3;
        gpp = 3.0 * u * beta * beta / r5;
        g_b = u * beta / r3;
        gp_b = beta / r3 - 3.0 * u * u * beta / r5;
    };
    double gp_, gpp_, gb_, gpb_, g_;
    double gm_, gpm_, gppm_, gbm_, gpbm_;
    term(X + alpha, g_, gp_, gpp_, gb_, gpb_);
    term(X - alpha, gm_, gpm_, gppm_, gbm_, gpbm_);
    CriticalSystem s;
    s.F = g_ + gm_;
    s.Fx = gp_ + gpm_;
    s.dF_da = gp_ - gpm_;
    s.dF_db = gb_ + gbm_;
    s.dFx_da = gpp_ - gppm_;
    s.dFx_db = gpb_ + gpbm_;
    return s;
}

// Damped Newton on (alpha, beta) for {F_s(Xc) = 0, dF_s/dX(Xc) = 0}.
inline bool solve_critical_point(double Xc, double& alpha, double& beta) {
    double a = alpha;
    double b = beta;
    for (int it = 0; it < 60; ++it) {
        const CriticalSystem s = critical_system(Xc, a, b);
        const double res = std::abs(s.F) + std::abs(s.Fx);
        if (res < 1e-12) {
            alpha = a;
            beta = b;
            return true;
        }
        const double det = s.dF_da * s.dFx_db - s.dF_db * s.dFx_da;
        if (!std::isfinite(det) || std::abs(det) < 1e-14) return false;
        double da = (-s.F * s.dFx_db + s.Fx * s.dF_db) / det;
        double db = (-s.dF_da * s.Fx + s.dFx_da * s.F) / det;
        double step = 1.0;
        for (int half = 0; half < 40; ++half) {
            const double an = a + step * da;
            const double bn = b + step * db;
            if (an > 0.0 && bn > 0.0) {
                const CriticalSystem sn = critical_system(Xc, an, bn);
                if (std::abs(sn.F) + std::abs(sn.Fx) < res) {
                    a = an;
                    b = bn;
                    break;
                }
            }
            step *= 0.5;
            if (half == 39) return false;
        }
    }
    return false;
}

} // namespace detail

/// Exact parameterization of the zero-linear-stiffness curve A1(alpha, beta) = 0:
/// alpha = s sqrt(1 - s), beta = s^(3/2) for s in (0, 1]. The pitchfork at the
/// origin degenerates fully at s = 4/5, the codimension-two point
/// O = (4 sqrt(5)/25, 8 sqrt(5)/25).
inline std::array<double, 2> pitchfork_point(double s) {
    return {s * std::sqrt(1.0 - s), std::pow(s, 1.5)};
}

/// Trace the three geometric bifurcation curves in the (alpha, beta) plane on
/// which F_s and dF_s/dX vanish simultaneously at some critical X:
///   B_B  supercritical pitchfork branch (critical X = 0, beta0 < beta < 1),
///   B_H  hysteresis branch              (critical X = 0, 0 < beta < beta0),
///   B_D  double-limit (saddle-node) branch, traced by continuation in the
///        nonzero critical displacement from the point O outward.
/// Every emitted point satisfies |F_s| + |dF_s/dX| < 1e-8 at its critical X.
inline std::vector<BifurcationCurve> trace_geometric_bifurcation_sets(
    int resolution = 256, std::vector<std::string>* diagnostics = nullptr) {
    if (resolution < 16)
        throw std::invalid_argument("trace_geometric_bifurcation_sets: resolution < 16");

    auto note = [diagnostics](const std::string& msg) {
        if (diagnostics) diagnostics->push_back(msg);
    };

    std::vector<BifurcationCurve> out;
    const double s_O = 0.8;

    // Pitchfork branches: exact closed form, origin is the critical point.
    {
        BifurcationCurve bb{"B_B", {}, {}};
        for (int i = 0; i <= resolution; ++i) {
            const double s = s_O + (1.0 - s_O) * static_cast<double>(i) / resolution;
            bb.points.push_back(pitchfork_point(s));
            bb.critical_X.push_back(0.0);
        }
        out.push_back(std::move(bb));

        BifurcationCurve bh{"B_H", {}, {}};
        const double s_min = 0.05;
        for (int i = 0; i <= resolution; ++i) {
            const double s = s_O - (s_O - s_min) * static_cast<double>(i) / resolution;
            bh.points.push_back(pitchfork_point(s));
            bh.critical_X.push_back(0.0);
        }
        out.push_back(std::move(bh));
    }

    // Double-limit branch: continuation in the critical displacement Xc.
    {
        BifurcationCurve bd{"B_D", {}, {}};
        bd.points.push_back(pitchfork_point(s_O)); // limit point O (Xc -> 0)
        bd.critical_X.push_back(0.0);

        double alpha = bd.points.front()[0];
        double beta = bd.points.front()[1];
        double Xc = 0.0;
        double dX = 0.02;
        int emitted = 0;
        while (emitted < resolution) {
            const double Xc_try = Xc + dX;
            double a_try = alpha;
            double b_try = beta;
            if (detail::solve_critical_point(Xc_try, a_try, b_try)) {
                Xc = Xc_try;
                alpha = a_try;
                beta = b_try;
                bd.points.push_back({alpha, beta});
                bd.critical_X.push_back(Xc);
                ++emitted;
                if (alpha >= 1.0 || beta <= 1e-3) break;
                dX = std::min(dX * 1.3, 0.05);
            } else {
                dX *= 0.5;
                if (dX < 1e-7) {
                    note("B_D continuation stalled at Xc = " + std::to_string(Xc));
                    break;
                }
            }
        }
        out.push_back(std::move(bd));
    }

    // Residual audit: drop anything that fails the defining equations.
    for (auto& curve : out) {
        std::vector<std::array<double, 2>> kept;
        std::vector<double> kept_X;
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            const auto& p = curve.points[i];
            const double res = std::abs(restoring_force(curve.critical_X[i], p[0], p[1])) +
                               std::abs(restoring_stiffness(curve.critical_X[i], p[0], p[1]));
            if (res < 1e-8) {
                kept.push_back(p);
                kept_X.push_back(curve.critical_X[i]);
            } else {
                note(curve.name + ": dropped point with residual " + std::to_string(res));
            }
        }
        curve.points = std::move(kept);
        curve.critical_X = std::move(kept_X);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quintic-truncation regions
// ---------------------------------------------------------------------------

/// Region of (A1, A3, A5) space under the sign conditions of the quintic
/// force A1 X + A3 X^3 + A5 X^5. Zones I/II/III (A5 > 0) and IV/V/VI (A5 < 0)
/// carry 1 / 3 / 5 real equilibria respectively.
struct PolyRegion {
    enum class Zone { I, II, III, IV, V, VI, OnSet } zone;
    std::string set_name; ///< B_B1|B_H1|B_D1|B_B2|B_H2|B_D2 when zone == OnSet
};

inline std::string to_string(const PolyRegion& r) {
    switch (r.zone) {
        case PolyRegion::Zone::I: return "I";
        case PolyRegion::Zone::II: return "II";
        case PolyRegion::Zone::III: return "III";
        case PolyRegion::Zone::IV: return "IV";
        case PolyRegion::Zone::V: return "V";
        case PolyRegion::Zone::VI: return "VI";
        case PolyRegion::Zone::OnSet: return "on-set(" + r.set_name + ")";
    }
    return "?";
}

inline PolyRegion polynomial_region(double A1, double A3, double A5) {
    constexpr double tol = 1e-12;
    if (A5 == 0.0)
        throw std::invalid_argument("polynomial_region: A5 = 0 is outside the classification");
    const double disc = A3 * A3 - 4.0 * A1 * A5;
    if (A5 > 0.0) {
        if (std::abs(A1) <= tol) {
            if (A3 < 0.0) return {PolyRegion::Zone::OnSet, "B_B1"};
            if (A3 > 0.0) return {PolyRegion::Zone::OnSet, "B_H1"};
            return {PolyRegion::Zone::OnSet, "B_B1"}; // A1 = A3 = 0: degenerate pitchfork
        }
        if (A1 > 0.0 && A3 < 0.0 && std::abs(disc) <= tol)
            return {PolyRegion::Zone::OnSet, "B_D1"};
        if (A1 > 0.0 && A3 < 0.0 && disc > 0.0) return {PolyRegion::Zone::III, ""};
        if (A1 > 0.0) return {PolyRegion::Zone::I, ""};
        return {PolyRegion::Zone::II, ""};
    }
    // A5 < 0 mirror
    if (std::abs(A1) <= tol) {
        if (A3 < 0.0) return {PolyRegion::Zone::OnSet, "B_B2"};
        if (A3 > 0.0) return {PolyRegion::Zone::OnSet, "B_H2"};
        return {PolyRegion::Zone::OnSet, "B_B2"};
    }
    if (A1 < 0.0 && A3 > 0.0 && std::abs(disc) <= tol)
        return {PolyRegion::Zone::OnSet, "B_D2"};
    if (A1 < 0.0 && A3 > 0.0 && disc > 0.0) return {PolyRegion::Zone::VI, ""};
    if (A1 < 0.0) return {PolyRegion::Zone::IV, ""};
    return {PolyRegion::Zone::V, ""};
}

// ---------------------------------------------------------------------------
// Codimension-two limit-cycle sets
// ---------------------------------------------------------------------------

enum class Codim2Plane { A1Plane, BetaPlane };

/// Region of the damping-vs-stiffness plane cut by the three lines
///   B_h:  xi = A1        (Hopf)
///   B_sc: xi = 0.8 A1    (homoclinic saddle connection)
///   B_po: xi = 0.752 A1  (periodic-orbit fold)
/// ordered I..IV top-to-bottom in xi at fixed A1 > 0.
struct Codim2Region {
    enum class Zone { I, II, III, IV, OnSet } zone;
    std::string set_name; ///< B_h|B_sc|B_po when zone == OnSet
};

inline std::string to_string(const Codim2Region& r) {
    switch (r.zone) {
        case Codim2Region::Zone::I: return "I";
        case Codim2Region::Zone::II: return "II";
        case Codim2Region::Zone::III: return "III";
        case Codim2Region::Zone::IV: return "IV";
        case Codim2Region::Zone::OnSet: return "on-set(" + r.set_name + ")";
    }
    return "?";
}

/// Classify (value, xi) where value is A1 directly (A1Plane) or beta
/// (BetaPlane, A1 = A1(alpha, beta) from the Taylor coefficients).
inline Codim2Region codim2_region(double value, double xi, Codim2Plane plane,
                                  double alpha = 0.0, [[maybe_unused]] double eta = 1.0) {
    constexpr double tol = 1e-12;
    const double A1 =
        (plane == Codim2Plane::A1Plane) ? value : taylor_coefficients(alpha, value).A1;
    const double d_h = xi - A1;
    const double d_sc = xi - 0.8 * A1;
    const double d_po = xi - 0.752 * A1;
    if (std::abs(d_h) <= tol) return {Codim2Region::Zone::OnSet, "B_h"};
    if (std::abs(d_sc) <= tol) return {Codim2Region::Zone::OnSet, "B_sc"};
    if (std::abs(d_po) <= tol) return {Codim2Region::Zone::OnSet, "B_po"};
    if (d_h > 0.0) return {Codim2Region::Zone::I, ""};
    if (d_sc > 0.0) return {Codim2Region::Zone::II, ""};
    if (d_po > 0.0) return {Codim2Region::Zone::III, ""};
    return {Codim2Region::Zone::IV, ""};
}

} // namespace fivh
