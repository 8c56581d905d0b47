#pragma once

// Closed-form force and energy functions of the V-spring / belt oscillator.
// Everything here is dimensionless and a pure function of its arguments.

#include <cmath>
#include <stdexcept>

#include "fivh/params.hpp"

namespace fivh {

namespace detail {

// One oblique-spring contribution u (1 - 1/sqrt(u^2 + beta^2)).
// For beta = 0 the factor blows up at u = 0 while the prefactor vanishes;
// the product is defined as 0 there (midpoint of the +/-1 jump).
inline double spring_term(double u, double beta) {
    if (u == 0.0 && beta == 0.0) return 0.0;
    return u * (1.0 - 1.0 / std::sqrt(u * u + beta * beta));
}

// d/du of spring_term. Equals 1 identically on the beta = 0 axis (u != 0).
inline double spring_term_slope(double u, double beta) {
    if (beta == 0.0) return 1.0;
    const double r2 = u * u + beta * beta;
    const double r = std::sqrt(r2);
    return 1.0 - 1.0 / r + (u * u) / (r2 * r);
}

// Damping quotient u^2 / (u^2 + beta^2), with the 0/0 point at
// u = beta = 0 set to its limit value 1 along u != 0.
inline double damping_quotient(double u, double beta) {
    if (u == 0.0 && beta == 0.0) return 1.0;
    return (u * u) / (u * u + beta * beta);
}

} // namespace detail

/// Nonlinear restoring force of the two oblique springs,
/// F_s(X) = (X+a)(1 - 1/sqrt((X+a)^2+b^2)) + (X-a)(1 - 1/sqrt((X-a)^2+b^2))
/// with (a, b) = (alpha, beta). Odd in X.
inline double restoring_force(double X, double alpha, double beta) {
    return detail::spring_term(X + alpha, beta) + detail::spring_term(X - alpha, beta);
}

/// dF_s/dX, the local stiffness of the restoring force.
inline double restoring_stiffness(double X, double alpha, double beta) {
    return detail::spring_term_slope(X + alpha, beta) +
           detail::spring_term_slope(X - alpha, beta);
}

/// Elastic potential with d(PEN)/dX = F_s. Even in X, nonnegative, and zero
/// exactly where both springs sit at their free length.
inline double potential_energy(double X, double alpha, double beta) {
    const double rp = std::sqrt((X + alpha) * (X + alpha) + beta * beta);
    const double rm = std::sqrt((X - alpha) * (X - alpha) + beta * beta);
    return 0.5 * (rp - 1.0) * (rp - 1.0) + 0.5 * (rm - 1.0) * (rm - 1.0);
}

/// Geometric damping force of the two inclined dashpots,
/// F_m = xi_x [ (X+a)^2/((X+a)^2+b^2) + (X-a)^2/((X-a)^2+b^2) ] V.
/// Bounded by 2 xi_x |V|.
inline double damping_force(double X, double V, double alpha, double beta, double xi_x) {
    return xi_x * (detail::damping_quotient(X + alpha, beta) +
                   detail::damping_quotient(X - alpha, beta)) * V;
}

/// Friction force value: either a determinate slip value or the set-valued
/// static range [-mu, mu] at zero relative velocity.
struct FrictionValue {
    double lo;
    double hi;

    [[nodiscard]] bool set_valued() const { return lo != hi; }
    [[nodiscard]] double value() const {
        if (set_valued()) throw std::logic_error("FrictionValue: set-valued at V_r = 0");
        return lo;
    }
};

/// Slip branch of the Stribeck law, mu sgn(V_r) - xi V_r + eta V_r^3.
/// sgn(0) = 0 here; callers that need a one-sided limit pick the branch.
inline double slip_friction(double V_r, double mu, double xi, double eta) {
    const double s = (V_r > 0.0) ? 1.0 : (V_r < 0.0 ? -1.0 : 0.0);
    return mu * s - xi * V_r + eta * V_r * V_r * V_r;
}

/// Set-valued Stribeck friction: determinate for V_r != 0, [-mu, mu] at V_r = 0.
inline FrictionValue stribeck_friction(double V_r, double mu, double xi, double eta) {
    if (V_r == 0.0) return {-mu, mu};
    const double f = slip_friction(V_r, mu, xi, eta);
    return {f, f};
}

/// Dimensional slip friction mu_s sgn(v_r) - D1 v_r + D3 v_r^3.
inline double dimensional_slip_friction(double v_r, double mu_s, double d1, double d3) {
    const double s = (v_r > 0.0) ? 1.0 : (v_r < 0.0 ? -1.0 : 0.0);
    return mu_s * s - d1 * v_r + d3 * v_r * v_r * v_r;
}

/// Coefficients of the quintic truncation F_s ~ A1 X + A3 X^3 + A5 X^5.
struct TaylorCoeffs {
    double A1;
    double A3;
    double A5;
};

/// Closed-form Taylor coefficients of the restoring force at X = 0:
///   A1 = 2 - 2/r + 2 a^2/r^3
///   A3 = 1/r^3 - 6 a^2/r^5 + 5 a^4/r^7
///   A5 = -3/(4 r^5) + 45 a^2/(4 r^7) - 105 a^4/(4 r^9) + 63 a^6/(4 r^11)
/// with r = sqrt(a^2 + b^2), (a, b) = (alpha, beta). Each A_k equals the
/// k-th derivative of F_s at 0 over k! (checked against a derivative oracle).
inline TaylorCoeffs taylor_coefficients(double alpha, double beta) {
    const double s2 = alpha * alpha + beta * beta;
    if (s2 <= 0.0) throw std::invalid_argument("taylor_coefficients: alpha = beta = 0");
    const double r = std::sqrt(s2);
    const double r3 = s2 * r;
    const double r5 = r3 * s2;
    const double r7 = r5 * s2;
    const double r9 = r7 * s2;
    const double r11 = r9 * s2;
    const double a2 = alpha * alpha;
    const double a4 = a2 * a2;
    const double a6 = a4 * a2;

    TaylorCoeffs tc;
    tc.A1 = 2.0 - 2.0 / r + 2.0 * a2 / r3;
    tc.A3 = 1.0 / r3 - 6.0 * a2 / r5 + 5.0 * a4 / r7;
    tc.A5 = -0.75 / r5 + 11.25 * a2 / r7 - 26.25 * a4 / r9 + 15.75 * a6 / r11;
    return tc;
}

/// Mechanical energy H = V^2/2 + PEN(X), conserved by the undamped,
/// uncoupled free vibration.
inline double hamiltonian(double X, double V, double alpha, double beta) {
    return 0.5 * V * V + potential_energy(X, alpha, beta);
}

} // namespace fivh
