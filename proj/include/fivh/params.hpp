#pragma once

// Parameter sets for the friction-induced-vibration (FIV) energy harvester:
// the dimensional bench description and the dimensionless group that every
// downstream computation runs on.

#include <cmath>
#include <stdexcept>
#include <string>

namespace fivh {

/// Contact mode of the mass against the moving belt.
enum class Mode { Slip, Stick };

/// Physical bench parameters (SI units).
struct DimensionalParams {
    double m = 0.2;      ///< lumped mass [kg]
    double k = 1000.0;   ///< stiffness of each oblique spring [N/m]
    double c = 0.1;      ///< viscous damping coefficient [N·s/m]
    double l0 = 0.2;     ///< free length of the oblique springs [m]
    double le = 1.0;     ///< electromagnetic coil length [m]
    double a = 0.0;      ///< half distance between the spring supports [m]
    double b = 0.2;      ///< height between mass and support line [m]
    double mu_s = 0.06;  ///< static friction level [N]
    double mu_m = 0.04;  ///< minimum kinetic friction level [N]
    double v_m = 0.3;    ///< velocity of minimum kinetic friction [m/s]
    double v0 = 0.1;     ///< belt velocity [m/s]
    double L = 1.0;      ///< coil inductance [H]
    double C = 1.0;      ///< capacitance [F]
    double R = 1.0;      ///< load resistance [Ohm]
    double B = 0.1;      ///< magnetic flux density [T]
    double f0 = 0.0;     ///< excitation force amplitude [N]
    double omega0 = 1.0; ///< excitation frequency [rad/s]

    void validate() const {
        auto req = [](bool ok, const char* what) {
            if (!ok) throw std::invalid_argument(std::string("DimensionalParams: ") + what);
        };
        req(m > 0.0, "m must be > 0");
        req(k > 0.0, "k must be > 0");
        req(l0 > 0.0, "l0 must be > 0");
        req(C > 0.0, "C must be > 0");
        req(L > 0.0, "L must be > 0");
        req(v_m > 0.0, "v_m must be > 0");
        req(mu_s >= mu_m, "mu_s must be >= mu_m");
        req(mu_m >= 0.0, "mu_m must be >= 0");
        req(c >= 0.0 && le >= 0.0 && R >= 0.0 && B >= 0.0, "c, le, R, B must be >= 0");
        req(a >= 0.0 && b >= 0.0, "a, b must be >= 0");
        req(!(a == 0.0 && b == 0.0), "degenerate geometry a = b = 0");
        req(v0 >= 0.0 && f0 >= 0.0 && omega0 >= 0.0, "v0, f0, omega0 must be >= 0");
    }
};

/// Dimensionless parameter vector. Defaults are the values used for the
/// numerical studies (gamma = 1, theta = xi_x = xi_q = mu = xi = 0.1,
/// eta = 1) with the flat-spring geometry alpha = 0, beta = 1.
struct Params {
    double alpha = 0.0;  ///< horizontal geometric ratio a/l0
    double beta = 1.0;   ///< vertical geometric ratio b/l0
    double gamma = 1.0;  ///< inertia ratio of the circuit
    double theta = 0.1;  ///< electromechanical coupling ratio
    double xi_x = 0.1;   ///< mechanical damping ratio
    double xi_q = 0.1;   ///< electrical resistance ratio
    double mu = 0.1;     ///< static friction ratio
    double xi = 0.1;     ///< Stribeck linear ratio
    double eta = 1.0;    ///< Stribeck cubic ratio
    double V0 = 0.5;     ///< belt velocity
    double F0 = 0.0;     ///< excitation amplitude
    double Omega0 = 1.0; ///< excitation frequency

    void validate() const {
        auto req = [](bool ok, const char* what) {
            if (!ok) throw std::invalid_argument(std::string("Params: ") + what);
        };
        req(std::isfinite(alpha) && alpha >= 0.0, "alpha must be >= 0");
        req(std::isfinite(beta) && beta >= 0.0, "beta must be >= 0");
        req(!(alpha == 0.0 && beta == 0.0), "degenerate geometry alpha = beta = 0");
        req(gamma > 0.0, "gamma must be > 0");
        req(eta >= 0.0, "eta must be >= 0");
        req(mu >= 0.0, "mu must be >= 0");
        req(theta >= 0.0 && xi_x >= 0.0 && xi_q >= 0.0, "theta, xi_x, xi_q must be >= 0");
        req(V0 >= 0.0 && F0 >= 0.0 && Omega0 >= 0.0, "V0, F0, Omega0 must be >= 0");
        req(std::isfinite(xi), "xi must be finite");
    }
};

/// Linear Stribeck coefficient D1 = 3(mu_s - mu_m) / (2 v_m).
inline double stribeck_d1(double mu_s, double mu_m, double v_m) {
    return 3.0 * (mu_s - mu_m) / (2.0 * v_m);
}

/// Cubic Stribeck coefficient D3 = (mu_s - mu_m) / (2 v_m^3).
inline double stribeck_d3(double mu_s, double mu_m, double v_m) {
    return (mu_s - mu_m) / (2.0 * v_m * v_m * v_m);
}

/// Map the physical bench parameters onto the dimensionless group.
///
/// Time is scaled by the natural frequency omega_n = sqrt(k/m) and lengths
/// by the spring free length l0; the charge scale is q0 = l0 sqrt(kC).
inline Params nondimensionalize(const DimensionalParams& p) {
    p.validate();
    const double omega_n = std::sqrt(p.k / p.m);
    const double sqrt_mk = std::sqrt(p.m * p.k);
    const double d1 = stribeck_d1(p.mu_s, p.mu_m, p.v_m);
    const double d3 = stribeck_d3(p.mu_s, p.mu_m, p.v_m);

    Params q;
    q.alpha = p.a / p.l0;
    q.beta = p.b / p.l0;
    // gamma = L q0^2 / (m l0^2) with q0 = l0 sqrt(kC), so gamma = L k C / m.
    q.gamma = p.L * p.k * p.C / p.m;
    q.theta = p.B * p.le * std::sqrt(p.C / p.m);
    q.xi_x = p.c / (2.0 * sqrt_mk);
    q.xi_q = p.C * p.R * omega_n;
    q.mu = p.mu_s / (p.k * p.l0);
    q.xi = d1 / (2.0 * sqrt_mk);
    q.eta = d3 / sqrt_mk;
    q.V0 = p.v0 / (p.l0 * omega_n);
    q.F0 = p.f0 / (p.k * p.l0);
    q.Omega0 = p.omega0 / omega_n;
    q.validate();
    return q;
}

} // namespace fivh
