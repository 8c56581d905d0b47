#pragma once

// Line-oriented `key = value` run configuration. Unknown keys are rejected;
// missing keys keep the documented defaults.

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fivh/dynamics.hpp"
#include "fivh/params.hpp"

namespace fivh::io {

struct RunConfig {
    Params params{};
    double dt = 1e-3;
    double t_end = 400.0;
    State initial{}; ///< zero initial conditions unless overridden
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline double parse_number(std::string_view v, int line_no, const std::string& key) {
    const std::string text(v);
    char* end = nullptr;
    const double x = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw std::invalid_argument("config line " + std::to_string(line_no) + ": key '" + key +
                                    "' has non-numeric value '" + text + "'");
    return x;
}

} // namespace detail

/// Parse a config text into a validated RunConfig.
/// Recognized keys: alpha, beta, gamma, theta, xi_x, xi_q, mu, xi, eta,
/// v0, f0, omega0, dt, t_end, init_x, init_v, init_q, init_i.
/// `#` starts a comment; blank lines are ignored.
inline RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string_view val = detail::trim(line.substr(eq + 1));
        const double x = detail::parse_number(val, line_no, key);

        if (key == "alpha") cfg.params.alpha = x;
        else if (key == "beta") cfg.params.beta = x;
        else if (key == "gamma") cfg.params.gamma = x;
        else if (key == "theta") cfg.params.theta = x;
        else if (key == "xi_x") cfg.params.xi_x = x;
        else if (key == "xi_q") cfg.params.xi_q = x;
        else if (key == "mu") cfg.params.mu = x;
        else if (key == "xi") cfg.params.xi = x;
        else if (key == "eta") cfg.params.eta = x;
        else if (key == "v0") cfg.params.V0 = x;
        else if (key == "f0") cfg.params.F0 = x;
        else if (key == "omega0") cfg.params.Omega0 = x;
        else if (key == "dt") cfg.dt = x;
        else if (key == "t_end") cfg.t_end = x;
        else if (key == "init_x") cfg.initial.X = x;
        else if (key == "init_v") cfg.initial.V = x;
        else if (key == "init_q") cfg.initial.Q = x;
        else if (key == "init_i") cfg.initial.I = x;
        else
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
    }
    try {
        cfg.params.validate();
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("config: dt must be > 0");
    if (!(cfg.t_end > 0.0)) throw std::invalid_argument("config: t_end must be > 0");
    return cfg;
}

} // namespace fivh::io
