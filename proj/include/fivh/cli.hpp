#pragma once

// Command-line surface. Every subcommand is a thin shell over one library
// operation and emits one CSV table (or a label on standard output).

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fivh/bifurcation.hpp"
#include "fivh/config.hpp"
#include "fivh/csv.hpp"
#include "fivh/dynamics.hpp"
#include "fivh/equilibria.hpp"
#include "fivh/forces.hpp"
#include "fivh/harmonic_balance.hpp"
#include "fivh/limit_cycles.hpp"
#include "fivh/params.hpp"
#include "fivh/sweep.hpp"

namespace fivh::cli {

namespace detail {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string join_path(const std::string& dir, const std::string& file) {
    if (dir.empty() || dir == ".") return file;
    if (dir.back() == '/') return dir + file;
    return dir + "/" + file;
}

inline std::string fd(double v) { return io::format_double(v); }

// Options shared by the computing subcommands: config file, output directory
// and per-parameter overrides applied on top of the config.
struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    io::RunConfig cfg;

    std::vector<std::pair<std::string, double>> overrides;

    void attach(CLI::App* sub, bool with_geometry = true) {
        sub->add_option("--config", config_path, "run configuration file (key = value lines)");
        sub->add_option("--out", out_dir, "output directory for CSV files");
        auto add = [this, sub](const std::string& name, const std::string& spelling,
                               const std::string& help) {
            auto* opt = sub->add_option(spelling, help);
            opt->each([this, name](const std::string& v) {
                overrides.push_back({name, std::stod(v)});
            });
            opt->check(CLI::Number);
        };
        if (with_geometry) {
            add("alpha", "--alpha", "horizontal geometric ratio");
            add("beta", "--beta", "vertical geometric ratio");
        }
        add("gamma", "--gamma", "inertia ratio");
        add("theta", "--theta", "electromechanical coupling ratio");
        add("xi_x", "--xi-x,--xi_x", "mechanical damping ratio");
        add("xi_q", "--xi-q,--xi_q", "electrical resistance ratio");
        add("mu", "--mu", "static friction ratio");
        add("xi", "--xi", "Stribeck linear ratio");
        add("eta", "--eta", "Stribeck cubic ratio");
        add("v0", "--v0", "belt velocity");
        add("f0", "--f0", "excitation amplitude");
        add("omega0", "--omega0", "excitation frequency");
    }

    void resolve() {
        cfg = config_path.empty() ? io::RunConfig{} : io::parse_config(slurp(config_path));
        for (const auto& [k, v] : overrides) {
            Params& p = cfg.params;
            if (k == "alpha") p.alpha = v;
            else if (k == "beta") p.beta = v;
            else if (k == "gamma") p.gamma = v;
            else if (k == "theta") p.theta = v;
            else if (k == "xi_x") p.xi_x = v;
            else if (k == "xi_q") p.xi_q = v;
            else if (k == "mu") p.mu = v;
            else if (k == "xi") p.xi = v;
            else if (k == "eta") p.eta = v;
            else if (k == "v0") p.V0 = v;
            else if (k == "f0") p.F0 = v;
            else if (k == "omega0") p.Omega0 = v;
        }
        cfg.params.validate();
    }
};

} // namespace detail

/// Run one CLI invocation. `args` holds the arguments after the program name.
/// Returns 0 on success, 1 on computation/IO failure, 2 on usage errors.
inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"friction-driven multistable energy harvester toolkit"};
    app.require_subcommand(1);

    // ---- force / potential -------------------------------------------------
    detail::CommonOpts force_opts, pot_opts;
    double curve_x_min = -2.0, curve_x_max = 2.0;
    int curve_n = 401;
    CLI::App* cmd_force = app.add_subcommand("force", "restoring force curve F_s(X)");
    force_opts.attach(cmd_force);
    cmd_force->add_option("--x-min", curve_x_min);
    cmd_force->add_option("--x-max", curve_x_max);
    cmd_force->add_option("--n", curve_n, "number of samples");

    CLI::App* cmd_pot = app.add_subcommand("potential", "elastic potential curve PEN(X)");
    pot_opts.attach(cmd_pot);
    cmd_pot->add_option("--x-min", curve_x_min);
    cmd_pot->add_option("--x-max", curve_x_max);
    cmd_pot->add_option("--n", curve_n, "number of samples");

    // ---- friction ----------------------------------------------------------
    detail::CommonOpts fric_opts;
    double vr_min = -2.0, vr_max = 2.0;
    int fric_n = 401;
    CLI::App* cmd_fric = app.add_subcommand("friction", "Stribeck friction curve F_d(V_r)");
    fric_opts.attach(cmd_fric, false);
    cmd_fric->add_option("--vr-min", vr_min);
    cmd_fric->add_option("--vr-max", vr_max);
    cmd_fric->add_option("--n", fric_n, "number of samples");

    // ---- equilibria / classify ----------------------------------------------
    detail::CommonOpts eq_opts, cls_opts;
    double eq_x_max = 3.0;
    CLI::App* cmd_eq = app.add_subcommand("equilibria", "equilibrium positions and stability");
    eq_opts.attach(cmd_eq);
    cmd_eq->add_option("--x-max", eq_x_max, "scan bound");

    CLI::App* cmd_cls = app.add_subcommand("classify", "well topology label (SW/QZS3/QZS5/DW/TW)");
    cls_opts.attach(cmd_cls);

    // ---- bifurcation ---------------------------------------------------------
    detail::CommonOpts bif_opts;
    int bif_resolution = 256;
    CLI::App* cmd_bif = app.add_subcommand("bifurcation", "geometric bifurcation sets B_B/B_H/B_D");
    bif_opts.attach(cmd_bif);
    cmd_bif->add_option("--resolution", bif_resolution, "points per curve");

    // ---- codim2 ---------------------------------------------------------------
    detail::CommonOpts c2_opts;
    std::string c2_plane = "a1";
    double c2_a1 = 1.0, c2_beta = 1.0, c2_xi = 0.5, c2_alpha = 0.0;
    CLI::App* cmd_c2 = app.add_subcommand("codim2", "limit-cycle region in the damping plane");
    cmd_c2->add_option("--plane", c2_plane)->check(CLI::IsMember({"a1", "beta"}));
    cmd_c2->add_option("--a1", c2_a1, "linear stiffness (a1 plane)");
    cmd_c2->add_option("--beta", c2_beta, "vertical ratio (beta plane)");
    cmd_c2->add_option("--alpha", c2_alpha, "fixed alpha for the beta plane");
    cmd_c2->add_option("--xi", c2_xi, "Stribeck linear ratio");

    // ---- simulate --------------------------------------------------------------
    detail::CommonOpts sim_opts;
    double sim_t_end = 0.0, sim_dt = 0.0;
    int sim_stride = 1;
    CLI::App* cmd_sim = app.add_subcommand("simulate", "time integration to a timeseries CSV");
    sim_opts.attach(cmd_sim);
    cmd_sim->add_option("--t-end", sim_t_end, "integration horizon (default from config)");
    cmd_sim->add_option("--dt", sim_dt, "step size (default from config)");
    cmd_sim->add_option("--stride", sim_stride, "emit every n-th sample")->check(CLI::PositiveNumber);

    // ---- cycles -----------------------------------------------------------------
    detail::CommonOpts cyc_opts;
    double cyc_settle = 400.0, cyc_observe = 200.0, cyc_span = 1.0;
    int cyc_grid = 5;
    std::string cyc_preset;
    CLI::App* cmd_cyc = app.add_subcommand("cycles", "distinct limit cycles over an IC grid");
    cyc_opts.attach(cmd_cyc);
    cmd_cyc->add_option("--t-settle", cyc_settle);
    cmd_cyc->add_option("--t-observe", cyc_observe);
    cmd_cyc->add_option("--grid-n", cyc_grid, "grid points per axis");
    cmd_cyc->add_option("--grid-span", cyc_span, "IC grid spans [-span, span]^2");
    cmd_cyc->add_option("--preset", cyc_preset, "self-excited reference geometry")
        ->check(CLI::IsMember({"sw", "dw", "tw"}));

    // ---- amplitude ----------------------------------------------------------------
    detail::CommonOpts amp_opts;
    double omega_min = 0.1, omega_max = 3.0, amp_max = 5.0;
    int amp_grid = 256;
    std::string amp_source = "real", amp_mode = "verbatim";
    CLI::App* cmd_amp = app.add_subcommand("amplitude", "harmonic-balance amplitude curve");
    amp_opts.attach(cmd_amp);
    cmd_amp->add_option("--omega-min", omega_min);
    cmd_amp->add_option("--omega-max", omega_max);
    cmd_amp->add_option("--grid", amp_grid, "frequency grid size");
    cmd_amp->add_option("--a-max", amp_max, "amplitude scan bound");
    cmd_amp->add_option("--source", amp_source)->check(CLI::IsMember({"real", "imag"}));
    cmd_amp->add_option("--hb-mode", amp_mode)->check(CLI::IsMember({"verbatim", "corrected"}));

    // ---- sweep -------------------------------------------------------------------
    detail::CommonOpts swp_opts;
    std::string swp_vary = "theta";
    double swp_from = 0.0, swp_to = 1.0, swp_t_end = 400.0, swp_window = 100.0;
    int swp_steps = 20;
    CLI::App* cmd_swp = app.add_subcommand("sweep", "electrical-output parameter sweep");
    swp_opts.attach(cmd_swp);
    cmd_swp->add_option("--vary", swp_vary)->check(CLI::IsMember({"v0", "theta", "xi_x", "xi_q"}));
    cmd_swp->add_option("--from", swp_from);
    cmd_swp->add_option("--to", swp_to);
    cmd_swp->add_option("--steps", swp_steps)->check(CLI::PositiveNumber);
    cmd_swp->add_option("--t-end", swp_t_end);
    cmd_swp->add_option("--window", swp_window);

    // ---- portrait ------------------------------------------------------------------
    detail::CommonOpts por_opts;
    double por_x_min = -2.0, por_x_max = 2.0, por_v_min = -2.0, por_v_max = 2.0;
    int por_n = 101;
    CLI::App* cmd_por = app.add_subcommand("portrait", "Hamiltonian level-set point cloud");
    por_opts.attach(cmd_por);
    cmd_por->add_option("--x-min", por_x_min);
    cmd_por->add_option("--x-max", por_x_max);
    cmd_por->add_option("--v-min", por_v_min);
    cmd_por->add_option("--v-max", por_v_max);
    cmd_por->add_option("--n", por_n, "grid points per axis");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (cmd_force->parsed() || cmd_pot->parsed()) {
            const bool is_force = cmd_force->parsed();
            detail::CommonOpts& o = is_force ? force_opts : pot_opts;
            o.resolve();
            const Params& p = o.cfg.params;
            io::CsvTable t;
            t.schema = "curve";
            t.header = {"X", is_force ? "F_s" : "PEN"};
            for (int i = 0; i < curve_n; ++i) {
                const double x = curve_x_min + (curve_x_max - curve_x_min) * i /
                                                   std::max(1, curve_n - 1);
                const double y = is_force ? restoring_force(x, p.alpha, p.beta)
                                          : potential_energy(x, p.alpha, p.beta);
                t.add_row({detail::fd(x), detail::fd(y)});
            }
            const std::string path =
                detail::join_path(o.out_dir, is_force ? "force.csv" : "potential.csv");
            io::write_csv(t, path);
            out << path << "\n";
        } else if (cmd_fric->parsed()) {
            fric_opts.resolve();
            const Params& p = fric_opts.cfg.params;
            io::CsvTable t;
            t.schema = "curve";
            t.header = {"V_r", "F_d_lo", "F_d_hi"};
            for (int i = 0; i < fric_n; ++i) {
                const double vr = vr_min + (vr_max - vr_min) * i / std::max(1, fric_n - 1);
                const FrictionValue f = stribeck_friction(vr, p.mu, p.xi, p.eta);
                t.add_row({detail::fd(vr), detail::fd(f.lo), detail::fd(f.hi)});
            }
            const std::string path = detail::join_path(fric_opts.out_dir, "friction.csv");
            io::write_csv(t, path);
            out << path << "\n";
        } else if (cmd_eq->parsed()) {
            eq_opts.resolve();
            const Params& p = eq_opts.cfg.params;
            io::CsvTable t;
            t.schema = "equilibria";
            t.header = {"X_star", "stability", "local_stiffness"};
            for (const Equilibrium& e : find_equilibria(p.alpha, p.beta, eq_x_max))
                t.add_row({detail::fd(e.X_star),
                           e.stability == Stability::Center ? "1" : "-1",
                           detail::fd(e.local_stiffness)});
            const std::string path = detail::join_path(eq_opts.out_dir, "equilibria.csv");
            io::write_csv(t, path);
            out << path << "\n";
        } else if (cmd_cls->parsed()) {
            cls_opts.resolve();
            const Params& p = cls_opts.cfg.params;
            out << to_string(classify_wells(p.alpha, p.beta).label) << "\n";
        } else if (cmd_bif->parsed()) {
            bif_opts.resolve();
            io::CsvTable t;
            t.schema = "bifurcation";
            t.header = {"set", "alpha", "beta"};
            for (const BifurcationCurve& c : trace_geometric_bifurcation_sets(bif_resolution))
                for (const auto& pt : c.points)
                    t.add_row({c.name, detail::fd(pt[0]), detail::fd(pt[1])});
            const std::string path = detail::join_path(bif_opts.out_dir, "bifurcation.csv");
            io::write_csv(t, path);
            out << path << "\n";
        } else if (cmd_c2->parsed()) {
            const Codim2Plane plane =
                c2_plane == "a1" ? Codim2Plane::A1Plane : Codim2Plane::BetaPlane;
            const double value = plane == Codim2Plane::A1Plane ? c2_a1 : c2_beta;
            out << to_string(codim2_region(value, c2_xi, plane, c2_alpha)) << "\n";
        } else if (cmd_sim->parsed()) {
            sim_opts.resolve();
            const io::RunConfig& cfg = sim_opts.cfg;
            const double t_end = sim_t_end > 0.0 ? sim_t_end : cfg.t_end;
            const double dt = sim_dt > 0.0 ? sim_dt : cfg.dt;
            const Trajectory traj = integrate(cfg.params, cfg.initial, t_end, dt);
            io::CsvTable t;
            t.schema = "timeseries";
            t.header = {"T", "X", "V", "Q", "I", "mode", "U", "P"};
            const auto& ss = traj.samples;
            for (std::size_t i = 0; i < ss.size(); ++i) {
                if (i % static_cast<std::size_t>(sim_stride) != 0 && i + 1 != ss.size()) continue;
                const State& s = ss[i];
                const double U = cfg.params.xi_q * s.I;
                t.add_row({detail::fd(s.T), detail::fd(s.X), detail::fd(s.V), detail::fd(s.Q),
                           detail::fd(s.I), s.mode == Mode::Stick ? "1" : "0", detail::fd(U),
                           detail::fd(U * s.I)});
            }
            const std::string path = detail::join_path(sim_opts.out_dir, "timeseries.csv");
            io::write_csv(t, path);
            out << path << "\n";
        } else if (cmd_cyc->parsed()) {
            cyc_opts.resolve();
            Params p = cyc_opts.cfg.params;
            if (cyc_preset == "sw") p = self_excited_reference_params(0.0, 1.0);
            else if (cyc_preset == "dw") p = self_excited_reference_params(0.25, 2.5);
            else if (cyc_preset == "tw") p = self_excited_reference_params(0.5, 0.2);
            std::vector<State> grid;
            for (int i = 0; i < cyc_grid; ++i)
                for (int j = 0; j < cyc_grid; ++j) {
                    State s;
                    s.X = -cyc_span + 2.0 * cyc_span * i / std::max(1, cyc_grid - 1);
                    s.V = -cyc_span + 2.0 * cyc_span * j / std::max(1, cyc_grid - 1);
                    grid.push_back(s);
                }
            const auto cycles = detect_limit_cycles(p, grid, cyc_settle, cyc_observe,
                                                    cyc_opts.cfg.dt);
            io::CsvTable t;
            t.schema = "cycles";
            t.header = {"cycle", "period", "amplitude", "mean_X"};
            for (std::size_t i = 0; i < cycles.size(); ++i)
                t.add_row({std::to_string(i + 1), detail::fd(cycles[i].period),
                           detail::fd(cycles[i].amplitude), detail::fd(cycles[i].mean_X)});
            const std::string path = detail::join_path(cyc_opts.out_dir, "cycles.csv");
            io::write_csv(t, path);
            out << path << "\n";
        } else if (cmd_amp->parsed()) {
            amp_opts.resolve();
            const Params& p = amp_opts.cfg.params;
            const TaylorCoeffs tc = taylor_coefficients(p.alpha, p.beta);
            const HBSource source =
                amp_source == "real" ? HBSource::RealPart : HBSource::ImagPart;
            const HBMode mode = amp_mode == "verbatim" ? HBMode::Verbatim : HBMode::Corrected;
            const AmplitudeCurve curve =
                amplitude_curve(p, tc, omega_min, omega_max, amp_grid, source, mode, amp_max);
            io::CsvTable t;
            t.schema = "amplitude";
            t.header = {"Omega", "branch", "A_X", "source"};
            for (const AmplitudePoint& pt : curve.points)
                t.add_row({detail::fd(pt.Omega), std::to_string(pt.branch), detail::fd(pt.A_X),
                           source == HBSource::RealPart ? "real" : "imag"});
            const std::string path = detail::join_path(amp_opts.out_dir, "amplitude.csv");
            io::write_csv(t, path);
            out << path << "\n";
        } else if (cmd_swp->parsed()) {
            swp_opts.resolve();
            SweepParam varied = SweepParam::Theta;
            if (swp_vary == "v0") varied = SweepParam::V0;
            else if (swp_vary == "theta") varied = SweepParam::Theta;
            else if (swp_vary == "xi_x") varied = SweepParam::XiX;
            else if (swp_vary == "xi_q") varied = SweepParam::XiQ;
            SimConfig sim;
            sim.dt = swp_opts.cfg.dt;
            sim.T_end = swp_t_end;
            sim.window = swp_window;
            sim.s0 = swp_opts.cfg.initial;
            const auto results = sweep(swp_opts.cfg.params, varied, swp_from, swp_to, swp_steps,
                                       default_cases(), sim);
            io::CsvTable t;
            t.schema = "sweep";
            t.header = {"case", "param", "value", "Q_rms", "I_rms", "U_rms", "P_avg"};
            for (const SweepResult& r : results)
                for (const SweepRow& row : r.rows) {
                    if (!row.ok) {
                        t.add_row({r.case_name, to_string(r.varied), detail::fd(row.value), "nan",
                                   "nan", "nan", "nan"});
                        continue;
                    }
                    t.add_row({r.case_name, to_string(r.varied), detail::fd(row.value),
                               detail::fd(row.stats.Q_rms), detail::fd(row.stats.I_rms),
                               detail::fd(row.stats.U_rms), detail::fd(row.stats.P_avg)});
                }
            const std::string path = detail::join_path(swp_opts.out_dir, "sweep.csv");
            io::write_csv(t, path);
            out << path << "\n";
        } else if (cmd_por->parsed()) {
            por_opts.resolve();
            const Params& p = por_opts.cfg.params;
            io::CsvTable t;
            t.schema = "portrait";
            t.header = {"X", "V", "H"};
            for (int i = 0; i < por_n; ++i)
                for (int j = 0; j < por_n; ++j) {
                    const double x =
                        por_x_min + (por_x_max - por_x_min) * i / std::max(1, por_n - 1);
                    const double v =
                        por_v_min + (por_v_max - por_v_min) * j / std::max(1, por_n - 1);
                    t.add_row({detail::fd(x), detail::fd(v),
                               detail::fd(hamiltonian(x, v, p.alpha, p.beta))});
                }
            const std::string path = detail::join_path(por_opts.out_dir, "portrait.csv");
            io::write_csv(t, path);
            out << path << "\n";
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace fivh::cli
