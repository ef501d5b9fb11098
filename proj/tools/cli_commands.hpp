#pragma once

// Subcommands of the cbath command-line tool. Kept in a header so the test
// suite can drive them in-process.

#include <cbath/cbath.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cbath::cli {

using nlohmann::json;

enum ExitCode : int { ok = 0, failure = 1, config_error = 2, numerical_error = 3 };

/// Flags of one subcommand. Every flag may also come from a --config JSON
/// object keyed by the flag's long name; giving the same flag both ways is an
/// error.
class FlagSet {
public:
    explicit FlagSet(CLI::App* app) : app_(app)
    {
        app_->add_option("--config", config_path_,
                         "JSON file with flag values keyed by flag name (no leading dashes)");
    }

    template <class T>
    void add(const std::string& name, T& storage, const std::string& help)
    {
        CLI::Option* opt = app_->add_option("--" + name, storage, help);
        if constexpr (std::is_arithmetic_v<T>)
            opt->default_val(storage);
        entries_[name] = Entry{opt, [&storage, name](const json& v) {
                                   try {
                                       storage = v.get<T>();
                                   } catch (const json::exception&) {
                                       throw ConfigError("config value for '" + name
                                                         + "' has the wrong type");
                                   }
                               },
                               false};
    }

    void add_flag(const std::string& name, bool& storage, const std::string& help)
    {
        CLI::Option* opt = app_->add_flag("--" + name, storage, help);
        entries_[name] = Entry{opt, [&storage, name](const json& v) {
                                   if (!v.is_boolean())
                                       throw ConfigError("config value for '" + name
                                                         + "' must be a boolean");
                                   storage = v.get<bool>();
                               },
                               false};
    }

    /// Merge the --config file, if any. Call after parsing.
    void apply_config()
    {
        if (config_path_.empty())
            return;
        std::ifstream in(config_path_);
        if (!in)
            throw ConfigError("config: cannot open '" + config_path_ + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ConfigError("config: invalid JSON in '" + config_path_ + "': " + e.what());
        }
        if (!j.is_object())
            throw ConfigError("config: top-level value must be a JSON object");
        for (auto it = j.begin(); it != j.end(); ++it) {
            auto e = entries_.find(it.key());
            if (e == entries_.end())
                throw ConfigError("config: unknown key '" + it.key() + "'");
            if (e->second.opt->count() > 0)
                throw ConfigError("'" + it.key()
                                  + "' is given both on the command line and in the config file");
            e->second.set(it.value());
            e->second.from_config = true;
        }
    }

    bool given(const std::string& name) const
    {
        const auto& e = entries_.at(name);
        return e.opt->count() > 0 || e.from_config;
    }

private:
    struct Entry {
        CLI::Option* opt;
        std::function<void(const json&)> set;
        bool from_config;
    };
    CLI::App* app_;
    std::string config_path_;
    std::map<std::string, Entry> entries_;
};

struct ModelFlags {
    double gamma1 = 1.01;
    double gamma2 = 0.01;
    double temperature = 0.0;
    double zeta = 1.0;
    double eta = 1.0;
    double omega = 0.001;

    void add_to(FlagSet& flags)
    {
        flags.add("gamma1", gamma1, "Decay rate gamma1 [units of 1/tau]; needs --gamma2");
        flags.add("gamma2", gamma2, "Absorption rate gamma2 [units of 1/tau]; needs --gamma1");
        flags.add("temperature", temperature,
                  "Bath temperature T [dimensionless, enters as exp(1/T)]; alternative to "
                  "--gamma1/--gamma2");
        flags.add("zeta", zeta, "Spontaneous emission constant zeta [rate; sets tau = zeta t]");
        flags.add("eta", eta, "Coupling ratio eta = g2/g1 [dimensionless]");
        flags.add("omega", omega, "System frequency Omega [units of zeta]");
    }

    /// Exactly one of (temperature [+ zeta]) or (gamma1 + gamma2).
    ModelParams resolve(const FlagSet& flags) const
    {
        const bool g1 = flags.given("gamma1"), g2 = flags.given("gamma2");
        const bool t = flags.given("temperature");
        if ((g1 || g2) && t)
            throw ConfigError("temperature: give either --temperature (with --zeta) or "
                              "--gamma1/--gamma2, not both");
        if (t)
            return ModelParams::from_temperature(zeta, temperature, eta, omega);
        if (g1 != g2)
            throw ConfigError(std::string(g1 ? "gamma2" : "gamma1")
                              + ": --gamma1 and --gamma2 must be given together");
        if (!g1)
            throw ConfigError("gamma1: rates are required (--gamma1 and --gamma2, or "
                              "--temperature)");
        if (flags.given("zeta") && !(zeta > 0.0))
            throw ConfigError("zeta must be a positive finite number");
        return ModelParams::from_rates(gamma1, gamma2, eta, omega, zeta);
    }
};

struct OutputFlags {
    std::string out = "-";
    std::string format = "csv";

    void add_to(FlagSet& flags, const std::string& default_format)
    {
        format = default_format;
        flags.add("out", out, "Output file ('-' for stdout); written atomically");
        flags.add("format", format, "Output format: csv or json");
    }

    void validate(bool csv_allowed) const
    {
        if (format != "csv" && format != "json")
            throw ConfigError("format: must be 'csv' or 'json', got '" + format + "'");
        if (format == "csv" && !csv_allowed)
            throw ConfigError("format: this command emits JSON only");
    }
};

inline json angles_json(const MeasurementAngles& a)
{
    return {{"theta", a.theta}, {"phi", a.phi}};
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// simulate

struct SimulateCommand {
    ModelFlags model;
    OutputFlags output;
    double p = 1.0;
    double q = 0.0;
    double t_max = 6.0;
    int samples = default_samples;
    int steps = 0;
    std::string method = "rk";
    std::string trajectory_out;
    int discord_grid = 64;
    unsigned threads = 0;

    void add_to(FlagSet& flags)
    {
        model.add_to(flags);
        output.add_to(flags, "csv");
        flags.add("p", p, "Initial qubit amplitude p in [-1, 1] [dimensionless]");
        flags.add("q", q, "Initial oscillator amplitude q in [-1, 1] [dimensionless]");
        flags.add("t-max", t_max, "Final time [dimensionless tau = zeta t]");
        flags.add("samples", samples, "Number of uniform output samples including t = 0");
        flags.add("steps", steps,
                  "RK4 steps (0 = choose so that step * spectral radius <= 0.1)");
        flags.add("method", method, "Integrator: rk (fixed-step RK4) or exact (matrix exponential)");
        flags.add("trajectory-out", trajectory_out,
                  "Also write the full density-matrix trajectory CSV to this path");
        flags.add("discord-grid", discord_grid,
                  "Points per axis of the (theta, phi) grid of the discord search");
        flags.add("threads", threads, "Worker threads for correlation measures (0 = all cores)");
    }

    int run(const FlagSet& flags) const
    {
        const ModelParams params = model.resolve(flags);
        output.validate(true);
        if (!(t_max >= 0.0) || !std::isfinite(t_max))
            throw ConfigError("t-max: must be a non-negative finite number");
        if (samples < 1)
            throw ConfigError("samples: must be at least 1");
        if (steps < 0)
            throw ConfigError("steps: must be non-negative");
        if (method != "rk" && method != "exact")
            throw ConfigError("method: must be 'rk' or 'exact'");
        if (discord_grid < 2)
            throw ConfigError("discord-grid: must be at least 2");
        const DensityMatrix rho0 = product_state(p, q);

        const Liouvillian l = build_liouvillian(params);
        const std::string label = "product_state(p=" + format_number(p) + ", q=" + format_number(q) + ")";
        Trajectory traj;
        if (method == "rk") {
            int n = steps;
            if (n == 0) {
                const double radius = spectral_radius(l);
                n = std::max(1, static_cast<int>(std::ceil(t_max * radius / 0.1)));
            }
            traj = evolve_rk(l, rho0, t_max, n, samples, label);
            const auto& d = traj.diagnostics;
            std::cerr << "rk4: steps=" << d.steps << " h=" << format_number(d.step_size)
                      << " max_trace_correction=" << format_number(d.max_trace_correction)
                      << " max_hermiticity_correction="
                      << format_number(d.max_hermiticity_correction) << "\n";
            if (d.insufficient_steps)
                std::cerr << "warning: trace corrections exceeded "
                          << format_number(trace_correction_limit)
                          << "; increase --steps\n";
        } else {
            const auto times = uniform_times(t_max, samples);
            traj = evolve_exact(l, rho0, times, label);
        }

        DiscordOptions dopt;
        dopt.grid_theta = dopt.grid_phi = discord_grid;
        std::vector<CorrelationSample> corr(traj.states.size());
        parallel_for(
            traj.states.size(), [&](std::size_t i) { corr[i] = discord(traj.states[i], dopt); },
            threads);

        std::string content;
        if (output.format == "csv") {
            content = "t,negativity,mutual_info,discord,classical_corr,trace,min_eig\n";
            for (std::size_t i = 0; i < corr.size(); ++i) {
                const auto& m = traj.states[i].matrix();
                content += csv_row({traj.times[i], corr[i].negativity, corr[i].mutual_info,
                                    corr[i].discord, corr[i].classical_corr, m.trace().real(),
                                    hermitian_eigenvalues(m).minCoeff()});
            }
        } else {
            json rows = json::array();
            for (std::size_t i = 0; i < corr.size(); ++i) {
                const auto& m = traj.states[i].matrix();
                rows.push_back({{"t", traj.times[i]},
                                {"negativity", corr[i].negativity},
                                {"mutual_info", corr[i].mutual_info},
                                {"discord", corr[i].discord},
                                {"classical_corr", corr[i].classical_corr},
                                {"optimal_angles", angles_json(corr[i].optimal_angles)},
                                {"trace", m.trace().real()},
                                {"min_eig", hermitian_eigenvalues(m).minCoeff()}});
            }
            content = dump_json({{"params", params_to_json(params)},
                                 {"initial", {{"p", p}, {"q", q}}},
                                 {"method", method},
                                 {"rows", std::move(rows)}});
        }
        if (!trajectory_out.empty())
            write_file_atomic(trajectory_out, trajectory_csv(traj));
        write_file_atomic(output.out, content);
        return ok;
    }
};

// ---------------------------------------------------------------------------
// heatmap

struct HeatmapCommand {
    ModelFlags model;
    OutputFlags output;
    std::string axis = "eta";
    double axis_min = 0.0;
    double axis_max = 2.0;
    int axis_points = 21;
    double t_max = 6.0;
    int t_points = 61;
    std::string observable = "negativity";
    double p = 1.0;
    double q = 0.0;
    int discord_grid = 32;
    unsigned threads = 0;

    void add_to(FlagSet& flags)
    {
        model.add_to(flags);
        output.add_to(flags, "csv");
        flags.add("axis", axis, "Second axis: eta or temperature");
        flags.add("axis-min", axis_min,
                  "Smallest axis value [eta: dimensionless; temperature: dimensionless]");
        flags.add("axis-max", axis_max, "Largest axis value");
        flags.add("axis-points", axis_points, "Number of axis values (>= 1)");
        flags.add("t-max", t_max, "Final time [dimensionless tau = zeta t]");
        flags.add("t-points", t_points, "Number of time samples including t = 0 (>= 1)");
        flags.add("observable", observable, "negativity, mutual_info or discord [bits for the "
                                            "entropic measures]");
        flags.add("p", p, "Initial qubit amplitude p in [-1, 1]");
        flags.add("q", q, "Initial oscillator amplitude q in [-1, 1]");
        flags.add("discord-grid", discord_grid,
                  "Points per axis of the (theta, phi) grid of the discord search");
        flags.add("threads", threads, "Worker threads (0 = all cores)");
    }

    std::vector<ModelParams> axis_params(const FlagSet& flags) const
    {
        std::vector<ModelParams> out;
        auto value = [&](int k) {
            return axis_points == 1 ? axis_min
                                    : axis_min + (axis_max - axis_min) * k / (axis_points - 1);
        };
        if (axis == "eta") {
            if (flags.given("eta"))
                throw ConfigError("eta: cannot be fixed when --axis eta is scanned");
            if (!(axis_min >= 0.0))
                throw ConfigError("axis-min: eta values must be non-negative");
            ModelParams base = model.resolve(flags);
            for (int k = 0; k < axis_points; ++k) {
                ModelParams p = base;
                p.eta = value(k);
                p.validate();
                out.push_back(p);
            }
        } else if (axis == "temperature") {
            for (const char* f : {"gamma1", "gamma2", "temperature"})
                if (flags.given(f))
                    throw ConfigError(std::string(f)
                                      + ": rates come from the temperature axis; do not give "
                                        "--gamma1/--gamma2/--temperature");
            if (!(axis_min > 0.0))
                throw ConfigError("axis-min: temperatures must be positive");
            for (int k = 0; k < axis_points; ++k)
                out.push_back(ModelParams::from_temperature(model.zeta, value(k), model.eta,
                                                            model.omega));
        } else {
            throw ConfigError("axis: must be 'eta' or 'temperature', got '" + axis + "'");
        }
        return out;
    }

    int run(const FlagSet& flags) const
    {
        output.validate(true);
        if (observable != "negativity" && observable != "mutual_info" && observable != "discord")
            throw ConfigError("observable: must be negativity, mutual_info or discord, got '"
                              + observable + "'");
        if (axis_points < 1)
            throw ConfigError("axis-points: must be at least 1");
        if (t_points < 1)
            throw ConfigError("t-points: must be at least 1");
        if (!(axis_max >= axis_min))
            throw ConfigError("axis-max: must not be below axis-min");
        if (!(t_max >= 0.0) || !std::isfinite(t_max))
            throw ConfigError("t-max: must be a non-negative finite number");
        if (discord_grid < 2)
            throw ConfigError("discord-grid: must be at least 2");
        const auto params = axis_params(flags);
        const DensityMatrix rho0 = product_state(p, q);
        const auto times = uniform_times(t_max, t_points);

        DiscordOptions dopt;
        dopt.grid_theta = dopt.grid_phi = discord_grid;
        const std::size_t nt = times.size();
        std::vector<double> values(params.size() * nt);
        parallel_for(
            params.size(),
            [&](std::size_t a) {
                const auto traj = evolve_exact(build_liouvillian(params[a]), rho0, times);
                for (std::size_t i = 0; i < nt; ++i) {
                    const auto& s = traj.states[i];
                    double v;
                    if (observable == "negativity")
                        v = negativity(s);
                    else if (observable == "mutual_info")
                        v = mutual_information(s);
                    else
                        v = discord(s, dopt).discord;
                    values[a * nt + i] = v;
                }
            },
            threads);

        auto axis_value = [&](std::size_t a) {
            return axis == "eta" ? params[a].eta : *params[a].temperature;
        };
        std::string content;
        if (output.format == "csv") {
            content = "t," + axis + "," + observable + "\n";
            for (std::size_t a = 0; a < params.size(); ++a)
                for (std::size_t i = 0; i < nt; ++i)
                    content += csv_row({times[i], axis_value(a), values[a * nt + i]});
        } else {
            json rows = json::array();
            for (std::size_t a = 0; a < params.size(); ++a)
                for (std::size_t i = 0; i < nt; ++i)
                    rows.push_back({{"t", times[i]},
                                    {axis, axis_value(a)},
                                    {observable, values[a * nt + i]}});
            content = dump_json({{"axis", axis},
                                 {"observable", observable},
                                 {"initial", {{"p", p}, {"q", q}}},
                                 {"rows", std::move(rows)}});
        }
        write_file_atomic(output.out, content);
        return ok;
    }
};

// ---------------------------------------------------------------------------
// region

struct RegionCommand {
    ModelFlags model;
    OutputFlags output;
    int n = 201;
    bool confirm_dynamics = false;
    int spot_checks = 10;
    unsigned seed = 12345;
    unsigned threads = 0;

    void add_to(FlagSet& flags)
    {
        model.add_to(flags);
        output.add_to(flags, "csv");
        flags.add("n", n, "Grid points per axis over [-1, 1] (>= 2)");
        flags.add_flag("confirm-dynamics", confirm_dynamics,
                       "Add a column with the negativity at tau = 1e-4 for every point");
        flags.add("spot-checks", spot_checks,
                  "Random entangling points re-checked against short-time dynamics");
        flags.add("seed", seed, "Seed for choosing spot-check points");
        flags.add("threads", threads, "Worker threads (0 = all cores)");
    }

    int run(const FlagSet& flags) const
    {
        const ModelParams params = model.resolve(flags);
        output.validate(true);
        if (n < 2)
            throw ConfigError("n: grid resolution must be at least 2");
        if (spot_checks < 0)
            throw ConfigError("spot-checks: must be non-negative");
        RegionScanOptions opt;
        opt.confirm_dynamics = confirm_dynamics;
        opt.spot_checks = spot_checks;
        opt.seed = seed;
        opt.threads = threads;
        const RegionScan scan = region_scan(params, n, opt);

        bool spot_ok = true;
        for (const auto& c : scan.spot_checks) {
            if (!c.passed) {
                spot_ok = false;
                std::cerr << "spot check failed at p=" << format_number(c.p)
                          << " q=" << format_number(c.q)
                          << ": negativity(1e-4)=" << format_number(c.negativity) << "\n";
            }
        }

        std::string content;
        if (output.format == "csv") {
            content = region_csv(scan, confirm_dynamics);
        } else {
            json grid = json::array();
            for (const auto& pt : scan.grid) {
                json row{{"p", pt.p}, {"q", pt.q}, {"entangling", pt.entangling},
                         {"excess", pt.excess}};
                if (pt.negativity)
                    row["negativity"] = *pt.negativity;
                grid.push_back(std::move(row));
            }
            json checks = json::array();
            for (const auto& c : scan.spot_checks)
                checks.push_back({{"p", c.p}, {"q", c.q}, {"negativity", c.negativity},
                                  {"passed", c.passed}});
            content = dump_json({{"params", params_to_json(params)},
                                 {"n", scan.n},
                                 {"grid", std::move(grid)},
                                 {"spot_checks", std::move(checks)}});
        }
        write_file_atomic(output.out, content);
        return spot_ok ? ok : numerical_error;
    }
};

// ---------------------------------------------------------------------------
// steady-state

struct SteadyStateCommand {
    ModelFlags model;
    OutputFlags output;
    std::string mode = "both";

    void add_to(FlagSet& flags)
    {
        model.add_to(flags);
        output.add_to(flags, "json");
        flags.add("mode", mode, "both, analytic (closed form, needs gamma2 > 0) or numeric "
                                "(kernel of the 16x16 generator)");
    }

    int run(const FlagSet& flags) const
    {
        const ModelParams params = model.resolve(flags);
        output.validate(false);
        if (mode != "both" && mode != "analytic" && mode != "numeric")
            throw ConfigError("mode: must be both, analytic or numeric");
        const bool want_analytic = mode != "numeric";
        const bool want_numeric = mode != "analytic";
        if (want_analytic && !(params.gamma2 > 0.0))
            throw ConfigError("gamma2: the closed-form steady state needs gamma2 > 0 (its "
                              "populations scale with gamma1/gamma2); use --mode numeric");

        const Liouvillian l = build_liouvillian(params);
        json report{{"params", params_to_json(params)}, {"mode", mode}};
        std::optional<ComplexMatrix> analytic, numeric;
        if (want_analytic) {
            analytic = steady_state_analytic(params);
            report["analytic"] = matrix_to_json(*analytic);
            report["residual"] = max_abs(apply_liouvillian(params, *analytic));
        }
        report["null_dimension"] = kernel_dimension(l);
        if (want_numeric) {
            try {
                const auto ss = steady_state_numeric(l);
                numeric = ss.state;
                report["numeric"] = matrix_to_json(ss.state);
                report["numeric_residual"] = max_abs(l.apply(ss.state));
                report["unique"] = true;
            } catch (const DegenerateSteadyState& e) {
                report["numeric"] = nullptr;
                report["unique"] = false;
                report["message"] = e.what();
                std::cerr << e.what() << "\n";
            }
        }
        if (analytic && numeric)
            report["trace_norm_difference"] = trace_norm(*analytic - *numeric);
        write_file_atomic(output.out, dump_json(report));
        return ok;
    }
};

// ---------------------------------------------------------------------------
// witness

struct WitnessCommand {
    ModelFlags model;
    OutputFlags output;
    double kappa1 = 0.0, kappa2 = 0.0, kappa3 = 0.0;
    double p = 1.0, q = 0.0;
    double alpha = 0.0, beta = 0.0, vartheta = 0.0;
    bool roots = false;

    void add_to(FlagSet& flags)
    {
        model.add_to(flags);
        output.add_to(flags, "json");
        flags.add("kappa1", kappa1, "Coefficient of |00> (initial state |0>_Q|1>_HO)");
        flags.add("kappa2", kappa2, "Coefficient of |10>");
        flags.add("kappa3", kappa3, "Coefficient of |11>");
        flags.add("p", p, "Initial qubit amplitude p in [-1, 1]");
        flags.add("q", q, "Initial oscillator amplitude q in [-1, 1]");
        flags.add("alpha", alpha, "Direction coefficient alpha (default: optimal direction)");
        flags.add("beta", beta, "Direction coefficient beta (default: optimal direction)");
        flags.add("vartheta", vartheta, "Direction coefficient vartheta (does not affect dxi0)");
        flags.add_flag("roots", roots, "Report the kappa1 interval where dxi0 < 0");
    }

    int run(const FlagSet& flags) const
    {
        const ModelParams params = model.resolve(flags);
        output.validate(false);
        const bool kappa_mode =
            flags.given("kappa1") || flags.given("kappa2") || flags.given("kappa3");
        const bool pq_mode = flags.given("p") || flags.given("q") || flags.given("alpha")
                             || flags.given("beta") || flags.given("vartheta");
        if (kappa_mode && pq_mode)
            throw ConfigError("kappa1: kappa coefficients cannot be combined with p/q/alpha/beta");
        if (!kappa_mode && !pq_mode)
            throw ConfigError("kappa1: give --kappa1/--kappa3 or --p/--q");

        json report{{"params", params_to_json(params)}};
        WitnessReport r;
        if (kappa_mode) {
            r = witness_kappa(kappa1, kappa2, kappa3, params);
            report["initial"] = "|0>_Q|1>_HO";
            if (roots) {
                if (const auto rr = dxi0_quadratic_roots(kappa3, params))
                    report["roots"] = {{"kappa1_low", rr->first}, {"kappa1_high", rr->second}};
                else
                    report["roots"] = nullptr;
            }
            if (r.dxi0 > 0.0) {
                std::string note = "dxi0 > 0: this (kappa1, kappa3) pair does not satisfy the "
                                   "entangling condition";
                if (const auto rr = dxi0_quadratic_roots(kappa3, params))
                    note += "; dxi0 < 0 needs kappa1 strictly between "
                            + format_number(rr->first) + " and " + format_number(rr->second);
                report["note"] = note;
                std::cerr << "note: " << note << "\n";
            }
        } else {
            if (!(std::abs(p) <= 1.0))
                throw ConfigError("p: must lie in [-1, 1]");
            if (!(std::abs(q) <= 1.0))
                throw ConfigError("q: must lie in [-1, 1]");
            const auto verdict = is_entangling(p, q, params);
            double a = alpha, b = beta;
            if (!flags.given("alpha") && !flags.given("beta")) {
                const auto [dir, lambda] = optimal_witness_direction(p, q, params);
                a = dir[0];
                b = dir[1];
                report["direction_choice"] = "optimal";
            }
            r = witness_general(p, q, a, b, vartheta, params);
            report["initial"] = {{"p", p}, {"q", q}};
            report["excess"] = verdict.excess;
            report["entangling_for_some_direction"] = verdict.entangling;
        }
        report["xi0"] = r.xi0;
        report["dxi0"] = r.dxi0;
        report["entangling"] = r.entangling;
        report["direction"] = {{"basis", r.basis}, {"coefficients", r.coefficients}};
        write_file_atomic(output.out, dump_json(report));
        return ok;
    }
};

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv)
{
    CLI::App app{"Qubit-oscillator common-bath simulator. Times are dimensionless "
                 "tau = zeta t; rates are per unit tau."};
    app.require_subcommand(1);

    SimulateCommand simulate;
    HeatmapCommand heatmap;
    RegionCommand region;
    SteadyStateCommand steady;
    WitnessCommand witness;

    auto* sim_app = app.add_subcommand("simulate", "Evolve a product state; emit correlation "
                                                   "measures per sample");
    auto* heat_app = app.add_subcommand("heatmap", "Observable over a (t, eta) or (t, T) grid");
    auto* reg_app = app.add_subcommand("region", "(p, q) region of short-time entanglement "
                                                 "generation");
    auto* ss_app = app.add_subcommand("steady-state", "Closed-form and numeric steady states");
    auto* wit_app = app.add_subcommand("witness", "Entanglement-generation witness d/dt Xi(0)");

    FlagSet sim_flags(sim_app), heat_flags(heat_app), reg_flags(reg_app), ss_flags(ss_app),
        wit_flags(wit_app);
    simulate.add_to(sim_flags);
    heatmap.add_to(heat_flags);
    region.add_to(reg_flags);
    steady.add_to(ss_flags);
    witness.add_to(wit_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        if (sim_app->parsed()) {
            sim_flags.apply_config();
            return simulate.run(sim_flags);
        }
        if (heat_app->parsed()) {
            heat_flags.apply_config();
            return heatmap.run(heat_flags);
        }
        if (reg_app->parsed()) {
            reg_flags.apply_config();
            return region.run(reg_flags);
        }
        if (ss_app->parsed()) {
            ss_flags.apply_config();
            return steady.run(ss_flags);
        }
        if (wit_app->parsed()) {
            wit_flags.apply_config();
            return witness.run(wit_flags);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return numerical_error;
    } catch (const InvalidDensityMatrix& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return numerical_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failure;
    }
    return config_error;
}

} // namespace cbath::cli
