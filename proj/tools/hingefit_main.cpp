// hingefit command-line front end.
//
// Subcommands: synth, fit-direct, fit-indirect, fit-potential, simulate,
// sweep, backbone, spectrum. Configuration comes from a key=value file (see
// README); logging goes to stderr, numerics to output files only.
//
// Exit codes: 0 success, 1 user/config/file error, 2 numerical failure
// (divergence or missing root).

#include "hingefit/hingefit.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace hf = hingefit;

namespace {

struct CommandOutcome {
    int exit_code = 0;
    std::vector<std::string> artifacts;
    std::string summary;
};

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const std::size_t dot = path.find_last_of('.');
    const std::size_t slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

hf::RunConfig load_config(const std::string& path) {
    if (path.empty()) return hf::RunConfig{};
    return hf::read_config(path);
}

// Parses an exact-nonlinearity spec: "cubic:p2=10", "gap:p2=10,L=0.5", "none".
hf::Nonlinearity parse_exact(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    std::map<std::string, double> params;
    if (colon != std::string::npos) {
        std::istringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--exact: expected key=value in '" + item + "'");
            char* end = nullptr;
            const std::string value = item.substr(eq + 1);
            const double v = std::strtod(value.c_str(), &end);
            if (end != value.c_str() + value.size())
                throw std::invalid_argument("--exact: bad number '" + value + "'");
            params[item.substr(0, eq)] = v;
        }
    }
    const auto param = [&](const std::string& name, std::optional<double> fallback =
                                                        std::nullopt) {
        const auto it = params.find(name);
        if (it != params.end()) return it->second;
        if (fallback) return *fallback;
        throw std::invalid_argument("--exact " + kind + ": missing parameter '" + name + "'");
    };
    if (kind == "none") return std::monostate{};
    if (kind == "cubic") return hf::CubicStiffness{param("p2")};
    if (kind == "gap") return hf::GapSpring{param("p2"), param("L")};
    throw std::invalid_argument("--exact: unknown kind '" + kind +
                                "' (expected cubic, gap, or none)");
}

hf::Nonlinearity nonlinearity_from_model_file(const std::string& path) {
    const hf::LoadedModel loaded = hf::load_model(path);
    if (loaded.is_potential()) return hf::FittedPotentialForce{loaded.potential()};
    return hf::FittedForce{loaded.force()};
}

hf::OscillatorModel resolve_oscillator(const hf::RunConfig& cfg, const std::string& model_path,
                                       const std::string& exact_spec) {
    if (!model_path.empty() && !exact_spec.empty())
        throw std::invalid_argument("--model and --exact are mutually exclusive");
    hf::OscillatorModel osc = cfg.oscillator();
    if (!model_path.empty())
        osc.nonlinearity = nonlinearity_from_model_file(model_path);
    else if (!exact_spec.empty())
        osc.nonlinearity = parse_exact(exact_spec);
    return osc;
}

std::string format_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthOptions {
    std::string benchmark_case;
    std::string out;
    std::string force_out;
    std::string model_out;
    double noise = 0.0;
    unsigned long long seed = 1;
    std::optional<double> dt, t_end, x0, v0;
};

CommandOutcome run_synth(const SynthOptions& opt) {
    hf::OscillatorModel model;
    double dt = 1e-3, t_end = 30.0, x0 = 0.0, v0 = 0.0;
    double force_lo = -5.0, force_hi = 5.0;

    if (opt.benchmark_case == "duffing") {
        model = hf::benchmarks::duffing();
        x0 = hf::benchmarks::kDuffingX0;
    } else if (opt.benchmark_case == "pwl") {
        model = hf::benchmarks::pwl();
        x0 = hf::benchmarks::kPwlX0;
    } else if (opt.benchmark_case == "bistable") {
        model = hf::benchmarks::surrogate_oscillator();
        x0 = hf::benchmarks::kSurrogateX0;
        t_end = 5.0;
        force_lo = -0.02;
        force_hi = 0.02;
    } else {
        throw std::invalid_argument("--case must be duffing, pwl, or bistable");
    }
    if (opt.dt) dt = *opt.dt;
    if (opt.t_end) t_end = *opt.t_end;
    if (opt.x0) x0 = *opt.x0;
    if (opt.v0) v0 = *opt.v0;

    CommandOutcome outcome;
    hf::Trajectory traj = hf::integrate(model, x0, v0, dt, t_end);
    traj.x.set_units("m");
    traj.v.set_units("m/s");
    traj.a.set_units("m/s^2");

    if (opt.noise > 0.0) {
        // Noisy records carry displacement only; velocity and acceleration
        // are left to the differentiation pipeline.
        double peak = 0.0;
        for (double v : traj.x.values()) peak = std::max(peak, std::abs(v));
        std::mt19937_64 rng(opt.seed);
        std::normal_distribution<double> dist(0.0, opt.noise * peak);
        for (double& v : traj.x.values()) v += dist(rng);
        hf::write_timeseries_csv(opt.out, {traj.x});
    } else {
        hf::write_timeseries_csv(opt.out, {traj.x, traj.v, traj.a});
    }
    outcome.artifacts.push_back(opt.out);

    if (!opt.force_out.empty()) {
        const std::vector<double> xs = hf::linspace(force_lo, force_hi, 1001);
        std::vector<double> fs;
        fs.reserve(xs.size());
        for (double x : xs) {
            double f = 0.0;
            if (const auto* cubic = std::get_if<hf::CubicStiffness>(&model.nonlinearity))
                f = cubic->p2 * x * x * x;
            else if (const auto* gap = std::get_if<hf::GapSpring>(&model.nonlinearity))
                f = gap->p2 * std::max(0.0, x - gap->gap);
            else if (const auto* pot =
                         std::get_if<hf::FittedPotentialForce>(&model.nonlinearity))
                f = pot->model.force(x);
            fs.push_back(f);
        }
        hf::write_samples_csv(opt.force_out, xs, fs);
        outcome.artifacts.push_back(opt.force_out);
    }

    if (!opt.model_out.empty()) {
        if (opt.benchmark_case != "bistable")
            throw std::invalid_argument("--model-out is available for the bistable case only");
        hf::save_model(opt.model_out, hf::benchmarks::surrogate_psi_model());
        outcome.artifacts.push_back(opt.model_out);
    }

    outcome.summary = "synth " + opt.benchmark_case + ": " + std::to_string(traj.x.size()) +
                      " samples at dt=" + format_num(dt) + " s from x0=" + format_num(x0) +
                      (opt.noise > 0.0
                           ? ", displacement noise sigma=" + format_num(opt.noise) + "*max|x|"
                           : "");
    return outcome;
}

// ---------------------------------------------------------------------------
// fit-direct
// ---------------------------------------------------------------------------

struct FitDirectOptions {
    std::string input;
    std::string config;
    std::string out;
    std::string coeffs_out;
};

CommandOutcome run_fit_direct(const FitDirectOptions& opt) {
    const hf::RunConfig cfg = load_config(opt.config);
    const auto [xs, fs] = hf::read_samples_csv(opt.input);
    const auto [model, report] = hf::fit_direct(xs, fs, cfg.gap_grid());
    hf::save_model(opt.out, model, report);

    CommandOutcome outcome;
    outcome.artifacts.push_back(opt.out);
    if (!opt.coeffs_out.empty()) {
        std::ofstream coeffs(opt.coeffs_out);
        if (!coeffs) throw hf::format_error("cannot open '" + opt.coeffs_out + "' for writing");
        coeffs << "kind,gap,kappa\n";
        for (std::size_t i = 0; i < model.specs.size(); ++i)
            coeffs << hf::to_string(model.specs[i].kind) << ','
                   << hf::detail::format_double(model.specs[i].gap) << ','
                   << hf::detail::format_double(model.kappa[i]) << '\n';
        outcome.artifacts.push_back(opt.coeffs_out);
    }

    double max_err = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        max_err = std::max(max_err, std::abs(model.eval(xs[i]) - fs[i]));
    outcome.summary =
        "fit-direct: " + std::to_string(report.columns) + " hinge columns, rank " +
        std::to_string(report.rank_used) + ", residual rms " + format_num(report.residual_rms) +
        ", max |fit-data| " + format_num(max_err) +
        " (model force adds to the stiffness side of the equation of motion)";
    return outcome;
}

// ---------------------------------------------------------------------------
// fit-indirect / fit-potential
// ---------------------------------------------------------------------------

struct FitSeriesOptions {
    std::string input;
    std::string config;
    std::string out;
    std::string scan_out;
    std::vector<double> scan_fractions;
    std::vector<int> scan_m;
};

struct PreparedRecord {
    hf::TimeSeries x;
    hf::TimeSeries v;
    hf::TimeSeries a;
    bool derived = false; // velocity/acceleration from differentiation
};

// Loads t,x[,v,a]; missing derivative channels are built by zero-phase
// filtering (when configured) and central differences.
PreparedRecord prepare_record(const std::string& path, const hf::RunConfig& cfg) {
    const std::vector<hf::TimeSeries> channels = hf::read_timeseries_csv(path);
    const hf::TimeSeries* x = nullptr;
    const hf::TimeSeries* v = nullptr;
    const hf::TimeSeries* a = nullptr;
    for (const hf::TimeSeries& s : channels) {
        if (s.label() == "x" || s.label() == "y") {
            if (!x) x = &s;
        } else if (s.label() == "v") {
            v = &s;
        } else if (s.label() == "a") {
            a = &s;
        }
    }
    if (!x && !channels.empty()) x = &channels.front();
    if (!x) throw hf::format_error(path + ": no displacement channel found");

    if (v && a) return {*x, *v, *a, false};

    hf::TimeSeries disp = *x;
    if (cfg.prep_cutoff_hz > 0.0) disp = hf::low_pass(disp, cfg.prep_cutoff_hz);
    hf::TimeSeries vel = hf::central_difference(disp);
    vel.set_label("v");
    hf::TimeSeries acc = hf::central_difference(vel);
    acc.set_label("a");
    disp.set_label(x->label());
    return {std::move(disp), std::move(vel), std::move(acc), true};
}

struct FitForecast {
    double fit_rmse = 0.0;      // acceleration residual over the fit window
    double validate_rmse = 0.0; // displacement error over the held-out tail
};

// Fits on the leading fraction of the record and forecasts the tail by time
// integration from the split state.
template <typename FitFn>
FitForecast fit_and_forecast(const PreparedRecord& rec, const hf::RunConfig& cfg,
                             double fraction, const FitFn& fit,
                             hf::Nonlinearity* fitted_out = nullptr,
                             hf::FitReport* report_out = nullptr) {
    const auto [fit_part, val_part] = hf::split_fit_validate(rec.x, rec.v, rec.a, fraction);
    auto [nonlinearity, report] = fit(fit_part);

    hf::OscillatorModel osc = cfg.oscillator();
    osc.forcing = std::monostate{};
    osc.nonlinearity = nonlinearity;
    const double t_span = val_part.x.duration();
    const hf::Trajectory forecast =
        hf::integrate(osc, val_part.x[0], val_part.v[0], rec.x.dt(), t_span);

    FitForecast result;
    result.fit_rmse = report.residual_rms;
    const hf::TimeSeries forecast_x(val_part.x.t0(), val_part.x.dt(), forecast.x.values(),
                                    val_part.x.label());
    result.validate_rmse = hf::rmse(val_part.x, forecast_x);
    if (fitted_out) *fitted_out = std::move(nonlinearity);
    if (report_out) *report_out = report;
    return result;
}

CommandOutcome run_fit_indirect(const FitSeriesOptions& opt) {
    const hf::RunConfig cfg = load_config(opt.config);
    const PreparedRecord rec = prepare_record(opt.input, cfg);
    if (rec.x.size() < 3)
        throw std::invalid_argument("fit-indirect: record must hold at least 3 samples");

    const double zeta = cfg.effective_zeta();
    const double omega_n = cfg.effective_omega_n();
    const auto fit = [&](const hf::SeriesTriple& part)
        -> std::pair<hf::Nonlinearity, hf::FitReport> {
        auto [model, report] =
            hf::fit_indirect(part.x, part.v, part.a, zeta, omega_n, cfg.gap_grid());
        return {hf::FittedForce{std::move(model)}, report};
    };

    CommandOutcome outcome;
    if (!opt.scan_fractions.empty()) {
        if (opt.scan_out.empty())
            throw std::invalid_argument("--scan-fit-fraction requires --scan-out");
        std::ofstream scan(opt.scan_out);
        if (!scan) throw hf::format_error("cannot open '" + opt.scan_out + "' for writing");
        scan << "fit_fraction,fit_rmse,validate_rmse\n";
        for (double fraction : opt.scan_fractions) {
            const FitForecast ff = fit_and_forecast(rec, cfg, fraction, fit);
            scan << hf::detail::format_double(fraction) << ','
                 << hf::detail::format_double(ff.fit_rmse) << ','
                 << hf::detail::format_double(ff.validate_rmse) << '\n';
        }
        outcome.artifacts.push_back(opt.scan_out);
    }

    hf::Nonlinearity fitted;
    hf::FitReport report;
    const FitForecast ff =
        fit_and_forecast(rec, cfg, cfg.prep_fit_fraction, fit, &fitted, &report);
    hf::save_model(opt.out, std::get<hf::FittedForce>(fitted).model, report);
    outcome.artifacts.insert(outcome.artifacts.begin(), opt.out);

    outcome.summary =
        "fit-indirect: rank " + std::to_string(report.rank_used) + "/" +
        std::to_string(report.columns) + ", fit rmse " + format_num(ff.fit_rmse) +
        " (acceleration units, per mass), forecast rmse " + format_num(ff.validate_rmse) +
        " (displacement) on the held-out tail" + (rec.derived ? "; v,a derived from x" : "");
    return outcome;
}

CommandOutcome run_fit_potential(const FitSeriesOptions& opt) {
    const hf::RunConfig cfg = load_config(opt.config);
    const PreparedRecord rec = prepare_record(opt.input, cfg);
    if (rec.x.size() < 3)
        throw std::invalid_argument("fit-potential: record must hold at least 3 samples");

    const double zeta = cfg.effective_zeta();
    const double omega_n = cfg.effective_omega_n();
    const auto fit_with_m = [&](int m) {
        return [&, m](const hf::SeriesTriple& part)
            -> std::pair<hf::Nonlinearity, hf::FitReport> {
            auto [model, report] = hf::fit_potential_constrained(
                part.x, part.v, part.a, zeta, omega_n,
                hf::linspace(cfg.psi_gap_lo, cfg.psi_gap_hi, static_cast<std::size_t>(m)),
                cfg.psi_linear_term);
            return {hf::FittedPotentialForce{std::move(model)}, report};
        };
    };

    CommandOutcome outcome;
    if (!opt.scan_m.empty()) {
        if (opt.scan_out.empty()) throw std::invalid_argument("--scan-m requires --scan-out");
        std::ofstream scan(opt.scan_out);
        if (!scan) throw hf::format_error("cannot open '" + opt.scan_out + "' for writing");
        scan << "m,fit_rmse,validate_rmse\n";
        for (int m : opt.scan_m) {
            if (m < 1) throw std::invalid_argument("--scan-m entries must be positive");
            const FitForecast ff =
                fit_and_forecast(rec, cfg, cfg.prep_fit_fraction, fit_with_m(m));
            scan << m << ',' << hf::detail::format_double(ff.fit_rmse) << ','
                 << hf::detail::format_double(ff.validate_rmse) << '\n';
        }
        outcome.artifacts.push_back(opt.scan_out);
    }

    hf::Nonlinearity fitted;
    hf::FitReport report;
    const FitForecast ff = fit_and_forecast(rec, cfg, cfg.prep_fit_fraction,
                                            fit_with_m(cfg.psi_count), &fitted, &report);
    hf::save_model(opt.out, std::get<hf::FittedPotentialForce>(fitted).model, report);
    outcome.artifacts.insert(outcome.artifacts.begin(), opt.out);

    outcome.summary =
        "fit-potential: " + std::to_string(cfg.psi_count) + " psi gaps" +
        (cfg.psi_linear_term ? " + linear column" : "") + ", fit rmse " +
        format_num(ff.fit_rmse) + " (acceleration units, per mass), forecast rmse " +
        format_num(ff.validate_rmse) + " (displacement) on the held-out tail" +
        "; model force f_t sits on the right-hand side x'' + 2 z w x' + w^2 x = f_t(x)";
    return outcome;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateOptions {
    std::string model_path;
    std::string exact_spec;
    std::string config;
    std::string out;
    std::string compare;
};

CommandOutcome run_simulate(const SimulateOptions& opt) {
    const hf::RunConfig cfg = load_config(opt.config);
    const hf::OscillatorModel osc = resolve_oscillator(cfg, opt.model_path, opt.exact_spec);

    hf::Trajectory traj =
        hf::integrate(osc, cfg.integ_x0, cfg.integ_v0, cfg.integ_dt, cfg.integ_t_end);
    traj.x.set_units("m");
    traj.v.set_units("m/s");
    traj.a.set_units("m/s^2");
    hf::write_timeseries_csv(opt.out, {traj.x, traj.v, traj.a});

    CommandOutcome outcome;
    outcome.artifacts.push_back(opt.out);
    outcome.summary = "simulate: " + std::to_string(traj.x.size()) + " samples over " +
                      format_num(cfg.integ_t_end) + " s";

    if (!opt.compare.empty()) {
        const std::vector<hf::TimeSeries> ref_channels = hf::read_timeseries_csv(opt.compare);
        const hf::TimeSeries& ref = ref_channels.front();
        const double value = hf::rmse(traj.x, ref);
        const std::string rmse_path = with_suffix(opt.out, "_rmse");
        std::ofstream rout(rmse_path);
        if (!rout) throw hf::format_error("cannot open '" + rmse_path + "' for writing");
        rout << "rmse_x " << hf::detail::format_double(value) << '\n';
        outcome.artifacts.push_back(rmse_path);
        outcome.summary += "; rmse vs reference " + format_num(value);
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepOptions {
    std::string model_path;
    std::string exact_spec;
    std::string config;
    std::string out;
};

CommandOutcome run_sweep(const SweepOptions& opt) {
    const hf::RunConfig cfg = load_config(opt.config);
    if (cfg.forcing_kind == hf::ForcingKind::None)
        throw std::invalid_argument("sweep: config must set forcing.kind to harmonic or base");
    const hf::OscillatorModel osc = resolve_oscillator(cfg, opt.model_path, opt.exact_spec);

    hf::SweepSettings settings;
    settings.transient_cycles = cfg.sweep_transient_cycles;
    settings.measure_cycles = cfg.sweep_measure_cycles;
    settings.steps_per_cycle = cfg.sweep_steps_per_cycle;
    settings.x0 = cfg.integ_x0;
    settings.v0 = cfg.integ_v0;

    const hf::SweepResult sweep = hf::frequency_sweep(
        osc, cfg.sweep_f_lo, cfg.sweep_f_hi, static_cast<std::size_t>(cfg.sweep_n_points),
        cfg.sweep_direction, settings);

    hf::write_sweep_csv(opt.out, sweep);
    CommandOutcome outcome;
    outcome.artifacts.push_back(opt.out);

    if (osc.base_excited()) {
        const std::string trans_path = with_suffix(opt.out, "_transmissibility");
        hf::write_transmissibility_csv(trans_path, sweep);
        outcome.artifacts.push_back(trans_path);
    }

    std::size_t n_valid = 0;
    for (bool ok : sweep.valid) n_valid += ok ? 1 : 0;
    outcome.summary = std::string("sweep ") + hf::to_string(sweep.direction) + ": " +
                      std::to_string(n_valid) + "/" + std::to_string(sweep.valid.size()) +
                      " valid points, f_n " + format_num(sweep.f_n_hz) + " Hz, X_st " +
                      format_num(sweep.x_st);
    if (n_valid == 0) outcome.exit_code = 2;
    return outcome;
}

// ---------------------------------------------------------------------------
// backbone / spectrum
// ---------------------------------------------------------------------------

const hf::TimeSeries& pick_channel(const std::vector<hf::TimeSeries>& channels,
                                   const std::string& wanted) {
    if (wanted.empty()) return channels.front();
    for (const hf::TimeSeries& s : channels)
        if (s.label() == wanted) return s;
    throw hf::format_error("channel '" + wanted + "' not found in input");
}

CommandOutcome run_backbone(const std::string& input, const std::string& channel,
                            const std::string& out) {
    const std::vector<hf::TimeSeries> channels = hf::read_timeseries_csv(input);
    const hf::BackboneCurve curve = hf::backbone_from_free_response(pick_channel(channels, channel));
    hf::write_backbone_csv(out, curve);
    CommandOutcome outcome;
    outcome.artifacts.push_back(out);
    outcome.summary = "backbone: " + std::to_string(curve.amplitudes.size()) +
                      " amplitude/frequency pairs";
    return outcome;
}

CommandOutcome run_spectrum(const std::string& input, const std::string& channel,
                            double f_e_hz, const std::string& window, const std::string& out) {
    const std::vector<hf::TimeSeries> channels = hf::read_timeseries_csv(input);
    hf::SpectrumWindow w = hf::SpectrumWindow::None;
    if (window == "hann")
        w = hf::SpectrumWindow::Hann;
    else if (window != "none")
        throw std::invalid_argument("--window must be none or hann");
    const hf::Spectrum spec = hf::fft_spectrum(pick_channel(channels, channel), w);
    hf::write_spectrum_csv(out, spec, f_e_hz);
    CommandOutcome outcome;
    outcome.artifacts.push_back(out);
    outcome.summary = "spectrum: " + std::to_string(spec.frequencies.size()) + " bins, df " +
                      format_num(spec.df) + " Hz";
    return outcome;
}

void report(const CommandOutcome& outcome) {
    std::cerr << outcome.summary << '\n';
    for (const std::string& path : outcome.artifacts) std::cerr << "wrote " << path << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Identification and forecasting of displacement-dependent nonlinear "
                 "restoring forces as networks of gapped piecewise-linear springs"};
    app.require_subcommand(1);

    SynthOptions synth;
    CLI::App* cmd_synth = app.add_subcommand(
        "synth", "Generate a built-in benchmark free-response record");
    cmd_synth->add_option("--case", synth.benchmark_case,
                          "Benchmark case: duffing, pwl, or bistable")->required();
    cmd_synth->add_option("--out", synth.out, "Output record CSV (t,x[,v,a])")->required();
    cmd_synth->add_option("--force-out", synth.force_out,
                          "Also write nonlinear force samples (x,f) over the fit range");
    cmd_synth->add_option("--model-out", synth.model_out,
                          "Also write the generating psi model (bistable case)");
    cmd_synth->add_option("--noise", synth.noise,
                          "Gaussian displacement noise, fraction of max |x|");
    cmd_synth->add_option("--seed", synth.seed, "Noise RNG seed");
    double synth_dt, synth_tend, synth_x0, synth_v0;
    cmd_synth->add_option("--dt", synth_dt, "Time step in s (case default otherwise)");
    cmd_synth->add_option("--t-end", synth_tend, "Record length in s");
    cmd_synth->add_option("--x0", synth_x0, "Initial displacement in m");
    cmd_synth->add_option("--v0", synth_v0, "Initial velocity in m/s");

    FitDirectOptions fit_direct_opt;
    CLI::App* cmd_fit_direct = app.add_subcommand(
        "fit-direct", "Fit hinge coefficients to sampled force data (x,f)");
    cmd_fit_direct->add_option("--input", fit_direct_opt.input, "Force sample CSV with header x,f")
        ->required();
    cmd_fit_direct->add_option("--config", fit_direct_opt.config, "Run configuration file");
    cmd_fit_direct->add_option("--out", fit_direct_opt.out, "Output model file")->required();
    cmd_fit_direct->add_option("--coeffs-out", fit_direct_opt.coeffs_out,
                               "Per-gap coefficient CSV (kind,gap,kappa)");

    FitSeriesOptions fit_indirect_opt;
    CLI::App* cmd_fit_indirect = app.add_subcommand(
        "fit-indirect", "Identify the per-mass force from a measured response (t,x[,v,a])");
    cmd_fit_indirect->add_option("--input", fit_indirect_opt.input, "Record CSV")->required();
    cmd_fit_indirect->add_option("--config", fit_indirect_opt.config, "Run configuration file");
    cmd_fit_indirect->add_option("--out", fit_indirect_opt.out, "Output model file")->required();
    cmd_fit_indirect->add_option("--scan-fit-fraction", fit_indirect_opt.scan_fractions,
                                 "Fractions to scan; emits RMSE-vs-fraction CSV")
        ->delimiter(',');
    cmd_fit_indirect->add_option("--scan-out", fit_indirect_opt.scan_out,
                                 "Output CSV for scans");

    FitSeriesOptions fit_potential_opt;
    CLI::App* cmd_fit_potential = app.add_subcommand(
        "fit-potential", "Identify a conservative force with an explicit potential");
    cmd_fit_potential->add_option("--input", fit_potential_opt.input, "Record CSV")->required();
    cmd_fit_potential->add_option("--config", fit_potential_opt.config, "Run configuration file");
    cmd_fit_potential->add_option("--out", fit_potential_opt.out, "Output model file")->required();
    cmd_fit_potential->add_option("--scan-m", fit_potential_opt.scan_m,
                                  "Psi gap counts to scan; emits RMSE-vs-M CSV")
        ->delimiter(',');
    cmd_fit_potential->add_option("--scan-out", fit_potential_opt.scan_out,
                                  "Output CSV for scans");

    SimulateOptions sim;
    CLI::App* cmd_simulate = app.add_subcommand(
        "simulate", "Integrate a model (fitted or exact) from the configured initial state");
    cmd_simulate->add_option("--model", sim.model_path, "Fitted model file");
    cmd_simulate->add_option("--exact", sim.exact_spec,
                             "Exact nonlinearity: cubic:p2=..., gap:p2=...,L=..., none");
    cmd_simulate->add_option("--config", sim.config, "Run configuration file");
    cmd_simulate->add_option("--out", sim.out, "Trajectory CSV (t,x,v,a)")->required();
    cmd_simulate->add_option("--compare", sim.compare,
                             "Reference trajectory CSV; reports displacement RMSE");

    SweepOptions sweep;
    CLI::App* cmd_sweep = app.add_subcommand(
        "sweep", "Steady-state forced-response sweep over excitation frequency");
    cmd_sweep->add_option("--model", sweep.model_path, "Fitted model file");
    cmd_sweep->add_option("--exact", sweep.exact_spec,
                          "Exact nonlinearity: cubic:p2=..., gap:p2=...,L=..., none");
    cmd_sweep->add_option("--config", sweep.config, "Run configuration file");
    cmd_sweep->add_option("--out", sweep.out, "Sweep CSV")->required();

    std::string backbone_input, backbone_channel, backbone_out;
    CLI::App* cmd_backbone = app.add_subcommand(
        "backbone", "Extract the backbone curve from a decaying free response");
    cmd_backbone->add_option("--input", backbone_input, "Trajectory CSV")->required();
    cmd_backbone->add_option("--channel", backbone_channel, "Channel label (default: first)");
    cmd_backbone->add_option("--out", backbone_out, "Backbone CSV")->required();

    std::string spectrum_input, spectrum_channel, spectrum_window = "none", spectrum_out;
    double spectrum_fe = 0.0;
    CLI::App* cmd_spectrum = app.add_subcommand(
        "spectrum", "Single-sided amplitude spectrum of a response channel");
    cmd_spectrum->add_option("--input", spectrum_input, "Trajectory CSV")->required();
    cmd_spectrum->add_option("--channel", spectrum_channel, "Channel label (default: first)");
    cmd_spectrum->add_option("--fe", spectrum_fe,
                             "Excitation frequency in Hz; adds an f/f_e column");
    cmd_spectrum->add_option("--window", spectrum_window, "Window: none or hann");
    cmd_spectrum->add_option("--out", spectrum_out, "Spectrum CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (cmd_synth->parsed()) {
            if (cmd_synth->count("--dt")) synth.dt = synth_dt;
            if (cmd_synth->count("--t-end")) synth.t_end = synth_tend;
            if (cmd_synth->count("--x0")) synth.x0 = synth_x0;
            if (cmd_synth->count("--v0")) synth.v0 = synth_v0;
            const CommandOutcome outcome = run_synth(synth);
            report(outcome);
            return outcome.exit_code;
        }
        CommandOutcome outcome;
        if (cmd_fit_direct->parsed()) outcome = run_fit_direct(fit_direct_opt);
        else if (cmd_fit_indirect->parsed()) outcome = run_fit_indirect(fit_indirect_opt);
        else if (cmd_fit_potential->parsed()) outcome = run_fit_potential(fit_potential_opt);
        else if (cmd_simulate->parsed()) outcome = run_simulate(sim);
        else if (cmd_sweep->parsed()) outcome = run_sweep(sweep);
        else if (cmd_backbone->parsed()) outcome = run_backbone(backbone_input, backbone_channel, backbone_out);
        else if (cmd_spectrum->parsed())
            outcome = run_spectrum(spectrum_input, spectrum_channel, spectrum_fe,
                                   spectrum_window, spectrum_out);
        report(outcome);
        return outcome.exit_code;
    } catch (const hf::divergence_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const hf::no_root_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
