// Run configuration: flat key=value text with '#' comments and dotted key
// names. Unknown keys are rejected; absent optional keys take defaults and
// are echoed back by dump().
#pragma once

#include "hingefit/basis.hpp"
#include "hingefit/dataio.hpp"
#include "hingefit/dynamics.hpp"
#include "hingefit/errors.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hingefit {

enum class FitMethod { Direct, Indirect, Potential };

inline const char* to_string(FitMethod m) {
    switch (m) {
        case FitMethod::Direct: return "direct";
        case FitMethod::Indirect: return "indirect";
        case FitMethod::Potential: return "potential";
    }
    return "?";
}

enum class ForcingKind { None, Harmonic, Base };

inline const char* to_string(ForcingKind f) {
    switch (f) {
        case ForcingKind::None: return "none";
        case ForcingKind::Harmonic: return "harmonic";
        case ForcingKind::Base: return "base";
    }
    return "?";
}

struct RunConfig {
    FitMethod method = FitMethod::Direct;

    // Hinge gap grid.
    double grid_x_lo = -5.0;
    double grid_x_hi = 5.0;
    int grid_m = 8;
    int grid_n = 8;

    // Psi gap grid for the potential-constrained method.
    double psi_gap_lo = 0.0;
    double psi_gap_hi = 0.02;
    int psi_count = 32;
    bool psi_linear_term = true;

    // Oscillator. zeta/omega_n, when both set, override damping/stiffness.
    double osc_mass = 1.0;
    double osc_damping = 0.1;
    double osc_stiffness = 1.0;
    std::optional<double> osc_zeta;
    std::optional<double> osc_omega_n;

    // Time integration.
    double integ_dt = 1e-3;
    double integ_t_end = 30.0;
    double integ_x0 = 0.0;
    double integ_v0 = 0.0;

    // Frequency sweeps.
    double sweep_f_lo = 0.05;
    double sweep_f_hi = 0.5;
    int sweep_n_points = 50;
    SweepDirection sweep_direction = SweepDirection::Up;
    int sweep_steps_per_cycle = 1000;
    int sweep_transient_cycles = 180;
    int sweep_measure_cycles = 20;

    // Forcing.
    ForcingKind forcing_kind = ForcingKind::None;
    double forcing_amplitude = 1.0;
    double forcing_freq_hz = 1.0;

    // Preprocessing. cutoff 0 disables the low-pass stage.
    double prep_cutoff_hz = 100.0;
    double prep_fit_fraction = 0.6;

    double effective_omega_n() const {
        return osc_omega_n ? *osc_omega_n : std::sqrt(osc_stiffness / osc_mass);
    }

    double effective_zeta() const {
        return osc_zeta ? *osc_zeta
                        : osc_damping / (2.0 * std::sqrt(osc_mass * osc_stiffness));
    }

    // Oscillator with the configured linear parameters and forcing; the
    // nonlinearity is supplied by the caller.
    OscillatorModel oscillator() const {
        OscillatorModel model;
        model.m = osc_mass;
        if (osc_zeta && osc_omega_n) {
            model.k = osc_mass * (*osc_omega_n) * (*osc_omega_n);
            model.c = 2.0 * (*osc_zeta) * (*osc_omega_n) * osc_mass;
        } else {
            model.c = osc_damping;
            model.k = osc_stiffness;
        }
        switch (forcing_kind) {
            case ForcingKind::None: break;
            case ForcingKind::Harmonic:
                model.forcing = HarmonicForcing{forcing_amplitude, forcing_freq_hz};
                break;
            case ForcingKind::Base:
                model.forcing = BaseExcitation{forcing_amplitude, forcing_freq_hz};
                break;
        }
        return model;
    }

    GapGrid gap_grid() const {
        return uniform_gap_grid(grid_x_lo, grid_x_hi, static_cast<std::size_t>(grid_m),
                                static_cast<std::size_t>(grid_n));
    }

    std::vector<double> psi_gaps() const {
        return linspace(psi_gap_lo, psi_gap_hi, static_cast<std::size_t>(psi_count));
    }

    // Normalized dump: every key in canonical order, defaults included.
    std::string dump() const {
        std::ostringstream out;
        const auto num = [](double v) { return detail::format_double(v); };
        out << "method = " << to_string(method) << '\n';
        out << "grid.x_lo = " << num(grid_x_lo) << '\n';
        out << "grid.x_hi = " << num(grid_x_hi) << '\n';
        out << "grid.m = " << grid_m << '\n';
        out << "grid.n = " << grid_n << '\n';
        out << "psi.gap_lo = " << num(psi_gap_lo) << '\n';
        out << "psi.gap_hi = " << num(psi_gap_hi) << '\n';
        out << "psi.count = " << psi_count << '\n';
        out << "psi.linear_term = " << (psi_linear_term ? "true" : "false") << '\n';
        out << "osc.mass = " << num(osc_mass) << '\n';
        out << "osc.damping = " << num(osc_damping) << '\n';
        out << "osc.stiffness = " << num(osc_stiffness) << '\n';
        if (osc_zeta) out << "osc.zeta = " << num(*osc_zeta) << '\n';
        if (osc_omega_n) out << "osc.omega_n = " << num(*osc_omega_n) << '\n';
        out << "integ.dt = " << num(integ_dt) << '\n';
        out << "integ.t_end = " << num(integ_t_end) << '\n';
        out << "integ.x0 = " << num(integ_x0) << '\n';
        out << "integ.v0 = " << num(integ_v0) << '\n';
        out << "sweep.f_lo = " << num(sweep_f_lo) << '\n';
        out << "sweep.f_hi = " << num(sweep_f_hi) << '\n';
        out << "sweep.n_points = " << sweep_n_points << '\n';
        out << "sweep.direction = " << to_string(sweep_direction) << '\n';
        out << "sweep.steps_per_cycle = " << sweep_steps_per_cycle << '\n';
        out << "sweep.transient_cycles = " << sweep_transient_cycles << '\n';
        out << "sweep.measure_cycles = " << sweep_measure_cycles << '\n';
        out << "forcing.kind = " << to_string(forcing_kind) << '\n';
        out << "forcing.amplitude = " << num(forcing_amplitude) << '\n';
        out << "forcing.freq_hz = " << num(forcing_freq_hz) << '\n';
        out << "prep.cutoff_hz = " << num(prep_cutoff_hz) << '\n';
        out << "prep.fit_fraction = " << num(prep_fit_fraction) << '\n';
        return out.str();
    }

    void validate() const {
        const auto fail = [](const std::string& key, const std::string& constraint) {
            throw config_error("config key '" + key + "' violates: " + constraint);
        };
        if (!(grid_x_lo < grid_x_hi)) fail("grid.x_lo", "grid.x_lo < grid.x_hi");
        if (grid_m < 0) fail("grid.m", "grid.m >= 0");
        if (grid_n < 0) fail("grid.n", "grid.n >= 0");
        if (grid_m + grid_n < 1) fail("grid.m", "grid.m + grid.n >= 1");
        if (psi_gap_lo < 0.0) fail("psi.gap_lo", "psi.gap_lo >= 0");
        if (!(psi_gap_lo < psi_gap_hi)) fail("psi.gap_lo", "psi.gap_lo < psi.gap_hi");
        if (psi_count < 1) fail("psi.count", "psi.count >= 1");
        if (!(osc_mass > 0.0)) fail("osc.mass", "osc.mass > 0");
        if (osc_damping < 0.0) fail("osc.damping", "osc.damping >= 0");
        if (!(osc_stiffness > 0.0)) fail("osc.stiffness", "osc.stiffness > 0");
        if (osc_zeta.has_value() != osc_omega_n.has_value())
            fail("osc.zeta", "osc.zeta and osc.omega_n must be set together");
        if (osc_zeta && *osc_zeta < 0.0) fail("osc.zeta", "osc.zeta >= 0");
        if (osc_omega_n && !(*osc_omega_n > 0.0)) fail("osc.omega_n", "osc.omega_n > 0");
        if (!(integ_dt > 0.0)) fail("integ.dt", "integ.dt > 0");
        if (!(integ_t_end > 0.0)) fail("integ.t_end", "integ.t_end > 0");
        if (!(sweep_f_lo > 0.0)) fail("sweep.f_lo", "sweep.f_lo > 0");
        if (!(sweep_f_lo < sweep_f_hi)) fail("sweep.f_lo", "sweep.f_lo < sweep.f_hi");
        if (sweep_n_points < 2) fail("sweep.n_points", "sweep.n_points >= 2");
        if (sweep_steps_per_cycle < 4) fail("sweep.steps_per_cycle", "sweep.steps_per_cycle >= 4");
        if (sweep_transient_cycles < 0) fail("sweep.transient_cycles", "sweep.transient_cycles >= 0");
        if (sweep_measure_cycles < 1) fail("sweep.measure_cycles", "sweep.measure_cycles >= 1");
        if (forcing_amplitude < 0.0) fail("forcing.amplitude", "forcing.amplitude >= 0");
        if (!(forcing_freq_hz > 0.0)) fail("forcing.freq_hz", "forcing.freq_hz > 0");
        if (prep_cutoff_hz < 0.0) fail("prep.cutoff_hz", "prep.cutoff_hz >= 0");
        if (!(prep_fit_fraction > 0.0) || !(prep_fit_fraction < 1.0))
            fail("prep.fit_fraction", "0 < prep.fit_fraction < 1");
    }
};

namespace detail {

class ConfigParser {
public:
    explicit ConfigParser(const std::string& path) : path_(path) {
        for (const std::string& raw : read_lines(path)) {
            std::string line = raw;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error(path + ": expected 'key = value', got '" + line + "'");
            const std::string key = trim(std::string_view(line).substr(0, eq));
            const std::string value = trim(std::string_view(line).substr(eq + 1));
            if (key.empty() || value.empty())
                throw config_error(path + ": empty key or value in '" + line + "'");
            if (!entries_.emplace(key, value).second)
                throw config_error(path + ": duplicate key '" + key + "'");
        }
    }

    std::optional<std::string> take(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        std::string value = it->second;
        entries_.erase(it);
        return value;
    }

    void take_double(const std::string& key, double& target) {
        if (const auto v = take(key)) {
            const auto parsed = parse_double(*v);
            if (!parsed || !std::isfinite(*parsed))
                throw config_error(path_ + ": key '" + key + "' needs a finite number, got '" +
                                   *v + "'");
            target = *parsed;
        }
    }

    void take_optional_double(const std::string& key, std::optional<double>& target) {
        if (const auto v = take(key)) {
            const auto parsed = parse_double(*v);
            if (!parsed || !std::isfinite(*parsed))
                throw config_error(path_ + ": key '" + key + "' needs a finite number, got '" +
                                   *v + "'");
            target = *parsed;
        }
    }

    void take_int(const std::string& key, int& target) {
        if (const auto v = take(key)) {
            const auto parsed = parse_int(*v);
            if (!parsed)
                throw config_error(path_ + ": key '" + key + "' needs an integer, got '" + *v +
                                   "'");
            target = static_cast<int>(*parsed);
        }
    }

    void take_bool(const std::string& key, bool& target) {
        if (const auto v = take(key)) {
            if (*v == "true" || *v == "1")
                target = true;
            else if (*v == "false" || *v == "0")
                target = false;
            else
                throw config_error(path_ + ": key '" + key + "' needs true/false, got '" + *v +
                                   "'");
        }
    }

    void finish() const {
        if (!entries_.empty())
            throw config_error(path_ + ": unknown config key '" + entries_.begin()->first + "'");
    }

private:
    std::string path_;
    std::map<std::string, std::string> entries_;
};

} // namespace detail

inline RunConfig read_config(const std::string& path) {
    detail::ConfigParser parser(path);
    RunConfig cfg;

    if (const auto v = parser.take("method")) {
        if (*v == "direct") cfg.method = FitMethod::Direct;
        else if (*v == "indirect") cfg.method = FitMethod::Indirect;
        else if (*v == "potential") cfg.method = FitMethod::Potential;
        else throw config_error(path + ": key 'method' must be direct|indirect|potential");
    }
    parser.take_double("grid.x_lo", cfg.grid_x_lo);
    parser.take_double("grid.x_hi", cfg.grid_x_hi);
    parser.take_int("grid.m", cfg.grid_m);
    parser.take_int("grid.n", cfg.grid_n);
    parser.take_double("psi.gap_lo", cfg.psi_gap_lo);
    parser.take_double("psi.gap_hi", cfg.psi_gap_hi);
    parser.take_int("psi.count", cfg.psi_count);
    parser.take_bool("psi.linear_term", cfg.psi_linear_term);
    parser.take_double("osc.mass", cfg.osc_mass);
    parser.take_double("osc.damping", cfg.osc_damping);
    parser.take_double("osc.stiffness", cfg.osc_stiffness);
    parser.take_optional_double("osc.zeta", cfg.osc_zeta);
    parser.take_optional_double("osc.omega_n", cfg.osc_omega_n);
    parser.take_double("integ.dt", cfg.integ_dt);
    parser.take_double("integ.t_end", cfg.integ_t_end);
    parser.take_double("integ.x0", cfg.integ_x0);
    parser.take_double("integ.v0", cfg.integ_v0);
    parser.take_double("sweep.f_lo", cfg.sweep_f_lo);
    parser.take_double("sweep.f_hi", cfg.sweep_f_hi);
    parser.take_int("sweep.n_points", cfg.sweep_n_points);
    if (const auto v = parser.take("sweep.direction")) {
        try {
            cfg.sweep_direction = parse_direction(*v);
        } catch (const format_error&) {
            throw config_error(path + ": key 'sweep.direction' must be up|down|cold-start");
        }
    }
    parser.take_int("sweep.steps_per_cycle", cfg.sweep_steps_per_cycle);
    parser.take_int("sweep.transient_cycles", cfg.sweep_transient_cycles);
    parser.take_int("sweep.measure_cycles", cfg.sweep_measure_cycles);
    if (const auto v = parser.take("forcing.kind")) {
        if (*v == "none") cfg.forcing_kind = ForcingKind::None;
        else if (*v == "harmonic") cfg.forcing_kind = ForcingKind::Harmonic;
        else if (*v == "base") cfg.forcing_kind = ForcingKind::Base;
        else throw config_error(path + ": key 'forcing.kind' must be none|harmonic|base");
    }
    parser.take_double("forcing.amplitude", cfg.forcing_amplitude);
    parser.take_double("forcing.freq_hz", cfg.forcing_freq_hz);
    parser.take_double("prep.cutoff_hz", cfg.prep_cutoff_hz);
    parser.take_double("prep.fit_fraction", cfg.prep_fit_fraction);
    parser.finish();

    cfg.validate();
    return cfg;
}

} // namespace hingefit
