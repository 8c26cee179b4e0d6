// Single degree-of-freedom oscillator models (exact and identified), fixed
// step RK4 time integration, static equilibrium, and steady-state forced
// response sweeps.
//
// Under base excitation the integrated state is the relative displacement
// y = x - X_b sin(2 pi f_e t); the equivalent forcing on the relative
// coordinate is m X_b (2 pi f_e)^2 sin(2 pi f_e t).
#pragma once

#include "hingefit/errors.hpp"
#include "hingefit/regress.hpp"
#include "hingefit/sigproc.hpp"
#include "hingefit/timeseries.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hingefit {

struct CubicStiffness {
    double p2 = 0.0;
};

// One-sided spring of stiffness p2 engaging beyond the gap.
struct GapSpring {
    double p2 = 0.0;
    double gap = 0.0;
};

struct FittedForce {
    ForceModel model;
};

struct FittedPotentialForce {
    PotentialForceModel model;
};

using Nonlinearity =
    std::variant<std::monostate, CubicStiffness, GapSpring, FittedForce, FittedPotentialForce>;

struct HarmonicForcing {
    double amplitude = 0.0; // force
    double freq_hz = 1.0;
};

struct BaseExcitation {
    double amplitude = 0.0; // base displacement X_b
    double freq_hz = 1.0;
};

using Forcing = std::variant<std::monostate, HarmonicForcing, BaseExcitation>;

struct OscillatorModel {
    double m = 1.0;
    double c = 0.0;
    double k = 1.0;
    Nonlinearity nonlinearity;
    Forcing forcing;

    void validate() const {
        if (!(m > 0.0)) throw std::invalid_argument("OscillatorModel: mass must be positive");
        if (c < 0.0) throw std::invalid_argument("OscillatorModel: damping must be non-negative");
    }

    double omega_n() const { return std::sqrt(k / m); }
    double natural_freq_hz() const { return omega_n() / (2.0 * std::numbers::pi); }

    bool base_excited() const { return std::holds_alternative<BaseExcitation>(forcing); }

    // Total displacement-dependent force k x plus the nonlinear term.
    // Mass-normalized fitted models are scaled by m.
    double restoring_force(double x) const {
        double nl = 0.0;
        if (const auto* cubic = std::get_if<CubicStiffness>(&nonlinearity)) {
            nl = cubic->p2 * x * x * x;
        } else if (const auto* gap = std::get_if<GapSpring>(&nonlinearity)) {
            nl = gap->p2 * std::max(0.0, x - gap->gap);
        } else if (const auto* fit = std::get_if<FittedForce>(&nonlinearity)) {
            nl = fit->model.eval(x) * (fit->model.normalized_by_mass ? m : 1.0);
        } else if (const auto* pot = std::get_if<FittedPotentialForce>(&nonlinearity)) {
            // f_t sits on the right-hand side of the equation of motion, so
            // it contributes -m f_t to the restoring force.
            nl = -m * pot->model.force(x);
        }
        return k * x + nl;
    }

    double forcing_amplitude() const {
        if (const auto* h = std::get_if<HarmonicForcing>(&forcing)) return h->amplitude;
        if (const auto* b = std::get_if<BaseExcitation>(&forcing)) return b->amplitude;
        return 0.0;
    }

    double forcing_freq_hz() const {
        if (const auto* h = std::get_if<HarmonicForcing>(&forcing)) return h->freq_hz;
        if (const auto* b = std::get_if<BaseExcitation>(&forcing)) return b->freq_hz;
        return 0.0;
    }

    OscillatorModel with_forcing_freq(double freq_hz) const {
        OscillatorModel out = *this;
        if (auto* h = std::get_if<HarmonicForcing>(&out.forcing)) h->freq_hz = freq_hz;
        if (auto* b = std::get_if<BaseExcitation>(&out.forcing)) b->freq_hz = freq_hz;
        return out;
    }

    // External force on the integrated coordinate at time t.
    double external_force(double t) const {
        if (const auto* h = std::get_if<HarmonicForcing>(&forcing)) {
            return h->amplitude * std::sin(2.0 * std::numbers::pi * h->freq_hz * t);
        }
        if (const auto* b = std::get_if<BaseExcitation>(&forcing)) {
            const double we = 2.0 * std::numbers::pi * b->freq_hz;
            return m * b->amplitude * we * we * std::sin(we * t);
        }
        return 0.0;
    }

    // Acceleration of the integrated coordinate.
    double accel(double t, double x, double v) const {
        return (external_force(t) - c * v - restoring_force(x)) / m;
    }
};

struct Trajectory {
    TimeSeries x;
    TimeSeries v;
    TimeSeries a;
};

namespace detail {

struct Rk4State {
    double x;
    double v;
};

inline Rk4State rk4_step(const OscillatorModel& model, double t, Rk4State s, double dt) {
    const auto f = [&](double tt, const Rk4State& y) {
        return Rk4State{y.v, model.accel(tt, y.x, y.v)};
    };
    const Rk4State k1 = f(t, s);
    const Rk4State k2 = f(t + 0.5 * dt, {s.x + 0.5 * dt * k1.x, s.v + 0.5 * dt * k1.v});
    const Rk4State k3 = f(t + 0.5 * dt, {s.x + 0.5 * dt * k2.x, s.v + 0.5 * dt * k2.v});
    const Rk4State k4 = f(t + dt, {s.x + dt * k3.x, s.v + dt * k3.v});
    s.x += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    s.v += dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    return s;
}

inline void check_finite_state(const Rk4State& s, double t) {
    if (!std::isfinite(s.x) || !std::isfinite(s.v))
        throw divergence_error(t, "time integration diverged at t = " + std::to_string(t) + " s");
}

} // namespace detail

// Classical fixed-step explicit RK4 on the first-order form of the governing
// equation. Emits displacement, velocity, and acceleration on one grid.
inline Trajectory integrate(const OscillatorModel& model, double x0, double v0,
                            double dt, double t_end) {
    model.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be positive");

    const std::size_t n_steps =
        static_cast<std::size_t>(std::max<long long>(1, std::llround(t_end / dt)));
    std::vector<double> xs(n_steps + 1), vs(n_steps + 1), as(n_steps + 1);

    detail::Rk4State s{x0, v0};
    xs[0] = s.x;
    vs[0] = s.v;
    as[0] = model.accel(0.0, s.x, s.v);
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        s = detail::rk4_step(model, t, s, dt);
        detail::check_finite_state(s, t + dt);
        xs[i + 1] = s.x;
        vs[i + 1] = s.v;
        as[i + 1] = model.accel(static_cast<double>(i + 1) * dt, s.x, s.v);
    }

    const std::string disp = model.base_excited() ? "y" : "x";
    return Trajectory{TimeSeries(0.0, dt, std::move(xs), disp),
                      TimeSeries(0.0, dt, std::move(vs), "v"),
                      TimeSeries(0.0, dt, std::move(as), "a")};
}

// Root of restoring_force(x) - F = 0 nearest zero, by bracket scan and
// bisection refined to |dx| < 1e-12.
inline double static_equilibrium(const OscillatorModel& model, double F) {
    model.validate();
    require_finite(F, "F");
    const auto g = [&](double x) { return model.restoring_force(x) - F; };

    double lo = 0.0, hi = 0.0;
    bool found = false;
    for (double range = 1e-3; range <= 1e9 && !found; range *= 10.0) {
        constexpr int n_scan = 4000;
        double best_mid = std::numeric_limits<double>::infinity();
        double prev_x = -range;
        double prev_g = g(prev_x);
        for (int i = 1; i <= n_scan; ++i) {
            const double x = -range + 2.0 * range * static_cast<double>(i) / n_scan;
            const double gx = g(x);
            const auto consider = [&](double a, double b) {
                const double mid = std::abs(0.5 * (a + b));
                if (mid < best_mid) {
                    best_mid = mid;
                    lo = a;
                    hi = b;
                    found = true;
                }
            };
            if (prev_g == 0.0)
                consider(prev_x, prev_x);
            else if (gx == 0.0)
                consider(x, x);
            else if ((prev_g < 0.0) != (gx < 0.0))
                consider(prev_x, x);
            prev_x = x;
            prev_g = gx;
        }
    }
    if (!found)
        throw no_root_error("static_equilibrium: no sign change of the restoring force "
                            "found in the scanned bracket");

    if (lo == hi) return lo;
    double g_lo = g(lo);
    if (g_lo == 0.0) return lo;
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = g(mid);
        if (g_mid == 0.0) return mid;
        if ((g_lo < 0.0) != (g_mid < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            g_lo = g_mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Steady-state response at one excitation frequency.
struct SteadyState {
    double amplitude = 0.0;        // (max - min)/2 of the integrated displacement
    double tip_amplitude = 0.0;    // absolute motion; equals amplitude unless base-excited
    double transmissibility = std::numeric_limits<double>::quiet_NaN();
    double phase_deg = std::numeric_limits<double>::quiet_NaN();
    double x_end = 0.0;
    double v_end = 0.0;
};

// Integrates transient_cycles + measure_cycles excitation periods at
// dt = 1/(f_e steps_per_cycle) and measures the response over the final
// measure_cycles. For base-excited models the absolute tip motion,
// transmissibility, and tip-vs-base phase are also reported.
inline SteadyState steady_state_amplitude(const OscillatorModel& model, double f_e_hz,
                                          int transient_cycles, int measure_cycles,
                                          double x0, double v0, int steps_per_cycle) {
    model.validate();
    if (!(f_e_hz > 0.0))
        throw std::invalid_argument("steady_state_amplitude: excitation frequency must be positive");
    if (transient_cycles < 0 || measure_cycles < 1)
        throw std::invalid_argument("steady_state_amplitude: invalid cycle counts");
    if (steps_per_cycle < 4)
        throw std::invalid_argument("steady_state_amplitude: steps_per_cycle must be at least 4");

    const OscillatorModel run = model.with_forcing_freq(f_e_hz);
    const double dt = 1.0 / (f_e_hz * static_cast<double>(steps_per_cycle));
    const std::size_t n_transient =
        static_cast<std::size_t>(transient_cycles) * static_cast<std::size_t>(steps_per_cycle);
    const std::size_t n_measure =
        static_cast<std::size_t>(measure_cycles) * static_cast<std::size_t>(steps_per_cycle);

    detail::Rk4State s{x0, v0};
    std::size_t step = 0;
    for (; step < n_transient; ++step) {
        s = detail::rk4_step(run, static_cast<double>(step) * dt, s, dt);
        detail::check_finite_state(s, static_cast<double>(step + 1) * dt);
    }

    std::vector<double> window(n_measure + 1);
    window[0] = s.x;
    for (std::size_t i = 0; i < n_measure; ++i, ++step) {
        s = detail::rk4_step(run, static_cast<double>(step) * dt, s, dt);
        detail::check_finite_state(s, static_cast<double>(step + 1) * dt);
        window[i + 1] = s.x;
    }

    const double t_window0 = static_cast<double>(n_transient) * dt;
    SteadyState out;
    const auto [mn, mx] = std::minmax_element(window.begin(), window.end());
    out.amplitude = 0.5 * (*mx - *mn);
    out.x_end = s.x;
    out.v_end = s.v;

    if (const auto* base = std::get_if<BaseExcitation>(&run.forcing)) {
        const double we = 2.0 * std::numbers::pi * f_e_hz;
        std::vector<double> tip(window.size()), base_motion(window.size());
        for (std::size_t i = 0; i < window.size(); ++i) {
            const double t = t_window0 + static_cast<double>(i) * dt;
            base_motion[i] = base->amplitude * std::sin(we * t);
            tip[i] = window[i] + base_motion[i];
        }
        const auto [tmn, tmx] = std::minmax_element(tip.begin(), tip.end());
        out.tip_amplitude = 0.5 * (*tmx - *tmn);
        if (base->amplitude > 0.0) {
            out.transmissibility = transmissibility(out.tip_amplitude, base->amplitude);
            const TimeSeries tip_ts(t_window0, dt, std::move(tip), "tip");
            const TimeSeries base_ts(t_window0, dt, std::move(base_motion), "base");
            out.phase_deg = phase_shift(base_ts, tip_ts, f_e_hz);
        }
    } else {
        out.tip_amplitude = out.amplitude;
    }
    return out;
}

enum class SweepDirection { Up, Down, ColdStart };

inline const char* to_string(SweepDirection d) {
    switch (d) {
        case SweepDirection::Up: return "up";
        case SweepDirection::Down: return "down";
        case SweepDirection::ColdStart: return "cold-start";
    }
    return "?";
}

// Per-frequency steady-state amplitudes with the normalization constants
// f_n (linear natural frequency) and X_st (static equilibrium under the
// forcing amplitude; the base amplitude for base-excited sweeps).
struct SweepResult {
    std::vector<double> frequencies_hz;
    std::vector<double> amplitudes;
    std::vector<bool> valid;
    // Filled for base-excited sweeps only.
    std::vector<double> transmissibility;
    std::vector<double> phase_deg;
    SweepDirection direction = SweepDirection::Up;
    double f_n_hz = 0.0;
    double x_st = 0.0;
    int transient_cycles = 0;
    int measure_cycles = 0;
};

struct SweepSettings {
    int transient_cycles = 180;
    int measure_cycles = 20;
    int steps_per_cycle = 1000;
    double x0 = 0.0;
    double v0 = 0.0;
};

// Uniformly spaced frequency sweep. Up/down sweeps seed each frequency with
// the final state of the previous one; cold-start begins every frequency
// from the configured initial state. Frequencies are stored in execution
// order. A diverging point is flagged invalid and the sweep continues.
inline SweepResult frequency_sweep(const OscillatorModel& model, double f_lo_hz,
                                   double f_hi_hz, std::size_t n_points,
                                   SweepDirection direction,
                                   const SweepSettings& settings = {}) {
    model.validate();
    if (!(f_lo_hz > 0.0) || !(f_lo_hz < f_hi_hz))
        throw std::invalid_argument("frequency_sweep: need 0 < f_lo < f_hi");
    if (n_points < 2)
        throw std::invalid_argument("frequency_sweep: need at least 2 points");
    if (std::holds_alternative<std::monostate>(model.forcing))
        throw std::invalid_argument("frequency_sweep: model has no forcing");

    std::vector<double> freqs = linspace(f_lo_hz, f_hi_hz, n_points);
    if (direction == SweepDirection::Down) std::reverse(freqs.begin(), freqs.end());

    SweepResult result;
    result.direction = direction;
    result.f_n_hz = model.natural_freq_hz();
    result.transient_cycles = settings.transient_cycles;
    result.measure_cycles = settings.measure_cycles;
    if (model.base_excited()) {
        result.x_st = model.forcing_amplitude();
    } else {
        result.x_st = static_equilibrium(model, model.forcing_amplitude());
    }

    const bool base = model.base_excited();
    double x_state = settings.x0;
    double v_state = settings.v0;
    for (double f : freqs) {
        if (direction == SweepDirection::ColdStart) {
            x_state = settings.x0;
            v_state = settings.v0;
        }
        result.frequencies_hz.push_back(f);
        try {
            const SteadyState ss = steady_state_amplitude(
                model, f, settings.transient_cycles, settings.measure_cycles, x_state,
                v_state, settings.steps_per_cycle);
            result.amplitudes.push_back(ss.amplitude);
            result.valid.push_back(true);
            if (base) {
                result.transmissibility.push_back(ss.transmissibility);
                result.phase_deg.push_back(ss.phase_deg);
            }
            x_state = ss.x_end;
            v_state = ss.v_end;
        } catch (const divergence_error&) {
            result.amplitudes.push_back(std::numeric_limits<double>::quiet_NaN());
            result.valid.push_back(false);
            if (base) {
                result.transmissibility.push_back(std::numeric_limits<double>::quiet_NaN());
                result.phase_deg.push_back(std::numeric_limits<double>::quiet_NaN());
            }
            x_state = settings.x0;
            v_state = settings.v0;
        }
    }
    return result;
}

// First-order frequency-amplitude relation of the Duffing oscillator,
// w(X)^2 = p1/m + (3/4)(p2/m) X^2, used as the backbone oracle.
inline std::vector<std::pair<double, double>>
duffing_backbone_analytic(double m, double p1, double p2,
                          const std::vector<double>& amplitudes) {
    if (!(m > 0.0)) throw std::invalid_argument("duffing_backbone_analytic: m must be positive");
    if (!(p1 > 0.0)) throw std::invalid_argument("duffing_backbone_analytic: p1 must be positive");
    std::vector<std::pair<double, double>> out;
    out.reserve(amplitudes.size());
    for (double X : amplitudes) {
        const double w2 = p1 / m + 0.75 * (p2 / m) * X * X;
        out.emplace_back(X, std::sqrt(w2));
    }
    return out;
}

} // namespace hingefit
