// Signal processing for identification inputs and response analysis:
// numerical differentiation, zero-phase low-pass filtering, amplitude
// spectra, envelopes, backbone extraction, phase shift, and RMSE.
#pragma once

#include "hingefit/timeseries.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hingefit {

// Second-order central differences; one-sided second-order stencils at the
// endpoints. Output lives on the same grid.
inline TimeSeries central_difference(const TimeSeries& series) {
    const std::size_t n = series.size();
    if (n < 3)
        throw std::invalid_argument("central_difference: need at least 3 samples");
    const double dt = series.dt();
    const auto& x = series.values();
    std::vector<double> d(n);
    // One-sided stencils written as differences first so constants map to
    // exactly zero.
    d[0] = (4.0 * (x[1] - x[0]) - (x[2] - x[0])) / (2.0 * dt);
    for (std::size_t i = 1; i + 1 < n; ++i)
        d[i] = (x[i + 1] - x[i - 1]) / (2.0 * dt);
    d[n - 1] = (4.0 * (x[n - 1] - x[n - 2]) - (x[n - 1] - x[n - 3])) / (2.0 * dt);
    std::string label = "d(" + series.label() + ")/dt";
    return TimeSeries(series.t0(), dt, std::move(d), std::move(label));
}

namespace detail {

struct Biquad {
    double b0, b1, b2, a1, a2;

    // Direct form II transposed, states primed to the steady state of the
    // first input value so a DC segment passes through unchanged.
    void run(const std::vector<double>& in, std::vector<double>& out) const {
        out.resize(in.size());
        const double u0 = in.empty() ? 0.0 : in.front();
        double z1 = (1.0 - b0) * u0;
        double z2 = (b2 - a2) * u0;
        for (std::size_t i = 0; i < in.size(); ++i) {
            const double u = in[i];
            const double y = b0 * u + z1;
            z1 = b1 * u - a1 * y + z2;
            z2 = b2 * u - a2 * y;
            out[i] = y;
        }
    }
};

// Second-order Butterworth low-pass via the bilinear transform.
inline Biquad butterworth_lowpass(double cutoff_hz, double dt) {
    const double k = std::tan(std::numbers::pi * cutoff_hz * dt);
    const double q = 1.0 / std::numbers::sqrt2;
    const double norm = 1.0 / (1.0 + k / q + k * k);
    Biquad f;
    f.b0 = k * k * norm;
    f.b1 = 2.0 * f.b0;
    f.b2 = f.b0;
    f.a1 = 2.0 * (k * k - 1.0) * norm;
    f.a2 = (1.0 - k / q + k * k) * norm;
    return f;
}

} // namespace detail

// Zero-phase low-pass: one Butterworth biquad applied forward then backward.
// Edge transients are handled by odd-reflection padding of three filter time
// constants.
inline TimeSeries low_pass(const TimeSeries& series, double cutoff_hz) {
    const double nyquist = 0.5 / series.dt();
    if (!(cutoff_hz > 0.0) || cutoff_hz >= nyquist)
        throw std::invalid_argument("low_pass: cutoff must lie in (0, Nyquist)");

    const std::size_t n = series.size();
    const double tau = 1.0 / (2.0 * std::numbers::pi * cutoff_hz);
    const std::size_t pad =
        std::min(n - 1, static_cast<std::size_t>(std::ceil(3.0 * tau / series.dt())));

    const auto& x = series.values();
    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t i = pad; i >= 1; --i) ext.push_back(2.0 * x[0] - x[i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 1; i <= pad; ++i) ext.push_back(2.0 * x[n - 1] - x[n - 1 - i]);

    const detail::Biquad f = detail::butterworth_lowpass(cutoff_hz, series.dt());
    std::vector<double> fwd;
    f.run(ext, fwd);
    std::reverse(fwd.begin(), fwd.end());
    std::vector<double> bwd;
    f.run(fwd, bwd);
    std::reverse(bwd.begin(), bwd.end());

    std::vector<double> out(bwd.begin() + static_cast<std::ptrdiff_t>(pad),
                            bwd.begin() + static_cast<std::ptrdiff_t>(pad + n));
    return TimeSeries(series.t0(), series.dt(), std::move(out), series.label(),
                      series.units());
}

// Single-sided amplitude spectrum on a uniform frequency grid from 0.
struct Spectrum {
    std::vector<double> frequencies;
    std::vector<double> magnitudes;
    double df = 0.0;
};

enum class SpectrumWindow { None, Hann };

// Single-sided amplitude spectrum, zero-padded to the next power of two.
// A pure sinusoid of amplitude A at an on-grid frequency yields magnitude A
// (window gain is compensated).
inline Spectrum fft_spectrum(const TimeSeries& series,
                             SpectrumWindow window = SpectrumWindow::None) {
    const std::size_t n = series.size();
    if (n < 2)
        throw std::invalid_argument("fft_spectrum: need at least 2 samples");

    std::size_t nfft = 1;
    while (nfft < n) nfft <<= 1;

    std::vector<double> data(nfft, 0.0);
    double gain = 1.0;
    if (window == SpectrumWindow::Hann) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                                   static_cast<double>(i) /
                                                   static_cast<double>(n - 1)));
            data[i] = series[i] * w;
            sum += w;
        }
        gain = sum / static_cast<double>(n);
    } else {
        std::copy(series.values().begin(), series.values().end(), data.begin());
    }

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> freq;
    fft.fwd(freq, data);

    Spectrum spec;
    spec.df = 1.0 / (static_cast<double>(nfft) * series.dt());
    const std::size_t half = nfft / 2;
    spec.frequencies.resize(half + 1);
    spec.magnitudes.resize(half + 1);
    const double scale = 1.0 / (static_cast<double>(n) * gain);
    for (std::size_t k = 0; k <= half; ++k) {
        spec.frequencies[k] = static_cast<double>(k) * spec.df;
        const double one_sided = (k == 0 || k == half) ? 1.0 : 2.0;
        spec.magnitudes[k] = one_sided * std::abs(freq[k]) * scale;
    }
    return spec;
}

// Piecewise-linear interpolant through (t, v) knots, clamped outside the
// spanned range.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;

    PiecewiseLinear(std::vector<double> t, std::vector<double> v)
        : t_(std::move(t)), v_(std::move(v)) {
        if (t_.size() != v_.size() || t_.size() < 2)
            throw std::invalid_argument("PiecewiseLinear: need at least 2 knots");
        for (std::size_t i = 1; i < t_.size(); ++i)
            if (!(t_[i] > t_[i - 1]))
                throw std::invalid_argument("PiecewiseLinear: knot times must increase");
    }

    double operator()(double t) const {
        if (t <= t_.front()) return v_.front();
        if (t >= t_.back()) return v_.back();
        const auto it = std::upper_bound(t_.begin(), t_.end(), t);
        const std::size_t hi = static_cast<std::size_t>(it - t_.begin());
        const std::size_t lo = hi - 1;
        const double w = (t - t_[lo]) / (t_[hi] - t_[lo]);
        return v_[lo] + w * (v_[hi] - v_[lo]);
    }

    double t_min() const { return t_.front(); }
    double t_max() const { return t_.back(); }
    const std::vector<double>& knot_times() const { return t_; }
    const std::vector<double>& knot_values() const { return v_; }

private:
    std::vector<double> t_;
    std::vector<double> v_;
};

struct Envelopes {
    PiecewiseLinear upper;
    PiecewiseLinear lower;
};

// Upper/lower envelopes interpolated through strict local maxima/minima.
inline Envelopes envelopes(const TimeSeries& series) {
    const auto& x = series.values();
    std::vector<double> t_max, v_max, t_min, v_min;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
        if (x[i] > x[i - 1] && x[i] > x[i + 1]) {
            t_max.push_back(series.time_at(i));
            v_max.push_back(x[i]);
        } else if (x[i] < x[i - 1] && x[i] < x[i + 1]) {
            t_min.push_back(series.time_at(i));
            v_min.push_back(x[i]);
        }
    }
    if (t_max.size() < 2 || t_min.size() < 2)
        throw std::invalid_argument("envelopes: need at least 2 maxima and 2 minima");
    return {PiecewiseLinear(std::move(t_max), std::move(v_max)),
            PiecewiseLinear(std::move(t_min), std::move(v_min))};
}

// Amplitude-frequency pairs extracted along a decaying free response.
struct BackboneCurve {
    std::vector<double> amplitudes;
    std::vector<double> frequencies_hz;
    std::string source;
};

// Instantaneous frequency from positive-slope crossings of the oscillation
// center (envelope midpoint); instantaneous amplitude is half the envelope
// separation at each interval midpoint.
inline BackboneCurve backbone_from_free_response(const TimeSeries& series) {
    const Envelopes env = envelopes(series);
    const double t_lo = std::max(env.upper.t_min(), env.lower.t_min());
    const double t_hi = std::min(env.upper.t_max(), env.lower.t_max());

    std::vector<double> crossings;
    const auto& x = series.values();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double ta = series.time_at(i);
        const double tb = series.time_at(i + 1);
        if (ta < t_lo || tb > t_hi) continue;
        const double da = x[i] - 0.5 * (env.upper(ta) + env.lower(ta));
        const double db = x[i + 1] - 0.5 * (env.upper(tb) + env.lower(tb));
        if (da < 0.0 && db >= 0.0)
            crossings.push_back(ta + series.dt() * da / (da - db));
    }
    if (crossings.size() < 3)
        throw std::invalid_argument(
            "backbone_from_free_response: need at least 3 same-direction center crossings");

    BackboneCurve curve;
    curve.source = series.label();
    for (std::size_t i = 0; i + 1 < crossings.size(); ++i) {
        const double t1 = crossings[i];
        const double t2 = crossings[i + 1];
        const double tm = 0.5 * (t1 + t2);
        curve.frequencies_hz.push_back(1.0 / (t2 - t1));
        curve.amplitudes.push_back(0.5 * (env.upper(tm) - env.lower(tm)));
    }
    return curve;
}

namespace detail {

// Phase delay theta in degrees of the fundamental at f_hz, with the series
// modeled as R sin(2 pi f t - theta). Uses the largest whole number of
// periods that fits.
inline double fundamental_phase_delay_deg(const TimeSeries& series, double f_hz) {
    if (!(f_hz > 0.0))
        throw std::invalid_argument("phase: frequency must be positive");
    const double duration = series.duration();
    const int periods = static_cast<int>(std::floor(duration * f_hz + 1e-9));
    if (periods < 1)
        throw std::invalid_argument("phase: window shorter than one period");
    // One sample per grid point over the whole periods, excluding the
    // repeated endpoint, so discrete orthogonality holds exactly when the
    // period is a multiple of dt.
    std::size_t n_win = static_cast<std::size_t>(
        std::llround(static_cast<double>(periods) / (f_hz * series.dt())));
    n_win = std::min(std::max<std::size_t>(n_win, 2), series.size());

    const double omega = 2.0 * std::numbers::pi * f_hz;
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n_win; ++i) {
        const double t = series.time_at(i);
        s += series[i] * std::sin(omega * t);
        c += series[i] * std::cos(omega * t);
    }
    // x ~ A sin + B cos = R sin(wt - theta) with theta = -atan2(B, A).
    const double theta = -std::atan2(c, s) * 180.0 / std::numbers::pi;
    return theta;
}

} // namespace detail

// Phase of the signal's fundamental relative to the reference at f_e, in
// degrees in [0, 360). Delaying the signal by dt adds 360 f_e dt degrees.
inline double phase_shift(const TimeSeries& reference, const TimeSeries& signal,
                          double f_e_hz) {
    if (!reference.same_grid(signal))
        throw std::invalid_argument("phase_shift: series must share one time grid");
    const double ref = detail::fundamental_phase_delay_deg(reference, f_e_hz);
    const double sig = detail::fundamental_phase_delay_deg(signal, f_e_hz);
    double delta = std::fmod(sig - ref, 360.0);
    if (delta < 0.0) delta += 360.0;
    return delta;
}

// Ratio of steady-state tip amplitude to base amplitude.
inline double transmissibility(double tip_amplitude, double base_amplitude) {
    if (!(base_amplitude > 0.0))
        throw std::invalid_argument("transmissibility: base amplitude must be positive");
    return tip_amplitude / base_amplitude;
}

// Root-mean-square difference of two series on the same grid.
inline double rmse(const TimeSeries& a, const TimeSeries& b) {
    if (!a.same_grid(b))
        throw std::invalid_argument("rmse: series must share one time grid");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

struct SeriesTriple {
    TimeSeries x;
    TimeSeries v;
    TimeSeries a;
};

// Time-contiguous prefix/suffix split of a displacement/velocity/acceleration
// record; both partitions keep their grid metadata.
inline std::pair<SeriesTriple, SeriesTriple>
split_fit_validate(const TimeSeries& x, const TimeSeries& v, const TimeSeries& a,
                   double fit_fraction) {
    if (!(fit_fraction > 0.0) || !(fit_fraction < 1.0))
        throw std::invalid_argument("split_fit_validate: fit_fraction must lie in (0, 1)");
    if (!x.same_grid(v) || !x.same_grid(a))
        throw std::invalid_argument("split_fit_validate: series must share one time grid");
    const std::size_t n = x.size();
    std::size_t n_fit = static_cast<std::size_t>(
        std::llround(fit_fraction * static_cast<double>(n)));
    n_fit = std::clamp<std::size_t>(n_fit, 1, n - 1);
    SeriesTriple fit{x.slice(0, n_fit), v.slice(0, n_fit), a.slice(0, n_fit)};
    SeriesTriple val{x.slice(n_fit, n - n_fit), v.slice(n_fit, n - n_fit),
                     a.slice(n_fit, n - n_fit)};
    return {std::move(fit), std::move(val)};
}

} // namespace hingefit
