// File formats: time-series/sweep/backbone/spectrum CSV, force-model
// persistence, and key=value run configuration. Writers are deterministic
// (17 significant digits) and readers reject malformed input outright.
#pragma once

#include "hingefit/basis.hpp"
#include "hingefit/dynamics.hpp"
#include "hingefit/errors.hpp"
#include "hingefit/regress.hpp"
#include "hingefit/sigproc.hpp"
#include "hingefit/timeseries.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hingefit {

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        out.push_back(trim(std::string_view(line).substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

// Full-token floating point parse; NaN and infinities are accepted here and
// policed by the callers that forbid them.
inline std::optional<double> parse_double(const std::string& tok) {
    if (tok.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) return std::nullopt;
    return v;
}

inline std::optional<long long> parse_int(const std::string& tok) {
    if (tok.empty()) return std::nullopt;
    char* end = nullptr;
    const long long v = std::strtoll(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size()) return std::nullopt;
    return v;
}

inline std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw format_error("cannot open '" + path + "' for writing");
    return out;
}

inline std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open '" + path + "' for reading");
    return in;
}

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in = open_for_read(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Time-series CSV: optional "# units:" comment, header "t,<ch>[,<ch>...]",
// strictly increasing uniform time column.
// ---------------------------------------------------------------------------

inline std::vector<TimeSeries> read_timeseries_csv(const std::string& path) {
    const std::vector<std::string> lines = detail::read_lines(path);

    std::vector<std::string> units;
    std::vector<std::string> labels;
    std::vector<double> times;
    std::vector<std::vector<double>> channels;
    std::size_t data_row = 0;
    bool have_header = false;

    for (const std::string& raw : lines) {
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::size_t pos = line.find("units:");
            if (pos != std::string::npos && units.empty())
                units = detail::split(line.substr(pos + 6), ',');
            continue;
        }
        if (!have_header) {
            const std::vector<std::string> head = detail::split(line, ',');
            if (head.size() < 2 || head[0] != "t")
                throw format_error(path + ": header must be 't,<channel>[,<channel>...]'");
            labels.assign(head.begin() + 1, head.end());
            channels.resize(labels.size());
            have_header = true;
            continue;
        }
        ++data_row;
        const std::vector<std::string> cells = detail::split(line, ',');
        if (cells.size() != labels.size() + 1)
            throw format_error(path + ": row " + std::to_string(data_row) +
                               " has " + std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(labels.size() + 1));
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const auto v = detail::parse_double(cells[j]);
            if (!v || !std::isfinite(*v))
                throw format_error(path + ": non-finite or unparsable cell at row " +
                                   std::to_string(data_row));
            if (j == 0)
                times.push_back(*v);
            else
                channels[j - 1].push_back(*v);
        }
    }

    if (!have_header) throw format_error(path + ": missing header row");
    if (times.size() < 2) throw format_error(path + ": need at least 2 data rows");

    const double dt0 = times[1] - times[0];
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double d = times[i] - times[i - 1];
        if (!(d > 0.0))
            throw format_error(path + ": time column not strictly increasing at row " +
                               std::to_string(i + 1));
        if (std::abs(d - dt0) > 1e-9 * std::abs(dt0))
            throw format_error(path + ": non-uniform time grid at row " +
                               std::to_string(i + 1));
    }
    const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);

    if (!units.empty()) {
        if (units.size() == labels.size() + 1)
            units.erase(units.begin()); // leading entry is the time unit
        else if (units.size() != labels.size())
            throw format_error(path + ": units count does not match channel count");
    }

    std::vector<TimeSeries> out;
    out.reserve(labels.size());
    for (std::size_t j = 0; j < labels.size(); ++j)
        out.emplace_back(times.front(), dt, std::move(channels[j]), labels[j],
                         units.empty() ? std::string() : units[j]);
    return out;
}

inline void write_timeseries_csv(const std::string& path,
                                 const std::vector<TimeSeries>& series) {
    if (series.empty())
        throw std::invalid_argument("write_timeseries_csv: need at least one series");
    for (std::size_t i = 1; i < series.size(); ++i)
        if (!series[0].same_grid(series[i]))
            throw std::invalid_argument("write_timeseries_csv: series must share one time grid");

    std::ofstream out = detail::open_for_write(path);
    bool any_units = false;
    for (const TimeSeries& s : series) any_units |= !s.units().empty();
    if (any_units) {
        out << "# units: s";
        for (const TimeSeries& s : series) out << ',' << s.units();
        out << '\n';
    }
    out << 't';
    for (const TimeSeries& s : series) out << ',' << s.label();
    out << '\n';
    for (std::size_t i = 0; i < series[0].size(); ++i) {
        out << detail::format_double(series[0].time_at(i));
        for (const TimeSeries& s : series) out << ',' << detail::format_double(s[i]);
        out << '\n';
    }
    if (!out) throw format_error("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Force/displacement sample CSV for the direct method: header "x,f".
// ---------------------------------------------------------------------------

inline std::pair<std::vector<double>, std::vector<double>>
read_samples_csv(const std::string& path) {
    const std::vector<std::string> lines = detail::read_lines(path);
    std::vector<double> xs, fs;
    bool have_header = false;
    std::size_t data_row = 0;
    for (const std::string& raw : lines) {
        const std::string line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (!have_header) {
            const std::vector<std::string> head = detail::split(line, ',');
            if (head.size() != 2 || head[0] != "x" || head[1] != "f")
                throw format_error(path + ": header must be 'x,f'");
            have_header = true;
            continue;
        }
        ++data_row;
        const std::vector<std::string> cells = detail::split(line, ',');
        if (cells.size() != 2)
            throw format_error(path + ": row " + std::to_string(data_row) + " needs 2 cells");
        const auto x = detail::parse_double(cells[0]);
        const auto f = detail::parse_double(cells[1]);
        if (!x || !f || !std::isfinite(*x) || !std::isfinite(*f))
            throw format_error(path + ": non-finite or unparsable cell at row " +
                               std::to_string(data_row));
        xs.push_back(*x);
        fs.push_back(*f);
    }
    if (!have_header) throw format_error(path + ": missing header row");
    if (xs.empty()) throw format_error(path + ": no data rows");
    return {std::move(xs), std::move(fs)};
}

inline void write_samples_csv(const std::string& path, const std::vector<double>& xs,
                              const std::vector<double>& fs) {
    if (xs.size() != fs.size())
        throw std::invalid_argument("write_samples_csv: length mismatch");
    std::ofstream out = detail::open_for_write(path);
    out << "x,f\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << detail::format_double(xs[i]) << ',' << detail::format_double(fs[i]) << '\n';
    if (!out) throw format_error("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Sweep CSV: pinned schema f_hz,f_over_fn,amplitude,amp_over_xst,valid,direction
// with the normalization constants in comment metadata.
// ---------------------------------------------------------------------------

inline SweepDirection parse_direction(const std::string& s) {
    if (s == "up") return SweepDirection::Up;
    if (s == "down") return SweepDirection::Down;
    if (s == "cold-start") return SweepDirection::ColdStart;
    throw format_error("unknown sweep direction '" + s + "'");
}

inline void write_sweep_csv(const std::string& path, const SweepResult& sweep) {
    std::ofstream out = detail::open_for_write(path);
    out << "# f_n_hz: " << detail::format_double(sweep.f_n_hz) << '\n';
    out << "# x_st: " << detail::format_double(sweep.x_st) << '\n';
    out << "# transient_cycles: " << sweep.transient_cycles << '\n';
    out << "# measure_cycles: " << sweep.measure_cycles << '\n';
    out << "f_hz,f_over_fn,amplitude,amp_over_xst,valid,direction\n";
    const char* dir = to_string(sweep.direction);
    for (std::size_t i = 0; i < sweep.frequencies_hz.size(); ++i) {
        const double f = sweep.frequencies_hz[i];
        const double a = sweep.amplitudes[i];
        out << detail::format_double(f) << ',' << detail::format_double(f / sweep.f_n_hz)
            << ',' << detail::format_double(a) << ','
            << detail::format_double(a / sweep.x_st) << ',' << (sweep.valid[i] ? 1 : 0)
            << ',' << dir << '\n';
    }
    if (!out) throw format_error("write failed for '" + path + "'");
}

// Tip/base transmissibility and fundamental phase per frequency, written for
// base-excited sweeps alongside the main sweep CSV.
inline void write_transmissibility_csv(const std::string& path, const SweepResult& sweep) {
    if (sweep.transmissibility.size() != sweep.frequencies_hz.size())
        throw std::invalid_argument(
            "write_transmissibility_csv: sweep carries no transmissibility data");
    std::ofstream out = detail::open_for_write(path);
    out << "f_hz,transmissibility,phase_deg\n";
    for (std::size_t i = 0; i < sweep.frequencies_hz.size(); ++i)
        out << detail::format_double(sweep.frequencies_hz[i]) << ','
            << detail::format_double(sweep.transmissibility[i]) << ','
            << detail::format_double(sweep.phase_deg[i]) << '\n';
    if (!out) throw format_error("write failed for '" + path + "'");
}

inline SweepResult read_sweep_csv(const std::string& path) {
    const std::vector<std::string> lines = detail::read_lines(path);
    SweepResult sweep;
    bool have_header = false;
    bool have_direction = false;
    for (const std::string& raw : lines) {
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto grab = [&](const char* key) -> std::optional<std::string> {
                const std::size_t pos = line.find(key);
                if (pos == std::string::npos) return std::nullopt;
                return detail::trim(std::string_view(line).substr(pos + std::string(key).size()));
            };
            if (const auto v = grab("f_n_hz:")) sweep.f_n_hz = detail::parse_double(*v).value_or(0.0);
            else if (const auto v2 = grab("x_st:")) sweep.x_st = detail::parse_double(*v2).value_or(0.0);
            else if (const auto v3 = grab("transient_cycles:"))
                sweep.transient_cycles = static_cast<int>(detail::parse_int(*v3).value_or(0));
            else if (const auto v4 = grab("measure_cycles:"))
                sweep.measure_cycles = static_cast<int>(detail::parse_int(*v4).value_or(0));
            continue;
        }
        if (!have_header) {
            if (line != "f_hz,f_over_fn,amplitude,amp_over_xst,valid,direction")
                throw format_error(path + ": unexpected sweep header");
            have_header = true;
            continue;
        }
        const std::vector<std::string> cells = detail::split(line, ',');
        if (cells.size() != 6) throw format_error(path + ": sweep row needs 6 cells");
        const auto f = detail::parse_double(cells[0]);
        const auto a = detail::parse_double(cells[2]);
        const auto valid = detail::parse_int(cells[4]);
        if (!f || !a || !valid) throw format_error(path + ": unparsable sweep row");
        sweep.frequencies_hz.push_back(*f);
        sweep.amplitudes.push_back(*a);
        sweep.valid.push_back(*valid != 0);
        const SweepDirection dir = parse_direction(cells[5]);
        if (!have_direction) {
            sweep.direction = dir;
            have_direction = true;
        } else if (dir != sweep.direction) {
            throw format_error(path + ": inconsistent direction column");
        }
    }
    if (!have_header) throw format_error(path + ": missing sweep header");
    return sweep;
}

// ---------------------------------------------------------------------------
// Backbone CSV: header "amplitude,frequency_hz".
// ---------------------------------------------------------------------------

inline void write_backbone_csv(const std::string& path, const BackboneCurve& curve) {
    std::ofstream out = detail::open_for_write(path);
    if (!curve.source.empty()) out << "# source: " << curve.source << '\n';
    out << "amplitude,frequency_hz\n";
    for (std::size_t i = 0; i < curve.amplitudes.size(); ++i)
        out << detail::format_double(curve.amplitudes[i]) << ','
            << detail::format_double(curve.frequencies_hz[i]) << '\n';
    if (!out) throw format_error("write failed for '" + path + "'");
}

inline BackboneCurve read_backbone_csv(const std::string& path) {
    const std::vector<std::string> lines = detail::read_lines(path);
    BackboneCurve curve;
    bool have_header = false;
    for (const std::string& raw : lines) {
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::size_t pos = line.find("source:");
            if (pos != std::string::npos)
                curve.source = detail::trim(std::string_view(line).substr(pos + 7));
            continue;
        }
        if (!have_header) {
            if (line != "amplitude,frequency_hz")
                throw format_error(path + ": unexpected backbone header");
            have_header = true;
            continue;
        }
        const std::vector<std::string> cells = detail::split(line, ',');
        if (cells.size() != 2) throw format_error(path + ": backbone row needs 2 cells");
        const auto a = detail::parse_double(cells[0]);
        const auto f = detail::parse_double(cells[1]);
        if (!a || !f) throw format_error(path + ": unparsable backbone row");
        curve.amplitudes.push_back(*a);
        curve.frequencies_hz.push_back(*f);
    }
    if (!have_header) throw format_error(path + ": missing backbone header");
    return curve;
}

// ---------------------------------------------------------------------------
// Spectrum CSV: "frequency_hz,magnitude", plus an f_over_fe column when an
// excitation frequency is given.
// ---------------------------------------------------------------------------

inline void write_spectrum_csv(const std::string& path, const Spectrum& spec,
                               double f_e_hz = 0.0) {
    std::ofstream out = detail::open_for_write(path);
    if (f_e_hz > 0.0) {
        out << "# f_e_hz: " << detail::format_double(f_e_hz) << '\n';
        out << "frequency_hz,f_over_fe,magnitude\n";
        for (std::size_t i = 0; i < spec.frequencies.size(); ++i)
            out << detail::format_double(spec.frequencies[i]) << ','
                << detail::format_double(spec.frequencies[i] / f_e_hz) << ','
                << detail::format_double(spec.magnitudes[i]) << '\n';
    } else {
        out << "frequency_hz,magnitude\n";
        for (std::size_t i = 0; i < spec.frequencies.size(); ++i)
            out << detail::format_double(spec.frequencies[i]) << ','
                << detail::format_double(spec.magnitudes[i]) << '\n';
    }
    if (!out) throw format_error("write failed for '" + path + "'");
}

inline Spectrum read_spectrum_csv(const std::string& path) {
    const std::vector<std::string> lines = detail::read_lines(path);
    Spectrum spec;
    bool have_header = false;
    bool with_fe = false;
    for (const std::string& raw : lines) {
        const std::string line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (!have_header) {
            if (line == "frequency_hz,magnitude")
                with_fe = false;
            else if (line == "frequency_hz,f_over_fe,magnitude")
                with_fe = true;
            else
                throw format_error(path + ": unexpected spectrum header");
            have_header = true;
            continue;
        }
        const std::vector<std::string> cells = detail::split(line, ',');
        if (cells.size() != (with_fe ? 3u : 2u))
            throw format_error(path + ": bad spectrum row");
        const auto f = detail::parse_double(cells[0]);
        const auto m = detail::parse_double(cells[with_fe ? 2 : 1]);
        if (!f || !m) throw format_error(path + ": unparsable spectrum row");
        spec.frequencies.push_back(*f);
        spec.magnitudes.push_back(*m);
    }
    if (!have_header) throw format_error(path + ": missing spectrum header");
    if (spec.frequencies.size() >= 2) spec.df = spec.frequencies[1] - spec.frequencies[0];
    return spec;
}

// ---------------------------------------------------------------------------
// Model persistence: self-describing text format.
// ---------------------------------------------------------------------------

inline constexpr const char* kModelFormatLine = "hingefit-model v1";

inline void save_model(const std::string& path, const ForceModel& model,
                       const FitReport& report = {}) {
    model.validate();
    std::ofstream out = detail::open_for_write(path);
    out << kModelFormatLine << '\n';
    out << "kind force\n";
    out << "normalized_by_mass " << (model.normalized_by_mass ? 1 : 0) << '\n';
    out << "fit_range " << detail::format_double(model.fit_lo) << ' '
        << detail::format_double(model.fit_hi) << '\n';
    out << "report residual_rms " << detail::format_double(report.residual_rms) << " rank "
        << report.rank_used << " columns " << report.columns << " condition "
        << detail::format_double(report.condition_estimate) << '\n';
    out << "terms " << model.specs.size() << '\n';
    for (std::size_t i = 0; i < model.specs.size(); ++i) {
        const BasisSpec& s = model.specs[i];
        out << to_string(s.kind);
        if (s.kind != BasisKind::Constant && s.kind != BasisKind::Linear)
            out << ' ' << detail::format_double(s.gap);
        out << ' ' << detail::format_double(model.kappa[i]) << '\n';
    }
    out << "end\n";
    if (!out) throw format_error("write failed for '" + path + "'");
}

inline void save_model(const std::string& path, const PotentialForceModel& model,
                       const FitReport& report = {}) {
    model.validate();
    std::ofstream out = detail::open_for_write(path);
    out << kModelFormatLine << '\n';
    out << "kind potential\n";
    out << "q1 " << detail::format_double(model.q1) << '\n';
    out << "q2 " << detail::format_double(model.q2) << '\n';
    out << "linear_column " << (report.psi_linear_column ? 1 : 0) << '\n';
    out << "fit_range " << detail::format_double(model.fit_lo) << ' '
        << detail::format_double(model.fit_hi) << '\n';
    out << "report residual_rms " << detail::format_double(report.residual_rms) << " rank "
        << report.rank_used << " columns " << report.columns << " condition "
        << detail::format_double(report.condition_estimate) << '\n';
    out << "terms " << model.gaps.size() << '\n';
    for (std::size_t i = 0; i < model.gaps.size(); ++i)
        out << "psi " << detail::format_double(model.gaps[i]) << ' '
            << detail::format_double(model.kappa[i]) << '\n';
    out << "end\n";
    if (!out) throw format_error("write failed for '" + path + "'");
}

struct LoadedModel {
    std::variant<ForceModel, PotentialForceModel> model;
    FitReport report;

    bool is_potential() const { return std::holds_alternative<PotentialForceModel>(model); }
    const ForceModel& force() const { return std::get<ForceModel>(model); }
    const PotentialForceModel& potential() const { return std::get<PotentialForceModel>(model); }
};

namespace detail {

struct LineReader {
    const std::vector<std::string>& lines;
    std::size_t next = 0;
    const std::string& path;

    std::string take(const char* what) {
        while (next < lines.size()) {
            const std::string line = trim(lines[next++]);
            if (!line.empty()) return line;
        }
        throw format_error(path + ": truncated model file (missing " + what + ")");
    }
};

inline std::vector<std::string> words(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
}

inline double model_num(const std::string& path, const std::string& tok) {
    const auto v = parse_double(tok);
    if (!v) throw format_error(path + ": unparsable number '" + tok + "'");
    return *v;
}

inline FitReport parse_report_line(const std::string& path, const std::string& line) {
    const std::vector<std::string> w = words(line);
    if (w.size() != 9 || w[0] != "report" || w[1] != "residual_rms" || w[3] != "rank" ||
        w[5] != "columns" || w[7] != "condition")
        throw format_error(path + ": malformed report line");
    FitReport rep;
    rep.residual_rms = model_num(path, w[2]);
    rep.rank_used = static_cast<int>(parse_int(w[4]).value_or(0));
    rep.columns = static_cast<int>(parse_int(w[6]).value_or(0));
    rep.condition_estimate = model_num(path, w[8]);
    return rep;
}

} // namespace detail

inline LoadedModel load_model(const std::string& path) {
    const std::vector<std::string> lines = detail::read_lines(path);
    detail::LineReader reader{lines, 0, path};

    if (reader.take("format line") != kModelFormatLine)
        throw format_error(path + ": not a hingefit model file or unsupported version "
                           "(expected '" + std::string(kModelFormatLine) + "')");

    const std::vector<std::string> kind_words = detail::words(reader.take("kind"));
    if (kind_words.size() != 2 || kind_words[0] != "kind")
        throw format_error(path + ": expected 'kind force|potential'");

    LoadedModel loaded;
    if (kind_words[1] == "force") {
        ForceModel model;
        {
            const auto w = detail::words(reader.take("normalized_by_mass"));
            if (w.size() != 2 || w[0] != "normalized_by_mass")
                throw format_error(path + ": expected normalized_by_mass line");
            model.normalized_by_mass = w[1] != "0";
        }
        {
            const auto w = detail::words(reader.take("fit_range"));
            if (w.size() != 3 || w[0] != "fit_range")
                throw format_error(path + ": expected fit_range line");
            model.fit_lo = detail::model_num(path, w[1]);
            model.fit_hi = detail::model_num(path, w[2]);
        }
        loaded.report = detail::parse_report_line(path, reader.take("report"));
        const auto terms_words = detail::words(reader.take("terms"));
        if (terms_words.size() != 2 || terms_words[0] != "terms")
            throw format_error(path + ": expected terms line");
        const long long n_terms = detail::parse_int(terms_words[1]).value_or(-1);
        if (n_terms < 0) throw format_error(path + ": bad term count");
        for (long long i = 0; i < n_terms; ++i) {
            const auto w = detail::words(reader.take("basis term"));
            if (w.empty()) throw format_error(path + ": empty term line");
            BasisSpec spec;
            std::size_t kappa_idx = 2;
            if (w[0] == "min_hinge") {
                spec.kind = BasisKind::MinHinge;
            } else if (w[0] == "max_hinge") {
                spec.kind = BasisKind::MaxHinge;
            } else if (w[0] == "psi") {
                spec.kind = BasisKind::PotentialPsi;
            } else if (w[0] == "constant") {
                spec.kind = BasisKind::Constant;
                kappa_idx = 1;
            } else if (w[0] == "linear") {
                spec.kind = BasisKind::Linear;
                kappa_idx = 1;
            } else {
                throw format_error(path + ": unknown basis kind '" + w[0] + "'");
            }
            if (w.size() != kappa_idx + 1)
                throw format_error(path + ": malformed term line '" + w[0] + "'");
            if (kappa_idx == 2) spec.gap = detail::model_num(path, w[1]);
            model.specs.push_back(spec);
            model.kappa.push_back(detail::model_num(path, w[kappa_idx]));
        }
        if (reader.take("end") != "end")
            throw format_error(path + ": truncated model file (missing end)");
        try {
            model.validate();
        } catch (const std::invalid_argument& e) {
            throw format_error(path + ": " + e.what());
        }
        loaded.model = std::move(model);
    } else if (kind_words[1] == "potential") {
        PotentialForceModel model;
        const auto q1w = detail::words(reader.take("q1"));
        if (q1w.size() != 2 || q1w[0] != "q1") throw format_error(path + ": expected q1 line");
        model.q1 = detail::model_num(path, q1w[1]);
        const auto q2w = detail::words(reader.take("q2"));
        if (q2w.size() != 2 || q2w[0] != "q2") throw format_error(path + ": expected q2 line");
        model.q2 = detail::model_num(path, q2w[1]);
        const auto lcw = detail::words(reader.take("linear_column"));
        if (lcw.size() != 2 || lcw[0] != "linear_column")
            throw format_error(path + ": expected linear_column line");
        const auto frw = detail::words(reader.take("fit_range"));
        if (frw.size() != 3 || frw[0] != "fit_range")
            throw format_error(path + ": expected fit_range line");
        model.fit_lo = detail::model_num(path, frw[1]);
        model.fit_hi = detail::model_num(path, frw[2]);
        loaded.report = detail::parse_report_line(path, reader.take("report"));
        loaded.report.psi_linear_column = lcw[1] != "0";
        const auto terms_words = detail::words(reader.take("terms"));
        if (terms_words.size() != 2 || terms_words[0] != "terms")
            throw format_error(path + ": expected terms line");
        const long long n_terms = detail::parse_int(terms_words[1]).value_or(-1);
        if (n_terms < 0) throw format_error(path + ": bad term count");
        for (long long i = 0; i < n_terms; ++i) {
            const auto w = detail::words(reader.take("psi term"));
            if (w.size() != 3 || w[0] != "psi")
                throw format_error(path + ": unknown basis kind '" +
                                   (w.empty() ? std::string("?") : w[0]) +
                                   "' (potential models hold psi terms only)");
            model.gaps.push_back(detail::model_num(path, w[1]));
            model.kappa.push_back(detail::model_num(path, w[2]));
        }
        if (reader.take("end") != "end")
            throw format_error(path + ": truncated model file (missing end)");
        try {
            model.validate();
        } catch (const std::invalid_argument& e) {
            throw format_error(path + ": " + e.what());
        }
        loaded.model = std::move(model);
    } else {
        throw format_error(path + ": unknown model kind '" + kind_words[1] + "'");
    }
    return loaded;
}

} // namespace hingefit
