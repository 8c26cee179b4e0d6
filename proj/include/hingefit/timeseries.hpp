// Uniformly sampled scalar channel.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hingefit {

class TimeSeries {
public:
    TimeSeries() = default;

    TimeSeries(double t0, double dt, std::vector<double> values,
               std::string label = "x", std::string units = "")
        : t0_(t0), dt_(dt), values_(std::move(values)),
          label_(std::move(label)), units_(std::move(units)) {
        if (dt_ <= 0.0)
            throw std::invalid_argument("TimeSeries: dt must be positive");
        if (values_.empty())
            throw std::invalid_argument("TimeSeries: values must be non-empty");
    }

    double t0() const noexcept { return t0_; }
    double dt() const noexcept { return dt_; }
    std::size_t size() const noexcept { return values_.size(); }
    double time_at(std::size_t i) const noexcept { return t0_ + static_cast<double>(i) * dt_; }
    double duration() const noexcept { return static_cast<double>(values_.size() - 1) * dt_; }

    const std::vector<double>& values() const noexcept { return values_; }
    std::vector<double>& values() noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double& operator[](std::size_t i) noexcept { return values_[i]; }

    const std::string& label() const noexcept { return label_; }
    const std::string& units() const noexcept { return units_; }
    void set_label(std::string label) { label_ = std::move(label); }
    void set_units(std::string units) { units_ = std::move(units); }

    // True when both series live on the same time grid (within rel_tol on dt
    // and t0) and have equal length.
    bool same_grid(const TimeSeries& other, double rel_tol = 1e-9) const noexcept {
        if (values_.size() != other.values_.size()) return false;
        const double scale = dt_ > other.dt_ ? dt_ : other.dt_;
        if (std::abs(dt_ - other.dt_) > rel_tol * scale) return false;
        return std::abs(t0_ - other.t0_) <= rel_tol * (std::abs(t0_) + scale);
    }

    // Time-contiguous sub-series [begin, begin+count).
    TimeSeries slice(std::size_t begin, std::size_t count) const {
        if (begin + count > values_.size() || count == 0)
            throw std::invalid_argument("TimeSeries::slice: range out of bounds");
        std::vector<double> v(values_.begin() + static_cast<std::ptrdiff_t>(begin),
                              values_.begin() + static_cast<std::ptrdiff_t>(begin + count));
        return TimeSeries(time_at(begin), dt_, std::move(v), label_, units_);
    }

private:
    double t0_ = 0.0;
    double dt_ = 1.0;
    std::vector<double> values_;
    std::string label_ = "x";
    std::string units_;
};

} // namespace hingefit
