// Hinge and potential basis functions, gap grids, and library matrices.
//
// A hinge basis element is a piecewise linear spring with an initial gap:
// min(0, x - g) engages below the gap, max(0, x - g) above it. The psi/phi
// pair adds a conservative variant whose potential is piecewise quadratic.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hingefit {

inline void require_finite(double v, const char* name) {
    if (!std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be finite");
}

// min(0, x - g): engages (with unit stiffness) below the gap g.
inline double eval_min_hinge(double x, double g) {
    require_finite(x, "x");
    require_finite(g, "g");
    return std::min(0.0, x - g);
}

// max(0, x - g): engages above the gap g. Satisfies
// eval_min_hinge(x, g) == -eval_max_hinge(-x, -g) exactly.
inline double eval_max_hinge(double x, double g) {
    require_finite(x, "x");
    require_finite(g, "g");
    return std::max(0.0, x - g);
}

// psi(x, g) = x + min(0, x+g) + max(0, x-g), g >= 0.
// Piecewise: x on |x| <= g, 2x - g above, 2x + g below.
inline double eval_psi(double x, double g) {
    require_finite(x, "x");
    require_finite(g, "g");
    if (g < 0.0)
        throw std::invalid_argument("eval_psi: gap must be non-negative");
    return x + std::min(0.0, x + g) + std::max(0.0, x - g);
}

// phi(x, g) = x^2/2 + min(0, x+g)^2/2 + max(0, x-g)^2/2, g >= 0.
// Even, non-negative, and d(phi)/dx == eval_psi.
inline double eval_phi(double x, double g) {
    require_finite(x, "x");
    require_finite(g, "g");
    if (g < 0.0)
        throw std::invalid_argument("eval_phi: gap must be non-negative");
    const double lo = std::min(0.0, x + g);
    const double hi = std::max(0.0, x - g);
    return 0.5 * x * x + 0.5 * lo * lo + 0.5 * hi * hi;
}

enum class BasisKind { MinHinge, MaxHinge, Constant, Linear, PotentialPsi };

inline const char* to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::MinHinge: return "min_hinge";
        case BasisKind::MaxHinge: return "max_hinge";
        case BasisKind::Constant: return "constant";
        case BasisKind::Linear: return "linear";
        case BasisKind::PotentialPsi: return "psi";
    }
    return "?";
}

// One column of a regression library. The gap is meaningful for hinge and
// psi kinds only.
struct BasisSpec {
    BasisKind kind = BasisKind::Constant;
    double gap = 0.0;

    static BasisSpec min_hinge(double g) { return {BasisKind::MinHinge, g}; }
    static BasisSpec max_hinge(double g) { return {BasisKind::MaxHinge, g}; }
    static BasisSpec constant() { return {BasisKind::Constant, 0.0}; }
    static BasisSpec linear() { return {BasisKind::Linear, 0.0}; }
    static BasisSpec psi(double g) {
        if (g < 0.0)
            throw std::invalid_argument("BasisSpec::psi: gap must be non-negative");
        return {BasisKind::PotentialPsi, g};
    }

    bool operator==(const BasisSpec&) const = default;
};

inline double eval_basis(const BasisSpec& spec, double x) {
    switch (spec.kind) {
        case BasisKind::MinHinge: return eval_min_hinge(x, spec.gap);
        case BasisKind::MaxHinge: return eval_max_hinge(x, spec.gap);
        case BasisKind::Constant: require_finite(x, "x"); return 1.0;
        case BasisKind::Linear: require_finite(x, "x"); return x;
        case BasisKind::PotentialPsi: return eval_psi(x, spec.gap);
    }
    throw std::invalid_argument("eval_basis: unknown basis kind");
}

// n equally spaced points spanning [lo, hi] inclusive; n == 1 yields the
// midpoint.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {0.5 * (lo + hi)};
    std::vector<double> out(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + static_cast<double>(i) * step;
    out.back() = hi;
    return out;
}

// Gap lists for the min- and max-hinge halves of a library, all inside the
// fitting range [range_lo, range_hi].
struct GapGrid {
    std::vector<double> gaps_min;
    std::vector<double> gaps_max;
    double range_lo = 0.0;
    double range_hi = 0.0;

    GapGrid() = default;

    GapGrid(std::vector<double> mins, std::vector<double> maxs, double lo, double hi)
        : gaps_min(std::move(mins)), gaps_max(std::move(maxs)), range_lo(lo), range_hi(hi) {
        validate();
    }

    std::size_t size() const noexcept { return gaps_min.size() + gaps_max.size(); }

    void validate() const {
        if (!(range_lo < range_hi))
            throw std::invalid_argument("GapGrid: range_lo must be below range_hi");
        if (gaps_min.empty() && gaps_max.empty())
            throw std::invalid_argument("GapGrid: at least one gap required");
        check_sorted_in_range(gaps_min, "gaps_min");
        check_sorted_in_range(gaps_max, "gaps_max");
    }

private:
    void check_sorted_in_range(const std::vector<double>& gaps, const char* name) const {
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            if (!std::isfinite(gaps[i]) || gaps[i] < range_lo || gaps[i] > range_hi)
                throw std::invalid_argument(std::string("GapGrid: ") + name +
                                            " entries must lie in [range_lo, range_hi]");
            if (i > 0 && !(gaps[i - 1] < gaps[i]))
                throw std::invalid_argument(std::string("GapGrid: ") + name +
                                            " must be strictly increasing");
        }
    }
};

// m min-gaps and n max-gaps equally spaced over [x_lo, x_hi], endpoints
// included.
inline GapGrid uniform_gap_grid(double x_lo, double x_hi, std::size_t m, std::size_t n) {
    require_finite(x_lo, "x_lo");
    require_finite(x_hi, "x_hi");
    if (!(x_lo < x_hi))
        throw std::invalid_argument("uniform_gap_grid: degenerate range");
    if (m + n == 0)
        throw std::invalid_argument("uniform_gap_grid: m + n must be at least 1");
    return GapGrid(linspace(x_lo, x_hi, m), linspace(x_lo, x_hi, n), x_lo, x_hi);
}

// Min-hinge columns first, then max-hinge columns, in grid order.
inline std::vector<BasisSpec> hinge_specs(const GapGrid& grid) {
    std::vector<BasisSpec> specs;
    specs.reserve(grid.size());
    for (double g : grid.gaps_min) specs.push_back(BasisSpec::min_hinge(g));
    for (double g : grid.gaps_max) specs.push_back(BasisSpec::max_hinge(g));
    return specs;
}

// Constant column, optional linear column, then one psi column per gap.
inline std::vector<BasisSpec> psi_specs(const std::vector<double>& psi_gaps,
                                        bool include_linear = true) {
    std::vector<BasisSpec> specs;
    specs.reserve(psi_gaps.size() + 2);
    specs.push_back(BasisSpec::constant());
    if (include_linear) specs.push_back(BasisSpec::linear());
    for (double g : psi_gaps) specs.push_back(BasisSpec::psi(g));
    return specs;
}

// Dense regression library: row i, column j holds basis j evaluated at
// sample i.
struct LibraryMatrix {
    Eigen::MatrixXd values;
    std::vector<BasisSpec> specs;

    Eigen::Index rows() const noexcept { return values.rows(); }
    Eigen::Index cols() const noexcept { return values.cols(); }
};

inline LibraryMatrix build_library(const std::vector<double>& samples,
                                   const std::vector<BasisSpec>& specs) {
    if (samples.empty())
        throw std::invalid_argument("build_library: samples must be non-empty");
    if (specs.empty())
        throw std::invalid_argument("build_library: specs must be non-empty");
    LibraryMatrix lib;
    lib.specs = specs;
    lib.values.resize(static_cast<Eigen::Index>(samples.size()),
                      static_cast<Eigen::Index>(specs.size()));
    for (std::size_t j = 0; j < specs.size(); ++j)
        for (std::size_t i = 0; i < samples.size(); ++i)
            lib.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                eval_basis(specs[j], samples[i]);
    return lib;
}

} // namespace hingefit
