// Linear least-squares identification of restoring forces on hinge and
// potential-constrained bases.
//
// Sign conventions. Direct and indirect fits return models that approximate
// the nonlinear force f(x) appearing on the stiffness side of
// m x'' + c x' + k x + f(x) = 0 (per unit mass for indirect fits).
// Potential-constrained fits return f_t(x) = -dV_t/dx, the force that
// appears on the right-hand side of x'' + 2 zeta w x' + w^2 x = f_t(x).
#pragma once

#include "hingefit/basis.hpp"
#include "hingefit/timeseries.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hingefit {

struct FitReport {
    double residual_rms = 0.0;
    int rank_used = 0;
    int columns = 0;
    double condition_estimate = 0.0;
    // Set by fit_potential_constrained: whether the linear column was part
    // of the regression library.
    bool psi_linear_column = false;

    bool rank_deficient() const noexcept { return rank_used < columns; }
};

// Relative singular-value cutoff for the pseudo-inverse.
inline constexpr double kRankTolerance = 1e-10;

// Minimum-norm least-squares solution of A x ~= b through a singular value
// decomposition. Directions with singular value below rtol * sigma_max are
// discarded. An all-zero matrix yields zero coefficients and the full
// residual.
inline std::pair<Eigen::VectorXd, FitReport>
solve_min_norm_ls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  double rtol = kRankTolerance) {
    if (A.rows() != b.size())
        throw std::invalid_argument("solve_min_norm_ls: row count must match rhs length");
    if (A.rows() < 1)
        throw std::invalid_argument("solve_min_norm_ls: empty system");

    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;

    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rtol * sigma_max && sv(i) > 0.0) ++rank;

    Eigen::VectorXd x = Eigen::VectorXd::Zero(A.cols());
    if (rank > 0) {
        Eigen::VectorXd proj = svd.matrixU().leftCols(rank).transpose() * b;
        for (Eigen::Index i = 0; i < rank; ++i) proj(i) /= sv(i);
        x = svd.matrixV().leftCols(rank) * proj;
    }

    FitReport report;
    report.residual_rms =
        std::sqrt((A * x - b).squaredNorm() / static_cast<double>(A.rows()));
    report.rank_used = static_cast<int>(rank);
    report.columns = static_cast<int>(A.cols());
    report.condition_estimate = rank > 0 ? sigma_max / sv(rank - 1) : 0.0;
    return {std::move(x), report};
}

inline std::pair<Eigen::VectorXd, FitReport>
solve_min_norm_ls(const LibraryMatrix& library, const Eigen::VectorXd& rhs,
                  double rtol = kRankTolerance) {
    return solve_min_norm_ls(library.values, rhs, rtol);
}

// A fitted coefficient vector bound to its basis set, evaluable as a scalar
// force of displacement. Coefficients are stiffnesses, or stiffness per unit
// mass when normalized_by_mass is set.
struct ForceModel {
    std::vector<BasisSpec> specs;
    std::vector<double> kappa;
    bool normalized_by_mass = false;
    double fit_lo = 0.0;
    double fit_hi = 0.0;

    void validate() const {
        if (specs.size() != kappa.size())
            throw std::invalid_argument("ForceModel: specs and kappa lengths differ");
    }

    // Dot product of kappa with the basis evaluations, in column order.
    double eval(double x) const {
        require_finite(x, "x");
        if (specs.size() != kappa.size())
            throw std::invalid_argument("ForceModel: specs and kappa lengths differ");
        double acc = 0.0;
        const std::size_t n = specs.size();
        std::size_t i = 0;
        while (i < n) {
            const BasisKind kind = specs[i].kind;
            std::size_t j = i;
            while (j < n && specs[j].kind == kind) ++j;
            switch (kind) {
                case BasisKind::MinHinge:
                    for (; i < j; ++i) acc += kappa[i] * std::min(0.0, x - specs[i].gap);
                    break;
                case BasisKind::MaxHinge:
                    for (; i < j; ++i) acc += kappa[i] * std::max(0.0, x - specs[i].gap);
                    break;
                case BasisKind::Constant:
                    for (; i < j; ++i) acc += kappa[i];
                    break;
                case BasisKind::Linear:
                    for (; i < j; ++i) acc += kappa[i] * x;
                    break;
                case BasisKind::PotentialPsi:
                    for (; i < j; ++i)
                        acc += kappa[i] *
                               (x + std::min(0.0, x + specs[i].gap) +
                                std::max(0.0, x - specs[i].gap));
                    break;
            }
        }
        return acc;
    }
};

// Conservative force model: f_t(x) = -dV_t/dx with
// V_t(x) = q1 x + q2 x^2/2 + sum_i kappa_i phi(x, g_i). All coefficients are
// per unit mass.
struct PotentialForceModel {
    double q1 = 0.0;
    double q2 = 0.0;
    std::vector<double> kappa;
    std::vector<double> gaps;
    double fit_lo = 0.0;
    double fit_hi = 0.0;

    void validate() const {
        if (kappa.size() != gaps.size())
            throw std::invalid_argument("PotentialForceModel: kappa and gaps lengths differ");
        for (double g : gaps)
            if (!(g >= 0.0))
                throw std::invalid_argument("PotentialForceModel: gaps must be non-negative");
    }

    double potential(double x) const {
        require_finite(x, "x");
        double acc = q1 * x + 0.5 * q2 * x * x;
        for (std::size_t i = 0; i < kappa.size(); ++i)
            acc += kappa[i] * eval_phi(x, gaps[i]);
        return acc;
    }

    // f_t(x) = -q1 - q2 x - sum_i kappa_i psi(x, g_i)
    double force(double x) const {
        require_finite(x, "x");
        double acc = -q1 - q2 * x;
        for (std::size_t i = 0; i < kappa.size(); ++i)
            acc -= kappa[i] *
                   (x + std::min(0.0, x + gaps[i]) + std::max(0.0, x - gaps[i]));
        return acc;
    }
};

// Direct method: least-squares fit of hinge coefficients to sampled force
// values over the gap grid. Samples must be sorted ascending; the fit range
// is [samples.front(), samples.back()].
inline std::pair<ForceModel, FitReport>
fit_direct(const std::vector<double>& samples, const std::vector<double>& forces,
           const GapGrid& grid) {
    if (samples.size() != forces.size())
        throw std::invalid_argument("fit_direct: samples and forces lengths differ");
    if (samples.empty())
        throw std::invalid_argument("fit_direct: samples must be non-empty");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i] < samples[i - 1])
            throw std::invalid_argument("fit_direct: samples must be sorted ascending");
    grid.validate();

    const std::vector<BasisSpec> specs = hinge_specs(grid);
    const LibraryMatrix library = build_library(samples, specs);
    const Eigen::VectorXd rhs =
        Eigen::Map<const Eigen::VectorXd>(forces.data(), static_cast<Eigen::Index>(forces.size()));
    auto [kappa, report] = solve_min_norm_ls(library, rhs);

    ForceModel model;
    model.specs = specs;
    model.kappa.assign(kappa.data(), kappa.data() + kappa.size());
    model.normalized_by_mass = false;
    model.fit_lo = samples.front();
    model.fit_hi = samples.back();
    return {std::move(model), report};
}

namespace detail {

inline void check_triple(const TimeSeries& x, const TimeSeries& v, const TimeSeries& a) {
    if (!x.same_grid(v) || !x.same_grid(a))
        throw std::invalid_argument("x, v, a series must share one time grid");
}

// a_lin = a + 2 zeta w v + w^2 x, the linear portion of the equation of
// motion evaluated along the measured response.
inline Eigen::VectorXd linear_residual(const TimeSeries& x, const TimeSeries& v,
                                       const TimeSeries& a, double zeta, double omega_n) {
    const Eigen::Index n = static_cast<Eigen::Index>(x.size());
    Eigen::VectorXd out(n);
    const double two_zw = 2.0 * zeta * omega_n;
    const double w2 = omega_n * omega_n;
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        out(i) = a[k] + two_zw * v[k] + w2 * x[k];
    }
    return out;
}

} // namespace detail

// Indirect method: identifies the per-mass nonlinear force from measured
// displacement, velocity, and acceleration given the linear parameters.
inline std::pair<ForceModel, FitReport>
fit_indirect(const TimeSeries& x, const TimeSeries& v, const TimeSeries& a,
             double zeta, double omega_n, const GapGrid& grid) {
    detail::check_triple(x, v, a);
    if (zeta < 0.0)
        throw std::invalid_argument("fit_indirect: zeta must be non-negative");
    if (!(omega_n > 0.0))
        throw std::invalid_argument("fit_indirect: omega_n must be positive");
    grid.validate();

    const std::vector<BasisSpec> specs = hinge_specs(grid);
    const LibraryMatrix library = build_library(x.values(), specs);
    const Eigen::VectorXd rhs = -detail::linear_residual(x, v, a, zeta, omega_n);
    auto [kappa, report] = solve_min_norm_ls(library, rhs);

    ForceModel model;
    model.specs = specs;
    model.kappa.assign(kappa.data(), kappa.data() + kappa.size());
    model.normalized_by_mass = true;
    const auto [lo, hi] = std::minmax_element(x.values().begin(), x.values().end());
    model.fit_lo = *lo;
    model.fit_hi = *hi;
    return {std::move(model), report};
}

// Potential-constrained method: regresses a_lin onto a constant column, an
// optional linear column, and psi columns, so the identified force is the
// negative gradient of an explicit potential.
inline std::pair<PotentialForceModel, FitReport>
fit_potential_constrained(const TimeSeries& x, const TimeSeries& v, const TimeSeries& a,
                          double zeta, double omega_n, const std::vector<double>& psi_gaps,
                          bool include_linear = true) {
    detail::check_triple(x, v, a);
    if (zeta < 0.0)
        throw std::invalid_argument("fit_potential_constrained: zeta must be non-negative");
    if (!(omega_n > 0.0))
        throw std::invalid_argument("fit_potential_constrained: omega_n must be positive");
    if (psi_gaps.empty())
        throw std::invalid_argument("fit_potential_constrained: psi_gaps must be non-empty");
    for (double g : psi_gaps)
        if (!(g >= 0.0))
            throw std::invalid_argument("fit_potential_constrained: psi gaps must be non-negative");

    const std::vector<BasisSpec> specs = psi_specs(psi_gaps, include_linear);
    const LibraryMatrix library = build_library(x.values(), specs);
    const Eigen::VectorXd rhs = detail::linear_residual(x, v, a, zeta, omega_n);
    auto [coeffs, report] = solve_min_norm_ls(library, rhs);
    report.psi_linear_column = include_linear;

    // The regression produces f_t(x) = c0 + c1 x + sum c_i psi(x, g_i);
    // V_t coefficients flip sign since f_t = -dV_t/dx.
    PotentialForceModel model;
    Eigen::Index idx = 0;
    model.q1 = -coeffs(idx++);
    model.q2 = include_linear ? -coeffs(idx++) : 0.0;
    model.kappa.resize(psi_gaps.size());
    for (std::size_t i = 0; i < psi_gaps.size(); ++i)
        model.kappa[i] = -coeffs(idx + static_cast<Eigen::Index>(i));
    model.gaps = psi_gaps;
    const auto [lo, hi] = std::minmax_element(x.values().begin(), x.values().end());
    model.fit_lo = *lo;
    model.fit_hi = *hi;
    return {std::move(model), report};
}

} // namespace hingefit
