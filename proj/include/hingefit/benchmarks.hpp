// Built-in synthetic benchmark systems used by the CLI synth command and the
// verification suites: a hardening Duffing oscillator, a piecewise linear
// gap-spring oscillator, and a softening psi-spring surrogate of a
// magnetically loaded bistable plate.
#pragma once

#include "hingefit/dynamics.hpp"
#include "hingefit/regress.hpp"

namespace hingefit::benchmarks {

// m x'' + c x' + p1 x + p2 x^3 = 0 with m=1, c=0.1, p1=1, p2=10.
inline constexpr double kDuffingP2 = 10.0;
inline constexpr double kDuffingX0 = -4.0;

inline OscillatorModel duffing() {
    OscillatorModel model;
    model.m = 1.0;
    model.c = 0.1;
    model.k = 1.0;
    model.nonlinearity = CubicStiffness{kDuffingP2};
    return model;
}

// m x'' + c x' + k x + p2 max(0, x - L) = F sin(2 pi f_e t) with m=1, c=0.1,
// k=1, p2=10, L=0.5.
inline constexpr double kPwlP2 = 10.0;
inline constexpr double kPwlGap = 0.5;
inline constexpr double kPwlX0 = -2.0;

inline OscillatorModel pwl() {
    OscillatorModel model;
    model.m = 1.0;
    model.c = 0.1;
    model.k = 1.0;
    model.nonlinearity = GapSpring{kPwlP2, kPwlGap};
    return model;
}

// Softening surrogate of the magnet-loaded plate: three psi springs with
// negative per-mass coefficients under zeta = 0.0054, omega_n = 65.2 rad/s.
// The effective stiffness drops from omega_n^2 + sum(kappa) near the origin
// to omega_n^2 + 2 sum(kappa) beyond the largest gap, which stays positive.
inline constexpr double kSurrogateZeta = 0.0054;
inline constexpr double kSurrogateOmegaN = 65.2;
inline constexpr double kSurrogateX0 = 0.012;

inline PotentialForceModel surrogate_psi_model() {
    PotentialForceModel model;
    model.q1 = 0.0;
    model.q2 = 0.0;
    model.gaps = {0.003, 0.008, 0.02};
    model.kappa = {-700.0, -600.0, -500.0};
    model.fit_lo = -0.02;
    model.fit_hi = 0.02;
    return model;
}

inline OscillatorModel surrogate_oscillator() {
    OscillatorModel model;
    model.m = 1.0;
    model.k = kSurrogateOmegaN * kSurrogateOmegaN;
    model.c = 2.0 * kSurrogateZeta * kSurrogateOmegaN;
    model.nonlinearity = FittedPotentialForce{surrogate_psi_model()};
    return model;
}

} // namespace hingefit::benchmarks
