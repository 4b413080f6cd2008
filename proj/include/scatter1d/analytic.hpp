#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "scatter1d/types.hpp"

namespace scatter1d::analytic {

// Closed-form wave for the sech^2 family. Every state we need (bound,
// half-bound, scattering) can be written as
//
//     psi(x) = c(tanh x) * sech(x)^p * exp(i k x)
//
// with c a complex polynomial. This class stores (c, p, k) and is closed
// under the first-order ladder operators
//
//     raise_j = -i d/dx + i j tanh x,      lower_j = -i d/dx - i j tanh x,
//
// so repeated applications stay exact: no quadrature, no finite differences.
// Derivatives are available in closed form for the same reason.
class HyperbolicWave {
public:
    // poly holds c in ascending powers of t = tanh x.
    HyperbolicWave(std::vector<std::complex<double>> poly, int sech_power,
                   double momentum);

    // Plane wave exp(i k x).
    static HyperbolicWave plane(double k);
    // sech(x)^p, p >= 1.
    static HyperbolicWave sech_power_wave(int p);
    // tanh(x)^p, p >= 0.
    static HyperbolicWave tanh_power_wave(int p);

    std::complex<double> value(double x) const;
    std::complex<double> derivative(double x) const;

    // Apply raise_j / lower_j; the result is again a HyperbolicWave.
    HyperbolicWave raised(int j) const;
    HyperbolicWave lowered(int j) const;

    // True when the stored polynomial is identically zero (the wave was
    // annihilated by a ladder operator).
    bool is_zero() const;

    const std::vector<std::complex<double>>& poly() const { return poly_; }
    int sech_power() const { return sech_power_; }
    double momentum() const { return momentum_; }

    // Evaluate on a grid, exporting the closed-form derivative as well.
    GridFunction sample(const std::vector<double>& xs) const;

private:
    std::vector<std::complex<double>> poly_;
    int sech_power_ = 0;
    double momentum_ = 0.0;
};

// Ladder operators acting on sampled data. When `f` carries a derivative
// closure it is used directly; otherwise the derivative is taken by
// fourth-order finite differences, which requires a uniform grid of at
// least 5 points with step <= 0.05 (ResolutionError otherwise).
GridFunction apply_raising(const GridFunction& f, int index);
GridFunction apply_lowering(const GridFunction& f, int index);

// Scattering state of the depth-ell sech^2 well at momentum k > 0, built
// by the ladder chain raise_ell ... raise_1 acting on exp(i k x). Incident
// amplitude is prod_j (k - i j): use coefficients() to normalise.
HyperbolicWave scattering_wave(int ell, double k);
GridFunction scattering_wavefunction(int ell, double k,
                                     const std::vector<double>& xs);

// Asymptotic amplitudes of scattering_wave: incident I = prod (k - i j),
// transmitted T = prod (k + i j), reflected R = 0 identically.
ScatteringCoefficients coefficients(int ell, double k);

// Transmission phase shift delta(k) = sum_{j=1..ell} atan(j / k), k > 0,
// and its zero-momentum limit ell * pi / 2.
double phase_shift(int ell, double k);
double phase_shift_zero(int ell);

// Lowest bound state of the depth-ell well: energy -ell^2, proportional to
// sech^ell. Empty for ell = 0 (no binding). Wavefunctions are sampled on
// `grid`, unit-normalised by the trapezoid rule, and phase-fixed so the
// first positive-x maximum of |psi| is real and positive.
std::optional<BoundState> ground_state(int ell,
                                       const ReportingGrid& grid = {});

// All ell bound states, ordered by increasing energy -(ell-n)^2 for
// n = 0..ell-1. Level n is produced by the ladder chain
// raise_ell ... raise_{ell-n+1} applied to the ground state of the
// depth-(ell-n) well; it has parity (-1)^n and exactly n nodes.
std::vector<BoundState> bound_spectrum(int ell,
                                       const ReportingGrid& grid = {});

// Zero-energy threshold state tanh^ell: bounded but not normalisable,
// parity (-1)^ell, tends to 1 as x -> +inf.
HalfBoundState half_bound_state(int ell, const ReportingGrid& grid = {});

// Bound-state counts per parity plus the parity of the threshold state
// (the "critical" sector).
BoundStateCensus census(int ell);

}  // namespace scatter1d::analytic
