#pragma once

#include <cstddef>
#include <vector>

#include "scatter1d/potentials.hpp"
#include "scatter1d/types.hpp"

namespace scatter1d::numeric {

// Knobs for the integration engine. Defaults are tuned so the sech^2
// family at |v| <= 20 is solved to ~1e-8 in amplitudes and energies.
struct SolverConfig {
    double x_max = 20.0;  // half-width of the integration box
    double h = 1e-3;      // grid step
    double match_tol = 1e-9;  // asymptotic self-consistency tolerance
    double energy_tol = 1e-10;             // bisection width for eigenvalues
    double zero_energy_slope_tol = 1e-6;   // threshold-state slope criterion
    int energy_mesh = 400;                 // bracketing mesh for bound states

    void validate() const;  // throws std::invalid_argument

    // Uniform full-line grid hitting both endpoints exactly.
    std::vector<double> make_grid() const;
};

enum class Direction { left_to_right, right_to_left };

// Recorded whenever the growing solution is renormalized mid-march to
// avoid overflow: every sample computed so far was divided by `factor`.
struct RescaleEvent {
    std::size_t index;
    double factor;
};

struct NumerovSolution {
    std::vector<double> x;
    std::vector<double> psi;
    std::vector<RescaleEvent> rescales;
};

// Fourth-order Numerov march for psi'' = (v(x) - energy) psi over the
// full grid. The seed supplies psi at the first two points in travel
// order (leftmost two for left_to_right, rightmost two otherwise).
NumerovSolution numerov_integrate(const Potential& p, double energy,
                                  Direction direction,
                                  const SolverConfig& cfg, double seed_first,
                                  double seed_second);

struct ScatteringResult {
    double k = 0.0;
    ScatteringCoefficients coefficients;  // normalized to unit incident
    double delta = 0.0;                   // phase shift, mod-pi representative
    double reflection_probability = 0.0;
    double transmission_probability = 0.0;
};

// Integrates a complex solution right-to-left from a pure transmitted
// plane wave and decomposes the left asymptote into incident/reflected
// parts; amplitudes are consistency-checked at two extraction points.
ScatteringResult solve_scattering(const Potential& p, double k,
                                  const SolverConfig& cfg = {});

struct ParityPhases {
    double k = 0.0;
    double delta_even = 0.0;
    double delta_odd = 0.0;
};

// Phase shifts of the even and odd half-line solutions of a symmetric
// potential, from matching to a sin(kx + phi) asymptote.
ParityPhases solve_parity_phases(const Potential& p, double k,
                                 const SolverConfig& cfg = {});

enum class ParitySelection { total, even, odd };

struct PhaseShiftCurve {
    std::vector<double> k_samples;
    std::vector<double> delta_samples;  // unwrapped, continuous branch
    double delta_zero_extrapolated = 0.0;
};

// delta(k) over the grid, unwrapped by continuity with the branch anchored
// near zero at the largest k, plus a polynomial extrapolation to k = 0
// from the three smallest samples.
PhaseShiftCurve phase_curve(const Potential& p,
                            const std::vector<double>& k_grid,
                            const SolverConfig& cfg = {},
                            ParitySelection parity = ParitySelection::total);

// n logarithmically spaced points from k_min to k_max inclusive.
std::vector<double> geometric_grid(double k_min, double k_max, int n);

// Shooting search over E in (min v, 0): outward and inward solutions are
// matched by a Wronskian mismatch whose zeros are bracketed on an energy
// mesh and refined by bisection. States come back sorted by energy with
// node counts 0, 1, 2, ...; a gap in that sequence raises ResolutionError.
std::vector<BoundState> find_bound_states(const Potential& p,
                                          const SolverConfig& cfg = {});

struct Criticality {
    bool even_critical = false;
    bool odd_critical = false;
};

// Integrates the E = 0 solution per parity sector and tests whether it
// approaches a constant (bounded half-bound state) or grows linearly.
Criticality classify_zero_energy(const Potential& p,
                                 const SolverConfig& cfg = {});

}  // namespace scatter1d::numeric
