#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace scatter1d {

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

inline Parity parity_of_index(int n) { return n % 2 == 0 ? Parity::even : Parity::odd; }

// Complex-valued function sampled on an increasing grid.  When `derivative`
// is set it evaluates the exact derivative at arbitrary x; consumers fall
// back to finite differences otherwise.
struct GridFunction {
  std::vector<double> x;
  std::vector<std::complex<double>> values;
  std::function<std::complex<double>(double)> derivative;
};

// Asymptotic decomposition  psi -> incident e^{ikx} + reflected e^{-ikx}
// on the left and transmitted e^{ikx} on the right.  Only ratios of the
// three amplitudes are physical.
struct ScatteringCoefficients {
  double k = 0.0;
  std::complex<double> incident{1.0, 0.0};
  std::complex<double> reflected{0.0, 0.0};
  std::complex<double> transmitted{1.0, 0.0};

  std::complex<double> reflection_ratio() const { return reflected / incident; }
  std::complex<double> transmission_ratio() const { return transmitted / incident; }
};

struct BoundState {
  std::optional<int> ell;  // potential family index, when known
  int n = 0;               // excitation index; equals the node count
  double energy = 0.0;     // dimensionless, negative
  Parity parity = Parity::even;
  int node_count = 0;
  GridFunction wavefunction;  // L2-normalized on its grid, real up to rounding
};

// Bounded, non-normalizable zero-energy solution.
struct HalfBoundState {
  int ell = 0;
  Parity parity = Parity::even;
  GridFunction wavefunction;  // normalized to approach 1 as x -> +inf (ell >= 1)
};

struct BoundStateCensus {
  int n_total = 0;
  int n_even = 0;
  int n_odd = 0;
  bool critical_even = false;  // bounded zero-energy solution, even sector
  bool critical_odd = false;
};

// Uniform grid used when sampling wavefunctions for reporting.
struct ReportingGrid {
  double x_max = 20.0;
  double step = 0.01;

  std::vector<double> make_points() const {
    auto n = static_cast<std::size_t>(std::llround(2.0 * x_max / step));
    std::vector<double> xs(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
      xs[i] = -x_max + 2.0 * x_max * static_cast<double>(i) / static_cast<double>(n);
    return xs;
  }
};

}  // namespace scatter1d
