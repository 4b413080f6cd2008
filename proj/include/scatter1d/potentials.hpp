#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace scatter1d {

// Physical inputs (V0, b, m, hbar) reduced to the dimensionless form used by
// everything else: x = r/b, k^2 = 2 m b^2 E / hbar^2, v0 = 2 m V0 b^2 / hbar^2.
struct DimensionlessParams {
  double V0 = 1.0;   // potential depth scale
  double b = 1.0;    // length scale
  double m = 1.0;    // mass
  double hbar = 1.0;
  double v0 = 2.0;   // 2 m V0 b^2 / hbar^2

  double coordinate(double r) const { return r / b; }
  double momentum_squared(double energy) const {
    return 2.0 * m * b * b * energy / (hbar * hbar);
  }
};

// Throws std::domain_error unless b, m, hbar are all positive and finite.
DimensionlessParams to_dimensionless(double V0, double b, double m, double hbar);

struct PotentialSample {
  double x = 0.0;
  double v = 0.0;
};

// Dimensionless one-dimensional potential.  Three kinds:
//  - reflectionless(ell):  v(x) = -ell(ell+1) sech^2 x
//  - tabulated:            piecewise-cubic (Catmull-Rom) through samples
//  - zero:                 free particle
// Evaluation beyond domain_halfwidth returns the asymptotic value 0, as does
// evaluation outside a tabulated sample range.
class Potential {
 public:
  enum class Kind { reflectionless, tabulated, zero };

  Kind kind() const { return kind_; }
  int ell() const { return ell_; }  // -1 unless reflectionless
  bool symmetric() const { return symmetric_; }
  double domain_halfwidth() const { return halfwidth_; }
  const std::vector<PotentialSample>& samples() const { return samples_; }

  // Throws std::domain_error on non-finite x.
  double operator()(double x) const;
  double evaluate(double x) const { return (*this)(x); }

  friend Potential make_reflectionless(int ell, double domain_halfwidth);
  friend Potential make_zero(double domain_halfwidth);
  friend Potential make_tabulated(std::vector<PotentialSample> samples,
                                  bool symmetric, double domain_halfwidth);

 private:
  Potential() = default;

  Kind kind_ = Kind::zero;
  int ell_ = -1;
  bool symmetric_ = true;
  double halfwidth_ = 20.0;
  std::vector<PotentialSample> samples_;
  std::vector<double> slopes_;  // Catmull-Rom tangents at the sample knots
};

// Throws std::domain_error for ell < 0.
Potential make_reflectionless(int ell, double domain_halfwidth = 20.0);

Potential make_zero(double domain_halfwidth = 20.0);

// Requires at least 4 samples with strictly increasing x and finite values.
// When `symmetric` is claimed, v(x) is audited against v(-x) at the sample
// abscissae (relative tolerance 1e-9).  Throws std::invalid_argument.
Potential make_tabulated(std::vector<PotentialSample> samples, bool symmetric,
                         double domain_halfwidth = 20.0);

struct DecayReport {
  bool passes = false;
  double max_tail = 0.0;  // max of x^2 |v(x)| over the probes
};

// Probes the short-range condition x^2 |v(x)| -> 0: the tail must be
// non-increasing across the probes and below 1e-6 at the last one.
// All probes must lie at x >= 10 (throws std::domain_error otherwise).
DecayReport check_decay_condition(const Potential& p, std::span<const double> probe_xs);

// CSV with header "x,v", one sample per line, strictly increasing x.
// Symmetry of the loaded table is detected automatically.
// Throws IoError if unreadable, std::invalid_argument if malformed.
Potential load_potential_csv(const std::string& path, double domain_halfwidth = 20.0);
Potential parse_potential_csv(std::istream& is, double domain_halfwidth = 20.0);

}  // namespace scatter1d
