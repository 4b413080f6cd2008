#include "scatter1d/potentials.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "scatter1d/errors.hpp"

namespace scatter1d {

namespace {

// sech^2 without overflow for large |x|.
double sech_squared(double x) {
  const double e = std::exp(-std::abs(x));
  const double s = 2.0 * e / (1.0 + e * e);
  return s * s;
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(what) + " must be finite");
}

}  // namespace

DimensionlessParams to_dimensionless(double V0, double b, double m, double hbar) {
  require_finite(V0, "V0");
  require_finite(b, "b");
  require_finite(m, "m");
  require_finite(hbar, "hbar");
  if (b <= 0.0 || m <= 0.0 || hbar <= 0.0)
    throw std::domain_error("b, m, hbar must be positive");
  DimensionlessParams p;
  p.V0 = V0;
  p.b = b;
  p.m = m;
  p.hbar = hbar;
  p.v0 = 2.0 * m * V0 * b * b / (hbar * hbar);
  return p;
}

double Potential::operator()(double x) const {
  require_finite(x, "x");
  if (std::abs(x) > halfwidth_) return 0.0;
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::reflectionless:
      return -static_cast<double>(ell_) * (ell_ + 1) * sech_squared(x);
    case Kind::tabulated:
      break;
  }
  if (x < samples_.front().x || x > samples_.back().x) return 0.0;
  // locate the knot interval, then cubic Hermite with the precomputed tangents
  auto it = std::upper_bound(samples_.begin(), samples_.end(), x,
                             [](double a, const PotentialSample& s) { return a < s.x; });
  std::size_t i = (it == samples_.begin()) ? 0 : static_cast<std::size_t>(it - samples_.begin()) - 1;
  if (i >= samples_.size() - 1) i = samples_.size() - 2;
  const double x0 = samples_[i].x, x1 = samples_[i + 1].x;
  const double y0 = samples_[i].v, y1 = samples_[i + 1].v;
  const double hw = x1 - x0;
  const double t = (x - x0) / hw;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y0 + h10 * hw * slopes_[i] + h01 * y1 + h11 * hw * slopes_[i + 1];
}

Potential make_reflectionless(int ell, double domain_halfwidth) {
  if (ell < 0) throw std::domain_error("reflectionless family index must be >= 0");
  require_finite(domain_halfwidth, "domain_halfwidth");
  if (domain_halfwidth <= 0.0) throw std::domain_error("domain_halfwidth must be positive");
  Potential p;
  p.kind_ = Potential::Kind::reflectionless;
  p.ell_ = ell;
  p.symmetric_ = true;
  p.halfwidth_ = domain_halfwidth;
  return p;
}

Potential make_zero(double domain_halfwidth) {
  require_finite(domain_halfwidth, "domain_halfwidth");
  if (domain_halfwidth <= 0.0) throw std::domain_error("domain_halfwidth must be positive");
  Potential p;
  p.kind_ = Potential::Kind::zero;
  p.symmetric_ = true;
  p.halfwidth_ = domain_halfwidth;
  return p;
}

Potential make_tabulated(std::vector<PotentialSample> samples, bool symmetric,
                         double domain_halfwidth) {
  if (samples.size() < 4)
    throw std::invalid_argument("tabulated potential needs at least 4 samples");
  require_finite(domain_halfwidth, "domain_halfwidth");
  if (domain_halfwidth <= 0.0) throw std::domain_error("domain_halfwidth must be positive");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].x) || !std::isfinite(samples[i].v))
      throw std::invalid_argument("tabulated sample values must be finite");
    if (i > 0 && samples[i].x <= samples[i - 1].x)
      throw std::invalid_argument("tabulated sample abscissae must be strictly increasing");
  }

  Potential p;
  p.kind_ = Potential::Kind::tabulated;
  p.symmetric_ = symmetric;
  p.halfwidth_ = domain_halfwidth;
  p.samples_ = std::move(samples);

  const std::size_t n = p.samples_.size();
  p.slopes_.resize(n);
  p.slopes_[0] = (p.samples_[1].v - p.samples_[0].v) / (p.samples_[1].x - p.samples_[0].x);
  p.slopes_[n - 1] = (p.samples_[n - 1].v - p.samples_[n - 2].v) /
                     (p.samples_[n - 1].x - p.samples_[n - 2].x);
  for (std::size_t i = 1; i + 1 < n; ++i)
    p.slopes_[i] = (p.samples_[i + 1].v - p.samples_[i - 1].v) /
                   (p.samples_[i + 1].x - p.samples_[i - 1].x);

  if (symmetric) {
    for (const auto& s : p.samples_) {
      const double mirrored = p(-s.x);
      const double tol = 1e-9 * std::max(1.0, std::abs(s.v));
      if (std::abs(s.v - mirrored) > tol)
        throw std::invalid_argument("table claimed symmetric but v(x) != v(-x) at x = " +
                                    std::to_string(s.x));
    }
  }
  return p;
}

DecayReport check_decay_condition(const Potential& p, std::span<const double> probe_xs) {
  if (probe_xs.empty()) throw std::domain_error("decay check needs at least one probe");
  std::vector<double> xs(probe_xs.begin(), probe_xs.end());
  std::sort(xs.begin(), xs.end());
  if (xs.front() < 10.0)
    throw std::domain_error("decay probes must lie at x >= 10");

  DecayReport report;
  report.passes = true;
  double prev = std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (double x : xs) {
    const double tail = x * x * std::abs(p(x));
    report.max_tail = std::max(report.max_tail, tail);
    if (tail > prev * (1.0 + 1e-12) + 1e-300) report.passes = false;
    prev = tail;
    last = tail;
  }
  if (!(last < 1e-6)) report.passes = false;
  return report;
}

namespace {

double parse_double(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("potential CSV line " + std::to_string(line_no) +
                                ": cannot parse number '" + std::string(token) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Potential parse_potential_csv(std::istream& is, double domain_halfwidth) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(is, line)) throw std::invalid_argument("potential CSV is empty");
  ++line_no;
  if (trim(line) != "x,v")
    throw std::invalid_argument("potential CSV must start with header 'x,v'");

  std::vector<PotentialSample> samples;
  while (std::getline(is, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    const auto comma = sv.find(',');
    if (comma == std::string_view::npos)
      throw std::invalid_argument("potential CSV line " + std::to_string(line_no) +
                                  ": expected 'x,v'");
    PotentialSample s;
    s.x = parse_double(trim(sv.substr(0, comma)), line_no);
    s.v = parse_double(trim(sv.substr(comma + 1)), line_no);
    samples.push_back(s);
  }

  // claim symmetry only if the table supports it
  Potential probe = make_tabulated(std::move(samples), false, domain_halfwidth);
  bool symmetric = true;
  for (const auto& s : probe.samples()) {
    if (std::abs(s.v - probe(-s.x)) > 1e-9 * std::max(1.0, std::abs(s.v))) {
      symmetric = false;
      break;
    }
  }
  if (!symmetric) return probe;
  return make_tabulated(probe.samples(), true, domain_halfwidth);
}

Potential load_potential_csv(const std::string& path, double domain_halfwidth) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open potential file: " + path);
  return parse_potential_csv(in, domain_halfwidth);
}

}  // namespace scatter1d
