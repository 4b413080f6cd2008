#include "scatter1d/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "scatter1d/errors.hpp"

namespace scatter1d::analytic {

namespace {

using cplx = std::complex<double>;
using poly_t = std::vector<cplx>;  // ascending powers of t = tanh x

void trim(poly_t& p) {
    while (p.size() > 1 && p.back() == cplx{0.0, 0.0}) p.pop_back();
}

poly_t poly_derivative(const poly_t& p) {
    if (p.size() <= 1) return {cplx{0.0, 0.0}};
    poly_t d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i)
        d[i - 1] = static_cast<double>(i) * p[i];
    return d;
}

poly_t shift_up(const poly_t& p) {  // multiply by t
    poly_t r(p.size() + 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < p.size(); ++i) r[i + 1] = p[i];
    return r;
}

void add_scaled(poly_t& acc, const poly_t& p, cplx s) {
    if (acc.size() < p.size()) acc.resize(p.size(), cplx{0.0, 0.0});
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] += s * p[i];
}

cplx horner(const poly_t& p, double t) {
    cplx v{0.0, 0.0};
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * t + *it;
    return v;
}

double sech(double x) {
    // 2 e^{-|x|} / (1 + e^{-2|x|}): no overflow for any finite x.
    double e = std::exp(-std::abs(x));
    return 2.0 * e / (1.0 + e * e);
}

// The x-derivative of c(t) s^p e^{ikx} is [q(t) + i k c(t)] s^p e^{ikx}
// with q(t) = c'(t)(1 - t^2) - p t c(t); dt/dx = s^2, ds/dx = -t s.
poly_t q_poly(const poly_t& c, int p) {
    poly_t d = poly_derivative(c);
    poly_t q = d;                                  // c'
    add_scaled(q, shift_up(shift_up(d)), {-1.0, 0.0});  // - t^2 c'
    add_scaled(q, shift_up(c), {-static_cast<double>(p), 0.0});
    trim(q);
    return q;
}

void require_index(int j) {
    if (j < 1) throw std::domain_error("ladder index must be >= 1");
}

void require_ell(int ell) {
    if (ell < 0) throw std::domain_error("ell must be >= 0");
}

void require_momentum(double k) {
    if (!std::isfinite(k) || k <= 0.0)
        throw std::domain_error("momentum k must be finite and > 0");
}

double trapezoid_norm(const std::vector<double>& xs,
                      const std::vector<cplx>& vs) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        acc += 0.5 * (xs[i + 1] - xs[i]) * (std::norm(vs[i]) + std::norm(vs[i + 1]));
    return std::sqrt(acc);
}

// Unit-normalize and rotate so the first positive-x maximum of |psi| is
// real positive; returns the sampled state with the rescaled closure.
GridFunction finalize_state(const HyperbolicWave& w,
                            const std::vector<double>& xs) {
    GridFunction f = w.sample(xs);
    double norm = trapezoid_norm(f.x, f.values);
    if (!(norm > 0.0))
        throw std::domain_error("cannot normalize an identically zero state");

    double peak = 0.0;
    for (std::size_t i = 0; i < f.x.size(); ++i)
        if (f.x[i] > 0.0) peak = std::max(peak, std::abs(f.values[i]));
    cplx phase{1.0, 0.0};
    for (std::size_t i = 0; i < f.x.size(); ++i) {
        if (f.x[i] > 0.0 && std::abs(f.values[i]) >= peak * (1.0 - 1e-12)) {
            phase = f.values[i] / std::abs(f.values[i]);
            break;
        }
    }

    cplx scale = 1.0 / (norm * phase);
    for (auto& v : f.values) v *= scale;
    f.derivative = [w, scale](double x) { return w.derivative(x) * scale; };
    return f;
}

// Fourth-order first derivative on a uniform grid (5-point stencils, the
// outer two rows one-sided).
std::vector<cplx> fd_derivative(const std::vector<double>& xs,
                                const std::vector<cplx>& f) {
    std::size_t n = xs.size();
    if (n < 5)
        throw ResolutionError("finite-difference ladder needs at least 5 samples");
    double h = xs[1] - xs[0];
    if (!(h > 0.0) || h > 0.05 + 1e-12)
        throw ResolutionError("finite-difference ladder needs step <= 0.05");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (std::abs((xs[i + 1] - xs[i]) - h) > 1e-9 * std::max(1.0, h))
            throw ResolutionError("finite-difference ladder needs a uniform grid");

    std::vector<cplx> d(n);
    const double w = 1.0 / (12.0 * h);
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * w;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * w;
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * w;
    d[n - 2] = -(-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] -
                 6.0 * f[n - 4] + f[n - 5]) * w;
    d[n - 1] = -(-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] +
                 16.0 * f[n - 4] - 3.0 * f[n - 5]) * w;
    return d;
}

GridFunction apply_ladder(const GridFunction& f, int index, double sign) {
    require_index(index);
    if (f.x.size() != f.values.size())
        throw std::invalid_argument("grid/value size mismatch");
    if (f.x.empty()) throw std::invalid_argument("empty grid function");

    std::vector<cplx> deriv;
    if (f.derivative) {
        deriv.resize(f.x.size());
        for (std::size_t i = 0; i < f.x.size(); ++i) deriv[i] = f.derivative(f.x[i]);
    } else {
        deriv = fd_derivative(f.x, f.values);
    }

    GridFunction out;
    out.x = f.x;
    out.values.resize(f.x.size());
    const cplx mi{0.0, -1.0};
    for (std::size_t i = 0; i < f.x.size(); ++i) {
        cplx tanh_term{0.0, sign * index * std::tanh(f.x[i])};
        out.values[i] = mi * deriv[i] + tanh_term * f.values[i];
    }
    return out;
}

}  // namespace

HyperbolicWave::HyperbolicWave(std::vector<cplx> poly, int sech_power,
                               double momentum)
    : poly_(std::move(poly)), sech_power_(sech_power), momentum_(momentum) {
    if (poly_.empty()) poly_ = {cplx{0.0, 0.0}};
    if (sech_power_ < 0) throw std::domain_error("sech power must be >= 0");
    if (!std::isfinite(momentum_)) throw std::domain_error("momentum must be finite");
    trim(poly_);
}

HyperbolicWave HyperbolicWave::plane(double k) {
    if (!std::isfinite(k)) throw std::domain_error("momentum must be finite");
    return HyperbolicWave({cplx{1.0, 0.0}}, 0, k);
}

HyperbolicWave HyperbolicWave::sech_power_wave(int p) {
    if (p < 1) throw std::domain_error("sech power must be >= 1");
    return HyperbolicWave({cplx{1.0, 0.0}}, p, 0.0);
}

HyperbolicWave HyperbolicWave::tanh_power_wave(int p) {
    if (p < 0) throw std::domain_error("tanh power must be >= 0");
    poly_t c(static_cast<std::size_t>(p) + 1, cplx{0.0, 0.0});
    c.back() = cplx{1.0, 0.0};
    return HyperbolicWave(std::move(c), 0, 0.0);
}

std::complex<double> HyperbolicWave::value(double x) const {
    double t = std::tanh(x);
    double sp = std::pow(sech(x), sech_power_);
    return horner(poly_, t) * sp * std::polar(1.0, momentum_ * x);
}

std::complex<double> HyperbolicWave::derivative(double x) const {
    double t = std::tanh(x);
    double sp = std::pow(sech(x), sech_power_);
    cplx c = horner(poly_, t);
    cplx q = horner(q_poly(poly_, sech_power_), t);
    return (q + cplx{0.0, momentum_} * c) * sp * std::polar(1.0, momentum_ * x);
}

HyperbolicWave HyperbolicWave::raised(int j) const {
    require_index(j);
    poly_t q = q_poly(poly_, sech_power_);
    poly_t c;  // -i q + k c + i j t c
    add_scaled(c, q, cplx{0.0, -1.0});
    add_scaled(c, poly_, cplx{momentum_, 0.0});
    add_scaled(c, shift_up(poly_), cplx{0.0, static_cast<double>(j)});
    trim(c);
    return HyperbolicWave(std::move(c), sech_power_, momentum_);
}

HyperbolicWave HyperbolicWave::lowered(int j) const {
    require_index(j);
    poly_t q = q_poly(poly_, sech_power_);
    poly_t c;  // -i q + k c - i j t c
    add_scaled(c, q, cplx{0.0, -1.0});
    add_scaled(c, poly_, cplx{momentum_, 0.0});
    add_scaled(c, shift_up(poly_), cplx{0.0, -static_cast<double>(j)});
    trim(c);
    return HyperbolicWave(std::move(c), sech_power_, momentum_);
}

bool HyperbolicWave::is_zero() const {
    return std::all_of(poly_.begin(), poly_.end(),
                       [](cplx c) { return c == cplx{0.0, 0.0}; });
}

GridFunction HyperbolicWave::sample(const std::vector<double>& xs) const {
    GridFunction f;
    f.x = xs;
    f.values.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) f.values[i] = value(xs[i]);
    HyperbolicWave self = *this;
    f.derivative = [self](double x) { return self.derivative(x); };
    return f;
}

GridFunction apply_raising(const GridFunction& f, int index) {
    return apply_ladder(f, index, +1.0);
}

GridFunction apply_lowering(const GridFunction& f, int index) {
    return apply_ladder(f, index, -1.0);
}

HyperbolicWave scattering_wave(int ell, double k) {
    require_ell(ell);
    require_momentum(k);
    HyperbolicWave w = HyperbolicWave::plane(k);
    for (int j = 1; j <= ell; ++j) w = w.raised(j);
    return w;
}

GridFunction scattering_wavefunction(int ell, double k,
                                     const std::vector<double>& xs) {
    return scattering_wave(ell, k).sample(xs);
}

ScatteringCoefficients coefficients(int ell, double k) {
    require_ell(ell);
    require_momentum(k);
    cplx incident{1.0, 0.0};
    cplx transmitted{1.0, 0.0};
    for (int j = 1; j <= ell; ++j) {
        incident *= cplx{k, -static_cast<double>(j)};
        transmitted *= cplx{k, static_cast<double>(j)};
    }
    return ScatteringCoefficients{k, incident, cplx{0.0, 0.0}, transmitted};
}

double phase_shift(int ell, double k) {
    require_ell(ell);
    require_momentum(k);
    double delta = 0.0;
    for (int j = 1; j <= ell; ++j) delta += std::atan(static_cast<double>(j) / k);
    return delta;
}

double phase_shift_zero(int ell) {
    require_ell(ell);
    return static_cast<double>(ell) * (std::numbers::pi_v<double> / 2.0);
}

std::optional<BoundState> ground_state(int ell, const ReportingGrid& grid) {
    require_ell(ell);
    if (ell == 0) return std::nullopt;
    BoundState s;
    s.ell = ell;
    s.n = 0;
    s.energy = -static_cast<double>(ell) * ell;
    s.parity = Parity::even;
    s.node_count = 0;
    s.wavefunction =
        finalize_state(HyperbolicWave::sech_power_wave(ell), grid.make_points());
    return s;
}

std::vector<BoundState> bound_spectrum(int ell, const ReportingGrid& grid) {
    require_ell(ell);
    std::vector<BoundState> states;
    states.reserve(static_cast<std::size_t>(std::max(ell, 0)));
    auto xs = grid.make_points();
    for (int n = 0; n < ell; ++n) {
        int m = ell - n;  // level n descends from the depth-m ground state
        HyperbolicWave w = HyperbolicWave::sech_power_wave(m);
        for (int j = m + 1; j <= ell; ++j) w = w.raised(j);
        BoundState s;
        s.ell = ell;
        s.n = n;
        s.energy = -static_cast<double>(m) * m;
        s.parity = parity_of_index(n);
        s.node_count = n;
        s.wavefunction = finalize_state(w, xs);
        states.push_back(std::move(s));
    }
    return states;
}

HalfBoundState half_bound_state(int ell, const ReportingGrid& grid) {
    require_ell(ell);
    // Zero-momentum limit of the ladder chain. With t = tanh x the
    // zero-energy equation is Legendre's equation, so this is P_ell(t);
    // rescaling by the t = 1 boundary value (i^ell ell!) pins the
    // x -> +inf limit to exactly 1.
    HyperbolicWave w({cplx{1.0, 0.0}}, 0, 0.0);
    for (int j = 1; j <= ell; ++j) w = w.raised(j);
    poly_t c = w.poly();
    cplx boundary = horner(c, 1.0);
    for (auto& v : c) v /= boundary;
    HalfBoundState s;
    s.ell = ell;
    s.parity = parity_of_index(ell);
    s.wavefunction =
        HyperbolicWave(std::move(c), 0, 0.0).sample(grid.make_points());
    return s;
}

BoundStateCensus census(int ell) {
    require_ell(ell);
    BoundStateCensus c;
    c.n_total = ell;
    c.n_even = (ell + 1) / 2;
    c.n_odd = ell / 2;
    c.critical_even = ell % 2 == 0;
    c.critical_odd = ell % 2 == 1;
    return c;
}

}  // namespace scatter1d::analytic
