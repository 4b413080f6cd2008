#include "scatter1d/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "scatter1d/errors.hpp"

namespace scatter1d::numeric {

namespace {

using cplx = std::complex<double>;
using std::numbers::pi;

constexpr double kRescaleLimit = 1e150;

// Representative of x mod pi in (-pi/2, pi/2].
double mod_pi(double x) {
    double y = std::remainder(x, pi);
    if (y <= -pi / 2.0) y += pi;
    return y;
}

double circular_pi_distance(double a, double b) {
    return std::abs(std::remainder(a - b, pi));
}

void require_momentum(double k) {
    if (!std::isfinite(k) || k <= 0.0)
        throw std::domain_error("momentum k must be finite and > 0");
}

void require_symmetric(const Potential& p) {
    if (!p.symmetric())
        throw std::invalid_argument("a symmetric potential is required here");
}

void require_decay(const Potential& p, const SolverConfig& cfg) {
    const double lo = std::max(10.0, 0.5 * cfg.x_max);
    std::vector<double> probes(12);
    for (int i = 0; i < 12; ++i)
        probes[i] = lo + (cfg.x_max - lo) * i / 11.0;
    if (!check_decay_condition(p, probes).passes)
        throw std::invalid_argument(
            "potential tail decays too slowly for asymptotic matching");
}

double fd5(const std::vector<double>& y, std::size_t i, double h) {
    return (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]) /
           (12.0 * h);
}

// Numerov march for psi'' = -w psi along the index order given by idx().
// The running pair is carried in extended precision: per-step rounding
// feeds the counter-propagating mode with weight ~eps/(kh), which at
// double precision is visible (~1e-8 in the reflected amplitude) for
// k ~ 0.05 on 4e4-step grids.  Rescales everything computed so far
// whenever the magnitude passes kRescaleLimit, recording the event; the
// output stays a single global multiple of the true solution.
template <typename IndexMap>
void march(const std::vector<double>& w, double h, IndexMap idx,
           std::size_t count, double s0, double s1, std::vector<double>& y,
           std::vector<RescaleEvent>& events) {
    const long double c = static_cast<long double>(h) * h / 12.0L;
    long double prev = s0;
    long double curr = s1;
    y[idx(0)] = s0;
    y[idx(1)] = s1;
    for (std::size_t t = 1; t + 1 < count; ++t) {
        const long double w_prev = w[idx(t - 1)];
        const long double w_here = w[idx(t)];
        const long double w_next = w[idx(t + 1)];
        const long double next = (2.0L * curr * (1.0L - 5.0L * c * w_here) -
                                  prev * (1.0L + c * w_prev)) /
                                 (1.0L + c * w_next);
        prev = curr;
        curr = next;
        const double stored = static_cast<double>(next);
        y[idx(t + 1)] = stored;
        if (std::abs(stored) > kRescaleLimit) {
            const double factor = std::abs(stored);
            for (std::size_t s = 0; s <= t + 1; ++s) y[idx(s)] /= factor;
            prev /= factor;
            curr /= factor;
            events.push_back({idx(t + 1), factor});
        }
    }
}

std::vector<double> sample_potential(const Potential& p,
                                     const std::vector<double>& xs) {
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        v[i] = p(xs[i]);
        if (!std::isfinite(v[i]))
            throw std::invalid_argument(
                "potential evaluates to a non-finite value on the grid");
    }
    return v;
}

// Half-line grid 0..x_max with both endpoints exact.
std::vector<double> half_grid(const SolverConfig& cfg) {
    auto n = static_cast<std::size_t>(std::llround(cfg.x_max / cfg.h));
    std::vector<double> xs(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        xs[j] = cfg.x_max * static_cast<double>(j) / static_cast<double>(n);
    return xs;
}

// Outward integration from the origin with parity initial conditions
// (even: psi(0)=1, psi'(0)=0; odd: psi(0)=0, psi'(0)=1), seeded by a
// Taylor step built from v(0), v''(0); filled for indices [0, stop].
std::vector<double> outward(const std::vector<double>& xs,
                            const std::vector<double>& v, double energy,
                            Parity parity, std::size_t stop,
                            std::vector<RescaleEvent>* events = nullptr) {
    const double h = xs[1] - xs[0];
    const double c0 = v[0] - energy;
    const double v2 = 2.0 * (v[1] - v[0]) / (h * h);  // v''(0), symmetric
    double s0, s1;
    if (parity == Parity::even) {
        s0 = 1.0;
        s1 = 1.0 + c0 * h * h / 2.0 + (v2 + c0 * c0) * std::pow(h, 4) / 24.0;
    } else {
        s0 = 0.0;
        s1 = h + c0 * std::pow(h, 3) / 6.0 +
             (3.0 * v2 + c0 * c0) * std::pow(h, 5) / 120.0;
    }
    std::vector<double> w(stop + 1);
    for (std::size_t j = 0; j <= stop; ++j) w[j] = energy - v[j];
    std::vector<double> y(stop + 1, 0.0);
    std::vector<RescaleEvent> local;
    march(w, h, [](std::size_t t) { return t; }, stop + 1, s0, s1, y, local);
    if (events) *events = std::move(local);
    return y;
}

// Inward integration from x_max with the decaying seed e^{-kappa x},
// kappa = sqrt(-E); filled for indices [start, last], zeros elsewhere.
std::vector<double> inward(const std::vector<double>& xs,
                           const std::vector<double>& v, double energy,
                           std::size_t start) {
    const double h = xs[1] - xs[0];
    const double kappa = std::sqrt(-energy);
    const std::size_t last = xs.size() - 1;
    const std::size_t count = last - start + 1;
    std::vector<double> w(xs.size());
    for (std::size_t j = start; j <= last; ++j) w[j] = energy - v[j];
    std::vector<double> y(xs.size(), 0.0);
    std::vector<RescaleEvent> events;
    march(w, h, [last](std::size_t t) { return last - t; }, count, 1.0,
          std::exp(kappa * h), y, events);
    return y;
}

// Index of the outermost classically allowed point, clamped so the
// five-point stencils around it stay inside the grid.
std::size_t turning_index(const std::vector<double>& v, double energy,
                          std::size_t last) {
    std::size_t m = 0;
    for (std::size_t j = 0; j <= last; ++j)
        if (v[j] < energy) m = j;
    return std::clamp<std::size_t>(m, 2, last - 2);
}

double wronskian_mismatch(const std::vector<double>& xs,
                          const std::vector<double>& v, double energy,
                          Parity parity) {
    const double h = xs[1] - xs[0];
    const std::size_t last = xs.size() - 1;
    const std::size_t m = turning_index(v, energy, last);
    auto out = outward(xs, v, energy, parity, std::min(m + 2, last));
    auto in = inward(xs, v, energy, m >= 2 ? m - 2 : 0);
    return out[m] * fd5(in, m, h) - fd5(out, m, h) * in[m];
}

}  // namespace

void SolverConfig::validate() const {
    if (!(x_max >= 10.0))
        throw std::invalid_argument("SolverConfig: x_max must be >= 10");
    if (!(h > 0.0) || !(h <= 0.01))
        throw std::invalid_argument("SolverConfig: h must lie in (0, 0.01]");
    if (!(match_tol > 0.0) || !(energy_tol > 0.0) ||
        !(zero_energy_slope_tol > 0.0))
        throw std::invalid_argument("SolverConfig: tolerances must be > 0");
    if (energy_mesh < 2)
        throw std::invalid_argument("SolverConfig: energy_mesh must be >= 2");
}

std::vector<double> SolverConfig::make_grid() const {
    auto n = static_cast<std::size_t>(std::llround(2.0 * x_max / h));
    std::vector<double> xs(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        xs[i] = -x_max +
                2.0 * x_max * static_cast<double>(i) / static_cast<double>(n);
    return xs;
}

NumerovSolution numerov_integrate(const Potential& p, double energy,
                                  Direction direction,
                                  const SolverConfig& cfg, double seed_first,
                                  double seed_second) {
    cfg.validate();
    if (!std::isfinite(energy))
        throw std::domain_error("energy must be finite");
    if (!std::isfinite(seed_first) || !std::isfinite(seed_second))
        throw std::domain_error("seed values must be finite");

    NumerovSolution sol;
    sol.x = cfg.make_grid();
    auto v = sample_potential(p, sol.x);
    const std::size_t n = sol.x.size();
    // step recomputed from the box size: differencing grid points anchored
    // at -x_max would carry ~2e-15 of absolute rounding into the lattice,
    // which accumulates to ~1e-9 of phase over 4e4 steps
    const double h = 2.0 * cfg.x_max / static_cast<double>(n - 1);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = energy - v[i];
    sol.psi.assign(n, 0.0);
    if (direction == Direction::left_to_right) {
        march(w, h, [](std::size_t t) { return t; }, n, seed_first,
              seed_second, sol.psi, sol.rescales);
    } else {
        const std::size_t last = n - 1;
        march(w, h, [last](std::size_t t) { return last - t; }, n, seed_first,
              seed_second, sol.psi, sol.rescales);
    }
    return sol;
}

ScatteringResult solve_scattering(const Potential& p, double k,
                                  const SolverConfig& cfg) {
    cfg.validate();
    require_momentum(k);
    require_decay(p, cfg);

    auto xs = cfg.make_grid();
    auto v = sample_potential(p, xs);
    const std::size_t n = xs.size();
    const std::size_t last = n - 1;
    const double h = 2.0 * cfg.x_max / static_cast<double>(last);
    // lattice coordinate of index j, accurate to relative rounding
    auto lattice_x = [&](std::size_t j) {
        return -cfg.x_max + h * static_cast<double>(j);
    };
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = k * k - v[i];

    // two real passes seeded with cos / sin of the transmitted wave
    std::vector<double> re(n, 0.0), im(n, 0.0);
    std::vector<RescaleEvent> ev_re, ev_im;
    auto idx = [last](std::size_t t) { return last - t; };
    march(w, h, idx, n, std::cos(k * cfg.x_max),
          std::cos(k * (cfg.x_max - h)), re, ev_re);
    march(w, h, idx, n, std::sin(k * cfg.x_max),
          std::sin(k * (cfg.x_max - h)), im, ev_im);
    if (!ev_re.empty() || !ev_im.empty())
        throw ResolutionError(
            "scattering solution overflowed inside a barrier; the "
            "transmission is below representable range");

    auto extract = [&](std::size_t j) {
        cplx psi{re[j], im[j]};
        cplx dpsi{fd5(re, j, h), fd5(im, j, h)};
        const cplx ik{0.0, k};
        const cplx phase = std::polar(1.0, k * lattice_x(j));
        cplx incident = (ik * psi + dpsi) / (2.0 * ik) / phase;
        cplx reflected = (ik * psi - dpsi) / (2.0 * ik) * phase;
        return std::pair<cplx, cplx>{incident, reflected};
    };
    auto [i1, r1] = extract(2);
    auto [i2, r2] = extract(4);
    const double scale =
        std::max({1.0, std::abs(i1), std::abs(r1)});
    // budget: configured tolerance plus the known O((kh)^4) stencil error
    const double tol = (cfg.match_tol + std::pow(k * h, 4)) * scale;
    if (std::abs(i2 - i1) > tol || std::abs(r2 - r1) > tol)
        throw ResolutionError(
            "asymptotic matching self-check failed; increase x_max or "
            "decrease h");

    ScatteringResult res;
    res.k = k;
    res.coefficients =
        ScatteringCoefficients{k, cplx{1.0, 0.0}, r1 / i1, 1.0 / i1};
    res.delta = mod_pi(0.5 * std::arg(res.coefficients.transmission_ratio()));
    res.reflection_probability =
        std::norm(res.coefficients.reflection_ratio());
    res.transmission_probability =
        std::norm(res.coefficients.transmission_ratio());
    return res;
}

ParityPhases solve_parity_phases(const Potential& p, double k,
                                 const SolverConfig& cfg) {
    cfg.validate();
    require_symmetric(p);
    require_momentum(k);
    require_decay(p, cfg);

    auto xs = half_grid(cfg);
    auto v = sample_potential(p, xs);
    const std::size_t last = xs.size() - 1;
    const double h = xs[1] - xs[0];

    auto phi_at = [&](const std::vector<double>& y, std::size_t j) {
        return std::atan2(k * y[j], fd5(y, j, h)) - k * xs[j];
    };
    ParityPhases out;
    out.k = k;
    for (Parity parity : {Parity::even, Parity::odd}) {
        auto y = outward(xs, v, k * k, parity, last);
        double phi = phi_at(y, last - 2);
        double phi_check = phi_at(y, last - 4);
        if (circular_pi_distance(phi, phi_check) >
            cfg.match_tol + std::pow(k * h, 4))
            throw ResolutionError(
                "parity-phase matching self-check failed; increase x_max or "
                "decrease h");
        double delta =
            parity == Parity::even ? mod_pi(phi - pi / 2.0) : mod_pi(phi);
        (parity == Parity::even ? out.delta_even : out.delta_odd) = delta;
    }
    return out;
}

std::vector<double> geometric_grid(double k_min, double k_max, int n) {
    if (!(k_min > 0.0) || !(k_max > k_min) || n < 2)
        throw std::invalid_argument(
            "geometric_grid wants 0 < k_min < k_max and n >= 2");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] =
            k_min * std::pow(k_max / k_min, static_cast<double>(i) / (n - 1));
    g.front() = k_min;
    g.back() = k_max;
    return g;
}

PhaseShiftCurve phase_curve(const Potential& p,
                            const std::vector<double>& k_grid,
                            const SolverConfig& cfg, ParitySelection parity) {
    cfg.validate();
    if (k_grid.size() < 50)
        throw std::invalid_argument("phase_curve wants at least 50 k samples");
    for (std::size_t i = 0; i + 1 < k_grid.size(); ++i)
        if (!(k_grid[i] < k_grid[i + 1]))
            throw std::invalid_argument("phase_curve wants increasing k");
    if (!(k_grid.front() >= 0.01))
        throw std::invalid_argument("phase_curve wants k_min >= 0.01");
    if (!(k_grid.back() >= 2.0))
        throw std::invalid_argument("phase_curve wants k_max >= 2");

    std::vector<double> raw(k_grid.size());
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        switch (parity) {
            case ParitySelection::total:
                raw[i] = solve_scattering(p, k_grid[i], cfg).delta;
                break;
            case ParitySelection::even:
                raw[i] = solve_parity_phases(p, k_grid[i], cfg).delta_even;
                break;
            case ParitySelection::odd:
                raw[i] = solve_parity_phases(p, k_grid[i], cfg).delta_odd;
                break;
        }
    }

    // anchor at the largest k (raw values already lie in (-pi/2, pi/2]),
    // then continue the branch toward k = 0
    std::vector<double> unwrapped(raw.size());
    unwrapped.back() = raw.back();
    for (std::size_t i = raw.size() - 1; i-- > 0;) {
        double cand =
            raw[i] + pi * std::round((unwrapped[i + 1] - raw[i]) / pi);
        if (std::abs(cand - unwrapped[i + 1]) >= pi / 2.0 - 1e-9)
            throw ResolutionError(
                "phase unwrapping is ambiguous between adjacent k samples; "
                "use a denser k grid");
        unwrapped[i] = cand;
    }

    // quadratic extrapolation to k = 0 through the three smallest samples
    const double k0 = k_grid[0], k1 = k_grid[1], k2 = k_grid[2];
    const double d0 =
        unwrapped[0] * k1 * k2 / ((k0 - k1) * (k0 - k2)) +
        unwrapped[1] * k0 * k2 / ((k1 - k0) * (k1 - k2)) +
        unwrapped[2] * k0 * k1 / ((k2 - k0) * (k2 - k1));

    PhaseShiftCurve curve;
    curve.k_samples = k_grid;
    curve.delta_samples = std::move(unwrapped);
    curve.delta_zero_extrapolated = d0;
    return curve;
}

std::vector<BoundState> find_bound_states(const Potential& p,
                                          const SolverConfig& cfg) {
    cfg.validate();
    require_symmetric(p);

    auto xs = half_grid(cfg);
    auto v = sample_potential(p, xs);
    const std::size_t last = xs.size() - 1;
    const double h = xs[1] - xs[0];
    const double v_min = *std::min_element(v.begin(), v.end());
    if (!(v_min < -1e-12)) return {};

    struct Root {
        double energy;
        Parity parity;
    };
    std::vector<Root> roots;
    const int mesh = cfg.energy_mesh;
    for (Parity parity : {Parity::even, Parity::odd}) {
        std::vector<double> energies(static_cast<std::size_t>(mesh));
        std::vector<double> mism(static_cast<std::size_t>(mesh));
        for (int i = 0; i < mesh; ++i) {
            energies[static_cast<std::size_t>(i)] =
                v_min * (1.0 - (i + 0.5) / mesh);
            mism[static_cast<std::size_t>(i)] = wronskian_mismatch(
                xs, v, energies[static_cast<std::size_t>(i)], parity);
        }
        for (int i = 0; i + 1 < mesh; ++i) {
            double wa = mism[static_cast<std::size_t>(i)];
            double wb = mism[static_cast<std::size_t>(i + 1)];
            if (wa == 0.0) {
                roots.push_back({energies[static_cast<std::size_t>(i)], parity});
                continue;
            }
            if (!(wa * wb < 0.0)) continue;
            double lo = energies[static_cast<std::size_t>(i)];
            double hi = energies[static_cast<std::size_t>(i + 1)];
            double wlo = wa;
            while (hi - lo > cfg.energy_tol) {
                double mid = 0.5 * (lo + hi);
                double wm = wronskian_mismatch(xs, v, mid, parity);
                if (wm == 0.0) {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if ((wm < 0.0) == (wlo < 0.0)) {
                    lo = mid;
                    wlo = wm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back({0.5 * (lo + hi), parity});
        }
    }

    std::sort(roots.begin(), roots.end(),
              [](const Root& a, const Root& b) { return a.energy < b.energy; });

    std::vector<BoundState> states;
    states.reserve(roots.size());
    for (const Root& root : roots) {
        const std::size_t m = turning_index(v, root.energy, last);
        auto out = outward(xs, v, root.energy, root.parity,
                           std::min(m + 2, last));
        auto in = inward(xs, v, root.energy, m >= 2 ? m - 2 : 0);
        const double glue = out[m] / in[m];
        std::vector<double> half(last + 1);
        for (std::size_t j = 0; j <= m; ++j) half[j] = out[j];
        for (std::size_t j = m + 1; j <= last; ++j) half[j] = in[j] * glue;

        // node count on the half line; axis node for odd states, mirrored
        // interior nodes for both parities
        double peak = 0.0;
        for (double val : half) peak = std::max(peak, std::abs(val));
        int flips = 0, sign_last = 0;
        for (double val : half) {
            if (std::abs(val) < 1e-8 * peak) continue;
            int s = val > 0.0 ? 1 : -1;
            if (sign_last != 0 && s != sign_last) ++flips;
            sign_last = s;
        }
        const int nodes = 2 * flips + (root.parity == Parity::odd ? 1 : 0);

        // mirror to the full line and normalize
        BoundState state;
        state.ell = p.kind() == Potential::Kind::reflectionless
                        ? std::optional<int>(p.ell())
                        : std::nullopt;
        state.energy = root.energy;
        state.parity = root.parity;
        state.node_count = nodes;
        GridFunction f;
        f.x.resize(2 * last + 1);
        f.values.resize(2 * last + 1);
        const double odd_sign = root.parity == Parity::odd ? -1.0 : 1.0;
        for (std::size_t j = 0; j <= last; ++j) {
            f.x[last + j] = xs[j];
            f.x[last - j] = -xs[j];
            f.values[last + j] = half[j];
            f.values[last - j] = odd_sign * half[j];
        }
        double norm_sq = 0.0;
        for (std::size_t j = 0; j + 1 < f.x.size(); ++j)
            norm_sq += 0.5 * h *
                       (std::norm(f.values[j]) + std::norm(f.values[j + 1]));
        double norm = std::sqrt(norm_sq);
        double orient = 1.0;
        double best = 0.0;
        for (std::size_t j = last + 1; j < f.x.size(); ++j)
            best = std::max(best, std::abs(f.values[j]));
        for (std::size_t j = last + 1; j < f.x.size(); ++j) {
            if (std::abs(f.values[j]) >= best * (1.0 - 1e-12)) {
                orient = f.values[j].real() > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        const double rescale = orient / norm;
        for (auto& val : f.values) val *= rescale;
        state.wavefunction = std::move(f);
        states.push_back(std::move(state));
    }

    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].node_count != static_cast<int>(i)) {
            std::ostringstream msg;
            msg << "bound-state node counts are not consecutive (got ";
            for (const auto& s : states) msg << s.node_count << ' ';
            msg << "); the energy mesh is too coarse";
            throw ResolutionError(msg.str());
        }
        states[i].n = states[i].node_count;
    }
    return states;
}

Criticality classify_zero_energy(const Potential& p,
                                 const SolverConfig& cfg) {
    cfg.validate();
    require_symmetric(p);
    require_decay(p, cfg);

    auto xs = half_grid(cfg);
    auto v = sample_potential(p, xs);
    const std::size_t last = xs.size() - 1;

    Criticality crit;
    for (Parity parity : {Parity::even, Parity::odd}) {
        auto y = outward(xs, v, 0.0, parity, last);
        const std::size_t j0 = last - last / 10;
        const double beta = (y[last] - y[j0]) / (xs[last] - xs[j0]);
        const double alpha = y[last] - beta * xs[last];
        if (std::abs(alpha) < 1e-300 && std::abs(beta) < 1e-300)
            throw std::domain_error(
                "zero-energy solution vanished identically");
        const bool is_critical = std::abs(beta) * cfg.x_max <
                                 cfg.zero_energy_slope_tol * std::abs(alpha);
        (parity == Parity::even ? crit.even_critical : crit.odd_critical) =
            is_critical;
    }
    return crit;
}

}  // namespace scatter1d::numeric
