#include "scatter1d/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "scatter1d/analytic.hpp"
#include "scatter1d/errors.hpp"
#include "scatter1d/levinson.hpp"
#include "scatter1d/potentials.hpp"
#include "scatter1d/types.hpp"

namespace scatter1d::cli {

namespace {

using nlohmann::json;
using std::numbers::pi;

// A level matches across the two routes when its energy agrees this
// tightly and parity and node count are identical.
constexpr double kEnergyAgreeTol = 1e-8;

// 17 significant digits round-trip any double exactly; to_chars keeps the
// output locale-free ('.' decimal point) and deterministic.
std::string num17(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v,
                             std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string display_angle(double rad, bool degrees) {
    if (degrees) return num17(rad * 180.0 / pi) + " deg";
    return num17(rad) + " rad";
}

// ---------------------------------------------------------------- config

std::string_view trim(std::string_view sv) {
    while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front())))
        sv.remove_prefix(1);
    while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.back())))
        sv.remove_suffix(1);
    return sv;
}

double config_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw std::invalid_argument("config: " + key + " wants a number, got '" +
                                    value + "'");
    return v;
}

int config_int(const std::string& key, const std::string& value) {
    int v = 0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw std::invalid_argument("config: " + key +
                                    " wants an integer, got '" + value + "'");
    return v;
}

bool config_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("config: " + key + " wants true or false, got '" +
                                value + "'");
}

// Flat `key = value` file; '#' starts a comment, keys are long flag names
// with dashes replaced by underscores.
std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        const std::string key(trim(sv.substr(0, eq)));
        const std::string value(trim(sv.substr(eq + 1)));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": empty key");
        kv[key] = value;
    }
    return kv;
}

// ------------------------------------------------------- shared plumbing

enum class Method { analytic, numeric, both };

struct PotentialChoice {
    Potential potential = make_zero();
    bool closed_form = false;  // sech^2 family selected with --ell
    int ell = -1;
    std::string label;  // series/file prefix: "ell2" or "table"
    std::string file;   // source path when tabulated
};

PotentialChoice select_potential(bool have_ell, int ell,
                                 const std::string& file, double x_max) {
    if (have_ell && !file.empty())
        throw std::invalid_argument("--ell and --potential-file are exclusive");
    if (!have_ell && file.empty())
        throw std::invalid_argument("need --ell N or --potential-file PATH");
    PotentialChoice pc;
    if (!file.empty()) {
        pc.potential = load_potential_csv(file, x_max);
        pc.label = "table";
        pc.file = file;
    } else {
        pc.potential = make_reflectionless(ell, x_max);
        pc.closed_form = true;
        pc.ell = ell;
        pc.label = "ell" + std::to_string(ell);
    }
    return pc;
}

Method resolve_method(const std::string& flag, const PotentialChoice& pc) {
    Method m;
    if (flag.empty())
        m = pc.closed_form ? Method::both : Method::numeric;
    else if (flag == "analytic")
        m = Method::analytic;
    else if (flag == "numeric")
        m = Method::numeric;
    else if (flag == "both")
        m = Method::both;
    else
        throw std::invalid_argument(
            "--method must be analytic, numeric or both");
    if (!pc.closed_form && m != Method::numeric)
        throw std::invalid_argument(
            "closed-form results need --ell; a tabulated potential only "
            "supports --method numeric");
    return m;
}

const char* to_string(Method m) {
    switch (m) {
        case Method::analytic: return "analytic";
        case Method::numeric: return "numeric";
        default: return "both";
    }
}

json potential_json(const PotentialChoice& pc) {
    if (pc.closed_form)
        return json{{"kind", "reflectionless"}, {"ell", pc.ell}};
    return json{{"kind", "tabulated"}, {"file", pc.file}};
}

std::string potential_description(const PotentialChoice& pc) {
    if (pc.closed_form) return "ell = " + std::to_string(pc.ell);
    return "potential = " + pc.file;
}

// Runs `emit` against --out (or the session stream when --out is absent).
void write_document(const RunConfig& rc, std::ostream& session_out,
                    const std::function<void(std::ostream&)>& emit) {
    if (rc.output_path.empty()) {
        emit(session_out);
        return;
    }
    std::ofstream ofs(rc.output_path, std::ios::binary);
    if (!ofs) throw IoError("cannot open output file: " + rc.output_path);
    emit(ofs);
    ofs.flush();
    if (!ofs.good()) throw IoError("short write to " + rc.output_path);
}

void emit_json(std::ostream& os, const json& doc) { os << doc.dump(2) << "\n"; }

// ---------------------------------------------------------- phase-shift

int cmd_phase_shift(const PotentialChoice& pc, Method method,
                    const RunConfig& rc, std::ostream& out, std::ostream& err) {
    const std::vector<double> ks =
        numeric::geometric_grid(rc.k_min, rc.k_max, rc.k_steps);

    std::optional<std::vector<double>> delta_analytic;
    std::optional<double> delta_zero_analytic;
    if (method != Method::numeric) {
        std::vector<double> da(ks.size());
        for (std::size_t i = 0; i < ks.size(); ++i)
            da[i] = analytic::phase_shift(pc.ell, ks[i]);
        delta_analytic = std::move(da);
        delta_zero_analytic = analytic::phase_shift_zero(pc.ell);
    }

    std::optional<std::vector<double>> delta_numeric;
    std::optional<double> delta_zero_numeric;
    std::vector<double> abs_r(ks.size(), 0.0);
    if (method != Method::analytic) {
        auto curve = numeric::phase_curve(pc.potential, ks, rc.solver);
        delta_numeric = curve.delta_samples;
        delta_zero_numeric = curve.delta_zero_extrapolated;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            auto res = numeric::solve_scattering(pc.potential, ks[i], rc.solver);
            abs_r[i] = std::abs(res.coefficients.reflection_ratio());
        }
    }
    // pure closed-form run: the family is reflectionless by construction

    write_document(rc, out, [&](std::ostream& os) {
        if (rc.format == OutputFormat::csv) {
            os << "k";
            if (delta_analytic) os << ",delta_analytic";
            if (delta_numeric) os << ",delta_numeric";
            os << ",abs_R\n";
            for (std::size_t i = 0; i < ks.size(); ++i) {
                os << num17(ks[i]);
                if (delta_analytic) os << "," << num17((*delta_analytic)[i]);
                if (delta_numeric) os << "," << num17((*delta_numeric)[i]);
                os << "," << num17(abs_r[i]) << "\n";
            }
            // zero-momentum limit as a footer row; abs_R is left empty
            os << "0";
            if (delta_zero_analytic) os << "," << num17(*delta_zero_analytic);
            if (delta_zero_numeric) os << "," << num17(*delta_zero_numeric);
            os << ",\n";
        } else {
            json doc;
            doc["command"] = "phase-shift";
            doc["method"] = to_string(method);
            doc["potential"] = potential_json(pc);
            doc["units"] = "radians";
            doc["k"] = ks;
            if (delta_analytic) doc["delta_analytic"] = *delta_analytic;
            if (delta_numeric) doc["delta_numeric"] = *delta_numeric;
            doc["abs_R"] = abs_r;
            json zero = json::object();
            if (delta_zero_analytic) zero["analytic"] = *delta_zero_analytic;
            if (delta_zero_numeric) zero["numeric"] = *delta_zero_numeric;
            doc["delta_zero"] = zero;
            emit_json(os, doc);
        }
    });

    err << "phase-shift: " << potential_description(pc) << ", method = "
        << to_string(method) << ", " << ks.size() << " samples in ["
        << num17(rc.k_min) << ", " << num17(rc.k_max) << "]\n";
    if (delta_zero_analytic)
        err << "phase-shift: delta(0) analytic = "
            << display_angle(*delta_zero_analytic, rc.degrees) << "\n";
    if (delta_zero_numeric)
        err << "phase-shift: delta(0) numeric = "
            << display_angle(*delta_zero_numeric, rc.degrees) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------- bound-states

int cmd_bound_states(const PotentialChoice& pc, Method method,
                     const RunConfig& rc, std::ostream& out,
                     std::ostream& err) {
    std::vector<BoundState> analytic_levels;
    std::vector<BoundState> numeric_levels;
    if (method != Method::numeric)
        analytic_levels = analytic::bound_spectrum(pc.ell);
    if (method != Method::analytic)
        numeric_levels = numeric::find_bound_states(pc.potential, rc.solver);

    struct Row {
        int n;
        double energy;
        Parity parity;
        int node_count;
        bool agreement;
    };
    const bool with_agreement = method == Method::both;
    const std::size_t rows_n =
        std::max(analytic_levels.size(), numeric_levels.size());
    std::vector<Row> rows;
    int disagreements = 0;
    for (std::size_t i = 0; i < rows_n; ++i) {
        const BoundState* a =
            i < analytic_levels.size() ? &analytic_levels[i] : nullptr;
        const BoundState* b =
            i < numeric_levels.size() ? &numeric_levels[i] : nullptr;
        const BoundState* primary = a ? a : b;
        Row row{primary->n, primary->energy, primary->parity,
                primary->node_count, true};
        if (with_agreement) {
            row.agreement = a && b &&
                            std::abs(a->energy - b->energy) <= kEnergyAgreeTol &&
                            a->parity == b->parity &&
                            a->node_count == b->node_count;
            if (!row.agreement) ++disagreements;
        }
        rows.push_back(row);
    }

    write_document(rc, out, [&](std::ostream& os) {
        if (rc.format == OutputFormat::csv) {
            os << "n,energy,parity,node_count";
            if (with_agreement) os << ",agreement";
            os << "\n";
            for (const Row& r : rows) {
                os << r.n << "," << num17(r.energy) << "," << to_string(r.parity)
                   << "," << r.node_count;
                if (with_agreement) os << "," << (r.agreement ? "true" : "false");
                os << "\n";
            }
        } else {
            json doc;
            doc["command"] = "bound-states";
            doc["method"] = to_string(method);
            doc["potential"] = potential_json(pc);
            json states = json::array();
            for (const Row& r : rows) {
                json s{{"n", r.n},
                       {"energy", r.energy},
                       {"parity", to_string(r.parity)},
                       {"node_count", r.node_count}};
                if (with_agreement) s["agreement"] = r.agreement;
                states.push_back(std::move(s));
            }
            doc["states"] = states;
            emit_json(os, doc);
        }
    });

    err << "bound-states: " << potential_description(pc) << ", method = "
        << to_string(method) << ", " << rows.size() << " levels";
    if (with_agreement) {
        if (disagreements == 0)
            err << ", routes agree";
        else
            err << ", " << disagreements << " disagree";
    }
    err << "\n";
    return kExitOk;
}

// ----------------------------------------------------------------- audit

levinson::GroundTruth resolve_source(const std::string& flag) {
    if (flag.empty() || flag == "analytic")
        return levinson::GroundTruth::analytic;
    if (flag == "numeric") return levinson::GroundTruth::numeric;
    if (flag == "both") return levinson::GroundTruth::both;
    throw std::invalid_argument("--source must be analytic, numeric or both");
}

// "A..B" inclusive; a single --ell N is the degenerate range N..N.
std::pair<int, int> parse_ell_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        throw std::invalid_argument("--ell-range wants the form A..B");
    int lo = config_int("--ell-range", text.substr(0, dots));
    int hi = config_int("--ell-range", text.substr(dots + 2));
    if (lo > hi)
        throw std::invalid_argument("--ell-range wants A <= B");
    return {lo, hi};
}

json audit_json(const levinson::LevinsonAudit& a) {
    const auto& c = a.prediction.census;
    json row;
    row["ell"] = a.ell;
    row["theorem"] = levinson::to_string(a.prediction.theorem);
    row["census"] = json{{"n_total", c.n_total},
                         {"n_even", c.n_even},
                         {"n_odd", c.n_odd},
                         {"critical_even", c.critical_even},
                         {"critical_odd", c.critical_odd}};
    if (a.prediction.predicted_delta_direct)
        row["predicted_delta_direct"] = *a.prediction.predicted_delta_direct;
    if (a.prediction.predicted_delta_even)
        row["predicted_delta_even"] = *a.prediction.predicted_delta_even;
    if (a.prediction.predicted_delta_odd)
        row["predicted_delta_odd"] = *a.prediction.predicted_delta_odd;
    row["actual_delta_zero"] = a.actual_delta_zero;
    row["actual_source"] = levinson::to_string(a.actual_source);
    row["verdict"] = levinson::to_string(a.verdict);
    row["discrepancy"] = a.discrepancy;
    row["notes"] = a.notes;
    return row;
}

void audit_csv_row(std::ostream& os, const levinson::LevinsonAudit& a) {
    const auto& p = a.prediction;
    const auto& c = p.census;
    auto opt = [](const std::optional<double>& v) {
        return v ? num17(*v) : std::string();
    };
    os << a.ell << "," << levinson::to_string(p.theorem) << "," << c.n_total
       << "," << c.n_even << "," << c.n_odd << ","
       << (c.critical_even ? "true" : "false") << ","
       << (c.critical_odd ? "true" : "false") << ","
       << opt(p.predicted_delta_direct) << "," << opt(p.predicted_delta_even)
       << "," << opt(p.predicted_delta_odd) << "," << num17(a.actual_delta_zero)
       << "," << levinson::to_string(a.actual_source) << ","
       << levinson::to_string(a.verdict) << "," << num17(a.discrepancy) << ","
       << csv_quote(a.notes) << "\n";
}

int cmd_audit(bool have_ell, int ell, const std::string& range_text,
              const std::string& theorem_flag, const std::string& source_flag,
              const RunConfig& rc, std::ostream& out, std::ostream& err) {
    if (have_ell && !range_text.empty())
        throw std::invalid_argument("--ell and --ell-range are exclusive");
    if (!have_ell && range_text.empty())
        throw std::invalid_argument("need --ell N or --ell-range A..B");
    const auto [lo, hi] =
        range_text.empty() ? std::pair<int, int>{ell, ell}
                           : parse_ell_range(range_text);

    bool want_direct = true;
    bool want_parity = true;
    if (theorem_flag == "direct")
        want_parity = false;
    else if (theorem_flag == "parity")
        want_direct = false;
    else if (!theorem_flag.empty() && theorem_flag != "both")
        throw std::invalid_argument("--theorem must be direct, parity or both");

    const levinson::GroundTruth source = resolve_source(source_flag);

    std::vector<levinson::LevinsonAudit> results;
    for (int l = lo; l <= hi; ++l) {
        auto rows = levinson::audit(l, source, rc.solver);
        for (auto& r : rows) {
            const bool is_direct =
                r.prediction.theorem == levinson::Theorem::direct_3d_restriction;
            if ((is_direct && want_direct) || (!is_direct && want_parity))
                results.push_back(std::move(r));
        }
    }

    write_document(rc, out, [&](std::ostream& os) {
        if (rc.format == OutputFormat::csv) {
            os << "ell,theorem,n_total,n_even,n_odd,critical_even,critical_odd,"
                  "predicted_delta_direct,predicted_delta_even,"
                  "predicted_delta_odd,actual_delta_zero,actual_source,"
                  "verdict,discrepancy,notes\n";
            for (const auto& a : results) audit_csv_row(os, a);
        } else {
            json doc;
            doc["command"] = "audit";
            doc["source"] = levinson::to_string(source);
            json rows = json::array();
            for (const auto& a : results) rows.push_back(audit_json(a));
            doc["results"] = rows;
            emit_json(os, doc);
        }
    });

    int agrees = 0;
    for (const auto& a : results)
        if (a.verdict == levinson::Verdict::agrees) ++agrees;
    err << "audit: " << results.size() << " checks, " << agrees << " agree, "
        << results.size() - agrees << " contradict\n";
    return kExitOk;
}

// ------------------------------------------------------------- plot-data

int cmd_plot_data(const PotentialChoice& pc, Method method,
                  const RunConfig& rc, std::ostream& err) {
    const std::vector<double> ks =
        numeric::geometric_grid(rc.k_min, rc.k_max, rc.k_steps);

    struct Series {
        std::string name;
        std::vector<double> delta;
    };
    std::vector<Series> series;
    if (method != Method::numeric) {
        Series s{pc.label + "_analytic", {}};
        s.delta.resize(ks.size());
        for (std::size_t i = 0; i < ks.size(); ++i)
            s.delta[i] = analytic::phase_shift(pc.ell, ks[i]);
        series.push_back(std::move(s));
    }
    if (method != Method::analytic) {
        auto curve = numeric::phase_curve(pc.potential, ks, rc.solver);
        series.push_back({pc.label + "_numeric", std::move(curve.delta_samples)});
    }

    const std::filesystem::path dir =
        rc.output_path.empty() ? std::filesystem::path(".")
                               : std::filesystem::path(rc.output_path);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + dir.string() + ": " +
                      ec.message());

    json manifest;
    manifest["command"] = "plot-data";
    manifest["potential"] = potential_json(pc);
    json listing = json::array();
    for (const Series& s : series) {
        const std::string filename = s.name + ".dat";
        const std::filesystem::path path = dir / filename;
        std::ofstream ofs(path, std::ios::binary);
        if (!ofs) throw IoError("cannot write " + path.string());
        for (std::size_t i = 0; i < ks.size(); ++i)
            ofs << num17(ks[i]) << " " << num17(s.delta[i]) << "\n";
        ofs.flush();
        if (!ofs.good()) throw IoError("short write to " + path.string());
        listing.push_back(json{{"name", s.name},
                               {"file", filename},
                               {"points", ks.size()}});
        err << "plot-data: wrote " << path.string() << " (" << ks.size()
            << " points)\n";
    }
    manifest["series"] = listing;

    const std::filesystem::path manifest_path = dir / "manifest.json";
    std::ofstream mofs(manifest_path, std::ios::binary);
    if (!mofs) throw IoError("cannot write " + manifest_path.string());
    emit_json(mofs, manifest);
    mofs.flush();
    if (!mofs.good()) throw IoError("short write to " + manifest_path.string());
    err << "plot-data: " << manifest_path.string() << " lists " << series.size()
        << " series\n";
    return kExitOk;
}

// ---------------------------------------------------------------- scatter

int cmd_scatter(const PotentialChoice& pc, double k, const RunConfig& rc,
                std::ostream& out, std::ostream& err) {
    const auto res = numeric::solve_scattering(pc.potential, k, rc.solver);
    const std::complex<double> r = res.coefficients.reflection_ratio();
    const std::complex<double> t = res.coefficients.transmission_ratio();

    write_document(rc, out, [&](std::ostream& os) {
        if (rc.format == OutputFormat::csv) {
            os << "k,delta,r_re,r_im,t_re,t_im,reflection_probability,"
                  "transmission_probability\n";
            os << num17(res.k) << "," << num17(res.delta) << ","
               << num17(r.real()) << "," << num17(r.imag()) << ","
               << num17(t.real()) << "," << num17(t.imag()) << ","
               << num17(res.reflection_probability) << ","
               << num17(res.transmission_probability) << "\n";
        } else {
            json doc;
            doc["command"] = "scatter";
            doc["potential"] = potential_json(pc);
            doc["units"] = "radians";
            doc["k"] = res.k;
            doc["delta"] = res.delta;
            doc["r"] = json{{"re", r.real()}, {"im", r.imag()}};
            doc["t"] = json{{"re", t.real()}, {"im", t.imag()}};
            doc["reflection_probability"] = res.reflection_probability;
            doc["transmission_probability"] = res.transmission_probability;
            emit_json(os, doc);
        }
    });

    err << "scatter: " << potential_description(pc) << ", k = " << num17(k)
        << ", |r|^2 = " << num17(res.reflection_probability) << ", |t|^2 = "
        << num17(res.transmission_probability) << ", delta = "
        << display_angle(res.delta, rc.degrees) << "\n";
    return kExitOk;
}

// ------------------------------------------------------------ entry point

int run_impl(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    CLI::App app{
        "phase shifts, bound spectra and zero-momentum counting-rule "
        "audits for short-range one-dimensional potentials",
        "scatter1d"};
    app.require_subcommand(1);

    // global knobs; per-key presence decides against config-file values
    double x_max = 0.0, step = 0.0, tol = 0.0, k_min = 0.0, k_max = 0.0;
    int k_steps = 0;
    std::string config_path, out_path, format_flag;
    bool degrees = false;
    app.add_option("--config", config_path,
                   "flat key = value file with defaults for the flags below");
    app.add_option("--x-max", x_max, "half-width of the integration box");
    app.add_option("--step", step, "integration step");
    app.add_option("--tol", tol,
                   "matching tolerance for scattering and for the "
                   "bound-state energy bisection");
    app.add_option("--k-min", k_min, "smallest momentum of the sweep");
    app.add_option("--k-max", k_max, "largest momentum of the sweep");
    app.add_option("--k-steps", k_steps, "number of sweep samples");
    app.add_option("--out", out_path,
                   "results file, stdout when absent (plot-data: directory)");
    app.add_option("--format", format_flag, "csv or json");
    app.add_flag("--degrees", degrees,
                 "log diagnostic angles in degrees (files stay in radians)");

    // selectors shared by the subcommands; only the parsed one is read
    int ell = 0;
    std::string potential_file, method_flag, theorem_flag, source_flag;
    std::string ell_range;
    double k_single = 0.0;

    CLI::App* ps = app.add_subcommand("phase-shift",
                                      "phase shift versus momentum");
    ps->fallthrough();
    ps->add_option("--ell", ell, "depth index of the sech^2 family");
    ps->add_option("--potential-file", potential_file, "x,v table (CSV)");
    ps->add_option("--method", method_flag, "analytic, numeric or both");

    CLI::App* bs = app.add_subcommand("bound-states",
                                      "discrete spectrum of a symmetric well");
    bs->fallthrough();
    bs->add_option("--ell", ell, "depth index of the sech^2 family");
    bs->add_option("--potential-file", potential_file, "x,v table (CSV)");
    bs->add_option("--method", method_flag, "analytic, numeric or both");

    CLI::App* au = app.add_subcommand(
        "audit", "score the zero-momentum counting rules against delta(0)");
    au->fallthrough();
    au->add_option("--ell", ell, "single family member to audit");
    au->add_option("--ell-range", ell_range, "inclusive range A..B");
    au->add_option("--theorem", theorem_flag, "direct, parity or both");
    au->add_option("--source", source_flag,
                   "census route: analytic, numeric or both");

    CLI::App* pd = app.add_subcommand(
        "plot-data", "two-column (k, delta) series plus a JSON manifest");
    pd->fallthrough();
    pd->add_option("--ell", ell, "depth index of the sech^2 family");
    pd->add_option("--potential-file", potential_file, "x,v table (CSV)");
    pd->add_option("--method", method_flag, "analytic, numeric or both");

    CLI::App* sc = app.add_subcommand("scatter",
                                      "amplitudes at a single momentum");
    sc->fallthrough();
    sc->add_option("--ell", ell, "depth index of the sech^2 family");
    sc->add_option("--potential-file", potential_file, "x,v table (CSV)");
    sc->add_option("--k", k_single, "momentum")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    // resolve flag > config > default, then validate the merged picture
    const std::map<std::string, std::string> kv =
        config_path.empty() ? std::map<std::string, std::string>{}
                            : parse_config_file(config_path);
    static const std::vector<std::string> known_keys = {
        "x_max", "step", "tol", "k_min", "k_max", "k_steps",
        "out",   "format", "degrees"};
    for (const auto& [key, value] : kv) {
        (void)value;
        if (std::find(known_keys.begin(), known_keys.end(), key) ==
            known_keys.end())
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }

    RunConfig rc;
    auto has = [&kv](const char* key) { return kv.count(key) > 0; };
    if (app.count("--x-max"))
        rc.solver.x_max = x_max;
    else if (has("x_max"))
        rc.solver.x_max = config_double("x_max", kv.at("x_max"));
    if (app.count("--step"))
        rc.solver.h = step;
    else if (has("step"))
        rc.solver.h = config_double("step", kv.at("step"));
    std::optional<double> tol_value;
    if (app.count("--tol"))
        tol_value = tol;
    else if (has("tol"))
        tol_value = config_double("tol", kv.at("tol"));
    if (tol_value) {
        rc.solver.match_tol = *tol_value;
        rc.solver.energy_tol = *tol_value;
    }
    if (app.count("--k-min"))
        rc.k_min = k_min;
    else if (has("k_min"))
        rc.k_min = config_double("k_min", kv.at("k_min"));
    if (app.count("--k-max"))
        rc.k_max = k_max;
    else if (has("k_max"))
        rc.k_max = config_double("k_max", kv.at("k_max"));
    if (app.count("--k-steps"))
        rc.k_steps = k_steps;
    else if (has("k_steps"))
        rc.k_steps = config_int("k_steps", kv.at("k_steps"));
    if (app.count("--out"))
        rc.output_path = out_path;
    else if (has("out"))
        rc.output_path = kv.at("out");
    std::optional<std::string> format_value;
    if (app.count("--format"))
        format_value = format_flag;
    else if (has("format"))
        format_value = kv.at("format");
    if (format_value) {
        if (*format_value == "csv")
            rc.format = OutputFormat::csv;
        else if (*format_value == "json")
            rc.format = OutputFormat::json;
        else
            throw std::invalid_argument("--format must be csv or json");
    }
    if (app.count("--degrees"))
        rc.degrees = degrees;
    else if (has("degrees"))
        rc.degrees = config_bool("degrees", kv.at("degrees"));
    rc.validate();

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "audit")
        return cmd_audit(sub->count("--ell") > 0, ell, ell_range, theorem_flag,
                         source_flag, rc, out, err);

    const PotentialChoice pc = select_potential(
        sub->count("--ell") > 0, ell, potential_file, rc.solver.x_max);
    if (name == "phase-shift")
        return cmd_phase_shift(pc, resolve_method(method_flag, pc), rc, out,
                               err);
    if (name == "bound-states")
        return cmd_bound_states(pc, resolve_method(method_flag, pc), rc, out,
                                err);
    if (name == "plot-data")
        return cmd_plot_data(pc, resolve_method(method_flag, pc), rc, err);
    return cmd_scatter(pc, k_single, rc, out, err);
}

}  // namespace

const char* to_string(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "json";
}

void RunConfig::validate() const {
    solver.validate();
    if (!std::isfinite(k_min) || k_min <= 0.0)
        throw std::invalid_argument("k_min must be positive");
    if (!std::isfinite(k_max) || k_max <= k_min)
        throw std::invalid_argument("k_max must exceed k_min");
    if (k_steps < 2) throw std::invalid_argument("k_steps must be at least 2");
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    try {
        return run_impl(args, out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ResolutionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const ConsistencyError& e) {
        err << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace scatter1d::cli
