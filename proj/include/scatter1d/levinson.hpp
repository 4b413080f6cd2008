#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scatter1d/numeric.hpp"
#include "scatter1d/types.hpp"

namespace scatter1d::levinson {

// The two zero-momentum counting rules under audit: the one carried over
// from the three-dimensional s-wave statement, and the parity-resolved one.
enum class Theorem { direct_3d_restriction, parity };

enum class Verdict { agrees, contradicts };

// Which route supplies the bound-state census and the reference delta(0).
enum class GroundTruth { analytic, numeric, both };

inline const char* to_string(Theorem t) {
    return t == Theorem::direct_3d_restriction ? "direct_3d_restriction"
                                               : "parity";
}
inline const char* to_string(Verdict v) {
    return v == Verdict::agrees ? "agrees" : "contradicts";
}
inline const char* to_string(GroundTruth g) {
    switch (g) {
        case GroundTruth::analytic: return "analytic";
        case GroundTruth::numeric: return "numeric";
        default: return "both";
    }
}

// Zero-momentum phase-shift values read off a bound-state census.  Only
// the fields belonging to the chosen theorem are populated.
struct LevinsonPrediction {
    Theorem theorem = Theorem::direct_3d_restriction;
    BoundStateCensus census;
    std::optional<double> predicted_delta_direct;
    std::optional<double> predicted_delta_even;
    std::optional<double> predicted_delta_odd;
};

// delta(0) = n_total*pi, plus pi/2 when either sector carries a bounded
// zero-energy state.
LevinsonPrediction predict_direct(const BoundStateCensus& census);

// Without a zero-energy state: delta_e = n_e*pi + pi/2, delta_o = n_o*pi.
// With one: delta_e = n_e*pi, delta_o = n_o*pi + pi/2.
// Throws std::invalid_argument if both sectors claim a zero-energy state
// (a symmetric potential supports at most one).
LevinsonPrediction predict_parity(const BoundStateCensus& census);

struct LevinsonAudit {
    int ell = 0;
    LevinsonPrediction prediction;
    double actual_delta_zero = 0.0;
    GroundTruth actual_source = GroundTruth::analytic;
    Verdict verdict = Verdict::contradicts;
    double discrepancy = 0.0;  // radians; absolute for the direct rule,
                               // circular mod-pi for the parity rule
    std::string notes;
};

// Runs both predictors for the sech^2 family member `ell` against the
// requested ground truth and scores them; returns the direct audit
// followed by the parity audit.  With GroundTruth::both the census is
// built by both routes and they must match exactly (counts, parities,
// criticality); a mismatch throws ConsistencyError.  The reference
// delta(0) is the closed-form value whenever the analytic route
// participates, otherwise the extrapolated numeric phase curve over the
// default geometric sweep [0.05, 10].
std::vector<LevinsonAudit> audit(int ell, GroundTruth source,
                                 const numeric::SolverConfig& cfg = {});

}  // namespace scatter1d::levinson
