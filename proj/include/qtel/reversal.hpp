// Bob's recovery step: exhaustive search over the 16 Pauli-pair unitaries for
// the optimal per-outcome reversal, probability-weighted maximum fidelity,
// teleported-state entanglement, and the closed forms they are compared with.

#pragma once

#include <array>
#include <vector>

#include "qtel/teleport.hpp"

namespace qtel {

/// A reversal candidate sigma_a x sigma_b, indices in the pinned 1..4 order
/// {I, sigma_z, sigma_x, sigma_y}.
struct PauliPair {
    int first;
    int second;
};

inline bool operator==(PauliPair a, PauliPair b) {
    return a.first == b.first && a.second == b.second;
}

Matrix pauli_pair_matrix(PauliPair p);

struct ReversalResult {
    PauliPair pair;
    double fidelity;
};

/// The Pauli pair maximizing <psi| B E(rho) B† |psi> over all 16 candidates,
/// with E applied and renormalized. Ties within the tie threshold go to the
/// lexicographically smallest (first, second). The input must be a pure-state
/// projector.
ReversalResult optimal_reversal(const KrausChannel& channel, const DensityMatrix& pure_input,
                                const Tolerances& t = tol());

struct OutcomeFidelity {
    MeasurementOutcome outcome;
    PauliPair best;
    double fidelity;
    double probability;
};

struct FidelityReport {
    std::vector<OutcomeFidelity> per_outcome;
    double averaged_fmax;        // sum p * F_max over the 16 outcomes
    double closed_form_fmax;     // family closed form, report-only
    double discrepancy;          // |averaged - closed_form|
    bool closed_form_exceeds_one;
};

/// Full pipeline for the input family cos(theta)|00> + sin(theta)|11>:
/// simulate, extract, optimize each reversal, average.
FidelityReport averaged_fmax(const ResourceSpec& spec, double theta);

/// Literal six-branch closed form for the uncorrelated family. Report-only:
/// the value can exceed 1 for degenerate spectra (flagged by callers, never
/// clamped); the numerical search is authoritative.
double fmax_uncorrelated_closed(const std::array<double, 4>& q, double theta);
std::array<double, 6> fmax_uncorrelated_branches(const std::array<double, 4>& q, double theta);

/// Werner-family closed form (1/9)[(2+phi)^2 - (1-phi)(1+2phi) sin^2 2theta].
double fmax_werner_closed(double phi, double theta);

/// Correlated-family closed form
/// max((q1+q2) + (q3+q4) s^2, (q3+q4) + (q1+q2) s^2), s = sin 2theta.
/// Exact only on the degenerate subfamilies (q1+q2)(q3+q4) = 0 and at
/// theta = pi/4; report-only elsewhere.
double fmax_correlated_closed(const std::array<double, 4>& q, double theta);

struct OutcomeEntanglement {
    MeasurementOutcome outcome;
    double negativity;
    double probability;
};

struct EntanglementReport {
    std::vector<OutcomeEntanglement> per_outcome;
    double average;           // probability-weighted
    double input_negativity;  // sin 2theta for the input family
};

/// Negativity of the optimally reversed teleported state, per outcome.
EntanglementReport teleported_entanglement(const ResourceSpec& spec, double theta);

/// Adjudicated Werner-family closed form for the reversed-output negativity:
/// max(0, [(1+2phi)^2 sin 2theta - 2(2-phi-phi^2)] / 9).
double teleported_negativity_werner_closed(double phi, double theta);

/// The rejected alternate grouping (offset term outside the 1/9 factor),
/// kept as a report column.
double teleported_negativity_werner_closed_alt(double phi, double theta);

}  // namespace qtel
