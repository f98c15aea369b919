// Exact simulation of both teleportation protocols: joint-state preparation,
// Bell measurement, outcome conditioning, and extraction of the induced
// per-outcome Kraus channels. This module is the ground-truth oracle the
// closed-form constructors are checked against.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qtel/channels.hpp"

namespace qtel {

/// Unitary relabeling of subsystems. perm[i] is the destination slot of
/// subsystem i, so U|x_0 ... x_{n-1}> = |y_0 ... y_{n-1}> with
/// y_{perm[i]} = x_i. dims lists the source subsystem dimensions. Throws if
/// perm is not a bijection.
Matrix permutation_unitary(const std::vector<int>& perm, const std::vector<int>& dims);

/// Operator acting as op on the listed subsystems (in the listed order) and
/// as identity elsewhere.
Matrix embed_operator(const Matrix& op, const std::vector<int>& sites, const std::vector<int>& dims);

/// Rank-1 projectors onto the four Bell states, indexed by BellIndex order;
/// they sum to the 4x4 identity.
std::array<Matrix, 4> bell_projectors();

// --------------------------- two-pair protocol ------------------------------

struct OutcomeRecord {
    MeasurementOutcome outcome;
    double probability;
    /// Bob's pair (systems 4,6). Empty when the outcome probability is below
    /// the zero-probability cutoff (possible for special inputs in the
    /// correlated family), where no conditional state exists.
    std::optional<DensityMatrix> conditional_state;
    KrausChannel extracted_channel;
};

/// Runs the two-pair protocol on the full 64-dimensional joint state:
/// rho_in on systems (1,2), the resource on (3,4,5,6), Bell projectors on
/// (1,3) and (2,5). Returns all 16 outcomes ordered by (i, i'); conditional
/// states are computed by direct projection and partial trace, independently
/// of the extracted channels.
std::vector<OutcomeRecord> simulate_double(const DensityMatrix& rho_in, const ResourceSpec& spec);

/// Per-outcome Kraus operators from the partial matrix elements
/// <P_l P_l'| (Pi_i x Pi_i' x I) V |s_mu> over the resource eigenvectors
/// s_mu, scaled so that the application weight equals 16 p. For the
/// uncorrelated family this yields the 16 scaled Pauli pairs; for the
/// correlated (pure) resource a single coherent operator.
KrausChannel extract_kraus(const ResourceSpec& spec, MeasurementOutcome outcome);

/// Closed-form outcome probability: 1/16 for the uncorrelated family; for the
/// correlated family pi/16 where pi depends on the outcome class
/// product_index(i,i') and the input's diagonal Pauli coefficients
/// c11, c22, c33.
double probability_closed_form(const ResourceSpec& spec, MeasurementOutcome outcome,
                               const BlochCoefficients& c);

// --------------------------- single-pair protocol ----------------------------

struct SingleOutcomeRecord {
    BellIndex outcome;
    double probability;
    std::optional<DensityMatrix> conditional_state;  // Bob's qubit (system 3)
    KrausChannel extracted_channel;
};

/// One-qubit teleportation through an arbitrary two-qubit resource chi with a
/// Bell measurement on systems (1,2).
std::array<SingleOutcomeRecord, 4> simulate_single(const DensityMatrix& rho_in,
                                                   const DensityMatrix& chi);

}  // namespace qtel
