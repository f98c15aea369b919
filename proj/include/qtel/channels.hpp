// Kraus channels: validated operator sets, application, completeness checks,
// Choi fingerprints for decomposition-independent equality, and the direct
// constructors for the closed-form channel families induced by the two
// teleportation protocols.

#pragma once

#include <array>
#include <vector>

#include "qtel/states.hpp"

namespace qtel {

enum class Completeness {
    trace_preserving,          // sum A†A = I
    trace_decreasing,          // sum A†A <= I
    conditional_unnormalized,  // no constraint; apply() renormalizes
};

class KrausChannel {
public:
    KrausChannel(std::vector<Matrix> operators, Completeness completeness,
                 const Tolerances& t = tol());

    int dim() const { return static_cast<int>(operators_.front().rows()); }
    const std::vector<Matrix>& operators() const { return operators_; }
    Completeness completeness() const { return completeness_; }

private:
    std::vector<Matrix> operators_;
    Completeness completeness_;
};

struct ApplyResult {
    DensityMatrix state;  // renormalized output
    double weight;        // tr(sum A rho A†) before renormalization
};

/// Applies the channel and renormalizes. Throws on dimension mismatch or when
/// the weight is below the zero-probability cutoff.
ApplyResult apply(const KrausChannel& channel, const DensityMatrix& rho);

/// Largest absolute entry of (sum A†A - I). The caller interprets the value
/// against the channel's declared completeness class.
double completeness_defect(const KrausChannel& channel);

/// Choi fingerprint sum_A (A x I)|Omega><Omega|(A x I)† with |Omega> the
/// unnormalized maximally entangled vector sum_i |ii>. Two channels are equal
/// as maps iff their Choi matrices are equal.
struct ChoiMatrix {
    Matrix matrix;
};

ChoiMatrix choi(const KrausChannel& channel);

/// Max-abs entry distance between Choi matrices.
double choi_distance(const ChoiMatrix& a, const ChoiMatrix& b);

/// Same, after normalizing both to unit trace (for conditional channels whose
/// overall scale is convention).
double choi_distance_normalized(const ChoiMatrix& a, const ChoiMatrix& b);

// --------------------------- constructors -----------------------------------

KrausChannel identity_channel(int dim);

/// The single-unitary channel {sigma_a x sigma_b} on two qubits (indices in
/// the pinned 1..4 order).
KrausChannel pauli_pair_channel(int a, int b);

/// The 16-operator channel induced by the uncorrelated resource for a given
/// outcome: operators sqrt(q_k q_k') sigma_{i∘k} x sigma_{i'∘k'} over all
/// (k,k'), where ∘ is product_index. Outcome (1,1) is the identity-permuted
/// set. Trace preserving for every valid q.
KrausChannel uncorrelated_channel(const std::array<double, 4>& q, MeasurementOutcome outcome);

/// The rank-one channel induced by the correlated (pure) resource: a single
/// coherent operator sum_k eta_k sqrt(q_k) sigma_{i∘k} x sigma_{i'∘k} with a
/// fixed outcome-dependent phase pattern eta (frozen from protocol
/// extraction; eta = (1,1,1,-1) for outcome (1,1)). Stored unnormalized, so
/// the application weight equals the outcome weight pi_{ii'} = 16 p_{ii'}.
KrausChannel correlated_channel(const std::array<double, 4>& q, MeasurementOutcome outcome);

/// The incoherent per-Pauli mixture {sqrt(q_k) sigma_{i∘k} x sigma_{i∘k}} for
/// a diagonal outcome (i,i). Kept as an audit constructor: it is trace
/// preserving and is NOT the channel the protocol induces (see
/// correlated_channel); reports compare the two.
KrausChannel correlated_mixture_channel(const std::array<double, 4>& q, BellIndex i);

/// Composition outer ∘ inner: operator set {B_n A_m} over all pairs. The
/// completeness class is the weakest of the two.
KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner);

}  // namespace qtel
