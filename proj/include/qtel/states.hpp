// State constructors (Bell basis, the cos/sin two-qubit input family, the two
// four-qubit resource families) and the scalar functionals used to score
// results: negativity and pure-state fidelity.

#pragma once

#include <array>

#include "qtel/qmath.hpp"

namespace qtel {

/// Index 1..4 <-> {Phi+, Phi-, Psi+, Psi-}. The same index orders the noise
/// spectrum q and the Pauli set {I, sigma_z, sigma_x, sigma_y}; this pairing
/// is pinned once here and used everywhere.
enum class BellIndex : int {
    phi_plus = 1,
    phi_minus = 2,
    psi_plus = 3,
    psi_minus = 4,
};

BellIndex bell_index(int k);  // throws unless k in 1..4
inline int index_of(BellIndex b) { return static_cast<int>(b); }

/// Pauli operator paired with Bell index k: {I, sigma_z, sigma_x, sigma_y}.
const Matrix& pauli_for_index(int k);

/// Index of sigma_a * sigma_b up to phase (the Klein four-group product on
/// the pinned pairing): e.g. product_index(2,3) = 4 since sigma_z sigma_x ~ sigma_y.
int product_index(int a, int b);

/// Alice/Bob measurement outcome label: i for the (1,3) pair, i' for (2,5).
struct MeasurementOutcome {
    BellIndex i;
    BellIndex i_prime;
};

inline bool operator==(MeasurementOutcome a, MeasurementOutcome b) {
    return a.i == b.i && a.i_prime == b.i_prime;
}

/// All 16 outcomes, ordered by (i, i').
std::array<MeasurementOutcome, 16> all_outcomes();

// --------------------------- resource specification -------------------------

struct ResourceSpec {
    enum class Kind { uncorrelated, correlated };

    Kind kind;
    std::array<double, 4> q;  // q_k in [0,1], sum 1 within 1e-12

    static ResourceSpec uncorrelated(const std::array<double, 4>& q);
    static ResourceSpec correlated(const std::array<double, 4>& q);
};

/// One-parameter noise family q = ((1-phi)/6, (1-phi)/6, (1-phi)/6, (1+phi)/2)
/// interpolating from heavy noise (phi=0) to noiseless (phi=1).
struct WernerParam {
    double phi;  // in [0,1]

    explicit WernerParam(double p);
    std::array<double, 4> spectrum() const;
};

// --------------------------- constructors -----------------------------------

/// The four Bell vectors, cached; the reference stays valid for the program
/// lifetime.
const PureState& bell_state(BellIndex index);

/// cos(theta)|00> + sin(theta)|11>.
PureState input_state_vector(double theta);

/// Projector onto the above.
DensityMatrix input_state(double theta);

/// 16x16 state of the two resource pairs, subsystem order (3,4,5,6):
/// uncorrelated = chi_34 x chi_56 (both Bell-diagonal with spectrum q),
/// correlated = pure superposition sum_k sqrt(q_k)|B_k>_34 |B_k>_56.
DensityMatrix resource_state(const ResourceSpec& spec);

// --------------------------- functionals ------------------------------------

/// max(0, -2 * sum of negative eigenvalues of the partial transpose).
/// Eigenvalues within the cutoff of zero are treated as zero.
double negativity(const DensityMatrix& rho, int subsystem, const Tolerances& t = tol());

/// <psi|rho|psi>, real in [0, 1].
double fidelity_pure(const PureState& psi, const DensityMatrix& rho);

}  // namespace qtel
