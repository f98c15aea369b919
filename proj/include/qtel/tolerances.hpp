#pragma once

namespace qtel {

/// Central numerical tolerance record. Every validity check in the library
/// reads its threshold from here so tests can tighten or relax them in one
/// place.
struct Tolerances {
    double hermiticity = 1e-10;        ///< max |M - M†| for density matrices
    double unit_trace = 1e-10;         ///< |tr(rho) - 1|
    double positivity = 1e-10;         ///< min eigenvalue >= -positivity
    double state_norm = 1e-12;         ///< | ||psi||^2 - 1 | for pure states
    double hermitian_input = 1e-8;     ///< eigensolver input Hermiticity gate
    double completeness = 1e-10;       ///< Kraus completeness defect
    double choi_equality = 1e-10;      ///< channel equality via Choi distance
    double negativity_cutoff = 1e-12;  ///< eigenvalues below this count as zero
    double zero_probability = 1e-14;   ///< outcome weight considered impossible
    double fidelity_tie = 1e-12;       ///< reversal-search tie-break threshold
};

/// Library-wide defaults (immutable).
inline const Tolerances& tol() {
    static const Tolerances t{};
    return t;
}

}  // namespace qtel
