// Dense complex linear algebra for small multi-qubit systems: Kronecker
// products, validated density/pure states, partial trace and transpose,
// Hermitian spectra, two-qubit Pauli expansions. Dimensions stay <= 64.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "qtel/tolerances.hpp"

namespace qtel {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// --------------------------- elementary operators ---------------------------

Matrix identity(int d);
const Matrix& pauli_x();
const Matrix& pauli_y();
const Matrix& pauli_z();

/// Kronecker product; the left factor is the earlier (leftmost, most
/// significant) subsystem throughout the library.
Matrix kron(const Matrix& a, const Matrix& b);

/// Largest absolute entry of a matrix (the library's matrix distance).
double max_abs(const Matrix& m);

/// Entrywise equality within tol (never exact float comparison).
bool approx_equal(const Matrix& a, const Matrix& b, double eps);

// --------------------------- validated state types --------------------------

class PureState;

/// Hermitian, unit-trace, positive-semidefinite operator on a tensor product
/// of subsystems. Invariants are enforced at construction.
class DensityMatrix {
public:
    DensityMatrix(std::vector<int> dims, Matrix m, const Tolerances& t = tol());

    const std::vector<int>& dims() const { return dims_; }
    const Matrix& matrix() const { return matrix_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }
    int subsystems() const { return static_cast<int>(dims_.size()); }

private:
    std::vector<int> dims_;
    Matrix matrix_;
};

/// Normalized state vector with its subsystem dimension list.
class PureState {
public:
    PureState(std::vector<int> dims, Vector amplitudes, const Tolerances& t = tol());

    const std::vector<int>& dims() const { return dims_; }
    const Vector& amplitudes() const { return amplitudes_; }
    int dim() const { return static_cast<int>(amplitudes_.size()); }

    DensityMatrix projector() const;

private:
    std::vector<int> dims_;
    Vector amplitudes_;
};

// --------------------------- reductions --------------------------------------

/// Partial trace keeping the listed subsystems (0-based), in their original
/// relative order. Throws on an empty or out-of-range keep set.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Transpose one tensor factor. The result is Hermitian but in general not
/// positive, so it is returned as a plain matrix.
Matrix partial_transpose(const DensityMatrix& rho, int subsystem);

/// All eigenvalues of a Hermitian matrix, ascending, with multiplicity.
/// Throws if the input is not square or not Hermitian within the gate.
std::vector<double> hermitian_eigenvalues(const Matrix& m, const Tolerances& t = tol());

// --------------------------- two-qubit Pauli expansion ----------------------

/// Coefficients of rho = (1/4)(I + a.sigma x I + b.I x sigma + sum c_rs
/// sigma_r x sigma_s) with the x,y,z index order.
struct BlochCoefficients {
    Eigen::Vector3d a;
    Eigen::Vector3d b;
    Eigen::Matrix3d c;
};

BlochCoefficients bloch_coefficients(const DensityMatrix& rho);

/// Inverse of bloch_coefficients; the result is not validated (coefficients
/// outside the physical set give a non-positive matrix).
Matrix bloch_reconstruct(const BlochCoefficients& bc);

}  // namespace qtel
