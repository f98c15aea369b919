#include "qtel/qmath.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qtel {

namespace {

int product_of(const std::vector<int>& dims) {
    int d = 1;
    for (int x : dims) d *= x;
    return d;
}

void check_dims(const std::vector<int>& dims, int d, const char* who) {
    if (dims.empty()) throw std::invalid_argument(std::string(who) + ": empty dimension list");
    for (int x : dims) {
        if (x < 2) throw std::invalid_argument(std::string(who) + ": subsystem dimension < 2");
    }
    if (product_of(dims) != d) {
        throw std::invalid_argument(std::string(who) + ": dimension list does not match matrix size");
    }
}

}  // namespace

Matrix identity(int d) { return Matrix::Identity(d, d); }

const Matrix& pauli_x() {
    static const Matrix m = (Matrix(2, 2) << 0, 1, 1, 0).finished();
    return m;
}

const Matrix& pauli_y() {
    static const Matrix m = (Matrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    return m;
}

const Matrix& pauli_z() {
    static const Matrix m = (Matrix(2, 2) << 1, 0, 0, -1).finished();
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double max_abs(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

bool approx_equal(const Matrix& a, const Matrix& b, double eps) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return max_abs(a - b) <= eps;
}

DensityMatrix::DensityMatrix(std::vector<int> dims, Matrix m, const Tolerances& t)
    : dims_(std::move(dims)), matrix_(std::move(m)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("DensityMatrix: matrix not square");
    }
    check_dims(dims_, static_cast<int>(matrix_.rows()), "DensityMatrix");
    if (max_abs(matrix_ - matrix_.adjoint()) > t.hermiticity) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    }
    if (std::abs(matrix_.trace().real() - 1.0) > t.unit_trace ||
        std::abs(matrix_.trace().imag()) > t.unit_trace) {
        throw std::invalid_argument("DensityMatrix: trace not 1 within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("DensityMatrix: eigensolver failed");
    }
    if (es.eigenvalues().minCoeff() < -t.positivity) {
        throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
    }
}

PureState::PureState(std::vector<int> dims, Vector amplitudes, const Tolerances& t)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    check_dims(dims_, static_cast<int>(amplitudes_.size()), "PureState");
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > t.state_norm) {
        throw std::invalid_argument("PureState: squared norm not 1 within tolerance");
    }
}

DensityMatrix PureState::projector() const {
    return DensityMatrix(dims_, amplitudes_ * amplitudes_.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const auto& dims = rho.dims();
    const int n = rho.subsystems();
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    std::vector<bool> kept(n, false);
    for (int s : keep) {
        if (s < 0 || s >= n) throw std::invalid_argument("partial_trace: subsystem out of range");
        if (kept[s]) throw std::invalid_argument("partial_trace: duplicate subsystem");
        kept[s] = true;
    }

    std::vector<int> keep_sorted, traced, out_dims;
    for (int s = 0; s < n; ++s) {
        if (kept[s]) {
            keep_sorted.push_back(s);
            out_dims.push_back(dims[s]);
        } else {
            traced.push_back(s);
        }
    }
    const int dk = product_of(out_dims);
    int dt = 1;
    for (int s : traced) dt *= dims[s];

    // strides of each subsystem in the row-major (subsystem 0 most
    // significant) index
    std::vector<int> stride(n, 1);
    for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

    auto offset = [&](const std::vector<int>& subs, int packed) {
        // unpack a row-major index over `subs` and map it to a full-space offset
        int off = 0;
        for (int idx = static_cast<int>(subs.size()) - 1; idx >= 0; --idx) {
            const int s = subs[idx];
            off += (packed % dims[s]) * stride[s];
            packed /= dims[s];
        }
        return off;
    };

    Matrix out = Matrix::Zero(dk, dk);
    const Matrix& m = rho.matrix();
    for (int r = 0; r < dk; ++r) {
        const int roff = offset(keep_sorted, r);
        for (int c = 0; c < dk; ++c) {
            const int coff = offset(keep_sorted, c);
            Complex sum = 0;
            for (int tpacked = 0; tpacked < dt; ++tpacked) {
                const int toff = offset(traced, tpacked);
                sum += m(roff + toff, coff + toff);
            }
            out(r, c) = sum;
        }
    }
    return DensityMatrix(out_dims, std::move(out));
}

Matrix partial_transpose(const DensityMatrix& rho, int subsystem) {
    const auto& dims = rho.dims();
    const int n = rho.subsystems();
    if (subsystem < 0 || subsystem >= n) {
        throw std::invalid_argument("partial_transpose: subsystem out of range");
    }
    std::vector<int> stride(n, 1);
    for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];
    const int d = rho.dim();
    const int ds = dims[subsystem];
    const int st = stride[subsystem];

    Matrix out = rho.matrix();
    // swap the subsystem's digit between row and column indices
    for (int r = 0; r < d; ++r) {
        const int rdig = (r / st) % ds;
        for (int c = 0; c < d; ++c) {
            const int cdig = (c / st) % ds;
            if (rdig == cdig) continue;
            const int r2 = r + (cdig - rdig) * st;
            const int c2 = c + (rdig - cdig) * st;
            out(r2, c2) = rho.matrix()(r, c);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m, const Tolerances& t) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigenvalues: not square");
    if (max_abs(m - m.adjoint()) > t.hermitian_input) {
        throw std::invalid_argument("hermitian_eigenvalues: not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
    }
    const auto& ev = es.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

namespace {

const Matrix& bloch_sigma(int r) {
    // x, y, z order of the two-qubit Pauli expansion
    switch (r) {
        case 0: return pauli_x();
        case 1: return pauli_y();
        default: return pauli_z();
    }
}

}  // namespace

BlochCoefficients bloch_coefficients(const DensityMatrix& rho) {
    if (rho.dims() != std::vector<int>{2, 2}) {
        throw std::invalid_argument("bloch_coefficients: requires a two-qubit state");
    }
    constexpr double imag_gate = 1e-10;
    BlochCoefficients bc;
    const Matrix& m = rho.matrix();
    const Matrix i2 = identity(2);
    for (int r = 0; r < 3; ++r) {
        const Complex ar = (m * kron(bloch_sigma(r), i2)).trace();
        const Complex br = (m * kron(i2, bloch_sigma(r))).trace();
        if (std::abs(ar.imag()) > imag_gate || std::abs(br.imag()) > imag_gate) {
            throw std::runtime_error("bloch_coefficients: non-real expectation");
        }
        bc.a(r) = ar.real();
        bc.b(r) = br.real();
        for (int s = 0; s < 3; ++s) {
            const Complex crs = (m * kron(bloch_sigma(r), bloch_sigma(s))).trace();
            if (std::abs(crs.imag()) > imag_gate) {
                throw std::runtime_error("bloch_coefficients: non-real expectation");
            }
            bc.c(r, s) = crs.real();
        }
    }
    return bc;
}

Matrix bloch_reconstruct(const BlochCoefficients& bc) {
    const Matrix i2 = identity(2);
    Matrix m = kron(i2, i2);
    for (int r = 0; r < 3; ++r) {
        m += bc.a(r) * kron(bloch_sigma(r), i2);
        m += bc.b(r) * kron(i2, bloch_sigma(r));
        for (int s = 0; s < 3; ++s) {
            m += bc.c(r, s) * kron(bloch_sigma(r), bloch_sigma(s));
        }
    }
    return 0.25 * m;
}

}  // namespace qtel
