#include "qtel/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace qtel {

namespace {

Matrix completeness_sum(const std::vector<Matrix>& ops) {
    Matrix s = Matrix::Zero(ops.front().rows(), ops.front().cols());
    for (const Matrix& a : ops) s += a.adjoint() * a;
    return s;
}

// Frozen phase patterns of the coherent correlated-channel operators, one row
// per outcome (i,i') in (i,i') order, columns k = 1..4. Extracted once from
// the protocol oracle; independent of q.
const std::array<std::array<Complex, 4>, 16>& eta_table() {
    static const Complex o{1, 0}, m{-1, 0}, pi_{0, 1}, mi{0, -1};
    static const std::array<std::array<Complex, 4>, 16> table{{
        {o, o, o, m},     // (1,1)
        {o, o, mi, mi},   // (1,2)
        {o, pi_, o, pi_}, // (1,3)
        {o, mi, pi_, m},  // (1,4)
        {o, o, mi, mi},   // (2,1)
        {o, o, m, o},     // (2,2)
        {o, pi_, mi, m},  // (2,3)
        {o, mi, o, mi},   // (2,4)
        {o, pi_, o, pi_}, // (3,1)
        {o, pi_, mi, m},  // (3,2)
        {o, m, o, o},     // (3,3)
        {o, o, pi_, pi_}, // (3,4)
        {o, mi, pi_, m},  // (4,1)
        {o, mi, o, mi},   // (4,2)
        {o, o, pi_, pi_}, // (4,3)
        {o, m, m, m},     // (4,4)
    }};
    return table;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> operators, Completeness completeness,
                           const Tolerances& t)
    : operators_(std::move(operators)), completeness_(completeness) {
    if (operators_.empty()) throw std::invalid_argument("KrausChannel: no operators");
    const Eigen::Index d = operators_.front().rows();
    for (const Matrix& a : operators_) {
        if (a.rows() != d || a.cols() != d) {
            throw std::invalid_argument("KrausChannel: operators not square of equal dimension");
        }
        if (!a.allFinite()) throw std::invalid_argument("KrausChannel: non-finite operator");
    }
    const Matrix defect = completeness_sum(operators_) - identity(static_cast<int>(d));
    switch (completeness_) {
        case Completeness::trace_preserving:
            if (max_abs(defect) > t.completeness) {
                throw std::invalid_argument("KrausChannel: trace-preserving defect too large");
            }
            break;
        case Completeness::trace_decreasing: {
            const auto ev = hermitian_eigenvalues(defect, t);
            if (ev.back() > t.completeness) {
                throw std::invalid_argument("KrausChannel: sum A†A exceeds identity");
            }
            break;
        }
        case Completeness::conditional_unnormalized:
            break;
    }
}

ApplyResult apply(const KrausChannel& channel, const DensityMatrix& rho) {
    if (channel.dim() != rho.dim()) throw std::invalid_argument("apply: dimension mismatch");
    Matrix out = Matrix::Zero(rho.dim(), rho.dim());
    for (const Matrix& a : channel.operators()) {
        out += a * rho.matrix() * a.adjoint();
    }
    const double weight = out.trace().real();
    if (weight < tol().zero_probability) {
        throw std::domain_error("apply: outcome of probability zero");
    }
    return ApplyResult{DensityMatrix(rho.dims(), out / weight), weight};
}

double completeness_defect(const KrausChannel& channel) {
    return max_abs(completeness_sum(channel.operators()) - identity(channel.dim()));
}

ChoiMatrix choi(const KrausChannel& channel) {
    const int d = channel.dim();
    Matrix c = Matrix::Zero(d * d, d * d);
    for (const Matrix& a : channel.operators()) {
        // sum_ij A|i><j|A† (x) |i><j|
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                for (int r = 0; r < d; ++r) {
                    for (int s = 0; s < d; ++s) {
                        c(r * d + i, s * d + j) += a(r, i) * std::conj(a(s, j));
                    }
                }
            }
        }
    }
    return ChoiMatrix{std::move(c)};
}

double choi_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
    if (a.matrix.rows() != b.matrix.rows()) {
        throw std::invalid_argument("choi_distance: dimension mismatch");
    }
    return max_abs(a.matrix - b.matrix);
}

double choi_distance_normalized(const ChoiMatrix& a, const ChoiMatrix& b) {
    const double ta = a.matrix.trace().real();
    const double tb = b.matrix.trace().real();
    if (ta <= 0.0 || tb <= 0.0) throw std::invalid_argument("choi_distance_normalized: zero trace");
    return max_abs(a.matrix / ta - b.matrix / tb);
}

KrausChannel identity_channel(int dim) {
    return KrausChannel({identity(dim)}, Completeness::trace_preserving);
}

KrausChannel pauli_pair_channel(int a, int b) {
    return KrausChannel({kron(pauli_for_index(a), pauli_for_index(b))},
                        Completeness::trace_preserving);
}

KrausChannel uncorrelated_channel(const std::array<double, 4>& q, MeasurementOutcome outcome) {
    const int i = index_of(outcome.i);
    const int ip = index_of(outcome.i_prime);
    std::vector<Matrix> ops;
    ops.reserve(16);
    for (int k = 1; k <= 4; ++k) {
        for (int kp = 1; kp <= 4; ++kp) {
            const double c = std::sqrt(q[k - 1] * q[kp - 1]);
            if (c == 0.0) continue;
            ops.push_back(c * kron(pauli_for_index(product_index(i, k)),
                                   pauli_for_index(product_index(ip, kp))));
        }
    }
    return KrausChannel(std::move(ops), Completeness::trace_preserving);
}

KrausChannel correlated_channel(const std::array<double, 4>& q, MeasurementOutcome outcome) {
    const int i = index_of(outcome.i);
    const int ip = index_of(outcome.i_prime);
    const auto& eta = eta_table()[(i - 1) * 4 + (ip - 1)];
    Matrix op = Matrix::Zero(4, 4);
    for (int k = 1; k <= 4; ++k) {
        op += eta[k - 1] * std::sqrt(q[k - 1]) *
              kron(pauli_for_index(product_index(i, k)), pauli_for_index(product_index(ip, k)));
    }
    return KrausChannel({std::move(op)}, Completeness::conditional_unnormalized);
}

KrausChannel correlated_mixture_channel(const std::array<double, 4>& q, BellIndex i) {
    const int ii = index_of(i);
    std::vector<Matrix> ops;
    for (int k = 1; k <= 4; ++k) {
        const double c = std::sqrt(q[k - 1]);
        if (c == 0.0) continue;
        const Matrix& s = pauli_for_index(product_index(ii, k));
        ops.push_back(c * kron(s, s));
    }
    return KrausChannel(std::move(ops), Completeness::trace_preserving);
}

KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner) {
    if (outer.dim() != inner.dim()) throw std::invalid_argument("compose: dimension mismatch");
    std::vector<Matrix> ops;
    ops.reserve(outer.operators().size() * inner.operators().size());
    for (const Matrix& b : outer.operators()) {
        for (const Matrix& a : inner.operators()) {
            ops.push_back(b * a);
        }
    }
    const auto weakest = std::max(outer.completeness(), inner.completeness(),
                                  [](Completeness x, Completeness y) {
                                      return static_cast<int>(x) < static_cast<int>(y);
                                  });
    return KrausChannel(std::move(ops), weakest);
}

}  // namespace qtel
