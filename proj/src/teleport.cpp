#include "qtel/teleport.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace qtel {

namespace {

int product_of(const std::vector<int>& dims) {
    int d = 1;
    for (int x : dims) d *= x;
    return d;
}

// Strides of the row-major index (subsystem 0 most significant).
std::vector<int> strides_of(const std::vector<int>& dims) {
    std::vector<int> stride(dims.size(), 1);
    for (int s = static_cast<int>(dims.size()) - 2; s >= 0; --s) {
        stride[s] = stride[s + 1] * dims[s + 1];
    }
    return stride;
}

// Full-space offset of a packed row-major index over the listed subsystems.
int subsystem_offset(const std::vector<int>& subs, int packed, const std::vector<int>& dims,
                     const std::vector<int>& stride) {
    int off = 0;
    for (int idx = static_cast<int>(subs.size()) - 1; idx >= 0; --idx) {
        const int s = subs[idx];
        off += (packed % dims[s]) * stride[s];
        packed /= dims[s];
    }
    return off;
}

}  // namespace

Matrix permutation_unitary(const std::vector<int>& perm, const std::vector<int>& dims) {
    const int n = static_cast<int>(dims.size());
    if (static_cast<int>(perm.size()) != n) {
        throw std::invalid_argument("permutation_unitary: perm/dims size mismatch");
    }
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p]) {
            throw std::invalid_argument("permutation_unitary: not a bijection");
        }
        seen[p] = true;
    }
    std::vector<int> new_dims(n);
    for (int i = 0; i < n; ++i) new_dims[perm[i]] = dims[i];

    const int d = product_of(dims);
    const auto src_stride = strides_of(dims);
    const auto dst_stride = strides_of(new_dims);
    Matrix u = Matrix::Zero(d, d);
    for (int x = 0; x < d; ++x) {
        int y = 0;
        int rem = x;
        for (int i = 0; i < n; ++i) {
            const int digit = rem / src_stride[i];
            rem %= src_stride[i];
            y += digit * dst_stride[perm[i]];
        }
        u(y, x) = 1.0;
    }
    return u;
}

Matrix embed_operator(const Matrix& op, const std::vector<int>& sites,
                      const std::vector<int>& dims) {
    const int n = static_cast<int>(dims.size());
    std::vector<bool> used(n, false);
    std::vector<int> rest;
    int ds = 1;
    for (int s : sites) {
        if (s < 0 || s >= n || used[s]) {
            throw std::invalid_argument("embed_operator: bad site list");
        }
        used[s] = true;
        ds *= dims[s];
    }
    for (int s = 0; s < n; ++s) {
        if (!used[s]) rest.push_back(s);
    }
    if (op.rows() != ds || op.cols() != ds) {
        throw std::invalid_argument("embed_operator: operator size does not match sites");
    }
    int dr = 1;
    for (int s : rest) dr *= dims[s];

    const auto stride = strides_of(dims);
    const int d = product_of(dims);
    Matrix out = Matrix::Zero(d, d);
    for (int pr = 0; pr < ds; ++pr) {
        const int roff = subsystem_offset(sites, pr, dims, stride);
        for (int pc = 0; pc < ds; ++pc) {
            const Complex v = op(pr, pc);
            if (v == Complex(0, 0)) continue;
            const int coff = subsystem_offset(sites, pc, dims, stride);
            for (int t = 0; t < dr; ++t) {
                const int toff = subsystem_offset(rest, t, dims, stride);
                out(roff + toff, coff + toff) = v;
            }
        }
    }
    return out;
}

std::array<Matrix, 4> bell_projectors() {
    std::array<Matrix, 4> out;
    for (int k = 1; k <= 4; ++k) {
        const Vector& b = bell_state(bell_index(k)).amplitudes();
        out[k - 1] = b * b.adjoint();
    }
    return out;
}

namespace {

const std::vector<int> kSixQubits{2, 2, 2, 2, 2, 2};

// Relabeling that carries chi placed on slots (1,3),(2,5) and the input-shaped
// factor on (4,6) to the protocol arrangement: input on (1,2), chi on
// (3,4,5,6). Content cycles (1->3->4->1)(2->5->6->2), 0-based below.
const Matrix& correspondence_unitary() {
    static const Matrix v = permutation_unitary({2, 4, 3, 0, 5, 1}, kSixQubits);
    return v;
}

// Gather map to the layout (1,3,2,5 | 4,6) where the measured pairs are the
// leading factors.
const Matrix& gather_unitary() {
    static const Matrix g = permutation_unitary({0, 2, 1, 4, 3, 5}, kSixQubits);
    return g;
}

const Matrix& correspondence_in_layout() {
    static const Matrix w =
        gather_unitary() * correspondence_unitary() * gather_unitary().adjoint();
    return w;
}

// Eigenpairs of the resource in the gathered (1,3,2,5) layout, using the
// analytic Bell-basis decomposition (the numerical one remixes the degenerate
// q_k q_k' pairs).
std::vector<std::pair<double, Vector>> resource_eigenpairs(const ResourceSpec& spec) {
    std::vector<std::pair<double, Vector>> out;
    if (spec.kind == ResourceSpec::Kind::uncorrelated) {
        for (int k = 1; k <= 4; ++k) {
            for (int kp = 1; kp <= 4; ++kp) {
                const double w = spec.q[k - 1] * spec.q[kp - 1];
                if (w == 0.0) continue;
                Vector v(16);
                const Vector& a = bell_state(bell_index(k)).amplitudes();
                const Vector& b = bell_state(bell_index(kp)).amplitudes();
                for (int r = 0; r < 4; ++r) v.segment(r * 4, 4) = a(r) * b;
                out.emplace_back(w, std::move(v));
            }
        }
    } else {
        Vector v = Vector::Zero(16);
        for (int k = 1; k <= 4; ++k) {
            const Vector& b = bell_state(bell_index(k)).amplitudes();
            Vector bb(16);
            for (int r = 0; r < 4; ++r) bb.segment(r * 4, 4) = b(r) * b;
            v += std::sqrt(spec.q[k - 1]) * bb;
        }
        out.emplace_back(1.0, std::move(v));
    }
    return out;
}

Completeness classify(const std::vector<Matrix>& ops) {
    Matrix s = Matrix::Zero(ops.front().rows(), ops.front().cols());
    for (const Matrix& a : ops) s += a.adjoint() * a;
    return max_abs(s - identity(static_cast<int>(s.rows()))) <= tol().completeness
               ? Completeness::trace_preserving
               : Completeness::conditional_unnormalized;
}

}  // namespace

KrausChannel extract_kraus(const ResourceSpec& spec, MeasurementOutcome outcome) {
    const auto proj = bell_projectors();
    const Matrix measure_layout = kron(
        kron(proj[index_of(outcome.i) - 1], proj[index_of(outcome.i_prime) - 1]), identity(4));
    const Matrix w = measure_layout * correspondence_in_layout();

    std::vector<Matrix> ops;
    for (const auto& [weight, s] : resource_eigenpairs(spec)) {
        const double scale = 4.0 * std::sqrt(weight);
        for (int l = 1; l <= 4; ++l) {
            for (int lp = 1; lp <= 4; ++lp) {
                const Vector& a = bell_state(bell_index(l)).amplitudes();
                const Vector& b = bell_state(bell_index(lp)).amplitudes();
                Vector bra(16);
                for (int r = 0; r < 4; ++r) bra.segment(r * 4, 4) = a(r) * b;
                Matrix op = Matrix::Zero(4, 4);
                for (int m = 0; m < 16; ++m) {
                    const Complex bm = std::conj(bra(m));
                    if (bm == Complex(0, 0)) continue;
                    for (int n = 0; n < 16; ++n) {
                        const Complex sn = s(n);
                        if (sn == Complex(0, 0)) continue;
                        for (int ai = 0; ai < 4; ++ai) {
                            for (int bi = 0; bi < 4; ++bi) {
                                op(ai, bi) += bm * w(m * 4 + ai, n * 4 + bi) * sn;
                            }
                        }
                    }
                }
                op *= scale;
                if (max_abs(op) > 1e-13) ops.push_back(std::move(op));
            }
        }
    }
    const Completeness c = classify(ops);
    return KrausChannel(std::move(ops), c);
}

std::vector<OutcomeRecord> simulate_double(const DensityMatrix& rho_in, const ResourceSpec& spec) {
    if (rho_in.dims() != std::vector<int>{2, 2}) {
        throw std::invalid_argument("simulate_double: input must be a two-qubit state");
    }
    const DensityMatrix chi = resource_state(spec);
    const Matrix full = kron(rho_in.matrix(), chi.matrix());
    const auto proj = bell_projectors();

    std::vector<OutcomeRecord> records;
    records.reserve(16);
    double total = 0.0;
    for (const MeasurementOutcome& outcome : all_outcomes()) {
        // measurement operators on (1,3) and (2,5); one Kraus element per
        // outcome, kept as a loop to match the general j-summed form
        const std::vector<Matrix> elements{
            embed_operator(proj[index_of(outcome.i) - 1], {0, 2}, kSixQubits) *
            embed_operator(proj[index_of(outcome.i_prime) - 1], {1, 4}, kSixQubits)};
        Matrix post = Matrix::Zero(64, 64);
        for (const Matrix& m : elements) {
            post += m * full * m.adjoint();
        }
        const double p = post.trace().real();
        total += p;

        std::optional<DensityMatrix> conditional;
        if (p >= tol().zero_probability) {
            conditional = partial_trace(DensityMatrix(kSixQubits, post / p), {3, 5});
        }
        records.push_back(OutcomeRecord{outcome, p, std::move(conditional),
                                        extract_kraus(spec, outcome)});
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw std::runtime_error("simulate_double: outcome probabilities do not sum to 1");
    }
    return records;
}

double probability_closed_form(const ResourceSpec& spec, MeasurementOutcome outcome,
                               const BlochCoefficients& c) {
    if (spec.kind == ResourceSpec::Kind::uncorrelated) return 1.0 / 16.0;
    const auto& q = spec.q;
    const double x = std::sqrt(q[0] * q[2]) + std::sqrt(q[1] * q[3]);
    const double y = std::sqrt(q[0] * q[3]) + std::sqrt(q[1] * q[2]);
    const double z = std::sqrt(q[0] * q[1]) + std::sqrt(q[2] * q[3]);
    const double c11 = c.c(0, 0), c22 = c.c(1, 1), c33 = c.c(2, 2);
    double pi = 0.0;
    switch (product_index(index_of(outcome.i), index_of(outcome.i_prime))) {
        case 1: pi = 1.0 + 2.0 * x * c11 - 2.0 * y * c22 + 2.0 * z * c33; break;
        case 2: pi = 1.0 - 2.0 * x * c11 + 2.0 * y * c22 + 2.0 * z * c33; break;
        case 3: pi = 1.0 + 2.0 * x * c11 + 2.0 * y * c22 - 2.0 * z * c33; break;
        case 4: pi = 1.0 - 2.0 * x * c11 - 2.0 * y * c22 - 2.0 * z * c33; break;
    }
    return pi / 16.0;
}

std::array<SingleOutcomeRecord, 4> simulate_single(const DensityMatrix& rho_in,
                                                   const DensityMatrix& chi) {
    if (rho_in.dims() != std::vector<int>{2}) {
        throw std::invalid_argument("simulate_single: input must be one qubit");
    }
    if (chi.dims() != std::vector<int>{2, 2}) {
        throw std::invalid_argument("simulate_single: resource must be two qubits");
    }
    const std::vector<int> dims3{2, 2, 2};
    const Matrix full = kron(rho_in.matrix(), chi.matrix());
    const auto proj = bell_projectors();
    static const Matrix v3 = permutation_unitary({1, 2, 0}, {2, 2, 2});

    // spectral decomposition of the resource, reused by every outcome
    Eigen::SelfAdjointEigenSolver<Matrix> es(chi.matrix());
    if (es.info() != Eigen::Success) throw std::runtime_error("simulate_single: eigensolver failed");

    std::vector<SingleOutcomeRecord> records;
    records.reserve(4);
    for (int i = 1; i <= 4; ++i) {
        const Matrix m = embed_operator(proj[i - 1], {0, 1}, dims3);
        const Matrix post = m * full * m.adjoint();
        const double p = post.trace().real();

        std::optional<DensityMatrix> conditional;
        if (p >= tol().zero_probability) {
            conditional = partial_trace(DensityMatrix(dims3, post / p), {2});
        }

        const Matrix w = kron(proj[i - 1], identity(2)) * v3;
        std::vector<Matrix> ops;
        for (int mu = 0; mu < 4; ++mu) {
            const double weight = es.eigenvalues()(mu);
            if (weight < 1e-14) continue;
            const Vector s = es.eigenvectors().col(mu);
            const double scale = 2.0 * std::sqrt(weight);
            for (int l = 1; l <= 4; ++l) {
                const Vector& bra = bell_state(bell_index(l)).amplitudes();
                Matrix op = Matrix::Zero(2, 2);
                for (int mm = 0; mm < 4; ++mm) {
                    for (int nn = 0; nn < 4; ++nn) {
                        for (int ai = 0; ai < 2; ++ai) {
                            for (int bi = 0; bi < 2; ++bi) {
                                op(ai, bi) +=
                                    std::conj(bra(mm)) * w(mm * 2 + ai, nn * 2 + bi) * s(nn);
                            }
                        }
                    }
                }
                op *= scale;
                if (max_abs(op) > 1e-13) ops.push_back(std::move(op));
            }
        }
        const Completeness cls = classify(ops);
        records.push_back(SingleOutcomeRecord{bell_index(i), p, std::move(conditional),
                                              KrausChannel(std::move(ops), cls)});
    }
    return {std::move(records[0]), std::move(records[1]), std::move(records[2]),
            std::move(records[3])};
}

}  // namespace qtel
