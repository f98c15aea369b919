#include "qtel/states.hpp"

#include <cmath>
#include <stdexcept>

namespace qtel {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_spectrum(const std::array<double, 4>& q) {
    double sum = 0.0;
    for (double x : q) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw std::invalid_argument("ResourceSpec: spectrum entry outside [0,1]");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("ResourceSpec: spectrum does not sum to 1");
    }
}

}  // namespace

BellIndex bell_index(int k) {
    if (k < 1 || k > 4) throw std::invalid_argument("bell_index: index outside 1..4");
    return static_cast<BellIndex>(k);
}

const Matrix& pauli_for_index(int k) {
    switch (k) {
        case 1: {
            static const Matrix i2 = identity(2);
            return i2;
        }
        case 2: return pauli_z();
        case 3: return pauli_x();
        case 4: return pauli_y();
        default: throw std::invalid_argument("pauli_for_index: index outside 1..4");
    }
}

int product_index(int a, int b) {
    static constexpr int table[4][4] = {
        {1, 2, 3, 4},
        {2, 1, 4, 3},
        {3, 4, 1, 2},
        {4, 3, 2, 1},
    };
    if (a < 1 || a > 4 || b < 1 || b > 4) {
        throw std::invalid_argument("product_index: index outside 1..4");
    }
    return table[a - 1][b - 1];
}

std::array<MeasurementOutcome, 16> all_outcomes() {
    std::array<MeasurementOutcome, 16> out{};
    int n = 0;
    for (int i = 1; i <= 4; ++i) {
        for (int ip = 1; ip <= 4; ++ip) {
            out[n++] = MeasurementOutcome{bell_index(i), bell_index(ip)};
        }
    }
    return out;
}

ResourceSpec ResourceSpec::uncorrelated(const std::array<double, 4>& q) {
    check_spectrum(q);
    return ResourceSpec{Kind::uncorrelated, q};
}

ResourceSpec ResourceSpec::correlated(const std::array<double, 4>& q) {
    check_spectrum(q);
    return ResourceSpec{Kind::correlated, q};
}

WernerParam::WernerParam(double p) : phi(p) {
    if (!(phi >= 0.0 && phi <= 1.0)) {
        throw std::invalid_argument("WernerParam: phi outside [0,1]");
    }
}

std::array<double, 4> WernerParam::spectrum() const {
    const double lo = (1.0 - phi) / 6.0;
    return {lo, lo, lo, (1.0 + phi) / 2.0};
}

const PureState& bell_state(BellIndex index) {
    static const std::array<PureState, 4> states = [] {
        auto make = [](int a, int b, double sign) {
            Vector v = Vector::Zero(4);
            v(a) = kInvSqrt2;
            v(b) = sign * kInvSqrt2;
            return PureState({2, 2}, std::move(v));
        };
        return std::array<PureState, 4>{make(0, 3, 1.0), make(0, 3, -1.0), make(1, 2, 1.0),
                                        make(1, 2, -1.0)};
    }();
    return states[static_cast<std::size_t>(index_of(index)) - 1];
}

PureState input_state_vector(double theta) {
    Vector v = Vector::Zero(4);
    v(0) = std::cos(theta);
    v(3) = std::sin(theta);
    return PureState({2, 2}, std::move(v));
}

DensityMatrix input_state(double theta) { return input_state_vector(theta).projector(); }

DensityMatrix resource_state(const ResourceSpec& spec) {
    const std::vector<int> dims{2, 2, 2, 2};
    if (spec.kind == ResourceSpec::Kind::uncorrelated) {
        Matrix pair = Matrix::Zero(4, 4);
        for (int k = 1; k <= 4; ++k) {
            const Vector& b = bell_state(bell_index(k)).amplitudes();
            pair += spec.q[k - 1] * (b * b.adjoint());
        }
        return DensityMatrix(dims, kron(pair, pair));
    }
    Vector v = Vector::Zero(16);
    for (int k = 1; k <= 4; ++k) {
        const Vector& b = bell_state(bell_index(k)).amplitudes();
        Vector bb(16);
        for (int r = 0; r < 4; ++r) {
            bb.segment(r * 4, 4) = b(r) * b;
        }
        v += std::sqrt(spec.q[k - 1]) * bb;
    }
    return PureState(dims, std::move(v)).projector();
}

double negativity(const DensityMatrix& rho, int subsystem, const Tolerances& t) {
    const Matrix pt = partial_transpose(rho, subsystem);
    double acc = 0.0;
    for (double ev : hermitian_eigenvalues(pt, t)) {
        if (ev < -t.negativity_cutoff) acc += ev;
    }
    return std::max(0.0, -2.0 * acc);
}

double fidelity_pure(const PureState& psi, const DensityMatrix& rho) {
    if (psi.dim() != rho.dim()) throw std::invalid_argument("fidelity_pure: dimension mismatch");
    return psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
}

}  // namespace qtel
