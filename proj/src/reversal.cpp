#include "qtel/reversal.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace qtel {

Matrix pauli_pair_matrix(PauliPair p) {
    return kron(pauli_for_index(p.first), pauli_for_index(p.second));
}

namespace {

PureState dominant_eigenvector(const DensityMatrix& rho, double purity_gate) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("optimal_reversal: eigensolver failed");
    }
    const Eigen::Index top = rho.dim() - 1;  // ascending order
    if (std::abs(es.eigenvalues()(top) - 1.0) > purity_gate) {
        throw std::invalid_argument("optimal_reversal: input is not a pure-state projector");
    }
    Vector v = es.eigenvectors().col(top);
    v /= v.norm();
    return PureState(rho.dims(), std::move(v));
}

double sin2sq(double theta) {
    const double s = std::sin(2.0 * theta);
    return s * s;
}

}  // namespace

ReversalResult optimal_reversal(const KrausChannel& channel, const DensityMatrix& pure_input,
                                const Tolerances& t) {
    if (channel.dim() != pure_input.dim()) {
        throw std::invalid_argument("optimal_reversal: dimension mismatch");
    }
    const PureState psi = dominant_eigenvector(pure_input, 1e-8);
    const DensityMatrix out = apply(channel, pure_input).state;

    PauliPair best{1, 1};
    double best_f = -1.0;
    for (int a = 1; a <= 4; ++a) {
        for (int b = 1; b <= 4; ++b) {
            const Matrix u = pauli_pair_matrix({a, b});
            const Matrix reversed = u * out.matrix() * u.adjoint();
            const double f = psi.amplitudes().dot(reversed * psi.amplitudes()).real();
            if (f > best_f + t.fidelity_tie) {
                best_f = f;
                best = {a, b};
            }
        }
    }
    return ReversalResult{best, best_f};
}

FidelityReport averaged_fmax(const ResourceSpec& spec, double theta) {
    const DensityMatrix rho = input_state(theta);
    const auto records = simulate_double(rho, spec);

    FidelityReport report;
    double averaged = 0.0;
    for (const OutcomeRecord& rec : records) {
        if (rec.probability < tol().zero_probability) continue;  // nothing teleported
        const ReversalResult rr = optimal_reversal(rec.extracted_channel, rho);
        report.per_outcome.push_back(
            OutcomeFidelity{rec.outcome, rr.pair, rr.fidelity, rec.probability});
        averaged += rec.probability * rr.fidelity;
    }
    report.averaged_fmax = averaged;
    report.closed_form_fmax = spec.kind == ResourceSpec::Kind::uncorrelated
                                  ? fmax_uncorrelated_closed(spec.q, theta)
                                  : fmax_correlated_closed(spec.q, theta);
    report.discrepancy = std::abs(report.averaged_fmax - report.closed_form_fmax);
    report.closed_form_exceeds_one = report.closed_form_fmax > 1.0 + 1e-9;
    return report;
}

std::array<double, 6> fmax_uncorrelated_branches(const std::array<double, 4>& q, double theta) {
    const double s2 = sin2sq(theta);
    const double q1 = q[0], q2 = q[1], q3 = q[2], q4 = q[3];
    const double front12 = (q1 + q2) * (q1 + q2);
    const double front34 = (q3 + q4) * (q3 + q4);
    const double even = q1 * q1 - 2.0 * q3 * q4 + q2 * q2;
    const double odd = q3 * q3 - 2.0 * q1 * q2 + q4 * q4;
    const double cross = (q1 + q2) * (q3 + q4);
    const double tilt = (q1 - q2) * (q3 - q4);
    return {
        front12 + even * s2, front12 + odd * s2,  front34 + odd * s2,
        front34 + even * s2, cross + tilt * s2,   cross - tilt * s2,
    };
}

double fmax_uncorrelated_closed(const std::array<double, 4>& q, double theta) {
    const auto b = fmax_uncorrelated_branches(q, theta);
    double m = b[0];
    for (double x : b) m = std::max(m, x);
    return m;
}

double fmax_werner_closed(double phi, double theta) {
    return ((2.0 + phi) * (2.0 + phi) - (1.0 - phi) * (1.0 + 2.0 * phi) * sin2sq(theta)) / 9.0;
}

double fmax_correlated_closed(const std::array<double, 4>& q, double theta) {
    const double s2 = sin2sq(theta);
    const double a = q[0] + q[1];
    const double b = q[2] + q[3];
    return std::max(a + b * s2, b + a * s2);
}

EntanglementReport teleported_entanglement(const ResourceSpec& spec, double theta) {
    const DensityMatrix rho = input_state(theta);
    const auto records = simulate_double(rho, spec);

    EntanglementReport report;
    report.input_negativity = negativity(rho, 0);
    double avg = 0.0;
    double mass = 0.0;
    for (const OutcomeRecord& rec : records) {
        if (rec.probability < tol().zero_probability) continue;
        const ReversalResult rr = optimal_reversal(rec.extracted_channel, rho);
        const Matrix u = pauli_pair_matrix(rr.pair);
        const DensityMatrix out = apply(rec.extracted_channel, rho).state;
        const DensityMatrix reversed(out.dims(), u * out.matrix() * u.adjoint());
        const double neg = negativity(reversed, 0);
        report.per_outcome.push_back(OutcomeEntanglement{rec.outcome, neg, rec.probability});
        avg += rec.probability * neg;
        mass += rec.probability;
    }
    report.average = mass > 0.0 ? avg / mass : 0.0;
    return report;
}

double teleported_negativity_werner_closed(double phi, double theta) {
    const double g = 1.0 + 2.0 * phi;
    return std::max(0.0, (g * g * std::sin(2.0 * theta) - 2.0 * (2.0 - phi - phi * phi)) / 9.0);
}

double teleported_negativity_werner_closed_alt(double phi, double theta) {
    const double g = 1.0 + 2.0 * phi;
    return std::max(0.0, g * g * std::sin(2.0 * theta) / 9.0 - 2.0 * (2.0 - phi - phi * phi));
}

}  // namespace qtel
