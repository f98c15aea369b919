#include "doctest.h"

#include <cmath>

#include "qtel/channels.hpp"
#include "qtel/teleport.hpp"
#include "test_helpers.hpp"

using namespace qtel;
using qtel::testing::ginibre;
using qtel::testing::random_density;

namespace {

const MeasurementOutcome kFirst{bell_index(1), bell_index(1)};

KrausChannel uniform_pauli_twirl() {
    std::vector<Matrix> ops;
    for (int a = 1; a <= 4; ++a) {
        for (int b = 1; b <= 4; ++b) {
            ops.push_back(0.25 * kron(pauli_for_index(a), pauli_for_index(b)));
        }
    }
    return KrausChannel(std::move(ops), Completeness::trace_preserving);
}

}  // namespace

TEST_SUITE("channels") {

TEST_CASE("identity channel is a fixed point") {
    Rng rng(301);
    const DensityMatrix rho = random_density(rng, {2, 2});
    const ApplyResult out = apply(identity_channel(4), rho);
    CHECK(std::abs(out.weight - 1.0) < 1e-14);
    CHECK(approx_equal(out.state.matrix(), rho.matrix(), 1e-14));
}

TEST_CASE("uniform Pauli twirl maps everything to maximally mixed") {
    Rng rng(302);
    const ApplyResult out = apply(uniform_pauli_twirl(), random_density(rng, {2, 2}));
    CHECK(std::abs(out.weight - 1.0) < 1e-12);
    CHECK(approx_equal(out.state.matrix(), identity(4) / 4.0, 1e-12));
}

TEST_CASE("direct uncorrelated channel fidelity matches the term-by-term sum") {
    const std::array<double, 4> q{0.7, 0.1, 0.1, 0.1};
    const PureState psi = input_state_vector(M_PI / 4.0);
    const ApplyResult out = apply(uncorrelated_channel(q, kFirst), psi.projector());
    CHECK(std::abs(out.weight - 1.0) < 1e-12);

    // independent oracle: sum q_k q_k' |<psi| sigma_k x sigma_k' |psi>|^2
    double oracle = 0.0;
    for (int k = 1; k <= 4; ++k) {
        for (int kp = 1; kp <= 4; ++kp) {
            const Complex amp = psi.amplitudes().adjoint() *
                                (kron(pauli_for_index(k), pauli_for_index(kp)) * psi.amplitudes());
            oracle += q[k - 1] * q[kp - 1] * std::norm(amp);
        }
    }
    const double f = fidelity_pure(psi, out.state);
    CHECK(std::abs(f - oracle) < 1e-12);
    CHECK(std::abs(f - 0.52) < 1e-12);
}

TEST_CASE("apply rejects mismatches and dead outcomes") {
    Rng rng(303);
    CHECK_THROWS_AS(apply(identity_channel(2), random_density(rng, {2, 2})),
                    std::invalid_argument);
    // single projector orthogonal to the state support
    Matrix p11 = Matrix::Zero(4, 4);
    p11(3, 3) = 1.0;
    const KrausChannel dead({p11}, Completeness::trace_decreasing);
    Vector v00 = Vector::Zero(4);
    v00(0) = 1.0;
    CHECK_THROWS_AS(apply(dead, PureState({2, 2}, v00).projector()), std::domain_error);
}

TEST_CASE("completeness defects") {
    CHECK(completeness_defect(identity_channel(4)) < 1e-15);
    Rng rng(304);
    for (int trial = 0; trial < 5; ++trial) {
        CHECK(completeness_defect(uncorrelated_channel(rng.simplex4(), kFirst)) < 1e-12);
    }
    // a lone Bell projector: sum A†A = |Phi+><Phi+|, defect max|Pi - I| = 1
    const Vector b = bell_state(bell_index(1)).amplitudes();
    const KrausChannel proj({b * b.adjoint()}, Completeness::trace_decreasing);
    CHECK(std::abs(completeness_defect(proj) - 1.0) < 1e-15);
}

TEST_CASE("kraus validation enforces the declared class") {
    const Matrix big = 1.5 * identity(2);
    CHECK_THROWS_AS(KrausChannel({big}, Completeness::trace_preserving), std::invalid_argument);
    CHECK_THROWS_AS(KrausChannel({big}, Completeness::trace_decreasing), std::invalid_argument);
    CHECK_NOTHROW(KrausChannel({big}, Completeness::conditional_unnormalized));
    CHECK_THROWS_AS(KrausChannel({}, Completeness::trace_preserving), std::invalid_argument);
}

TEST_CASE("choi of the identity channel is the unnormalized maximally entangled projector") {
    const ChoiMatrix c = choi(identity_channel(4));
    Vector omega = Vector::Zero(16);
    for (int i = 0; i < 4; ++i) omega(i * 4 + i) = 1.0;
    CHECK(approx_equal(c.matrix, omega * omega.adjoint(), 1e-15));
}

TEST_CASE("choi ignores global operator phases") {
    const KrausChannel plus({kron(pauli_z(), identity(2))}, Completeness::trace_preserving);
    const KrausChannel minus({-kron(pauli_z(), identity(2))}, Completeness::trace_preserving);
    CHECK(choi_distance(choi(plus), choi(minus)) < 1e-15);
}

TEST_CASE("choi is invariant under isometric remixing of the operators") {
    Rng rng(305);
    const std::array<double, 4> q = rng.simplex4();
    const KrausChannel chan = uncorrelated_channel(q, kFirst);
    const int m = static_cast<int>(chan.operators().size());

    // random unitary from the QR of a Ginibre matrix
    const Matrix g = ginibre(rng, m);
    const Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix u = qr.householderQ();

    std::vector<Matrix> remixed(m, Matrix::Zero(4, 4));
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            remixed[j] += u(j, k) * chan.operators()[k];
        }
    }
    const KrausChannel remixed_chan(std::move(remixed), Completeness::trace_preserving);
    CHECK(choi_distance(choi(chan), choi(remixed_chan)) < 1e-10);
}

TEST_CASE("uncorrelated channel special spectra") {
    const KrausChannel c1 = uncorrelated_channel({1, 0, 0, 0}, kFirst);
    REQUIRE(c1.operators().size() == 1);
    CHECK(approx_equal(c1.operators()[0], identity(4), 1e-15));

    const KrausChannel c2 = uncorrelated_channel({0, 1, 0, 0}, kFirst);
    REQUIRE(c2.operators().size() == 1);
    CHECK(approx_equal(c2.operators()[0], kron(pauli_z(), pauli_z()), 1e-15));
}

TEST_CASE("uncorrelated channel matches protocol extraction on a generic outcome") {
    Rng rng(306);
    const auto q = rng.simplex4();
    const MeasurementOutcome o{bell_index(2), bell_index(3)};
    const double d = choi_distance(choi(uncorrelated_channel(q, o)),
                                   choi(extract_kraus(ResourceSpec::uncorrelated(q), o)));
    CHECK(d < 1e-10);
}

TEST_CASE("correlated channel special cases") {
    const KrausChannel id = correlated_channel({1, 0, 0, 0}, kFirst);
    REQUIRE(id.operators().size() == 1);
    CHECK(approx_equal(id.operators()[0], identity(4), 1e-15));

    // every sigma_k x sigma_k fixes Phi+ up to sign, so the uniform resource
    // sends it to itself
    const DensityMatrix phi = bell_state(bell_index(1)).projector();
    const ApplyResult out = apply(correlated_channel({0.25, 0.25, 0.25, 0.25}, kFirst), phi);
    CHECK(approx_equal(out.state.matrix(), phi.matrix(), 1e-12));
}

TEST_CASE("correlated channel weight reproduces the outcome weight") {
    Rng rng(307);
    const auto q = rng.simplex4();
    const ResourceSpec spec = ResourceSpec::correlated(q);
    const DensityMatrix rho = random_density(rng, {2, 2});
    const BlochCoefficients bc = bloch_coefficients(rho);
    for (const MeasurementOutcome& o : all_outcomes()) {
        const ApplyResult out = apply(correlated_channel(q, o), rho);
        CHECK(std::abs(out.weight - 16.0 * probability_closed_form(spec, o, bc)) < 1e-12);
    }
}

TEST_CASE("correlated channel matches protocol extraction off the diagonal") {
    Rng rng(308);
    const auto q = rng.simplex4();
    const MeasurementOutcome o{bell_index(1), bell_index(2)};
    const double d = choi_distance(choi(correlated_channel(q, o)),
                                   choi(extract_kraus(ResourceSpec::correlated(q), o)));
    CHECK(d < 1e-10);
}

TEST_CASE("compose basics") {
    Rng rng(309);
    const auto q = rng.simplex4();
    const KrausChannel chan = uncorrelated_channel(q, kFirst);
    CHECK(choi_distance(choi(compose(identity_channel(4), chan)), choi(chan)) < 1e-12);

    const KrausChannel xx = pauli_pair_channel(3, 3);
    CHECK(choi_distance(choi(compose(xx, xx)), choi(identity_channel(4))) < 1e-12);
}

TEST_CASE("compose agrees with sequential application") {
    Rng rng(310);
    const auto q = rng.simplex4();
    const KrausChannel chan = uncorrelated_channel(q, kFirst);
    const KrausChannel rev = pauli_pair_channel(4, 4);
    const DensityMatrix rho = input_state(0.6);

    const DensityMatrix direct = apply(rev, apply(chan, rho).state).state;
    const DensityMatrix composed = apply(compose(rev, chan), rho).state;
    CHECK(approx_equal(direct.matrix(), composed.matrix(), 1e-12));
    const PureState psi = input_state_vector(0.6);
    CHECK(std::abs(fidelity_pure(psi, direct) - fidelity_pure(psi, composed)) < 1e-13);
}

TEST_CASE("apply preserves positivity for constructed channels") {
    Rng rng(311);
    for (int trial = 0; trial < 5; ++trial) {
        const auto q = rng.simplex4();
        const DensityMatrix rho = random_density(rng, {2, 2});
        // DensityMatrix construction inside apply re-validates hermiticity,
        // trace and positivity
        CHECK_NOTHROW(apply(uncorrelated_channel(q, kFirst), rho));
        CHECK_NOTHROW(apply(correlated_channel(q, {bell_index(2), bell_index(4)}), rho));
        CHECK_NOTHROW(apply(correlated_mixture_channel(q, bell_index(1)), rho));
    }
}

TEST_CASE("uniform uncorrelated channel commutes with Pauli conjugations") {
    const std::array<double, 4> uniform{0.25, 0.25, 0.25, 0.25};
    const KrausChannel chan = uncorrelated_channel(uniform, kFirst);
    for (int a = 1; a <= 4; ++a) {
        for (int b = 1; b <= 4; ++b) {
            const KrausChannel u = pauli_pair_channel(a, b);
            CHECK(choi_distance(choi(compose(u, chan)), choi(compose(chan, u))) < 1e-10);
        }
    }
}

}  // TEST_SUITE
