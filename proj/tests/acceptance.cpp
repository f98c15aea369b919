// Acceptance suite: one check per published criterion, one pass/fail line
// each. Criteria 5 (channel-form clause), 6 and 7 compare the protocol
// against closed forms that the exact simulation contradicts for generic
// spectra; they are implemented as stated and report the measured gap.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "qtel/experiments.hpp"
#include "test_helpers.hpp"

using namespace qtel;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Criterion {
    int id;
    std::string title;
    std::function<bool(std::string&)> run;
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
}

// ---- criterion bodies -------------------------------------------------------

bool criterion1(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(11211);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto q = rng.simplex4();
        const double theta = rng.uniform(0.0, kPi / 2.0);
        for (const auto& rec : simulate_double(input_state(theta), ResourceSpec::uncorrelated(q))) {
            worst = std::max(worst, std::abs(rec.probability - 1.0 / 16.0));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail = "max |p - 1/16| = " + fmt(worst) + " (limit 1e-12), " + fmt(secs) + " s (limit 5 s)";
    return worst < 1e-12 && secs < 5.0;
}

bool criterion2(std::string& detail) {
    Rng rng(11212);
    double worst_choi = 0.0;
    double worst_closure = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto q = rng.simplex4();
        const ResourceSpec spec = ResourceSpec::uncorrelated(q);
        const MeasurementOutcome first{bell_index(1), bell_index(1)};
        worst_choi = std::max(worst_choi, choi_distance(choi(extract_kraus(spec, first)),
                                                        choi(uncorrelated_channel(q, first))));
        const DensityMatrix rho = input_state(rng.uniform(0.0, kPi / 2.0));
        for (const auto& rec : simulate_double(rho, spec)) {
            const ApplyResult out = apply(rec.extracted_channel, rho);
            worst_closure = std::max(
                worst_closure, max_abs(out.state.matrix() - rec.conditional_state->matrix()));
        }
    }
    detail = "choi dist = " + fmt(worst_choi) + ", closure dist = " + fmt(worst_closure) +
             " (limits 1e-10)";
    return worst_choi < 1e-10 && worst_closure < 1e-10;
}

bool criterion3(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (double phi : linspace(0.0, 1.0, 11)) {
        for (double theta : linspace(0.0, kPi / 4.0, 6)) {
            const FidelityReport rep =
                averaged_fmax(ResourceSpec::uncorrelated(WernerParam(phi).spectrum()), theta);
            worst = std::max(worst, std::abs(rep.averaged_fmax - fmax_werner_closed(phi, theta)));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    detail = "66-point grid, max |F - closed| = " + fmt(worst) + " (limit 1e-9), " + fmt(secs) +
             " s (limit 60 s)";
    return worst < 1e-9 && secs < 60.0;
}

bool criterion4(std::string& detail) {
    const std::array<double, 4> q{1, 0, 0, 0};
    double worst_num = 0.0;
    double worst_literal = 0.0;
    bool unclamped = true;
    for (double theta : {0.2, 0.5, kPi / 4.0}) {
        const FidelityReport rep = averaged_fmax(ResourceSpec::uncorrelated(q), theta);
        worst_num = std::max(worst_num, std::abs(rep.averaged_fmax - 1.0));
        const double s = std::sin(2.0 * theta);
        worst_literal = std::max(worst_literal,
                                 std::abs(rep.closed_form_fmax - (1.0 + s * s)));
        if (!(rep.closed_form_fmax > 1.0) || !rep.closed_form_exceeds_one) unclamped = false;
    }
    double worst_werner = 0.0;
    for (double phi : {0.0, 0.5, 1.0}) {
        for (double theta : {0.0, kPi / 8.0, kPi / 4.0}) {
            const FidelityReport rep =
                averaged_fmax(ResourceSpec::uncorrelated(WernerParam(phi).spectrum()), theta);
            worst_werner =
                std::max(worst_werner, std::abs(rep.averaged_fmax - fmax_werner_closed(phi, theta)));
        }
    }
    detail = "numerical F = 1 within " + fmt(worst_num) + ", literal branch = 1+sin^2(2theta) within " +
             fmt(worst_literal) + " (reported unclamped: " + (unclamped ? "yes" : "no") +
             "), Werner-branch agreement " + fmt(worst_werner);
    return worst_num < 1e-10 && worst_literal < 1e-12 && unclamped && worst_werner < 1e-9;
}

bool criterion5(std::string& detail) {
    Rng rng(11215);
    double worst_form = 0.0;
    double worst_prob = 0.0;
    double worst_sum = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto q = rng.simplex4();
        const ResourceSpec spec = ResourceSpec::correlated(q);
        const MeasurementOutcome first{bell_index(1), bell_index(1)};
        worst_form = std::max(
            worst_form,
            choi_distance_normalized(choi(extract_kraus(spec, first)),
                                     choi(correlated_mixture_channel(q, bell_index(1)))));
        for (double theta : linspace(0.0, kPi / 4.0, 5)) {
            const DensityMatrix rho = input_state(theta);
            const BlochCoefficients bc = bloch_coefficients(rho);
            double sum = 0.0;
            for (const auto& rec : simulate_double(rho, spec)) {
                sum += rec.probability;
                worst_prob = std::max(worst_prob,
                                      std::abs(rec.probability -
                                               probability_closed_form(spec, rec.outcome, bc)));
            }
            worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
        }
    }
    const bool form_ok = worst_form < 1e-10;
    const bool prob_ok = worst_prob < 1e-10 && worst_sum < 1e-10;
    detail = "extracted-vs-mixture normalized choi dist = " + fmt(worst_form) +
             " (limit 1e-10; the protocol channel is a single coherent operator, the mixture "
             "form does not reproduce it); probabilities: max |p - pi/16| = " +
             fmt(worst_prob) + ", max |sum p - 1| = " + fmt(worst_sum) + " (limits 1e-10)";
    return form_ok && prob_ok;
}

bool criterion6(std::string& detail) {
    Rng rng(11216);
    double worst = 0.0;
    for (int trial = 0; trial < 11; ++trial) {
        const auto q = rng.simplex4();
        for (double theta : linspace(0.0, kPi / 4.0, 6)) {
            const FidelityReport rep = averaged_fmax(ResourceSpec::correlated(q), theta);
            worst = std::max(worst, std::abs(rep.averaged_fmax - rep.closed_form_fmax));
        }
    }
    detail = "max |F - closed| = " + fmt(worst) +
             " (limit 1e-9; the numerical average exceeds the closed form off the degenerate "
             "subfamilies)";
    return worst < 1e-9;
}

bool criterion7(std::string& detail) {
    Rng rng(11217);
    double worst_eq = 0.0;
    double worst_drop = 0.0;  // how far below sin 2theta any outcome falls
    for (int trial = 0; trial < 10; ++trial) {
        const auto q = rng.simplex4();
        for (int i = 0; i <= 8; ++i) {
            const double theta = (kPi / 4.0) * i / 8.0;
            const EntanglementReport rep =
                teleported_entanglement(ResourceSpec::correlated(q), theta);
            const double target = std::sin(2.0 * theta);
            for (const auto& oe : rep.per_outcome) {
                worst_eq = std::max(worst_eq, std::abs(oe.negativity - target));
                worst_drop = std::max(worst_drop, target - oe.negativity);
            }
        }
    }
    detail = "max |E - sin 2theta| = " + fmt(worst_eq) +
             " (limit 1e-10); max drop below input = " + fmt(worst_drop) +
             " (the conditional outputs are pure and more entangled, never less)";
    return worst_eq < 1e-10;
}

bool criterion8(std::string& detail) {
    double worst = 0.0;
    for (double phi : {0.3, 0.6, 0.9}) {
        const EntanglementReport rep = teleported_entanglement(
            ResourceSpec::uncorrelated(WernerParam(phi).spectrum()), kPi / 4.0);
        const double closed = teleported_negativity_werner_closed(phi, kPi / 4.0);
        for (const auto& oe : rep.per_outcome) {
            worst = std::max(worst, std::abs(oe.negativity - closed));
        }
    }
    detail = "matches the in-factor grouping within " + fmt(worst) +
             " (limit 1e-9); at phi=0.9 the two readings are 0.80667 vs 0.29111 and the "
             "numerical value selects the former";
    return worst < 1e-9;
}

bool criterion9(std::string& detail) {
    Rng rng(11219);

    double worst_defect = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
        const auto q = rng.simplex4();
        for (const MeasurementOutcome& o : all_outcomes()) {
            worst_defect = std::max(worst_defect, completeness_defect(uncorrelated_channel(q, o)));
            worst_defect = std::max(
                worst_defect,
                completeness_defect(extract_kraus(ResourceSpec::uncorrelated(q), o)));
        }
        for (int i = 1; i <= 4; ++i) {
            worst_defect = std::max(
                worst_defect, completeness_defect(correlated_mixture_channel(q, bell_index(i))));
        }
    }
    for (int a = 1; a <= 4; ++a) {
        for (int b = 1; b <= 4; ++b) {
            worst_defect = std::max(worst_defect, completeness_defect(pauli_pair_channel(a, b)));
        }
    }

    double worst_lu = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix rho = qtel::testing::random_density(rng, {2, 2});
        const double base = negativity(rho, 0);
        const Matrix u = kron(qtel::testing::random_su2(rng), qtel::testing::random_su2(rng));
        const DensityMatrix conj({2, 2}, u * rho.matrix() * u.adjoint());
        worst_lu = std::max(worst_lu, std::abs(negativity(conj, 0) - base));
    }

    double worst_neg = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double theta = (kPi / 2.0) * i / 49.0;
        worst_neg = std::max(
            worst_neg, std::abs(negativity(input_state(theta), 0) - std::sin(2.0 * theta)));
    }

    double worst_single = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const auto q = rng.simplex4();
        Matrix chi_m = Matrix::Zero(4, 4);
        for (int k = 1; k <= 4; ++k) {
            const Vector& b = bell_state(bell_index(k)).amplitudes();
            chi_m += q[k - 1] * (b * b.adjoint());
        }
        const DensityMatrix rho = qtel::testing::random_pure(rng, {2}).projector();
        const auto records = simulate_single(rho, DensityMatrix({2, 2}, std::move(chi_m)));
        Matrix dep = Matrix::Zero(2, 2);
        for (int k = 1; k <= 4; ++k) {
            dep += q[k - 1] * pauli_for_index(k) * rho.matrix() * pauli_for_index(k).adjoint();
        }
        worst_single =
            std::max(worst_single, max_abs(records[0].conditional_state->matrix() - dep));
    }

    detail = "defects " + fmt(worst_defect) + ", LU invariance " + fmt(worst_lu) +
             ", input negativity " + fmt(worst_neg) + ", single-qubit depolarizing " +
             fmt(worst_single) + " (limits 1e-10)";
    return worst_defect < 1e-10 && worst_lu < 1e-10 && worst_neg < 1e-10 && worst_single < 1e-10;
}

bool run_one(const Criterion& c);

bool criterion10(std::string& detail);

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list{
        {1, "uncorrelated outcome probabilities are 1/16", criterion1},
        {2, "extracted channel equals the 16-operator direct form; oracle closure", criterion2},
        {3, "Werner-family averaged fidelity matches its closed form", criterion3},
        {4, "noiseless-spectrum audit of the literal branch maximum", criterion4},
        {5, "correlated channel form and outcome probabilities", criterion5},
        {6, "correlated-family averaged fidelity matches its closed form", criterion6},
        {7, "correlated-family reversed negativity equals the input entanglement", criterion7},
        {8, "Werner reversed-negativity grouping adjudication", criterion8},
        {9, "property suites (CPTP, local-unitary invariance, single-qubit scheme)", criterion9},
        {10, "performance floor", criterion10},
    };
    return list;
}

bool criterion10(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto records =
        simulate_double(input_state(0.6), ResourceSpec::correlated({0.4, 0.3, 0.2, 0.1}));
    const double one =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = one < 1.0 && records.size() == 16;

    // the whole suite has to fit the budget; time criteria 1..9 end to end
    const auto t1 = std::chrono::steady_clock::now();
    std::string scratch;
    for (const Criterion& c : criteria()) {
        if (c.id == 10) continue;
        c.run(scratch);
    }
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    ok = ok && total < 300.0;
    detail = "simulate_double " + fmt(one) + " s (limit 1 s); criteria 1-9 total " + fmt(total) +
             " s (limit 300 s)";
    return ok;
}

bool run_one(const Criterion& c) {
    std::string detail;
    bool pass = false;
    try {
        pass = c.run(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
        pass = false;
    }
    std::printf("[%2d] %s  %s: %s\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(),
                detail.c_str());
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
            ++i;
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    now_seconds();
    bool all = true;
    for (const Criterion& c : criteria()) {
        if (only != 0 && c.id != only) continue;
        all = run_one(c) && all;
    }
    return all ? 0 : 1;
}
