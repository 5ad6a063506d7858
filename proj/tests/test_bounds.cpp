#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "petzlab/bounds.hpp"
#include "petzlab/random.hpp"
#include "test_helpers.hpp"

using namespace petzlab;
using testing::qubit_thermal_channel;
using testing::random_davies_model;

namespace {

constexpr QubitFamilyParams witness{0.3, 0.8, 1.0};

// q + e^{-t}(p0 - q) for the witness parameters at t = 1.
constexpr double witness_p1 = 0.48393972058572116;

double witness_p(double t) { return 0.3 + std::exp(-t) * 0.5; }

double d_bin(double a, double b) {
    return a * std::log(a / b) + (1.0 - a) * std::log((1.0 - a) / (1.0 - b));
}

DensityMatrix diag_state(double p) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = p;
    m(1, 1) = 1.0 - p;
    return DensityMatrix::trusted(m);
}

// Three-level chain 0 -> 1 -> 2 -> 0 with unit rates: the maximally mixed
// state is stationary but the probability current never stops circulating.
Lindbladian circulant_generator() {
    auto hop = [](int to, int from) {
        Matrix m = Matrix::Zero(3, 3);
        m(to, from) = 1.0;
        return m;
    };
    const Matrix diss =
        gkls_matrix({{1.0, hop(1, 0)}, {1.0, hop(2, 1)}, {1.0, hop(0, 2)}});
    return Lindbladian(diss, HermitianOperator(Matrix::Zero(3, 3)),
                       DensityMatrix::trusted(Matrix::Identity(3, 3) / 3.0));
}

// Qutrit whose coupling only connects the two lowest levels, so states on
// that block keep their rank under the flow.
Lindbladian blocked_qutrit() {
    Matrix h = Matrix::Zero(3, 3);
    h(1, 1) = 1.0;
    h(2, 2) = 2.3;
    Matrix x = Matrix::Zero(3, 3);
    x(0, 1) = x(1, 0) = 1.0;
    return davies_generator(make_davies(HermitianOperator(h), 1.0, {HermitianOperator(x)}, 0.8));
}

}  // namespace

TEST_CASE("qubit family matches the closed-form relaxation channel") {
    const Lindbladian lb = qubit_family_generator(witness);
    REQUIRE(lb.declared_fixed_point().has_value());
    const Matrix tau = lb.declared_fixed_point()->mat();
    CHECK(std::abs(tau(0, 0).real() - 0.3) < 1e-14);
    CHECK(std::abs(tau(1, 1).real() - 0.7) < 1e-14);

    for (double t : {0.0, 0.37, 1.0, 4.0}) {
        const Superoperator direct = qubit_thermal_channel(0.3, 1.0, t);
        CHECK((evolve(lb, t, false).mat() - direct.mat()).cwiseAbs().maxCoeff() < 1e-12);
    }

    const DensityMatrix rho1 = apply(evolve(lb, 1.0, false), qubit_family_initial(witness));
    CHECK(std::abs(rho1.mat()(0, 0).real() - witness_p1) < 1e-13);

    // The relaxation rate stays pinned to params.a on the other side of 1/2.
    const Lindbladian flipped = qubit_family_generator({0.7, 0.2, 1.0});
    for (double t : {0.5, 2.0})
        CHECK((evolve(flipped, t, false).mat() - qubit_thermal_channel(0.7, 1.0, t).mat())
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);

    CHECK_THROWS_AS(qubit_family_generator({0.0, 0.8, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(qubit_family_generator({0.3, 1.2, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(qubit_family_generator({0.3, 0.8, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(qubit_family_initial({0.3, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("entropy production against the binary divergence") {
    const Lindbladian lb = qubit_family_generator(witness);
    const DensityMatrix tau = *lb.declared_fixed_point();
    const DensityMatrix rho0 = qubit_family_initial(witness);

    CHECK(entropy_production(rho0, rho0, tau) == 0.0);
    CHECK(entropy_production(tau, tau, tau) == 0.0);

    const DensityMatrix rho1 = apply(evolve(lb, 1.0, true), rho0);
    const double expected = d_bin(0.8, 0.3) - d_bin(witness_p1, 0.3);
    CHECK(std::abs(entropy_production(rho0, rho1, tau) - expected) < 1e-12);

    SplitMix64 rng(11);
    CHECK_THROWS_AS(entropy_production(random_density(3, rng), rho1, tau),
                    std::invalid_argument);
    CHECK_THROWS_WITH_AS(entropy_production(rho0, rho1, random_pure(2, rng)),
                         doctest::Contains("smallest eigenvalue"), std::invalid_argument);
}

TEST_CASE("recovery bound on the witness qubit") {
    const Lindbladian lb = qubit_family_generator(witness);
    const DensityMatrix rho0 = qubit_family_initial(witness);

    SUBCASE("degenerate inputs sit at zero") {
        const Lemma1Report at_zero = lemma1_bound(lb, rho0, 0.0);
        CHECK(std::abs(at_zero.lhs) < 1e-12);
        CHECK(std::abs(at_zero.rhs_petz) < 1e-12);
        CHECK_FALSE(at_zero.rhs_infinite);

        const Lemma1Report fixed = lemma1_bound(lb, *lb.declared_fixed_point(), 1.3);
        CHECK(std::abs(fixed.lhs) < 1e-12);
        CHECK(std::abs(fixed.rhs_petz) < 1e-11);
    }

    SUBCASE("the recovery term collapses to the doubled evolution") {
        const Lemma1Report rep = lemma1_bound(lb, rho0, 1.0);
        CHECK(std::abs(rep.lhs - (d_bin(0.8, 0.3) - d_bin(witness_p1, 0.3))) < 1e-11);
        CHECK(rep.gap >= -1e-12);
        CHECK_FALSE(rep.rhs_infinite);
        CHECK(std::abs(rep.rhs_petz - d_bin(0.8, witness_p(2.0))) < 1e-9);
    }

    SUBCASE("a generator without a declared fixed point is rejected") {
        Matrix down = Matrix::Zero(2, 2);
        down(0, 1) = 1.0;
        const Lindbladian damping(gkls_matrix({{1.0, down}}),
                                  HermitianOperator(Matrix::Zero(2, 2)));
        CHECK_THROWS_AS(lemma1_bound(damping, rho0, 0.5), std::invalid_argument);
    }
}

TEST_CASE("entropy production scan across the default grid") {
    const Lindbladian lb = qubit_family_generator(witness);
    const DensityMatrix rho0 = qubit_family_initial(witness);

    std::vector<double> grid = default_scan_grid(1.0);
    grid.insert(grid.begin(), 0.0);
    const BoundScanResult scan = theorem1_scan(lb, rho0, grid, {2.0, 3.0}, Exec::serial);

    REQUIRE(scan.lhs.size() == grid.size());
    REQUIRE(scan.d_to_fixed.size() == grid.size());
    REQUIRE(scan.rhs.size() == 2);
    REQUIRE(scan.saturated.size() == 2);
    REQUIRE(scan.rhs[0].size() == grid.size());
    REQUIRE(scan.saturated[1].size() == grid.size());

    CHECK(std::abs(scan.lhs[0]) < 1e-12);
    CHECK(std::abs(scan.rhs[0][0]) < 1e-12);
    CHECK(scan.saturated[0][0]);

    const double total = d_bin(0.8, 0.3);
    for (size_t i = 0; i < grid.size(); ++i) {
        CHECK(scan.lhs[i] - scan.rhs[0][i] >= -1e-9);
        CHECK(std::abs(scan.lhs[i] + scan.d_to_fixed[i] - total) < 1e-12);
        if (i > 0) {
            CHECK(scan.lhs[i] >= scan.lhs[i - 1] - 1e-9);
            CHECK(scan.d_to_fixed[i] <= scan.d_to_fixed[i - 1] + 1e-9);
        }
    }
    CHECK(std::abs(scan.lhs.back() - total) < 1e-6);
    CHECK(scan.d_to_fixed.back() < 1e-6);

    bool k3_violated = false;
    for (size_t i = 0; i < grid.size(); ++i)
        if (grid[i] >= 3.0 && scan.lhs[i] - scan.rhs[1][i] < -1e-6) k3_violated = true;
    CHECK(k3_violated);

    CHECK_THROWS_AS(theorem1_scan(lb, rho0, {0.5, 0.2}, {2.0}), std::invalid_argument);
    CHECK_THROWS_AS(theorem1_scan(lb, rho0, {-0.1, 0.2}, {2.0}), std::invalid_argument);
    CHECK_THROWS_AS(theorem1_scan(lb, rho0, {0.1, 0.2}, {-2.0}), std::invalid_argument);
}

TEST_CASE("default grid spans three decades up to 50/gamma0") {
    const std::vector<double> grid = default_scan_grid(1.0);
    REQUIRE(grid.size() == 60);
    CHECK(std::abs(grid.front() - 1e-3) < 1e-15);
    CHECK(std::abs(grid.back() - 50.0) < 1e-12);
    for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);

    const std::vector<double> faster = default_scan_grid(2.0);
    for (size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(faster[i] - grid[i] / 2.0) < 1e-15 * grid[i]);

    CHECK_THROWS_AS(default_scan_grid(0.0), std::invalid_argument);
}

TEST_CASE("closed-form gap function") {
    SUBCASE("vanishes at x = 1 for every exponent") {
        for (double k : {0.0, 0.7, 1.0, 2.0, 5.0}) CHECK(std::abs(g_function(1.0, k, witness)) < 1e-13);
    }

    SUBCASE("agrees with the divergence difference") {
        for (double x : {0.05, 0.2, 0.5, 0.9}) {
            for (double k : {0.5, 1.0, 2.0, 3.0}) {
                const double pt = 0.3 + x * 0.5;
                const double pkt = 0.3 + std::pow(x, k) * 0.5;
                const double direct = d_bin(0.8, 0.3) - d_bin(pt, 0.3) - d_bin(0.8, pkt);
                CHECK(std::abs(g_function(x, k, witness) - direct) < 1e-12);
            }
        }
    }

    SUBCASE("matches the evolved generator gap at t = 1") {
        const Lindbladian lb = qubit_family_generator(witness);
        const DensityMatrix rho0 = qubit_family_initial(witness);
        const DensityMatrix rho1 = apply(evolve(lb, 1.0, true), rho0);
        const double lhs = entropy_production(rho0, rho1, *lb.declared_fixed_point());
        const double rhs = d_bin(0.8, witness_p(2.0));
        CHECK(std::abs(g_function(std::exp(-1.0), 2.0, witness) - (lhs - rhs)) < 1e-11);
    }

    SUBCASE("small-x expansion pins the quadratic coefficient") {
        const double x = 1e-3;
        const double ratio =
            g_function(x, 2.0, witness) * 2.0 * 0.3 * 0.7 / (x * x * 0.5 * 0.5);
        CHECK(ratio > 0.95);
        CHECK(ratio < 1.05);
    }

    SUBCASE("nonnegative up to k = 2, violated beyond") {
        for (double x : {1e-3, 0.01, 0.1, 0.4, 0.8, 1.0})
            for (double k : {0.0, 1.0, 1.5, 2.0}) CHECK(g_function(x, k, witness) >= -1e-14);
        CHECK(g_function(0.01, 3.0, witness) < 0.0);
        for (double x : {0.1, 0.4}) {
            double prev = g_function(x, 0.0, witness);
            for (double k : {0.5, 1.0, 1.5, 2.0}) {
                const double cur = g_function(x, k, witness);
                CHECK(cur <= prev + 1e-14);
                prev = cur;
            }
        }
    }

    SUBCASE("rejects arguments off the family") {
        CHECK_THROWS_AS(g_function(0.0, 2.0, witness), std::invalid_argument);
        CHECK_THROWS_AS(g_function(1.5, 2.0, witness), std::invalid_argument);
        CHECK_THROWS_AS(g_function(0.5, -1.0, witness), std::invalid_argument);
        CHECK_THROWS_AS(g_function(0.5, 2.0, {0.3, 1.0, 1.0}), std::invalid_argument);
    }
}

TEST_CASE("entropy production rate") {
    const Lindbladian lb = qubit_family_generator(witness);
    const DensityMatrix tau = *lb.declared_fixed_point();

    SUBCASE("zero at the fixed point") {
        const SpohnReport rep = spohn_rate(lb, tau);
        CHECK(std::abs(rep.rate) < 1e-12);
        CHECK(std::abs(rep.second_term) < 1e-12);
        CHECK_FALSE(rep.divergent);
    }

    SUBCASE("classical two-level rate in closed form") {
        const SpohnReport rep = spohn_rate(lb, diag_state(0.8));
        const double expected = (0.8 - 0.3) * std::log(0.8 * 0.7 / (0.3 * 0.2));
        CHECK(std::abs(rep.rate - expected) < 1e-10);
        CHECK(std::abs(rep.second_term) < 1e-12);
    }

    SUBCASE("matches the finite-difference divergence slope") {
        SplitMix64 rng(2024);
        const Lindbladian davies = davies_generator(random_davies_model(3, rng));
        const DensityMatrix sigma = *davies.declared_fixed_point();
        const DensityMatrix rho0 = random_density(3, rng);
        const double h = 1e-5;
        for (double t : {0.05, 0.4, 1.5}) {
            const DensityMatrix rho_t = apply(evolve(davies, t, false), rho0);
            const double before = relative_entropy(apply(evolve(davies, t - h, false), rho0),
                                                   sigma)
                                      .nats;
            const double after = relative_entropy(apply(evolve(davies, t + h, false), rho0),
                                                  sigma)
                                     .nats;
            const double slope = (before - after) / (2.0 * h);
            const SpohnReport rep = spohn_rate(davies, rho_t);
            CHECK(std::abs(rep.rate - slope) < 1e-6 * std::max(1.0, std::abs(slope)));
            CHECK(rep.rate >= -1e-9);
        }
    }

    SUBCASE("nonnegative on random states") {
        SplitMix64 rng(77);
        for (int trial = 0; trial < 10; ++trial) {
            const int d = 2 + (trial % 2);
            const Lindbladian davies = davies_generator(random_davies_model(d, rng));
            const SpohnReport rep = spohn_rate(davies, random_density(d, rng));
            CHECK(rep.rate >= -1e-9);
            CHECK(std::abs(rep.second_term) < 1e-12);
            CHECK_FALSE(rep.divergent);
        }
    }

    SUBCASE("support growth off a pure state reports divergence") {
        const SpohnReport rep = spohn_rate(lb, diag_state(1.0));
        CHECK(rep.divergent);
        CHECK(std::isinf(rep.rate));
    }

    SUBCASE("rank-deficient states inside an invariant block stay finite") {
        const Lindbladian blocked = blocked_qutrit();
        const DensityMatrix sigma = *blocked.declared_fixed_point();
        Matrix m = Matrix::Zero(3, 3);
        m(0, 0) = 0.6;
        m(1, 1) = 0.4;
        const DensityMatrix rho0 = DensityMatrix::trusted(m);
        const double h = 1e-5;
        const double t = 0.3;
        const DensityMatrix rho_t = apply(evolve(blocked, t, false), rho0);
        const double slope = (relative_entropy(apply(evolve(blocked, t - h, false), rho0),
                                               sigma)
                                  .nats -
                              relative_entropy(apply(evolve(blocked, t + h, false), rho0),
                                               sigma)
                                  .nats) /
                             (2.0 * h);
        const SpohnReport rep = spohn_rate(blocked, rho_t);
        CHECK_FALSE(rep.divergent);
        CHECK(std::abs(rep.second_term) < 1e-12);
        CHECK(std::abs(rep.rate - slope) < 1e-6 * std::max(1.0, std::abs(slope)));
    }

    SUBCASE("missing fixed point and mismatched dimensions are rejected") {
        Matrix down = Matrix::Zero(2, 2);
        down(0, 1) = 1.0;
        const Lindbladian damping(gkls_matrix({{1.0, down}}),
                                  HermitianOperator(Matrix::Zero(2, 2)));
        CHECK_THROWS_AS(spohn_rate(damping, diag_state(0.5)), std::invalid_argument);
        SplitMix64 rng(5);
        CHECK_THROWS_AS(spohn_rate(lb, random_density(3, rng)), std::invalid_argument);
    }
}

TEST_CASE("infinitesimal recovery quotient") {
    const Lindbladian lb = qubit_family_generator(witness);

    SUBCASE("vanishes identically at the fixed point") {
        const InfinitesimalReport rep =
            infinitesimal_rhs_limit(lb, *lb.declared_fixed_point(), {1e-3, 5e-4, 2.5e-4});
        for (double q : rep.quotients) CHECK(std::abs(q) < 1e-9);
        CHECK_FALSE(rep.nonvanishing_limit);
    }

    SUBCASE("full-rank states scale linearly in the step") {
        const InfinitesimalReport rep =
            infinitesimal_rhs_limit(lb, diag_state(0.8), {4e-3, 2e-3, 1e-3, 5e-4});
        REQUIRE(rep.quotients.size() == 4);
        for (size_t i = 1; i < rep.quotients.size(); ++i) {
            const double ratio = rep.quotients[i - 1] / rep.quotients[i];
            CHECK(ratio > 1.8);
            CHECK(ratio < 2.2);
        }
        CHECK(rep.slope > 0.0);
        CHECK(std::abs(rep.intercept) < 0.05 * rep.quotients.front());
        CHECK_FALSE(rep.nonvanishing_limit);
    }

    SUBCASE("pure states keep a finite limit") {
        const InfinitesimalReport rep =
            infinitesimal_rhs_limit(lb, diag_state(1.0), {1e-3, 5e-4, 2.5e-4});
        CHECK(rep.nonvanishing_limit);
        CHECK(rep.intercept > 0.1);
    }

    SUBCASE("steps must be positive") {
        CHECK_THROWS_AS(infinitesimal_rhs_limit(lb, diag_state(0.8), {1e-3, 0.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("fidelity lower bound") {
    const Lindbladian lb = qubit_family_generator(witness);
    const DensityMatrix rho0 = qubit_family_initial(witness);

    SUBCASE("zero at the fixed point") {
        const FidelityReport rep = fidelity_bound(lb, *lb.declared_fixed_point(), 0.7);
        CHECK(std::abs(rep.lhs) < 1e-12);
        CHECK(std::abs(rep.rhs_fid) < 1e-10);
    }

    SUBCASE("sits below the doubled-time divergence on the witness") {
        const FidelityReport rep = fidelity_bound(lb, rho0, 1.0);
        const double p2 = witness_p(2.0);
        const double mid = d_bin(0.8, p2);
        const double direct =
            -2.0 * std::log(std::sqrt(0.8 * p2) + std::sqrt(0.2 * (1.0 - p2)));
        CHECK(std::abs(rep.rhs_fid - direct) < 1e-10);
        CHECK(rep.rhs_fid >= 0.0);
        CHECK(rep.rhs_fid <= mid + 1e-12);
        CHECK(mid <= rep.lhs + 1e-12);
    }

    SUBCASE("holds across random thermalizing models") {
        SplitMix64 rng(404);
        for (int trial = 0; trial < 8; ++trial) {
            const int d = 2 + (trial % 2);
            const Lindbladian davies = davies_generator(random_davies_model(d, rng));
            const FidelityReport rep =
                fidelity_bound(davies, random_density(d, rng), 0.2 + 0.4 * trial);
            CHECK(rep.rhs_fid >= -1e-12);
            CHECK(rep.lhs >= rep.rhs_fid - 1e-9);
        }
    }

    SUBCASE("refuses generators without detailed balance") {
        SplitMix64 rng(9);
        const DensityMatrix rho = random_density(3, rng);
        CHECK_THROWS_WITH_AS(fidelity_bound(circulant_generator(), rho, 0.5),
                             doctest::Contains("detailed-balance"), std::runtime_error);
    }
}

TEST_CASE("rotated-recovery integral bound") {
    SUBCASE("default quadrature is normalized to a third of a ppm") {
        const double mass = quadrature_normalization({});
        CHECK(std::abs(1.0 - mass) < 1e-6);
        CHECK_THROWS_AS(quadrature_normalization({5.0, 1}), std::invalid_argument);
    }

    SUBCASE("tail mass follows the hyperbolic tangent") {
        SplitMix64 rng(31);
        const Superoperator s = testing::random_cptp(2, 3, rng);
        const UniversalReport rep =
            universal_bound_integral(s, random_density(2, rng), random_density(2, rng));
        CHECK(rep.tail_mass == 1.0 - std::tanh(std::numbers::pi * 5.0 / 2.0));
        CHECK(rep.tail_mass < 1e-6);
        CHECK(rep.truncation_budget >= 0.0);
        CHECK(rep.quad.nodes == 201);
    }

    SUBCASE("identity channel integrates to zero") {
        SplitMix64 rng(8);
        const UniversalReport rep = universal_bound_integral(
            Superoperator::identity(3), random_density(3, rng), random_density(3, rng));
        CHECK(std::abs(rep.lhs) < 1e-12);
        CHECK(std::abs(rep.rhs_int) < 1e-10);
    }

    SUBCASE("the rotation drops out for a thermalizing channel") {
        SplitMix64 rng(15);
        const Lindbladian lb = qubit_family_generator(witness);
        const DensityMatrix tau = *lb.declared_fixed_point();
        const Superoperator s = evolve(lb, 0.8, false);
        const DensityMatrix rho = random_density(2, rng);
        const DensityMatrix mapped = apply(s, rho);
        const double plain =
            -2.0 * std::log(fidelity(rho, apply(petz_recovery(s, tau), mapped)));
        const UniversalReport rep = universal_bound_integral(s, tau, rho);
        CHECK(std::abs(rep.rhs_int - quadrature_normalization(rep.quad) * plain) <
              1e-8 * std::max(1.0, plain));
        CHECK(rep.lhs >= rep.rhs_int - 1e-6 - rep.truncation_budget);
    }

    SUBCASE("holds for random channels and states") {
        SplitMix64 rng(123);
        for (int trial = 0; trial < 6; ++trial) {
            const int d = 2 + (trial % 2);
            const Superoperator s = testing::random_cptp(d, d * d, rng);
            const UniversalReport rep =
                universal_bound_integral(s, random_density(d, rng), random_density(d, rng));
            CHECK(rep.rhs_int >= -1e-9);
            CHECK(rep.lhs >= rep.rhs_int - 1e-6 - rep.truncation_budget);
        }
    }

    SUBCASE("rejects degenerate quadrature specs") {
        SplitMix64 rng(2);
        const Superoperator s = testing::random_cptp(2, 2, rng);
        const DensityMatrix a = random_density(2, rng);
        const DensityMatrix b = random_density(2, rng);
        CHECK_THROWS_AS(universal_bound_integral(s, a, b, {5.0, 1}), std::invalid_argument);
        CHECK_THROWS_AS(universal_bound_integral(s, a, b, {0.0, 201}), std::invalid_argument);
    }
}

TEST_CASE("integral representation of the logarithm perturbation") {
    SplitMix64 rng(0x51f0ab1eULL);
    const Matrix a = random_density(3, rng).mat();
    Matrix b = random_hermitian(3, rng).mat();
    b /= operator_norm(b);

    const auto resolvent_push = [&](const Matrix& pert) {
        const int nodes = 1001;
        Matrix acc = Matrix::Zero(3, 3);
        for (int i = 0; i < nodes; ++i) {
            const double x = static_cast<double>(i) / (nodes - 1);
            const Matrix r = ((1.0 - x) * a + x * Matrix::Identity(3, 3)).inverse();
            const double w = (i == 0 || i == nodes - 1) ? 0.5 : 1.0;
            acc += w * (r * pert * r);
        }
        return (acc / (nodes - 1)).eval();
    };

    const auto log_of = [](const Matrix& m) {
        return matfunc(symmetrize(m), [](double v) { return Complex(std::log(v), 0.0); },
                       "log");
    };

    const Matrix first_order = resolvent_push(b);
    const auto residual_norm = [&](double s) {
        return (log_of(a + s * b) - log_of(a) - s * first_order).norm();
    };

    const double coarse = residual_norm(1e-3);
    const double fine = residual_norm(5e-4);
    CHECK(coarse < 1e-4);
    CHECK(coarse / fine > 3.4);
    CHECK(coarse / fine < 4.6);
}

TEST_CASE("bound hierarchy across a random thermal ensemble") {
    SplitMix64 rng(0xbead5);
    for (int trial = 0; trial < 12; ++trial) {
        const int d = 2 + (trial % 2);
        const double beta = trial % 3 == 0 ? 0.5 : 1.0;
        const Lindbladian lb = davies_generator(random_davies_model(d, rng, beta));
        const DensityMatrix tau = *lb.declared_fixed_point();
        const DensityMatrix rho0 = random_density(d, rng);
        const double t = 0.2 + 0.15 * trial;

        const DensityMatrix rho_t = apply(evolve(lb, t, true), rho0);
        const DensityMatrix rho_2t = apply(evolve(lb, 2.0 * t, false), rho0);
        const double lhs = entropy_production(rho0, rho_t, tau);
        const double mid = relative_entropy(rho0, rho_2t).nats;
        const double low = -2.0 * std::log(fidelity(rho0, rho_2t));

        CHECK(lhs >= mid - 1e-9);
        CHECK(mid >= low - 1e-9);
        CHECK(low >= -1e-12);

        const Lemma1Report rep = lemma1_bound(lb, rho0, t);
        CHECK(rep.gap >= -1e-9);
        CHECK(std::abs(rep.rhs_petz - mid) < 1e-8);
    }
}
