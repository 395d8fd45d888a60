#include <catch2/catch.hpp>

#include <cmath>

#include "phtqc/resources.hpp"

using namespace phtqc;

TEST_CASE("star cost reduces to the four-arm form at n = 1") {
    for (double ap : {0.4, 0.6, 0.84, 1.3}) {
        const double x = std::exp(-2.0 * ap * ap);
        const double four_arm = 24.0 / ((1 - x) * (1 - x) * (1 - 0.5 * x) * (1 - 0.5 * x));
        CHECK(qubits_per_star(1, ap) == Approx(four_arm).epsilon(1e-12));
    }
}

TEST_CASE("star cost approaches the deterministic count at large amplitude") {
    CHECK(qubits_per_star(1, 6.0) == Approx(24.0).margin(1e-6));
}

TEST_CASE("star cost at the PHTQC-2 operating point") {
    CHECK(qubits_per_star(2, 0.84) == Approx(213.6897650846311).epsilon(1e-9));
    CHECK(qubits_per_star(2, 0.84) == Approx(214.0).margin(0.5));
}

TEST_CASE("star cost diverges at zero amplitude") {
    CHECK_THROWS_AS(qubits_per_star(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(qubits_per_star(0, 0.84), std::domain_error);
}

TEST_CASE("lattice cost magnitudes") {
    const double n2 = lattice_cost(2, 0.84, 15, CountingMode::as_printed);
    CHECK(n2 == Approx(1408599.5257).epsilon(1e-6));
    CHECK(n2 >= 0.55e6);
    CHECK(n2 <= 2.2e6);

    const double n3 = lattice_cost(3, 0.6, 41, CountingMode::as_printed);
    CHECK(n3 == Approx(7.313239366e8).epsilon(1e-6));
    CHECK(n3 >= 2.45e8);
    CHECK(n3 <= 9.8e8);
}

TEST_CASE("explicit star counting differs by exactly six") {
    for (int n : {1, 2, 3})
        for (double ap : {0.5, 0.84})
            for (int d : {9, 15, 41}) {
                const double printed = lattice_cost(n, ap, d, CountingMode::as_printed);
                const double full = lattice_cost(n, ap, d, CountingMode::explicit_6l3);
                CHECK(full == Approx(6.0 * printed).epsilon(1e-14));
            }
}

TEST_CASE("cost monotonicity") {
    // decreasing in alpha'
    double prev = std::numeric_limits<double>::infinity();
    for (double ap = 0.3; ap <= 1.5; ap += 0.05) {
        const double c = lattice_cost(2, ap, 15, CountingMode::as_printed);
        CHECK(c < prev);
        prev = c;
    }
    // increasing in d and in n
    CHECK(lattice_cost(2, 0.84, 17, CountingMode::as_printed) >
          lattice_cost(2, 0.84, 15, CountingMode::as_printed));
    CHECK(lattice_cost(3, 0.84, 15, CountingMode::as_printed) >
          lattice_cost(2, 0.84, 15, CountingMode::as_printed));
    for (int n : {2, 3, 5})
        CHECK(qubits_per_star(n, 0.84) >= qubits_per_star(1, 0.84));
}

TEST_CASE("resource report chains extrapolation and cost") {
    HybridParams hp;
    hp.alpha = 0.84;
    hp.eta = 2.4e-3;
    hp.n_bsm = 2;
    const ResourceReport r =
        resource_report(hp, 1.2e-3, 2e-4, 9, 1e-6, CountingMode::as_printed);
    CHECK(r.d == 15);
    CHECK(r.total >= 0.55e6);
    CHECK(r.total <= 2.2e6);
    CHECK(r.alpha_prime == Approx(alpha_prime(0.84, 2.4e-3)).epsilon(1e-14));
    // echoed inputs reproduce the total bit-identically
    CHECK(r.total == qubits_per_star(r.n_bsm, r.alpha_prime) * star_count(r.d, r.mode));

    const ResourceReport r15 =
        resource_report(hp, 1.2e-3, 2e-4, 9, 1e-15, CountingMode::as_printed);
    CHECK(r15.d == 39);
    CHECK(r15.total >= 0.9e7);
    CHECK(r15.total <= 3.6e7);
}

TEST_CASE("operational eta barely moves the cost") {
    HybridParams zero{0.84, 0.0, 2};
    HybridParams op{0.84, 2.4e-3, 2};
    const double n_zero = resource_report(zero, 1.2e-3, 2e-4, 9, 1e-6).total;
    const double n_op = resource_report(op, 1.2e-3, 2e-4, 9, 1e-6).total;
    CHECK(std::fabs(n_op - n_zero) / n_zero < 0.01);
}

TEST_CASE("parity-free report reproduces the published PHTQC-3 distances") {
    HybridParams hp;
    hp.alpha = 0.6;
    hp.eta = 0.0;
    hp.n_bsm = 3;
    const auto r6 = resource_report(hp, 8.5e-4, 1.7e-4, 9, 1e-6,
                                    CountingMode::as_printed, /*parity_free=*/true);
    CHECK(r6.d == 16);
    const auto r15 = resource_report(hp, 8.5e-4, 1.7e-4, 9, 1e-15,
                                     CountingMode::as_printed, /*parity_free=*/true);
    CHECK(r15.d == 41);
}

TEST_CASE("reference rows carry the published values") {
    REQUIRE(std::size(kReferenceRows) == 2);
    CHECK(kReferenceRows[0].n_bsm == 2);
    CHECK(kReferenceRows[0].n_published_1e6 == Approx(1.1e6));
    CHECK(kReferenceRows[1].n_bsm == 3);
    CHECK(kReferenceRows[1].a != kReferenceRows[1].a_as_listed);
}
