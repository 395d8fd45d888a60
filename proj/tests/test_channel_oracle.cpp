#include <catch2/catch.hpp>

#include "oracles/fock_channel.hpp"
#include "phtqc/noise.hpp"

using namespace phtqc;

TEST_CASE("coherent tail mass below cutoff budget") {
    const testing::FockLossOracle oracle(25);
    for (double alpha : {0.3, 0.6, 0.84, 1.2})
        CHECK(oracle.tail_mass(alpha) < 1e-12);
}

TEST_CASE("channel decomposition matches the beam-splitter oracle") {
    const testing::FockLossOracle oracle(25);
    for (double alpha : {0.3, 0.6, 0.84, 1.2})
        for (double eta : {0.001, 0.01, 0.05, 0.1, 0.2}) {
            const auto numeric = oracle.run(alpha, eta);
            const auto closed = channel_decomposition(alpha, eta);
            INFO("alpha=" << alpha << " eta=" << eta);
            CHECK(numeric.w_psi_plus == Approx(closed.w_psi_plus).margin(1e-6));
            CHECK(numeric.w_psi_minus == Approx(closed.w_psi_minus).margin(1e-6));
            CHECK(numeric.w_phi_plus == Approx(closed.w_phi_plus).margin(1e-6));
            CHECK(numeric.w_phi_minus == Approx(closed.w_phi_minus).margin(1e-6));
        }
}

TEST_CASE("vacuum probability matches the qubit loss rate") {
    const testing::FockLossOracle oracle(25);
    for (double alpha : {0.6, 0.84})
        for (double eta : {0.01, 0.05, 0.2})
            CHECK(oracle.vacuum_probability(alpha, eta) ==
                  Approx(qubit_loss_rate(alpha, eta)).margin(1e-10));
}
