// Copyright 2026 The hgbs Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hgbs/analysis.hpp"
#include "hgbs/fockdense.hpp"
#include "hgbs/gauss.hpp"
#include "hgbs/tnet/evolution.hpp"
#include "support/oracles.hpp"

using namespace hgbs;
using namespace hgbs::tnet;
using std::numbers::pi;

namespace {

const TruncationPolicy kExact{};

MPS evolve_fock(const circuit::Circuit &c, const FockOutcome &n, int nc, bool reversed, EvolutionStats &stats,
                const TruncationPolicy &policy = kExact) {
    MPS psi = fock_mps(n, nc);
    auto gates = c.layers();
    if (reversed) std::reverse(gates.begin(), gates.end());
    for (const auto &layer : gates)
        for (const auto &g : layer) apply_gate_mps(psi, g, reversed, policy, stats);
    return psi;
}

} // namespace

TEST_CASE("product states") {
    const auto psi = fock_mps(FockOutcome{2, 0, 1}, 3);
    CHECK(psi.bonds() == std::vector<int>{1, 1});
    CHECK(std::abs(amplitude(psi, FockOutcome{2, 0, 1}) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(amplitude(psi, FockOutcome{1, 1, 1})) == 0.0);
    CHECK_THROWS_AS(fock_mps(FockOutcome{4}, 3), std::invalid_argument);

    const gauss::SqueezeSpec s{{0.3, 0.5}};
    const auto sq = squeezed_mps(s, 6);
    CHECK((sq.to_dense() - fockdense::dense_squeezed_vacuum(s, 6).amplitudes).norm() < 1e-15);
    CHECK(sq.norm() == doctest::Approx(fockdense::dense_squeezed_vacuum(s, 6).norm()).epsilon(1e-14));
}

TEST_CASE("contractions agree with dense linear algebra") {
    const auto c = circuit::build_brickwork(3, 3, std::uint64_t{17});
    EvolutionStats stats;
    const auto a = evolve_fock(c, FockOutcome{1, 1, 0}, 2, false, stats);
    const auto b = squeezed_mps(gauss::SqueezeSpec{{0.2, 0.3, 0.4}}, 2);
    CHECK(std::abs(overlap(a, b) - a.to_dense().dot(b.to_dense())) < 1e-14);

    const auto proj = fock_projector_mpo(FockOutcome{0, 2, 0}, 2);
    const CMatrix dense = proj.to_dense();
    CHECK(dense.trace() == cplx(1.0));
    const CVector av = a.to_dense();
    CHECK(std::abs(expectation(proj, a) - av.dot(dense * av)) < 1e-14);
}

TEST_CASE("gate updates match the dense kernel") {
    const auto c = circuit::build_brickwork(4, 4, std::uint64_t{5});
    const int nc = 3;
    const FockOutcome n{1, 0, 2, 0};
    EvolutionStats stats;
    const auto psi = evolve_fock(c, n, nc, false, stats);
    const auto dense = fockdense::dense_evolve_state(fockdense::dense_fock_state(n, nc), c);
    CHECK((psi.to_dense() - dense.amplitudes).norm() < 1e-12);
    CHECK(stats.per_layer_bonds.empty());
    CHECK(stats.flop_estimate > 0.0);
    CHECK(stats.truncation_weight < 1e-20);

    // Reversed evolution undoes forward evolution.
    auto back = psi;
    auto layers = c.layers();
    for (auto it = layers.rbegin(); it != layers.rend(); ++it)
        for (const auto &g : *it) apply_gate_mps(back, g, true, kExact, stats);
    CHECK((back.to_dense() - fockdense::dense_fock_state(n, nc).amplitudes).norm() < 1e-12);
}

TEST_CASE("truncation") {
    const auto c = circuit::build_brickwork(6, 6, std::uint64_t{2});
    const FockOutcome n{1, 1, 1, 1, 0, 0};
    EvolutionStats full;
    const auto exact = evolve_fock(c, n, 4, false, full);
    double previous_error = 1.0;
    for (int cap : {1, 2, 4, 8, 16}) {
        TruncationPolicy policy;
        policy.max_bond = cap;
        EvolutionStats stats;
        const auto psi = evolve_fock(c, n, 4, false, stats, policy);
        CHECK(psi.max_bond() <= cap);
        const double err = std::abs(1.0 - std::abs(overlap(exact, psi)) / psi.norm());
        CHECK(err <= previous_error + 1e-12);
        previous_error = err;
    }
    // Dropping singular values below 1e-12 of the largest barely moves a probability.
    const auto s = gauss::SqueezeSpec::uniform(6, 0.3);
    TruncationPolicy keep_all;
    keep_all.svd_threshold = 0.0;
    for (const auto &out : {FockOutcome{1, 1, 0, 0, 0, 0}, FockOutcome{0, 1, 1, 1, 1, 0}}) {
        const double loose = heisenberg_probability_lossless(c, out, s, 4, kExact).probability;
        const double tight = heisenberg_probability_lossless(c, out, s, 4, keep_all).probability;
        CHECK(std::abs(loose - tight) <= 1e-9);
    }
    TruncationPolicy bad;
    bad.max_bond = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.max_bond.reset();
    bad.svd_threshold = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("bond-dimension bounds") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto c = circuit::build_brickwork(6, 6, seed);
        SUBCASE("single photon stays a W state") {
            EvolutionStats stats;
            const auto psi = evolve_fock(c, FockOutcome{0, 0, 1, 0, 0, 0}, 3, true, stats);
            CHECK(stats.max_bond_seen <= 2);
            CHECK(psi.max_bond() <= 2);
        }
        SUBCASE("n photons in one mode") {
            for (int photons = 1; photons <= 4; ++photons) {
                EvolutionStats stats;
                std::vector<int> counts(6, 0);
                counts[3] = photons;
                evolve_fock(c, FockOutcome(counts), photons, true, stats);
                CHECK(stats.max_bond_seen <= photons + 1);
            }
        }
        SUBCASE("product bound for arbitrary outcomes") {
            const FockOutcome n{1, 0, 2, 1, 0, 0};
            EvolutionStats stats;
            evolve_fock(c, n, 4, true, stats);
            CHECK(static_cast<std::uint64_t>(stats.max_bond_seen) <= analysis::dmax_fbs(n));
        }
    }
}

TEST_CASE("single-photon transfer amplitudes") {
    const auto c = circuit::build_brickwork(6, 6, std::uint64_t{31});
    const CMatrix u = circuit::circuit_to_mode_unitary(c).matrix;
    for (int k = 0; k < 6; ++k) {
        std::vector<int> counts(6, 0);
        counts[static_cast<std::size_t>(k)] = 1;
        EvolutionStats stats;
        const auto psi = evolve_fock(c, FockOutcome(counts), 1, true, stats);
        for (int i = 0; i < 6; ++i) {
            std::vector<int> out(6, 0);
            out[static_cast<std::size_t>(i)] = 1;
            CHECK(std::norm(amplitude(psi, FockOutcome(out))) == doctest::Approx(std::norm(u(k, i))).epsilon(1e-12));
        }
    }
}

TEST_CASE("lossless probability in both pictures") {
    const auto c = circuit::build_brickwork(4, 4, std::uint64_t{13});
    const gauss::SqueezeSpec s = gauss::SqueezeSpec::uniform(4, 0.4);
    const int nc = 6;
    const auto dense = fockdense::dense_evolve_state(fockdense::dense_squeezed_vacuum(s, nc), c);
    const auto g = gauss::propagate_circuit(gauss::squeezed_vacuum_cov(s), c);
    for (int total : {0, 2, 4}) {
        for (const auto &n : outcomes_with_total(4, total)) {
            const double h = heisenberg_probability_lossless(c, n, s, nc, kExact).probability;
            const double sch = schrodinger_probability(c, n, s, nc, kExact).probability;
            CHECK(std::abs(h - sch) < 1e-12);
            CHECK(std::abs(h - fockdense::dense_probability(dense, n)) < 1e-12);
            CHECK(std::abs(h - gauss::gbs_probability(g, n)) < 1e-10);
        }
    }
    const auto lossy = circuit::with_uniform_loss(c, 0.1);
    CHECK_THROWS_AS(heisenberg_probability_lossless(lossy, FockOutcome{0, 0, 0, 0}, s, nc, kExact),
                    UnsupportedConfiguration);
    CHECK_THROWS_AS(schrodinger_probability(lossy, FockOutcome{0, 0, 0, 0}, s, nc, kExact), UnsupportedConfiguration);
    CHECK_THROWS_AS(heisenberg_probability_lossless(c, FockOutcome{0, 0, 0}, s, nc, kExact), std::invalid_argument);
}

TEST_CASE("adjoint channel on the operator train") {
    SUBCASE("matches the dense adjoint map") {
        const auto c = circuit::with_uniform_loss(circuit::build_brickwork(2, 3, std::uint64_t{4}), 0.25);
        const int nc = 3;
        for (const auto &n : outcomes_up_to_total(2, 3)) {
            MPO op = fock_projector_mpo(n, nc);
            const CMatrix start = op.to_dense();
            EvolutionStats stats;
            auto layers = c.layers();
            for (auto it = layers.rbegin(); it != layers.rend(); ++it)
                for (const auto &g : *it) apply_gate_mpo_adjoint(op, g, kExact, stats);
            CHECK((op.to_dense() - fockdense::dense_adjoint_evolve_operator(start, 2, nc, c)).norm() < 1e-12);
        }
    }
    SUBCASE("vacuum projector under pure loss") {
        // Identity gate with loss on mode 0: |0><0| -> sum_n gamma^n |n><n|.
        circuit::Gate g;
        g.loss_gamma = 0.3;
        g.lossy_mode = 0;
        MPO op = fock_projector_mpo(FockOutcome{0, 0}, 4);
        EvolutionStats stats;
        apply_gate_mpo_adjoint(op, g, kExact, stats);
        const CMatrix dense = op.to_dense();
        for (int n = 0; n <= 4; ++n) CHECK(dense(n, n).real() == doctest::Approx(std::pow(0.3, n)).epsilon(1e-13));
        CHECK((dense - CMatrix(dense.diagonal().asDiagonal())).norm() < 1e-14);
    }
    SUBCASE("lossy probability against the density matrix") {
        const auto c = circuit::with_uniform_loss(circuit::build_brickwork(3, 3, std::uint64_t{2}), 0.05);
        const gauss::SqueezeSpec s = gauss::SqueezeSpec::uniform(3, 0.4);
        const int nc = 4;
        const auto rho = fockdense::dense_evolve_density(
            fockdense::to_density(fockdense::dense_squeezed_vacuum(s, nc)), c);
        for (const auto &n : outcomes_up_to_total(3, 3)) {
            const auto res = heisenberg_probability_lossy(c, n, s, nc, kExact);
            CHECK(std::abs(res.probability - fockdense::dense_probability(rho, n)) < 1e-12);
            REQUIRE(res.stats.raw_probability.has_value());
            CHECK_FALSE(res.stats.recommended_cutoff.has_value());
        }
    }
    SUBCASE("recommended cutoff for even M and uniform squeezing") {
        const auto c = circuit::with_uniform_loss(circuit::build_brickwork(4, 2, std::uint64_t{2}), 0.05);
        const auto res = heisenberg_probability_lossy(c, FockOutcome{1, 1, 0, 0}, gauss::SqueezeSpec::uniform(4, 0.4), 4, kExact);
        REQUIRE(res.stats.recommended_cutoff.has_value());
        CHECK(*res.stats.recommended_cutoff >= 2);
    }
}

TEST_CASE("clamping") {
    CHECK(clamp_probability(0.3) == 0.3);
    CHECK(clamp_probability(-5e-10) == 0.0);
    CHECK(clamp_probability(1.0 + 1e-12) == 1.0);
    CHECK_THROWS_AS(clamp_probability(-1e-6), NumericalFailure);
}

TEST_CASE("stats serialize") {
    EvolutionStats s;
    s.record_bond(3);
    s.per_layer_bonds = {2, 3};
    const auto j = to_json(s);
    CHECK(j["max_bond_seen"] == 3);
    CHECK(j["per_layer_bonds"].size() == 2);
}
