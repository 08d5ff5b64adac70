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

#include "hgbs/circuit.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace hgbs::circuit {

namespace {

void validate_gate(const Gate &g, int num_modes, std::size_t index) {
    auto where = [&] { return " (gate " + std::to_string(index) + ")"; };
    if (g.first_mode < 0 || g.second_mode() >= num_modes) {
        throw std::invalid_argument("Circuit: gate modes out of range" + where());
    }
    if (!std::isfinite(g.params.theta) || !std::isfinite(g.params.varphi) ||
        !std::isfinite(g.params.phi)) {
        throw std::invalid_argument("Circuit: non-finite gate angle" + where());
    }
    if (!(g.loss_gamma >= 0.0 && g.loss_gamma < 1.0)) {
        throw std::invalid_argument("Circuit: loss_gamma must lie in [0, 1)" + where());
    }
    if (g.lossy_mode != 0 && g.lossy_mode != 1) {
        throw std::invalid_argument("Circuit: lossy_mode must be 0 or 1" + where());
    }
}

} // namespace

Circuit::Circuit(int num_modes, std::vector<Layer> layers, std::optional<std::uint64_t> seed)
    : num_modes_(num_modes), layers_(std::move(layers)), seed_(seed) {
    if (num_modes_ < 2) {
        throw std::invalid_argument("Circuit: need at least 2 modes");
    }
    std::size_t index = 0;
    for (const auto &layer : layers_) {
        std::vector<bool> used(static_cast<std::size_t>(num_modes_), false);
        for (const auto &g : layer) {
            validate_gate(g, num_modes_, index);
            for (int m : {g.first_mode, g.second_mode()}) {
                if (used[static_cast<std::size_t>(m)]) {
                    throw std::invalid_argument("Circuit: mode " + std::to_string(m) +
                                                " used twice in one layer (gate " +
                                                std::to_string(index) + ")");
                }
                used[static_cast<std::size_t>(m)] = true;
            }
            ++index;
        }
    }
}

std::size_t Circuit::gate_count() const {
    std::size_t n = 0;
    for (const auto &layer : layers_) n += layer.size();
    return n;
}

std::size_t Circuit::lossy_gate_count() const {
    std::size_t n = 0;
    for (const auto &layer : layers_)
        for (const auto &g : layer)
            if (g.is_lossy()) ++n;
    return n;
}

bool Circuit::is_uniform_loss() const {
    std::optional<double> gamma;
    for (const auto &layer : layers_) {
        for (const auto &g : layer) {
            if (!gamma) gamma = g.loss_gamma;
            else if (*gamma != g.loss_gamma) return false;
        }
    }
    return true;
}

double Circuit::max_loss_gamma() const {
    double m = 0.0;
    for (const auto &layer : layers_)
        for (const auto &g : layer) m = std::max(m, g.loss_gamma);
    return m;
}

std::optional<std::size_t> Circuit::first_lossy_gate() const {
    std::size_t index = 0;
    for (const auto &layer : layers_) {
        for (const auto &g : layer) {
            if (g.is_lossy()) return index;
            ++index;
        }
    }
    return std::nullopt;
}

Circuit build_brickwork(int num_modes, int depth, const AngleSource &angles) {
    if (num_modes < 2) {
        throw std::invalid_argument("build_brickwork: need at least 2 modes");
    }
    if (depth < 1) {
        throw std::invalid_argument("build_brickwork: depth must be positive");
    }

    std::optional<std::uint64_t> seed;
    std::mt19937_64 rng;
    const std::vector<GateParams> *explicit_angles = nullptr;
    if (const auto *s = std::get_if<std::uint64_t>(&angles)) {
        seed = *s;
        rng.seed(*s);
    } else {
        explicit_angles = &std::get<std::vector<GateParams>>(angles);
    }
    std::uniform_real_distribution<double> mixing(0.0, std::numbers::pi / 2);
    std::uniform_real_distribution<double> phase(0.0, 2 * std::numbers::pi);

    std::vector<Layer> layers;
    std::size_t next = 0;
    for (int l = 0; l < depth; ++l) {
        Layer layer;
        for (int i = l % 2; i + 1 < num_modes; i += 2) {
            Gate g;
            g.first_mode = i;
            if (explicit_angles) {
                if (next >= explicit_angles->size()) {
                    throw std::invalid_argument("build_brickwork: explicit angle list too short");
                }
                g.params = (*explicit_angles)[next];
            } else {
                g.params.theta = mixing(rng);
                g.params.varphi = phase(rng);
                g.params.phi = phase(rng);
            }
            ++next;
            layer.push_back(g);
        }
        layers.push_back(std::move(layer));
    }
    if (explicit_angles && next != explicit_angles->size()) {
        throw std::invalid_argument("build_brickwork: explicit angle list has " +
                                    std::to_string(explicit_angles->size()) +
                                    " entries, layout needs " + std::to_string(next));
    }
    return Circuit(num_modes, std::move(layers), seed);
}

Circuit with_uniform_loss(const Circuit &c, double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("with_uniform_loss: gamma must lie in [0, 1)");
    }
    if (gamma == 0.0) return c;
    auto layers = c.layers();
    for (auto &layer : layers) {
        for (auto &g : layer) {
            g.loss_gamma = gamma;
            g.lossy_mode = 1;
        }
    }
    return Circuit(c.num_modes(), std::move(layers), c.seed());
}

CMatrix gate_unitary_fock(const GateParams &g, int local_cutoff) {
    if (local_cutoff < 1) {
        throw std::invalid_argument("gate_unitary_fock: local cutoff must be >= 1");
    }
    const int d = local_cutoff + 1;
    CMatrix G = CMatrix::Zero(d * d, d * d);
    const cplx hop = std::polar(1.0, -g.varphi);

    // The generator conserves the total photon number N, so each N-block is
    // exponentiated on its own. Basis of a block: k photons in the lower mode.
    for (int total = 0; total <= 2 * local_cutoff; ++total) {
        const int k_lo = std::max(0, total - local_cutoff);
        const int k_hi = std::min(total, local_cutoff);
        const int size = k_hi - k_lo + 1;

        CMatrix H = CMatrix::Zero(size, size);
        for (int k = k_lo + 1; k <= k_hi; ++k) {
            // a_i a_{i+1}^dag e^{-i varphi}: |k, N-k> -> |k-1, N-k+1>
            const double amp = std::sqrt(double(k) * double(total - k + 1));
            H(k - 1 - k_lo, k - k_lo) += amp * hop;
            H(k - k_lo, k - 1 - k_lo) += amp * std::conj(hop);
        }
        Eigen::SelfAdjointEigenSolver<CMatrix> eig(H);
        const CVector phases = (cplx(0.0, g.theta) * eig.eigenvalues().cast<cplx>()).array().exp();
        const CMatrix block = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();

        for (int kin = k_lo; kin <= k_hi; ++kin) {
            const cplx shift = std::polar(1.0, g.phi * kin);
            const int col = kin * d + (total - kin);
            for (int kout = k_lo; kout <= k_hi; ++kout) {
                G(kout * d + (total - kout), col) = block(kout - k_lo, kin - k_lo) * shift;
            }
        }
    }
    return G;
}

CMatrix single_photon_block(const GateParams &g) {
    const CMatrix G = gate_unitary_fock(g, 1);
    // |1,0> has index 1*2+0 = 2, |0,1> has index 1.
    CMatrix u(2, 2);
    u(0, 0) = G(2, 2);
    u(1, 0) = G(1, 2);
    u(0, 1) = G(2, 1);
    u(1, 1) = G(1, 1);
    return u;
}

ModeUnitary circuit_to_mode_unitary(const Circuit &c) {
    if (auto lossy = c.first_lossy_gate()) {
        throw UnsupportedConfiguration("circuit_to_mode_unitary: gate " + std::to_string(*lossy) +
                                       " is lossy; only lossless circuits have a mode unitary");
    }
    const int M = c.num_modes();
    CMatrix u = CMatrix::Identity(M, M);
    for (const auto &layer : c.layers()) {
        for (const auto &g : layer) {
            const CMatrix block = single_photon_block(g.params);
            // Left-multiply rows (i, i+1) of u by the 2x2 block.
            const CMatrix rows = u.middleRows(g.first_mode, 2);
            u.middleRows(g.first_mode, 2) = block * rows;
        }
    }
    return ModeUnitary{std::move(u)};
}

std::vector<CMatrix> kraus_set(double gamma, int local_cutoff) {
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("kraus_set: gamma must lie in [0, 1)");
    }
    if (local_cutoff < 1) {
        throw std::invalid_argument("kraus_set: local cutoff must be >= 1");
    }
    const int d = local_cutoff + 1;
    GateParams coupling;
    coupling.theta = std::asin(std::sqrt(gamma));
    const CMatrix W = gate_unitary_fock(coupling, local_cutoff);

    // K_mu(m, n) = <m, mu| W |n, 0>, system mode lower, ancilla upper.
    std::vector<CMatrix> kraus;
    kraus.reserve(static_cast<std::size_t>(d));
    for (int mu = 0; mu < d; ++mu) {
        CMatrix K = CMatrix::Zero(d, d);
        for (int n = mu; n < d; ++n) {
            K(n - mu, n) = W((n - mu) * d + mu, n * d);
        }
        kraus.push_back(std::move(K));
    }
    return kraus;
}

} // namespace hgbs::circuit
