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

#pragma once

#include <vector>

#include "hgbs/circuit.hpp"
#include "hgbs/types.hpp"

namespace hgbs::gauss {

/// Squeezing parameters r_i, one per mode. The single-mode squeezer is
/// S(r) = exp{(r/2)(a^2 - a^dag^2)}, so <a^dag a> = sinh^2(r).
struct SqueezeSpec {
    std::vector<double> r;

    static SqueezeSpec uniform(int num_modes, double r_all) {
        return SqueezeSpec{std::vector<double>(static_cast<std::size_t>(num_modes), r_all)};
    }
    int num_modes() const { return static_cast<int>(r.size()); }
    bool is_uniform() const;
    double max_r() const;
};

/// Zero-mean Gaussian state. cov(i, j) = <{z_i, z_j^dag}>/2 with
/// z = (a_1..a_M, a_1^dag..a_M^dag).
struct GaussianState {
    CMatrix cov;
    int num_modes = 0;
};

GaussianState vacuum(int num_modes);
GaussianState squeezed_vacuum_cov(const SqueezeSpec &s);

/// sigma -> T sigma T^dag with T = diag(u, conj(u)).
GaussianState propagate(const GaussianState &g, const circuit::ModeUnitary &u);

/// Pure loss with transmission eta on every mode.
GaussianState uniform_loss(const GaussianState &g, double eta);

/// Pure loss with transmission eta on a single mode.
GaussianState single_mode_loss(const GaussianState &g, int mode, double eta);

/// Gate-by-gate propagation, applying each gate's loss on its lossy output
/// mode right after the gate.
GaussianState propagate_circuit(const GaussianState &g, const circuit::Circuit &c);

/// <a_k^dag a_k>.
double mean_photon_number(const GaussianState &g, int mode);
double total_mean_photon_number(const GaussianState &g);

/// Hafnian by enumeration of all (2N-1)!! perfect matchings. Only entries
/// B(a, b) with a < b are read.
cplx hafnian(const CMatrix &B);

/// Outcome probability Haf(A_S) / (n! sqrt|det sigma_Q|) with
/// sigma_Q = sigma + 1/2 and A = [[0,1],[1,0]] (1 - sigma_Q^{-1}).
double gbs_probability(const GaussianState &g, const FockOutcome &n);

/// Probability of nu photon pairs from M equally squeezed single-mode
/// sources; M must be even.
double photon_pair_distribution(int num_modes, double r, int nu);

/// Probability of `photons` total photons from M squeezed sources: zero for
/// odd totals, otherwise photon_pair_distribution(M, r, photons / 2).
double photon_total_distribution(int num_modes, double r, int photons);

} // namespace hgbs::gauss
