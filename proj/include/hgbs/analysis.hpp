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

#include <cstdint>
#include <string>
#include <vector>

#include "hgbs/types.hpp"

namespace hgbs::analysis {

/// Inputs of the loss-gain cutoff criterion. `num_sources` is the number of
/// lossy gates acting as independent photon sources in the adjoint picture.
struct CutoffPolicy {
    double epsilon = 1e-6;
    double gamma = 0.0;
    int num_sources = 0;
    int num_modes = 2;
    double r = 0.0;
    int n_tilde = 0;

    void validate() const;
};

struct CutoffRecommendation {
    int local_cutoff = 0;
    double delta = 0.0;
    int num_sources = 0;
};

/// Binomial probability of x photons from Q sources at rate gamma; 0 when
/// x is outside [0, Q].
double pi_gamma(int num_sources, double gamma, int x);

/// sum_{x=1..Q} pi_gamma(x) P_M^r(n_tilde + x); M must be even.
double delta_gamma(const CutoffPolicy &policy, int n_tilde);

/// Smallest n >= n_tilde with delta_gamma(n) < epsilon.
CutoffRecommendation choose_cutoff(const CutoffPolicy &policy);

/// prod_k (n_k + 1) over the outcome.
std::uint64_t dmax_fbs(const FockOutcome &n);

/// local_cutoff^(M/2); M must be even.
std::uint64_t dmax_gbs(int local_cutoff, int num_modes);

struct BipartitionSpec {
    int left_modes = 1;
    int right_modes = 1;
    int photons = 0;

    static BipartitionSpec symmetric(int num_modes, int photons) {
        return {num_modes / 2, num_modes - num_modes / 2, photons};
    }
};

/// sum_{k=0..N} min{C(m_L - 1 + k, k), C(m_R - 1 + N - k, N - k)}.
std::uint64_t dmax_bipartite(const BipartitionSpec &spec);

/// Even/odd-N closed form of dmax_bipartite for a symmetric split of an
/// even number of modes.
std::uint64_t dmax_closed_form(int num_modes, int photons);

/// 2 (M/2 - 1) sinh^2(r).
double mode_formula_value(int num_modes, double r);

/// Nearest even integer to mode_formula_value (the distribution lives on
/// even totals).
int mode_of_distribution(int num_modes, double r);

struct ScalingRow {
    int num_modes = 0;
    double r = 0.0;
    int n_mode = 0;
    bool in_regime = false;
    /// 2^n and n^(M/2); only meaningful when in_regime.
    double d_heisenberg = 0.0;
    double d_schrodinger = 0.0;
};

/// Heisenberg vs Schroedinger bond-dimension estimates at the most likely
/// photon number, for every (M, r) pair. Rows with n_mode outside (1, M) are
/// kept but flagged as out of regime.
std::vector<ScalingRow> scaling_grid(const std::vector<int> &modes, const std::vector<double> &squeezings);

/// CSV with header M,r,n_mode,D_heisenberg,D_schrodinger,regime.
std::string scaling_csv(const std::vector<ScalingRow> &rows);

/// Exact C(n, k) as an unsigned integer; throws std::overflow_error.
std::uint64_t binomial(int n, int k);

} // namespace hgbs::analysis
