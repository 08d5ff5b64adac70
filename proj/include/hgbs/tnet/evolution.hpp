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

#include "hgbs/circuit.hpp"
#include "hgbs/gauss.hpp"
#include "hgbs/tnet/tensor_train.hpp"

namespace hgbs::tnet {

struct ProbabilityResult {
    double probability = 0.0;
    EvolutionStats stats;
};

/// Product state |n>, all bonds 1.
MPS fock_mps(const FockOutcome &n, int local_cutoff);

/// Product of truncated single-mode squeezed vacua. Not renormalized: the
/// tail beyond n_c stays missing from the norm.
MPS squeezed_mps(const gauss::SqueezeSpec &s, int local_cutoff);

/// Projector |n><n| as a bond-1 MPO.
MPO fock_projector_mpo(const FockOutcome &n, int local_cutoff);

/// Applies G (or G^dag when `reversed`) to sites (first_mode, first_mode+1)
/// and splits the result back by SVD under `policy`. The train is first
/// brought to mixed-canonical form around the gate, so discarded singular
/// values are true Schmidt coefficients. The gate's loss is
/// ignored here; the lossy paths go through apply_gate_mpo_adjoint.
void apply_gate_mps(MPS &psi, const circuit::Gate &g, bool reversed, const TruncationPolicy &policy,
                    EvolutionStats &stats);

/// O -> G^dag (sum_mu K_mu^dag O K_mu) G on the gate's sites, with the
/// Kraus sum on the lossy mode, then SVD recompression.
void apply_gate_mpo_adjoint(MPO &op, const circuit::Gate &g, const TruncationPolicy &policy,
                            EvolutionStats &stats);

/// |<psi| U^dag |n>|^2: evolves |n> through the time-reversed circuit and
/// overlaps with the squeezed input. Lossless circuits only.
ProbabilityResult heisenberg_probability_lossless(const circuit::Circuit &c, const FockOutcome &n,
                                                  const gauss::SqueezeSpec &s, int local_cutoff,
                                                  const TruncationPolicy &policy);

/// <psi| E*(|n><n|) |psi> with the adjoint channel swept gate by gate in
/// reverse order. Clamped to [0, 1]; the raw value is kept in the stats.
ProbabilityResult heisenberg_probability_lossy(const circuit::Circuit &c, const FockOutcome &n,
                                               const gauss::SqueezeSpec &s, int local_cutoff,
                                               const TruncationPolicy &policy);

/// Forward evolution of the squeezed input through a lossless circuit.
MPS schrodinger_evolve(const circuit::Circuit &c, const gauss::SqueezeSpec &s, int local_cutoff,
                       const TruncationPolicy &policy, EvolutionStats &stats);

/// |<n| U |psi>|^2 from the forward-evolved state.
ProbabilityResult schrodinger_probability(const circuit::Circuit &c, const FockOutcome &n,
                                          const gauss::SqueezeSpec &s, int local_cutoff,
                                          const TruncationPolicy &policy);

/// Clamps a probability computed with roundoff: values in [-1e-9, 0) become
/// 0, values above 1 become 1, anything below -1e-9 raises NumericalFailure.
double clamp_probability(double raw);

} // namespace hgbs::tnet
