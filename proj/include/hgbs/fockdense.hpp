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

#include <cstddef>
#include <span>

#include "hgbs/circuit.hpp"
#include "hgbs/gauss.hpp"
#include "hgbs/types.hpp"

// Brute-force Fock-space simulation for a handful of modes. Basis states are
// little-endian: index = sum_k n_k (n_c + 1)^k, so mode 0 varies fastest.
namespace hgbs::fockdense {

/// Largest (n_c + 1)^M a dense state may have.
inline constexpr std::size_t kMaxDenseDimension = 10'000'000;
/// Largest dimension a dense density matrix or operator may have.
inline constexpr std::size_t kMaxDensityDimension = 10'000;

struct DenseState {
    CVector amplitudes;
    int num_modes = 0;
    int local_cutoff = 0;

    double norm() const { return amplitudes.norm(); }
};

struct DenseDensity {
    CMatrix matrix;
    int num_modes = 0;
    int local_cutoff = 0;

    double trace() const { return matrix.trace().real(); }
};

/// (n_c + 1)^M; throws ResourceError above kMaxDenseDimension.
std::size_t dense_dimension(int num_modes, int local_cutoff);
std::size_t basis_index(const FockOutcome &n, int local_cutoff);

/// S(r)|0> on photon numbers 0..n_c: exponentiates (r/2)(a^2 - a^dag^2) on a
/// space padded by 20 levels (at least 60 in total) and truncates. The
/// vector is not renormalized, its squared norm falls short of one by the
/// tail mass beyond n_c.
CVector single_mode_squeezed_vector(double r, int local_cutoff);

/// Probability of more than n_c photons in S(r)|0>.
double squeezed_tail_mass(double r, int local_cutoff);

DenseState dense_squeezed_vacuum(const gauss::SqueezeSpec &s, int local_cutoff);
DenseState dense_fock_state(const FockOutcome &n, int local_cutoff);
DenseDensity to_density(const DenseState &psi);

/// Applies a (n_c+1)^2-square operator to modes (mode, mode + 1) of every
/// amplitude vector in place. OpenMP-parallel over the untouched modes.
void apply_two_mode(std::span<cplx> amplitudes, int num_modes, int local_cutoff, int mode,
                    const CMatrix &op);
/// Serial reference for apply_two_mode.
void apply_two_mode_serial(std::span<cplx> amplitudes, int num_modes, int local_cutoff, int mode,
                           const CMatrix &op);
/// Applies a (n_c+1)-square operator to one mode in place.
void apply_single_mode(std::span<cplx> amplitudes, int num_modes, int local_cutoff, int mode,
                       const CMatrix &op);

/// Lossless state-vector evolution; lossy gates raise UnsupportedConfiguration.
DenseState dense_evolve_state(const DenseState &psi, const circuit::Circuit &c);

/// rho -> sum_mu K_mu G rho G^dag K_mu^dag gate by gate, Kraus on the lossy mode.
DenseDensity dense_evolve_density(const DenseDensity &rho, const circuit::Circuit &c);

/// Heisenberg dual of dense_evolve_density: gates in reverse order, each
/// O -> G^dag (sum_mu K_mu^dag O K_mu) G.
CMatrix dense_adjoint_evolve_operator(const CMatrix &op, int num_modes, int local_cutoff,
                                      const circuit::Circuit &c);

double dense_probability(const DenseState &psi, const FockOutcome &n);
double dense_probability(const DenseDensity &rho, const FockOutcome &n);

/// <a_k^dag a_k>
double dense_mean_photon_number(const DenseDensity &rho, int mode);

} // namespace hgbs::fockdense
