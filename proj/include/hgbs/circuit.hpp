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
#include <optional>
#include <variant>
#include <vector>

#include "hgbs/types.hpp"

namespace hgbs::circuit {

/// Angles of one two-mode gate, in radians. The beamsplitter mixes with
/// angle `theta` and phase `varphi`; `phi` is the phase shift applied to the
/// lower mode of the pair before the beamsplitter.
struct GateParams {
    double theta = 0.0;
    double varphi = 0.0;
    double phi = 0.0;

    bool operator==(const GateParams &) const = default;
};

/// A gate on adjacent modes (first_mode, first_mode + 1). `loss_gamma` is
/// the probability that a photon on the designated output mode is lost
/// after the gate; `lossy_mode` is 0 for the lower and 1 for the upper mode.
struct Gate {
    int first_mode = 0;
    GateParams params;
    double loss_gamma = 0.0;
    int lossy_mode = 1;

    int second_mode() const { return first_mode + 1; }
    int lossy_mode_index() const { return first_mode + lossy_mode; }
    bool is_lossy() const { return loss_gamma > 0.0; }

    bool operator==(const Gate &) const = default;
};

using Layer = std::vector<Gate>;

/**
 * Layered interferometer on M modes. Construction validates every gate
 * (adjacent in-range modes, finite angles, 0 <= gamma < 1) and that no mode
 * is touched twice within a layer.
 */
class Circuit {
  public:
    Circuit(int num_modes, std::vector<Layer> layers, std::optional<std::uint64_t> seed = {});

    int num_modes() const { return num_modes_; }
    const std::vector<Layer> &layers() const { return layers_; }
    std::size_t depth() const { return layers_.size(); }
    const std::optional<std::uint64_t> &seed() const { return seed_; }

    std::size_t gate_count() const;
    std::size_t lossy_gate_count() const;
    bool is_lossless() const { return lossy_gate_count() == 0; }
    /// True when every gate carries the same loss_gamma (lossless included).
    bool is_uniform_loss() const;
    double max_loss_gamma() const;

    /// Index (flattened over layers) of the first lossy gate, if any.
    std::optional<std::size_t> first_lossy_gate() const;

    bool operator==(const Circuit &) const = default;

  private:
    int num_modes_;
    std::vector<Layer> layers_;
    std::optional<std::uint64_t> seed_;
};

/// Angles drawn from a seeded stream, or given explicitly in gate order.
using AngleSource = std::variant<std::uint64_t, std::vector<GateParams>>;

/// Brickwork layout: layers 1, 3, ... hold gates on (0,1), (2,3), ...;
/// layers 2, 4, ... on (1,2), (3,4), .... Random angles: theta in
/// [0, pi/2), varphi and phi in [0, 2pi). All gates are lossless.
Circuit build_brickwork(int num_modes, int depth, const AngleSource &angles);

/// Copy of `c` with every gate's loss set to `gamma` on the upper mode.
Circuit with_uniform_loss(const Circuit &c, double gamma);

/// Matrix of G = U(theta, varphi) P(phi) on the two-mode space truncated to
/// n_c photons per mode. Basis index is p_lower * (n_c + 1) + p_upper.
/// Blocks of fixed total photon number N <= n_c are exact; blocks with
/// N > n_c exponentiate the truncated generator, so G stays unitary.
CMatrix gate_unitary_fock(const GateParams &g, int local_cutoff);

/// 2x2 single-photon block of a gate; column j is the image of a photon in
/// mode first_mode + j.
CMatrix single_photon_block(const GateParams &g);

struct ModeUnitary {
    CMatrix matrix;
};

/// Transfer matrix u with U a_k^dag U^dag = sum_i u(i, k) a_i^dag.
ModeUnitary circuit_to_mode_unitary(const Circuit &c);

/// Kraus operators K_0..K_{n_c} of pure loss with probability gamma, from
/// the vacuum-ancilla beamsplitter at angle asin(sqrt(gamma)).
std::vector<CMatrix> kraus_set(double gamma, int local_cutoff);

} // namespace hgbs::circuit
