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

#include <optional>
#include <vector>

#include <json.hpp>

#include "hgbs/types.hpp"

namespace hgbs::tnet {

/// Rank-3 site tensor (left bond, physical, right bond), stored row-major so
/// it reshapes for free into (left*phys) x right or left x (phys*right).
struct SiteTensor {
    int left = 1;
    int phys = 1;
    int right = 1;
    std::vector<cplx> data;

    SiteTensor() = default;
    SiteTensor(int left_bond, int physical, int right_bond)
        : left(left_bond), phys(physical), right(right_bond),
          data(static_cast<std::size_t>(left_bond) * physical * right_bond, cplx(0.0, 0.0)) {}

    cplx &operator()(int l, int p, int r) {
        return data[(static_cast<std::size_t>(l) * phys + p) * right + r];
    }
    const cplx &operator()(int l, int p, int r) const {
        return data[(static_cast<std::size_t>(l) * phys + p) * right + r];
    }
};

/// Singular values with sigma_i / sigma_max < svd_threshold are dropped,
/// then at most max_bond are kept.
struct TruncationPolicy {
    std::optional<int> max_bond;
    double svd_threshold = 1e-12;

    void validate() const;
};

struct EvolutionStats {
    int max_bond_seen = 1;
    /// Largest bond of the train after each layer.
    std::vector<int> per_layer_bonds;
    /// Sum of discarded squared singular values.
    double truncation_weight = 0.0;
    /// Sum over two-site updates of chi^3 chi_o^2 n_c^2 with chi_o = n_c^2.
    double flop_estimate = 0.0;
    /// Unclamped probability from the lossy path.
    std::optional<double> raw_probability;
    /// Cutoff suggested by the loss-gain criterion, when it applies.
    std::optional<int> recommended_cutoff;

    void record_bond(int bond) { max_bond_seen = std::max(max_bond_seen, bond); }
};

nlohmann::ordered_json to_json(const EvolutionStats &s);

/// Matrix product state over M modes with local dimension n_c + 1.
class MPS {
  public:
    MPS(std::vector<SiteTensor> sites, int local_cutoff);

    int num_sites() const { return static_cast<int>(sites_.size()); }
    int local_cutoff() const { return local_cutoff_; }
    int local_dim() const { return local_cutoff_ + 1; }
    const std::vector<SiteTensor> &sites() const { return sites_; }
    /// Mutable access forgets the orthogonality center.
    std::vector<SiteTensor> &sites() {
        center_.reset();
        return sites_;
    }

    /// Brings the train to mixed-canonical form around `site`: sites to the
    /// left become left-isometric, sites to the right right-isometric.
    void move_center(int site);
    /// Declares `site` the orthogonality center after an external update that
    /// kept the other sites isometric.
    void set_center(int site) { center_ = site; }
    const std::optional<int> &center() const { return center_; }

    /// Bond dimensions chi_1..chi_{M-1}.
    std::vector<int> bonds() const;
    int max_bond() const;

    double norm() const;
    /// Little-endian dense amplitude vector (mode 0 fastest).
    CVector to_dense() const;

  private:
    std::vector<SiteTensor> sites_;
    int local_cutoff_;
    std::optional<int> center_;
};

/// Matrix product operator; site physical index is out * (n_c + 1) + in.
class MPO {
  public:
    MPO(std::vector<SiteTensor> sites, int local_cutoff);

    int num_sites() const { return static_cast<int>(sites_.size()); }
    int local_cutoff() const { return local_cutoff_; }
    int local_dim() const { return local_cutoff_ + 1; }
    const std::vector<SiteTensor> &sites() const { return sites_; }
    /// Mutable access forgets the orthogonality center.
    std::vector<SiteTensor> &sites() {
        center_.reset();
        return sites_;
    }

    /// Brings the train to mixed-canonical form around `site`: sites to the
    /// left become left-isometric, sites to the right right-isometric.
    void move_center(int site);
    /// Declares `site` the orthogonality center after an external update that
    /// kept the other sites isometric.
    void set_center(int site) { center_ = site; }
    const std::optional<int> &center() const { return center_; }

    std::vector<int> bonds() const;
    int max_bond() const;

    /// Dense operator with little-endian row (out) and column (in) indices.
    CMatrix to_dense() const;

  private:
    std::vector<SiteTensor> sites_;
    int local_cutoff_;
    std::optional<int> center_;
};

/// <a|b>
cplx overlap(const MPS &a, const MPS &b);
/// <n|psi>
cplx amplitude(const MPS &psi, const FockOutcome &n);
/// <psi|O|psi>
cplx expectation(const MPO &op, const MPS &psi);

} // namespace hgbs::tnet
