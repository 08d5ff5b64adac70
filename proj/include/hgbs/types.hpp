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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hgbs {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Raised when a configuration is well-formed but not handled by the chosen
/// route (lossy gate on a lossless-only path, odd mode count, ...).
class UnsupportedConfiguration : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NumericalFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised instead of attempting an allocation that exceeds a memory guard.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Photon counts n_k measured on each of the M output modes.
 */
class FockOutcome {
  public:
    FockOutcome() = default;
    explicit FockOutcome(std::vector<int> counts) : counts_(std::move(counts)) {
        for (int n : counts_) {
            if (n < 0) {
                throw std::invalid_argument("FockOutcome: photon counts must be non-negative");
            }
        }
    }
    FockOutcome(std::initializer_list<int> counts)
        : FockOutcome(std::vector<int>(counts)) {}

    const std::vector<int> &counts() const { return counts_; }
    std::size_t num_modes() const { return counts_.size(); }
    int operator[](std::size_t k) const { return counts_[k]; }
    int total() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }
    int max_count() const {
        int m = 0;
        for (int n : counts_) m = std::max(m, n);
        return m;
    }

    bool operator==(const FockOutcome &) const = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t k = 0; k < counts_.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(counts_[k]);
        }
        return s + ")";
    }

  private:
    std::vector<int> counts_;
};

/// All outcomes over `num_modes` modes whose photon total equals `total`,
/// ordered with the first mode's count descending.
std::vector<FockOutcome> outcomes_with_total(int num_modes, int total);

/// All outcomes with photon total in [0, max_total], grouped by total.
std::vector<FockOutcome> outcomes_up_to_total(int num_modes, int max_total);

} // namespace hgbs
