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

#include <span>
#include <string>
#include <vector>

#include "hgbs/tnet/evolution.hpp"

namespace hgbs::tnet {

enum class Picture { heisenberg, schrodinger };

struct BatchConfig {
    Picture picture = Picture::heisenberg;
    int local_cutoff = 4;
    TruncationPolicy policy;
};

struct BatchItem {
    FockOutcome outcome;
    bool ok = false;
    ProbabilityResult result;
    std::string error;
    double wall_time = 0.0;
};

/// Probabilities for every outcome, one independent evaluation each,
/// returned in input order. Heisenberg picks the lossless or lossy route
/// from the circuit; Schroedinger evolves the input once and reads every
/// amplitude from it. Failures are reported per item, never thrown.
/// Runs on OpenMP threads; results do not depend on the schedule.
std::vector<BatchItem> evaluate_batch(const circuit::Circuit &c, std::span<const FockOutcome> outcomes,
                                      const gauss::SqueezeSpec &s, const BatchConfig &config);

/// Single-threaded reference for evaluate_batch.
std::vector<BatchItem> evaluate_batch_serial(const circuit::Circuit &c, std::span<const FockOutcome> outcomes,
                                             const gauss::SqueezeSpec &s, const BatchConfig &config);

} // namespace hgbs::tnet
