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

#include "hgbs/types.hpp"

namespace hgbs {

namespace {

void fill(std::vector<int> &counts, std::size_t mode, int remaining, std::vector<FockOutcome> &out) {
    if (mode + 1 == counts.size()) {
        counts[mode] = remaining;
        out.emplace_back(counts);
        return;
    }
    for (int n = remaining; n >= 0; --n) {
        counts[mode] = n;
        fill(counts, mode + 1, remaining - n, out);
    }
}

} // namespace

std::vector<FockOutcome> outcomes_with_total(int num_modes, int total) {
    if (num_modes < 1 || total < 0) {
        throw std::invalid_argument("outcomes_with_total: need num_modes >= 1 and total >= 0");
    }
    std::vector<FockOutcome> out;
    std::vector<int> counts(static_cast<std::size_t>(num_modes), 0);
    fill(counts, 0, total, out);
    return out;
}

std::vector<FockOutcome> outcomes_up_to_total(int num_modes, int max_total) {
    std::vector<FockOutcome> out;
    for (int t = 0; t <= max_total; ++t) {
        auto part = outcomes_with_total(num_modes, t);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

} // namespace hgbs
