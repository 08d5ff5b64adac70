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

#include "hgbs/gauss.hpp"

#include <string>

namespace hgbs::gauss {

namespace {

// Pairs the lowest unmatched index with every later unmatched index; this
// visits each perfect matching exactly once, in the a(i) < b(i),
// a(i) < a(i+1) canonical form.
cplx match_from(const CMatrix &B, std::vector<int> &free_idx, std::size_t count) {
    if (count == 0) return cplx(1.0, 0.0);
    const int first = free_idx[0];
    cplx sum(0.0, 0.0);
    for (std::size_t j = 1; j < count; ++j) {
        const int partner = free_idx[j];
        const cplx w = B(first, partner);
        if (w == cplx(0.0, 0.0)) continue;
        // Drop positions 0 and j.
        std::vector<int> rest;
        rest.reserve(count - 2);
        for (std::size_t k = 1; k < count; ++k)
            if (k != j) rest.push_back(free_idx[k]);
        sum += w * match_from(B, rest, rest.size());
    }
    return sum;
}

} // namespace

cplx hafnian(const CMatrix &B) {
    if (B.rows() != B.cols()) throw std::invalid_argument("hafnian: matrix must be square");
    if (B.rows() % 2 != 0) {
        throw std::invalid_argument("hafnian: dimension " + std::to_string(B.rows()) + " is odd");
    }
    std::vector<int> idx(static_cast<std::size_t>(B.rows()));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    return match_from(B, idx, idx.size());
}

} // namespace hgbs::gauss
