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

#include "hgbs/tnet/batch.hpp"

#include <chrono>
#include <optional>

namespace hgbs::tnet {

namespace {

using Clock = std::chrono::steady_clock;

// Forward-evolved state shared by every Schroedinger item.
struct SchrodingerCache {
    std::optional<MPS> state;
    EvolutionStats stats;
    std::string error;
    double wall_time = 0.0;
};

SchrodingerCache prepare_schrodinger(const circuit::Circuit &c, const gauss::SqueezeSpec &s,
                                     const BatchConfig &config) {
    SchrodingerCache cache;
    const auto t0 = Clock::now();
    try {
        cache.state = schrodinger_evolve(c, s, config.local_cutoff, config.policy, cache.stats);
    } catch (const std::exception &e) {
        cache.error = e.what();
    }
    cache.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
    return cache;
}

BatchItem evaluate_one(const circuit::Circuit &c, const FockOutcome &n, const gauss::SqueezeSpec &s,
                       const BatchConfig &config, const SchrodingerCache *cache) {
    BatchItem item;
    item.outcome = n;
    const auto t0 = Clock::now();
    try {
        if (config.picture == Picture::schrodinger) {
            if (!cache->state) throw UnsupportedConfiguration(cache->error);
            if (static_cast<int>(n.num_modes()) != c.num_modes()) {
                throw std::invalid_argument("outcome " + n.to_string() + " has the wrong number of modes");
            }
            item.result.stats = cache->stats;
            item.result.probability = std::norm(amplitude(*cache->state, n));
        } else if (c.is_lossless()) {
            item.result = heisenberg_probability_lossless(c, n, s, config.local_cutoff, config.policy);
        } else {
            item.result = heisenberg_probability_lossy(c, n, s, config.local_cutoff, config.policy);
        }
        item.ok = true;
    } catch (const std::exception &e) {
        item.error = e.what();
    }
    item.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
    if (cache) item.wall_time += cache->wall_time;
    return item;
}

} // namespace

std::vector<BatchItem> evaluate_batch(const circuit::Circuit &c, std::span<const FockOutcome> outcomes,
                                      const gauss::SqueezeSpec &s, const BatchConfig &config) {
    std::optional<SchrodingerCache> cache;
    if (config.picture == Picture::schrodinger) cache = prepare_schrodinger(c, s, config);
    const SchrodingerCache *shared = cache ? &*cache : nullptr;

    std::vector<BatchItem> items(outcomes.size());
    const auto count = static_cast<std::ptrdiff_t>(outcomes.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        items[static_cast<std::size_t>(i)] = evaluate_one(c, outcomes[static_cast<std::size_t>(i)], s, config, shared);
    }
    return items;
}

std::vector<BatchItem> evaluate_batch_serial(const circuit::Circuit &c, std::span<const FockOutcome> outcomes,
                                             const gauss::SqueezeSpec &s, const BatchConfig &config) {
    std::optional<SchrodingerCache> cache;
    if (config.picture == Picture::schrodinger) cache = prepare_schrodinger(c, s, config);
    const SchrodingerCache *shared = cache ? &*cache : nullptr;

    std::vector<BatchItem> items;
    items.reserve(outcomes.size());
    for (const auto &n : outcomes) items.push_back(evaluate_one(c, n, s, config, shared));
    return items;
}

} // namespace hgbs::tnet
