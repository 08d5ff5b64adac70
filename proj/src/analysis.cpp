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

#include "hgbs/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "hgbs/gauss.hpp"

namespace hgbs::analysis {

namespace {

constexpr int kMaxCutoffSearch = 10'000;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("bond-dimension bound overflows 64 bits");
    return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("bond-dimension bound overflows 64 bits");
    return out;
}

void require_even_modes(int num_modes, const char *what) {
    if (num_modes % 2 != 0) {
        throw UnsupportedConfiguration(std::string(what) + ": odd mode count " + std::to_string(num_modes) +
                                       " is not supported");
    }
}

std::string format_double(const char *fmt, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

} // namespace

void CutoffPolicy::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("CutoffPolicy: epsilon must be positive");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("CutoffPolicy: gamma must lie in [0, 1)");
    if (num_sources < 0) throw std::invalid_argument("CutoffPolicy: number of sources must be >= 0");
    if (num_modes < 2) throw std::invalid_argument("CutoffPolicy: need at least 2 modes");
    if (n_tilde < 0) throw std::invalid_argument("CutoffPolicy: target photon number must be >= 0");
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (int i = 0; i < k; ++i) {
        c = c * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
        if (c > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial overflows 64 bits");
    }
    return static_cast<std::uint64_t>(c);
}

double pi_gamma(int num_sources, double gamma, int x) {
    if (x < 0 || x > num_sources) return 0.0;
    double coeff = 1.0;
    for (int i = 0; i < x; ++i) coeff *= double(num_sources - i) / double(i + 1);
    return coeff * std::pow(gamma, x) * std::pow(1.0 - gamma, num_sources - x);
}

double delta_gamma(const CutoffPolicy &policy, int n_tilde) {
    policy.validate();
    require_even_modes(policy.num_modes, "delta_gamma");
    if (n_tilde < 0) throw std::invalid_argument("delta_gamma: n_tilde must be >= 0");
    double delta = 0.0;
    for (int x = 1; x <= policy.num_sources; ++x) {
        delta += pi_gamma(policy.num_sources, policy.gamma, x) *
                 gauss::photon_total_distribution(policy.num_modes, policy.r, n_tilde + x);
    }
    return delta;
}

CutoffRecommendation choose_cutoff(const CutoffPolicy &policy) {
    policy.validate();
    require_even_modes(policy.num_modes, "choose_cutoff");
    for (int n = policy.n_tilde; n <= policy.n_tilde + kMaxCutoffSearch; ++n) {
        const double delta = delta_gamma(policy, n);
        if (delta < policy.epsilon) return {n, delta, policy.num_sources};
    }
    throw NumericalFailure("choose_cutoff: no cutoff below the search limit meets epsilon");
}

std::uint64_t dmax_fbs(const FockOutcome &n) {
    std::uint64_t d = 1;
    for (int nk : n.counts())
        if (nk > 0) d = checked_mul(d, static_cast<std::uint64_t>(nk) + 1);
    return d;
}

std::uint64_t dmax_gbs(int local_cutoff, int num_modes) {
    require_even_modes(num_modes, "dmax_gbs");
    if (local_cutoff < 0) throw std::invalid_argument("dmax_gbs: cutoff must be >= 0");
    std::uint64_t d = 1;
    for (int i = 0; i < num_modes / 2; ++i) d = checked_mul(d, static_cast<std::uint64_t>(local_cutoff));
    return d;
}

std::uint64_t dmax_bipartite(const BipartitionSpec &spec) {
    if (spec.left_modes < 1 || spec.right_modes < 1 || spec.photons < 0) {
        throw std::invalid_argument("dmax_bipartite: need positive partition sizes and N >= 0");
    }
    const int N = spec.photons;
    std::uint64_t total = 0;
    for (int k = 0; k <= N; ++k) {
        const std::uint64_t left = binomial(spec.left_modes - 1 + k, k);
        const std::uint64_t right = binomial(spec.right_modes - 1 + (N - k), N - k);
        total = checked_add(total, std::min(left, right));
    }
    return total;
}

std::uint64_t dmax_closed_form(int num_modes, int photons) {
    require_even_modes(num_modes, "dmax_closed_form");
    if (num_modes < 2 || photons < 0) throw std::invalid_argument("dmax_closed_form: need M >= 2 and N >= 0");
    const int half = num_modes / 2;
    std::uint64_t sum = 0;
    if (photons % 2 == 0) {
        for (int k = 0; k <= photons / 2 - 1; ++k) sum = checked_add(sum, binomial(half - 1 + k, k));
        return checked_add(checked_mul(2, sum), binomial(half - 1 + photons / 2, photons / 2));
    }
    for (int k = 0; k <= (photons - 1) / 2; ++k) sum = checked_add(sum, binomial(half - 1 + k, k));
    return checked_mul(2, sum);
}

double mode_formula_value(int num_modes, double r) {
    const double s = std::sinh(r);
    return 2.0 * (num_modes / 2.0 - 1.0) * s * s;
}

int mode_of_distribution(int num_modes, double r) {
    require_even_modes(num_modes, "mode_of_distribution");
    if (num_modes < 4) throw std::invalid_argument("mode_of_distribution: need M >= 4");
    return 2 * static_cast<int>(std::lround(mode_formula_value(num_modes, r) / 2.0));
}

std::vector<ScalingRow> scaling_grid(const std::vector<int> &modes, const std::vector<double> &squeezings) {
    std::vector<ScalingRow> rows;
    for (int M : modes) {
        for (double r : squeezings) {
            ScalingRow row;
            row.num_modes = M;
            row.r = r;
            row.n_mode = mode_of_distribution(M, r);
            row.in_regime = row.n_mode > 1 && row.n_mode < M;
            if (row.in_regime) {
                row.d_heisenberg = std::pow(2.0, row.n_mode);
                row.d_schrodinger = std::pow(double(row.n_mode), M / 2.0);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::string scaling_csv(const std::vector<ScalingRow> &rows) {
    std::string out = "M,r,n_mode,D_heisenberg,D_schrodinger,regime\n";
    for (const auto &row : rows) {
        out += std::to_string(row.num_modes) + "," + format_double("%.6g", row.r) + "," +
               std::to_string(row.n_mode) + ",";
        if (row.in_regime) {
            out += format_double("%.17g", row.d_heisenberg) + "," + format_double("%.17g", row.d_schrodinger) +
                   ",in_regime\n";
        } else {
            out += ",,out_of_regime\n";
        }
    }
    return out;
}

} // namespace hgbs::analysis
