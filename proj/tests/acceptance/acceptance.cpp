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

// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
// with its pinned tolerance; the exit code is nonzero if any check fails.
//
//   acceptance              run everything
//   acceptance --criterion 4

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "hgbs/analysis.hpp"
#include "hgbs/fockdense.hpp"
#include "hgbs/gauss.hpp"
#include "hgbs/tnet/evolution.hpp"
#include "support/oracles.hpp"

namespace {

using namespace hgbs;
using Clock = std::chrono::steady_clock;

const tnet::TruncationPolicy kExact{};

struct Verdict {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

tnet::MPS reversed_fock_evolution(const circuit::Circuit &c, const FockOutcome &n, int nc, tnet::EvolutionStats &st) {
    auto psi = tnet::fock_mps(n, nc);
    for (auto layer = c.layers().rbegin(); layer != c.layers().rend(); ++layer)
        for (const auto &g : *layer) tnet::apply_gate_mps(psi, g, true, kExact, st);
    return psi;
}

// Bond bounds on one lossless circuit: single photon, n photons in one mode,
// and the product bound for each outcome evaluated on it.
struct BondTally {
    int checks = 0;
    int violations = 0;
    int worst_single = 0;
};

void check_photon_bounds(const circuit::Circuit &c, BondTally &tally) {
    const int M = c.num_modes();
    for (int k = 0; k < M; ++k) {
        for (int photons = 1; photons <= 4; ++photons) {
            std::vector<int> counts(static_cast<std::size_t>(M), 0);
            counts[static_cast<std::size_t>(k)] = photons;
            tnet::EvolutionStats st;
            reversed_fock_evolution(c, FockOutcome(counts), photons, st);
            ++tally.checks;
            if (st.max_bond_seen > photons + 1) ++tally.violations;
            if (photons == 1) tally.worst_single = std::max(tally.worst_single, st.max_bond_seen);
        }
    }
}

// Criterion 1 and the lossless half of criterion 5 share these runs.
struct LosslessRun {
    double max_diff = 0.0;
    double seconds = 0.0;
    int outcomes = 0;
    BondTally bonds;
};

LosslessRun run_lossless_triangle() {
    LosslessRun run;
    const auto t0 = Clock::now();
    const int nc = 8;
    const auto s = gauss::SqueezeSpec::uniform(4, 0.4);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto c = circuit::build_brickwork(4, 4, seed);
        const auto psi = fockdense::dense_evolve_state(fockdense::dense_squeezed_vacuum(s, nc), c);
        const auto g = gauss::propagate_circuit(gauss::squeezed_vacuum_cov(s), c);
        tnet::EvolutionStats fwd;
        const auto forward = tnet::schrodinger_evolve(c, s, nc, kExact, fwd);
        for (int total : {0, 2, 4}) {
            for (const auto &n : outcomes_with_total(4, total)) {
                const auto h = tnet::heisenberg_probability_lossless(c, n, s, nc, kExact);
                const double p[4] = {h.probability, std::norm(tnet::amplitude(forward, n)),
                                     fockdense::dense_probability(psi, n), gauss::gbs_probability(g, n)};
                for (int a = 0; a < 4; ++a)
                    for (int b = a + 1; b < 4; ++b) run.max_diff = std::max(run.max_diff, std::abs(p[a] - p[b]));
                ++run.outcomes;
                ++run.bonds.checks;
                if (static_cast<std::uint64_t>(h.stats.max_bond_seen) > analysis::dmax_fbs(n)) ++run.bonds.violations;
            }
        }
    }
    run.seconds = seconds_since(t0);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) check_photon_bounds(circuit::build_brickwork(4, 4, seed), run.bonds);
    return run;
}

struct LossyRun {
    double max_diff = 0.0;
    double seconds = 0.0;
    int outcomes = 0;
    int mpo_checks = 0;
    int mpo_violations = 0;
    int worst_mpo_bond = 0;
    BondTally bonds;
};

LossyRun run_lossy_comparison() {
    LossyRun run;
    const auto t0 = Clock::now();
    const int nc = 4;
    const auto s = gauss::SqueezeSpec::uniform(3, 0.4);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto c = circuit::with_uniform_loss(circuit::build_brickwork(3, 3, seed), 0.05);
        const auto rho =
            fockdense::dense_evolve_density(fockdense::to_density(fockdense::dense_squeezed_vacuum(s, nc)), c);
        for (const auto &n : outcomes_up_to_total(3, 3)) {
            const auto res = tnet::heisenberg_probability_lossy(c, n, s, nc, kExact);
            run.max_diff = std::max(run.max_diff, std::abs(res.probability - fockdense::dense_probability(rho, n)));
            ++run.outcomes;
            // An operator on the left k sites has Schmidt rank at most (n_c+1)^(2 min(k, M-k)).
            ++run.mpo_checks;
            run.worst_mpo_bond = std::max(run.worst_mpo_bond, res.stats.max_bond_seen);
            if (res.stats.max_bond_seen > (nc + 1) * (nc + 1)) ++run.mpo_violations;
        }
    }
    run.seconds = seconds_since(t0);
    // Photon bounds on the lossless skeletons of the same circuits.
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto c = circuit::build_brickwork(3, 3, seed);
        check_photon_bounds(c, run.bonds);
        for (const auto &n : outcomes_up_to_total(3, 3)) {
            tnet::EvolutionStats st;
            reversed_fock_evolution(c, n, std::max(1, n.total()), st);
            ++run.bonds.checks;
            if (static_cast<std::uint64_t>(st.max_bond_seen) > analysis::dmax_fbs(n)) ++run.bonds.violations;
        }
    }
    return run;
}

Verdict criterion1() {
    const auto run = run_lossless_triangle();
    const bool pass = run.max_diff <= 1e-8 && run.seconds <= 120.0;
    return {pass, fmt("20 circuits x %d outcomes: max pairwise diff %.3g (tol 1e-08), %.1f s (limit 120 s)",
                      run.outcomes / 20, run.max_diff, run.seconds)};
}

Verdict criterion2() {
    const auto run = run_lossy_comparison();
    const bool pass = run.max_diff <= 1e-8 && run.seconds <= 120.0;
    return {pass, fmt("10 circuits x %d outcomes: max |tn - dense| %.3g (tol 1e-08), %.1f s (limit 120 s)",
                      run.outcomes / 10, run.max_diff, run.seconds)};
}

Verdict criterion3() {
    const int nc = 8;
    const double r = 0.4;
    const auto s = gauss::SqueezeSpec::uniform(4, r);
    const auto c = circuit::build_brickwork(4, 4, std::uint64_t{1});
    double worst = 0.0;
    for (int total : {0, 2, 4}) {
        double sum = 0.0;
        for (const auto &n : outcomes_with_total(4, total))
            sum += tnet::heisenberg_probability_lossless(c, n, s, nc, kExact).probability;
        worst = std::max(worst, std::abs(sum - gauss::photon_total_distribution(4, r, total)));
    }
    return {worst <= 1e-4, fmt("max |sum p - P(n)| over n in {0,2,4}: %.3g (tol 1e-04)", worst)};
}

Verdict criterion4() {
    const int nc = 4;
    const double r = 0.4;
    const auto s = gauss::SqueezeSpec::uniform(2, r);
    const auto skeleton = circuit::build_brickwork(2, 4, std::uint64_t{1});
    double worst_margin = -1.0;
    std::string where;
    for (double gamma : {0.02, 0.05, 0.1}) {
        const auto c = circuit::with_uniform_loss(skeleton, gamma);
        analysis::CutoffPolicy policy;
        policy.gamma = gamma;
        policy.num_sources = static_cast<int>(c.lossy_gate_count());
        policy.num_modes = 2;
        policy.r = r;
        for (int total : {0, 2}) {
            double sum = 0.0;
            for (const auto &n : outcomes_with_total(2, total))
                sum += tnet::heisenberg_probability_lossy(c, n, s, nc, kExact).probability;
            const double excess = sum - gauss::photon_total_distribution(2, r, total);
            const double margin = excess - (analysis::delta_gamma(policy, total) + 1e-6);
            if (margin > worst_margin) {
                worst_margin = margin;
                where = fmt("gamma=%.2f n=%d excess %.3g bound %.3g", gamma, total, excess,
                            analysis::delta_gamma(policy, total));
            }
        }
    }
    return {worst_margin <= 0.0, fmt("worst case %s (slack 1e-06)", where.c_str())};
}

Verdict criterion5() {
    const auto lossless = run_lossless_triangle();
    const auto lossy = run_lossy_comparison();
    const int checks = lossless.bonds.checks + lossy.bonds.checks + lossy.mpo_checks;
    const int violations = lossless.bonds.violations + lossy.bonds.violations + lossy.mpo_violations;
    return {violations == 0,
            fmt("%d bond checks, %d violations; single-photon max bond %d (bound 2), lossy MPO max bond %d", checks,
                violations, std::max(lossless.bonds.worst_single, lossy.bonds.worst_single), lossy.worst_mpo_bond)};
}

Verdict criterion6() {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto c = circuit::build_brickwork(6, 6, seed);
        const CMatrix u = circuit::circuit_to_mode_unitary(c).matrix;
        for (int k = 0; k < 6; ++k) {
            std::vector<int> in(6, 0);
            in[static_cast<std::size_t>(k)] = 1;
            tnet::EvolutionStats st;
            const auto psi = reversed_fock_evolution(c, FockOutcome(in), 1, st);
            for (int i = 0; i < 6; ++i) {
                std::vector<int> out(6, 0);
                out[static_cast<std::size_t>(i)] = 1;
                worst = std::max(worst, std::abs(std::norm(tnet::amplitude(psi, FockOutcome(out))) - std::norm(u(k, i))));
            }
        }
    }
    return {worst <= 1e-10, fmt("5 circuits, M=6: max ||amp|^2 - |u|^2| %.3g (tol 1e-10)", worst)};
}

Verdict criterion7() {
    int mismatches = 0, bound_failures = 0, checked = 0;
    for (int m = 2; m <= 12; m += 2) {
        for (int n = 0; n <= 12; ++n) {
            const auto exact = analysis::dmax_bipartite(analysis::BipartitionSpec::symmetric(m, n));
            if (analysis::dmax_closed_form(m, n) != exact) ++mismatches;
            if (n >= m && exact >= (std::uint64_t{1} << n)) ++bound_failures;
            ++checked;
        }
    }
    return {mismatches == 0 && bound_failures == 0,
            fmt("%d (M, N) pairs: %d closed-form mismatches, %d cases with D_max >= 2^N for N >= M", checked,
                mismatches, bound_failures)};
}

Verdict criterion8() {
    bool ok = true;
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> nd;
    auto random_symmetric = [&](int n) {
        CMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) a(i, j) = a(j, i) = cplx(nd(rng), nd(rng));
        return a;
    };
    const CMatrix b2 = random_symmetric(2);
    ok = ok && std::abs(gauss::hafnian(b2) - b2(0, 1)) <= 1e-14;
    const CMatrix b4 = random_symmetric(4);
    const cplx three = b4(0, 1) * b4(2, 3) + b4(0, 2) * b4(1, 3) + b4(0, 3) * b4(1, 2);
    ok = ok && std::abs(gauss::hafnian(b4) - three) <= 1e-12 * std::max(1.0, std::abs(three));
    ok = ok && std::abs(gauss::hafnian(CMatrix::Ones(6, 6)) - cplx(15.0)) <= 1e-12;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        // Linear in the entries of row/column 0.
        const CMatrix x = random_symmetric(6), y = random_symmetric(6);
        const cplx alpha(nd(rng), nd(rng)), beta(nd(rng), nd(rng));
        CMatrix mix = x, swapped = x;
        for (int j = 1; j < 6; ++j) {
            mix(0, j) = mix(j, 0) = alpha * x(0, j) + beta * y(0, j);
            swapped(0, j) = swapped(j, 0) = y(0, j);
        }
        const cplx expect = alpha * gauss::hafnian(x) + beta * gauss::hafnian(swapped);
        worst = std::max(worst, std::abs(gauss::hafnian(mix) - expect) / std::max(1.0, std::abs(expect)));
    }
    ok = ok && worst <= 1e-10;
    return {ok, fmt("2x2, 4x4, ones(6)=15 identities; multilinearity max rel err %.3g over 100 matrices (tol 1e-10)",
                    worst)};
}

Verdict criterion9() {
    const auto t0 = Clock::now();
    std::ostringstream out, err;
    const int code = cli::run({"hgbs", "scaling", "--modes", "6,8,10,12,14,16,18,20,22,24,26,28,30", "-r",
                               "0.3,0.4,0.5,0.6,0.7"},
                              out, err);
    const double secs = seconds_since(t0);
    if (code != 0) return {false, "scaling command failed: " + err.str()};

    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    int rows = 0, in_regime = 0, violations = 0, below_one = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() < 6 || f[5] != "in_regime") continue;
        ++in_regime;
        const int m = std::stoi(f[0]);
        const double dh = std::stod(f[3]), ds = std::stod(f[4]);
        if (dh < 1 || ds < 1) ++below_one;
        if (m >= 10 && !(dh < ds)) ++violations;
    }
    const bool pass = rows == 13 * 5 && violations == 0 && below_one == 0 && secs < 1.0;
    return {pass, fmt("%d rows (%d in regime): %d points with M >= 10 and D^H >= D^S, %.3f s (limit 1 s)", rows,
                      in_regime, violations, secs)};
}

Verdict criterion10() {
    int failures = 0;
    analysis::CutoffPolicy p;
    p.num_modes = 4;
    p.r = 0.5;
    p.num_sources = 6;
    for (int nt : {0, 2, 4, 7}) {
        p.n_tilde = nt;
        p.gamma = 0.0;
        p.epsilon = 1e-6;
        if (analysis::choose_cutoff(p).local_cutoff != nt) ++failures;
        p.gamma = 0.1;
        for (double eps : {1.0, 2.5}) {
            p.epsilon = eps;
            if (analysis::choose_cutoff(p).local_cutoff != nt) ++failures;
        }
        int previous = 1 << 30;
        for (double eps : {1e-14, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2, 0.5}) {
            p.epsilon = eps;
            const int nc = analysis::choose_cutoff(p).local_cutoff;
            if (nc > previous) ++failures;
            previous = nc;
        }
    }
    double worst = 0.0;
    int points = 0;
    for (int m : {2, 4, 6, 8, 10})
        for (double r : {0.3, 0.6})
            for (double gamma : {0.01, 0.05, 0.1, 0.2, 0.4}) {
                const int q = 3 + points % 5;
                const int nt = points % 7;
                analysis::CutoffPolicy grid;
                grid.num_modes = m;
                grid.r = r;
                grid.gamma = gamma;
                grid.num_sources = q;
                worst = std::max(worst, std::abs(analysis::delta_gamma(grid, nt) -
                                                 oracle::delta_gamma_double_loop(m, r, gamma, q, nt)));
                ++points;
            }
    return {failures == 0 && worst <= 1e-12,
            fmt("%d cutoff property failures; delta vs double loop on %d points: max diff %.3g (tol 1e-12)", failures,
                points, worst)};
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Acceptance checks"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"oracle triangle, lossless", criterion1},
        {"lossy heisenberg vs dense density", criterion2},
        {"photon-number sum rule", criterion3},
        {"loss-gain bound", criterion4},
        {"bond-dimension bounds", criterion5},
        {"single-photon transfer", criterion6},
        {"bipartition closed form", criterion7},
        {"hafnian identities", criterion8},
        {"scaling grid", criterion9},
        {"cutoff machinery", criterion10},
    };
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<std::size_t>(only) != i + 1) continue;
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    v.detail.c_str());
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
