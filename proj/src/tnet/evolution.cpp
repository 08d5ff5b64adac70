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

#include "hgbs/tnet/evolution.hpp"

#include <cmath>
#include <string>

#include "hgbs/analysis.hpp"
#include "hgbs/fockdense.hpp"

namespace hgbs::tnet {

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_gate_sites(int num_sites, const circuit::Gate &g) {
    if (g.first_mode < 0 || g.second_mode() >= num_sites) {
        throw std::invalid_argument("gate on modes (" + std::to_string(g.first_mode) + "," +
                                    std::to_string(g.second_mode()) + ") outside a " +
                                    std::to_string(num_sites) + "-site train");
    }
}

// theta(l*p1 + a, b*right + r) -> two sites via truncated SVD. U stays on
// the left site, S V^dag goes right, so the center moves to the right site.
std::pair<SiteTensor, SiteTensor> split_two_site(const CMatrix &theta, int left, int p1, int p2, int right,
                                                 int local_cutoff, const TruncationPolicy &policy,
                                                 EvolutionStats &stats) {
    Eigen::BDCSVD<CMatrix> svd(theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    const Eigen::Index available = sv.size();
    const double smax = available > 0 ? sv(0) : 0.0;

    Eigen::Index keep = 0;
    while (keep < available && (smax == 0.0 ? false : sv(keep) / smax >= policy.svd_threshold)) ++keep;
    if (policy.max_bond) keep = std::min<Eigen::Index>(keep, *policy.max_bond);
    keep = std::max<Eigen::Index>(keep, 1);
    for (Eigen::Index j = keep; j < available; ++j) stats.truncation_weight += sv(j) * sv(j);

    const int k = static_cast<int>(keep);
    SiteTensor A(left, p1, k), B(k, p2, right);
    const CMatrix &U = svd.matrixU();
    const CMatrix &V = svd.matrixV();
    for (Eigen::Index j = 0; j < keep; ++j) {
        const double s = sv(j);
        for (Eigen::Index row = 0; row < U.rows(); ++row) {
            A.data[static_cast<std::size_t>(row * k + j)] = U(row, j);
        }
        for (Eigen::Index col = 0; col < V.rows(); ++col) {
            B.data[static_cast<std::size_t>(j * V.rows() + col)] = s * std::conj(V(col, j));
        }
    }

    stats.record_bond(k);
    const double chi = std::max({left, right, k});
    const double nc = local_cutoff;
    stats.flop_estimate += chi * chi * chi * std::pow(nc * nc, 2) * nc * nc;
    return {std::move(A), std::move(B)};
}

CMatrix merge_two_site(const SiteTensor &A, const SiteTensor &B) {
    Eigen::Map<const RowMat> a(A.data.data(), static_cast<Eigen::Index>(A.left) * A.phys, A.right);
    Eigen::Map<const RowMat> b(B.data.data(), B.left, static_cast<Eigen::Index>(B.phys) * B.right);
    return a * b;
}

// Applies op (d^2 x d^2) to the physical pair of theta, indices (p1 * d + p2).
void apply_pair_operator(CMatrix &theta, const CMatrix &op, int left, int d, int right) {
    CMatrix Y(d * d, static_cast<Eigen::Index>(left) * right);
    for (int l = 0; l < left; ++l)
        for (int q1 = 0; q1 < d; ++q1)
            for (int q2 = 0; q2 < d; ++q2)
                for (int r = 0; r < right; ++r)
                    Y(q1 * d + q2, l * right + r) = theta(l * d + q1, q2 * right + r);
    const CMatrix Z = op * Y;
    for (int l = 0; l < left; ++l)
        for (int p1 = 0; p1 < d; ++p1)
            for (int p2 = 0; p2 < d; ++p2)
                for (int r = 0; r < right; ++r)
                    theta(l * d + p1, p2 * right + r) = Z(p1 * d + p2, l * right + r);
}

// Superoperator of Y -> sum_mu K_mu^dag Y K_mu on vec index (o * d + i).
CMatrix adjoint_kraus_superoperator(const std::vector<CMatrix> &kraus, int d) {
    CMatrix S = CMatrix::Zero(d * d, d * d);
    for (const auto &K : kraus)
        for (int o = 0; o < d; ++o)
            for (int i = 0; i < d; ++i)
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b)
                        S(o * d + i, a * d + b) += std::conj(K(a, o)) * K(b, i);
    return S;
}

void record_layer(EvolutionStats &stats, int bond) {
    stats.per_layer_bonds.push_back(bond);
    stats.record_bond(bond);
}

std::string gate_label(std::size_t index) { return "gate " + std::to_string(index); }

void require_lossless(const circuit::Circuit &c, const char *what) {
    if (auto lossy = c.first_lossy_gate()) {
        throw UnsupportedConfiguration(std::string(what) + ": " + gate_label(*lossy) +
                                       " is lossy; this path handles lossless circuits only");
    }
}

void require_outcome_fits(const circuit::Circuit &c, const FockOutcome &n, const gauss::SqueezeSpec &s,
                          int local_cutoff, const char *what) {
    if (static_cast<int>(n.num_modes()) != c.num_modes() || s.num_modes() != c.num_modes()) {
        throw std::invalid_argument(std::string(what) + ": outcome, squeezing and circuit mode counts differ");
    }
    if (n.max_count() > local_cutoff) {
        throw std::invalid_argument(std::string(what) + ": outcome " + n.to_string() +
                                    " exceeds local cutoff " + std::to_string(local_cutoff));
    }
}

} // namespace

double clamp_probability(double raw) {
    if (!std::isfinite(raw) || raw < -1e-9) {
        throw NumericalFailure("probability " + std::to_string(raw) + " is not a valid probability");
    }
    return std::clamp(raw, 0.0, 1.0);
}

MPS fock_mps(const FockOutcome &n, int local_cutoff) {
    if (local_cutoff < 1) throw std::invalid_argument("fock_mps: local cutoff must be >= 1");
    std::vector<SiteTensor> sites;
    for (int nk : n.counts()) {
        if (nk > local_cutoff) {
            throw std::invalid_argument("fock_mps: outcome " + n.to_string() + " exceeds local cutoff " +
                                        std::to_string(local_cutoff));
        }
        SiteTensor t(1, local_cutoff + 1, 1);
        t(0, nk, 0) = 1.0;
        sites.push_back(std::move(t));
    }
    return MPS(std::move(sites), local_cutoff);
}

MPS squeezed_mps(const gauss::SqueezeSpec &s, int local_cutoff) {
    std::vector<SiteTensor> sites;
    for (double r : s.r) {
        const CVector v = fockdense::single_mode_squeezed_vector(r, local_cutoff);
        SiteTensor t(1, local_cutoff + 1, 1);
        for (int p = 0; p <= local_cutoff; ++p) t(0, p, 0) = v(p);
        sites.push_back(std::move(t));
    }
    return MPS(std::move(sites), local_cutoff);
}

MPO fock_projector_mpo(const FockOutcome &n, int local_cutoff) {
    if (local_cutoff < 1) throw std::invalid_argument("fock_projector_mpo: local cutoff must be >= 1");
    const int d = local_cutoff + 1;
    std::vector<SiteTensor> sites;
    for (int nk : n.counts()) {
        if (nk > local_cutoff) {
            throw std::invalid_argument("fock_projector_mpo: outcome " + n.to_string() +
                                        " exceeds local cutoff " + std::to_string(local_cutoff));
        }
        SiteTensor t(1, d * d, 1);
        t(0, nk * d + nk, 0) = 1.0;
        sites.push_back(std::move(t));
    }
    return MPO(std::move(sites), local_cutoff);
}

void apply_gate_mps(MPS &psi, const circuit::Gate &g, bool reversed, const TruncationPolicy &policy,
                    EvolutionStats &stats) {
    check_gate_sites(psi.num_sites(), g);
    const int d = psi.local_dim();
    psi.move_center(g.first_mode);
    auto &A = psi.sites()[static_cast<std::size_t>(g.first_mode)];
    auto &B = psi.sites()[static_cast<std::size_t>(g.second_mode())];
    const int left = A.left, right = B.right;

    CMatrix theta = merge_two_site(A, B);
    const CMatrix G = circuit::gate_unitary_fock(g.params, psi.local_cutoff());
    apply_pair_operator(theta, reversed ? CMatrix(G.adjoint()) : G, left, d, right);

    auto [nA, nB] = split_two_site(theta, left, d, d, right, psi.local_cutoff(), policy, stats);
    A = std::move(nA);
    B = std::move(nB);
    psi.set_center(g.second_mode());
}

void apply_gate_mpo_adjoint(MPO &op, const circuit::Gate &g, const TruncationPolicy &policy,
                            EvolutionStats &stats) {
    check_gate_sites(op.num_sites(), g);
    const int d = op.local_dim();
    const int P = d * d;
    op.move_center(g.first_mode);
    auto &A = op.sites()[static_cast<std::size_t>(g.first_mode)];
    auto &B = op.sites()[static_cast<std::size_t>(g.second_mode())];
    const int left = A.left, right = B.right;

    // Rows (l, o1, i1), columns (o2, i2, r).
    CMatrix theta = merge_two_site(A, B);

    if (g.is_lossy()) {
        const CMatrix S = adjoint_kraus_superoperator(circuit::kraus_set(g.loss_gamma, op.local_cutoff()), d);
        if (g.lossy_mode == 0) {
            for (int l = 0; l < left; ++l) {
                const CMatrix block = theta.middleRows(l * P, P);
                theta.middleRows(l * P, P).noalias() = S * block;
            }
        } else {
            CMatrix block(theta.rows(), P);
            for (int r = 0; r < right; ++r) {
                for (int p = 0; p < P; ++p) block.col(p) = theta.col(p * right + r);
                const CMatrix mapped = block * S.transpose();
                for (int p = 0; p < P; ++p) theta.col(p * right + r) = mapped.col(p);
            }
        }
    }

    const CMatrix G = circuit::gate_unitary_fock(g.params, op.local_cutoff());
    const CMatrix Gd = G.adjoint();
    CMatrix X(P, P);
    for (int l = 0; l < left; ++l) {
        for (int r = 0; r < right; ++r) {
            for (int o1 = 0; o1 < d; ++o1)
                for (int i1 = 0; i1 < d; ++i1)
                    for (int o2 = 0; o2 < d; ++o2)
                        for (int i2 = 0; i2 < d; ++i2)
                            X(o1 * d + o2, i1 * d + i2) = theta(l * P + o1 * d + i1, (o2 * d + i2) * right + r);
            const CMatrix Y = Gd * X * G;
            for (int o1 = 0; o1 < d; ++o1)
                for (int i1 = 0; i1 < d; ++i1)
                    for (int o2 = 0; o2 < d; ++o2)
                        for (int i2 = 0; i2 < d; ++i2)
                            theta(l * P + o1 * d + i1, (o2 * d + i2) * right + r) = Y(o1 * d + o2, i1 * d + i2);
        }
    }

    auto [nA, nB] = split_two_site(theta, left, P, P, right, op.local_cutoff(), policy, stats);
    A = std::move(nA);
    B = std::move(nB);
    op.set_center(g.second_mode());
}

ProbabilityResult heisenberg_probability_lossless(const circuit::Circuit &c, const FockOutcome &n,
                                                  const gauss::SqueezeSpec &s, int local_cutoff,
                                                  const TruncationPolicy &policy) {
    policy.validate();
    require_lossless(c, "heisenberg_probability_lossless");
    require_outcome_fits(c, n, s, local_cutoff, "heisenberg_probability_lossless");

    ProbabilityResult result;
    MPS evolved = fock_mps(n, local_cutoff);
    const auto &layers = c.layers();
    for (auto layer = layers.rbegin(); layer != layers.rend(); ++layer) {
        for (auto g = layer->rbegin(); g != layer->rend(); ++g) {
            apply_gate_mps(evolved, *g, /*reversed=*/true, policy, result.stats);
        }
        record_layer(result.stats, evolved.max_bond());
    }
    result.probability = std::norm(overlap(squeezed_mps(s, local_cutoff), evolved));
    return result;
}

ProbabilityResult heisenberg_probability_lossy(const circuit::Circuit &c, const FockOutcome &n,
                                               const gauss::SqueezeSpec &s, int local_cutoff,
                                               const TruncationPolicy &policy) {
    policy.validate();
    require_outcome_fits(c, n, s, local_cutoff, "heisenberg_probability_lossy");

    ProbabilityResult result;
    if (c.num_modes() % 2 == 0 && s.is_uniform()) {
        analysis::CutoffPolicy cp;
        cp.gamma = c.max_loss_gamma();
        cp.num_sources = static_cast<int>(c.lossy_gate_count());
        cp.num_modes = c.num_modes();
        cp.r = s.r.front();
        cp.n_tilde = n.total();
        result.stats.recommended_cutoff = analysis::choose_cutoff(cp).local_cutoff;
    }

    MPO op = fock_projector_mpo(n, local_cutoff);
    const auto &layers = c.layers();
    for (auto layer = layers.rbegin(); layer != layers.rend(); ++layer) {
        for (auto g = layer->rbegin(); g != layer->rend(); ++g) {
            apply_gate_mpo_adjoint(op, *g, policy, result.stats);
        }
        record_layer(result.stats, op.max_bond());
    }
    const double raw = expectation(op, squeezed_mps(s, local_cutoff)).real();
    result.stats.raw_probability = raw;
    result.probability = clamp_probability(raw);
    return result;
}

MPS schrodinger_evolve(const circuit::Circuit &c, const gauss::SqueezeSpec &s, int local_cutoff,
                       const TruncationPolicy &policy, EvolutionStats &stats) {
    policy.validate();
    require_lossless(c, "schrodinger_evolve");
    if (s.num_modes() != c.num_modes()) {
        throw std::invalid_argument("schrodinger_evolve: squeezing and circuit mode counts differ");
    }
    MPS psi = squeezed_mps(s, local_cutoff);
    for (const auto &layer : c.layers()) {
        for (const auto &g : layer) apply_gate_mps(psi, g, /*reversed=*/false, policy, stats);
        record_layer(stats, psi.max_bond());
    }
    return psi;
}

ProbabilityResult schrodinger_probability(const circuit::Circuit &c, const FockOutcome &n,
                                          const gauss::SqueezeSpec &s, int local_cutoff,
                                          const TruncationPolicy &policy) {
    require_lossless(c, "schrodinger_probability");
    require_outcome_fits(c, n, s, local_cutoff, "schrodinger_probability");
    ProbabilityResult result;
    const MPS psi = schrodinger_evolve(c, s, local_cutoff, policy, result.stats);
    result.probability = std::norm(amplitude(psi, n));
    return result;
}

} // namespace hgbs::tnet
