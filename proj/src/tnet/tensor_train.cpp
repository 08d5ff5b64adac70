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

#include "hgbs/tnet/tensor_train.hpp"

#include <cmath>
#include <string>

namespace hgbs::tnet {

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Slice = Eigen::Map<const RowMat, 0, Eigen::OuterStride<>>;

// Matrix A(:, p, :) of a site tensor.
Slice slice(const SiteTensor &t, int p) {
    return Slice(t.data.data() + p * t.right, t.left, t.right,
                 Eigen::OuterStride<>(static_cast<Eigen::Index>(t.phys) * t.right));
}

void validate_train(const std::vector<SiteTensor> &sites, int phys, const char *what) {
    if (sites.empty()) throw std::invalid_argument(std::string(what) + ": no sites");
    if (sites.front().left != 1 || sites.back().right != 1) {
        throw std::invalid_argument(std::string(what) + ": boundary bonds must be 1");
    }
    for (std::size_t k = 0; k < sites.size(); ++k) {
        const auto &s = sites[k];
        if (s.phys != phys) {
            throw std::invalid_argument(std::string(what) + ": site " + std::to_string(k) +
                                        " has physical dimension " + std::to_string(s.phys));
        }
        if (s.data.size() != static_cast<std::size_t>(s.left) * s.phys * s.right) {
            throw std::invalid_argument(std::string(what) + ": site " + std::to_string(k) + " has inconsistent storage");
        }
        if (k + 1 < sites.size() && s.right != sites[k + 1].left) {
            throw std::invalid_argument(std::string(what) + ": bond mismatch after site " + std::to_string(k));
        }
    }
}

std::vector<int> bonds_of(const std::vector<SiteTensor> &sites) {
    std::vector<int> b;
    for (std::size_t k = 0; k + 1 < sites.size(); ++k) b.push_back(sites[k].right);
    return b;
}

int max_of(const std::vector<int> &b) {
    int m = 1;
    for (int x : b) m = std::max(m, x);
    return m;
}

// Site i becomes left-isometric; its R factor moves into site i + 1.
void shift_center_right(std::vector<SiteTensor> &sites, std::size_t i) {
    SiteTensor &A = sites[i];
    SiteTensor &B = sites[i + 1];
    const Eigen::Index rows = static_cast<Eigen::Index>(A.left) * A.phys;
    const CMatrix a = Eigen::Map<const RowMat>(A.data.data(), rows, A.right);
    Eigen::HouseholderQR<CMatrix> qr(a);
    const Eigen::Index k = std::min<Eigen::Index>(rows, A.right);
    const CMatrix Q = qr.householderQ() * CMatrix::Identity(rows, k);
    const CMatrix R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const CMatrix b = Eigen::Map<const RowMat>(B.data.data(), B.left, static_cast<Eigen::Index>(B.phys) * B.right);
    const RowMat newA = Q;
    const RowMat newB = R * b;
    SiteTensor nA(A.left, A.phys, static_cast<int>(k)), nB(static_cast<int>(k), B.phys, B.right);
    std::copy(newA.data(), newA.data() + newA.size(), nA.data.begin());
    std::copy(newB.data(), newB.data() + newB.size(), nB.data.begin());
    A = std::move(nA);
    B = std::move(nB);
}

// Site i becomes right-isometric; its L factor moves into site i - 1.
void shift_center_left(std::vector<SiteTensor> &sites, std::size_t i) {
    SiteTensor &A = sites[i - 1];
    SiteTensor &B = sites[i];
    const Eigen::Index cols = static_cast<Eigen::Index>(B.phys) * B.right;
    const CMatrix bh = Eigen::Map<const RowMat>(B.data.data(), B.left, cols).adjoint();
    Eigen::HouseholderQR<CMatrix> qr(bh);
    const Eigen::Index k = std::min<Eigen::Index>(cols, B.left);
    const CMatrix Q = qr.householderQ() * CMatrix::Identity(cols, k);
    const CMatrix R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const CMatrix a = Eigen::Map<const RowMat>(A.data.data(), static_cast<Eigen::Index>(A.left) * A.phys, A.right);
    const RowMat newB = Q.adjoint();
    const RowMat newA = a * R.adjoint();
    SiteTensor nA(A.left, A.phys, static_cast<int>(k)), nB(static_cast<int>(k), B.phys, B.right);
    std::copy(newA.data(), newA.data() + newA.size(), nA.data.begin());
    std::copy(newB.data(), newB.data() + newB.size(), nB.data.begin());
    A = std::move(nA);
    B = std::move(nB);
}

void move_center_impl(std::vector<SiteTensor> &sites, std::optional<int> &center, int target) {
    const int n = static_cast<int>(sites.size());
    if (target < 0 || target >= n) throw std::invalid_argument("move_center: site out of range");
    int from_left = 0, from_right = n - 1;
    if (center) from_left = from_right = *center;
    for (int i = from_left; i < target; ++i) shift_center_right(sites, static_cast<std::size_t>(i));
    for (int i = from_right; i > target; --i) shift_center_left(sites, static_cast<std::size_t>(i));
    center = target;
}

constexpr std::size_t kMaxDenseContraction = 10'000'000;

} // namespace

void TruncationPolicy::validate() const {
    if (!(svd_threshold >= 0.0 && svd_threshold < 1.0)) {
        throw std::invalid_argument("TruncationPolicy: svd_threshold must lie in [0, 1)");
    }
    if (max_bond && *max_bond < 1) {
        throw std::invalid_argument("TruncationPolicy: max_bond must be positive");
    }
}

nlohmann::ordered_json to_json(const EvolutionStats &s) {
    nlohmann::ordered_json j;
    j["max_bond_seen"] = s.max_bond_seen;
    j["per_layer_bonds"] = s.per_layer_bonds;
    j["truncation_weight"] = s.truncation_weight;
    j["flop_estimate"] = s.flop_estimate;
    if (s.raw_probability) j["raw_probability"] = *s.raw_probability;
    if (s.recommended_cutoff) j["recommended_cutoff"] = *s.recommended_cutoff;
    return j;
}

MPS::MPS(std::vector<SiteTensor> sites, int local_cutoff)
    : sites_(std::move(sites)), local_cutoff_(local_cutoff) {
    if (local_cutoff_ < 1) throw std::invalid_argument("MPS: local cutoff must be >= 1");
    validate_train(sites_, local_cutoff_ + 1, "MPS");
}

void MPS::move_center(int site) { move_center_impl(sites_, center_, site); }

std::vector<int> MPS::bonds() const { return bonds_of(sites_); }
int MPS::max_bond() const { return max_of(bonds()); }

double MPS::norm() const { return std::sqrt(std::max(0.0, overlap(*this, *this).real())); }

CVector MPS::to_dense() const {
    const Eigen::Index d = local_dim();
    // Rows: little-endian index over the sites absorbed so far; columns: open bond.
    CMatrix T = CMatrix::Ones(1, 1);
    for (const auto &site : sites_) {
        if (static_cast<std::size_t>(T.rows() * d) > kMaxDenseContraction) {
            throw ResourceError("MPS::to_dense: dense dimension too large");
        }
        CMatrix next = CMatrix::Zero(T.rows() * d, site.right);
        for (int p = 0; p < d; ++p) {
            next.middleRows(p * T.rows(), T.rows()) = T * slice(site, p);
        }
        T = std::move(next);
    }
    return T.col(0);
}

MPO::MPO(std::vector<SiteTensor> sites, int local_cutoff)
    : sites_(std::move(sites)), local_cutoff_(local_cutoff) {
    if (local_cutoff_ < 1) throw std::invalid_argument("MPO: local cutoff must be >= 1");
    validate_train(sites_, (local_cutoff_ + 1) * (local_cutoff_ + 1), "MPO");
}

void MPO::move_center(int site) { move_center_impl(sites_, center_, site); }

std::vector<int> MPO::bonds() const { return bonds_of(sites_); }
int MPO::max_bond() const { return max_of(bonds()); }

CMatrix MPO::to_dense() const {
    const int d = local_dim();
    std::vector<CMatrix> T{CMatrix::Ones(1, 1)};
    Eigen::Index dim = 1;
    for (const auto &site : sites_) {
        if (static_cast<std::size_t>(dim * d) > 10'000) {
            throw ResourceError("MPO::to_dense: dense dimension too large");
        }
        std::vector<CMatrix> next(static_cast<std::size_t>(site.right), CMatrix::Zero(dim * d, dim * d));
        for (int l = 0; l < site.left; ++l) {
            for (int po = 0; po < d; ++po) {
                for (int pi = 0; pi < d; ++pi) {
                    for (int r = 0; r < site.right; ++r) {
                        const cplx w = site(l, po * d + pi, r);
                        if (w == cplx(0.0, 0.0)) continue;
                        next[static_cast<std::size_t>(r)].block(po * dim, pi * dim, dim, dim) +=
                            w * T[static_cast<std::size_t>(l)];
                    }
                }
            }
        }
        T = std::move(next);
        dim *= d;
    }
    return T[0];
}

cplx overlap(const MPS &a, const MPS &b) {
    if (a.num_sites() != b.num_sites() || a.local_dim() != b.local_dim()) {
        throw std::invalid_argument("overlap: MPS shapes differ");
    }
    CMatrix env = CMatrix::Ones(1, 1);
    for (int k = 0; k < a.num_sites(); ++k) {
        const auto &A = a.sites()[static_cast<std::size_t>(k)];
        const auto &B = b.sites()[static_cast<std::size_t>(k)];
        CMatrix next = CMatrix::Zero(A.right, B.right);
        for (int p = 0; p < a.local_dim(); ++p) {
            next.noalias() += slice(A, p).adjoint() * env * slice(B, p);
        }
        env = std::move(next);
    }
    return env(0, 0);
}

cplx amplitude(const MPS &psi, const FockOutcome &n) {
    if (static_cast<int>(n.num_modes()) != psi.num_sites()) {
        throw std::invalid_argument("amplitude: outcome has " + std::to_string(n.num_modes()) +
                                    " modes, MPS has " + std::to_string(psi.num_sites()));
    }
    if (n.max_count() > psi.local_cutoff()) {
        throw std::invalid_argument("amplitude: outcome " + n.to_string() + " exceeds local cutoff");
    }
    CMatrix env = CMatrix::Ones(1, 1);
    for (int k = 0; k < psi.num_sites(); ++k) {
        env = env * slice(psi.sites()[static_cast<std::size_t>(k)], n[static_cast<std::size_t>(k)]);
    }
    return env(0, 0);
}

cplx expectation(const MPO &op, const MPS &psi) {
    if (op.num_sites() != psi.num_sites() || op.local_dim() != psi.local_dim()) {
        throw std::invalid_argument("expectation: MPO and MPS shapes differ");
    }
    const int d = psi.local_dim();
    // env[lo](la, lb): bra bond la, operator bond lo, ket bond lb.
    std::vector<CMatrix> env{CMatrix::Ones(1, 1)};
    for (int k = 0; k < psi.num_sites(); ++k) {
        const auto &A = psi.sites()[static_cast<std::size_t>(k)];
        const auto &W = op.sites()[static_cast<std::size_t>(k)];
        std::vector<CMatrix> next(static_cast<std::size_t>(W.right), CMatrix::Zero(A.right, A.right));
        for (int lo = 0; lo < W.left; ++lo) {
            for (int po = 0; po < d; ++po) {
                const CMatrix left = slice(A, po).adjoint() * env[static_cast<std::size_t>(lo)];
                for (int pi = 0; pi < d; ++pi) {
                    bool any = false;
                    for (int ro = 0; ro < W.right && !any; ++ro) any = W(lo, po * d + pi, ro) != cplx(0.0, 0.0);
                    if (!any) continue;
                    const CMatrix term = left * slice(A, pi);
                    for (int ro = 0; ro < W.right; ++ro) {
                        const cplx w = W(lo, po * d + pi, ro);
                        if (w != cplx(0.0, 0.0)) next[static_cast<std::size_t>(ro)] += w * term;
                    }
                }
            }
        }
        env = std::move(next);
    }
    return env[0](0, 0);
}

} // namespace hgbs::tnet
