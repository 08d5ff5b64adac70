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

#include <algorithm>
#include <cmath>
#include <string>

namespace hgbs::gauss {

bool SqueezeSpec::is_uniform() const {
    return std::adjacent_find(r.begin(), r.end(), std::not_equal_to<>()) == r.end();
}

double SqueezeSpec::max_r() const {
    double m = 0.0;
    for (double x : r) m = std::max(m, std::abs(x));
    return m;
}

GaussianState vacuum(int num_modes) {
    if (num_modes < 1) throw std::invalid_argument("vacuum: need at least one mode");
    return GaussianState{0.5 * CMatrix::Identity(2 * num_modes, 2 * num_modes), num_modes};
}

GaussianState squeezed_vacuum_cov(const SqueezeSpec &s) {
    const int M = s.num_modes();
    GaussianState g = vacuum(M);
    for (int k = 0; k < M; ++k) {
        const double r = s.r[static_cast<std::size_t>(k)];
        if (!std::isfinite(r)) throw std::invalid_argument("squeezed_vacuum_cov: non-finite r");
        // <a a^dag + a^dag a>/2 = cosh(2r)/2, <a^2> = <a^dag^2> = -sinh(2r)/2,
        // matching exp{(r/2)(a^2 - a^dag^2)}|0> (checked against the dense oracle).
        g.cov(k, k) = 0.5 * std::cosh(2 * r);
        g.cov(k + M, k + M) = 0.5 * std::cosh(2 * r);
        g.cov(k, k + M) = -0.5 * std::sinh(2 * r);
        g.cov(k + M, k) = -0.5 * std::sinh(2 * r);
    }
    return g;
}

GaussianState propagate(const GaussianState &g, const circuit::ModeUnitary &u) {
    const int M = g.num_modes;
    if (u.matrix.rows() != M || u.matrix.cols() != M) {
        throw std::invalid_argument("propagate: unitary is " + std::to_string(u.matrix.rows()) + "x" +
                                    std::to_string(u.matrix.cols()) + ", state has " +
                                    std::to_string(M) + " modes");
    }
    CMatrix T = CMatrix::Zero(2 * M, 2 * M);
    T.topLeftCorner(M, M) = u.matrix;
    T.bottomRightCorner(M, M) = u.matrix.conjugate();
    return GaussianState{T * g.cov * T.adjoint(), M};
}

GaussianState single_mode_loss(const GaussianState &g, int mode, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("loss: transmission eta must lie in (0, 1]");
    }
    const int M = g.num_modes;
    if (mode < 0 || mode >= M) throw std::invalid_argument("loss: mode out of range");
    GaussianState out = g;
    const double s = std::sqrt(eta);
    for (int idx : {mode, mode + M}) {
        out.cov.row(idx) *= s;
        out.cov.col(idx) *= s;
        out.cov(idx, idx) += 0.5 * (1.0 - eta);
    }
    return out;
}

GaussianState uniform_loss(const GaussianState &g, double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("uniform_loss: transmission eta must lie in (0, 1]");
    }
    GaussianState out = g;
    for (int k = 0; k < g.num_modes; ++k) out = single_mode_loss(out, k, eta);
    return out;
}

GaussianState propagate_circuit(const GaussianState &g, const circuit::Circuit &c) {
    if (c.num_modes() != g.num_modes) {
        throw std::invalid_argument("propagate_circuit: mode count mismatch");
    }
    const int M = g.num_modes;
    GaussianState out = g;
    for (const auto &layer : c.layers()) {
        for (const auto &gate : layer) {
            circuit::ModeUnitary u{CMatrix::Identity(M, M)};
            u.matrix.block(gate.first_mode, gate.first_mode, 2, 2) = circuit::single_photon_block(gate.params);
            out = propagate(out, u);
            if (gate.is_lossy()) {
                out = single_mode_loss(out, gate.lossy_mode_index(), 1.0 - gate.loss_gamma);
            }
        }
    }
    return out;
}

double mean_photon_number(const GaussianState &g, int mode) {
    return g.cov(mode, mode).real() - 0.5;
}

double total_mean_photon_number(const GaussianState &g) {
    double total = 0.0;
    for (int k = 0; k < g.num_modes; ++k) total += mean_photon_number(g, k);
    return total;
}

double gbs_probability(const GaussianState &g, const FockOutcome &n) {
    const int M = g.num_modes;
    if (static_cast<int>(n.num_modes()) != M) {
        throw std::invalid_argument("gbs_probability: outcome has " + std::to_string(n.num_modes()) +
                                    " modes, state has " + std::to_string(M));
    }
    const CMatrix sigma_q = g.cov + 0.5 * CMatrix::Identity(2 * M, 2 * M);
    Eigen::PartialPivLU<CMatrix> lu(sigma_q);
    const double det = std::abs(lu.determinant());
    if (!std::isfinite(det) || det <= 0.0) {
        throw NumericalFailure("gbs_probability: |det sigma_Q| is not a positive finite number");
    }
    const double norm = 1.0 / std::sqrt(det);
    if (n.total() == 0) return norm;

    CMatrix X = CMatrix::Zero(2 * M, 2 * M);
    X.topRightCorner(M, M).setIdentity();
    X.bottomLeftCorner(M, M).setIdentity();
    const CMatrix A = X * (CMatrix::Identity(2 * M, 2 * M) - lu.inverse());

    std::vector<int> rows;
    for (int half = 0; half < 2; ++half) {
        for (int k = 0; k < M; ++k) {
            for (int c = 0; c < n[static_cast<std::size_t>(k)]; ++c) rows.push_back(k + half * M);
        }
    }
    const int size = static_cast<int>(rows.size());
    CMatrix A_S(size, size);
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) A_S(a, b) = A(rows[static_cast<std::size_t>(a)], rows[static_cast<std::size_t>(b)]);

    double factorials = 1.0;
    for (int nk : n.counts())
        for (int f = 2; f <= nk; ++f) factorials *= f;

    return hafnian(A_S).real() * norm / factorials;
}

double photon_pair_distribution(int num_modes, double r, int nu) {
    if (num_modes % 2 != 0) {
        throw UnsupportedConfiguration("photon_pair_distribution: odd mode count " +
                                       std::to_string(num_modes) + " is not supported");
    }
    if (num_modes < 2) throw std::invalid_argument("photon_pair_distribution: need at least 2 modes");
    if (nu < 0) return 0.0;
    const int half = num_modes / 2;
    double binom = 1.0;
    for (int i = 1; i <= nu; ++i) binom *= double(half - 1 + i) / double(i);
    const double sech = 1.0 / std::cosh(r);
    const double t = std::tanh(r);
    return binom * std::pow(sech, num_modes) * std::pow(t * t, nu);
}

double photon_total_distribution(int num_modes, double r, int photons) {
    if (photons < 0 || photons % 2 != 0) {
        if (num_modes % 2 != 0) {
            throw UnsupportedConfiguration("photon_total_distribution: odd mode count " +
                                           std::to_string(num_modes) + " is not supported");
        }
        return 0.0;
    }
    return photon_pair_distribution(num_modes, r, photons / 2);
}

} // namespace hgbs::gauss
