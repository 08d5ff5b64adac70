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

#include "hgbs/fockdense.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace hgbs::fockdense {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void check_cutoff(int local_cutoff) {
    if (local_cutoff < 1) throw std::invalid_argument("fockdense: local cutoff must be >= 1");
}

void check_density_dimension(std::size_t dim) {
    if (dim > kMaxDensityDimension) {
        throw ResourceError("fockdense: density dimension " + std::to_string(dim) + " exceeds limit " +
                            std::to_string(kMaxDensityDimension));
    }
}

void check_span(std::span<cplx> amplitudes, int num_modes, int local_cutoff, int mode, int width) {
    if (mode < 0 || mode + width > num_modes ||
        amplitudes.size() != ipow(static_cast<std::size_t>(local_cutoff) + 1, num_modes)) {
        throw std::invalid_argument("fockdense: amplitude span does not match (n_c+1)^M or mode out of range");
    }
}

std::span<cplx> column(CMatrix &m, Eigen::Index j) {
    return {m.data() + j * m.rows(), static_cast<std::size_t>(m.rows())};
}

// op acts on a single mode when its size is d, on (mode, mode + 1) when d^2.
void apply_to_columns(CMatrix &m, int num_modes, int local_cutoff, int mode, const CMatrix &op) {
    const bool two_mode = op.rows() != local_cutoff + 1;
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (two_mode) apply_two_mode_serial(column(m, j), num_modes, local_cutoff, mode, op);
        else apply_single_mode(column(m, j), num_modes, local_cutoff, mode, op);
    }
}

// Returns L m L^dag with L acting on the given mode(s).
CMatrix conjugate(const CMatrix &m, int num_modes, int local_cutoff, int mode, const CMatrix &op) {
    CMatrix left = m;
    apply_to_columns(left, num_modes, local_cutoff, mode, op);
    CMatrix right = left.adjoint();
    apply_to_columns(right, num_modes, local_cutoff, mode, op);
    return right.adjoint();
}

} // namespace

std::size_t dense_dimension(int num_modes, int local_cutoff) {
    check_cutoff(local_cutoff);
    if (num_modes < 1) throw std::invalid_argument("fockdense: need at least one mode");
    const std::size_t d = static_cast<std::size_t>(local_cutoff) + 1;
    std::size_t dim = 1;
    for (int k = 0; k < num_modes; ++k) {
        dim *= d;
        if (dim > kMaxDenseDimension) {
            throw ResourceError("fockdense: (n_c+1)^M = " + std::to_string(d) + "^" +
                                std::to_string(num_modes) + " exceeds limit " +
                                std::to_string(kMaxDenseDimension));
        }
    }
    return dim;
}

std::size_t basis_index(const FockOutcome &n, int local_cutoff) {
    const std::size_t d = static_cast<std::size_t>(local_cutoff) + 1;
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (int nk : n.counts()) {
        if (nk > local_cutoff) {
            throw std::invalid_argument("fockdense: outcome " + n.to_string() + " exceeds local cutoff " +
                                        std::to_string(local_cutoff));
        }
        idx += static_cast<std::size_t>(nk) * stride;
        stride *= d;
    }
    return idx;
}

CVector single_mode_squeezed_vector(double r, int local_cutoff) {
    check_cutoff(local_cutoff);
    const int padded = std::max(local_cutoff + 20, 60);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(padded + 1, padded + 1);
    for (int n = 1; n <= padded; ++n) a(n - 1, n) = std::sqrt(double(n));
    const Eigen::MatrixXd a2 = a * a;
    const Eigen::MatrixXd generator = 0.5 * r * (a2 - a2.transpose());
    const Eigen::MatrixXd S = generator.exp();
    return S.col(0).head(local_cutoff + 1).cast<cplx>();
}

double squeezed_tail_mass(double r, int local_cutoff) {
    return std::max(0.0, 1.0 - single_mode_squeezed_vector(r, local_cutoff).squaredNorm());
}

DenseState dense_squeezed_vacuum(const gauss::SqueezeSpec &s, int local_cutoff) {
    const int M = s.num_modes();
    dense_dimension(M, local_cutoff);
    CVector psi = CVector::Ones(1);
    for (int k = 0; k < M; ++k) {
        // Mode k becomes the slowest index so far: kron(v_k, psi).
        const CVector v = single_mode_squeezed_vector(s.r[static_cast<std::size_t>(k)], local_cutoff);
        CVector next(psi.size() * v.size());
        for (Eigen::Index p = 0; p < v.size(); ++p) next.segment(p * psi.size(), psi.size()) = v(p) * psi;
        psi = std::move(next);
    }
    return DenseState{std::move(psi), M, local_cutoff};
}

DenseState dense_fock_state(const FockOutcome &n, int local_cutoff) {
    const int M = static_cast<int>(n.num_modes());
    const std::size_t dim = dense_dimension(M, local_cutoff);
    CVector psi = CVector::Zero(static_cast<Eigen::Index>(dim));
    psi(static_cast<Eigen::Index>(basis_index(n, local_cutoff))) = 1.0;
    return DenseState{std::move(psi), M, local_cutoff};
}

DenseDensity to_density(const DenseState &psi) {
    check_density_dimension(static_cast<std::size_t>(psi.amplitudes.size()));
    return DenseDensity{psi.amplitudes * psi.amplitudes.adjoint(), psi.num_modes, psi.local_cutoff};
}

void apply_two_mode_serial(std::span<cplx> amplitudes, int num_modes, int local_cutoff, int mode,
                           const CMatrix &op) {
    const std::size_t d = static_cast<std::size_t>(local_cutoff) + 1;
    const std::size_t low = ipow(d, mode);
    const std::size_t high = amplitudes.size() / (low * d * d);
    const std::size_t s1 = low, s2 = low * d;
    check_span(amplitudes, num_modes, local_cutoff, mode, 2);
    CVector x(static_cast<Eigen::Index>(d * d)), y(static_cast<Eigen::Index>(d * d));
    for (std::size_t h = 0; h < high; ++h) {
        for (std::size_t l = 0; l < low; ++l) {
            const std::size_t base = h * low * d * d + l;
            for (std::size_t p1 = 0; p1 < d; ++p1)
                for (std::size_t p2 = 0; p2 < d; ++p2)
                    x(static_cast<Eigen::Index>(p1 * d + p2)) = amplitudes[base + p1 * s1 + p2 * s2];
            y.noalias() = op * x;
            for (std::size_t p1 = 0; p1 < d; ++p1)
                for (std::size_t p2 = 0; p2 < d; ++p2)
                    amplitudes[base + p1 * s1 + p2 * s2] = y(static_cast<Eigen::Index>(p1 * d + p2));
        }
    }
}

void apply_two_mode(std::span<cplx> amplitudes, int num_modes, int local_cutoff, int mode,
                    const CMatrix &op) {
    const std::size_t d = static_cast<std::size_t>(local_cutoff) + 1;
    const std::size_t low = ipow(d, mode);
    const std::size_t groups = amplitudes.size() / (d * d);
    const std::size_t s1 = low, s2 = low * d;
    check_span(amplitudes, num_modes, local_cutoff, mode, 2);
#pragma omp parallel
    {
        CVector x(static_cast<Eigen::Index>(d * d)), y(static_cast<Eigen::Index>(d * d));
#pragma omp for schedule(static)
        for (std::size_t g = 0; g < groups; ++g) {
            const std::size_t base = (g / low) * low * d * d + g % low;
            for (std::size_t p1 = 0; p1 < d; ++p1)
                for (std::size_t p2 = 0; p2 < d; ++p2)
                    x(static_cast<Eigen::Index>(p1 * d + p2)) = amplitudes[base + p1 * s1 + p2 * s2];
            y.noalias() = op * x;
            for (std::size_t p1 = 0; p1 < d; ++p1)
                for (std::size_t p2 = 0; p2 < d; ++p2)
                    amplitudes[base + p1 * s1 + p2 * s2] = y(static_cast<Eigen::Index>(p1 * d + p2));
        }
    }
}

void apply_single_mode(std::span<cplx> amplitudes, int num_modes, int local_cutoff, int mode,
                       const CMatrix &op) {
    const std::size_t d = static_cast<std::size_t>(local_cutoff) + 1;
    const std::size_t low = ipow(d, mode);
    const std::size_t high = amplitudes.size() / (low * d);
    check_span(amplitudes, num_modes, local_cutoff, mode, 1);
    CVector x(static_cast<Eigen::Index>(d)), y(static_cast<Eigen::Index>(d));
    for (std::size_t h = 0; h < high; ++h) {
        for (std::size_t l = 0; l < low; ++l) {
            const std::size_t base = h * low * d + l;
            for (std::size_t p = 0; p < d; ++p) x(static_cast<Eigen::Index>(p)) = amplitudes[base + p * low];
            y.noalias() = op * x;
            for (std::size_t p = 0; p < d; ++p) amplitudes[base + p * low] = y(static_cast<Eigen::Index>(p));
        }
    }
}

DenseState dense_evolve_state(const DenseState &psi, const circuit::Circuit &c) {
    if (c.num_modes() != psi.num_modes) {
        throw std::invalid_argument("dense_evolve_state: mode count mismatch");
    }
    if (auto lossy = c.first_lossy_gate()) {
        throw UnsupportedConfiguration("dense_evolve_state: gate " + std::to_string(*lossy) +
                                       " is lossy; use dense_evolve_density");
    }
    DenseState out = psi;
    std::span<cplx> amps(out.amplitudes.data(), static_cast<std::size_t>(out.amplitudes.size()));
    for (const auto &layer : c.layers()) {
        for (const auto &g : layer) {
            apply_two_mode(amps, out.num_modes, out.local_cutoff, g.first_mode,
                           circuit::gate_unitary_fock(g.params, out.local_cutoff));
        }
    }
    return out;
}

DenseDensity dense_evolve_density(const DenseDensity &rho, const circuit::Circuit &c) {
    if (c.num_modes() != rho.num_modes) {
        throw std::invalid_argument("dense_evolve_density: mode count mismatch");
    }
    check_density_dimension(static_cast<std::size_t>(rho.matrix.rows()));
    const int M = rho.num_modes, nc = rho.local_cutoff;
    CMatrix m = rho.matrix;
    for (const auto &layer : c.layers()) {
        for (const auto &g : layer) {
            m = conjugate(m, M, nc, g.first_mode, circuit::gate_unitary_fock(g.params, nc));
            if (g.is_lossy()) {
                CMatrix sum = CMatrix::Zero(m.rows(), m.cols());
                for (const auto &K : circuit::kraus_set(g.loss_gamma, nc)) {
                    sum += conjugate(m, M, nc, g.lossy_mode_index(), K);
                }
                m = std::move(sum);
            }
        }
    }
    return DenseDensity{std::move(m), M, nc};
}

CMatrix dense_adjoint_evolve_operator(const CMatrix &op, int num_modes, int local_cutoff,
                                      const circuit::Circuit &c) {
    const std::size_t dim = dense_dimension(num_modes, local_cutoff);
    check_density_dimension(dim);
    if (static_cast<std::size_t>(op.rows()) != dim || op.rows() != op.cols()) {
        throw std::invalid_argument("dense_adjoint_evolve_operator: operator has wrong dimension");
    }
    CMatrix m = op;
    const auto &layers = c.layers();
    for (auto layer = layers.rbegin(); layer != layers.rend(); ++layer) {
        for (auto g = layer->rbegin(); g != layer->rend(); ++g) {
            if (g->is_lossy()) {
                CMatrix sum = CMatrix::Zero(m.rows(), m.cols());
                for (const auto &K : circuit::kraus_set(g->loss_gamma, local_cutoff)) {
                    sum += conjugate(m, num_modes, local_cutoff, g->lossy_mode_index(), K.adjoint());
                }
                m = std::move(sum);
            }
            m = conjugate(m, num_modes, local_cutoff, g->first_mode,
                          circuit::gate_unitary_fock(g->params, local_cutoff).adjoint());
        }
    }
    return m;
}

double dense_probability(const DenseState &psi, const FockOutcome &n) {
    if (static_cast<int>(n.num_modes()) != psi.num_modes) {
        throw std::invalid_argument("dense_probability: outcome mode count mismatch");
    }
    return std::norm(psi.amplitudes(static_cast<Eigen::Index>(basis_index(n, psi.local_cutoff))));
}

double dense_probability(const DenseDensity &rho, const FockOutcome &n) {
    if (static_cast<int>(n.num_modes()) != rho.num_modes) {
        throw std::invalid_argument("dense_probability: outcome mode count mismatch");
    }
    const auto idx = static_cast<Eigen::Index>(basis_index(n, rho.local_cutoff));
    return rho.matrix(idx, idx).real();
}

double dense_mean_photon_number(const DenseDensity &rho, int mode) {
    const std::size_t d = static_cast<std::size_t>(rho.local_cutoff) + 1;
    const std::size_t stride = ipow(d, mode);
    double mean = 0.0;
    for (Eigen::Index i = 0; i < rho.matrix.rows(); ++i) {
        const std::size_t n = (static_cast<std::size_t>(i) / stride) % d;
        mean += double(n) * rho.matrix(i, i).real();
    }
    return mean;
}

} // namespace hgbs::fockdense
