// SPDX-License-Identifier: Apache-2.0
//
// holosparse - wavenumber-domain synthesis and sparse estimation of
// holographic MIMO channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "holosparse/geometry.hpp"

namespace holosparse {

/// One selected rank-one atom a_i * b_j^T and its fitted weight.
struct SupportEntry {
    int atom_rx;
    int atom_tx;
    std::complex<double> weight;
};

struct EstimateResult {
    Eigen::MatrixXcd h_wavenumber;  // atom-domain coefficients, zero off support
    Eigen::MatrixXcd h_spatial;     // Psi_R * H_a_hat * Psi_S^H
    std::vector<SupportEntry> support;
    int iterations_used = 0;
    double residual_norm = 0.0;
    std::vector<double> residual_history;  // ||Y_res||_F after each iteration
    bool regularized = false;              // a weight solve needed regularization
};

/// Jointly refits the weights of rank-one atoms a_n * b_n^T against Y by
/// least squares. atoms_rx holds the a_n as columns (N_RF x u), atoms_tx the
/// b_n^T as rows (u x P). The normal matrix is assembled from the two Gram
/// matrices, never from outer products. When its condition number exceeds
/// 1e12 the solve falls back to F + eps*I with eps = 1e-10 * tr(F) / u and
/// *regularized is set.
Eigen::VectorXcd solve_weights(const Eigen::MatrixXcd& atoms_rx,
                               const Eigen::MatrixXcd& atoms_tx,
                               const Eigen::MatrixXcd& y, bool* regularized = nullptr);

/// Greedy rank-one matching pursuit over the atom pairs of two sparsifying
/// bases. Per iteration: pick the unused pair (i, j) maximizing
/// |a_i^H Y_res b_j*| / (||a_i|| ||b_j||), refit all weights jointly, update
/// the residual. Ties break to the lowest linear index i * n_tx + j.
EstimateResult basis_omp(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& x,
                         const Eigen::MatrixXcd& c, const SparsifyingBasis& basis_rx,
                         const SparsifyingBasis& basis_tx, int u_iter);

/// basis_omp with the wavenumber-domain bases; the estimator this library
/// is built around.
EstimateResult wd_omp(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& x,
                      const Eigen::MatrixXcd& c, const SparsifyingBasis& basis_rx,
                      const SparsifyingBasis& basis_tx, int u_iter);

/// CoSaMP adapted to rank-one atoms: per iteration merge the 2K best new
/// pairs into the support, refit, prune to the K largest weights, refit
/// again. Stops at max_iter or when the residual improves by less than 1e-6
/// relative; returns the best iterate seen. Requires 3K <= atom count.
EstimateResult basis_cosamp(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& x,
                            const Eigen::MatrixXcd& c, const SparsifyingBasis& basis_rx,
                            const SparsifyingBasis& basis_tx, int sparsity, int max_iter);

/// Minimum-Frobenius-norm least-squares estimate pinv(C) * Y * pinv(X).
Eigen::MatrixXcd ls_estimate(const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& x,
                             const Eigen::MatrixXcd& c);

/// ||h_hat - h||_F^2 / ||h||_F^2 for one realization. Aggregation across
/// trials keeps numerator and denominator separate (ratio of expectations).
double nmse(const Eigen::MatrixXcd& h_hat, const Eigen::MatrixXcd& h);
double nmse_db(const Eigen::MatrixXcd& h_hat, const Eigen::MatrixXcd& h);

}  // namespace holosparse
