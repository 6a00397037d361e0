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

#include <Eigen/Dense>

#include "holosparse/rng.hpp"

namespace holosparse {

/// One compressed pilot observation: Y = C * H * X + N.
struct PilotObservation {
    Eigen::MatrixXcd pilots;    // X, N_S x P, entries +-1/sqrt(N_S)
    Eigen::MatrixXcd combiner;  // C, N_RF x N_R
    Eigen::MatrixXcd received;  // Y, N_RF x P
    double noise_variance;      // per complex entry
    double snr_db;

    int pilot_length() const { return static_cast<int>(pilots.cols()); }
    int rf_chains() const { return static_cast<int>(combiner.rows()); }
    double compression_ratio() const {
        return static_cast<double>(pilots.cols() * combiner.rows()) /
               static_cast<double>(pilots.rows() * combiner.cols());
    }
};

/// Random binary pilots: i.i.d. equiprobable +-1/sqrt(N_S), so every column
/// has unit norm exactly.
Eigen::MatrixXcd gen_pilots(int n_tx, int pilot_length, RngStream& rng);

/// Dimension-reducing combiner with i.i.d. CN(0, 1/N_R) entries.
Eigen::MatrixXcd gen_combiner(int n_rf, int n_rx, RngStream& rng);

/// Per-entry complex noise variance that realizes the target SNR
/// ||C H X||_F^2 / (P * N_RF * sigma_n^2).
double noise_variance_for_snr(const Eigen::MatrixXcd& combiner, const Eigen::MatrixXcd& h,
                              const Eigen::MatrixXcd& pilots, double snr_db);

/// Noisy observation Y = C H X + N, N i.i.d. CN(0, noise_variance).
Eigen::MatrixXcd observe(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& pilots,
                         const Eigen::MatrixXcd& combiner, double noise_variance,
                         RngStream& rng);

}  // namespace holosparse
