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

#include "holosparse/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace holosparse {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Eigen::MatrixXcd gen_pilots(int n_tx, int pilot_length, RngStream& rng) {
    require(n_tx >= 1 && pilot_length >= 1, "pilot dimensions must be positive");
    const double mag = 1.0 / std::sqrt(static_cast<double>(n_tx));
    Eigen::MatrixXcd x(n_tx, pilot_length);
    for (int r = 0; r < n_tx; ++r)
        for (int c = 0; c < pilot_length; ++c) x(r, c) = rng.coin() ? mag : -mag;
    return x;
}

Eigen::MatrixXcd gen_combiner(int n_rf, int n_rx, RngStream& rng) {
    require(n_rf >= 1 && n_rx >= 1, "combiner dimensions must be positive");
    require(n_rf <= n_rx, "combiner cannot have more RF chains than antennas");
    const double var = 1.0 / static_cast<double>(n_rx);
    Eigen::MatrixXcd c(n_rf, n_rx);
    for (int r = 0; r < n_rf; ++r)
        for (int col = 0; col < n_rx; ++col) c(r, col) = rng.cgauss(var);
    return c;
}

double noise_variance_for_snr(const Eigen::MatrixXcd& combiner, const Eigen::MatrixXcd& h,
                              const Eigen::MatrixXcd& pilots, double snr_db) {
    require(combiner.cols() == h.rows() && h.cols() == pilots.rows(),
            "dimension mismatch in C * H * X");
    const double energy = (combiner * h * pilots).squaredNorm();
    if (!(energy > 0.0))
        throw std::domain_error("degenerate signal: ||C H X|| is zero");
    const double denom = static_cast<double>(pilots.cols() * combiner.rows());
    return energy / (denom * std::pow(10.0, snr_db / 10.0));
}

Eigen::MatrixXcd observe(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& pilots,
                         const Eigen::MatrixXcd& combiner, double noise_variance,
                         RngStream& rng) {
    require(combiner.cols() == h.rows() && h.cols() == pilots.rows(),
            "dimension mismatch in C * H * X");
    require(noise_variance >= 0.0, "noise variance must be nonnegative");
    Eigen::MatrixXcd y = combiner * h * pilots;
    for (Eigen::Index r = 0; r < y.rows(); ++r)
        for (Eigen::Index c = 0; c < y.cols(); ++c) y(r, c) += rng.cgauss(noise_variance);
    return y;
}

}  // namespace holosparse
