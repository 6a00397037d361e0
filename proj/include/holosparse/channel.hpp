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
#include <cstdint>
#include <iosfwd>

#include <Eigen/Dense>

#include "holosparse/geometry.hpp"
#include "holosparse/rng.hpp"
#include "holosparse/scattering.hpp"

namespace holosparse {

/// One channel realization: the wavenumber-domain matrix and its spatial
/// image, plus everything needed to regenerate it.
struct ChannelInstance {
    Eigen::MatrixXcd h_wavenumber;  // |xi_R| x |xi_S|
    Eigen::MatrixXcd h_spatial;     // N_R x N_S
    std::uint64_t seed;
    ScatteringProfile rx_profile;
    ScatteringProfile tx_profile;
    UpaGeometry rx_geometry;
    UpaGeometry tx_geometry;
    double carrier_frequency_hz;
};

/// Draws the wavenumber-domain channel: entry (l, m) is
/// sqrt(var_rx[l] * var_tx[m]) times a unit-variance circularly-symmetric
/// complex Gaussian. Entries are drawn row-major, so the realization is a
/// pure function of the stream state.
Eigen::MatrixXcd sample_wavenumber_channel(const VarianceVector& var_rx,
                                           const VarianceVector& var_tx, RngStream& rng);

/// Spatial channel H = Psi_R * H_a * Psi_S^H.
Eigen::MatrixXcd synthesize_spatial(const SparsifyingBasis& basis_rx,
                                    const Eigen::MatrixXcd& h_wavenumber,
                                    const SparsifyingBasis& basis_tx);

/// Direct entrywise double sum over both wavenumber sets with unnormalized
/// Fourier harmonics (receive phases positive, transmit negative). Differs
/// from the basis synthesis by the constant sqrt(N_R * N_S). Test oracle;
/// quadratically slower than the matrix route.
std::complex<double> spatial_entry_oracle(const UpaGeometry& rx_geom,
                                          const UpaGeometry& tx_geom,
                                          const WavenumberGrid& rx_grid,
                                          const WavenumberGrid& tx_grid,
                                          const Eigen::MatrixXcd& h_wavenumber,
                                          int n_rx, int n_tx);

/// Mutual-coupling wrap: M_R * H * M_S. Identity couplings leave H unchanged.
Eigen::MatrixXcd apply_coupling(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& m_rx,
                                const Eigen::MatrixXcd& m_tx);

/// Portable text export: one JSON header line with dimensions, seed and
/// profiles, then "H_a" and "H" blocks of CSV rows with interleaved
/// re,im entries (row-major, 17 significant digits).
void write_channel(std::ostream& os, const ChannelInstance& instance);

}  // namespace holosparse
