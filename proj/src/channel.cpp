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

#include "holosparse/channel.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace holosparse {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void write_matrix_block(std::ostream& os, const char* name, const Eigen::MatrixXcd& m) {
    os << name << '\n';
    char buf[64];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const auto v = m(r, c);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g", v.real(), v.imag());
            if (c) os << ',';
            os << buf;
        }
        os << '\n';
    }
}

}  // namespace

Eigen::MatrixXcd sample_wavenumber_channel(const VarianceVector& var_rx,
                                           const VarianceVector& var_tx, RngStream& rng) {
    const int nr = var_rx.size();
    const int nt = var_tx.size();
    Eigen::MatrixXcd h(nr, nt);
    for (int l = 0; l < nr; ++l) {
        const double sr = std::sqrt(var_rx[l]);
        for (int m = 0; m < nt; ++m)
            h(l, m) = sr * std::sqrt(var_tx[m]) * rng.cgauss(1.0);
    }
    return h;
}

Eigen::MatrixXcd synthesize_spatial(const SparsifyingBasis& basis_rx,
                                    const Eigen::MatrixXcd& h_wavenumber,
                                    const SparsifyingBasis& basis_tx) {
    require(h_wavenumber.rows() == basis_rx.cols() &&
                h_wavenumber.cols() == basis_tx.cols(),
            "wavenumber-domain channel dimensions do not match the bases");
    // H = Psi_R * H_a * Psi_S^H, evaluated as Psi_R * (Psi_S * H_a^H)^H.
    const Eigen::MatrixXcd inner = basis_tx.product(h_wavenumber.adjoint());
    return basis_rx.product(inner.adjoint());
}

std::complex<double> spatial_entry_oracle(const UpaGeometry& rx_geom,
                                          const UpaGeometry& tx_geom,
                                          const WavenumberGrid& rx_grid,
                                          const WavenumberGrid& tx_grid,
                                          const Eigen::MatrixXcd& h_wavenumber,
                                          int n_rx, int n_tx) {
    require(h_wavenumber.rows() == rx_grid.size() &&
                h_wavenumber.cols() == tx_grid.size(),
            "wavenumber-domain channel dimensions do not match the grids");
    const auto [rsx, rsy] = rx_geom.signed_index(n_rx);
    const auto [tsx, tsy] = tx_geom.signed_index(n_tx);
    const double dr = rx_geom.spacing();
    const double dt = tx_geom.spacing();

    std::complex<double> sum = 0.0;
    for (int l = 0; l < rx_grid.size(); ++l) {
        const auto& wl = rx_grid.indices()[l];
        const double rx_phase = 2.0 * kPi * (wl.lx * rsx * dr / rx_grid.aperture_x() +
                                             wl.ly * rsy * dr / rx_grid.aperture_y());
        for (int m = 0; m < tx_grid.size(); ++m) {
            const auto& wm = tx_grid.indices()[m];
            const double phase =
                rx_phase - 2.0 * kPi * (wm.lx * tsx * dt / tx_grid.aperture_x() +
                                        wm.ly * tsy * dt / tx_grid.aperture_y());
            sum += h_wavenumber(l, m) *
                   std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    return sum;
}

Eigen::MatrixXcd apply_coupling(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& m_rx,
                                const Eigen::MatrixXcd& m_tx) {
    require(m_rx.rows() == m_rx.cols() && m_rx.cols() == h.rows(),
            "receive coupling matrix must be N_R x N_R");
    require(m_tx.rows() == m_tx.cols() && m_tx.rows() == h.cols(),
            "transmit coupling matrix must be N_S x N_S");
    return m_rx * h * m_tx;
}

void write_channel(std::ostream& os, const ChannelInstance& instance) {
    nlohmann::json header{
        {"format", "holosparse.channel.v1"},
        {"seed", instance.seed},
        {"carrier_frequency_hz", instance.carrier_frequency_hz},
        {"rx_n_x", instance.rx_geometry.n_x()},
        {"rx_n_y", instance.rx_geometry.n_y()},
        {"tx_n_x", instance.tx_geometry.n_x()},
        {"tx_n_y", instance.tx_geometry.n_y()},
        {"rx_spacing_m", instance.rx_geometry.spacing()},
        {"tx_spacing_m", instance.tx_geometry.spacing()},
        {"xi_rx", instance.h_wavenumber.rows()},
        {"xi_tx", instance.h_wavenumber.cols()},
        {"rx_profile", to_json(instance.rx_profile)},
        {"tx_profile", to_json(instance.tx_profile)},
    };
    os << header.dump() << '\n';
    write_matrix_block(os, "H_a", instance.h_wavenumber);
    write_matrix_block(os, "H", instance.h_spatial);
}

}  // namespace holosparse
