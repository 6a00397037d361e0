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

#include "holosparse/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace holosparse {

namespace {

using cd = std::complex<double>;
using RowMajorXcd =
    Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kPi = std::numbers::pi;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

/// Per-axis Fourier factor: entry (element sx, axis index l) is
/// (1/sqrt(n)) * exp(j * 2*pi * l * sx * spacing / aperture) over the signed
/// element range. With aperture = n * spacing these are unitary DFT columns.
Eigen::MatrixXcd axis_factor(int n, double spacing, double aperture, int l_min,
                             int l_max) {
    const int half = (n - 1) / 2;
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::MatrixXcd f(n, l_max - l_min + 1);
    for (int a = 0; a <= l_max - l_min; ++a) {
        const int l = l_min + a;
        for (int e = 0; e < n; ++e) {
            const int sx = e - half;
            const double phase = 2.0 * kPi * l * sx * spacing / aperture;
            f(e, a) = scale * cd(std::cos(phase), std::sin(phase));
        }
    }
    return f;
}

}  // namespace

SystemConfig::SystemConfig(double carrier_frequency_hz) : f_c_(carrier_frequency_hz) {
    require(carrier_frequency_hz > 0.0, "carrier frequency must be positive");
}

double SystemConfig::wavenumber() const { return 2.0 * kPi * f_c_ / kSpeedOfLight; }

UpaGeometry::UpaGeometry(int n_x, int n_y, double spacing_m, const Eigen::Vector3d& origin)
    : n_x_(n_x), n_y_(n_y), spacing_(spacing_m), origin_(origin) {
    require(n_x >= 1 && n_x % 2 == 1, "n_x must be an odd positive integer");
    require(n_y >= 1 && n_y % 2 == 1, "n_y must be an odd positive integer");
    require(spacing_m > 0.0, "element spacing must be positive");
}

std::pair<int, int> UpaGeometry::signed_index(int linear) const {
    require(linear >= 0 && linear < size(), "element index out of range");
    const int sx = linear / n_y_ - (n_x_ - 1) / 2;
    const int sy = linear % n_y_ - (n_y_ - 1) / 2;
    return {sx, sy};
}

int UpaGeometry::linear_index(int sx, int sy) const {
    require(std::abs(sx) <= (n_x_ - 1) / 2 && std::abs(sy) <= (n_y_ - 1) / 2,
            "signed element index out of range");
    return (sx + (n_x_ - 1) / 2) * n_y_ + sy + (n_y_ - 1) / 2;
}

Eigen::Vector3d UpaGeometry::antenna_position(int linear) const {
    const auto [sx, sy] = signed_index(linear);
    return origin_ + spacing_ * Eigen::Vector3d(sx, sy, 0.0);
}

WavenumberGrid::WavenumberGrid(std::vector<WavenumberIndex> indices, double aperture_x,
                               double aperture_y, double wavelength)
    : indices_(std::move(indices)),
      aperture_x_(aperture_x),
      aperture_y_(aperture_y),
      wavelength_(wavelength) {
    require(!indices_.empty(), "wavenumber grid must contain at least one index");
    require(aperture_x > 0.0 && aperture_y > 0.0 && wavelength > 0.0,
            "grid apertures and wavelength must be positive");
}

std::pair<double, double> WavenumberGrid::cell_center(int i) const {
    const auto& w = indices_.at(i);
    return {2.0 * kPi * w.lx / aperture_x_, 2.0 * kPi * w.ly / aperture_y_};
}

double WavenumberGrid::cell_width_x() const { return 2.0 * kPi / aperture_x_; }

double WavenumberGrid::cell_width_y() const { return 2.0 * kPi / aperture_y_; }

int WavenumberGrid::find(int lx, int ly) const {
    for (int i = 0; i < size(); ++i)
        if (indices_[i].lx == lx && indices_[i].ly == ly) return i;
    return -1;
}

WavenumberGrid enumerate_wavenumber_set(double aperture_x_m, double aperture_y_m,
                                        double wavelength_m) {
    require(aperture_x_m > 0.0 && aperture_y_m > 0.0 && wavelength_m > 0.0,
            "apertures and wavelength must be positive");
    const int bx = static_cast<int>(std::floor(aperture_x_m / wavelength_m));
    const int by = static_cast<int>(std::floor(aperture_y_m / wavelength_m));
    std::vector<WavenumberIndex> indices;
    for (int lx = -bx; lx <= bx; ++lx) {
        const double ex = lx * wavelength_m / aperture_x_m;
        for (int ly = -by; ly <= by; ++ly) {
            const double ey = ly * wavelength_m / aperture_y_m;
            if (ex * ex + ey * ey <= 1.0) indices.push_back({lx, ly});
        }
    }
    return WavenumberGrid(std::move(indices), aperture_x_m, aperture_y_m, wavelength_m);
}

double kz(double k_x, double k_y, double k) {
    require(k > 0.0, "wavenumber k must be positive");
    const double rad = k * k - k_x * k_x - k_y * k_y;
    if (rad < 0.0) {
        // Tolerate boundary rounding from grid membership checks.
        if (rad > -1e-12 * k * k) return 0.0;
        throw std::domain_error("evanescent wave: k_x^2 + k_y^2 exceeds k^2");
    }
    return std::sqrt(rad);
}

SparsifyingBasis::SparsifyingBasis(BasisKind kind, int n_x, int n_y,
                                   Eigen::MatrixXcd factor_x, Eigen::MatrixXcd factor_y,
                                   std::vector<WavenumberIndex> atoms, int lx_min,
                                   int ly_min, std::optional<WavenumberGrid> grid)
    : kind_(kind),
      n_x_(n_x),
      n_y_(n_y),
      factor_x_(std::move(factor_x)),
      factor_y_(std::move(factor_y)),
      atoms_(std::move(atoms)),
      lx_min_(lx_min),
      ly_min_(ly_min),
      grid_(std::move(grid)),
      dense_cache_(std::make_unique<DenseCache>()) {
    factor_idx_.reserve(atoms_.size());
    for (const auto& a : atoms_) factor_idx_.emplace_back(a.lx - lx_min_, a.ly - ly_min_);
}

const WavenumberGrid& SparsifyingBasis::grid() const {
    if (!grid_) throw std::logic_error("angular basis has no wavenumber grid");
    return *grid_;
}

Eigen::VectorXcd SparsifyingBasis::column(int atom) const {
    require(atom >= 0 && atom < cols(), "basis atom index out of range");
    const auto [ix, iy] = factor_idx_[atom];
    Eigen::VectorXcd out(rows());
    for (int ex = 0; ex < n_x_; ++ex)
        for (int ey = 0; ey < n_y_; ++ey)
            out(ex * n_y_ + ey) = factor_x_(ex, ix) * factor_y_(ey, iy);
    return out;
}

const Eigen::MatrixXcd& SparsifyingBasis::dense() const {
    std::call_once(dense_cache_->once, [this] {
        Eigen::MatrixXcd m(rows(), cols());
        for (int a = 0; a < cols(); ++a) m.col(a) = column(a);
        dense_cache_->matrix = std::move(m);
    });
    return dense_cache_->matrix;
}

Eigen::MatrixXcd SparsifyingBasis::left_product(const Eigen::MatrixXcd& m) const {
    require(m.cols() == rows(), "dimension mismatch in basis product");
    Eigen::MatrixXcd out(m.rows(), cols());
    Eigen::VectorXcd rowbuf(rows());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        rowbuf = m.row(r).transpose();
        Eigen::Map<const RowMajorXcd> mr(rowbuf.data(), n_x_, n_y_);
        const Eigen::MatrixXcd t = factor_x_.transpose() * mr * factor_y_;
        for (int a = 0; a < cols(); ++a)
            out(r, a) = t(factor_idx_[a].first, factor_idx_[a].second);
    }
    return out;
}

Eigen::MatrixXcd SparsifyingBasis::adjoint_product(const Eigen::MatrixXcd& x) const {
    require(x.rows() == rows(), "dimension mismatch in basis adjoint product");
    Eigen::MatrixXcd out(cols(), x.cols());
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        Eigen::Map<const RowMajorXcd> xc(x.col(c).data(), n_x_, n_y_);
        const Eigen::MatrixXcd t = factor_x_.adjoint() * xc * factor_y_.conjugate();
        for (int a = 0; a < cols(); ++a)
            out(a, c) = t(factor_idx_[a].first, factor_idx_[a].second);
    }
    return out;
}

Eigen::MatrixXcd SparsifyingBasis::product(const Eigen::MatrixXcd& coeff) const {
    require(coeff.rows() == cols(), "dimension mismatch in basis product");
    Eigen::MatrixXcd out(rows(), coeff.cols());
    Eigen::MatrixXcd v(factor_x_.cols(), factor_y_.cols());
    for (Eigen::Index c = 0; c < coeff.cols(); ++c) {
        v.setZero();
        for (int a = 0; a < cols(); ++a)
            v(factor_idx_[a].first, factor_idx_[a].second) = coeff(a, c);
        const Eigen::MatrixXcd t = factor_x_ * v * factor_y_.transpose();
        Eigen::Map<RowMajorXcd> oc(out.col(c).data(), n_x_, n_y_);
        oc = t;
    }
    return out;
}

SparsifyingBasis build_wd_basis(const UpaGeometry& geom, const WavenumberGrid& grid) {
    const double tol_x = 1e-9 * grid.aperture_x();
    const double tol_y = 1e-9 * grid.aperture_y();
    require(std::abs(grid.aperture_x() - geom.aperture_x()) <= tol_x &&
                std::abs(grid.aperture_y() - geom.aperture_y()) <= tol_y,
            "wavenumber grid apertures do not match the array apertures");

    int lx_min = 0, lx_max = 0, ly_min = 0, ly_max = 0;
    for (const auto& w : grid.indices()) {
        lx_min = std::min(lx_min, w.lx);
        lx_max = std::max(lx_max, w.lx);
        ly_min = std::min(ly_min, w.ly);
        ly_max = std::max(ly_max, w.ly);
    }
    auto fx = axis_factor(geom.n_x(), geom.spacing(), geom.aperture_x(), lx_min, lx_max);
    auto fy = axis_factor(geom.n_y(), geom.spacing(), geom.aperture_y(), ly_min, ly_max);
    return SparsifyingBasis(BasisKind::wavenumber, geom.n_x(), geom.n_y(), std::move(fx),
                            std::move(fy), grid.indices(), lx_min, ly_min, grid);
}

SparsifyingBasis build_ad_basis(const UpaGeometry& geom) {
    const int hx = (geom.n_x() - 1) / 2;
    const int hy = (geom.n_y() - 1) / 2;
    auto fx = axis_factor(geom.n_x(), geom.spacing(), geom.aperture_x(), -hx, hx);
    auto fy = axis_factor(geom.n_y(), geom.spacing(), geom.aperture_y(), -hy, hy);
    std::vector<WavenumberIndex> atoms;
    atoms.reserve(static_cast<std::size_t>(geom.size()));
    for (int fx_i = -hx; fx_i <= hx; ++fx_i)
        for (int fy_i = -hy; fy_i <= hy; ++fy_i) atoms.push_back({fx_i, fy_i});
    return SparsifyingBasis(BasisKind::angular, geom.n_x(), geom.n_y(), std::move(fx),
                            std::move(fy), std::move(atoms), -hx, -hy, std::nullopt);
}

double gram_identity_deviation_dense(const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd g = m.adjoint() * m;
    g.diagonal().array() -= 1.0;
    return g.cwiseAbs().maxCoeff();
}

double gram_identity_deviation(const SparsifyingBasis& basis) {
    const Eigen::MatrixXcd gx = basis.factor_x().adjoint() * basis.factor_x();
    const Eigen::MatrixXcd gy = basis.factor_y().adjoint() * basis.factor_y();

    // Diagonal of the full Gram: products of the two factor diagonals.
    double dev = 0.0;
    for (Eigen::Index i = 0; i < gx.rows(); ++i)
        for (Eigen::Index j = 0; j < gy.rows(); ++j)
            dev = std::max(dev, std::abs(gx(i, i) * gy(j, j) - 1.0));

    // Off-diagonal: |gx(a,b)*gy(c,d)| is maximized by pairing the largest
    // off-diagonal factor entry with the largest overall entry of the other.
    double gx_max = 0.0, gx_off = 0.0, gy_max = 0.0, gy_off = 0.0;
    for (Eigen::Index a = 0; a < gx.rows(); ++a)
        for (Eigen::Index b = 0; b < gx.cols(); ++b) {
            const double v = std::abs(gx(a, b));
            gx_max = std::max(gx_max, v);
            if (a != b) gx_off = std::max(gx_off, v);
        }
    for (Eigen::Index a = 0; a < gy.rows(); ++a)
        for (Eigen::Index b = 0; b < gy.cols(); ++b) {
            const double v = std::abs(gy(a, b));
            gy_max = std::max(gy_max, v);
            if (a != b) gy_off = std::max(gy_off, v);
        }
    dev = std::max(dev, gx_off * gy_max);
    dev = std::max(dev, gx_max * gy_off);
    return dev;
}

}  // namespace holosparse
