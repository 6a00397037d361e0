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
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace holosparse {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Carrier settings. Wavelength and wavenumber are derived, never stored,
/// so k == 2*pi/lambda holds exactly.
class SystemConfig {
public:
    explicit SystemConfig(double carrier_frequency_hz);

    double carrier_frequency() const { return f_c_; }
    double wavelength() const { return kSpeedOfLight / f_c_; }
    double wavenumber() const;

private:
    double f_c_;
};

/// Uniform planar array in the xOy plane. Element counts are odd so that
/// signed element indices run over {-(N-1)/2, ..., 0, ..., (N-1)/2} on each
/// axis. The aperture convention is L = N * spacing on each axis.
///
/// The linear element index is x-major with y varying fastest:
///   linear = (sx + (n_x-1)/2) * n_y + (sy + (n_y-1)/2),
/// which maps the signed 2-D index bijectively onto {0, ..., n_x*n_y - 1}.
class UpaGeometry {
public:
    UpaGeometry(int n_x, int n_y, double spacing_m,
                const Eigen::Vector3d& origin = Eigen::Vector3d::Zero());

    int n_x() const { return n_x_; }
    int n_y() const { return n_y_; }
    int size() const { return n_x_ * n_y_; }
    double spacing() const { return spacing_; }
    double aperture_x() const { return n_x_ * spacing_; }
    double aperture_y() const { return n_y_ * spacing_; }
    const Eigen::Vector3d& origin() const { return origin_; }

    /// Signed per-axis indices (sx, sy) for a 0-based linear index.
    std::pair<int, int> signed_index(int linear) const;

    /// 0-based linear index for signed per-axis indices.
    int linear_index(int sx, int sy) const;

    /// Position of the element at the given 0-based linear index.
    Eigen::Vector3d antenna_position(int linear) const;

private:
    int n_x_;
    int n_y_;
    double spacing_;
    Eigen::Vector3d origin_;
};

struct WavenumberIndex {
    int lx;
    int ly;

    friend bool operator==(const WavenumberIndex&, const WavenumberIndex&) = default;
};

/// The lattice of propagating plane-wave indices for an aperture pair
/// (L_x, L_y) at wavelength lambda: all integer pairs (l_x, l_y) with
/// (l_x*lambda/L_x)^2 + (l_y*lambda/L_y)^2 <= 1, ordered ascending by l_x
/// and then l_y. The set depends only on the apertures and the wavelength,
/// not on element count or spacing.
class WavenumberGrid {
public:
    WavenumberGrid(std::vector<WavenumberIndex> indices, double aperture_x,
                   double aperture_y, double wavelength);

    const std::vector<WavenumberIndex>& indices() const { return indices_; }
    int size() const { return static_cast<int>(indices_.size()); }
    double aperture_x() const { return aperture_x_; }
    double aperture_y() const { return aperture_y_; }
    double wavelength() const { return wavelength_; }

    /// Cell center in wavenumber space: (2*pi*l_x/L_x, 2*pi*l_y/L_y) rad/m.
    std::pair<double, double> cell_center(int i) const;
    double cell_width_x() const;
    double cell_width_y() const;

    /// Position of (lx, ly) in the index list, or -1 when absent.
    int find(int lx, int ly) const;

private:
    std::vector<WavenumberIndex> indices_;
    double aperture_x_;
    double aperture_y_;
    double wavelength_;
};

WavenumberGrid enumerate_wavenumber_set(double aperture_x_m, double aperture_y_m,
                                        double wavelength_m);

/// z-axis wavenumber sqrt(k^2 - k_x^2 - k_y^2) of a propagating wave.
/// Throws std::domain_error for evanescent components (k_x^2 + k_y^2 > k^2);
/// callers are expected to have filtered those out via the wavenumber set.
double kz(double k_x, double k_y, double k);

enum class BasisKind { wavenumber, angular };

/// Sparsifying basis with separable columns: the column for atom (lx, ly)
/// is kron(fx_lx, fy_ly) of two per-axis factor columns, and every entry
/// has magnitude 1/sqrt(N). The factored form is kept so that products with
/// the basis cost O(N * (A_x + A_y)) per vector instead of O(N * A_x * A_y),
/// and so that large angular bases never need materializing.
class SparsifyingBasis {
public:
    BasisKind kind() const { return kind_; }
    int rows() const { return n_x_ * n_y_; }
    int cols() const { return static_cast<int>(atoms_.size()); }
    const std::vector<WavenumberIndex>& atoms() const { return atoms_; }

    /// Wavenumber grid the basis was built from (wavenumber kind only).
    const WavenumberGrid& grid() const;

    /// Single basis column (always available, never materializes the rest).
    Eigen::VectorXcd column(int atom) const;

    /// Full matrix, cached on first use. Intended for small configurations
    /// and tests; the product routines below avoid it entirely.
    const Eigen::MatrixXcd& dense() const;

    /// m * Psi, for m with rows() columns.
    Eigen::MatrixXcd left_product(const Eigen::MatrixXcd& m) const;
    /// Psi^H * x, for x with rows() rows.
    Eigen::MatrixXcd adjoint_product(const Eigen::MatrixXcd& x) const;
    /// Psi * coeff, for coeff with cols() rows.
    Eigen::MatrixXcd product(const Eigen::MatrixXcd& coeff) const;

    const Eigen::MatrixXcd& factor_x() const { return factor_x_; }
    const Eigen::MatrixXcd& factor_y() const { return factor_y_; }

private:
    friend SparsifyingBasis build_wd_basis(const UpaGeometry&, const WavenumberGrid&);
    friend SparsifyingBasis build_ad_basis(const UpaGeometry&);

    SparsifyingBasis(BasisKind kind, int n_x, int n_y, Eigen::MatrixXcd factor_x,
                     Eigen::MatrixXcd factor_y, std::vector<WavenumberIndex> atoms,
                     int lx_min, int ly_min, std::optional<WavenumberGrid> grid);

    struct DenseCache {
        std::once_flag once;
        Eigen::MatrixXcd matrix;
    };

    BasisKind kind_;
    int n_x_;
    int n_y_;
    Eigen::MatrixXcd factor_x_;  // n_x x A_x, column a is axis index lx_min + a
    Eigen::MatrixXcd factor_y_;  // n_y x A_y
    std::vector<WavenumberIndex> atoms_;
    std::vector<std::pair<int, int>> factor_idx_;  // per atom: (col in fx, col in fy)
    int lx_min_;
    int ly_min_;
    std::optional<WavenumberGrid> grid_;
    std::unique_ptr<DenseCache> dense_cache_;
};

/// Wavenumber-domain basis of Fourier harmonics restricted to the grid.
/// The grid apertures must match the geometry apertures.
SparsifyingBasis build_wd_basis(const UpaGeometry& geom, const WavenumberGrid& grid);

/// Angular-domain basis: the N x N unitary 2-D spatial DFT, frequency
/// indices over the same symmetric integer range as the element indices.
SparsifyingBasis build_ad_basis(const UpaGeometry& geom);

/// max |B^H B - I| over all entries, computed with the literal dense product.
double gram_identity_deviation_dense(const Eigen::MatrixXcd& m);

/// Upper bound on max |Psi^H Psi - I| from the per-axis factor Grams; exact
/// for angular bases (full product atom set) and tight in practice for
/// wavenumber bases. Costs O(A_x^2 + A_y^2) instead of O(N * cols^2).
double gram_identity_deviation(const SparsifyingBasis& basis);

}  // namespace holosparse
