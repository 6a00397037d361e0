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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "holosparse/geometry.hpp"

namespace holosparse {

/// One scattering cluster: a von Mises-Fisher lobe on the sphere.
/// Angles are radians; zenith in [0, pi/2], azimuth in [0, 2*pi).
struct Cluster {
    double weight;         // mixture weight, in (0, 1]
    double zenith;         // mean direction zenith
    double azimuth;        // mean direction azimuth
    double concentration;  // VMF concentration, > 0
};

/// Normalized VMF mixture describing the angular power spectrum seen by one
/// side of the link. Mixture weights must sum to 1 within 1e-9.
class ScatteringProfile {
public:
    explicit ScatteringProfile(std::vector<Cluster> clusters);

    const std::vector<Cluster>& clusters() const { return clusters_; }

private:
    std::vector<Cluster> clusters_;
};

/// JSON form used in files: angles in degrees,
/// {"clusters":[{"w":..., "theta_deg":..., "phi_deg":..., "alpha":...}]}.
nlohmann::json to_json(const ScatteringProfile& profile);
ScatteringProfile profile_from_json(const nlohmann::json& j);

/// VMF concentration for an angular spread in degrees: 212.9^2 / spread^2.
/// Valid for spreads in (0, 21) degrees.
double concentration_from_as(double angular_spread_deg);

/// VMF density on the sphere, per steradian. Computed in the log domain for
/// concentrations above 30 so that extreme lobes cannot overflow sinh.
double vmf_pdf(double zenith, double azimuth, const Cluster& cluster);

/// Mixture density: weighted sum of the cluster VMF densities.
double spectral_factor(double zenith, double azimuth, const ScatteringProfile& profile);

/// Per-cell channel variances on a wavenumber grid, normalized to sum to 1.
class VarianceVector {
public:
    VarianceVector(Eigen::VectorXd values, WavenumberGrid grid);

    const Eigen::VectorXd& values() const { return values_; }
    const WavenumberGrid& grid() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_(i); }

private:
    Eigen::VectorXd values_;
    WavenumberGrid grid_;
};

/// Integrates the mixture density over the angular region of each grid cell.
/// Each cell is the wavenumber rectangle of width (2*pi/L_x, 2*pi/L_y)
/// centered at (2*pi*l_x/L_x, 2*pi*l_y/L_y), intersected with the
/// propagating disk; the hemisphere pullback measure dk_x dk_y / (k * k_z)
/// converts the integral to solid angle. Midpoint rule with quad_order^2
/// nodes per cell; nodes with k_z below 1e-3*k are dropped. The result is
/// normalized so the entries sum to 1.
///
/// Cells are integrated in parallel; results are identical to the serial
/// reference because per-cell work is independent and the final reduction
/// runs in index order.
VarianceVector variance_vector(const ScatteringProfile& profile, const WavenumberGrid& grid,
                               double k, int quad_order = 8);

/// Serial reference implementation; bitwise-identical to variance_vector.
VarianceVector variance_vector_serial(const ScatteringProfile& profile,
                                      const WavenumberGrid& grid, double k,
                                      int quad_order = 8);

/// Minimum number of largest entries whose sum reaches
/// energy_fraction * sum(values). Values must be nonnegative with a
/// positive sum; energy_fraction lies in (0, 1].
int significant_count(std::span<const double> values, double energy_fraction);

inline int significant_count(const VarianceVector& v, double energy_fraction) {
    return significant_count(std::span<const double>(v.values().data(),
                                                     static_cast<std::size_t>(v.size())),
                             energy_fraction);
}

}  // namespace holosparse
