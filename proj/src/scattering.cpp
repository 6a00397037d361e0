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

#include "holosparse/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holosparse {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEdgeKzFloor = 1e-3;  // drop nodes with k_z below this times k

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

/// Solid-angle integral of the mixture density over one wavenumber cell,
/// midpoint rule on an order x order sub-grid. Pure function of its inputs,
/// so cells can be evaluated in any order or concurrently.
double integrate_cell(const ScatteringProfile& profile, const WavenumberGrid& grid,
                      int cell, double k, int order) {
    const auto [cx, cy] = grid.cell_center(cell);
    const double wx = grid.cell_width_x();
    const double wy = grid.cell_width_y();
    const double hx = wx / order;
    const double hy = wy / order;
    const double k2 = k * k;

    double sum = 0.0;
    for (int a = 0; a < order; ++a) {
        const double k_x = cx - 0.5 * wx + (a + 0.5) * hx;
        for (int b = 0; b < order; ++b) {
            const double k_y = cy - 0.5 * wy + (b + 0.5) * hy;
            const double rr = k_x * k_x + k_y * k_y;
            if (rr > k2) continue;  // outside the propagating disk
            const double k_z = std::sqrt(k2 - rr);
            if (k_z < kEdgeKzFloor * k) continue;  // integrable edge singularity
            const double zen = std::atan2(std::sqrt(rr), k_z);
            double azi = std::atan2(k_y, k_x);
            if (azi < 0.0) azi += 2.0 * kPi;
            sum += spectral_factor(zen, azi, profile) / (k * k_z);
        }
    }
    return sum * hx * hy;
}

VarianceVector finish_variance(Eigen::VectorXd raw, const WavenumberGrid& grid) {
    const double total = raw.sum();
    if (!(total > 0.0))
        throw std::domain_error(
            "degenerate profile: no power falls inside the propagating hemisphere");
    raw /= total;
    return VarianceVector(std::move(raw), grid);
}

}  // namespace

ScatteringProfile::ScatteringProfile(std::vector<Cluster> clusters)
    : clusters_(std::move(clusters)) {
    require(!clusters_.empty(), "scattering profile needs at least one cluster");
    double wsum = 0.0;
    for (const auto& c : clusters_) {
        require(c.weight > 0.0 && c.weight <= 1.0, "cluster weight must be in (0, 1]");
        require(c.concentration > 0.0, "cluster concentration must be positive");
        require(c.zenith >= -1e-9 && c.zenith <= kPi / 2 + 1e-9,
                "cluster zenith must lie in [0, pi/2]");
        require(c.azimuth >= -1e-9 && c.azimuth < 2.0 * kPi + 1e-9,
                "cluster azimuth must lie in [0, 2*pi)");
        wsum += c.weight;
    }
    require(std::abs(wsum - 1.0) <= 1e-9, "cluster weights must sum to 1");
}

nlohmann::json to_json(const ScatteringProfile& profile) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : profile.clusters()) {
        arr.push_back({{"w", c.weight},
                       {"theta_deg", c.zenith * 180.0 / kPi},
                       {"phi_deg", c.azimuth * 180.0 / kPi},
                       {"alpha", c.concentration}});
    }
    return nlohmann::json{{"clusters", arr}};
}

ScatteringProfile profile_from_json(const nlohmann::json& j) {
    if (!j.contains("clusters") || !j["clusters"].is_array())
        throw std::invalid_argument("profile JSON needs a 'clusters' array");
    std::vector<Cluster> clusters;
    for (const auto& c : j["clusters"]) {
        for (const char* key : {"w", "theta_deg", "phi_deg", "alpha"})
            if (!c.contains(key) || !c[key].is_number())
                throw std::invalid_argument(std::string("cluster entry missing numeric '") +
                                            key + "'");
        clusters.push_back({c["w"].get<double>(),
                            c["theta_deg"].get<double>() * kPi / 180.0,
                            c["phi_deg"].get<double>() * kPi / 180.0,
                            c["alpha"].get<double>()});
    }
    return ScatteringProfile(std::move(clusters));
}

double concentration_from_as(double angular_spread_deg) {
    if (!(angular_spread_deg > 0.0 && angular_spread_deg < 21.0))
        throw std::domain_error(
            "angular spread outside the validity range (0, 21) degrees");
    return (212.9 * 212.9) / (angular_spread_deg * angular_spread_deg);
}

double vmf_pdf(double zenith, double azimuth, const Cluster& cluster) {
    const double a = cluster.concentration;
    const double e = a * (std::sin(zenith) * std::sin(cluster.zenith) *
                              std::cos(azimuth - cluster.azimuth) +
                          std::cos(zenith) * std::cos(cluster.zenith));
    if (a > 30.0) {
        // log form with sinh(a) ~ exp(a)/2; relative error below exp(-2a)
        return std::exp(std::log(a) - std::log(4.0 * kPi) - a + std::log(2.0) + e);
    }
    return a / (4.0 * kPi * std::sinh(a)) * std::exp(e);
}

double spectral_factor(double zenith, double azimuth, const ScatteringProfile& profile) {
    require(!profile.clusters().empty(), "empty cluster list");
    double sum = 0.0;
    for (const auto& c : profile.clusters()) sum += c.weight * vmf_pdf(zenith, azimuth, c);
    return sum;
}

VarianceVector::VarianceVector(Eigen::VectorXd values, WavenumberGrid grid)
    : values_(std::move(values)), grid_(std::move(grid)) {
    require(values_.size() == grid_.size(), "variance vector length must match grid");
    require((values_.array() >= 0.0).all(), "variances must be nonnegative");
}

VarianceVector variance_vector(const ScatteringProfile& profile, const WavenumberGrid& grid,
                               double k, int quad_order) {
    require(k > 0.0, "wavenumber must be positive");
    require(quad_order >= 1, "quadrature order must be at least 1");
    const int n = grid.size();
    Eigen::VectorXd raw(n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) raw(i) = integrate_cell(profile, grid, i, k, quad_order);
    return finish_variance(std::move(raw), grid);
}

VarianceVector variance_vector_serial(const ScatteringProfile& profile,
                                      const WavenumberGrid& grid, double k,
                                      int quad_order) {
    require(k > 0.0, "wavenumber must be positive");
    require(quad_order >= 1, "quadrature order must be at least 1");
    const int n = grid.size();
    Eigen::VectorXd raw(n);
    for (int i = 0; i < n; ++i) raw(i) = integrate_cell(profile, grid, i, k, quad_order);
    return finish_variance(std::move(raw), grid);
}

int significant_count(std::span<const double> values, double energy_fraction) {
    require(energy_fraction > 0.0 && energy_fraction <= 1.0,
            "energy fraction must lie in (0, 1]");
    double total = 0.0;
    for (double v : values) {
        require(v >= 0.0, "significant_count expects nonnegative values");
        total += v;
    }
    require(total > 0.0, "significant_count needs a positive total");

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const double target = energy_fraction * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        acc += sorted[i];
        if (acc >= target) return static_cast<int>(i + 1);
    }
    return static_cast<int>(sorted.size());
}

}  // namespace holosparse
