// SPDX-License-Identifier: Apache-2.0
//
// nfirs - wideband near-field IRS beamforming laboratory
// Copyright (C) 2026 The nfirs authors
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

#include "nfirs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nfirs
{
    bool Point3::is_finite() const
    {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }

    Point3 operator+(const Point3 &a, const Point3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    Point3 operator-(const Point3 &a, const Point3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

    void IrsLayout::validate() const
    {
        if (n_y < 1 || n_z < 1)
            throw std::invalid_argument("IrsLayout: element counts must be >= 1");
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw std::invalid_argument("IrsLayout: element spacing must be positive and finite");
    }

    void check_partition(const IrsLayout &layout, const SubsurfacePartition &p)
    {
        layout.validate();
        if (p.k_y < 1 || p.k_z < 1 || p.s < 1)
            throw std::invalid_argument("SubsurfacePartition: counts must be >= 1");
        if (p.s * p.k_y != layout.n_y || p.s * p.k_z != layout.n_z)
            throw std::invalid_argument("SubsurfacePartition: " + std::to_string(p.k_y) + "x" + std::to_string(p.k_z) +
                                        " sub-surfaces of " + std::to_string(p.s) + "x" + std::to_string(p.s) +
                                        " elements do not tile a " + std::to_string(layout.n_y) + "x" +
                                        std::to_string(layout.n_z) + " panel");
    }

    SubsurfacePartition make_partition(const IrsLayout &layout, int k_y, int k_z)
    {
        layout.validate();
        if (k_y < 1 || k_z < 1)
            throw std::invalid_argument("make_partition: sub-surface counts must be >= 1");
        if (layout.n_y % k_y != 0)
            throw std::invalid_argument("make_partition: n_y = " + std::to_string(layout.n_y) +
                                        " is not divisible by k_y = " + std::to_string(k_y));
        if (layout.n_z % k_z != 0)
            throw std::invalid_argument("make_partition: n_z = " + std::to_string(layout.n_z) +
                                        " is not divisible by k_z = " + std::to_string(k_z));
        const int s = layout.n_y / k_y;
        if (layout.n_z / k_z != s)
            throw std::invalid_argument("make_partition: sub-surfaces must be square (n_y/k_y = " + std::to_string(s) +
                                        ", n_z/k_z = " + std::to_string(layout.n_z / k_z) + ")");
        return {k_y, k_z, s};
    }

    ElementSlot element_slot(const SubsurfacePartition &p, int iy, int iz)
    {
        if (iy < 1 || iy > p.k_y * p.s || iz < 1 || iz > p.k_z * p.s)
            throw std::invalid_argument("element_slot: element index out of range");
        return {(iy - 1) / p.s + 1, (iz - 1) / p.s + 1, (iy - 1) % p.s + 1, (iz - 1) % p.s + 1};
    }

    double delta_index(int a, int b)
    {
        if (b < 1 || a < 0 || a > b - 1)
            throw std::invalid_argument("delta_index: requires 0 <= a <= b-1, got a = " + std::to_string(a) +
                                        ", b = " + std::to_string(b));
        return static_cast<double>(a) - 0.5 * static_cast<double>(b - 1);
    }

    Point3 element_position(const IrsLayout &layout, int iy, int iz)
    {
        if (iy < 1 || iy > layout.n_y || iz < 1 || iz > layout.n_z)
            throw std::invalid_argument("element_position: element index out of range");
        return {0.0, delta_index(iy - 1, layout.n_y) * layout.spacing, delta_index(iz - 1, layout.n_z) * layout.spacing};
    }

    Point3 subsurface_center(const IrsLayout &layout, const SubsurfacePartition &p, int ky, int kz)
    {
        if (ky < 1 || ky > p.k_y || kz < 1 || kz > p.k_z)
            throw std::invalid_argument("subsurface_center: sub-surface index out of range");
        const double pitch = static_cast<double>(p.s) * layout.spacing;
        return {0.0, delta_index(ky - 1, p.k_y) * pitch, delta_index(kz - 1, p.k_z) * pitch};
    }

    double distance(const Point3 &p, const Point3 &q)
    {
        const Point3 v = p - q;
        return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    }

    LinkAngles link_angles(const Point3 &endpoint, const Point3 &reference)
    {
        const Point3 v = endpoint - reference;
        const double r = distance(endpoint, reference);
        if (r == 0.0)
            throw DegenerateGeometry("link_angles: endpoint coincides with the reference point");
        const double rho = std::sqrt(v.x * v.x + v.y * v.y);
        return {rho > 0.0 ? v.y / rho : 0.0, rho / r, v.z / r};
    }

    double offset_distance(const Point3 &endpoint, const Point3 &reference, double dy, double dz)
    {
        const double r = distance(endpoint, reference);
        const LinkAngles a = link_angles(endpoint, reference);
        const double sq = r * r + dy * dy - 2.0 * dy * r * a.sin_elevation * a.sin_azimuth + dz * dz -
                          2.0 * dz * r * a.cos_elevation;
        return std::sqrt(std::max(sq, 0.0));
    }

    double first_order_offset_distance(double range, const LinkAngles &a, double dy, double dz)
    {
        return range - dz * a.cos_elevation - dy * a.sin_elevation * a.sin_azimuth;
    }

    double fraunhofer_distance(const IrsLayout &layout, double lambda_c)
    {
        layout.validate();
        if (!(lambda_c > 0.0))
            throw std::invalid_argument("fraunhofer_distance: wavelength must be positive");
        const double wy = static_cast<double>(layout.n_y - 1);
        const double wz = static_cast<double>(layout.n_z - 1);
        const double diag_sq = layout.spacing * layout.spacing * (wy * wy + wz * wz);
        return 2.0 * diag_sq / lambda_c;
    }

    void Scene::validate() const
    {
        layout.validate();
        if (!bs.is_finite() || !user.is_finite())
            throw std::invalid_argument("Scene: BS and user coordinates must be finite");
    }

    std::vector<std::string> Scene::warnings() const
    {
        std::vector<std::string> out;
        if (bs.x == 0.0)
            out.emplace_back("BS lies in the IRS plane (x = 0)");
        if (user.x == 0.0)
            out.emplace_back("user lies in the IRS plane (x = 0)");
        return out;
    }

    FrequencyGrid make_frequency_grid(double f_c, double bandwidth, int count, double c)
    {
        if (!(f_c > 0.0) || !std::isfinite(f_c))
            throw std::invalid_argument("make_frequency_grid: f_c must be positive and finite");
        if (count < 1)
            throw std::invalid_argument("make_frequency_grid: subcarrier count must be >= 1");
        if (!(bandwidth >= 0.0) || !std::isfinite(bandwidth))
            throw std::invalid_argument("make_frequency_grid: bandwidth must be non-negative and finite");
        if (count > 1 && bandwidth == 0.0)
            throw std::invalid_argument("make_frequency_grid: zero bandwidth with more than one subcarrier");
        if (!(c > 0.0))
            throw std::invalid_argument("make_frequency_grid: propagation speed must be positive");

        FrequencyGrid g;
        g.f_c = f_c;
        g.bandwidth = bandwidth;
        g.count = count;
        g.c = c;
        g.lambda_c = c / f_c;
        g.frequencies.resize(static_cast<std::size_t>(count));
        const double step = bandwidth / static_cast<double>(count);
        for (int m = 0; m < count; ++m)
            g.frequencies[static_cast<std::size_t>(m)] = f_c + step * (static_cast<double>(m) - 0.5 * (count - 1));
        if (g.frequencies.front() <= 0.0)
            throw std::invalid_argument("make_frequency_grid: lowest subcarrier is not positive");
        return g;
    }

} // namespace nfirs
