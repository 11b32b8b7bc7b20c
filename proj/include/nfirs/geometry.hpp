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

#ifndef NFIRS_GEOMETRY_HPP
#define NFIRS_GEOMETRY_HPP

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace nfirs
{
    inline constexpr double kSpeedOfLight = 299792458.0; // m/s, exact
    inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

    // Raised when two points that must be distinct coincide (zero-length link).
    class DegenerateGeometry : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    struct Point3
    {
        double x = 0.0; // [m]
        double y = 0.0; // [m]
        double z = 0.0; // [m]

        bool is_finite() const;
        friend bool operator==(const Point3 &, const Point3 &) = default;
    };

    Point3 operator+(const Point3 &a, const Point3 &b);
    Point3 operator-(const Point3 &a, const Point3 &b);

    // Uniform planar array on the y-z plane, centered at the origin.
    // Elements are addressed row-major: flat index n = (iy - 1) * n_z + (iz - 1).
    struct IrsLayout
    {
        int n_y = 1;
        int n_z = 1;
        double spacing = 0.0; // element spacing d [m]

        std::size_t size() const { return static_cast<std::size_t>(n_y) * static_cast<std::size_t>(n_z); }
        void validate() const; // throws std::invalid_argument
    };

    // Square sub-surfaces of s x s elements; k_y * s = n_y and k_z * s = n_z.
    struct SubsurfacePartition
    {
        int k_y = 1;
        int k_z = 1;
        int s = 1;

        std::size_t count() const { return static_cast<std::size_t>(k_y) * static_cast<std::size_t>(k_z); }
        friend bool operator==(const SubsurfacePartition &, const SubsurfacePartition &) = default;
    };

    // Builds and checks a partition of `layout` into k_y x k_z square sub-surfaces.
    SubsurfacePartition make_partition(const IrsLayout &layout, int k_y, int k_z);

    // Throws std::invalid_argument unless `partition` tiles `layout` exactly.
    void check_partition(const IrsLayout &layout, const SubsurfacePartition &partition);

    // Where an element sits inside the partition (all indices 1-based).
    struct ElementSlot
    {
        int ky, kz; // owning sub-surface
        int sy, sz; // position within the sub-surface
    };
    ElementSlot element_slot(const SubsurfacePartition &partition, int iy, int iz);

    // Half-integer offset a - (b-1)/2 for 0 <= a <= b-1.
    double delta_index(int a, int b);

    // Position of element (iy, iz), 1-based.
    Point3 element_position(const IrsLayout &layout, int iy, int iz);

    // Center of sub-surface (ky, kz), 1-based.
    Point3 subsurface_center(const IrsLayout &layout, const SubsurfacePartition &partition, int ky, int kz);

    double distance(const Point3 &p, const Point3 &q);

    // Direction of an endpoint seen from a reference point on the panel.
    struct LinkAngles
    {
        double sin_azimuth;   // dy / sqrt(dx^2 + dy^2), 0 when the endpoint is on the panel normal's z-line
        double sin_elevation; // sqrt(dx^2 + dy^2) / r
        double cos_elevation; // dz / r
    };

    // Angles of `endpoint` relative to `reference` (usually a sub-surface center).
    LinkAngles link_angles(const Point3 &endpoint, const Point3 &reference);

    // Exact distance from `endpoint` to reference + (0, dy, dz), written through the
    // range r and link angles seen from `reference` (law of cosines form).
    double offset_distance(const Point3 &endpoint, const Point3 &reference, double dy, double dz);

    // First-order (far-field) approximation of offset_distance:
    //   r - dz cos(ele) - dy sin(ele) sin(azi)
    double first_order_offset_distance(double range, const LinkAngles &angles, double dy, double dz);

    // 2 D^2 / lambda with D the panel diagonal.
    double fraunhofer_distance(const IrsLayout &layout, double lambda_c);

    // Transceiver positions and the IRS panel they communicate through.
    struct Scene
    {
        Point3 bs;
        Point3 user;
        IrsLayout layout;

        void validate() const;
        // Endpoints located exactly in the panel plane are accepted but flagged.
        std::vector<std::string> warnings() const;
    };

    // OFDM subcarrier grid, symmetric about f_c.
    struct FrequencyGrid
    {
        double f_c = 0.0;       // [Hz]
        double bandwidth = 0.0; // [Hz]
        int count = 1;          // M
        std::vector<double> frequencies;
        double c = kSpeedOfLight;
        double lambda_c = 0.0; // c / f_c [m]

        double subcarrier_spacing() const { return bandwidth / static_cast<double>(count); }
    };

    // f_m = f_c + (B / M) * (m - (M - 1) / 2), m = 0..M-1.
    FrequencyGrid make_frequency_grid(double f_c, double bandwidth, int count, double c = kSpeedOfLight);

} // namespace nfirs

#endif
