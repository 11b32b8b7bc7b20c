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

#ifndef NFIRS_CHANNEL_HPP
#define NFIRS_CHANNEL_HPP

#include "nfirs/geometry.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace nfirs
{
    enum class ChannelModel
    {
        exact,     // spherical wavefront, exact element distances
        piecewise  // per sub-surface far-field expansion
    };

    enum class Endpoint
    {
        bs,
        user
    };

    const Point3 &endpoint_position(const Scene &scene, Endpoint endpoint);

    // Line-of-sight gains for every (element, subcarrier) pair.
    // Storage is element-major: gains[n * subcarriers + m].
    struct ChannelSet
    {
        ChannelModel model = ChannelModel::exact;
        bool normalized = true; // amplitudes alpha_m / r stripped
        std::size_t elements = 0;
        std::size_t subcarriers = 0;
        std::vector<std::complex<double>> gains;

        const std::complex<double> &at(std::size_t n, std::size_t m) const { return gains[n * subcarriers + m]; }
    };

    // -2 pi f L / c wrapped to (-pi, pi]. The cycle count is reduced before the
    // multiplication by 2 pi, which keeps long paths (L >> lambda) accurate.
    double propagation_phase(double f, double length, double c = kSpeedOfLight);

    // Free-space amplitude factor alpha = c / (4 pi f).
    double free_space_alpha(double f, double c = kSpeedOfLight);

    // Exact element-to-endpoint distances, row-major over (iy, iz).
    // Throws DegenerateGeometry when the endpoint sits on an element.
    std::vector<double> element_distances(const IrsLayout &layout, const Point3 &endpoint);

    struct PiecewiseOptions
    {
        // Reproduce the intra-sub-surface z term exactly as printed, i.e. with a
        // spurious extra factor r_k. Dimensionally inconsistent; off by default.
        bool printed_range_factor = false;
    };

    // Per-element distances under the piecewise far-field model:
    //   r ~ r_k - phi,  phi = dy sin(ele) sin(azi) + dz cos(ele)
    // where (dy, dz) is the element's offset from its sub-surface center.
    std::vector<double> piecewise_distances(const IrsLayout &layout, const SubsurfacePartition &partition,
                                            const Point3 &endpoint, const PiecewiseOptions &options = {});

    // Intra-sub-surface path terms phi (see piecewise_distances), row-major over elements.
    std::vector<double> intra_path_terms(const IrsLayout &layout, const SubsurfacePartition &partition,
                                         const Point3 &endpoint, const PiecewiseOptions &options = {});

    // Sub-surface center distances r_k, row-major over (ky, kz).
    std::vector<double> subsurface_distances(const IrsLayout &layout, const SubsurfacePartition &partition,
                                             const Point3 &endpoint);

    // Entry (n, m) = A exp(-j 2 pi f_m r_n / c), A = alpha_m / r_n or 1 when normalized.
    ChannelSet exact_los_channel(const Scene &scene, const FrequencyGrid &grid, Endpoint endpoint, bool normalized);

    // Unit-magnitude channel built from piecewise_distances.
    ChannelSet piecewise_channel(const Scene &scene, const FrequencyGrid &grid, const SubsurfacePartition &partition,
                                 Endpoint endpoint, const PiecewiseOptions &options = {});

    // conj(user_side) * bs_side, entry-wise. With unit reflection this carries the
    // phase -2 pi f (r_br - r_ru) / c.
    ChannelSet cascaded_channel(const ChannelSet &bs_side, const ChannelSet &user_side);

    // Split of the piecewise cascaded path difference r_br - r_ru into a per
    // sub-surface part and a per element remainder:
    //   r_br,n - r_ru,n ~ inter_delta_r[k(n)] - intra_delta_phi[n]
    struct CascadedDecomposition
    {
        SubsurfacePartition partition;
        std::vector<double> inter_delta_r;   // K entries [m], row-major over (ky, kz)
        std::vector<double> intra_delta_phi; // N entries [m], row-major over (iy, iz)

        double inter(int ky, int kz) const
        {
            return inter_delta_r[static_cast<std::size_t>(ky - 1) * static_cast<std::size_t>(partition.k_z) +
                                 static_cast<std::size_t>(kz - 1)];
        }
    };

    CascadedDecomposition cascaded_decomposition(const Scene &scene, const SubsurfacePartition &partition,
                                                 const PiecewiseOptions &options = {});

} // namespace nfirs

#endif
