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

#include "nfirs/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nfirs
{
    const Point3 &endpoint_position(const Scene &scene, Endpoint endpoint)
    {
        return endpoint == Endpoint::bs ? scene.bs : scene.user;
    }

    double propagation_phase(double f, double length, double c)
    {
        const double cycles = f * length / c;
        const double frac = cycles - std::nearbyint(cycles);
        return -kTwoPi * frac;
    }

    double free_space_alpha(double f, double c)
    {
        return c / (4.0 * std::numbers::pi * f);
    }

    std::vector<double> element_distances(const IrsLayout &layout, const Point3 &endpoint)
    {
        layout.validate();
        std::vector<double> r;
        r.reserve(layout.size());
        for (int iy = 1; iy <= layout.n_y; ++iy)
            for (int iz = 1; iz <= layout.n_z; ++iz)
            {
                const double dist = distance(endpoint, element_position(layout, iy, iz));
                if (dist == 0.0)
                    throw DegenerateGeometry("endpoint coincides with IRS element (" + std::to_string(iy) + ", " +
                                             std::to_string(iz) + ")");
                r.push_back(dist);
            }
        return r;
    }

    std::vector<double> subsurface_distances(const IrsLayout &layout, const SubsurfacePartition &partition,
                                             const Point3 &endpoint)
    {
        check_partition(layout, partition);
        std::vector<double> r;
        r.reserve(partition.count());
        for (int ky = 1; ky <= partition.k_y; ++ky)
            for (int kz = 1; kz <= partition.k_z; ++kz)
                r.push_back(distance(endpoint, subsurface_center(layout, partition, ky, kz)));
        return r;
    }

    namespace
    {
        // Range and angles of the endpoint from every sub-surface center.
        struct SubsurfaceView
        {
            std::vector<double> range;
            std::vector<LinkAngles> angles;
        };

        SubsurfaceView view_from_subsurfaces(const IrsLayout &layout, const SubsurfacePartition &p,
                                             const Point3 &endpoint)
        {
            check_partition(layout, p);
            SubsurfaceView v;
            v.range.reserve(p.count());
            v.angles.reserve(p.count());
            for (int ky = 1; ky <= p.k_y; ++ky)
                for (int kz = 1; kz <= p.k_z; ++kz)
                {
                    const Point3 center = subsurface_center(layout, p, ky, kz);
                    v.range.push_back(distance(endpoint, center));
                    v.angles.push_back(link_angles(endpoint, center)); // throws on coincidence
                }
            return v;
        }

        template <typename Fn>
        void for_each_element(const IrsLayout &layout, const SubsurfacePartition &p, Fn &&fn)
        {
            for (int iy = 1; iy <= layout.n_y; ++iy)
                for (int iz = 1; iz <= layout.n_z; ++iz)
                {
                    const ElementSlot slot = element_slot(p, iy, iz);
                    const std::size_t k = static_cast<std::size_t>(slot.ky - 1) * static_cast<std::size_t>(p.k_z) +
                                          static_cast<std::size_t>(slot.kz - 1);
                    const double dy = delta_index(slot.sy - 1, p.s) * layout.spacing;
                    const double dz = delta_index(slot.sz - 1, p.s) * layout.spacing;
                    fn(k, dy, dz);
                }
        }

        double intra_term(double range, const LinkAngles &a, double dy, double dz, const PiecewiseOptions &opt)
        {
            const double z_term = dz * a.cos_elevation * (opt.printed_range_factor ? range : 1.0);
            return dy * a.sin_elevation * a.sin_azimuth + z_term;
        }
    } // namespace

    std::vector<double> intra_path_terms(const IrsLayout &layout, const SubsurfacePartition &partition,
                                         const Point3 &endpoint, const PiecewiseOptions &options)
    {
        const SubsurfaceView v = view_from_subsurfaces(layout, partition, endpoint);
        std::vector<double> phi;
        phi.reserve(layout.size());
        for_each_element(layout, partition, [&](std::size_t k, double dy, double dz)
                         { phi.push_back(intra_term(v.range[k], v.angles[k], dy, dz, options)); });
        return phi;
    }

    std::vector<double> piecewise_distances(const IrsLayout &layout, const SubsurfacePartition &partition,
                                            const Point3 &endpoint, const PiecewiseOptions &options)
    {
        const SubsurfaceView v = view_from_subsurfaces(layout, partition, endpoint);
        std::vector<double> r;
        r.reserve(layout.size());
        for_each_element(layout, partition, [&](std::size_t k, double dy, double dz)
                         { r.push_back(v.range[k] - intra_term(v.range[k], v.angles[k], dy, dz, options)); });
        return r;
    }

    namespace
    {
        ChannelSet synthesize(ChannelModel model, bool normalized, const std::vector<double> &r,
                              const FrequencyGrid &grid)
        {
            ChannelSet ch;
            ch.model = model;
            ch.normalized = normalized;
            ch.elements = r.size();
            ch.subcarriers = grid.frequencies.size();
            ch.gains.resize(ch.elements * ch.subcarriers);
            for (std::size_t n = 0; n < ch.elements; ++n)
                for (std::size_t m = 0; m < ch.subcarriers; ++m)
                {
                    const double f = grid.frequencies[m];
                    const double amp = normalized ? 1.0 : free_space_alpha(f, grid.c) / r[n];
                    ch.gains[n * ch.subcarriers + m] = std::polar(amp, propagation_phase(f, r[n], grid.c));
                }
            return ch;
        }
    } // namespace

    ChannelSet exact_los_channel(const Scene &scene, const FrequencyGrid &grid, Endpoint endpoint, bool normalized)
    {
        scene.validate();
        return synthesize(ChannelModel::exact, normalized,
                          element_distances(scene.layout, endpoint_position(scene, endpoint)), grid);
    }

    ChannelSet piecewise_channel(const Scene &scene, const FrequencyGrid &grid, const SubsurfacePartition &partition,
                                 Endpoint endpoint, const PiecewiseOptions &options)
    {
        scene.validate();
        const Point3 &p = endpoint_position(scene, endpoint);
        element_distances(scene.layout, p); // same degeneracy contract as the exact model
        return synthesize(ChannelModel::piecewise, true, piecewise_distances(scene.layout, partition, p, options),
                          grid);
    }

    ChannelSet cascaded_channel(const ChannelSet &bs_side, const ChannelSet &user_side)
    {
        if (bs_side.elements != user_side.elements || bs_side.subcarriers != user_side.subcarriers)
            throw std::invalid_argument("cascaded_channel: channel dimensions differ");
        ChannelSet out = bs_side;
        out.model = (bs_side.model == ChannelModel::exact && user_side.model == ChannelModel::exact)
                        ? ChannelModel::exact
                        : ChannelModel::piecewise;
        out.normalized = bs_side.normalized && user_side.normalized;
        for (std::size_t i = 0; i < out.gains.size(); ++i)
            out.gains[i] = std::conj(user_side.gains[i]) * bs_side.gains[i];
        return out;
    }

    CascadedDecomposition cascaded_decomposition(const Scene &scene, const SubsurfacePartition &partition,
                                                 const PiecewiseOptions &options)
    {
        scene.validate();
        CascadedDecomposition d;
        d.partition = partition;

        const std::vector<double> rb = subsurface_distances(scene.layout, partition, scene.bs);
        const std::vector<double> ru = subsurface_distances(scene.layout, partition, scene.user);
        d.inter_delta_r.resize(rb.size());
        for (std::size_t k = 0; k < rb.size(); ++k)
            d.inter_delta_r[k] = rb[k] - ru[k];

        const std::vector<double> pb = intra_path_terms(scene.layout, partition, scene.bs, options);
        const std::vector<double> pu = intra_path_terms(scene.layout, partition, scene.user, options);
        d.intra_delta_phi.resize(pb.size());
        for (std::size_t n = 0; n < pb.size(); ++n)
            d.intra_delta_phi[n] = pb[n] - pu[n];
        return d;
    }

} // namespace nfirs
