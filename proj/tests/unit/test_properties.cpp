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

#include <catch2/catch_amalgamated.hpp>

#include "nfirs/beamforming.hpp"
#include "nfirs/channel.hpp"
#include "nfirs/metrics.hpp"
#include "test_support.hpp"

#include <numbers>

// Randomized property checks with fixed seeds.
//
// Covered tests:
// - Elements stay within half a sub-surface diagonal of their center
// - Law-of-cosines distance with zero offset equals the direct norm
// - Exact-channel phase is periodic in whole wavelengths
// - Decomposed cascade phase matches the piecewise channels
// - Gain is invariant to a common phase or a common delay
// - Row-wise telescoping of cumulative delays

using Catch::Approx;
using namespace nfirs;

namespace
{
    Point3 random_endpoint(std::mt19937_64 &rng)
    {
        return {nfirs_test::uniform(rng, 0.2, 5.0), nfirs_test::uniform(rng, -5.0, 5.0),
                nfirs_test::uniform(rng, -5.0, 5.0)};
    }
} // namespace

TEST_CASE("Properties - Elements near their sub-surface center", "[property]")
{
    const IrsLayout layout{60, 60, 0.5e-3};
    for (int k : {1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60})
    {
        const SubsurfacePartition p = make_partition(layout, k, k);
        const double bound = (p.s - 1) * layout.spacing * std::sqrt(2.0) / 2.0 + 1e-15;
        for (int iy = 1; iy <= 60; ++iy)
            for (int iz = 1; iz <= 60; ++iz)
            {
                const ElementSlot s = element_slot(p, iy, iz);
                CHECK(distance(element_position(layout, iy, iz), subsurface_center(layout, p, s.ky, s.kz)) <= bound);
            }
    }
}

TEST_CASE("Properties - Angle identities and zero-offset distance", "[property]")
{
    std::mt19937_64 rng(101);
    const IrsLayout layout{40, 40, 0.5e-3};
    const SubsurfacePartition p = make_partition(layout, 4, 4);
    for (int i = 0; i < 50; ++i)
    {
        const Point3 e = random_endpoint(rng);
        for (int ky = 1; ky <= 4; ++ky)
            for (int kz = 1; kz <= 4; ++kz)
            {
                const Point3 c = subsurface_center(layout, p, ky, kz);
                const LinkAngles a = link_angles(e, c);
                CHECK(std::abs(a.sin_elevation * a.sin_elevation + a.cos_elevation * a.cos_elevation - 1.0) <= 1e-12);
                CHECK(std::abs(offset_distance(e, c, 0.0, 0.0) - distance(e, c)) <= 1e-12);
            }
    }
}

TEST_CASE("Properties - Whole-wavelength periodicity of the channel phase", "[property]")
{
    std::mt19937_64 rng(202);
    for (int i = 0; i < 500; ++i)
    {
        const double f = nfirs_test::uniform(rng, 285e9, 315e9);
        const double L = nfirs_test::uniform(rng, 0.5, 8.0);
        const int k = static_cast<int>(nfirs_test::uniform(rng, 1.0, 1000.0));
        const double shifted = L + k * kSpeedOfLight / f;
        CHECK(std::abs(std::remainder(propagation_phase(f, shifted) - propagation_phase(f, L),
                                      2.0 * std::numbers::pi)) < 1e-6);
    }
}

TEST_CASE("Properties - Decomposition reproduces the piecewise cascade", "[property]")
{
    std::mt19937_64 rng(303);
    const FrequencyGrid grid = make_frequency_grid(300e9, 30e9, 4);
    for (int i = 0; i < 5; ++i)
    {
        const Scene scene{random_endpoint(rng), random_endpoint(rng), {30, 30, 0.5e-3}};
        const SubsurfacePartition p = make_partition(scene.layout, 3, 3);
        const CascadedDecomposition d = cascaded_decomposition(scene, p);
        const ChannelSet casc = cascaded_channel(piecewise_channel(scene, grid, p, Endpoint::bs),
                                                 piecewise_channel(scene, grid, p, Endpoint::user));
        for (int iy = 1; iy <= 30; ++iy)
            for (int iz = 1; iz <= 30; ++iz)
            {
                const std::size_t n = static_cast<std::size_t>((iy - 1) * 30 + (iz - 1));
                const ElementSlot s = element_slot(p, iy, iz);
                const double path = d.inter(s.ky, s.kz) - d.intra_delta_phi[n];
                for (std::size_t m = 0; m < grid.frequencies.size(); ++m)
                {
                    const double assembled = propagation_phase(grid.frequencies[m], path);
                    CHECK(std::abs(std::remainder(assembled - std::arg(casc.at(n, m)), 2.0 * std::numbers::pi)) <
                          1e-9);
                }
            }
    }
}

TEST_CASE("Properties - Gain invariance to common phase and delay", "[property]")
{
    std::mt19937_64 rng(404);
    const FrequencyGrid grid = make_frequency_grid(300e9, 30e9, 8);
    for (int i = 0; i < 5; ++i)
    {
        const Scene scene{random_endpoint(rng), random_endpoint(rng), {24, 24, 0.5e-3}};
        const BeamformerConfig base = per_element_td_design(scene, grid);
        BeamformerConfig rotated = base;
        const double phi = nfirs_test::uniform(rng, 0.0, 2.0 * std::numbers::pi);
        for (double &t : rotated.phases.theta)
            t = std::fmod(t + phi, 2.0 * std::numbers::pi);
        BeamformerConfig delayed = base;
        const double extra = nfirs_test::uniform(rng, 0.0, 1e-9);
        for (double &t : std::get<PerElementDelayConfig>(delayed.delays).tau)
            t += extra;
        const BeamformerConfig nb = narrowband_design(scene, grid);
        BeamformerConfig nb_rot = nb;
        for (double &t : nb_rot.phases.theta)
            t = std::fmod(t + phi, 2.0 * std::numbers::pi);
        for (double f : grid.frequencies)
        {
            const double g = normalized_array_gain(scene, base, f);
            CHECK(normalized_array_gain(scene, rotated, f) == Approx(g).margin(1e-12));
            CHECK(normalized_array_gain(scene, delayed, f) == Approx(g).margin(1e-12));
            const double gn = normalized_array_gain(scene, nb, f);
            CHECK(gn >= 0.0);
            CHECK(gn <= 1.0 + 1e-12);
            CHECK(normalized_array_gain(scene, nb_rot, f) == Approx(gn).margin(1e-12));
        }
    }
}

TEST_CASE("Properties - Row-wise telescoping", "[property]")
{
    std::mt19937_64 rng(505);
    const FrequencyGrid grid = make_frequency_grid(300e9, 30e9, 4);
    for (int i = 0; i < 10; ++i)
    {
        const Scene scene{random_endpoint(rng), random_endpoint(rng), {40, 40, 0.5e-3}};
        const BeamformerConfig cfg = dldd_design(scene, grid, make_partition(scene.layout, 8, 8));
        const auto &net = std::get<DlddDelayNetwork>(cfg.delays);
        for (int ky = 1; ky <= 8; ++ky)
        {
            double sum = 0.0;
            for (int kz = 1; kz <= 8; ++kz)
            {
                CHECK(cumulative_delay(net, ky, kz) - cumulative_delay(net, ky, 1) == Approx(sum).margin(1e-24));
                if (kz < 8)
                    sum += net.second_delta(ky, kz);
            }
        }
    }
}
