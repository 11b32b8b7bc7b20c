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

#include "nfirs/experiments.hpp"
#include "nfirs/metrics.hpp"
#include "test_support.hpp"

// Frozen reference values for the default scene, produced by the independent
// NumPy implementation in tests/oracle/generate_oracles.py.
//
// Covered tests:
// - Narrowband and DLDD gains at selected subcarriers
// - Dedicated sub-surface delays and layer deltas
// - Per-element delay extremes
// - Module-count sweep and clamped edge gains
// - Mean rates at two transmit powers
// - Peaks on a reduced evaluation plane

using Catch::Approx;
using namespace nfirs;

namespace
{
    constexpr double kRel = 1e-9;
    const Scene kScene = nfirs_test::default_scene();
    const FrequencyGrid kGrid = nfirs_test::default_grid();
    const SubsurfacePartition kPartition{10, 10, 10};
} // namespace

TEST_CASE("Oracle - Narrowband gains", "[oracle]")
{
    const GainProfile p = gain_profile(kScene, kGrid, narrowband_design(kScene, kGrid));
    CHECK(p.gain[0] == Approx(0.01691309779170682).epsilon(kRel));
    CHECK(p.gain[63] == Approx(0.9984881931697027).epsilon(kRel));
    CHECK(p.gain[64] == Approx(0.9984881931697026).epsilon(kRel));
    CHECK(p.gain[127] == Approx(0.01691309779171262).epsilon(kRel));
}

TEST_CASE("Oracle - DLDD gains and delays", "[oracle]")
{
    const BeamformerConfig cfg = dldd_design(kScene, kGrid, kPartition);
    const GainProfile p = gain_profile(kScene, kGrid, cfg);
    CHECK(p.gain[0] == Approx(0.77592041936878).epsilon(kRel));
    CHECK(p.gain[64] == Approx(0.9999767605638031).epsilon(kRel));
    CHECK(p.gain[127] == Approx(0.7759205024670245).epsilon(kRel));
    CHECK(*std::min_element(p.gain.begin(), p.gain.end()) == Approx(0.77592041936878).epsilon(kRel));

    const auto tau = required_subsurface_delays(cascaded_decomposition(kScene, kPartition));
    CHECK(tau[0] * 1e12 == Approx(9172.709360746958).epsilon(kRel));
    CHECK(tau[44] * 1e12 == Approx(9255.05862641035).epsilon(kRel));
    CHECK(tau[99] * 1e12 == Approx(9356.42012398041).epsilon(kRel));
    CHECK(dedicated_delay_range(tau) * 1e12 == Approx(9402.273166637839).epsilon(kRel));

    const auto &net = std::get<DlddDelayNetwork>(cfg.delays);
    CHECK(net.first_delta(1) * 1e12 == Approx(25.56193943655437).epsilon(1e-8));
    CHECK(net.first_delta(9) * 1e12 == Approx(25.4511857296903).epsilon(1e-8));
    CHECK(net.second_delta(1, 1) * 1e12 == Approx(-4.844470308231912).epsilon(1e-8));
    CHECK(net.second_delta(10, 9) * 1e12 == Approx(-5.115783496404663).epsilon(1e-8));
    CHECK(required_delay_range(cfg) * 1e12 == Approx(25.56193943655437).epsilon(1e-8));
}

TEST_CASE("Oracle - Per-element delays", "[oracle]")
{
    const BeamformerConfig cfg = per_element_td_design(kScene, kGrid);
    const auto &pe = std::get<PerElementDelayConfig>(cfg.delays);
    const auto [lo, hi] = std::minmax_element(pe.tau.begin(), pe.tau.end());
    CHECK(*lo * 1e12 == Approx(9115.30306459309).epsilon(kRel));
    CHECK(*hi * 1e12 == Approx(9416.00769652966).epsilon(kRel));
}

TEST_CASE("Oracle - Module-count sweep", "[oracle]")
{
    const ResultTable t = run_td_count_sweep(default_scenario());
    const std::vector<double> expected{0.0323530452310932, 0.04681200795467499, 0.055162692489612,
                                       0.2825135427298572, 0.77592041936878,    0.9424608154945455,
                                       0.9637889515170779, 0.9926908439072905};
    REQUIRE(t.rows.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(t.rows[i][t.column("edge_gain")] == Approx(expected[i]).epsilon(1e-8));
}

TEST_CASE("Oracle - Clamped edge gains", "[oracle]")
{
    const Scenario s = default_scenario();
    const std::vector<double> t_req{0.0, 1e-12, 9e-12, 20e-12};
    const ResultTable t = run_delay_range_sweep(s, t_req);
    const double dldd[] = {0.016911696159658894, 0.04054106070064484, 0.11023615358363655, 0.1635644443405454};
    const double pe[] = {0.016913097791697574, 0.016899322201490246, 0.01599075077181012, 0.02084838557875721};
    for (std::size_t i = 0; i < 4; ++i)
    {
        CHECK(t.rows[i][1] == Approx(dldd[i]).epsilon(1e-7));
        CHECK(t.rows[i][2] == Approx(pe[i]).epsilon(1e-7));
    }
}

TEST_CASE("Oracle - Mean rates", "[oracle]")
{
    const Scenario s = default_scenario();
    const std::vector<double> p{50.0, 70.0};
    const ResultTable t = run_rate_sweep(s, p, all_designs());
    CHECK(t.rows[0][1] == Approx(1.0383222626522561).epsilon(kRel));
    CHECK(t.rows[0][2] == Approx(4.768731773394872).epsilon(kRel));
    CHECK(t.rows[0][3] == Approx(5.002842818796215).epsilon(kRel));
    CHECK(t.rows[1][1] == Approx(4.891535151980561).epsilon(kRel));
    CHECK(t.rows[1][2] == Approx(11.358201065388807).epsilon(kRel));
    CHECK(t.rows[1][3] == Approx(11.601154014047081).epsilon(kRel));
}

TEST_CASE("Oracle - Reduced-plane peaks", "[oracle]")
{
    // z = z_user, x in [0.5, 4] (36 points), y in [-6, 2] (41 points); user at (15, 10)
    PlaneSpec plane;
    plane.normal = Axis::z;
    plane.level = kScene.user.z;
    plane.u_min = 0.5;
    plane.u_max = 4.0;
    plane.v_min = -6.0;
    plane.v_max = 2.0;
    plane.u_points = 36;
    plane.v_points = 41;
    const std::vector<double> f{kGrid.frequencies.front(), kGrid.f_c, kGrid.frequencies.back()};

    const BeamPattern nb = beam_pattern(kScene, narrowband_design(kScene, kGrid), f, plane);
    const int nb_expected[3][2] = {{6, 7}, {15, 10}, {20, 12}};
    const double nb_gain[3] = {0.9624723946829594, 1.0, 0.7523711486729129};
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(nb.peaks[i].iu == nb_expected[i][0]);
        CHECK(nb.peaks[i].iv == nb_expected[i][1]);
        CHECK(nb.peaks[i].gain == Approx(nb_gain[i]).epsilon(1e-8));
    }

    const BeamPattern dl = beam_pattern(kScene, dldd_design(kScene, kGrid, kPartition), f, plane);
    const double dl_gain[3] = {0.77592041936878, 0.9999917367572898, 0.7759205024670245};
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(dl.peaks[i].iu == 15);
        CHECK(dl.peaks[i].iv == 10);
        CHECK(dl.peaks[i].gain == Approx(dl_gain[i]).epsilon(1e-8));
    }
}
