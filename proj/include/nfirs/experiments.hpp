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

#ifndef NFIRS_EXPERIMENTS_HPP
#define NFIRS_EXPERIMENTS_HPP

#include "nfirs/beamforming.hpp"
#include "nfirs/results.hpp"
#include "nfirs/scenario.hpp"

#include <span>
#include <vector>

namespace nfirs
{
    // Builds `design` for the scenario (DLDD uses the scenario's partition).
    BeamformerConfig build_design(const Scenario &scenario, Design design);

    std::vector<Design> all_designs();

    // Columns: subcarrier, frequency_ghz, gain_<design>...
    ResultTable run_gain_profile(const Scenario &scenario, std::span<const Design> designs);

    // Long format: frequency_ghz, u_m, v_m, gain, is_peak. The grid rows come
    // first; one row per frequency with is_peak = 1 repeats each peak at the end.
    ResultTable run_beam_pattern(const Scenario &scenario, Design design, std::span<const double> frequencies);
    ResultTable run_beam_pattern(const Scenario &scenario, Design design);

    // DLDD edge gain per partition. Columns: k_y, k_z, s, k_t, edge_gain.
    ResultTable run_td_count_sweep(const Scenario &scenario, std::span<const SubsurfacePartition> partitions);
    ResultTable run_td_count_sweep(const Scenario &scenario);

    // Edge gain against the per-module delay range.
    // Columns: t_req_ps, edge_gain_dldd, edge_gain_per_element.
    ResultTable run_delay_range_sweep(const Scenario &scenario, std::span<const double> t_req);
    ResultTable run_delay_range_sweep(const Scenario &scenario);

    // Subcarrier-averaged rate against transmit power. Columns: p_bs_dbm, rate_<design>...
    ResultTable run_rate_sweep(const Scenario &scenario, std::span<const double> power_dbm,
                               std::span<const Design> designs);

    // Column-safe design name ("per_element" rather than "per-element").
    std::string column_name(Design design);

} // namespace nfirs

#endif
