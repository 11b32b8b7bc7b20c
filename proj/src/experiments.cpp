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

#include "nfirs/experiments.hpp"

#include "nfirs/metrics.hpp"

#include <algorithm>
#include <cstdio>

namespace nfirs
{
    namespace
    {
        ResultTable make_table(const Scenario &s, std::string experiment, std::vector<std::string> columns)
        {
            ResultTable t;
            t.experiment = std::move(experiment);
            t.scenario_hash = s.hash();
            t.version = library_version();
            t.columns = std::move(columns);
            return t;
        }
    } // namespace

    std::vector<Design> all_designs() { return {Design::narrowband, Design::dldd, Design::per_element}; }

    std::string column_name(Design design)
    {
        std::string name(to_string(design));
        std::replace(name.begin(), name.end(), '-', '_');
        return name;
    }

    BeamformerConfig build_design(const Scenario &s, Design design)
    {
        const Scene scene = s.scene();
        const FrequencyGrid grid = s.grid();
        switch (design)
        {
        case Design::narrowband:
            return narrowband_design(scene, grid);
        case Design::dldd:
            return dldd_design(scene, grid, s.partition(), s.piecewise_options());
        case Design::per_element:
            return per_element_td_design(scene, grid);
        }
        throw std::invalid_argument("build_design: unknown design");
    }

    ResultTable run_gain_profile(const Scenario &s, std::span<const Design> designs)
    {
        std::vector<std::string> cols{"subcarrier", "frequency_ghz"};
        for (Design d : designs)
            cols.push_back("gain_" + column_name(d));
        ResultTable t = make_table(s, "gain-profile", cols);

        const Scene scene = s.scene();
        const FrequencyGrid grid = s.grid();
        std::vector<GainProfile> profiles;
        for (Design d : designs)
            profiles.push_back(gain_profile(scene, grid, build_design(s, d)));
        for (std::size_t m = 0; m < grid.frequencies.size(); ++m)
        {
            std::vector<double> row{static_cast<double>(m), grid.frequencies[m] / 1e9};
            for (const auto &p : profiles)
                row.push_back(p.gain[m]);
            t.add_row(std::move(row));
        }
        return t;
    }

    ResultTable run_beam_pattern(const Scenario &s, Design design, std::span<const double> frequencies)
    {
        ResultTable t = make_table(s, "beam-pattern", {"frequency_ghz", "u_m", "v_m", "gain", "is_peak"});
        t.notes.emplace_back("design", std::string(to_string(design)));
        const PlaneSpec plane = s.plane();
        const BeamPattern bp = beam_pattern(s.scene(), build_design(s, design), frequencies, plane);
        for (std::size_t fi = 0; fi < bp.frequencies.size(); ++fi)
            for (int iu = 0; iu < plane.u_points; ++iu)
                for (int iv = 0; iv < plane.v_points; ++iv)
                    t.add_row({bp.frequencies[fi] / 1e9, plane.u_at(iu), plane.v_at(iv), bp.at(fi, iu, iv), 0.0});
        for (const BeamPeak &p : bp.peaks)
            t.add_row({p.frequency / 1e9, plane.u_at(p.iu), plane.v_at(p.iv), p.gain, 1.0});
        return t;
    }

    ResultTable run_beam_pattern(const Scenario &s, Design design)
    {
        const std::vector<double> f = s.pattern_frequency_values();
        return run_beam_pattern(s, design, f);
    }

    ResultTable run_td_count_sweep(const Scenario &s, std::span<const SubsurfacePartition> partitions)
    {
        ResultTable t = make_table(s, "td-count-sweep", {"k_y", "k_z", "s", "k_t", "edge_gain"});
        const Scene scene = s.scene();
        const FrequencyGrid grid = s.grid();
        for (const SubsurfacePartition &p : partitions)
        {
            check_partition(scene.layout, p);
            const BeamformerConfig cfg = dldd_design(scene, grid, p, s.piecewise_options());
            t.add_row({static_cast<double>(p.k_y), static_cast<double>(p.k_z), static_cast<double>(p.s),
                       static_cast<double>(td_module_count(p)), edge_gain(gain_profile(scene, grid, cfg))});
        }
        return t;
    }

    ResultTable run_td_count_sweep(const Scenario &s) { return run_td_count_sweep(s, s.td_sweep_partitions); }

    ResultTable run_delay_range_sweep(const Scenario &s, std::span<const double> t_req)
    {
        ResultTable t = make_table(s, "delay-range-sweep", {"t_req_ps", "edge_gain_dldd", "edge_gain_per_element"});
        const Scene scene = s.scene();
        const FrequencyGrid grid = s.grid();
        const BeamformerConfig dldd = build_design(s, Design::dldd);
        const BeamformerConfig pe = build_design(s, Design::per_element);
        for (double tr : t_req)
        {
            if (!(tr >= 0.0))
                throw std::invalid_argument("run_delay_range_sweep: t_req must be >= 0");
            t.add_row({tr * 1e12, edge_gain(gain_profile(scene, grid, dldd, tr)),
                       edge_gain(gain_profile(scene, grid, pe, tr))});
        }
        return t;
    }

    ResultTable run_delay_range_sweep(const Scenario &s) { return run_delay_range_sweep(s, s.t_req_values); }

    ResultTable run_rate_sweep(const Scenario &s, std::span<const double> power_dbm, std::span<const Design> designs)
    {
        std::vector<std::string> cols{"p_bs_dbm"};
        for (Design d : designs)
            cols.push_back("rate_" + column_name(d));
        ResultTable t = make_table(s, "rate-sweep", cols);
        char noise[32];
        std::snprintf(noise, sizeof noise, "%g", s.noise_dbm_per_hz);
        t.notes.emplace_back("noise_dbm_per_hz", noise);

        const Scene scene = s.scene();
        const FrequencyGrid grid = s.grid();
        std::vector<BeamformerConfig> configs;
        for (Design d : designs)
            configs.push_back(build_design(s, d));
        for (double p : power_dbm)
        {
            std::vector<double> row{p};
            for (const auto &cfg : configs)
                row.push_back(achievable_rate(scene, grid, cfg, dbm_to_watts(p), s.noise_density()).mean_rate);
            t.add_row(std::move(row));
        }
        return t;
    }

} // namespace nfirs
