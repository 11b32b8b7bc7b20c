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

#ifndef NFIRS_SCENARIO_HPP
#define NFIRS_SCENARIO_HPP

#include "nfirs/beamforming.hpp"
#include "nfirs/channel.hpp"
#include "nfirs/geometry.hpp"
#include "nfirs/metrics.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nfirs
{
    // Parse or validation failure. line() is 0 when the problem is not tied to a
    // single line (e.g. a cross-field invariant); key() names the offending key.
    class ScenarioError : public std::runtime_error
    {
    public:
        ScenarioError(std::string source, int line, std::string key, const std::string &what);
        int line() const { return line_; }
        const std::string &key() const { return key_; }

    private:
        int line_;
        std::string key_;
    };

    // Complete experiment description. File units (GHz, ps, dBm, mm) are
    // converted to SI here; every member is SI unless its name says otherwise.
    struct Scenario
    {
        Point3 bs{0.0, 1.5, -1.5};
        Point3 user{2.0, -4.0, -2.0};
        int n_y = 100;
        int n_z = 100;
        std::optional<double> spacing; // [m], empty: half wavelength at f_c
        int k_y = 10;
        int k_z = 10;
        double f_c = 300e9;
        double bandwidth = 30e9;
        int subcarriers = 128;
        bool printed_range_factor = false;

        std::vector<SubsurfacePartition> td_sweep_partitions;
        std::vector<double> t_req_values; // [s]
        std::vector<double> power_dbm;
        double noise_dbm_per_hz = kDefaultNoiseDensityDbmPerHz;

        Axis pattern_normal = Axis::z;
        std::optional<double> pattern_level; // empty: user coordinate along the normal
        double pattern_u_min = 0.5, pattern_u_max = 4.0;
        double pattern_v_min = -6.0, pattern_v_max = 2.0;
        int pattern_u_points = 201, pattern_v_points = 201;
        std::vector<std::string> pattern_frequencies{"f1", "fc", "fM"};

        std::vector<std::string> warnings; // filled by validation

        double element_spacing() const;
        IrsLayout layout() const;
        Scene scene() const;
        FrequencyGrid grid() const;
        SubsurfacePartition partition() const;
        PiecewiseOptions piecewise_options() const { return {printed_range_factor}; }
        PlaneSpec plane() const;
        std::vector<double> pattern_frequency_values() const; // [Hz]
        double noise_density() const;                          // [W/Hz]

        // Resolved key = value listing (sorted keys, full precision).
        std::string canonical() const;
        // SHA-256 of canonical(), hex encoded.
        std::string hash() const;
    };

    // Defaults with sweep ranges filled in and validation applied.
    Scenario default_scenario();

    // Checks every invariant, fills default sweeps and warnings. Throws ScenarioError.
    void validate(Scenario &scenario, std::string_view source = "<scenario>");

    Scenario parse_scenario(std::string_view text, std::string_view source = "<string>");
    Scenario load_scenario(const std::filesystem::path &path);

    // Default t_req sweep 0, 1, ..., 20 ps and power sweep 40, 45, ..., 90 dBm.
    std::vector<double> default_t_req_values();
    std::vector<double> default_power_dbm();
    // (k, k) for k in {1, 2, 4, 5, 10, 20, 25, 50} that tile the layout.
    std::vector<SubsurfacePartition> default_td_sweep_partitions(const IrsLayout &layout);

} // namespace nfirs

#endif
