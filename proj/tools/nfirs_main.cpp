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

// Command-line front end: runs one experiment on a scenario file and writes a
// result table (CSV or JSON) or a beamformer configuration.

#include "nfirs/config_io.hpp"
#include "nfirs/experiments.hpp"
#include "nfirs/scenario.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{
    struct Common
    {
        std::string scenario_path;
        std::string out = "-";
        std::string designs;
        std::string format = "csv";
    };

    void add_common(CLI::App *cmd, Common &opt, bool with_designs)
    {
        cmd->add_option("--scenario", opt.scenario_path, "Scenario file (key = value); defaults apply when omitted")
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", opt.out, "Output file, '-' for stdout");
        if (with_designs)
            cmd->add_option("--designs", opt.designs, "Comma-separated: narrowband, dldd, per-element");
        cmd->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    }

    nfirs::Scenario load(const Common &opt)
    {
        nfirs::Scenario s =
            opt.scenario_path.empty() ? nfirs::default_scenario() : nfirs::load_scenario(opt.scenario_path);
        for (const auto &w : s.warnings)
            std::cerr << "warning: " << w << "\n";
        return s;
    }

    std::vector<nfirs::Design> designs(const Common &opt, std::vector<nfirs::Design> fallback)
    {
        if (opt.designs.empty())
            return fallback;
        std::vector<nfirs::Design> out;
        std::stringstream in(opt.designs);
        std::string item;
        while (std::getline(in, item, ','))
            out.push_back(nfirs::parse_design(item));
        if (out.empty())
            throw std::invalid_argument("--designs: empty list");
        return out;
    }

    void write(const Common &opt, const std::string &text)
    {
        if (opt.out == "-")
        {
            std::cout << text;
            return;
        }
        std::ofstream f(opt.out, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open output file '" + opt.out + "'");
        f << text;
        if (!f)
            throw std::runtime_error("failed writing '" + opt.out + "'");
    }

    void emit(const Common &opt, const nfirs::ResultTable &t)
    {
        write(opt, opt.format == "json" ? nfirs::to_json(t) : nfirs::to_csv(t));
    }

    nfirs::Design single(const Common &opt, nfirs::Design fallback, const char *command)
    {
        const auto d = designs(opt, {fallback});
        if (d.size() != 1)
            throw std::invalid_argument(std::string(command) + " takes exactly one design");
        return d.front();
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"nfirs: wideband near-field IRS beamforming experiments"};
    app.require_subcommand(1);
    app.set_version_flag("--version", nfirs::library_version());

    Common gain, pattern, td, delay, rate, config;
    auto *c_gain = app.add_subcommand("gain-profile", "Normalized array gain per subcarrier");
    add_common(c_gain, gain, true);
    auto *c_pattern = app.add_subcommand("beam-pattern", "Gain over the evaluation plane (one design)");
    add_common(c_pattern, pattern, true);
    auto *c_td = app.add_subcommand("td-count-sweep", "DLDD edge gain against the number of TD modules");
    add_common(c_td, td, false);
    auto *c_delay = app.add_subcommand("delay-range-sweep", "Edge gain against the TD module delay range");
    add_common(c_delay, delay, false);
    auto *c_rate = app.add_subcommand("rate-sweep", "Mean achievable rate against BS transmit power");
    add_common(c_rate, rate, true);
    auto *c_config = app.add_subcommand("export-config", "Beamformer configuration as JSON (one design)");
    add_common(c_config, config, true);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*c_gain)
        {
            const auto s = load(gain);
            emit(gain, nfirs::run_gain_profile(s, designs(gain, nfirs::all_designs())));
        }
        else if (*c_pattern)
        {
            const auto s = load(pattern);
            emit(pattern, nfirs::run_beam_pattern(s, single(pattern, nfirs::Design::dldd, "beam-pattern")));
        }
        else if (*c_td)
            emit(td, nfirs::run_td_count_sweep(load(td)));
        else if (*c_delay)
            emit(delay, nfirs::run_delay_range_sweep(load(delay)));
        else if (*c_rate)
        {
            const auto s = load(rate);
            emit(rate, nfirs::run_rate_sweep(s, s.power_dbm, designs(rate, nfirs::all_designs())));
        }
        else if (*c_config)
        {
            if (config.format != "json" && c_config->count("--format") > 0)
                throw std::invalid_argument("export-config only writes JSON");
            const auto s = load(config);
            write(config, nfirs::beamformer_to_json(
                              nfirs::build_design(s, single(config, nfirs::Design::dldd, "export-config"))));
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
