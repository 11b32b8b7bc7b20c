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

#include "nfirs/config_io.hpp"

#include "json.hpp"

#include <stdexcept>

namespace nfirs
{
    namespace
    {
        using json = nlohmann::ordered_json;
        constexpr const char *kSchema = "nfirs-beamformer/1";

        json module_json(const ModuleRef &m)
        {
            return {{"layer", m.layer == DelayLayer::first ? "first" : "second"}, {"group", m.group}, {"index", m.index}};
        }

        ModuleRef module_from(const json &j)
        {
            const std::string layer = j.at("layer").get<std::string>();
            if (layer != "first" && layer != "second")
                throw std::invalid_argument("beamformer_from_json: unknown delay layer '" + layer + "'");
            return {layer == "first" ? DelayLayer::first : DelayLayer::second, j.at("group").get<int>(),
                    j.at("index").get<int>()};
        }
    } // namespace

    std::string beamformer_to_json(const BeamformerConfig &config)
    {
        config.validate();
        json j;
        j["schema"] = kSchema;
        j["design"] = std::string(to_string(config.design));
        j["design_frequency_hz"] = config.design_frequency;
        j["layout"] = {{"n_y", config.layout.n_y}, {"n_z", config.layout.n_z}, {"spacing_m", config.layout.spacing}};
        if (config.partition)
            j["partition"] = {{"k_y", config.partition->k_y}, {"k_z", config.partition->k_z}, {"s", config.partition->s}};
        else
            j["partition"] = nullptr;
        j["phases_rad"] = config.phases.theta;

        if (const auto *net = std::get_if<DlddDelayNetwork>(&config.delays))
        {
            json layers;
            layers["kind"] = "dldd";
            layers["k_y"] = net->k_y;
            layers["k_z"] = net->k_z;
            layers["first_layer_s"] = net->first_layer;
            layers["first_switch"] = net->first_switch;
            layers["first_route"] = net->first_route;
            layers["second_layer_s"] = net->second_layer;
            layers["second_switch"] = net->second_switch;
            layers["second_route"] = net->second_route;
            j["delay_network"] = layers;
            j["module_count"] = net->module_count();
        }
        else if (const auto *pe = std::get_if<PerElementDelayConfig>(&config.delays))
        {
            j["delay_network"] = {{"kind", "per-element"}, {"tau_s", pe->tau}};
            j["module_count"] = pe->tau.size();
        }
        else
        {
            j["delay_network"] = nullptr;
            j["module_count"] = 0;
        }
        j["required_delay_range_s"] = config.has_delays() ? json(required_delay_range(config)) : json(nullptr);

        json warnings = json::array();
        for (const auto &w : config.warnings)
        {
            json mods = json::array();
            for (const auto &m : w.modules)
                mods.push_back(module_json(m));
            warnings.push_back({{"message", w.message}, {"modules", mods}});
        }
        j["warnings"] = warnings;
        return j.dump(2) + "\n";
    }

    BeamformerConfig beamformer_from_json(const std::string &text)
    {
        BeamformerConfig cfg;
        try
        {
            const json j = json::parse(text);
            if (j.at("schema").get<std::string>() != kSchema)
                throw std::invalid_argument("unsupported schema '" + j.at("schema").get<std::string>() + "'");
            cfg.design = parse_design(j.at("design").get<std::string>());
            cfg.design_frequency = j.at("design_frequency_hz").get<double>();
            const json &lay = j.at("layout");
            cfg.layout = {lay.at("n_y").get<int>(), lay.at("n_z").get<int>(), lay.at("spacing_m").get<double>()};
            if (!j.at("partition").is_null())
            {
                const json &p = j.at("partition");
                cfg.partition = SubsurfacePartition{p.at("k_y").get<int>(), p.at("k_z").get<int>(), p.at("s").get<int>()};
            }
            cfg.phases.theta = j.at("phases_rad").get<std::vector<double>>();

            const json &dn = j.at("delay_network");
            if (!dn.is_null())
            {
                const std::string kind = dn.at("kind").get<std::string>();
                if (kind == "dldd")
                {
                    DlddDelayNetwork net;
                    net.k_y = dn.at("k_y").get<int>();
                    net.k_z = dn.at("k_z").get<int>();
                    net.first_layer = dn.at("first_layer_s").get<std::vector<double>>();
                    net.first_switch = dn.at("first_switch").get<int>();
                    net.first_route = dn.at("first_route").get<std::vector<int>>();
                    net.second_layer = dn.at("second_layer_s").get<std::vector<double>>();
                    net.second_switch = dn.at("second_switch").get<std::vector<int>>();
                    net.second_route = dn.at("second_route").get<std::vector<int>>();
                    cfg.delays = std::move(net);
                }
                else if (kind == "per-element")
                    cfg.delays = PerElementDelayConfig{dn.at("tau_s").get<std::vector<double>>()};
                else
                    throw std::invalid_argument("unknown delay network kind '" + kind + "'");
            }
            for (const json &w : j.at("warnings"))
            {
                DesignWarning dw{w.at("message").get<std::string>(), {}};
                for (const json &m : w.at("modules"))
                    dw.modules.push_back(module_from(m));
                cfg.warnings.push_back(std::move(dw));
            }
        }
        catch (const nlohmann::json::exception &e)
        {
            throw std::invalid_argument(std::string("beamformer_from_json: ") + e.what());
        }
        cfg.validate();
        return cfg;
    }

} // namespace nfirs
