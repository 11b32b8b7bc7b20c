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

#include "nfirs/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nfirs
{
    std::string_view to_string(Design design)
    {
        switch (design)
        {
        case Design::narrowband:
            return "narrowband";
        case Design::dldd:
            return "dldd";
        case Design::per_element:
            return "per-element";
        }
        return "unknown";
    }

    Design parse_design(std::string_view name)
    {
        if (name == "narrowband")
            return Design::narrowband;
        if (name == "dldd")
            return Design::dldd;
        if (name == "per-element")
            return Design::per_element;
        throw std::invalid_argument("unknown design '" + std::string(name) +
                                    "' (expected narrowband, dldd or per-element)");
    }

    double wrap_phase_cycles(double cycles)
    {
        double frac = cycles - std::floor(cycles);
        if (frac >= 1.0)
            frac = 0.0;
        return kTwoPi * frac;
    }

    double DlddDelayNetwork::module_delay(const ModuleRef &m) const
    {
        if (m.layer == DelayLayer::first)
        {
            if (m.group != 1 || m.index < 1 || m.index > k_y - 1)
                throw std::invalid_argument("module_delay: first-layer module out of range");
            const auto i = static_cast<std::size_t>(m.index - 1);
            return first_route[i] * first_layer[i];
        }
        if (m.group < 1 || m.group > k_y || m.index < 1 || m.index > k_z - 1)
            throw std::invalid_argument("module_delay: second-layer module out of range");
        const std::size_t i = second_slot(m.group, m.index);
        return second_route[i] * second_layer[i];
    }

    void BeamformerConfig::validate() const
    {
        layout.validate();
        if (phases.theta.size() != layout.size())
            throw std::invalid_argument("BeamformerConfig: phase table size does not match the layout");
        if (!(design_frequency > 0.0))
            throw std::invalid_argument("BeamformerConfig: design frequency must be positive");
        if (partition)
            check_partition(layout, *partition);
        if (const auto *net = std::get_if<DlddDelayNetwork>(&delays))
        {
            if (!partition || net->k_y != partition->k_y || net->k_z != partition->k_z)
                throw std::invalid_argument("BeamformerConfig: DLDD network does not match the partition");
            const auto n_first = static_cast<std::size_t>(net->k_y - 1);
            const auto n_second = static_cast<std::size_t>(net->k_y) * static_cast<std::size_t>(net->k_z - 1);
            if (net->first_layer.size() != n_first || net->first_route.size() != n_first ||
                net->second_layer.size() != n_second || net->second_route.size() != n_second ||
                net->second_switch.size() != static_cast<std::size_t>(net->k_y))
                throw std::invalid_argument("BeamformerConfig: DLDD table sizes are inconsistent");
            for (std::size_t i = 0; i < n_first; ++i)
                if (net->first_route[i] * net->first_layer[i] < 0.0)
                    throw std::invalid_argument("BeamformerConfig: first-layer routing yields a negative delay");
            for (std::size_t i = 0; i < n_second; ++i)
                if (net->second_route[i] * net->second_layer[i] < 0.0)
                    throw std::invalid_argument("BeamformerConfig: second-layer routing yields a negative delay");
        }
        if (const auto *pe = std::get_if<PerElementDelayConfig>(&delays))
        {
            if (pe->tau.size() != layout.size())
                throw std::invalid_argument("BeamformerConfig: per-element delay table size does not match the layout");
            for (double t : pe->tau)
                if (!std::isfinite(t))
                    throw std::invalid_argument("BeamformerConfig: per-element delays must be finite");
        }
    }

    namespace
    {
        int sign_of(double v) { return v < 0.0 ? -1 : 1; }

        // Majority sign over the non-zero entries (ties go to the first non-zero).
        int dominant_sign(std::span<const double> v)
        {
            int pos = 0, neg = 0, first = 0;
            for (double x : v)
            {
                if (x > 0.0)
                    ++pos;
                else if (x < 0.0)
                    ++neg;
                if (first == 0 && x != 0.0)
                    first = sign_of(x);
            }
            if (pos != neg)
                return pos > neg ? 1 : -1;
            return first == 0 ? 1 : first;
        }

        bool agrees(double v, int sign) { return v == 0.0 || sign_of(v) == sign; }

        struct LayerDeltas
        {
            std::vector<double> first;  // K_y - 1
            std::vector<double> second; // K_y * (K_z - 1)
        };

        LayerDeltas layer_deltas(const CascadedDecomposition &d, double c)
        {
            const SubsurfacePartition &p = d.partition;
            LayerDeltas out;
            for (int kt = 1; kt < p.k_y; ++kt)
                out.first.push_back(-(d.inter(kt + 1, 1) - d.inter(kt, 1)) / c);
            for (int ky = 1; ky <= p.k_y; ++ky)
                for (int kt = 1; kt < p.k_z; ++kt)
                    out.second.push_back(-(d.inter(ky, kt + 1) - d.inter(ky, kt)) / c);
            return out;
        }

        void check_decomposition(const CascadedDecomposition &d)
        {
            if (d.inter_delta_r.size() != d.partition.count())
                throw std::invalid_argument("CascadedDecomposition: inter table size does not match the partition");
        }
    } // namespace

    BeamformerConfig narrowband_design(const Scene &scene, const FrequencyGrid &grid)
    {
        scene.validate();
        const std::vector<double> rb = element_distances(scene.layout, scene.bs);
        const std::vector<double> ru = element_distances(scene.layout, scene.user);

        BeamformerConfig cfg;
        cfg.design = Design::narrowband;
        cfg.layout = scene.layout;
        cfg.design_frequency = grid.f_c;
        cfg.phases.theta.resize(rb.size());
        for (std::size_t n = 0; n < rb.size(); ++n)
            cfg.phases.theta[n] = wrap_phase_cycles(grid.f_c * (rb[n] - ru[n]) / grid.c);
        return cfg;
    }

    std::vector<double> required_subsurface_delays(const CascadedDecomposition &decomp, double c)
    {
        check_decomposition(decomp);
        std::vector<double> tau(decomp.inter_delta_r.size());
        for (std::size_t k = 0; k < tau.size(); ++k)
            tau[k] = -decomp.inter_delta_r[k] / c;
        return tau;
    }

    double dedicated_delay_range(std::span<const double> tau)
    {
        double m = 0.0;
        for (double t : tau)
            m = std::max(m, std::abs(t));
        return m;
    }

    SignConsistencyReport sign_consistency_check(const CascadedDecomposition &decomp, double c)
    {
        check_decomposition(decomp);
        const SubsurfacePartition &p = decomp.partition;
        const std::vector<double> tau = required_subsurface_delays(decomp, c);
        const LayerDeltas deltas = layer_deltas(decomp, c);

        SignConsistencyReport r;
        r.sign = dominant_sign(tau);
        r.tau_consistent = std::all_of(tau.begin(), tau.end(), [&](double t) { return agrees(t, r.sign); });

        r.first_layer_sign = dominant_sign(deltas.first);
        for (int kt = 1; kt < p.k_y; ++kt)
            if (!agrees(deltas.first[static_cast<std::size_t>(kt - 1)], r.first_layer_sign))
                r.offending.push_back({DelayLayer::first, 1, kt});
        r.first_layer_consistent = r.offending.empty();

        r.second_layer_sign = dominant_sign(deltas.second);
        const std::size_t before = r.offending.size();
        std::size_t i = 0;
        for (int ky = 1; ky <= p.k_y; ++ky)
            for (int kt = 1; kt < p.k_z; ++kt, ++i)
                if (!agrees(deltas.second[i], r.second_layer_sign))
                    r.offending.push_back({DelayLayer::second, ky, kt});
        r.second_layer_consistent = r.offending.size() == before;

        r.consistent = r.tau_consistent && r.first_layer_consistent && r.second_layer_consistent;
        return r;
    }

    BeamformerConfig dldd_design(const Scene &scene, const FrequencyGrid &grid, const SubsurfacePartition &partition,
                                 const PiecewiseOptions &options)
    {
        scene.validate();
        check_partition(scene.layout, partition);
        const CascadedDecomposition decomp = cascaded_decomposition(scene, partition, options);
        const SignConsistencyReport report = sign_consistency_check(decomp, grid.c);
        LayerDeltas deltas = layer_deltas(decomp, grid.c);

        DlddDelayNetwork net;
        net.k_y = partition.k_y;
        net.k_z = partition.k_z;
        net.first_layer = std::move(deltas.first);
        net.second_layer = std::move(deltas.second);
        net.first_switch = report.first_layer_sign;
        net.second_switch.assign(static_cast<std::size_t>(partition.k_y), report.second_layer_sign);

        auto route = [](double delta, int sw) { return agrees(delta, sw) ? sw : -sw; };
        for (double d : net.first_layer)
            net.first_route.push_back(route(d, net.first_switch));
        for (std::size_t i = 0; i < net.second_layer.size(); ++i)
            net.second_route.push_back(route(net.second_layer[i], report.second_layer_sign));

        BeamformerConfig cfg;
        cfg.design = Design::dldd;
        cfg.layout = scene.layout;
        cfg.partition = partition;
        cfg.design_frequency = grid.f_c;
        cfg.phases.theta.resize(decomp.intra_delta_phi.size());
        for (std::size_t n = 0; n < cfg.phases.theta.size(); ++n)
            cfg.phases.theta[n] = wrap_phase_cycles(-grid.f_c * decomp.intra_delta_phi[n] / grid.c);
        cfg.delays = std::move(net);

        if (!report.tau_consistent)
            cfg.warnings.push_back({"sub-surface delays tau_k do not share one sign", {}});
        if (!report.offending.empty())
            cfg.warnings.push_back({"TD module deltas disagree in sign with their layer; those modules are routed "
                                    "individually",
                                    report.offending});
        return cfg;
    }

    double cumulative_delay(const DlddDelayNetwork &net, int ky, int kz, std::optional<double> t_req)
    {
        if (ky < 1 || ky > net.k_y || kz < 1 || kz > net.k_z)
            throw std::invalid_argument("cumulative_delay: sub-surface index out of range");
        if (t_req && !(*t_req >= 0.0))
            throw std::invalid_argument("cumulative_delay: t_req must be non-negative");

        auto realized = [&](double delta, int route)
        {
            if (!t_req)
                return delta;
            return route * std::min(route * delta, *t_req);
        };
        double tau = 0.0;
        for (int k = 1; k < ky; ++k)
        {
            const auto i = static_cast<std::size_t>(k - 1);
            tau += realized(net.first_layer[i], net.first_route[i]);
        }
        for (int k = 1; k < kz; ++k)
        {
            const std::size_t i = net.second_slot(ky, k);
            tau += realized(net.second_layer[i], net.second_route[i]);
        }
        return tau;
    }

    BeamformerConfig per_element_td_design(const Scene &scene, const FrequencyGrid &grid)
    {
        scene.validate();
        const std::vector<double> rb = element_distances(scene.layout, scene.bs);
        const std::vector<double> ru = element_distances(scene.layout, scene.user);

        PerElementDelayConfig pe;
        pe.tau.resize(rb.size());
        for (std::size_t n = 0; n < rb.size(); ++n)
            pe.tau[n] = -(rb[n] - ru[n]) / grid.c;

        BeamformerConfig cfg;
        cfg.design = Design::per_element;
        cfg.layout = scene.layout;
        cfg.design_frequency = grid.f_c;
        cfg.phases.theta.assign(rb.size(), 0.0);
        cfg.delays = std::move(pe);
        return cfg;
    }

    int td_module_count(const SubsurfacePartition &p)
    {
        if (p.k_y < 1 || p.k_z < 1)
            throw std::invalid_argument("td_module_count: sub-surface counts must be >= 1");
        return (p.k_y - 1) + p.k_y * (p.k_z - 1);
    }

    double required_delay_range(const BeamformerConfig &config)
    {
        if (const auto *net = std::get_if<DlddDelayNetwork>(&config.delays))
        {
            double m = 0.0;
            for (int kt = 1; kt < net->k_y; ++kt)
                m = std::max(m, net->module_delay({DelayLayer::first, 1, kt}));
            for (int ky = 1; ky <= net->k_y; ++ky)
                for (int kt = 1; kt < net->k_z; ++kt)
                    m = std::max(m, net->module_delay({DelayLayer::second, ky, kt}));
            return m;
        }
        if (const auto *pe = std::get_if<PerElementDelayConfig>(&config.delays))
        {
            const auto [lo, hi] = std::minmax_element(pe->tau.begin(), pe->tau.end());
            return pe->tau.empty() ? 0.0 : *hi - *lo;
        }
        throw std::invalid_argument("required_delay_range: design has no delay network");
    }

    RealizedReflection realize(const BeamformerConfig &config, std::optional<double> t_req)
    {
        if (t_req && !(*t_req >= 0.0 && std::isfinite(*t_req)))
            throw std::invalid_argument("realize: t_req must be non-negative and finite");
        config.validate();

        const std::size_t n_elem = config.layout.size();
        RealizedReflection out;
        out.base_phase = config.phases.theta;
        out.delay.assign(n_elem, 0.0);

        // design delay per element (offset-free) and its realized counterpart
        std::vector<double> ideal(n_elem, 0.0);
        if (const auto *net = std::get_if<DlddDelayNetwork>(&config.delays))
        {
            const SubsurfacePartition &p = *config.partition;
            std::vector<double> tau_ideal(p.count()), tau_real(p.count());
            for (int ky = 1; ky <= p.k_y; ++ky)
                for (int kz = 1; kz <= p.k_z; ++kz)
                {
                    const std::size_t k = static_cast<std::size_t>(ky - 1) * static_cast<std::size_t>(p.k_z) +
                                          static_cast<std::size_t>(kz - 1);
                    tau_ideal[k] = cumulative_delay(*net, ky, kz);
                    tau_real[k] = t_req ? cumulative_delay(*net, ky, kz, t_req) : tau_ideal[k];
                }
            std::size_t n = 0;
            for (int iy = 1; iy <= config.layout.n_y; ++iy)
                for (int iz = 1; iz <= config.layout.n_z; ++iz, ++n)
                {
                    const ElementSlot s = element_slot(p, iy, iz);
                    const std::size_t k = static_cast<std::size_t>(s.ky - 1) * static_cast<std::size_t>(p.k_z) +
                                          static_cast<std::size_t>(s.kz - 1);
                    ideal[n] = tau_ideal[k];
                    out.delay[n] = tau_real[k];
                }
        }
        else if (const auto *pe = std::get_if<PerElementDelayConfig>(&config.delays))
        {
            const double lo = *std::min_element(pe->tau.begin(), pe->tau.end());
            for (std::size_t n = 0; n < n_elem; ++n)
            {
                ideal[n] = pe->tau[n] - lo;
                out.delay[n] = t_req ? std::min(ideal[n], *t_req) : ideal[n];
            }
        }

        // Negative cumulative delays (reversed routing) shift every element by the
        // same amount; drop that common offset so the realized delays are >= 0.
        if (config.has_delays() && n_elem > 0)
        {
            const double lo = *std::min_element(out.delay.begin(), out.delay.end());
            const double lo_ideal = *std::min_element(ideal.begin(), ideal.end());
            for (std::size_t n = 0; n < n_elem; ++n)
            {
                out.delay[n] -= lo;
                ideal[n] -= lo_ideal;
            }
        }

        if (t_req)
            for (std::size_t n = 0; n < n_elem; ++n)
                out.base_phase[n] = wrap_phase_cycles(out.base_phase[n] / kTwoPi +
                                                      config.design_frequency * (out.delay[n] - ideal[n]));
        return out;
    }

    std::vector<std::complex<double>> effective_reflection(const BeamformerConfig &config, double f,
                                                           std::optional<double> t_req)
    {
        const RealizedReflection r = realize(config, t_req);
        std::vector<std::complex<double>> coef(r.base_phase.size());
        for (std::size_t n = 0; n < coef.size(); ++n)
        {
            const double cycles = r.base_phase[n] / kTwoPi - f * r.delay[n];
            coef[n] = std::polar(1.0, kTwoPi * (cycles - std::nearbyint(cycles)));
        }
        return coef;
    }

} // namespace nfirs
