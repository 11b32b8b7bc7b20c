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

#ifndef NFIRS_BEAMFORMING_HPP
#define NFIRS_BEAMFORMING_HPP

#include "nfirs/channel.hpp"
#include "nfirs/geometry.hpp"

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nfirs
{
    enum class Design
    {
        narrowband,  // phase-only focusing at f_c
        dldd,        // double-layer delta-delay network + intra-sub-surface phases
        per_element  // one true-time-delay module per element (upper bound)
    };

    std::string_view to_string(Design design);
    Design parse_design(std::string_view name); // "narrowband" | "dldd" | "per-element"

    // Reflection phases theta_n in [0, 2 pi), row-major over elements.
    struct PhaseShiftConfig
    {
        std::vector<double> theta;
    };

    enum class DelayLayer
    {
        first,
        second
    };

    // Identifies one TD module. First layer: group = 1, index = k_y^t in 1..K_y-1.
    // Second layer: group = k_y in 1..K_y, index = k_z^t in 1..K_z-1.
    struct ModuleRef
    {
        DelayLayer layer;
        int group;
        int index;
        friend bool operator==(const ModuleRef &, const ModuleRef &) = default;
    };

    // Double-layer delta-delay network.
    //
    // Delays are stored signed as designed. A 2-output switch ahead of each group
    // selects the routing direction, so the physical delay a module realizes is
    // route * delta >= 0. With consistent signs every module in a group shares the
    // group's switch setting; otherwise modules are routed individually.
    struct DlddDelayNetwork
    {
        int k_y = 1;
        int k_z = 1;
        std::vector<double> first_layer;  // K_y - 1 entries [s]
        std::vector<double> second_layer; // K_y * (K_z - 1) entries [s], group-major
        int first_switch = 1;             // +1: 1st switch output, -1: 2nd
        std::vector<int> second_switch;   // one per second-layer group
        std::vector<int> first_route;     // per module, +-1
        std::vector<int> second_route;    // per module, +-1

        double first_delta(int kt) const { return first_layer[static_cast<std::size_t>(kt - 1)]; }
        double second_delta(int ky, int kzt) const { return second_layer[second_slot(ky, kzt)]; }

        // Physical (non-negative) delay realized by a module.
        double module_delay(const ModuleRef &module) const;
        std::size_t module_count() const { return first_layer.size() + second_layer.size(); }

        std::size_t second_slot(int ky, int kzt) const
        {
            return static_cast<std::size_t>(ky - 1) * static_cast<std::size_t>(k_z - 1) +
                   static_cast<std::size_t>(kzt - 1);
        }
    };

    // Delay per element, tau_n = -(r_br,n - r_ru,n) / c.
    struct PerElementDelayConfig
    {
        std::vector<double> tau;
    };

    struct DesignWarning
    {
        std::string message;
        std::vector<ModuleRef> modules;
    };

    using DelayNetwork = std::variant<std::monostate, DlddDelayNetwork, PerElementDelayConfig>;

    struct BeamformerConfig
    {
        Design design = Design::narrowband;
        IrsLayout layout;
        std::optional<SubsurfacePartition> partition; // set for DLDD
        double design_frequency = 0.0;                // f_c the phases were computed for [Hz]
        PhaseShiftConfig phases;
        DelayNetwork delays;
        std::vector<DesignWarning> warnings;

        bool has_delays() const { return !std::holds_alternative<std::monostate>(delays); }
        void validate() const; // throws std::invalid_argument on inconsistent tables
    };

    // theta_n = 2 pi f_c (r_br,n - r_ru,n) / c mod 2 pi; no delays.
    BeamformerConfig narrowband_design(const Scene &scene, const FrequencyGrid &grid);

    // Dedicated per-sub-surface delays tau_k = -inter_delta_r[k] / c, row-major over (ky, kz).
    std::vector<double> required_subsurface_delays(const CascadedDecomposition &decomp, double c = kSpeedOfLight);

    // Largest delay a dedicated module would have to realize: max_k |tau_k|.
    double dedicated_delay_range(std::span<const double> tau);

    struct SignConsistencyReport
    {
        bool consistent = true; // all three sets below are sign-consistent
        int sign = 1;           // common sign of tau_k
        bool tau_consistent = true;
        int first_layer_sign = 1;
        bool first_layer_consistent = true;
        int second_layer_sign = 1;
        bool second_layer_consistent = true;
        std::vector<ModuleRef> offending; // modules whose sign disagrees with their layer
    };

    // Checks that all tau_k share one sign and that first- and second-layer deltas
    // each share one sign. Zero entries agree with either sign.
    SignConsistencyReport sign_consistency_check(const CascadedDecomposition &decomp, double c = kSpeedOfLight);

    // DLDD design: first layer from column k_z = 1, second layer per row, phases
    // from the intra-sub-surface path difference at f_c. Sign violations are
    // reported in `warnings` and routed per module.
    BeamformerConfig dldd_design(const Scene &scene, const FrequencyGrid &grid, const SubsurfacePartition &partition,
                                 const PiecewiseOptions &options = {});

    // Delay reaching sub-surface (ky, kz) through the network, relative to (1, 1).
    // With t_req set, every module's physical delay saturates at t_req first.
    double cumulative_delay(const DlddDelayNetwork &network, int ky, int kz,
                            std::optional<double> t_req = std::nullopt);

    // tau_n = -(r_br,n - r_ru,n) / c with zero phases.
    BeamformerConfig per_element_td_design(const Scene &scene, const FrequencyGrid &grid);

    // Number of TD modules of a DLDD network, (K_y - 1) + K_y (K_z - 1).
    int td_module_count(const SubsurfacePartition &partition);

    // Largest single-module delay the design needs (DLDD), or the per-element
    // delay spread max - min. Throws std::invalid_argument without delays.
    double required_delay_range(const BeamformerConfig &config);

    // Frequency-flat description of the realized reflection:
    //   coefficient_n(f) = exp(j (base_phase_n - 2 pi f delay_n)).
    //
    // Delays are the per-element realized delays (common offset dropped so that
    // every delay is >= 0). When a clamp t_req saturates a module, the phase
    // shifters absorb the lost delay at the design frequency, so the response at
    // f_c is unchanged and only the frequency slope is lost.
    struct RealizedReflection
    {
        std::vector<double> base_phase;
        std::vector<double> delay;
    };

    RealizedReflection realize(const BeamformerConfig &config, std::optional<double> t_req = std::nullopt);

    // Per-element unit-magnitude reflection coefficients at frequency f.
    std::vector<std::complex<double>> effective_reflection(const BeamformerConfig &config, double f,
                                                           std::optional<double> t_req = std::nullopt);

    // x mod 2 pi in [0, 2 pi), computed on the cycle count.
    double wrap_phase_cycles(double cycles);

} // namespace nfirs

#endif
