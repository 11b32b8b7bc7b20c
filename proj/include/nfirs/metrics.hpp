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

#ifndef NFIRS_METRICS_HPP
#define NFIRS_METRICS_HPP

#include "nfirs/beamforming.hpp"
#include "nfirs/geometry.hpp"

#include <optional>
#include <span>
#include <vector>

namespace nfirs
{
    // Normalized array gain eta(f_m) per subcarrier.
    struct GainProfile
    {
        std::vector<double> frequencies; // [Hz]
        std::vector<double> gain;
    };

    enum class Axis
    {
        x,
        y,
        z
    };

    // Axis-aligned evaluation rectangle. The in-plane coordinates (u, v) are
    // (x, y) for a z-normal plane, (x, z) for a y-normal plane, (y, z) for an
    // x-normal plane. Grid points include both ends of each range.
    struct PlaneSpec
    {
        Axis normal = Axis::z;
        double level = 0.0; // coordinate along the normal [m]
        double u_min = 0.0, u_max = 1.0;
        double v_min = 0.0, v_max = 1.0;
        int u_points = 2;
        int v_points = 2;

        double u_at(int iu) const;
        double v_at(int iv) const;
        Point3 point(int iu, int iv) const;
        double u_step() const { return (u_max - u_min) / (u_points - 1); }
        double v_step() const { return (v_max - v_min) / (v_points - 1); }

        // Throws std::invalid_argument for degenerate rectangles or when the
        // rectangle touches the IRS panel.
        void validate(const IrsLayout &layout) const;
    };

    struct BeamPeak
    {
        double frequency;
        int iu, iv;
        Point3 position;
        double gain;
    };

    struct BeamPattern
    {
        PlaneSpec plane;
        std::vector<double> frequencies;
        std::vector<double> values; // [frequency][iu][iv]
        std::vector<BeamPeak> peaks; // one per frequency

        double at(std::size_t fi, int iu, int iv) const
        {
            const auto nu = static_cast<std::size_t>(plane.u_points), nv = static_cast<std::size_t>(plane.v_points);
            return values[fi * nu * nv + static_cast<std::size_t>(iu) * nv + static_cast<std::size_t>(iv)];
        }
    };

    struct RateResult
    {
        double power = 0.0;         // P_BS [W]
        double noise_density = 0.0; // [W/Hz]
        std::vector<double> frequencies;
        std::vector<double> rate; // [bit/s/Hz]
        double mean_rate = 0.0;
    };

    // (1/N) |sum_n exp(-j 2 pi f (r_br,n - r_ru,n) / c) coefficient_n(f)| against the
    // exact channel, summed row-major with compensation.
    double normalized_array_gain(const Scene &scene, const BeamformerConfig &config, double f,
                                 std::optional<double> t_req = std::nullopt);

    // Same, with the user replaced by an arbitrary evaluation point.
    double normalized_array_gain(const Scene &scene, const Point3 &evaluation_point, const BeamformerConfig &config,
                                 double f, std::optional<double> t_req = std::nullopt);

    GainProfile gain_profile(const Scene &scene, const FrequencyGrid &grid, const BeamformerConfig &config,
                             std::optional<double> t_req = std::nullopt);

    // min(eta at the first subcarrier, eta at the last). Requires >= 2 subcarriers.
    double edge_gain(const GainProfile &profile);

    BeamPattern beam_pattern(const Scene &scene, const BeamformerConfig &config, std::span<const double> frequencies,
                             const PlaneSpec &plane);

    // Default evaluation plane: z = z_user, x in [0.5, 4] m, y in [-6, 2] m, 201 x 201.
    PlaneSpec default_pattern_plane(const Scene &scene);

    inline constexpr double kDefaultNoiseDensityDbmPerHz = -174.0;

    double dbm_to_watts(double dbm);
    double watts_to_dbm(double watts);

    // Per subcarrier: log2(1 + (P/M) |G_m|^2 / (N0 B / M)) where G_m is the
    // cascaded gain with free-space amplitudes alpha_m^2 / (r_br,n r_ru,n) attached.
    RateResult achievable_rate(const Scene &scene, const FrequencyGrid &grid, const BeamformerConfig &config,
                               double power, double noise_density, std::optional<double> t_req = std::nullopt);

} // namespace nfirs

#endif
