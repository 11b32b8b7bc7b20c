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

#include "nfirs/metrics.hpp"

#include "nfirs/channel.hpp"
#include "nfirs/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nfirs
{
    namespace
    {
        // Per-element terms of the cascaded sum, ready for any frequency:
        //   term_n(f) = amp_n(f) * exp(j (base_n - 2 pi f lag_n))
        // with lag_n = delay_n + (r_br,n - r_eval,n) / c.
        struct CascadeTerms
        {
            std::vector<double> base;
            std::vector<double> lag;
        };

        CascadeTerms prepare(const RealizedReflection &refl, std::span<const double> r_bs,
                             std::span<const double> r_eval, double c)
        {
            CascadeTerms t;
            t.base.resize(r_bs.size());
            t.lag.resize(r_bs.size());
            for (std::size_t n = 0; n < r_bs.size(); ++n)
            {
                t.base[n] = refl.base_phase[n] / kTwoPi; // in cycles
                t.lag[n] = refl.delay[n] + (r_bs[n] - r_eval[n]) / c;
            }
            return t;
        }

        std::complex<double> unit_phasor_cycles(double cycles)
        {
            const double frac = cycles - std::nearbyint(cycles);
            const double ph = kTwoPi * frac;
            return {std::cos(ph), std::sin(ph)};
        }

        std::complex<double> coherent_sum(const CascadeTerms &t, double f)
        {
            ComplexCompensatedSum acc;
            for (std::size_t n = 0; n < t.base.size(); ++n)
                acc.add(unit_phasor_cycles(t.base[n] - f * t.lag[n]));
            return acc.value();
        }

        void check_config(const Scene &scene, const BeamformerConfig &config)
        {
            scene.validate();
            if (config.layout.n_y != scene.layout.n_y || config.layout.n_z != scene.layout.n_z ||
                config.layout.spacing != scene.layout.spacing)
                throw std::invalid_argument("beamformer was built for a different IRS layout");
        }
    } // namespace

    double normalized_array_gain(const Scene &scene, const Point3 &evaluation_point, const BeamformerConfig &config,
                                 double f, std::optional<double> t_req)
    {
        check_config(scene, config);
        const std::vector<double> rb = element_distances(scene.layout, scene.bs);
        const std::vector<double> re = element_distances(scene.layout, evaluation_point);
        const CascadeTerms terms = prepare(realize(config, t_req), rb, re, kSpeedOfLight);
        return std::abs(coherent_sum(terms, f)) / static_cast<double>(rb.size());
    }

    double normalized_array_gain(const Scene &scene, const BeamformerConfig &config, double f,
                                 std::optional<double> t_req)
    {
        return normalized_array_gain(scene, scene.user, config, f, t_req);
    }

    GainProfile gain_profile(const Scene &scene, const FrequencyGrid &grid, const BeamformerConfig &config,
                             std::optional<double> t_req)
    {
        check_config(scene, config);
        const std::vector<double> rb = element_distances(scene.layout, scene.bs);
        const std::vector<double> ru = element_distances(scene.layout, scene.user);
        const CascadeTerms terms = prepare(realize(config, t_req), rb, ru, grid.c);
        const double inv_n = 1.0 / static_cast<double>(rb.size());

        GainProfile p;
        p.frequencies = grid.frequencies;
        p.gain.resize(grid.frequencies.size());
        parallel_for(p.gain.size(), [&](std::size_t m)
                     { p.gain[m] = std::abs(coherent_sum(terms, grid.frequencies[m])) * inv_n; });
        return p;
    }

    double edge_gain(const GainProfile &profile)
    {
        if (profile.gain.size() < 2)
            throw std::invalid_argument("edge_gain: needs at least two subcarriers");
        return std::min(profile.gain.front(), profile.gain.back());
    }

    double PlaneSpec::u_at(int iu) const { return u_min + (u_max - u_min) * iu / (u_points - 1); }
    double PlaneSpec::v_at(int iv) const { return v_min + (v_max - v_min) * iv / (v_points - 1); }

    Point3 PlaneSpec::point(int iu, int iv) const
    {
        const double u = u_at(iu), v = v_at(iv);
        switch (normal)
        {
        case Axis::x:
            return {level, u, v};
        case Axis::y:
            return {u, level, v};
        case Axis::z:
            break;
        }
        return {u, v, level};
    }

    void PlaneSpec::validate(const IrsLayout &layout) const
    {
        layout.validate();
        if (u_points < 2 || v_points < 2)
            throw std::invalid_argument("PlaneSpec: need at least 2 points along each axis");
        if (!std::isfinite(level) || !std::isfinite(u_min) || !std::isfinite(u_max) || !std::isfinite(v_min) ||
            !std::isfinite(v_max))
            throw std::invalid_argument("PlaneSpec: bounds must be finite");
        if (!(u_min < u_max) || !(v_min < v_max))
            throw std::invalid_argument("PlaneSpec: each range needs min < max");

        const double half_y = 0.5 * (layout.n_y - 1) * layout.spacing;
        const double half_z = 0.5 * (layout.n_z - 1) * layout.spacing;
        auto overlaps = [](double lo, double hi, double a, double b) { return lo <= b && a <= hi; };
        bool hits = false;
        switch (normal)
        {
        case Axis::x:
            hits = level == 0.0 && overlaps(u_min, u_max, -half_y, half_y) && overlaps(v_min, v_max, -half_z, half_z);
            break;
        case Axis::y:
            hits = overlaps(u_min, u_max, 0.0, 0.0) && std::abs(level) <= half_y &&
                   overlaps(v_min, v_max, -half_z, half_z);
            break;
        case Axis::z:
            hits = overlaps(u_min, u_max, 0.0, 0.0) && overlaps(v_min, v_max, -half_y, half_y) &&
                   std::abs(level) <= half_z;
            break;
        }
        if (hits)
            throw std::invalid_argument("PlaneSpec: evaluation plane intersects the IRS panel");
    }

    PlaneSpec default_pattern_plane(const Scene &scene)
    {
        PlaneSpec p;
        p.normal = Axis::z;
        p.level = scene.user.z;
        p.u_min = 0.5;
        p.u_max = 4.0;
        p.v_min = -6.0;
        p.v_max = 2.0;
        p.u_points = 201;
        p.v_points = 201;
        return p;
    }

    BeamPattern beam_pattern(const Scene &scene, const BeamformerConfig &config, std::span<const double> frequencies,
                             const PlaneSpec &plane)
    {
        check_config(scene, config);
        plane.validate(scene.layout);
        if (frequencies.empty())
            throw std::invalid_argument("beam_pattern: no frequencies requested");
        for (double f : frequencies)
            if (!(f > 0.0) || !std::isfinite(f))
                throw std::invalid_argument("beam_pattern: frequencies must be positive and finite");

        const std::size_t n_elem = scene.layout.size();
        const std::vector<double> rb = element_distances(scene.layout, scene.bs);
        const RealizedReflection refl = realize(config, std::nullopt);
        std::vector<Point3> elems;
        elems.reserve(n_elem);
        for (int iy = 1; iy <= scene.layout.n_y; ++iy)
            for (int iz = 1; iz <= scene.layout.n_z; ++iz)
                elems.push_back(element_position(scene.layout, iy, iz));

        // fixed part of each term's lag: delay + r_br / c
        std::vector<double> base(n_elem), lag0(n_elem);
        for (std::size_t n = 0; n < n_elem; ++n)
        {
            base[n] = refl.base_phase[n] / kTwoPi;
            lag0[n] = refl.delay[n] + rb[n] / kSpeedOfLight;
        }

        BeamPattern out;
        out.plane = plane;
        out.frequencies.assign(frequencies.begin(), frequencies.end());
        const auto nu = static_cast<std::size_t>(plane.u_points), nv = static_cast<std::size_t>(plane.v_points);
        const std::size_t nf = frequencies.size();
        out.values.assign(nf * nu * nv, 0.0);
        const double inv_n = 1.0 / static_cast<double>(n_elem);

        parallel_for(nu, [&](std::size_t iu)
                     {
                         std::vector<double> lag(n_elem);
                         std::vector<ComplexCompensatedSum> acc(nf);
                         for (std::size_t iv = 0; iv < nv; ++iv)
                         {
                             const Point3 p = plane.point(static_cast<int>(iu), static_cast<int>(iv));
                             for (std::size_t n = 0; n < n_elem; ++n)
                             {
                                 const double r = distance(p, elems[n]);
                                 if (r == 0.0)
                                     throw DegenerateGeometry("beam_pattern: grid point coincides with an element");
                                 lag[n] = lag0[n] - r / kSpeedOfLight;
                             }
                             for (std::size_t fi = 0; fi < nf; ++fi)
                             {
                                 ComplexCompensatedSum sum;
                                 for (std::size_t n = 0; n < n_elem; ++n)
                                     sum.add(unit_phasor_cycles(base[n] - frequencies[fi] * lag[n]));
                                 out.values[fi * nu * nv + iu * nv + iv] = std::abs(sum.value()) * inv_n;
                             }
                         } });

        for (std::size_t fi = 0; fi < nf; ++fi)
        {
            BeamPeak best{frequencies[fi], 0, 0, plane.point(0, 0), -1.0};
            for (int iu = 0; iu < plane.u_points; ++iu)
                for (int iv = 0; iv < plane.v_points; ++iv)
                {
                    const double g = out.at(fi, iu, iv);
                    if (g > best.gain)
                        best = {frequencies[fi], iu, iv, plane.point(iu, iv), g};
                }
            out.peaks.push_back(best);
        }
        return out;
    }

    double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
    double watts_to_dbm(double watts)
    {
        if (!(watts > 0.0))
            throw std::invalid_argument("watts_to_dbm: power must be positive");
        return 10.0 * std::log10(watts) + 30.0;
    }

    RateResult achievable_rate(const Scene &scene, const FrequencyGrid &grid, const BeamformerConfig &config,
                               double power, double noise_density, std::optional<double> t_req)
    {
        if (!(power > 0.0) || !std::isfinite(power))
            throw std::invalid_argument("achievable_rate: transmit power must be positive");
        if (!(noise_density > 0.0) || !std::isfinite(noise_density))
            throw std::invalid_argument("achievable_rate: noise density must be positive");
        if (!(grid.bandwidth > 0.0))
            throw std::invalid_argument("achievable_rate: bandwidth must be positive");
        check_config(scene, config);

        const std::vector<double> rb = element_distances(scene.layout, scene.bs);
        const std::vector<double> ru = element_distances(scene.layout, scene.user);
        const CascadeTerms terms = prepare(realize(config, t_req), rb, ru, grid.c);
        std::vector<double> inv_rr(rb.size());
        for (std::size_t n = 0; n < rb.size(); ++n)
            inv_rr[n] = 1.0 / (rb[n] * ru[n]);

        const auto m_count = static_cast<double>(grid.frequencies.size());
        const double noise = noise_density * grid.bandwidth / m_count;
        const double p_sub = power / m_count;

        RateResult out;
        out.power = power;
        out.noise_density = noise_density;
        out.frequencies = grid.frequencies;
        out.rate.resize(grid.frequencies.size());
        parallel_for(out.rate.size(), [&](std::size_t m)
                     {
                         const double f = grid.frequencies[m];
                         const double a = free_space_alpha(f, grid.c);
                         ComplexCompensatedSum acc;
                         for (std::size_t n = 0; n < inv_rr.size(); ++n)
                             acc.add(inv_rr[n] * unit_phasor_cycles(terms.base[n] - f * terms.lag[n]));
                         const double gain_sq = std::norm(a * a * acc.value());
                         out.rate[m] = std::log1p(p_sub * gain_sq / noise) / std::log(2.0);
                     });
        CompensatedSum mean;
        for (double r : out.rate)
            mean.add(r);
        out.mean_rate = mean.value() / m_count;
        return out;
    }

} // namespace nfirs
