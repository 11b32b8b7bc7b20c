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

// Acceptance suite: evaluates each numbered acceptance criterion on the default
// scene and prints one PASS/FAIL line per criterion. Exit status is nonzero when
// any criterion fails.

#include "nfirs/experiments.hpp"
#include "nfirs/metrics.hpp"
#include "nfirs/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <unistd.h>
#include <string>

#ifndef NFIRS_CLI_PATH
#define NFIRS_CLI_PATH "nfirs"
#endif

using namespace nfirs;

namespace
{
    struct Outcome
    {
        bool pass;
        std::string detail;
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    int failures = 0;

    void report(int id, const char *title, const std::function<Outcome()> &check)
    {
        Outcome o;
        try
        {
            o = check();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
        std::fflush(stdout);
    }

    Scene scene_of(const Scenario &s) { return s.scene(); }

    // 1. Exact cancellation identities
    Outcome identities(const Scenario &s)
    {
        const Scene scene = scene_of(s);
        const FrequencyGrid grid = s.grid();
        const double nb = normalized_array_gain(scene, narrowband_design(scene, grid), grid.f_c);
        const GainProfile pe = gain_profile(scene, grid, per_element_td_design(scene, grid));
        double worst = 0.0;
        for (double g : pe.gain)
            worst = std::max(worst, std::abs(g - 1.0));
        const bool ok = std::abs(nb - 1.0) <= 1e-9 && worst <= 1e-9 && pe.gain.size() == 128;
        return {ok, fmt("|eta_nb(f_c) - 1| = %.3g, max_m |eta_pe(f_m) - 1| = %.3g over %zu subcarriers",
                        std::abs(nb - 1.0), worst, pe.gain.size())};
    }

    // 2. Beam split of the narrowband design
    Outcome beam_split(const Scenario &s)
    {
        const Scene scene = scene_of(s);
        const FrequencyGrid wide = s.grid();
        const FrequencyGrid narrow = make_frequency_grid(s.f_c, 0.3e9, s.subcarriers);
        const double e_wide = edge_gain(gain_profile(scene, wide, narrowband_design(scene, wide)));
        const double e_narrow = edge_gain(gain_profile(scene, narrow, narrowband_design(scene, narrow)));
        return {e_wide <= 0.10 && e_narrow >= 0.99,
                fmt("edge gain %.6f at B = 30 GHz (<= 0.10), %.6f at B = 0.3 GHz (>= 0.99)", e_wide, e_narrow)};
    }

    // 3. DLDD across the band
    Outcome dldd_performance(const Scenario &s)
    {
        const Scene scene = scene_of(s);
        const FrequencyGrid grid = s.grid();
        const GainProfile p = gain_profile(scene, grid, build_design(s, Design::dldd));
        const double e = edge_gain(p);
        const double lo = *std::min_element(p.gain.begin(), p.gain.end());
        return {e >= 0.94 && e <= 1.0 && lo >= 0.90,
                fmt("edge gain %.6f (need [0.94, 1.0]), minimum %.6f (need >= 0.90)", e, lo)};
    }

    // 4. Module count
    Outcome module_count(const Scenario &s)
    {
        const IrsLayout layout = s.layout();
        bool ok = td_module_count(make_partition(layout, 10, 10)) == 99;
        int checked = 0;
        for (int k = 1; k <= layout.n_y; ++k)
            if (layout.n_y % k == 0)
            {
                const SubsurfacePartition p = make_partition(layout, k, k);
                ok = ok && td_module_count(p) == static_cast<int>(p.count()) - 1;
                ++checked;
            }
        return {ok, fmt("K_t(10x10) = %d, K_t = K - 1 on %d divisor partitions",
                        td_module_count(make_partition(layout, 10, 10)), checked)};
    }

    // 5. Delay-range compression
    Outcome compression(const Scenario &s)
    {
        const Scene scene = scene_of(s);
        const SubsurfacePartition p = s.partition();
        const auto tau = required_subsurface_delays(cascaded_decomposition(scene, p, s.piecewise_options()));
        const double dedicated = dedicated_delay_range(tau);
        const auto [lo, hi] = std::minmax_element(tau.begin(), tau.end());
        const double module = required_delay_range(build_design(s, Design::dldd));
        const double ratio = dedicated / module;
        return {dedicated >= 5000e-12 && module <= 20e-12 && ratio >= 250.0,
                fmt("dedicated max|tau_k| = %.2f ps (>= 5000; spread %.2f ps), largest DLDD module delay = %.3f ps "
                    "(<= 20), ratio %.1fx (>= 250)",
                    dedicated * 1e12, (*hi - *lo) * 1e12, module * 1e12, ratio)};
    }

    // 6. Clamped operating point and monotonicity
    Outcome clamped(const Scenario &s)
    {
        std::vector<double> t_req;
        for (int ps = 0; ps <= 20; ++ps)
            t_req.push_back(ps * 1e-12);
        const ResultTable t = run_delay_range_sweep(s, t_req);
        const double at9 = t.rows[9][1];
        int drops = 0;
        std::string first_drop;
        for (std::size_t i = 1; i < t.rows.size(); ++i)
            if (t.rows[i][1] < t.rows[i - 1][1])
            {
                if (drops++ == 0)
                    first_drop = fmt("%g->%g ps: %.4f->%.4f", t.rows[i - 1][0], t.rows[i][0], t.rows[i - 1][1],
                                     t.rows[i][1]);
            }
        return {std::abs(at9 - 0.95) <= 0.03 && drops == 0,
                fmt("edge gain at t_req = 9 ps %.6f (need 0.95 +- 0.03); %d decreases over 0..20 ps%s%s", at9, drops,
                    drops ? ", first " : "", first_drop.c_str())};
    }

    // 7. Rate ratios at the power where the narrowband rate is 5 bit/s/Hz
    Outcome rate_ratios(const Scenario &s)
    {
        const Scene scene = scene_of(s);
        const FrequencyGrid grid = s.grid();
        const BeamformerConfig nb = build_design(s, Design::narrowband);
        const BeamformerConfig dl = build_design(s, Design::dldd);
        const BeamformerConfig pe = build_design(s, Design::per_element);
        const double n0 = s.noise_density();
        auto rate = [&](const BeamformerConfig &c, double dbm)
        { return achievable_rate(scene, grid, c, dbm_to_watts(dbm), n0).mean_rate; };

        double lo = -50.0, hi = 200.0;
        for (int i = 0; i < 60; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            (rate(nb, mid) < 5.0 ? lo : hi) = mid;
        }
        const double p = 0.5 * (lo + hi);
        const double rn = rate(nb, p), rd = rate(dl, p), rp = rate(pe, p);
        const double r1 = rd / rn, r2 = rd / rp;
        return {r1 >= 1.8 && r1 <= 2.4 && r2 >= 0.97,
                fmt("P_BS = %.3f dBm gives narrowband %.4f bit/s/Hz; DLDD/narrowband = %.4f (need [1.8, 2.4]), "
                    "DLDD/per-element = %.5f (need >= 0.97)",
                    p, rn, r1, r2)};
    }

    // 8. Beam-pattern peaks on the default plane
    Outcome peaks(const Scenario &s)
    {
        const Scene scene = scene_of(s);
        const PlaneSpec plane = s.plane();
        const int uu = static_cast<int>(std::lround((scene.user.x - plane.u_min) / plane.u_step()));
        const int uv = static_cast<int>(std::lround((scene.user.y - plane.v_min) / plane.v_step()));
        const std::vector<double> f = s.pattern_frequency_values();
        auto cells = [&](const BeamPeak &p) { return std::max(std::abs(p.iu - uu), std::abs(p.iv - uv)); };

        const BeamPattern nb = beam_pattern(scene, build_design(s, Design::narrowband), f, plane);
        const BeamPattern dl = beam_pattern(scene, build_design(s, Design::dldd), f, plane);
        const bool ok = cells(nb.peaks.front()) > 2 && cells(nb.peaks.back()) > 2 && cells(dl.peaks[0]) <= 1 &&
                        cells(dl.peaks[1]) <= 1 && cells(dl.peaks[2]) <= 1;
        return {ok, fmt("user cell (%d, %d); narrowband f1/fM peaks %d/%d cells away (> 2); DLDD f1/fc/fM peaks "
                        "%d/%d/%d cells away (<= 1)",
                        uu, uv, cells(nb.peaks.front()), cells(nb.peaks.back()), cells(dl.peaks[0]),
                        cells(dl.peaks[1]), cells(dl.peaks[2]))};
    }

    // 9. Sign consistency on the default scene and on separated random scenes
    Outcome sign_property(const Scenario &s, const std::string &log_path)
    {
        const Scene scene = scene_of(s);
        const SubsurfacePartition p = s.partition();
        const bool default_ok = sign_consistency_check(cascaded_decomposition(scene, p)).consistent;

        std::mt19937_64 rng(1);
        auto uniform = [&](double a, double b) { return a + (b - a) * static_cast<double>(rng() >> 11) * 0x1.0p-53; };
        auto direction = [&]()
        {
            for (;;)
            {
                const double x = uniform(-1, 1), y = uniform(-1, 1), z = uniform(-1, 1);
                const double n = std::sqrt(x * x + y * y + z * z);
                if (n > 0.1 && n <= 1.0 && x / n > 0.05)
                    return Point3{x / n, y / n, z / n};
            }
        };

        std::ofstream log(log_path);
        log << "trial,bs_x,bs_y,bs_z,user_x,user_y,user_z,tau_consistent,first_consistent,second_consistent,"
               "offending_modules\n";
        int bad = 0, bad_tau = 0, bad_first = 0, bad_second = 0;
        const int trials = 1000;
        for (int t = 0; t < trials; ++t)
        {
            const double near = uniform(1.0, 3.0);
            const double far = near * uniform(10.0, 20.0);
            const Point3 a = direction(), b = direction();
            const Point3 pn{near * a.x, near * a.y, near * a.z}, pf{far * b.x, far * b.y, far * b.z};
            // Even trials: BS close (r_br <= r_ru / 10); odd trials: user close
            const Scene sc = (t % 2 == 0) ? Scene{pn, pf, scene.layout} : Scene{pf, pn, scene.layout};
            const SignConsistencyReport r = sign_consistency_check(cascaded_decomposition(sc, p));
            if (!r.consistent)
            {
                ++bad;
                bad_tau += r.tau_consistent ? 0 : 1;
                bad_first += r.first_layer_consistent ? 0 : 1;
                bad_second += r.second_layer_consistent ? 0 : 1;
                char line[400];
                std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%d,%zu\n", t, sc.bs.x,
                              sc.bs.y, sc.bs.z, sc.user.x, sc.user.y, sc.user.z, r.tau_consistent,
                              r.first_layer_consistent, r.second_layer_consistent, r.offending.size());
                log << line;
            }
        }
        return {default_ok && bad == 0,
                fmt("default scene %s; %d/%d random scenes inconsistent (tau %d, first layer %d, second layer %d), "
                    "logged to %s",
                    default_ok ? "consistent" : "INCONSISTENT", bad, trials, bad_tau, bad_first, bad_second,
                    log_path.c_str())};
    }

    // 10. Piecewise model fidelity
    Outcome model_fidelity(const Scenario &s)
    {
        const Scene scene = scene_of(s);
        const FrequencyGrid g = make_frequency_grid(s.f_c, 0.0, 1);
        auto worst_error = [&](int k)
        {
            const SubsurfacePartition p = make_partition(scene.layout, k, k);
            double worst = 0.0;
            for (Endpoint e : {Endpoint::bs, Endpoint::user})
            {
                const ChannelSet exact = exact_los_channel(scene, g, e, true);
                const ChannelSet pw = piecewise_channel(scene, g, p, e, s.piecewise_options());
                for (std::size_t n = 0; n < exact.elements; ++n)
                    worst = std::max(worst, std::abs(std::arg(pw.at(n, 0) * std::conj(exact.at(n, 0)))));
            }
            return worst;
        };
        const double at_default = worst_error(s.k_y);
        std::string seq;
        bool monotone = true;
        double prev = std::numeric_limits<double>::infinity();
        for (int sub : {50, 25, 10, 5, 2, 1})
        {
            const double e = worst_error(scene.layout.n_y / sub);
            monotone = monotone && e <= prev;
            prev = e;
            seq += fmt("%s s=%d:%.3g", seq.empty() ? "" : ",", sub, e);
        }
        return {at_default <= 0.3 && monotone,
                fmt("worst per-element phase error %.5f rad at s = %d (<= 0.3); %s;%s", at_default,
                    s.partition().s, monotone ? "monotone" : "NOT monotone", seq.c_str())};
    }

    // 11. Determinism of CLI experiments
    Outcome determinism()
    {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / ("nfirs_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        const fs::path scenario = dir / "reduced.scenario";
        {
            std::ofstream f(scenario);
            f << "# default scene with a coarser evaluation plane\npattern.u_points = 36\npattern.v_points = 41\n";
        }
        auto read = [](const fs::path &p)
        {
            std::ifstream in(p, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        int identical = 0, total = 0;
        std::string failed;
        for (const char *cmd : {"gain-profile", "beam-pattern", "td-count-sweep", "delay-range-sweep", "rate-sweep",
                                "export-config"})
        {
            std::string out[2];
            bool ran = true;
            for (int run = 0; run < 2; ++run)
            {
                const fs::path file = dir / (std::string(cmd) + "_" + std::to_string(run) + ".out");
                const std::string command = std::string("\"") + NFIRS_CLI_PATH + "\" " + cmd + " --scenario \"" +
                                            scenario.string() + "\" --out \"" + file.string() + "\" 2>/dev/null";
                ran = ran && std::system(command.c_str()) == 0;
                out[run] = strip_version_line(read(file));
            }
            ++total;
            if (ran && !out[0].empty() && out[0] == out[1])
                ++identical;
            else
                failed += std::string(failed.empty() ? " differing:" : "") + " " + cmd;
        }
        fs::remove_all(dir);
        return {identical == total, fmt("%d/%d CLI experiments produced identical data sections%s", identical, total,
                                        failed.c_str())};
    }
} // namespace

int main(int argc, char **argv)
{
    const std::string log_path = argc > 1 ? argv[1] : "sign_consistency_counterexamples.csv";
    const Scenario s = default_scenario();

    report(1, "exact cancellation identities", [&] { return identities(s); });
    report(2, "beam split of the narrowband design", [&] { return beam_split(s); });
    report(3, "DLDD gain across the band", [&] { return dldd_performance(s); });
    report(4, "TD module count", [&] { return module_count(s); });
    report(5, "delay-range compression", [&] { return compression(s); });
    report(6, "clamped operating point", [&] { return clamped(s); });
    report(7, "rate ratios", [&] { return rate_ratios(s); });
    report(8, "beam-pattern peaks", [&] { return peaks(s); });
    report(9, "sign consistency", [&] { return sign_property(s, log_path); });
    report(10, "piecewise model fidelity", [&] { return model_fidelity(s); });
    report(11, "CLI determinism", [] { return determinism(); });

    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
