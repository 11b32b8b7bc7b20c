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

#include "nfirs/scenario.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace nfirs
{
    ScenarioError::ScenarioError(std::string source, int line, std::string key, const std::string &what)
        : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                             (key.empty() ? std::string() : ": " + key) + ": " + what),
          line_(line), key_(std::move(key))
    {
    }

    namespace
    {
        constexpr double kGHz = 1e9;
        constexpr double kPs = 1e-12;
        constexpr double kMm = 1e-3;

        std::string_view trim(std::string_view s)
        {
            const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
            while (!s.empty() && ws(s.front()))
                s.remove_prefix(1);
            while (!s.empty() && ws(s.back()))
                s.remove_suffix(1);
            return s;
        }

        std::vector<std::string_view> split(std::string_view s, char sep)
        {
            std::vector<std::string_view> out;
            std::size_t start = 0;
            for (;;)
            {
                const std::size_t pos = s.find(sep, start);
                out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
                if (pos == std::string_view::npos)
                    break;
                start = pos + 1;
            }
            return out;
        }

        std::string fmt17(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        // Context of one `key = value` line; every conversion error names both.
        struct Field
        {
            std::string_view source;
            int line;
            std::string key;
            std::string_view value;

            [[noreturn]] void fail(const std::string &what) const
            {
                throw ScenarioError(std::string(source), line, key, what);
            }

            double number(std::string_view text) const
            {
                double v = 0.0;
                const auto *first = text.data();
                const auto *last = text.data() + text.size();
                if (!text.empty() && *first == '+')
                    ++first;
                const auto [ptr, ec] = std::from_chars(first, last, v);
                if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
                    fail("expected a finite number, got '" + std::string(text) + "'");
                return v;
            }
            double number() const { return number(value); }

            int integer() const
            {
                int v = 0;
                const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
                if (value.empty() || ec != std::errc() || ptr != value.data() + value.size())
                    fail("expected an integer, got '" + std::string(value) + "'");
                return v;
            }

            bool boolean() const
            {
                if (value == "true")
                    return true;
                if (value == "false")
                    return false;
                fail("expected true or false, got '" + std::string(value) + "'");
            }

            // Comma-separated numbers and/or inclusive ranges start:step:stop.
            std::vector<double> number_list() const
            {
                std::vector<double> out;
                for (std::string_view item : split(value, ','))
                {
                    if (item.empty())
                        fail("empty list entry");
                    const auto parts = split(item, ':');
                    if (parts.size() == 1)
                    {
                        out.push_back(number(item));
                        continue;
                    }
                    if (parts.size() != 3)
                        fail("range must have the form start:step:stop, got '" + std::string(item) + "'");
                    const double a = number(parts[0]), step = number(parts[1]), b = number(parts[2]);
                    if (!(step > 0.0) || b < a)
                        fail("range needs step > 0 and stop >= start, got '" + std::string(item) + "'");
                    const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
                    if (count > 1000000)
                        fail("range has too many points");
                    for (long i = 0; i < count; ++i)
                        out.push_back(a + step * static_cast<double>(i));
                }
                return out;
            }
        };

        using Setter = std::function<void(Scenario &, const Field &)>;

        const std::map<std::string, Setter, std::less<>> &setters()
        {
            static const std::map<std::string, Setter, std::less<>> table = {
                {"bs.x_m", [](Scenario &s, const Field &f) { s.bs.x = f.number(); }},
                {"bs.y_m", [](Scenario &s, const Field &f) { s.bs.y = f.number(); }},
                {"bs.z_m", [](Scenario &s, const Field &f) { s.bs.z = f.number(); }},
                {"user.x_m", [](Scenario &s, const Field &f) { s.user.x = f.number(); }},
                {"user.y_m", [](Scenario &s, const Field &f) { s.user.y = f.number(); }},
                {"user.z_m", [](Scenario &s, const Field &f) { s.user.z = f.number(); }},
                {"irs.n_y", [](Scenario &s, const Field &f) { s.n_y = f.integer(); }},
                {"irs.n_z", [](Scenario &s, const Field &f) { s.n_z = f.integer(); }},
                {"irs.spacing_mm",
                 [](Scenario &s, const Field &f)
                 {
                     if (f.value == "half-wavelength")
                         s.spacing.reset();
                     else
                         s.spacing = f.number() * kMm;
                 }},
                {"partition.k_y", [](Scenario &s, const Field &f) { s.k_y = f.integer(); }},
                {"partition.k_z", [](Scenario &s, const Field &f) { s.k_z = f.integer(); }},
                {"grid.f_c_ghz", [](Scenario &s, const Field &f) { s.f_c = f.number() * kGHz; }},
                {"grid.bandwidth_ghz", [](Scenario &s, const Field &f) { s.bandwidth = f.number() * kGHz; }},
                {"grid.subcarriers", [](Scenario &s, const Field &f) { s.subcarriers = f.integer(); }},
                {"channel.printed_range_factor",
                 [](Scenario &s, const Field &f) { s.printed_range_factor = f.boolean(); }},
                {"td_sweep.partitions",
                 [](Scenario &s, const Field &f)
                 {
                     s.td_sweep_partitions.clear();
                     for (std::string_view item : split(f.value, ','))
                     {
                         const auto pos = item.find('x');
                         if (pos == std::string_view::npos)
                             f.fail("partition must have the form KyxKz, got '" + std::string(item) + "'");
                         Field sub = f;
                         sub.value = trim(item.substr(0, pos));
                         const int ky = sub.integer();
                         sub.value = trim(item.substr(pos + 1));
                         const int kz = sub.integer();
                         s.td_sweep_partitions.push_back({ky, kz, 0}); // s resolved in validate()
                     }
                 }},
                {"delay_sweep.t_req_ps",
                 [](Scenario &s, const Field &f)
                 {
                     s.t_req_values = f.number_list();
                     for (double &t : s.t_req_values)
                         t *= kPs;
                 }},
                {"rate.power_dbm", [](Scenario &s, const Field &f) { s.power_dbm = f.number_list(); }},
                {"rate.noise_dbm_per_hz", [](Scenario &s, const Field &f) { s.noise_dbm_per_hz = f.number(); }},
                {"pattern.normal",
                 [](Scenario &s, const Field &f)
                 {
                     if (f.value == "x")
                         s.pattern_normal = Axis::x;
                     else if (f.value == "y")
                         s.pattern_normal = Axis::y;
                     else if (f.value == "z")
                         s.pattern_normal = Axis::z;
                     else
                         f.fail("expected x, y or z");
                 }},
                {"pattern.level_m",
                 [](Scenario &s, const Field &f)
                 {
                     if (f.value == "user")
                         s.pattern_level.reset();
                     else
                         s.pattern_level = f.number();
                 }},
                {"pattern.u_min_m", [](Scenario &s, const Field &f) { s.pattern_u_min = f.number(); }},
                {"pattern.u_max_m", [](Scenario &s, const Field &f) { s.pattern_u_max = f.number(); }},
                {"pattern.v_min_m", [](Scenario &s, const Field &f) { s.pattern_v_min = f.number(); }},
                {"pattern.v_max_m", [](Scenario &s, const Field &f) { s.pattern_v_max = f.number(); }},
                {"pattern.u_points", [](Scenario &s, const Field &f) { s.pattern_u_points = f.integer(); }},
                {"pattern.v_points", [](Scenario &s, const Field &f) { s.pattern_v_points = f.integer(); }},
                {"pattern.frequencies",
                 [](Scenario &s, const Field &f)
                 {
                     s.pattern_frequencies.clear();
                     for (std::string_view item : split(f.value, ','))
                     {
                         if (item != "f1" && item != "fc" && item != "fM")
                             f.number(item); // must then be a frequency in GHz
                         s.pattern_frequencies.emplace_back(item);
                     }
                 }},
            };
            return table;
        }

        double axis_coordinate(const Point3 &p, Axis a)
        {
            return a == Axis::x ? p.x : (a == Axis::y ? p.y : p.z);
        }
    } // namespace

    double Scenario::element_spacing() const
    {
        return spacing ? *spacing : 0.5 * kSpeedOfLight / f_c;
    }

    IrsLayout Scenario::layout() const { return {n_y, n_z, element_spacing()}; }

    Scene Scenario::scene() const { return {bs, user, layout()}; }

    FrequencyGrid Scenario::grid() const { return make_frequency_grid(f_c, bandwidth, subcarriers); }

    SubsurfacePartition Scenario::partition() const { return make_partition(layout(), k_y, k_z); }

    PlaneSpec Scenario::plane() const
    {
        PlaneSpec p;
        p.normal = pattern_normal;
        p.level = pattern_level ? *pattern_level : axis_coordinate(user, pattern_normal);
        p.u_min = pattern_u_min;
        p.u_max = pattern_u_max;
        p.v_min = pattern_v_min;
        p.v_max = pattern_v_max;
        p.u_points = pattern_u_points;
        p.v_points = pattern_v_points;
        return p;
    }

    std::vector<double> Scenario::pattern_frequency_values() const
    {
        const FrequencyGrid g = grid();
        std::vector<double> out;
        for (const std::string &token : pattern_frequencies)
        {
            if (token == "f1")
                out.push_back(g.frequencies.front());
            else if (token == "fc")
                out.push_back(g.f_c);
            else if (token == "fM")
                out.push_back(g.frequencies.back());
            else
                out.push_back(std::stod(token) * kGHz);
        }
        return out;
    }

    double Scenario::noise_density() const { return dbm_to_watts(noise_dbm_per_hz); }

    std::string Scenario::canonical() const
    {
        std::map<std::string, std::string> kv;
        kv["bs.x_m"] = fmt17(bs.x);
        kv["bs.y_m"] = fmt17(bs.y);
        kv["bs.z_m"] = fmt17(bs.z);
        kv["user.x_m"] = fmt17(user.x);
        kv["user.y_m"] = fmt17(user.y);
        kv["user.z_m"] = fmt17(user.z);
        kv["irs.n_y"] = std::to_string(n_y);
        kv["irs.n_z"] = std::to_string(n_z);
        kv["irs.spacing_m"] = fmt17(element_spacing());
        kv["partition.k_y"] = std::to_string(k_y);
        kv["partition.k_z"] = std::to_string(k_z);
        kv["grid.f_c_hz"] = fmt17(f_c);
        kv["grid.bandwidth_hz"] = fmt17(bandwidth);
        kv["grid.subcarriers"] = std::to_string(subcarriers);
        kv["channel.printed_range_factor"] = printed_range_factor ? "true" : "false";

        std::string parts;
        for (const auto &p : td_sweep_partitions)
            parts += (parts.empty() ? "" : ",") + std::to_string(p.k_y) + "x" + std::to_string(p.k_z);
        kv["td_sweep.partitions"] = parts;
        const auto join = [](const std::vector<double> &v)
        {
            std::string s;
            for (double x : v)
                s += (s.empty() ? "" : ",") + fmt17(x);
            return s;
        };
        kv["delay_sweep.t_req_s"] = join(t_req_values);
        kv["rate.power_dbm"] = join(power_dbm);
        kv["rate.noise_dbm_per_hz"] = fmt17(noise_dbm_per_hz);

        const PlaneSpec p = plane();
        kv["pattern.normal"] = pattern_normal == Axis::x ? "x" : (pattern_normal == Axis::y ? "y" : "z");
        kv["pattern.level_m"] = fmt17(p.level);
        kv["pattern.u_min_m"] = fmt17(p.u_min);
        kv["pattern.u_max_m"] = fmt17(p.u_max);
        kv["pattern.v_min_m"] = fmt17(p.v_min);
        kv["pattern.v_max_m"] = fmt17(p.v_max);
        kv["pattern.u_points"] = std::to_string(p.u_points);
        kv["pattern.v_points"] = std::to_string(p.v_points);
        kv["pattern.frequencies_hz"] = join(pattern_frequency_values());

        std::string out;
        for (const auto &[k, v] : kv)
            out += k + " = " + v + "\n";
        return out;
    }

    std::string Scenario::hash() const
    {
        const std::string text = canonical();
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
            throw std::runtime_error("Scenario::hash: SHA-256 failed");
        static constexpr char hex[] = "0123456789abcdef";
        std::string out;
        for (unsigned int i = 0; i < len; ++i)
        {
            out += hex[digest[i] >> 4];
            out += hex[digest[i] & 0xF];
        }
        return out;
    }

    std::vector<double> default_t_req_values()
    {
        std::vector<double> v;
        for (int ps = 0; ps <= 20; ++ps)
            v.push_back(ps * kPs);
        return v;
    }

    std::vector<double> default_power_dbm()
    {
        std::vector<double> v;
        for (int dbm = 40; dbm <= 90; dbm += 5)
            v.push_back(dbm);
        return v;
    }

    std::vector<SubsurfacePartition> default_td_sweep_partitions(const IrsLayout &layout)
    {
        std::vector<SubsurfacePartition> out;
        for (int k : {1, 2, 4, 5, 10, 20, 25, 50})
            if (layout.n_y % k == 0 && layout.n_z % k == 0 && layout.n_y / k == layout.n_z / k)
                out.push_back({k, k, layout.n_y / k});
        return out;
    }

    void validate(Scenario &s, std::string_view source)
    {
        const std::string src(source);
        const auto check = [&](const char *key, auto &&fn)
        {
            try
            {
                fn();
            }
            catch (const ScenarioError &)
            {
                throw;
            }
            catch (const std::exception &e)
            {
                throw ScenarioError(src, 0, key, e.what());
            }
        };

        if (!s.bs.is_finite() || !s.user.is_finite())
            throw ScenarioError(src, 0, "bs/user", "coordinates must be finite");
        if (s.n_y < 1 || s.n_z < 1)
            throw ScenarioError(src, 0, "irs.n_y/irs.n_z", "element counts must be >= 1");
        if (s.spacing && !(*s.spacing > 0.0))
            throw ScenarioError(src, 0, "irs.spacing_mm", "element spacing must be positive");
        check("grid", [&] { s.grid(); });
        check("partition.k_y/partition.k_z", [&] { s.partition(); });

        const IrsLayout layout = s.layout();
        if (s.td_sweep_partitions.empty())
            s.td_sweep_partitions = default_td_sweep_partitions(layout);
        else
            for (auto &p : s.td_sweep_partitions)
                check("td_sweep.partitions", [&] { p = make_partition(layout, p.k_y, p.k_z); });

        if (s.t_req_values.empty())
            s.t_req_values = default_t_req_values();
        for (double t : s.t_req_values)
            if (t < 0.0)
                throw ScenarioError(src, 0, "delay_sweep.t_req_ps", "delay ranges must be >= 0");
        if (s.power_dbm.empty())
            s.power_dbm = default_power_dbm();
        if (!std::isfinite(s.noise_dbm_per_hz))
            throw ScenarioError(src, 0, "rate.noise_dbm_per_hz", "must be finite");

        check("pattern", [&] { s.plane().validate(layout); });
        if (s.pattern_frequencies.empty())
            throw ScenarioError(src, 0, "pattern.frequencies", "at least one frequency is required");
        check("pattern.frequencies",
              [&]
              {
                  for (double f : s.pattern_frequency_values())
                      if (!(f > 0.0))
                          throw std::invalid_argument("frequencies must be positive");
              });

        check("bs", [&] { element_distances(layout, s.bs); });
        check("user", [&] { element_distances(layout, s.user); });

        s.warnings = s.scene().warnings();
        const double rf = fraunhofer_distance(layout, kSpeedOfLight / s.f_c);
        const Point3 origin{};
        if (distance(s.bs, origin) >= rf && distance(s.user, origin) >= rf)
            s.warnings.emplace_back("both endpoints are beyond the Fraunhofer distance; the scene is far field");
    }

    Scenario default_scenario()
    {
        Scenario s;
        validate(s, "<defaults>");
        return s;
    }

    Scenario parse_scenario(std::string_view text, std::string_view source)
    {
        Scenario s;
        std::set<std::string, std::less<>> seen;
        int line_no = 0;
        std::size_t start = 0;
        while (start <= text.size())
        {
            const std::size_t end = std::min(text.find('\n', start), text.size());
            std::string_view line = text.substr(start, end - start);
            start = end + 1;
            ++line_no;

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;

            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ScenarioError(std::string(source), line_no, "", "expected 'key = value'");
            const std::string key(trim(line.substr(0, eq)));
            const std::string_view value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ScenarioError(std::string(source), line_no, "", "missing key");

            const auto it = setters().find(key);
            if (it == setters().end())
                throw ScenarioError(std::string(source), line_no, key, "unknown key");
            if (!seen.insert(key).second)
                throw ScenarioError(std::string(source), line_no, key, "duplicate key");
            if (value.empty())
                throw ScenarioError(std::string(source), line_no, key, "missing value");
            it->second(s, Field{source, line_no, key, value});
        }
        validate(s, source);
        return s;
    }

    Scenario load_scenario(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ScenarioError(path.string(), 0, "", "cannot open file");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_scenario(buf.str(), path.string());
    }

} // namespace nfirs
