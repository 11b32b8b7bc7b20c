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

#include "nfirs/results.hpp"

#include "json.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#ifndef NFIRS_VERSION
#define NFIRS_VERSION "0.0.0"
#endif

namespace nfirs
{
    std::string library_version() { return NFIRS_VERSION; }

    void ResultTable::add_row(std::vector<double> row)
    {
        if (row.size() != columns.size())
            throw std::invalid_argument("ResultTable::add_row: expected " + std::to_string(columns.size()) +
                                        " values, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }

    std::size_t ResultTable::column(const std::string &name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name)
                return i;
        throw std::out_of_range("ResultTable: no column '" + name + "'");
    }

    std::string to_csv(const ResultTable &table)
    {
        std::ostringstream out;
        out << "# experiment: " << table.experiment << "\n";
        out << "# scenario_hash: " << table.scenario_hash << "\n";
        for (const auto &[k, v] : table.notes)
            out << "# " << k << ": " << v << "\n";
        out << "# version: " << table.version << "\n";
        for (std::size_t i = 0; i < table.columns.size(); ++i)
            out << (i ? "," : "") << table.columns[i];
        out << "\n";
        char buf[40];
        for (const auto &row : table.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
            {
                std::snprintf(buf, sizeof buf, "%.12g", row[i]);
                out << (i ? "," : "") << buf;
            }
            out << "\n";
        }
        return out.str();
    }

    std::string to_json(const ResultTable &table)
    {
        nlohmann::ordered_json j;
        j["experiment"] = table.experiment;
        j["scenario_hash"] = table.scenario_hash;
        j["version"] = table.version;
        nlohmann::ordered_json notes = nlohmann::ordered_json::object();
        for (const auto &[k, v] : table.notes)
            notes[k] = v;
        j["notes"] = notes;
        j["columns"] = table.columns;
        j["rows"] = table.rows;
        return j.dump(2) + "\n";
    }

    std::string strip_version_line(const std::string &csv)
    {
        std::istringstream in(csv);
        std::string line, out;
        while (std::getline(in, line))
            if (line.rfind("# version:", 0) != 0)
                out += line + "\n";
        return out;
    }

} // namespace nfirs
