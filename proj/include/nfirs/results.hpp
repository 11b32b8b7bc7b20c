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

#ifndef NFIRS_RESULTS_HPP
#define NFIRS_RESULTS_HPP

#include <string>
#include <utility>
#include <vector>

namespace nfirs
{
    // Numeric table produced by an experiment, with the metadata needed to tie
    // it back to its inputs.
    struct ResultTable
    {
        std::string experiment;
        std::string scenario_hash;
        std::string version;
        std::vector<std::pair<std::string, std::string>> notes; // extra header fields
        std::vector<std::string> columns;
        std::vector<std::vector<double>> rows;

        void add_row(std::vector<double> row);
        std::size_t column(const std::string &name) const; // throws std::out_of_range
    };

    // Commented header (`# key: value`, version last) followed by a plain CSV
    // section. Values are printed with 12 significant digits.
    std::string to_csv(const ResultTable &table);

    // JSON object with the same content; values at full double precision.
    std::string to_json(const ResultTable &table);

    // The CSV text with the `# version:` line removed, for comparing runs.
    std::string strip_version_line(const std::string &csv);

    std::string library_version();

} // namespace nfirs

#endif
