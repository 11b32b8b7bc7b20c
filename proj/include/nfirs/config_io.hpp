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

#ifndef NFIRS_CONFIG_IO_HPP
#define NFIRS_CONFIG_IO_HPP

#include "nfirs/beamforming.hpp"

#include <string>

namespace nfirs
{
    // Serializes a beamformer configuration (phases, delay tables, switch and
    // route signs, warnings). The layout is documented in docs/beamformer_schema.md.
    std::string beamformer_to_json(const BeamformerConfig &config);

    // Inverse of beamformer_to_json. Derived fields (module_count,
    // required_delay_range_s) are ignored. Throws std::invalid_argument on
    // malformed input or inconsistent tables.
    BeamformerConfig beamformer_from_json(const std::string &text);

} // namespace nfirs

#endif
