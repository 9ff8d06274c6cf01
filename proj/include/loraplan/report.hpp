// SPDX-License-Identifier: Apache-2.0
//
// loraplan - LoRaWAN site planning toolkit
// Copyright (C) 2026 The loraplan authors
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

#ifndef LORAPLAN_REPORT_HPP
#define LORAPLAN_REPORT_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "loraplan/mobility.hpp"
#include "loraplan/planner.hpp"

namespace loraplan {

inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr std::string_view kCoverageCsvHeader =
    "i,j,x_m,y_m,gateway,base_db,wall_db,floor_db,veg_db,diff_db,shadow_db,total_db,sf,txp_dbm,rssi_dbm,sens_dbm,"
    "covered";

inline constexpr std::string_view kProfileCsvHeader = "t,x,y,speed,total_db,sf,txp,rssi,connected";

// Heatmap RSSI window; values outside clamp to the ends of the gray scale.
inline constexpr double kHeatmapFloorDbm = -140.0;
inline constexpr double kHeatmapCeilDbm = -60.0;

/// Shortest decimal form that parses back to the identical double. Locale-independent.
std::string format_number(double value);

std::string sha256_hex(std::string_view data);

/// Gray level for a covered cell's RSSI.
int rssi_to_gray(double rssi_dbm);

struct RunInfo
{
    std::string site_sha256;
    std::uint64_t seed = 0;
    Objective objective = Objective::min_airtime;
};

std::string coverage_csv(const CoverageGrid& grid);

/// Plain (P2) PGM, north up: the first raster row is j = ny - 1. Uncovered cells are 0.
std::string rssi_pgm(const CoverageGrid& grid);

std::string coverage_summary_json(const CoverageGrid& grid, const RunInfo& run);

std::string profile_csv(const PathProfile& profile);

struct MobilityRunInfo
{
    RunInfo run;
    std::string trajectory_sha256;
    MobilityModel model;
};

std::string mobility_summary_json(const MobilityReport& report, const MobilityRunInfo& info);

std::string link_report_json(const std::string& gateway_id, const RadioConfig& config,
                             const PathLossBreakdown& breakdown, const LinkReport& link);

} // namespace loraplan

#endif
