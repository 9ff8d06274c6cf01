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

#ifndef LORAPLAN_PLANNER_HPP
#define LORAPLAN_PLANNER_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loraplan/propagation.hpp"
#include "loraplan/radio.hpp"
#include "loraplan/site.hpp"

namespace loraplan {

enum class Objective {
    min_airtime, // lowest SF, then lowest TX power
    min_energy,  // lowest energy per transmission; ties to lower SF, then lower power
};

std::string_view to_string(Objective o);
std::optional<Objective> objective_from_string(std::string_view s);

/// True when `a` is strictly preferred to `b` under the objective.
bool prefers(const RadioConfig& a, const RadioConfig& b, Objective objective, const SiteConfig& config);

/// Best (SF, TX power) whose RSSI clears sensitivity + margin, or nullopt if none does.
/// `extra_margin_db` is added on top of the site link margin.
std::optional<RadioConfig> select_config(double path_loss_db, double g_s_dbi, double g_r_dbi,
                                         const SiteConfig& config, Objective objective,
                                         double extra_margin_db = 0.0);

struct CellPlan
{
    CellIndex cell;
    std::optional<std::string> best_gateway;
    std::optional<PathLossBreakdown> breakdown; // absent only when the site has no gateways
    std::optional<RadioConfig> config;
    std::optional<LinkReport> link;
    bool covered = false;

    bool operator==(const CellPlan&) const = default;
};

struct CoverageSummary
{
    std::size_t total_cells = 0;
    std::size_t covered_cells = 0;
    double coverage_fraction = 0.0;
    std::map<int, std::size_t> sf_histogram;
    std::map<int, std::size_t> txpower_histogram;
    std::optional<double> mean_energy_mj; // over covered cells

    bool operator==(const CoverageSummary&) const = default;
};

struct CoverageGrid
{
    GridSpec grid;
    std::vector<CellPlan> cells; // row-major: index = j * nx + i
    CoverageSummary summary;

    const CellPlan& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * grid.nx + i]; }

    bool operator==(const CoverageGrid&) const = default;
};

struct BestLink
{
    const Gateway* gateway = nullptr;
    PathLossBreakdown breakdown;
};

/// Minimum-loss gateway for a node at `node`; ties go to the smaller gateway id.
std::optional<BestLink> best_gateway(const Point3& node, const Site& site, double mobility_penalty_db,
                                     CellIndex cell);

CellPlan plan_cell(CellIndex cell, const Site& site, Objective objective);

CoverageSummary summarize(std::span<const CellPlan> cells, const SiteConfig& config);

/// Plans every cell. `threads` = 0 uses the hardware concurrency.
/// Throws ValidationError for an invalid site.
CoverageGrid plan_site(const Site& site, Objective objective, unsigned threads = 0);

} // namespace loraplan

#endif
