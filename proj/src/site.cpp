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

#include "loraplan/site.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "loraplan/geometry.hpp"
#include "loraplan/radio.hpp"

namespace loraplan {

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error([&] {
          std::string msg = "site validation failed";
          for (const auto& v : violations)
              msg += "\n  " + v.to_string();
          return msg;
      }()),
      violations_(std::move(violations))
{
}

CellIndex GridSpec::cell_of(double x, double y) const
{
    return {static_cast<std::int64_t>(std::floor(x / cell_size_m)),
            static_cast<std::int64_t>(std::floor(y / cell_size_m))};
}

std::string_view to_string(ObstructionKind k)
{
    switch (k) {
        case ObstructionKind::building: return "building";
        case ObstructionKind::vegetation: return "vegetation";
    }
    return "?";
}

std::string_view to_string(Material m)
{
    switch (m) {
        case Material::brick: return "brick";
        case Material::concrete: return "concrete";
        case Material::wood: return "wood";
        case Material::glass: return "glass";
    }
    return "?";
}

std::string_view to_string(Environment e)
{
    switch (e) {
        case Environment::open: return "open";
        case Environment::rural: return "rural";
        case Environment::suburban: return "suburban";
        case Environment::urban: return "urban";
    }
    return "?";
}

std::string_view to_string(CodingRate cr)
{
    switch (cr) {
        case CodingRate::cr4_5: return "4/5";
        case CodingRate::cr4_6: return "4/6";
        case CodingRate::cr4_7: return "4/7";
        case CodingRate::cr4_8: return "4/8";
    }
    return "?";
}

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(std::string_view s, const E (&values)[N])
{
    for (E v : values)
        if (to_string(v) == s)
            return v;
    return std::nullopt;
}

} // namespace

std::optional<ObstructionKind> obstruction_kind_from_string(std::string_view s)
{
    static constexpr ObstructionKind all[] = {ObstructionKind::building, ObstructionKind::vegetation};
    return lookup(s, all);
}

std::optional<Material> material_from_string(std::string_view s)
{
    static constexpr Material all[] = {Material::brick, Material::concrete, Material::wood, Material::glass};
    return lookup(s, all);
}

std::optional<Environment> environment_from_string(std::string_view s)
{
    static constexpr Environment all[] = {Environment::open, Environment::rural, Environment::suburban,
                                          Environment::urban};
    return lookup(s, all);
}

std::optional<CodingRate> coding_rate_from_string(std::string_view s)
{
    static constexpr CodingRate all[] = {CodingRate::cr4_5, CodingRate::cr4_6, CodingRate::cr4_7,
                                         CodingRate::cr4_8};
    return lookup(s, all);
}

MaterialLossTable default_material_loss_table()
{
    return {{Material::brick, 8.0}, {Material::concrete, 12.0}, {Material::wood, 4.0}, {Material::glass, 2.0}};
}

TxCurrentTable default_tx_current_table()
{
    return {{2, 24.0}, {5, 25.0}, {8, 30.0}, {11, 38.0}, {14, 45.0}, {17, 90.0}, {20, 120.0}};
}

const Gateway* Site::find_gateway(std::string_view id) const
{
    auto it = std::find_if(gateways.begin(), gateways.end(), [&](const Gateway& g) { return g.id == id; });
    return it == gateways.end() ? nullptr : &*it;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(path.string(), "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw ParseError(path.string(), "read failed");
    return ss.str();
}

namespace {

bool finite(const Point3& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

std::string quoted(std::string_view kind, const std::string& id) { return std::string(kind) + " '" + id + "'"; }

void check_footprint(std::vector<Violation>& out, const std::string& entity, const std::vector<Point3>& footprint)
{
    if (!std::all_of(footprint.begin(), footprint.end(), [](const Point3& p) { return finite(p); })) {
        out.push_back({entity, "footprint coordinates finite"});
        return;
    }
    if (footprint.size() < 3 || std::abs(signed_area(footprint)) <= 0.0) {
        out.push_back({entity, "footprint non-degenerate"});
        return;
    }
    if (!is_simple_polygon(footprint))
        out.push_back({entity, "footprint simple (no self-intersection)"});
}

} // namespace

std::vector<Violation> validate_site(const Site& site)
{
    std::vector<Violation> out;
    const auto& g = site.grid;
    if (!(g.cell_size_m > 0.0) || !std::isfinite(g.cell_size_m))
        out.push_back({"grid", "cell_size_m > 0"});
    if (g.nx < 1)
        out.push_back({"grid", "nx >= 1"});
    if (g.ny < 1)
        out.push_back({"grid", "ny >= 1"});
    if (!(g.node_height_m > 0.0) || !std::isfinite(g.node_height_m))
        out.push_back({"grid", "node_height_m > 0"});

    const auto& c = site.config;
    if (!(c.frequency_hz >= 100e6 && c.frequency_hz <= 6e9))
        out.push_back({"config", "frequency_hz in [100 MHz, 6 GHz]"});
    if (c.bandwidth_hz != 125000.0 && c.bandwidth_hz != 250000.0 && c.bandwidth_hz != 500000.0)
        out.push_back({"config", "bandwidth_hz in {125000, 250000, 500000}"});
    if (!(c.duty_cycle_limit > 0.0 && c.duty_cycle_limit <= 1.0))
        out.push_back({"config", "duty_cycle_limit in (0, 1]"});
    if (!(c.link_margin_db >= 0.0) || !std::isfinite(c.link_margin_db))
        out.push_back({"config", "link_margin_db >= 0"});
    if (!(c.shadowing_sigma_db >= 0.0) || !std::isfinite(c.shadowing_sigma_db))
        out.push_back({"config", "shadowing_sigma_db >= 0"});
    if (!std::isfinite(c.noise_figure_db))
        out.push_back({"config", "noise_figure_db finite"});
    for (const auto& [m, db] : c.material_loss_table)
        if (!(db >= 0.0) || !std::isfinite(db))
            out.push_back({"config", "material_loss_table[" + std::string(to_string(m)) + "] >= 0"});
    if (!(c.floor_loss_db >= 0.0) || !std::isfinite(c.floor_loss_db))
        out.push_back({"config", "floor_loss_db >= 0"});
    if (!(c.vegetation_loss_db_per_m >= 0.0) || !std::isfinite(c.vegetation_loss_db_per_m))
        out.push_back({"config", "vegetation_loss_db_per_m >= 0"});
    if (!(c.supply_voltage_v > 0.0) || !std::isfinite(c.supply_voltage_v))
        out.push_back({"config", "supply_voltage_v > 0"});
    for (const auto& [dbm, ma] : c.tx_current_table)
        if (!(ma > 0.0) || !std::isfinite(ma))
            out.push_back({"config", "tx_current_table[" + std::to_string(dbm) + "] > 0"});
    if (c.tx_current_table.empty() || c.tx_current_table.begin()->first > kMinTxPowerDbm ||
        c.tx_current_table.rbegin()->first < kMaxTxPowerDbm)
        out.push_back({"config", "tx_current_table spans 2..20 dBm"});
    if (c.payload_bytes < 1 || c.payload_bytes > 255)
        out.push_back({"config", "payload_bytes in [1, 255]"});
    if (c.preamble_symbols < 6)
        out.push_back({"config", "preamble_symbols >= 6"});

    if (!(site.node_profile.antenna_height_m > 0.0) || !std::isfinite(site.node_profile.antenna_height_m))
        out.push_back({"node_profile", "antenna_height_m > 0"});
    if (!std::isfinite(site.node_profile.antenna_gain_dbi))
        out.push_back({"node_profile", "antenna_gain_dbi finite"});

    std::set<std::string> gateway_ids;
    for (const auto& gw : site.gateways) {
        const auto entity = quoted("gateway", gw.id);
        if (!gateway_ids.insert(gw.id).second)
            out.push_back({entity, "id unique"});
        if (!finite(gw.position))
            out.push_back({entity, "position finite"});
        else if (!(gw.position.z > 0.0))
            out.push_back({entity, "position.z > 0"});
        if (!std::isfinite(gw.antenna_gain_dbi))
            out.push_back({entity, "antenna_gain_dbi finite"});
    }

    std::set<std::string> obstruction_ids;
    for (const auto& ob : site.obstructions) {
        const auto entity = quoted("obstruction", ob.id);
        if (!obstruction_ids.insert(ob.id).second)
            out.push_back({entity, "id unique"});
        check_footprint(out, entity, ob.footprint);
        if (!(ob.height_m > 0.0) || !std::isfinite(ob.height_m))
            out.push_back({entity, "height_m > 0"});
        if (ob.kind == ObstructionKind::vegetation) {
            if (ob.material)
                out.push_back({entity, "vegetation carries no material"});
            if (ob.floor_count != 0)
                out.push_back({entity, "vegetation floor_count = 0"});
        } else {
            if (!ob.material)
                out.push_back({entity, "building has a material"});
            else if (!c.material_loss_table.contains(*ob.material))
                out.push_back({entity, "material listed in material_loss_table"});
            if (ob.floor_count < 0)
                out.push_back({entity, "floor_count >= 0"});
        }
    }

    std::set<std::string> region_ids;
    for (const auto& r : site.regions) {
        const auto entity = quoted("region", r.id);
        if (!region_ids.insert(r.id).second)
            out.push_back({entity, "id unique"});
        check_footprint(out, entity, r.footprint);
    }
    return out;
}

void require_valid(const Site& site)
{
    auto violations = validate_site(site);
    if (!violations.empty())
        throw ValidationError(std::move(violations));
}

} // namespace loraplan
