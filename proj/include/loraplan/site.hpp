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

#ifndef LORAPLAN_SITE_HPP
#define LORAPLAN_SITE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loraplan/error.hpp"

namespace loraplan {

// Local site frame: x east, y north, z up, meters. Ground is flat at z = 0.
struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Point3&) const = default;
};

struct CellIndex
{
    std::int64_t i = 0;
    std::int64_t j = 0;

    bool operator==(const CellIndex&) const = default;
};

struct GridSpec
{
    double cell_size_m = 0.0;
    int nx = 0;
    int ny = 0;
    double node_height_m = 1.5;

    std::size_t cell_count() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }

    /// Cell center at the planned node height.
    Point3 cell_center(CellIndex c) const
    {
        return {(static_cast<double>(c.i) + 0.5) * cell_size_m, (static_cast<double>(c.j) + 0.5) * cell_size_m,
                node_height_m};
    }

    /// Cell containing (x, y). May lie outside [0,nx) x [0,ny).
    CellIndex cell_of(double x, double y) const;

    bool operator==(const GridSpec&) const = default;
};

enum class ObstructionKind { building, vegetation };
enum class Material { brick, concrete, wood, glass };
enum class Environment { open, rural, suburban, urban };

/// LoRa coding rate 4/N; the enumerator value is the denominator N.
enum class CodingRate { cr4_5 = 5, cr4_6 = 6, cr4_7 = 7, cr4_8 = 8 };

constexpr int denominator(CodingRate cr) { return static_cast<int>(cr); }

std::string_view to_string(ObstructionKind k);
std::string_view to_string(Material m);
std::string_view to_string(Environment e);
std::string_view to_string(CodingRate cr);

std::optional<ObstructionKind> obstruction_kind_from_string(std::string_view s);
std::optional<Material> material_from_string(std::string_view s);
std::optional<Environment> environment_from_string(std::string_view s);
std::optional<CodingRate> coding_rate_from_string(std::string_view s);

struct Obstruction
{
    std::string id;
    ObstructionKind kind = ObstructionKind::building;
    std::vector<Point3> footprint; // z ignored
    double height_m = 0.0;
    std::optional<Material> material; // buildings only
    int floor_count = 0;              // buildings only; floor k sits at k * height_m / (floor_count + 1)

    bool operator==(const Obstruction&) const = default;
};

struct Gateway
{
    std::string id;
    Point3 position; // z is antenna height above ground
    double antenna_gain_dbi = 0.0;

    bool operator==(const Gateway&) const = default;
};

struct NodeProfile
{
    double antenna_gain_dbi = 0.0;
    double antenna_height_m = 1.5;

    bool operator==(const NodeProfile&) const = default;
};

/// Named area used to break down mobility energy totals.
struct Region
{
    std::string id;
    std::vector<Point3> footprint;

    bool operator==(const Region&) const = default;
};

using MaterialLossTable = std::map<Material, double>;
/// TX supply current anchors, dBm -> mA. Integer powers between anchors interpolate linearly.
using TxCurrentTable = std::map<int, double>;

MaterialLossTable default_material_loss_table();
TxCurrentTable default_tx_current_table();

struct SiteConfig
{
    double frequency_hz = 865.5e6;
    double bandwidth_hz = 125000.0;
    CodingRate coding_rate = CodingRate::cr4_5;
    Environment environment = Environment::open;
    double duty_cycle_limit = 0.01;
    double link_margin_db = 3.0;
    double shadowing_sigma_db = 0.0;
    std::uint64_t rng_seed = 0;
    double noise_figure_db = 6.0;
    MaterialLossTable material_loss_table = default_material_loss_table();
    double floor_loss_db = 15.0;
    double vegetation_loss_db_per_m = 0.5;
    double supply_voltage_v = 3.3;
    TxCurrentTable tx_current_table = default_tx_current_table();
    // Uplink frame used for airtime and energy accounting.
    int payload_bytes = 20;
    int preamble_symbols = 8;

    bool operator==(const SiteConfig&) const = default;
};

struct Site
{
    GridSpec grid;
    SiteConfig config;
    NodeProfile node_profile;
    std::vector<Gateway> gateways;
    std::vector<Obstruction> obstructions;
    std::vector<Region> regions;

    const Gateway* find_gateway(std::string_view id) const;

    bool operator==(const Site&) const = default;
};

/// Parses a site document. Throws ParseError on syntax errors, wrong types and unknown keys.
/// Semantic checks are left to validate_site().
Site parse_site_text(std::string_view text);
Site parse_site(const std::filesystem::path& path);

/// Inverse of parse_site_text(); every field is written explicitly.
std::string serialize_site(const Site& site);

/// Empty iff every site invariant holds.
std::vector<Violation> validate_site(const Site& site);

/// Throws ValidationError when validate_site() reports anything.
void require_valid(const Site& site);

std::string read_text_file(const std::filesystem::path& path);

} // namespace loraplan

#endif
