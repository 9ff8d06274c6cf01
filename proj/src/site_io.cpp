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

#include <charconv>

#include "json_reader.hpp"
#include "loraplan/site.hpp"

namespace loraplan {

namespace {

using nlohmann::json;
using detail::ObjectReader;
using detail::location_of;
using detail::array_at;

int to_int(long long v, const std::string& path)
{
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ParseError(path, "integer out of range");
    return static_cast<int>(v);
}

Point3 parse_point(const json& j, const std::string& path, bool z_required)
{
    ObjectReader r(j, path);
    Point3 p;
    p.x = r.number("x");
    p.y = r.number("y");
    p.z = z_required ? r.number("z") : r.number_or("z", 0.0);
    r.finish();
    return p;
}

std::vector<Point3> parse_polygon(const json& j, const std::string& path)
{
    std::vector<Point3> out;
    for (std::size_t k = 0; k < array_at(j, path).size(); ++k)
        out.push_back(parse_point(j[k], path + "/" + std::to_string(k), false));
    return out;
}

GridSpec parse_grid(const json& j, double fallback_node_height)
{
    ObjectReader r(j, "/grid");
    GridSpec g;
    g.cell_size_m = r.number("cell_size_m");
    g.nx = to_int(r.integer("nx"), "/grid/nx");
    g.ny = to_int(r.integer("ny"), "/grid/ny");
    g.node_height_m = r.number_or("node_height_m", fallback_node_height);
    r.finish();
    return g;
}

SiteConfig parse_config(const json& j)
{
    ObjectReader r(j, "/config");
    SiteConfig c;
    c.frequency_hz = r.number_or("frequency_hz", c.frequency_hz);
    c.bandwidth_hz = r.number_or("bandwidth_hz", c.bandwidth_hz);
    if (const json* v = r.find("coding_rate")) {
        auto s = ObjectReader::as_string(*v, r.child("coding_rate"));
        auto cr = coding_rate_from_string(s);
        if (!cr)
            throw ParseError(r.child("coding_rate"), "expected one of 4/5, 4/6, 4/7, 4/8");
        c.coding_rate = *cr;
    }
    if (const json* v = r.find("environment")) {
        auto s = ObjectReader::as_string(*v, r.child("environment"));
        auto env = environment_from_string(s);
        if (!env)
            throw ParseError(r.child("environment"), "expected one of open, rural, suburban, urban");
        c.environment = *env;
    }
    c.duty_cycle_limit = r.number_or("duty_cycle_limit", c.duty_cycle_limit);
    c.link_margin_db = r.number_or("link_margin_db", c.link_margin_db);
    c.shadowing_sigma_db = r.number_or("shadowing_sigma_db", c.shadowing_sigma_db);
    if (const json* v = r.find("rng_seed")) {
        if (!v->is_number_unsigned())
            throw ParseError(r.child("rng_seed"), "expected a non-negative 64-bit integer");
        c.rng_seed = v->get<std::uint64_t>();
    }
    c.noise_figure_db = r.number_or("noise_figure_db", c.noise_figure_db);
    if (const json* v = r.find("material_loss_table")) {
        const auto path = r.child("material_loss_table");
        ObjectReader t(*v, path);
        MaterialLossTable table;
        for (const auto& [key, value] : v->items()) {
            auto m = material_from_string(key);
            if (!m)
                throw ParseError(path + "/" + key, "unknown material");
            table[*m] = t.number(key);
        }
        c.material_loss_table = std::move(table);
    }
    c.floor_loss_db = r.number_or("floor_loss_db", c.floor_loss_db);
    c.vegetation_loss_db_per_m = r.number_or("vegetation_loss_db_per_m", c.vegetation_loss_db_per_m);
    c.supply_voltage_v = r.number_or("supply_voltage_v", c.supply_voltage_v);
    if (const json* v = r.find("tx_current_table")) {
        const auto path = r.child("tx_current_table");
        ObjectReader t(*v, path);
        TxCurrentTable table;
        for (const auto& [key, value] : v->items()) {
            int dbm = 0;
            auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), dbm);
            if (ec != std::errc{} || end != key.data() + key.size())
                throw ParseError(path + "/" + key, "key must be an integer TX power in dBm");
            table[dbm] = t.number(key);
        }
        c.tx_current_table = std::move(table);
    }
    c.payload_bytes = to_int(r.integer_or("payload_bytes", c.payload_bytes), r.child("payload_bytes"));
    c.preamble_symbols = to_int(r.integer_or("preamble_symbols", c.preamble_symbols), r.child("preamble_symbols"));
    r.finish();
    return c;
}

NodeProfile parse_node_profile(const json& j)
{
    ObjectReader r(j, "/node_profile");
    NodeProfile n;
    n.antenna_gain_dbi = r.number_or("antenna_gain_dbi", n.antenna_gain_dbi);
    n.antenna_height_m = r.number_or("antenna_height_m", n.antenna_height_m);
    r.finish();
    return n;
}

Gateway parse_gateway(const json& j, const std::string& path)
{
    ObjectReader r(j, path);
    Gateway g;
    g.id = r.string("id");
    g.position = parse_point(r.get("position"), r.child("position"), true);
    g.antenna_gain_dbi = r.number_or("antenna_gain_dbi", 0.0);
    r.finish();
    return g;
}

Obstruction parse_obstruction(const json& j, const std::string& path)
{
    ObjectReader r(j, path);
    Obstruction o;
    o.id = r.string("id");
    auto kind = obstruction_kind_from_string(r.string("kind"));
    if (!kind)
        throw ParseError(r.child("kind"), "expected building or vegetation");
    o.kind = *kind;
    o.footprint = parse_polygon(r.get("footprint"), r.child("footprint"));
    o.height_m = r.number("height_m");
    if (const json* v = r.find("material")) {
        auto m = material_from_string(ObjectReader::as_string(*v, r.child("material")));
        if (!m)
            throw ParseError(r.child("material"), "expected one of brick, concrete, wood, glass");
        o.material = *m;
    }
    o.floor_count = to_int(r.integer_or("floor_count", 0), r.child("floor_count"));
    r.finish();
    return o;
}

Region parse_region(const json& j, const std::string& path)
{
    ObjectReader r(j, path);
    Region g;
    g.id = r.string("id");
    g.footprint = parse_polygon(r.get("footprint"), r.child("footprint"));
    r.finish();
    return g;
}

json point_json(const Point3& p)
{
    nlohmann::ordered_json j;
    j["x"] = p.x;
    j["y"] = p.y;
    j["z"] = p.z;
    return j;
}

json polygon_json(const std::vector<Point3>& poly)
{
    json arr = json::array();
    for (const auto& p : poly)
        arr.push_back(point_json(p));
    return arr;
}

} // namespace

Site parse_site_text(std::string_view text)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(location_of(text, e.byte), "malformed document");
    }

    ObjectReader r(root, "");
    Site site;
    if (const json* v = r.find("node_profile"))
        site.node_profile = parse_node_profile(*v);
    site.grid = parse_grid(r.get("grid"), site.node_profile.antenna_height_m);
    if (const json* v = r.find("config"))
        site.config = parse_config(*v);

    const json& gateways = array_at(r.get("gateways"), "/gateways");
    for (std::size_t k = 0; k < gateways.size(); ++k)
        site.gateways.push_back(parse_gateway(gateways[k], "/gateways/" + std::to_string(k)));

    if (const json* v = r.find("obstructions")) {
        const json& obs = array_at(*v, "/obstructions");
        for (std::size_t k = 0; k < obs.size(); ++k)
            site.obstructions.push_back(parse_obstruction(obs[k], "/obstructions/" + std::to_string(k)));
    }
    if (const json* v = r.find("regions")) {
        const json& regions = array_at(*v, "/regions");
        for (std::size_t k = 0; k < regions.size(); ++k)
            site.regions.push_back(parse_region(regions[k], "/regions/" + std::to_string(k)));
    }
    r.finish();
    return site;
}

Site parse_site(const std::filesystem::path& path) { return parse_site_text(read_text_file(path)); }

std::string serialize_site(const Site& site)
{
    nlohmann::ordered_json root;

    auto& grid = root["grid"];
    grid["cell_size_m"] = site.grid.cell_size_m;
    grid["nx"] = site.grid.nx;
    grid["ny"] = site.grid.ny;
    grid["node_height_m"] = site.grid.node_height_m;

    const auto& c = site.config;
    auto& config = root["config"];
    config["frequency_hz"] = c.frequency_hz;
    config["bandwidth_hz"] = c.bandwidth_hz;
    config["coding_rate"] = to_string(c.coding_rate);
    config["environment"] = to_string(c.environment);
    config["duty_cycle_limit"] = c.duty_cycle_limit;
    config["link_margin_db"] = c.link_margin_db;
    config["shadowing_sigma_db"] = c.shadowing_sigma_db;
    config["rng_seed"] = c.rng_seed;
    config["noise_figure_db"] = c.noise_figure_db;
    auto& materials = config["material_loss_table"] = nlohmann::ordered_json::object();
    for (const auto& [m, db] : c.material_loss_table)
        materials[std::string(to_string(m))] = db;
    config["floor_loss_db"] = c.floor_loss_db;
    config["vegetation_loss_db_per_m"] = c.vegetation_loss_db_per_m;
    config["supply_voltage_v"] = c.supply_voltage_v;
    auto& currents = config["tx_current_table"] = nlohmann::ordered_json::object();
    for (const auto& [dbm, ma] : c.tx_current_table)
        currents[std::to_string(dbm)] = ma;
    config["payload_bytes"] = c.payload_bytes;
    config["preamble_symbols"] = c.preamble_symbols;

    root["node_profile"]["antenna_gain_dbi"] = site.node_profile.antenna_gain_dbi;
    root["node_profile"]["antenna_height_m"] = site.node_profile.antenna_height_m;

    auto& gateways = root["gateways"] = nlohmann::ordered_json::array();
    for (const auto& g : site.gateways) {
        nlohmann::ordered_json j;
        j["id"] = g.id;
        j["position"] = point_json(g.position);
        j["antenna_gain_dbi"] = g.antenna_gain_dbi;
        gateways.push_back(std::move(j));
    }

    auto& obstructions = root["obstructions"] = nlohmann::ordered_json::array();
    for (const auto& o : site.obstructions) {
        nlohmann::ordered_json j;
        j["id"] = o.id;
        j["kind"] = to_string(o.kind);
        j["footprint"] = polygon_json(o.footprint);
        j["height_m"] = o.height_m;
        if (o.material)
            j["material"] = to_string(*o.material);
        j["floor_count"] = o.floor_count;
        obstructions.push_back(std::move(j));
    }

    if (!site.regions.empty()) {
        auto& regions = root["regions"] = nlohmann::ordered_json::array();
        for (const auto& g : site.regions) {
            nlohmann::ordered_json j;
            j["id"] = g.id;
            j["footprint"] = polygon_json(g.footprint);
            regions.push_back(std::move(j));
        }
    }
    return root.dump(2) + "\n";
}

} // namespace loraplan
