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

#include "loraplan/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "json.hpp"

namespace loraplan {

using ojson = nlohmann::ordered_json;

std::string format_number(double value)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{})
        throw std::runtime_error("format_number: conversion failed");
    return std::string(buf.data(), end);
}

std::string sha256_hex(std::string_view data)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
        out += hex[digest[k] >> 4];
        out += hex[digest[k] & 0xf];
    }
    return out;
}

int rssi_to_gray(double rssi_dbm)
{
    const double f = (rssi_dbm - kHeatmapFloorDbm) / (kHeatmapCeilDbm - kHeatmapFloorDbm);
    return static_cast<int>(std::lround(std::clamp(f, 0.0, 1.0) * 255.0));
}

std::string coverage_csv(const CoverageGrid& grid)
{
    std::string out(kCoverageCsvHeader);
    out += '\n';
    auto field = [&](const std::string& s) {
        out += s;
        out += ',';
    };
    for (const auto& c : grid.cells) {
        const auto center = grid.grid.cell_center(c.cell);
        field(std::to_string(c.cell.i));
        field(std::to_string(c.cell.j));
        field(format_number(center.x));
        field(format_number(center.y));
        field(c.best_gateway.value_or(""));
        if (c.breakdown) {
            const auto& b = *c.breakdown;
            for (double v : {b.base_db, b.wall_db, b.floor_db, b.vegetation_db, b.diffraction_db, b.shadowing_db,
                             b.total_db})
                field(format_number(v));
        } else {
            out += ",,,,,,,";
        }
        if (c.covered && c.config && c.link) {
            field(std::to_string(c.config->sf));
            field(std::to_string(c.config->txpower_dbm));
            field(format_number(c.link->rssi_dbm));
            field(format_number(c.link->sensitivity_dbm));
        } else {
            out += ",,,,";
        }
        out += c.covered ? "1\n" : "0\n";
    }
    return out;
}

std::string rssi_pgm(const CoverageGrid& grid)
{
    const int nx = grid.grid.nx;
    const int ny = grid.grid.ny;
    std::string out = "P2\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
    // Plain PGM lines stay within 70 characters.
    for (int j = ny - 1; j >= 0; --j) {
        std::size_t line = 0;
        for (int i = 0; i < nx; ++i) {
            const auto& c = grid.at(i, j);
            const int gray = (c.covered && c.link) ? rssi_to_gray(c.link->rssi_dbm) : 0;
            const auto token = std::to_string(gray);
            if (line > 0 && line + 1 + token.size() > 70) {
                out += '\n';
                line = 0;
            }
            if (line > 0) {
                out += ' ';
                ++line;
            }
            out += token;
            line += token.size();
        }
        out += '\n';
    }
    return out;
}

namespace {

ojson histogram_json(const std::map<int, std::size_t>& h)
{
    ojson j = ojson::object();
    for (const auto& [k, v] : h)
        j[std::to_string(k)] = v;
    return j;
}

ojson optional_number(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson run_json(const RunInfo& run)
{
    ojson j;
    j["tool"] = "loraplan";
    j["version"] = kToolVersion;
    j["site_sha256"] = run.site_sha256;
    j["seed"] = run.seed;
    j["objective"] = to_string(run.objective);
    return j;
}

ojson breakdown_json(const PathLossBreakdown& b)
{
    ojson j;
    j["base_db"] = b.base_db;
    j["wall_db"] = b.wall_db;
    j["floor_db"] = b.floor_db;
    j["vegetation_db"] = b.vegetation_db;
    j["diffraction_db"] = b.diffraction_db;
    j["shadowing_db"] = b.shadowing_db;
    j["mobility_db"] = b.mobility_db;
    j["total_db"] = b.total_db;
    return j;
}

} // namespace

std::string coverage_summary_json(const CoverageGrid& grid, const RunInfo& run)
{
    ojson j;
    j["run"] = run_json(run);
    j["grid"]["nx"] = grid.grid.nx;
    j["grid"]["ny"] = grid.grid.ny;
    j["grid"]["cell_size_m"] = grid.grid.cell_size_m;
    j["grid"]["node_height_m"] = grid.grid.node_height_m;
    const auto& s = grid.summary;
    j["total_cells"] = s.total_cells;
    j["covered_cells"] = s.covered_cells;
    j["coverage_fraction"] = s.coverage_fraction;
    j["sf_histogram"] = histogram_json(s.sf_histogram);
    j["txpower_histogram"] = histogram_json(s.txpower_histogram);
    j["mean_energy_mj"] = optional_number(s.mean_energy_mj);
    return j.dump(2) + "\n";
}

std::string profile_csv(const PathProfile& profile)
{
    std::string out(kProfileCsvHeader);
    out += '\n';
    for (const auto& s : profile.samples) {
        out += format_number(s.t_s) + ',' + format_number(s.position.x) + ',' + format_number(s.position.y) + ',' +
               format_number(s.speed_mps) + ',';
        out += s.breakdown ? format_number(s.breakdown->total_db) : "";
        out += ',';
        if (s.config) {
            out += std::to_string(s.config->sf) + ',' + std::to_string(s.config->txpower_dbm) + ',';
        } else {
            out += ",,";
        }
        out += s.rssi_dbm ? format_number(*s.rssi_dbm) : "";
        out += s.connected ? ",1\n" : ",0\n";
    }
    return out;
}

std::string mobility_summary_json(const MobilityReport& report, const MobilityRunInfo& info)
{
    ojson j;
    j["run"] = run_json(info.run);
    j["run"]["trajectory_sha256"] = info.trajectory_sha256;
    j["model"]["alpha_db_per_mps"] = info.model.alpha_db_per_mps;
    j["model"]["sample_interval_s"] = info.model.sample_interval_s;
    j["model"]["hysteresis_db"] = info.model.hysteresis_db;
    j["model"]["dwell_samples"] = info.model.dwell_samples;
    j["energy_convention"] = "one transmission per connected sample";

    const auto& s = report.stats;
    j["sample_count"] = s.sample_count;
    j["connected_fraction"] = s.connected_fraction;
    j["sf_switches"] = s.sf_switches;
    ojson shares = ojson::object();
    for (const auto& [sf, share] : s.sf_time_share)
        shares[std::to_string(sf)] = share;
    j["sf_time_share"] = shares;
    j["total_energy_mj"] = s.total_energy_mj;
    j["rssi_dbm"]["min"] = optional_number(s.rssi_min_dbm);
    j["rssi_dbm"]["mean"] = optional_number(s.rssi_mean_dbm);
    j["rssi_dbm"]["max"] = optional_number(s.rssi_max_dbm);
    if (!report.region_energy_mj.empty()) {
        ojson regions = ojson::object();
        for (const auto& [id, e] : report.region_energy_mj)
            regions[id] = e;
        j["region_energy_mj"] = regions;
    }
    return j.dump(2) + "\n";
}

std::string link_report_json(const std::string& gateway_id, const RadioConfig& config,
                             const PathLossBreakdown& breakdown, const LinkReport& link)
{
    ojson j;
    j["gateway"] = gateway_id;
    j["sf"] = config.sf;
    j["txpower_dbm"] = config.txpower_dbm;
    j["breakdown"] = breakdown_json(breakdown);
    j["link"]["rssi_dbm"] = link.rssi_dbm;
    j["link"]["sensitivity_dbm"] = link.sensitivity_dbm;
    j["link"]["snr_margin_db"] = link.snr_margin_db;
    j["link"]["feasible"] = link.feasible;
    return j.dump(2) + "\n";
}

} // namespace loraplan
