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

#include "loraplan/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace loraplan {

double free_space_loss(double distance_m, double frequency_hz)
{
    if (!(distance_m > 0.0) || !(frequency_hz > 0.0))
        throw DomainError("free_space_loss: distance and frequency must be positive");
    return 32.45 + 20.0 * std::log10(distance_m / 1000.0) + 20.0 * std::log10(frequency_hz / 1e6);
}

EricssonParams ericsson_params(Environment env)
{
    switch (env) {
        case Environment::urban: return {36.2, 30.2, -12.0, 0.1};
        case Environment::suburban: return {43.2, 68.93, -12.0, 0.1};
        case Environment::rural: return {45.95, 100.6, -12.0, 0.1};
        case Environment::open: break;
    }
    throw DomainError("ericsson_params: no parameter set for environment '" + std::string(to_string(env)) + "'");
}

double ericsson_loss(double distance_m, double frequency_hz, double base_height_m, double mobile_height_m,
                     Environment env)
{
    if (!(distance_m > 0.0) || !(frequency_hz > 0.0) || !(base_height_m > 0.0) || !(mobile_height_m > 0.0))
        throw DomainError("ericsson_loss: distance, frequency and heights must be positive");
    const auto [a0, a1, a2, a3] = ericsson_params(env);
    const double log_d = std::log10(distance_m / 1000.0);
    const double log_hb = std::log10(base_height_m);
    const double log_hm = std::log10(11.75 * mobile_height_m);
    const double log_f = std::log10(frequency_hz / 1e6);
    const double g = 44.49 * log_f - 4.78 * log_f * log_f;
    return a0 + a1 * log_d + a2 * log_hb + a3 * log_hb * log_d - 3.2 * log_hm * log_hm + g;
}

ObstructionLoss mwf_loss(std::span<const Crossing> crossings, const SiteConfig& config)
{
    ObstructionLoss loss;
    double depth = 0.0;
    for (const auto& c : crossings) {
        if (const auto* wall = std::get_if<crossing::Wall>(&c.kind)) {
            auto it = config.material_loss_table.find(wall->material);
            if (it == config.material_loss_table.end())
                throw ConfigError("material_loss_table has no entry for '" + std::string(to_string(wall->material)) +
                                  "'");
            loss.wall_db += it->second;
        } else if (std::holds_alternative<crossing::Floor>(c.kind)) {
            loss.floor_db += config.floor_loss_db;
        } else if (const auto* veg = std::get_if<crossing::Vegetation>(&c.kind)) {
            depth += veg->depth_m;
        }
    }
    loss.vegetation_db = std::min(config.vegetation_loss_db_per_m * depth, kVegetationCapDb);
    return loss;
}

double fresnel_radius(double d1_m, double d2_m, double frequency_hz)
{
    if (!(d1_m >= 0.0) || !(d2_m >= 0.0) || !(frequency_hz > 0.0))
        throw DomainError("fresnel_radius: distances must be non-negative and frequency positive");
    if (d1_m + d2_m == 0.0)
        throw DomainError("fresnel_radius: d1 and d2 are both zero");
    return std::sqrt(wavelength_m(frequency_hz) * d1_m * d2_m / (d1_m + d2_m));
}

double knife_edge_loss(double v)
{
    if (!(v > kKnifeEdgeThresholdV))
        return 0.0;
    const double u = v - 0.1;
    return std::max(0.0, 6.9 + 20.0 * std::log10(std::sqrt(u * u + 1.0) + u));
}

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform in (0, 1].
double to_unit(std::uint64_t h) { return static_cast<double>((h >> 11) + 1) * 0x1.0p-53; }

} // namespace

double shadowing_sample(CellIndex cell, std::uint64_t seed, double sigma_db)
{
    if (sigma_db == 0.0)
        return 0.0;
    const std::uint64_t key =
        mix64(mix64(mix64(seed) ^ static_cast<std::uint64_t>(cell.i)) ^ static_cast<std::uint64_t>(cell.j));
    const double u1 = to_unit(mix64(key ^ 0x1ULL));
    const double u2 = to_unit(mix64(key ^ 0x2ULL));
    return sigma_db * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

PathLossBreakdown total_path_loss(const Point3& a, const Point3& b, const Site& site, double mobility_penalty_db,
                                  CellIndex cell)
{
    if (!(mobility_penalty_db >= 0.0) || !std::isfinite(mobility_penalty_db))
        throw DomainError("total_path_loss: mobility penalty must be finite and non-negative");
    if (a == b)
        throw DomainError("total_path_loss: endpoints coincide");

    const auto& config = site.config;
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double dz = b.z - a.z;
    const double distance = std::sqrt(dx * dx + dy * dy + dz * dz);

    PathLossBreakdown out;
    const double base = config.environment == Environment::open
                            ? free_space_loss(distance, config.frequency_hz)
                            : ericsson_loss(distance, config.frequency_hz, std::max(a.z, b.z), std::min(a.z, b.z),
                                            config.environment);
    out.base_db = std::max(base, 0.0);

    const auto crossings = trace_crossings(a, b, site);
    const auto mwf = mwf_loss(crossings, config);
    out.wall_db = mwf.wall_db;
    out.floor_db = mwf.floor_db;
    out.vegetation_db = mwf.vegetation_db;

    std::vector<double> edges;
    for (const auto& c : crossings)
        if (const auto* k = std::get_if<crossing::KnifeEdge>(&c.kind))
            edges.push_back(k->v);
    std::sort(edges.begin(), edges.end(), std::greater<>());
    if (edges.size() > kMaxKnifeEdges)
        edges.resize(kMaxKnifeEdges);
    for (double v : edges)
        out.diffraction_db += knife_edge_loss(v);

    out.mobility_db = mobility_penalty_db;

    // A negative shadowing draw may cancel the other losses but not push the total below zero.
    const double others = out.base_db + out.wall_db + out.floor_db + out.vegetation_db + out.diffraction_db +
                          out.mobility_db;
    out.shadowing_db = std::max(shadowing_sample(cell, config.rng_seed, config.shadowing_sigma_db), -others);
    out.total_db = std::max(out.component_sum(), 0.0);
    return out;
}

} // namespace loraplan
