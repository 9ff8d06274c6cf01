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

#ifndef LORAPLAN_PROPAGATION_HPP
#define LORAPLAN_PROPAGATION_HPP

#include <span>

#include "loraplan/geometry.hpp"
#include "loraplan/site.hpp"

namespace loraplan {

/// Upper bound on the total vegetation loss along a single link.
inline constexpr double kVegetationCapDb = 30.0;

/// Knife-edge loss is zero at or below this diffraction parameter.
inline constexpr double kKnifeEdgeThresholdV = -0.78;

/// At most this many knife edges (largest v first) contribute diffraction loss.
inline constexpr std::size_t kMaxKnifeEdges = 3;

struct PathLossBreakdown
{
    double base_db = 0.0;
    double wall_db = 0.0;
    double floor_db = 0.0;
    double vegetation_db = 0.0;
    double diffraction_db = 0.0;
    double shadowing_db = 0.0; // the only component allowed to be negative
    double mobility_db = 0.0;
    double total_db = 0.0;

    double component_sum() const
    {
        return base_db + wall_db + floor_db + vegetation_db + diffraction_db + shadowing_db + mobility_db;
    }

    bool operator==(const PathLossBreakdown&) const = default;
};

struct ObstructionLoss
{
    double wall_db = 0.0;
    double floor_db = 0.0;
    double vegetation_db = 0.0;
};

/// 32.45 + 20 log10(d_km) + 20 log10(f_MHz). May be negative at very short range.
double free_space_loss(double distance_m, double frequency_hz);

struct EricssonParams
{
    double a0, a1, a2, a3;
};

/// Throws DomainError for Environment::open, which has no Ericsson parameter set.
EricssonParams ericsson_params(Environment env);

double ericsson_loss(double distance_m, double frequency_hz, double base_height_m, double mobile_height_m,
                     Environment env);

/// Multi-wall-and-floor losses. Throws ConfigError for a wall material missing from the table.
ObstructionLoss mwf_loss(std::span<const Crossing> crossings, const SiteConfig& config);

double fresnel_radius(double d1_m, double d2_m, double frequency_hz);

/// Single knife-edge diffraction loss J(v), dB.
double knife_edge_loss(double v);

/// Zero-mean Gaussian shadowing keyed on (seed, cell). Identical for any evaluation order.
double shadowing_sample(CellIndex cell, std::uint64_t seed, double sigma_db);

/// Full multi-loss breakdown for the link a <-> b. `cell` keys the shadowing draw.
PathLossBreakdown total_path_loss(const Point3& a, const Point3& b, const Site& site, double mobility_penalty_db,
                                  CellIndex cell);

} // namespace loraplan

#endif
