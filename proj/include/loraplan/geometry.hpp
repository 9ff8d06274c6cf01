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

#ifndef LORAPLAN_GEOMETRY_HPP
#define LORAPLAN_GEOMETRY_HPP

#include <span>
#include <variant>
#include <vector>

#include "loraplan/site.hpp"

namespace loraplan {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

/// Knife-edge crossings are reported only when clearance above the obstruction top
/// is below this fraction of the first Fresnel zone radius.
inline constexpr double kFresnelClearanceFraction = 0.6;

inline double wavelength_m(double frequency_hz) { return kSpeedOfLight / frequency_hz; }

namespace crossing {

struct Wall
{
    Material material;
    bool operator==(const Wall&) const = default;
};

struct Floor
{
    bool operator==(const Floor&) const = default;
};

struct Vegetation
{
    double depth_m; // 2D chord length through foliage below the canopy top
    bool operator==(const Vegetation&) const = default;
};

struct KnifeEdge
{
    double v; // Fresnel-Kirchhoff diffraction parameter
    bool operator==(const KnifeEdge&) const = default;
};

} // namespace crossing

using CrossingKind = std::variant<crossing::Wall, crossing::Floor, crossing::Vegetation, crossing::KnifeEdge>;

struct Crossing
{
    CrossingKind kind;
    double along_m = 0.0; // 3D distance from the first endpoint

    bool operator==(const Crossing&) const = default;
};

/// Walks the straight ray a -> b through the site's obstructions.
///
/// Buildings yield a wall crossing for every footprint edge the 2D path cuts below the
/// roof, and a floor crossing for every floor plane the ray passes through inside the
/// footprint. Vegetation yields one crossing carrying the foliage depth below the canopy.
/// Obstructions that do not block the ray but intrude into the first Fresnel zone yield a
/// knife-edge crossing at their worst point. Output is ordered by along_m.
///
/// Throws DomainError if a == b.
std::vector<Crossing> trace_crossings(const Point3& a, const Point3& b, const Site& site);

// Planar polygon helpers (z ignored).
double signed_area(std::span<const Point3> polygon);
bool is_simple_polygon(std::span<const Point3> polygon);
bool point_in_polygon(double x, double y, std::span<const Point3> polygon);

} // namespace loraplan

#endif
