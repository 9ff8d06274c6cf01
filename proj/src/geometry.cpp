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

#include "loraplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace loraplan {

namespace {

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

double orient(const Point3& a, const Point3& b, const Point3& c)
{
    return cross(b.x - a.x, b.y - a.y, c.x - a.x, c.y - a.y);
}

bool on_segment(const Point3& a, const Point3& b, const Point3& p)
{
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_touch(const Point3& p1, const Point3& p2, const Point3& q1, const Point3& q2)
{
    const double d1 = orient(q1, q2, p1);
    const double d2 = orient(q1, q2, p2);
    const double d3 = orient(p1, p2, q1);
    const double d4 = orient(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    return (d1 == 0 && on_segment(q1, q2, p1)) || (d2 == 0 && on_segment(q1, q2, p2)) ||
           (d3 == 0 && on_segment(p1, p2, q1)) || (d4 == 0 && on_segment(p1, p2, q2));
}

struct Bounds
{
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void add(double x, double y)
    {
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x);
        max_y = std::max(max_y, y);
    }

    bool overlaps(const Bounds& o) const
    {
        return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
    }
};

struct Interval
{
    double t0, t1;
};

std::size_t kind_rank(const CrossingKind& k) { return k.index(); }

double kind_value(const CrossingKind& k)
{
    if (auto* w = std::get_if<crossing::Wall>(&k))
        return static_cast<double>(w->material);
    if (auto* v = std::get_if<crossing::Vegetation>(&k))
        return v->depth_m;
    if (auto* e = std::get_if<crossing::KnifeEdge>(&k))
        return e->v;
    return 0.0;
}

} // namespace

double signed_area(std::span<const Point3> polygon)
{
    const std::size_t n = polygon.size();
    if (n < 3)
        return 0.0;
    double twice = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& p = polygon[k];
        const auto& q = polygon[(k + 1) % n];
        twice += cross(p.x, p.y, q.x, q.y);
    }
    return 0.5 * twice;
}

bool is_simple_polygon(std::span<const Point3> polygon)
{
    const std::size_t n = polygon.size();
    if (n < 3)
        return false;
    for (std::size_t e = 0; e < n; ++e) {
        const auto& a1 = polygon[e];
        const auto& a2 = polygon[(e + 1) % n];
        if (a1.x == a2.x && a1.y == a2.y)
            return false;
        for (std::size_t f = e + 1; f < n; ++f) {
            const auto& b1 = polygon[f];
            const auto& b2 = polygon[(f + 1) % n];
            const bool adjacent = f == e + 1 || (e == 0 && f == n - 1);
            if (adjacent) {
                // Shared vertex only; a fold-back along the same line is an overlap.
                const Point3& shared = (f == e + 1) ? a2 : a1;
                const Point3& other_a = (f == e + 1) ? a1 : a2;
                const Point3& other_b = (f == e + 1) ? b2 : b1;
                if (orient(other_a, shared, other_b) == 0.0) {
                    const double dot = (other_a.x - shared.x) * (other_b.x - shared.x) +
                                       (other_a.y - shared.y) * (other_b.y - shared.y);
                    if (dot > 0.0)
                        return false;
                }
                continue;
            }
            if (segments_touch(a1, a2, b1, b2))
                return false;
        }
    }
    return true;
}

bool point_in_polygon(double x, double y, std::span<const Point3> polygon)
{
    bool inside = false;
    const std::size_t n = polygon.size();
    for (std::size_t k = 0, prev = n - 1; k < n; prev = k++) {
        const auto& p = polygon[k];
        const auto& q = polygon[prev];
        if ((p.y > y) != (q.y > y)) {
            const double x_cross = p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y);
            if (x < x_cross)
                inside = !inside;
        }
    }
    return inside;
}

std::vector<Crossing> trace_crossings(const Point3& a, const Point3& b, const Site& site)
{
    if (a == b)
        throw DomainError("trace_crossings: endpoints coincide");

    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double dz = b.z - a.z;
    const double length_2d = std::hypot(dx, dy);
    const double length_3d = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double lambda = wavelength_m(site.config.frequency_hz);
    auto z_at = [&](double t) { return a.z + t * dz; };

    Bounds ray_bounds;
    ray_bounds.add(a.x, a.y);
    ray_bounds.add(b.x, b.y);

    std::vector<Crossing> out;
    std::vector<double> hits;
    std::vector<double> cuts;
    std::vector<Interval> inside;

    for (const auto& ob : site.obstructions) {
        const auto& poly = ob.footprint;
        const std::size_t n = poly.size();
        if (n < 3)
            continue;
        Bounds poly_bounds;
        for (const auto& p : poly)
            poly_bounds.add(p.x, p.y);
        if (!poly_bounds.overlaps(ray_bounds))
            continue;

        // Edge hits use half-open edges [p_k, p_k+1) so a ray through a vertex counts once.
        hits.clear();
        if (length_2d > 0.0) {
            for (std::size_t k = 0; k < n; ++k) {
                const auto& p = poly[k];
                const auto& q = poly[(k + 1) % n];
                const double ex = q.x - p.x;
                const double ey = q.y - p.y;
                const double denom = cross(dx, dy, ex, ey);
                if (denom == 0.0)
                    continue;
                const double wx = p.x - a.x;
                const double wy = p.y - a.y;
                const double t = cross(wx, wy, ex, ey) / denom;
                const double s = cross(wx, wy, dx, dy) / denom;
                if (t >= 0.0 && t <= 1.0 && s >= 0.0 && s < 1.0)
                    hits.push_back(t);
            }
            std::sort(hits.begin(), hits.end());
        }

        // In-footprint parameter intervals, decided by midpoint tests between cuts.
        inside.clear();
        if (length_2d > 0.0) {
            cuts.assign(1, 0.0);
            cuts.insert(cuts.end(), hits.begin(), hits.end());
            cuts.push_back(1.0);
            for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
                const double t0 = cuts[k];
                const double t1 = cuts[k + 1];
                if (!(t1 > t0))
                    continue;
                const double tm = 0.5 * (t0 + t1);
                if (!point_in_polygon(a.x + tm * dx, a.y + tm * dy, poly))
                    continue;
                if (!inside.empty() && inside.back().t1 == t0)
                    inside.back().t1 = t1;
                else
                    inside.push_back({t0, t1});
            }
        } else if (point_in_polygon(a.x, a.y, poly)) {
            inside.push_back({0.0, 1.0});
        }

        const double top = ob.height_m;
        bool blocked = false;
        for (const auto& iv : inside)
            if (std::min(z_at(iv.t0), z_at(iv.t1)) < top)
                blocked = true;

        if (ob.kind == ObstructionKind::building) {
            if (!ob.material)
                throw ConfigError("building '" + ob.id + "' has no material");
            const Material material = *ob.material;
            for (double t : hits)
                if (z_at(t) < top)
                    out.push_back({crossing::Wall{material}, t * length_3d});
            if (ob.floor_count > 0 && dz != 0.0) {
                for (const auto& iv : inside) {
                    const double lo = std::min(z_at(iv.t0), z_at(iv.t1));
                    const double hi = std::max(z_at(iv.t0), z_at(iv.t1));
                    for (int k = 1; k <= ob.floor_count; ++k) {
                        const double plane = k * top / (ob.floor_count + 1);
                        if (lo < plane && plane < hi)
                            out.push_back({crossing::Floor{}, (plane - a.z) / dz * length_3d});
                    }
                }
            }
        } else {
            double depth = 0.0;
            double first = std::numeric_limits<double>::infinity();
            for (const auto& iv : inside) {
                // Part of the interval where the ray is below the canopy top.
                double t0 = iv.t0;
                double t1 = iv.t1;
                if (dz == 0.0) {
                    if (!(a.z < top))
                        continue;
                } else {
                    const double t_top = (top - a.z) / dz;
                    if (dz > 0.0)
                        t1 = std::min(t1, t_top);
                    else
                        t0 = std::max(t0, t_top);
                }
                if (t1 > t0) {
                    depth += (t1 - t0) * length_2d;
                    first = std::min(first, t0);
                }
            }
            if (depth > 0.0)
                out.push_back({crossing::Vegetation{depth}, first * length_3d});
        }

        if (blocked || inside.empty())
            continue;

        // Worst Fresnel intrusion: maximize v = (top - z) * sqrt(2) / r over the footprint.
        // With c(t) = z(t) - top > 0, c/r has a single stationary point at alpha / (beta + 2 alpha).
        const double alpha = a.z - top;
        const double beta = dz;
        double best_v = -std::numeric_limits<double>::infinity();
        double best_t = 0.0;
        double best_clearance = 0.0;
        double best_radius = 0.0;
        auto consider = [&](double t) {
            if (!(t > 0.0 && t < 1.0))
                return;
            const double r = std::sqrt(lambda * t * (1.0 - t) * length_3d);
            const double clearance = z_at(t) - top;
            const double v = -clearance * std::sqrt(2.0) / r;
            if (v > best_v) {
                best_v = v;
                best_t = t;
                best_clearance = clearance;
                best_radius = r;
            }
        };
        const double denom = beta + 2.0 * alpha;
        const double t_star = denom != 0.0 ? alpha / denom : -1.0;
        for (const auto& iv : inside) {
            consider(iv.t0);
            consider(iv.t1);
            if (t_star >= iv.t0 && t_star <= iv.t1)
                consider(t_star);
        }
        if (std::isfinite(best_v) && best_clearance < kFresnelClearanceFraction * best_radius)
            out.push_back({crossing::KnifeEdge{best_v}, best_t * length_3d});
    }

    std::sort(out.begin(), out.end(), [](const Crossing& l, const Crossing& r) {
        if (l.along_m != r.along_m)
            return l.along_m < r.along_m;
        if (kind_rank(l.kind) != kind_rank(r.kind))
            return kind_rank(l.kind) < kind_rank(r.kind);
        return kind_value(l.kind) < kind_value(r.kind);
    });
    return out;
}

} // namespace loraplan
