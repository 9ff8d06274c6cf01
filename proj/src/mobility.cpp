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

#include "loraplan/mobility.hpp"

#include <algorithm>
#include <cmath>

#include "json_reader.hpp"
#include "loraplan/geometry.hpp"

namespace loraplan {

std::vector<Violation> validate_trajectory(const Trajectory& traj)
{
    std::vector<Violation> out;
    if (traj.waypoints.size() < 2)
        out.push_back({"trajectory", "at least 2 waypoints"});
    for (std::size_t k = 0; k < traj.waypoints.size(); ++k) {
        const auto& w = traj.waypoints[k];
        const auto entity = "waypoint " + std::to_string(k);
        if (!std::isfinite(w.position.x) || !std::isfinite(w.position.y) || !std::isfinite(w.position.z) ||
            !std::isfinite(w.t_s))
            out.push_back({entity, "coordinates and timestamp finite"});
        else if (!(w.position.z > 0.0))
            out.push_back({entity, "z > 0"});
        if (k > 0 && !(w.t_s > traj.waypoints[k - 1].t_s))
            out.push_back({entity, "timestamps strictly increasing"});
    }
    return out;
}

Trajectory parse_trajectory_text(std::string_view text, double default_height_m)
{
    using detail::json;
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(detail::location_of(text, e.byte), "malformed document");
    }

    const json* list = &root;
    std::string base;
    std::optional<detail::ObjectReader> wrapper;
    if (root.is_object()) {
        wrapper.emplace(root, "");
        list = &wrapper->get("waypoints");
        wrapper->finish();
        base = "/waypoints";
    }
    detail::array_at(*list, base.empty() ? "/" : base);

    Trajectory traj;
    for (std::size_t k = 0; k < list->size(); ++k) {
        detail::ObjectReader r((*list)[k], base + "/" + std::to_string(k));
        Waypoint w;
        w.position.x = r.number("x");
        w.position.y = r.number("y");
        w.position.z = r.number_or("z", default_height_m);
        w.t_s = r.number("t");
        r.finish();
        traj.waypoints.push_back(w);
    }
    return traj;
}

Trajectory parse_trajectory(const std::filesystem::path& path, double default_height_m)
{
    return parse_trajectory_text(read_text_file(path), default_height_m);
}

std::vector<Violation> validate_mobility_model(const MobilityModel& model)
{
    std::vector<Violation> out;
    if (!(model.alpha_db_per_mps >= 0.0) || !std::isfinite(model.alpha_db_per_mps))
        out.push_back({"mobility", "alpha_db_per_mps >= 0"});
    if (!(model.sample_interval_s > 0.0) || !std::isfinite(model.sample_interval_s))
        out.push_back({"mobility", "sample_interval_s > 0"});
    if (!(model.hysteresis_db >= 0.0) || !std::isfinite(model.hysteresis_db))
        out.push_back({"mobility", "hysteresis_db >= 0"});
    if (model.dwell_samples < 1)
        out.push_back({"mobility", "dwell_samples >= 1"});
    return out;
}

namespace {

double distance(const Point3& a, const Point3& b)
{
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double dz = b.z - a.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

} // namespace

std::vector<TrajectorySample> sample_trajectory(const Trajectory& traj, double interval_s)
{
    if (auto v = validate_trajectory(traj); !v.empty())
        throw ValidationError(std::move(v));
    if (!(interval_s > 0.0) || !std::isfinite(interval_s))
        throw DomainError("sample_trajectory: interval must be positive");

    const auto& wps = traj.waypoints;
    const double t0 = wps.front().t_s;
    const double t_end = wps.back().t_s;

    std::vector<double> times;
    const auto steps = static_cast<std::size_t>(std::floor((t_end - t0) / interval_s));
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = t0 + static_cast<double>(k) * interval_s;
        if (t > t_end)
            break;
        times.push_back(t);
    }
    if (times.back() < t_end - 1e-9 * interval_s)
        times.push_back(t_end);
    else
        times.back() = t_end;

    std::vector<TrajectorySample> out;
    out.reserve(times.size());
    std::size_t seg = 0;
    for (double t : times) {
        // Segment [w_seg, w_seg+1) holding t; the final timestamp stays on the last segment.
        while (seg + 2 < wps.size() && t >= wps[seg + 1].t_s)
            ++seg;
        const auto& w0 = wps[seg];
        const auto& w1 = wps[seg + 1];
        const double span = w1.t_s - w0.t_s;
        const double f = std::clamp((t - w0.t_s) / span, 0.0, 1.0);
        TrajectorySample s;
        s.t_s = t;
        s.position = {w0.position.x + f * (w1.position.x - w0.position.x),
                      w0.position.y + f * (w1.position.y - w0.position.y),
                      w0.position.z + f * (w1.position.z - w0.position.z)};
        s.speed_mps = distance(w0.position, w1.position) / span;
        out.push_back(s);
    }
    return out;
}

namespace {

struct LinkState
{
    double path_loss_db;
    double g_s;
    double g_r;
    const SiteConfig& config;

    double rssi_of(const RadioConfig& c) const { return rssi(c.txpower_dbm, g_s, g_r, path_loss_db); }

    bool clears(const RadioConfig& c, double extra_db) const
    {
        return rssi_of(c) >= sensitivity(c.sf, config.bandwidth_hz, config.noise_figure_db) + config.link_margin_db +
                                 extra_db;
    }
};

// Best feasible config (by objective) with SF at least `min_sf`.
std::optional<RadioConfig> best_at_or_above(int min_sf, const LinkState& link, Objective objective)
{
    std::optional<RadioConfig> best;
    for (int sf = min_sf; sf <= kMaxSf; ++sf) {
        for (int p = kMinTxPowerDbm; p <= kMaxTxPowerDbm; ++p) {
            auto c = make_radio_config(sf, p, link.config);
            if (link.clears(c, 0.0) && (!best || prefers(c, *best, objective, link.config)))
                best = c;
        }
    }
    return best;
}

} // namespace

ProfileStats compute_profile_stats(std::span<const ProfileSample> samples, const SiteConfig& config)
{
    ProfileStats s;
    s.sample_count = samples.size();
    std::size_t connected = 0;
    std::optional<int> last_sf;
    std::map<int, std::size_t> per_sf;
    double rssi_sum = 0.0;
    for (const auto& x : samples) {
        if (!x.connected || !x.config)
            continue;
        ++connected;
        const int sf = x.config->sf;
        if (last_sf && *last_sf != sf)
            ++s.sf_switches;
        last_sf = sf;
        ++per_sf[sf];
        s.total_energy_mj += energy_per_tx(time_on_air(*x.config), x.config->txpower_dbm, config);
        if (x.rssi_dbm) {
            const double r = *x.rssi_dbm;
            s.rssi_min_dbm = s.rssi_min_dbm ? std::min(*s.rssi_min_dbm, r) : r;
            s.rssi_max_dbm = s.rssi_max_dbm ? std::max(*s.rssi_max_dbm, r) : r;
            rssi_sum += r;
        }
    }
    if (s.sample_count > 0) {
        const auto n = static_cast<double>(s.sample_count);
        s.connected_fraction = static_cast<double>(connected) / n;
        for (const auto& [sf, count] : per_sf)
            s.sf_time_share[sf] = static_cast<double>(count) / n;
    }
    if (connected > 0 && s.rssi_min_dbm)
        s.rssi_mean_dbm = rssi_sum / static_cast<double>(connected);
    return s;
}

PathProfile evaluate_path_profile(const Trajectory& traj, const Site& site, const MobilityModel& model,
                                  Objective objective)
{
    require_valid(site);
    if (auto v = validate_mobility_model(model); !v.empty())
        throw ValidationError(std::move(v));

    PathProfile profile;
    std::optional<RadioConfig> held;
    int streak = 0;

    for (const auto& smp : sample_trajectory(traj, model.sample_interval_s)) {
        ProfileSample out;
        out.t_s = smp.t_s;
        out.position = smp.position;
        out.speed_mps = smp.speed_mps;

        const double penalty = model.alpha_db_per_mps * smp.speed_mps;
        const auto best = best_gateway(smp.position, site, penalty, site.grid.cell_of(smp.position.x, smp.position.y));
        if (!best) {
            held.reset();
            streak = 0;
            profile.samples.push_back(std::move(out));
            continue;
        }
        out.gateway = best->gateway->id;
        out.breakdown = best->breakdown;

        const LinkState link{best->breakdown.total_db, site.node_profile.antenna_gain_dbi,
                             best->gateway->antenna_gain_dbi, site.config};
        const auto candidate = select_config(link.path_loss_db, link.g_s, link.g_r, site.config, objective);

        if (held && !link.clears(*held, 0.0)) {
            held = best_at_or_above(held->sf, link, objective);
            streak = 0;
        }
        if (!held) {
            held = candidate;
            streak = 0;
        } else if (candidate && prefers(*candidate, *held, objective, site.config) &&
                   link.clears(*candidate, model.hysteresis_db)) {
            if (++streak >= model.dwell_samples) {
                held = candidate;
                streak = 0;
            }
        } else {
            streak = 0;
        }

        if (held) {
            out.config = held;
            out.rssi_dbm = link.rssi_of(*held);
            out.connected = link.clears(*held, 0.0);
        }
        profile.samples.push_back(std::move(out));
    }

    profile.stats = compute_profile_stats(profile.samples, site.config);
    return profile;
}

MobilityReport mobility_report(const PathProfile& profile, const Site& site)
{
    MobilityReport report;
    report.stats = profile.stats;
    for (const auto& r : site.regions)
        report.region_energy_mj[r.id] = 0.0;
    for (const auto& x : profile.samples) {
        if (!x.connected || !x.config)
            continue;
        for (const auto& r : site.regions) {
            if (point_in_polygon(x.position.x, x.position.y, r.footprint)) {
                report.region_energy_mj[r.id] +=
                    energy_per_tx(time_on_air(*x.config), x.config->txpower_dbm, site.config);
                break;
            }
        }
    }
    return report;
}

} // namespace loraplan
