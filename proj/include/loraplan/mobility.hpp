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

#ifndef LORAPLAN_MOBILITY_HPP
#define LORAPLAN_MOBILITY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loraplan/planner.hpp"

namespace loraplan {

struct Waypoint
{
    Point3 position;
    double t_s = 0.0;

    bool operator==(const Waypoint&) const = default;
};

/// Piecewise-linear path through timestamped waypoints.
struct Trajectory
{
    std::vector<Waypoint> waypoints;

    bool operator==(const Trajectory&) const = default;
};

std::vector<Violation> validate_trajectory(const Trajectory& traj);

/// Accepts either a JSON array of {x, y, z, t} objects or {"waypoints": [...]}.
/// A missing z takes `default_height_m`.
Trajectory parse_trajectory_text(std::string_view text, double default_height_m);
Trajectory parse_trajectory(const std::filesystem::path& path, double default_height_m);

struct MobilityModel
{
    double alpha_db_per_mps = 0.0;
    double sample_interval_s = 1.0;
    double hysteresis_db = 2.0;
    int dwell_samples = 2;
};

std::vector<Violation> validate_mobility_model(const MobilityModel& model);

struct TrajectorySample
{
    double t_s = 0.0;
    Point3 position;
    double speed_mps = 0.0;
};

/// Samples at t0, t0 + interval, ... plus the final timestamp.
std::vector<TrajectorySample> sample_trajectory(const Trajectory& traj, double interval_s);

struct ProfileSample
{
    double t_s = 0.0;
    Point3 position;
    double speed_mps = 0.0;
    std::optional<std::string> gateway;
    std::optional<PathLossBreakdown> breakdown;
    std::optional<RadioConfig> config;
    std::optional<double> rssi_dbm;
    bool connected = false;

    bool operator==(const ProfileSample&) const = default;
};

struct ProfileStats
{
    std::size_t sample_count = 0;
    double connected_fraction = 0.0;
    std::size_t sf_switches = 0;
    std::map<int, double> sf_time_share; // fraction of all samples spent connected at each SF
    double total_energy_mj = 0.0;        // one transmission per connected sample
    std::optional<double> rssi_min_dbm;
    std::optional<double> rssi_mean_dbm;
    std::optional<double> rssi_max_dbm;

    bool operator==(const ProfileStats&) const = default;
};

struct PathProfile
{
    std::vector<ProfileSample> samples;
    ProfileStats stats;
};

ProfileStats compute_profile_stats(std::span<const ProfileSample> samples, const SiteConfig& config);

/// Evaluates loss, RSSI and the adaptively held radio config along the trajectory.
///
/// The held config is kept while feasible. When it becomes infeasible the node moves
/// immediately to the best feasible config at the same or higher SF. A config preferred
/// under the objective is adopted only after the static choice has cleared the link
/// margin plus `hysteresis_db` for `dwell_samples` consecutive samples.
PathProfile evaluate_path_profile(const Trajectory& traj, const Site& site, const MobilityModel& model,
                                  Objective objective);

struct MobilityReport
{
    ProfileStats stats;
    std::map<std::string, double> region_energy_mj; // only for sites that declare regions
};

MobilityReport mobility_report(const PathProfile& profile, const Site& site);

} // namespace loraplan

#endif
