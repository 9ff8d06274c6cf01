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

#include "loraplan/planner.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace loraplan {

std::string_view to_string(Objective o)
{
    switch (o) {
        case Objective::min_airtime: return "min-airtime";
        case Objective::min_energy: return "min-energy";
    }
    return "?";
}

std::optional<Objective> objective_from_string(std::string_view s)
{
    if (s == "min-airtime")
        return Objective::min_airtime;
    if (s == "min-energy")
        return Objective::min_energy;
    return std::nullopt;
}

bool prefers(const RadioConfig& a, const RadioConfig& b, Objective objective, const SiteConfig& config)
{
    const auto key = [](const RadioConfig& c) { return std::pair{c.sf, c.txpower_dbm}; };
    if (objective == Objective::min_energy) {
        const double ea = energy_per_tx(time_on_air(a), a.txpower_dbm, config);
        const double eb = energy_per_tx(time_on_air(b), b.txpower_dbm, config);
        if (ea != eb)
            return ea < eb;
    }
    return key(a) < key(b);
}

namespace {

// Feasibility is monotone in TX power, so the lowest feasible power at a given SF is found
// from the closed-form requirement and then nudged against the exact comparison.
class FeasibilityProbe
{
  public:
    FeasibilityProbe(double path_loss_db, double g_s_dbi, double g_r_dbi, const SiteConfig& config,
                     double extra_margin_db)
        : path_loss_db_(path_loss_db), g_s_(g_s_dbi), g_r_(g_r_dbi), config_(config), extra_(extra_margin_db)
    {
    }

    std::optional<int> min_power(int sf) const
    {
        const double threshold = sensitivity(sf, config_.bandwidth_hz, config_.noise_figure_db) +
                                 config_.link_margin_db + extra_;
        const double required = threshold - g_s_ - g_r_ + path_loss_db_;
        if (!std::isfinite(required))
            return std::nullopt;
        int p = static_cast<int>(std::clamp(std::ceil(required), double(kMinTxPowerDbm), double(kMaxTxPowerDbm + 1)));
        while (p > kMinTxPowerDbm && feasible(p - 1, threshold))
            --p;
        while (p <= kMaxTxPowerDbm && !feasible(p, threshold))
            ++p;
        if (p > kMaxTxPowerDbm)
            return std::nullopt;
        return p;
    }

  private:
    bool feasible(int p, double threshold) const { return rssi(p, g_s_, g_r_, path_loss_db_) >= threshold; }

    double path_loss_db_;
    double g_s_;
    double g_r_;
    const SiteConfig& config_;
    double extra_;
};

} // namespace

std::optional<RadioConfig> select_config(double path_loss_db, double g_s_dbi, double g_r_dbi,
                                         const SiteConfig& config, Objective objective, double extra_margin_db)
{
    const FeasibilityProbe probe(path_loss_db, g_s_dbi, g_r_dbi, config, extra_margin_db);

    if (objective == Objective::min_airtime) {
        for (int sf = kMinSf; sf <= kMaxSf; ++sf)
            if (auto p = probe.min_power(sf))
                return make_radio_config(sf, *p, config);
        return std::nullopt;
    }

    std::optional<RadioConfig> best;
    double best_energy = 0.0;
    for (int sf = kMinSf; sf <= kMaxSf; ++sf) {
        auto p0 = probe.min_power(sf);
        if (!p0)
            continue;
        auto candidate = make_radio_config(sf, *p0, config);
        const double toa = time_on_air(candidate);
        // The current table need not be monotone, so every feasible power is a candidate.
        for (int p = *p0; p <= kMaxTxPowerDbm; ++p) {
            const double e = energy_per_tx(toa, p, config);
            if (!best || e < best_energy) {
                candidate.txpower_dbm = p;
                best = candidate;
                best_energy = e;
            }
        }
    }
    return best;
}

std::optional<BestLink> best_gateway(const Point3& node, const Site& site, double mobility_penalty_db,
                                     CellIndex cell)
{
    std::optional<BestLink> best;
    for (const auto& gw : site.gateways) {
        auto breakdown = total_path_loss(node, gw.position, site, mobility_penalty_db, cell);
        if (!best || breakdown.total_db < best->breakdown.total_db ||
            (breakdown.total_db == best->breakdown.total_db && gw.id < best->gateway->id))
            best = BestLink{&gw, breakdown};
    }
    return best;
}

CellPlan plan_cell(CellIndex cell, const Site& site, Objective objective)
{
    if (cell.i < 0 || cell.j < 0 || cell.i >= site.grid.nx || cell.j >= site.grid.ny)
        throw DomainError("plan_cell: cell outside grid");

    CellPlan plan;
    plan.cell = cell;
    const auto link = best_gateway(site.grid.cell_center(cell), site, 0.0, cell);
    if (!link)
        return plan;

    plan.best_gateway = link->gateway->id;
    plan.breakdown = link->breakdown;
    const double g_s = site.node_profile.antenna_gain_dbi;
    const double g_r = link->gateway->antenna_gain_dbi;
    plan.config = select_config(link->breakdown.total_db, g_s, g_r, site.config, objective);
    if (plan.config) {
        plan.link = evaluate_link(rssi(plan.config->txpower_dbm, g_s, g_r, link->breakdown.total_db), plan.config->sf,
                                  site.config.bandwidth_hz, site.config.noise_figure_db, site.config.link_margin_db);
        plan.covered = plan.link->feasible;
    }
    return plan;
}

CoverageSummary summarize(std::span<const CellPlan> cells, const SiteConfig& config)
{
    CoverageSummary s;
    s.total_cells = cells.size();
    double energy = 0.0;
    for (const auto& c : cells) {
        if (!c.covered || !c.config)
            continue;
        ++s.covered_cells;
        ++s.sf_histogram[c.config->sf];
        ++s.txpower_histogram[c.config->txpower_dbm];
        energy += energy_per_tx(time_on_air(*c.config), c.config->txpower_dbm, config);
    }
    if (s.total_cells > 0)
        s.coverage_fraction = static_cast<double>(s.covered_cells) / static_cast<double>(s.total_cells);
    if (s.covered_cells > 0)
        s.mean_energy_mj = energy / static_cast<double>(s.covered_cells);
    return s;
}

CoverageGrid plan_site(const Site& site, Objective objective, unsigned threads)
{
    require_valid(site);

    CoverageGrid out;
    out.grid = site.grid;
    out.cells.resize(site.grid.cell_count());

    const int rows = site.grid.ny;
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(rows));

    std::vector<std::exception_ptr> row_errors(static_cast<std::size_t>(rows));
    std::atomic<int> next_row{0};
    auto worker = [&] {
        for (int j = next_row++; j < rows; j = next_row++) {
            try {
                for (int i = 0; i < site.grid.nx; ++i)
                    out.cells[static_cast<std::size_t>(j) * site.grid.nx + i] = plan_cell({i, j}, site, objective);
            } catch (...) {
                row_errors[j] = std::current_exception();
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned k = 0; k < threads; ++k)
            pool.emplace_back(worker);
    }

    for (const auto& e : row_errors)
        if (e)
            std::rethrow_exception(e);

    out.summary = summarize(out.cells, site.config);
    return out;
}

} // namespace loraplan
