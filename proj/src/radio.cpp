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

#include "loraplan/radio.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace loraplan {

namespace {

void check_sf(int sf)
{
    if (sf < kMinSf || sf > kMaxSf)
        throw DomainError("spreading factor " + std::to_string(sf) + " outside [7, 12]");
}

} // namespace

double RadioConfig::symbol_time_s() const { return std::ldexp(1.0, sf) / bandwidth_hz; }

bool RadioConfig::low_data_rate_optimize() const { return symbol_time_s() >= 0.016; }

RadioConfig make_radio_config(int sf, int txpower_dbm, const SiteConfig& config)
{
    RadioConfig rc;
    rc.sf = sf;
    rc.txpower_dbm = txpower_dbm;
    rc.bandwidth_hz = config.bandwidth_hz;
    rc.coding_rate = config.coding_rate;
    rc.preamble_symbols = config.preamble_symbols;
    rc.payload_bytes = config.payload_bytes;
    return rc;
}

double rssi(double txpower_dbm, double g_s_dbi, double g_r_dbi, double path_loss_db)
{
    return txpower_dbm + g_s_dbi + g_r_dbi - path_loss_db;
}

double snr_limit_db(int sf)
{
    check_sf(sf);
    // -7.5 dB at SF7, 2.5 dB lower per step.
    return -7.5 - 2.5 * (sf - kMinSf);
}

double sensitivity(int sf, double bandwidth_hz, double noise_figure_db)
{
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db + snr_limit_db(sf);
}

LinkReport evaluate_link(double rssi_dbm, int sf, double bandwidth_hz, double noise_figure_db, double link_margin_db)
{
    LinkReport r;
    r.rssi_dbm = rssi_dbm;
    r.sensitivity_dbm = sensitivity(sf, bandwidth_hz, noise_figure_db);
    r.snr_margin_db = rssi_dbm - r.sensitivity_dbm;
    r.feasible = rssi_dbm >= r.sensitivity_dbm + link_margin_db;
    return r;
}

double time_on_air(const RadioConfig& config)
{
    check_sf(config.sf);
    const int sf = config.sf;
    const int payload = std::max(config.payload_bytes, 1);
    const int crc = config.crc_on ? 1 : 0;
    const int implicit_header = config.explicit_header ? 0 : 1;
    const int de = config.low_data_rate_optimize() ? 1 : 0;

    const double t_sym = config.symbol_time_s();
    const double num = 8.0 * payload - 4.0 * sf + 28.0 + 16.0 * crc - 20.0 * implicit_header;
    const double den = 4.0 * (sf - 2 * de);
    const double payload_symbols = 8.0 + std::max(std::ceil(num / den) * denominator(config.coding_rate), 0.0);
    return (config.preamble_symbols + 4.25 + payload_symbols) * t_sym;
}

double data_rate(int sf, double bandwidth_hz, CodingRate cr)
{
    check_sf(sf);
    return sf * (bandwidth_hz / std::ldexp(1.0, sf)) * (4.0 / denominator(cr));
}

double duty_cycle_min_interval(double toa_s, double duty_cycle_limit)
{
    if (!(toa_s > 0.0) || !(duty_cycle_limit > 0.0 && duty_cycle_limit <= 1.0))
        throw DomainError("duty_cycle_min_interval: need toa > 0 and limit in (0, 1]");
    return toa_s / duty_cycle_limit;
}

double tx_current_ma(int txpower_dbm, const TxCurrentTable& table)
{
    if (auto it = table.find(txpower_dbm); it != table.end())
        return it->second;
    auto upper = table.upper_bound(txpower_dbm);
    if (upper == table.begin() || upper == table.end())
        throw ConfigError("tx_current_table does not cover " + std::to_string(txpower_dbm) + " dBm");
    auto lower = std::prev(upper);
    const double f = static_cast<double>(txpower_dbm - lower->first) / (upper->first - lower->first);
    return lower->second + f * (upper->second - lower->second);
}

double energy_per_tx(double toa_s, int txpower_dbm, const SiteConfig& config)
{
    return toa_s * tx_current_ma(txpower_dbm, config.tx_current_table) * config.supply_voltage_v;
}

} // namespace loraplan
