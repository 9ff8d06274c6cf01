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

#ifndef LORAPLAN_RADIO_HPP
#define LORAPLAN_RADIO_HPP

#include "loraplan/site.hpp"

namespace loraplan {

inline constexpr int kMinSf = 7;
inline constexpr int kMaxSf = 12;
inline constexpr int kMinTxPowerDbm = 2;
inline constexpr int kMaxTxPowerDbm = 20;
inline constexpr int kSfCount = kMaxSf - kMinSf + 1;
inline constexpr int kTxPowerCount = kMaxTxPowerDbm - kMinTxPowerDbm + 1;

struct RadioConfig
{
    int sf = kMinSf;
    int txpower_dbm = kMinTxPowerDbm;
    double bandwidth_hz = 125000.0;
    CodingRate coding_rate = CodingRate::cr4_5;
    int preamble_symbols = 8;
    int payload_bytes = 20;
    bool explicit_header = true;
    bool crc_on = true;

    double symbol_time_s() const;
    /// Low data rate optimization engages at symbol times of 16 ms and above.
    bool low_data_rate_optimize() const;

    bool operator==(const RadioConfig&) const = default;
};

/// Radio config with the given SF and power and the site's framing.
RadioConfig make_radio_config(int sf, int txpower_dbm, const SiteConfig& config);

struct LinkReport
{
    double rssi_dbm = 0.0;
    double sensitivity_dbm = 0.0;
    double snr_margin_db = 0.0;
    bool feasible = false;

    bool operator==(const LinkReport&) const = default;
};

/// RSSI = TxP + g_s + g_r - P.
double rssi(double txpower_dbm, double g_s_dbi, double g_r_dbi, double path_loss_db);

/// Demodulation SNR floor per SF, dB.
double snr_limit_db(int sf);

double sensitivity(int sf, double bandwidth_hz, double noise_figure_db);

LinkReport evaluate_link(double rssi_dbm, int sf, double bandwidth_hz, double noise_figure_db, double link_margin_db);

/// Packet duration, seconds.
double time_on_air(const RadioConfig& config);

/// Raw bit rate, bits/s.
double data_rate(int sf, double bandwidth_hz, CodingRate cr);

double duty_cycle_min_interval(double toa_s, double duty_cycle_limit);

/// Supply current at an integer TX power, interpolating between table anchors.
/// Throws ConfigError outside the anchored range.
double tx_current_ma(int txpower_dbm, const TxCurrentTable& table);

/// Millijoules for one transmission.
double energy_per_tx(double toa_s, int txpower_dbm, const SiteConfig& config);

} // namespace loraplan

#endif
