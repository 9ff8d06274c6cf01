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

#include <catch_amalgamated.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "json.hpp"
#include "loraplan/cli.hpp"
#include "loraplan/planner.hpp"
#include "loraplan/report.hpp"
#include "oracles.hpp"

using namespace loraplan;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir
{
  public:
    TempDir()
    {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("loraplan-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name, const std::string& content) const
    {
        std::ofstream(path_ / name, std::ios::binary) << content;
        return (path_ / name).string();
    }
    std::string operator/(const std::string& name) const { return (path_ / name).string(); }

  private:
    fs::path path_;
};

std::string slurp(const std::string& path) { return read_text_file(path); }

std::vector<std::vector<std::string>> read_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ','))
            row.push_back(field);
        if (!line.empty() && line.back() == ',')
            row.emplace_back();
        rows.push_back(std::move(row));
    }
    return rows;
}

double to_double(const std::string& s)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    REQUIRE(ec == std::errc{});
    REQUIRE(ptr == s.data() + s.size());
    return v;
}

// Open 868 MHz site with 2.15 dBi on both ends and a gateway 1 km east of the origin at node height.
Site open_link_site()
{
    auto site = fixture::open_site(10, 10, 100.0);
    site.node_profile.antenna_gain_dbi = 2.15;
    site.gateways = {{"gw-far", {1000, 0, 1.5}, 2.15}};
    return site;
}

} // namespace

TEST_CASE("validate exit codes", "[cli]")
{
    TempDir dir;
    auto r = cli({"validate", fixture::data_path("campus.json")});
    CHECK(r.code == exit_code::ok);
    CHECK(r.out.empty());

    auto site = fixture::open_site();
    site.obstructions.push_back(fixture::building("hall-7", {{0, 0, 0}, {10, 10, 0}, {10, 0, 0}, {0, 4, 0}}, 5.0));
    r = cli({"validate", dir.file("bad.json", serialize_site(site))});
    CHECK(r.code == exit_code::domain_failure);
    CHECK(r.out.find("obstruction 'hall-7'") != std::string::npos);

    CHECK(cli({"validate", dir / "missing.json"}).code == exit_code::io_failure);
    CHECK(cli({"validate", dir.file("broken.json", "{\"grid\": ")}).code == exit_code::io_failure);
    CHECK(cli({"validate", dir.file("unknown.json", "{\"grid\": {}, \"gateways\": [], \"x\": 1}")}).code ==
          exit_code::io_failure);
    CHECK(cli({}).code == exit_code::io_failure);
    CHECK(cli({"frobnicate"}).code == exit_code::io_failure);
    CHECK(cli({"--help"}).code == exit_code::ok);
}

TEST_CASE("plan writes a complete deterministic bundle", "[cli]")
{
    TempDir dir;
    const auto site_path = fixture::data_path("campus.json");
    REQUIRE(cli({"plan", site_path, "--out-dir", dir / "a"}).code == exit_code::ok);
    REQUIRE(cli({"plan", site_path, "--out-dir", dir / "b", "--threads", "1"}).code == exit_code::ok);
    for (const auto* name : {"coverage.csv", "rssi.pgm", "summary.json"})
        CHECK(slurp(dir / ("a/" + std::string(name))) == slurp(dir / ("b/" + std::string(name))));

    const auto rows = read_csv(slurp(dir / "a/coverage.csv"));
    REQUIRE(rows.size() == 10001);
    CHECK(rows[0].size() == 17);
    CHECK(rows[0][0] == "i");
    CHECK(rows[0][16] == "covered");

    std::size_t covered = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        REQUIRE(rows[k].size() == 17);
        covered += rows[k][16] == "1";
    }
    const auto summary = nlohmann::json::parse(slurp(dir / "a/summary.json"));
    CHECK(summary["total_cells"] == 10000);
    CHECK(summary["covered_cells"] == covered);
    CHECK(summary["coverage_fraction"].get<double>() == static_cast<double>(covered) / 10000.0);
    CHECK(summary["run"]["site_sha256"] == sha256_hex(slurp(site_path)));
    CHECK(summary["run"]["seed"] == 20240917);

    const auto pgm = slurp(dir / "a/rssi.pgm");
    CHECK(pgm.rfind("P2\n100 100\n255\n", 0) == 0);

    // Seed override is recorded.
    REQUIRE(cli({"plan", site_path, "--out-dir", dir / "c", "--seed", "7"}).code == exit_code::ok);
    CHECK(nlohmann::json::parse(slurp(dir / "c/summary.json"))["run"]["seed"] == 7);
}

TEST_CASE("coverage CSV numbers round-trip exactly", "[cli]")
{
    TempDir dir;
    auto site = parse_site(fixture::data_path("campus.json"));
    site.config.shadowing_sigma_db = 3.7;
    const auto path = dir.file("site.json", serialize_site(site));
    REQUIRE(cli({"plan", path, "--out-dir", dir / "out"}).code == exit_code::ok);

    const auto grid = plan_site(parse_site(path), Objective::min_airtime);
    const auto rows = read_csv(slurp(dir / "out/coverage.csv"));
    REQUIRE(rows.size() == grid.cells.size() + 1);
    for (std::size_t k = 0; k < grid.cells.size(); ++k) {
        const auto& row = rows[k + 1];
        const auto& cell = grid.cells[k];
        CHECK(to_double(row[5]) == cell.breakdown->base_db);
        CHECK(to_double(row[10]) == cell.breakdown->shadowing_db);
        CHECK(to_double(row[11]) == cell.breakdown->total_db);
        if (cell.covered) {
            CHECK(to_double(row[14]) == cell.link->rssi_dbm);
            CHECK(to_double(row[15]) == cell.link->sensitivity_dbm);
        } else {
            CHECK(row[12].empty());
        }
        for (std::size_t c = 2; c < row.size(); ++c)
            if (c != 4 && !row[c].empty())
                CHECK(format_number(to_double(row[c])) == row[c]);
    }
}

TEST_CASE("objectives differ only where the oracle says so", "[cli]")
{
    TempDir dir;
    const auto site_path = fixture::data_path("campus.json");
    const auto site = parse_site(site_path);
    REQUIRE(cli({"plan", site_path, "--out-dir", dir / "air"}).code == exit_code::ok);
    REQUIRE(cli({"plan", site_path, "--out-dir", dir / "nrg", "--objective", "min-energy"}).code == exit_code::ok);
    const auto air = read_csv(slurp(dir / "air/coverage.csv"));
    const auto nrg = read_csv(slurp(dir / "nrg/coverage.csv"));
    REQUIRE(air.size() == nrg.size());

    const double gs = site.node_profile.antenna_gain_dbi;
    const double gr = site.gateways[0].antenna_gain_dbi;
    int differing = 0;
    for (std::size_t k = 1; k < air.size(); ++k) {
        const double loss = to_double(air[k][11]);
        const auto want_air = oracle::brute_force_select(loss, gs, gr, site.config, Objective::min_airtime);
        const auto want_nrg = oracle::brute_force_select(loss, gs, gr, site.config, Objective::min_energy);
        if (want_air == want_nrg) {
            CHECK(air[k] == nrg[k]);
            continue;
        }
        ++differing;
        CHECK(air[k] != nrg[k]);
        CHECK(std::pair{std::stoi(air[k][12]), std::stoi(air[k][13])} == *want_air);
        CHECK(std::pair{std::stoi(nrg[k][12]), std::stoi(nrg[k][13])} == *want_nrg);
    }
    CHECK(differing > 0);
}

TEST_CASE("link command", "[cli]")
{
    TempDir dir;
    auto site = open_link_site();
    const auto path = dir.file("open.json", serialize_site(site));
    auto r = cli({"link", path, "--from", "0,0,1.5", "--to-gateway", "gw-far", "--sf", "7", "--txp", "14"});
    REQUIRE(r.code == exit_code::ok);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["link"]["rssi_dbm"].get<double>() == Approx(-72.92).margin(0.05));
    CHECK(j["breakdown"]["base_db"].get<double>() == Approx(oracle::friis_loss_db(1000.0, 868e6)).margin(0.01));
    CHECK(j["link"]["feasible"] == true);

    // Two 30 dB walls push the total to about 151 dB.
    site.config.material_loss_table[Material::concrete] = 30.0;
    site.obstructions.push_back(fixture::building("wall", fixture::rect(400, -50, 100, 100), 20.0));
    const auto walled = dir.file("walled.json", serialize_site(site));
    r = cli({"link", walled, "--from", "0,0,1.5", "--to-gateway", "gw-far", "--sf", "7", "--txp", "14"});
    REQUIRE(r.code == exit_code::ok);
    j = nlohmann::json::parse(r.out);
    CHECK(j["breakdown"]["total_db"].get<double>() == Approx(151.22).margin(0.01));
    CHECK(j["link"]["feasible"] == false);

    CHECK(cli({"link", path, "--from", "0,0,1.5", "--to-gateway", "gw-far", "--sf", "6", "--txp", "14"}).code ==
          exit_code::io_failure);
    CHECK(cli({"link", path, "--from", "0,0", "--to-gateway", "gw-far", "--sf", "7", "--txp", "14"}).code ==
          exit_code::io_failure);
    CHECK(cli({"link", path, "--from", "0,0,1.5", "--to-gateway", "gw-near", "--sf", "7", "--txp", "14"}).code ==
          exit_code::domain_failure);
    CHECK(cli({"link", path, "--from", "1000,0,1.5", "--to-gateway", "gw-far", "--sf", "7", "--txp", "14"}).code ==
          exit_code::domain_failure);
}

TEST_CASE("toa command", "[cli]")
{
    auto r = cli({"toa", "--sf", "7", "--bw", "125000", "--cr", "4/5", "--payload", "20"});
    REQUIRE(r.code == exit_code::ok);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["time_on_air_s"].get<double>() == Approx(0.05658).margin(1e-5));
    CHECK(j["data_rate_bps"].get<double>() == 5468.75);
    CHECK(j["min_interval_s"].get<double>() == Approx(5.658).margin(1e-3));

    r = cli({"toa", "--sf", "12"});
    REQUIRE(r.code == exit_code::ok);
    j = nlohmann::json::parse(r.out);
    CHECK(j["time_on_air_s"].get<double>() == Approx(1.319).margin(1e-3));
    CHECK(j["data_rate_bps"].get<double>() == Approx(292.97).margin(0.01));
    CHECK(j["min_interval_s"].get<double>() == Approx(131.9).margin(0.1));
    CHECK(j["low_data_rate_optimize"] == true);

    CHECK(cli({"toa", "--sf", "7", "--payload", "0"}).code == exit_code::io_failure);
    CHECK(cli({"toa", "--sf", "13"}).code == exit_code::io_failure);
    CHECK(cli({"toa", "--sf", "7", "--bw", "200000"}).code == exit_code::io_failure);
    CHECK(cli({"toa", "--sf", "7", "--cr", "4/9"}).code == exit_code::io_failure);
    CHECK(cli({"toa", "--sf", "7", "--duty-cycle", "0"}).code != exit_code::ok);
}

TEST_CASE("mobility command", "[cli]")
{
    TempDir dir;
    auto site = fixture::open_site(50, 10, 20.0);
    site.gateways[0].position = {500, 100, 20};
    const auto site_path = dir.file("open.json", serialize_site(site));
    const auto walk = dir.file("walk.json", R"([{"x": 20, "y": 100, "t": 0}, {"x": 980, "y": 100, "t": 480}])");

    auto r = cli({"mobility", site_path, walk, "--out-dir", dir / "m0"});
    REQUIRE(r.code == exit_code::ok);
    auto j = nlohmann::json::parse(slurp(dir / "m0/mobility_summary.json"));
    CHECK(j["connected_fraction"] == 1.0);
    CHECK(j["sf_switches"] == 0);
    const auto rows = read_csv(slurp(dir / "m0/profile.csv"));
    CHECK(rows[0] == std::vector<std::string>{"t", "x", "y", "speed", "total_db", "sf", "txp", "rssi", "connected"});
    CHECK(rows.size() == 482);

    // Pick alpha so that the speed penalty alone exceeds the SF12 @ 20 dBm budget at 2 m/s.
    const double budget = kMaxTxPowerDbm + site.node_profile.antenna_gain_dbi + site.gateways[0].antenna_gain_dbi -
                          sensitivity(12, site.config.bandwidth_hz, site.config.noise_figure_db) -
                          site.config.link_margin_db;
    const double alpha = budget / 2.0 + 1.0;
    r = cli({"mobility", site_path, walk, "--out-dir", dir / "m1", "--alpha", format_number(alpha)});
    REQUIRE(r.code == exit_code::ok);
    j = nlohmann::json::parse(slurp(dir / "m1/mobility_summary.json"));
    CHECK(j["connected_fraction"].get<double>() < 1.0);

    CHECK(cli({"mobility", site_path, dir.file("empty.json", "")}).code == exit_code::io_failure);
    CHECK(cli({"mobility", site_path, dir / "nope.json"}).code == exit_code::io_failure);
    CHECK(cli({"mobility", site_path, dir.file("one.json", R"([{"x": 1, "y": 1, "t": 0}])")}).code ==
          exit_code::domain_failure);
    CHECK(cli({"mobility", site_path, walk, "--interval", "0"}).code == exit_code::domain_failure);
}
