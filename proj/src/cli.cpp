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

#include "loraplan/cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "loraplan/mobility.hpp"
#include "loraplan/planner.hpp"
#include "loraplan/report.hpp"
#include "loraplan/site.hpp"

namespace loraplan {

namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& content)
{
    std::error_code ec;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path(), ec);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f || !(f << content) || !f.flush())
        throw IoError("cannot write " + path.string());
}

Point3 parse_triple(const std::string& s)
{
    Point3 p;
    double* dst[] = {&p.x, &p.y, &p.z};
    const char* it = s.data();
    const char* end = s.data() + s.size();
    for (int k = 0; k < 3; ++k) {
        auto [next, ec] = std::from_chars(it, end, *dst[k]);
        if (ec != std::errc{} || !std::isfinite(*dst[k]))
            throw UsageError("--from expects x,y,h");
        it = next;
        if (k < 2) {
            if (it == end || *it != ',')
                throw UsageError("--from expects x,y,h");
            ++it;
        }
    }
    if (it != end)
        throw UsageError("--from expects x,y,h");
    return p;
}

struct LoadedSite
{
    Site site;
    std::string sha256;
};

LoadedSite load_site(const std::string& path, const std::optional<std::uint64_t>& seed)
{
    const auto text = read_text_file(path);
    LoadedSite out{parse_site_text(text), sha256_hex(text)};
    if (seed)
        out.site.config.rng_seed = *seed;
    return out;
}

// Prints violations and returns true when there are any.
bool report_violations(const std::vector<Violation>& violations, std::ostream& out)
{
    for (const auto& v : violations)
        out << v.to_string() << '\n';
    return !violations.empty();
}

struct PlanArgs
{
    std::string site;
    std::string objective = "min-airtime";
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
};

struct LinkArgs
{
    std::string site;
    std::string from;
    std::string gateway;
    int sf = 7;
    int txp = 14;
    std::optional<std::uint64_t> seed;
};

struct ToaArgs
{
    int sf = 7;
    double bw = 125000.0;
    std::string cr = "4/5";
    int payload = 20;
    int preamble = 8;
    double duty = 0.01;
    bool implicit_header = false;
    bool no_crc = false;
};

struct MobilityArgs
{
    std::string site;
    std::string trajectory;
    MobilityModel model;
    std::string objective = "min-airtime";
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
};

int cmd_validate(const std::string& path, std::ostream& out)
{
    const auto site = parse_site(path);
    return report_violations(validate_site(site), out) ? exit_code::domain_failure : exit_code::ok;
}

int cmd_plan(const PlanArgs& args, std::ostream& out)
{
    auto loaded = load_site(args.site, args.seed);
    if (report_violations(validate_site(loaded.site), out))
        return exit_code::domain_failure;
    const auto objective = *objective_from_string(args.objective);
    const auto grid = plan_site(loaded.site, objective, args.threads);
    const RunInfo run{loaded.sha256, loaded.site.config.rng_seed, objective};

    const fs::path dir(args.out_dir);
    write_file(dir / "coverage.csv", coverage_csv(grid));
    write_file(dir / "rssi.pgm", rssi_pgm(grid));
    write_file(dir / "summary.json", coverage_summary_json(grid, run));
    return exit_code::ok;
}

int cmd_link(const LinkArgs& args, std::ostream& out, std::ostream& err)
{
    const auto node = parse_triple(args.from);
    if (!(node.z > 0.0))
        throw UsageError("--from height must be positive");
    auto loaded = load_site(args.site, args.seed);
    if (report_violations(validate_site(loaded.site), out))
        return exit_code::domain_failure;
    const auto& site = loaded.site;
    const Gateway* gw = site.find_gateway(args.gateway);
    if (!gw) {
        err << "unknown gateway '" << args.gateway << "'\n";
        return exit_code::domain_failure;
    }
    const auto breakdown = total_path_loss(node, gw->position, site, 0.0, site.grid.cell_of(node.x, node.y));
    const auto config = make_radio_config(args.sf, args.txp, site.config);
    const double r = rssi(args.txp, site.node_profile.antenna_gain_dbi, gw->antenna_gain_dbi, breakdown.total_db);
    const auto link =
        evaluate_link(r, args.sf, site.config.bandwidth_hz, site.config.noise_figure_db, site.config.link_margin_db);
    out << link_report_json(gw->id, config, breakdown, link);
    return exit_code::ok;
}

int cmd_toa(const ToaArgs& args, std::ostream& out)
{
    RadioConfig rc;
    rc.sf = args.sf;
    rc.bandwidth_hz = args.bw;
    rc.coding_rate = *coding_rate_from_string(args.cr);
    rc.payload_bytes = args.payload;
    rc.preamble_symbols = args.preamble;
    rc.explicit_header = !args.implicit_header;
    rc.crc_on = !args.no_crc;

    const double toa = time_on_air(rc);
    nlohmann::ordered_json j;
    j["sf"] = rc.sf;
    j["bandwidth_hz"] = rc.bandwidth_hz;
    j["coding_rate"] = to_string(rc.coding_rate);
    j["payload_bytes"] = rc.payload_bytes;
    j["preamble_symbols"] = rc.preamble_symbols;
    j["explicit_header"] = rc.explicit_header;
    j["crc_on"] = rc.crc_on;
    j["low_data_rate_optimize"] = rc.low_data_rate_optimize();
    j["time_on_air_s"] = toa;
    j["data_rate_bps"] = data_rate(rc.sf, rc.bandwidth_hz, rc.coding_rate);
    j["duty_cycle_limit"] = args.duty;
    j["min_interval_s"] = duty_cycle_min_interval(toa, args.duty);
    out << j.dump(2) << '\n';
    return exit_code::ok;
}

int cmd_mobility(const MobilityArgs& args, std::ostream& out)
{
    auto loaded = load_site(args.site, args.seed);
    if (report_violations(validate_site(loaded.site), out))
        return exit_code::domain_failure;
    const auto& site = loaded.site;
    const auto traj_text = read_text_file(args.trajectory);
    const auto traj = parse_trajectory_text(traj_text, site.grid.node_height_m);
    auto violations = validate_trajectory(traj);
    auto model_violations = validate_mobility_model(args.model);
    violations.insert(violations.end(), model_violations.begin(), model_violations.end());
    if (report_violations(violations, out))
        return exit_code::domain_failure;

    const auto objective = *objective_from_string(args.objective);
    const auto profile = evaluate_path_profile(traj, site, args.model, objective);
    const auto report = mobility_report(profile, site);
    const MobilityRunInfo info{{loaded.sha256, site.config.rng_seed, objective}, sha256_hex(traj_text), args.model};

    const fs::path dir(args.out_dir);
    write_file(dir / "profile.csv", profile_csv(profile));
    write_file(dir / "mobility_summary.json", mobility_summary_json(report, info));
    return exit_code::ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"LoRaWAN site planning: coverage, link budgets, airtime and mobility profiles", "loraplan"};
    app.require_subcommand(1);
    const std::vector<std::string> objectives{"min-airtime", "min-energy"};

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a site file against every invariant");
    validate->add_option("site", validate_path, "Site file")->required();

    PlanArgs plan;
    auto* plan_cmd = app.add_subcommand("plan", "Plan SF/TX power for every grid cell");
    plan_cmd->add_option("site", plan.site, "Site file")->required();
    plan_cmd->add_option("--objective", plan.objective)->check(CLI::IsMember(objectives));
    plan_cmd->add_option("--out-dir", plan.out_dir);
    plan_cmd->add_option("--seed", plan.seed, "Override config.rng_seed");
    plan_cmd->add_option("--threads", plan.threads, "Worker threads (0 = all cores)");

    LinkArgs link;
    auto* link_cmd = app.add_subcommand("link", "Evaluate one node-to-gateway link");
    link_cmd->add_option("site", link.site, "Site file")->required();
    link_cmd->add_option("--from", link.from, "Node position x,y,h in meters")->required();
    link_cmd->add_option("--to-gateway", link.gateway)->required();
    link_cmd->add_option("--sf", link.sf)->required()->check(CLI::Range(kMinSf, kMaxSf));
    link_cmd->add_option("--txp", link.txp)->required()->check(CLI::Range(kMinTxPowerDbm, kMaxTxPowerDbm));
    link_cmd->add_option("--seed", link.seed, "Override config.rng_seed");

    ToaArgs toa;
    auto* toa_cmd = app.add_subcommand("toa", "Time on air, data rate and duty-cycle spacing");
    toa_cmd->add_option("--sf", toa.sf)->required()->check(CLI::Range(kMinSf, kMaxSf));
    toa_cmd->add_option("--bw", toa.bw, "Bandwidth in Hz")->check(CLI::IsMember({125000.0, 250000.0, 500000.0}));
    toa_cmd->add_option("--cr", toa.cr)->check(CLI::IsMember({"4/5", "4/6", "4/7", "4/8"}));
    toa_cmd->add_option("--payload", toa.payload)->check(CLI::Range(1, 255));
    toa_cmd->add_option("--preamble", toa.preamble)->check(CLI::Range(6, 65535));
    toa_cmd->add_option("--duty-cycle", toa.duty)->check(CLI::Range(0.0, 1.0));
    toa_cmd->add_flag("--implicit-header", toa.implicit_header);
    toa_cmd->add_flag("--no-crc", toa.no_crc);

    MobilityArgs mob;
    auto* mob_cmd = app.add_subcommand("mobility", "Evaluate a mobile node along a trajectory");
    mob_cmd->add_option("site", mob.site, "Site file")->required();
    mob_cmd->add_option("trajectory", mob.trajectory, "Trajectory file")->required();
    mob_cmd->add_option("--alpha", mob.model.alpha_db_per_mps, "Speed penalty, dB per m/s");
    mob_cmd->add_option("--interval", mob.model.sample_interval_s, "Sample interval, s");
    mob_cmd->add_option("--hysteresis", mob.model.hysteresis_db, "dB");
    mob_cmd->add_option("--dwell", mob.model.dwell_samples, "Samples");
    mob_cmd->add_option("--objective", mob.objective)->check(CLI::IsMember(objectives));
    mob_cmd->add_option("--out-dir", mob.out_dir);
    mob_cmd->add_option("--seed", mob.seed, "Override config.rng_seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (toa_cmd->parsed() && !(toa.duty > 0.0))
            throw UsageError("--duty-cycle must be in (0, 1]");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_code::io_failure;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::io_failure;
    }

    try {
        if (validate->parsed())
            return cmd_validate(validate_path, out);
        if (plan_cmd->parsed())
            return cmd_plan(plan, out);
        if (link_cmd->parsed())
            return cmd_link(link, out, err);
        if (toa_cmd->parsed())
            return cmd_toa(toa, out);
        if (mob_cmd->parsed())
            return cmd_mobility(mob, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::io_failure;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_code::io_failure;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return exit_code::io_failure;
    } catch (const ValidationError& e) {
        err << e.what() << '\n';
        return exit_code::domain_failure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::domain_failure;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return exit_code::domain_failure;
    }
    return exit_code::io_failure;
}

} // namespace loraplan
