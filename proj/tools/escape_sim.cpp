// escape-hatch: rollup escape hatch simulator
// Copyright 2026 The escape-hatch Authors.
// SPDX-License-Identifier: Apache-2.0

#include <escape/sim.hpp>
#include <escape/state/json.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace escape;
using nlohmann::json;

namespace
{
constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_input = 2;

int exit_code_for(Errc code)
{
    return code == Errc::ParseError || code == Errc::SchemaViolation ? exit_input : exit_failed;
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out{path, std::ios::binary};
    if (!out)
        fail(Errc::ParseError, path + ": cannot open for writing");
    out << text;
}

fs::path fixture_dir()
{
    if (const char* env = std::getenv("ESCAPE_SIM_FIXTURES"); env && *env)
        return env;
    return ESCAPE_DEFAULT_FIXTURE_DIR;
}

std::vector<fs::path> fixture_files()
{
    const auto dir = fixture_dir();
    if (!fs::is_directory(dir))
        fail(Errc::ParseError, dir.string() + ": fixture directory not found");
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator{dir})
        if (e.is_regular_file() && e.path().extension() == ".json")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

int cmd_run(const std::string& path, const std::string& report_path, std::optional<std::uint64_t> t_override,
    const std::string& world_path)
{
    const auto scenario = sim::load_scenario(path, t_override);
    const auto report = sim::run_scenario(scenario);
    if (report_path.empty())
        std::cout << report.text();
    else
    {
        write_text(report_path, report.text());
        std::cout << (report.passed ? "PASS " : "FAIL ") << scenario.name << "\n";
    }
    for (const auto& f : report.failures)
        std::cerr << scenario.name << ": " << f << "\n";
    if (!world_path.empty())
        write_text(world_path, state::world_to_json(report.final_world).dump(2) + "\n");
    return report.passed ? exit_ok : exit_failed;
}

int cmd_prove(const std::string& snapshot_path, const std::string& address, const std::vector<std::string>& slots)
{
    const auto doc = jsonio::parse_text(sim::read_file(snapshot_path), snapshot_path);
    const auto world = state::world_from_json(doc, snapshot_path);
    const auto who = jsonio::as_address(json(address), "address");
    std::vector<Word> keys;
    for (const auto& s : slots)
        keys.push_back(jsonio::as_word(json(s), "--slot"));
    std::cout << state::bundle_to_json(state::get_proof(world, who, keys)).dump(2) << "\n";
    return exit_ok;
}

int cmd_verify(const std::string& root_hex, const std::string& bundle_path)
{
    const auto root = jsonio::as_hash(json(root_hex), "root");
    const auto doc = jsonio::parse_text(sim::read_file(bundle_path), bundle_path);
    const auto bundle = state::bundle_from_json(doc, bundle_path);
    const auto verified = state::verify_bundle(root, bundle);

    std::cout << "account " << verified.address.hex() << ": ";
    if (verified.account)
        std::cout << "Included nonce=" << to_decimal(verified.account->nonce)
                  << " balance=" << to_decimal(verified.account->balance) << "\n";
    else
        std::cout << "Absent\n";
    for (const auto& [slot, value] : verified.slots)
    {
        std::cout << "slot " << slot.hex() << ": ";
        if (value)
            std::cout << "Included " << to_decimal(*value) << "\n";
        else
            std::cout << "Absent\n";
    }
    return exit_ok;
}

int cmd_fixtures_list()
{
    for (const auto& f : fixture_files())
        std::cout << f.stem().string() << "\n";
    return exit_ok;
}

int cmd_fixtures_run_all()
{
    int code = exit_ok;
    for (const auto& f : fixture_files())
    {
        try
        {
            const auto report = sim::run_scenario(sim::load_scenario(f));
            std::cout << (report.passed ? "PASS " : "FAIL ") << f.stem().string() << "\n";
            for (const auto& msg : report.failures)
                std::cout << "  " << msg << "\n";
            if (!report.passed)
                code = std::max(code, exit_failed);
        }
        catch (const Error& e)
        {
            std::cout << "ERROR " << f.stem().string() << ": " << e.what() << "\n";
            code = std::max(code, exit_code_for(e.code()));
        }
    }
    return code;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rollup escape hatch simulator"};
    app.require_subcommand(1);

    std::string scenario_path, report_path, world_path;
    std::optional<std::uint64_t> t_override;
    auto* run = app.add_subcommand("run", "Execute a scenario and emit its report");
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--report", report_path, "Write the report here instead of stdout");
    run->add_option("--t-override", t_override, "Escape delay T in seconds");
    run->add_option("--dump-world", world_path, "Write the final L2 world snapshot here");

    std::string snapshot_path, address;
    std::vector<std::string> slots;
    auto* prove = app.add_subcommand("prove", "Produce an eth_getProof-style bundle from a world snapshot");
    prove->add_option("snapshot", snapshot_path, "World snapshot JSON")->required();
    prove->add_option("address", address, "Account address")->required();
    prove->add_option("--slot", slots, "Storage slot key (repeatable)");

    std::string root_hex, bundle_path;
    auto* verify = app.add_subcommand("verify", "Verify a proof bundle against a state root");
    verify->add_option("root", root_hex, "State root")->required();
    verify->add_option("bundle", bundle_path, "Bundle JSON file")->required();

    auto* fixtures = app.add_subcommand("fixtures", "Work with the bundled fixture scenarios");
    fixtures->require_subcommand(1);
    auto* list = fixtures->add_subcommand("list", "List fixture names");
    auto* run_all = fixtures->add_subcommand("run-all", "Run every fixture");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try
    {
        if (*run)
            return cmd_run(scenario_path, report_path, t_override, world_path);
        if (*prove)
            return cmd_prove(snapshot_path, address, slots);
        if (*verify)
            return cmd_verify(root_hex, bundle_path);
        if (*list)
            return cmd_fixtures_list();
        if (*run_all)
            return cmd_fixtures_run_all();
    }
    catch (const Error& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    return exit_ok;
}
