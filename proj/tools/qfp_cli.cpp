// SPDX-License-Identifier: Apache-2.0
//
// qfp command line: run JSON-configured tasks and the bundled gallery.
// Exit codes: 0 success, 1 usage/input error, 2 negative mathematical
// verdict (Falsified / Inconclusive / NotConverged / ThresholdExceeded,
// or gallery expectation mismatches).
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfp/config.hpp"
#include "qfp/errors.hpp"
#include "qfp/gallery.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw qfp::InputError("cannot open '" + tmp.string() + "' for writing");
        out << content;
    }
    fs::rename(tmp, path);
}

json load_config(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw qfp::InputError("cannot read config file '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw qfp::InputError("config '" + path.string() +
                              "' is not valid JSON: " + e.what());
    }
}

bool glob_match(const std::string& pattern, const std::string& text) {
    std::string re;
    for (char c : pattern) {
        switch (c) {
        case '*':
            re += ".*";
            break;
        case '?':
            re += '.';
            break;
        default:
            if (std::string("\\^$.|()[]{}+").find(c) != std::string::npos)
                re += '\\';
            re += c;
        }
    }
    return std::regex_match(text, std::regex(re));
}

int cmd_run(const fs::path& config_path, const fs::path& out_dir,
            std::optional<std::uint64_t> seed, bool trace) {
    json config = load_config(config_path);
    fs::path dir = out_dir;
    if (dir.empty() && config.is_object() && config.contains("out") &&
        config["out"].is_string())
        dir = config["out"].get<std::string>();
    if (dir.empty())
        dir = ".";
    fs::create_directories(dir);

    qfp::TaskResult result = qfp::run_task(config, seed, trace);
    write_atomic(dir / "report.json", result.report.dump(2) + "\n");
    if (result.trace_csv)
        write_atomic(dir / "trace.csv", *result.trace_csv);
    if (result.points_csv)
        write_atomic(dir / "points.csv", *result.points_csv);

    std::cout << "task: " << result.report.value("task", "?")
              << "  exit: " << result.exit_code << "\n"
              << "report: " << (dir / "report.json").string() << "\n";
    return result.exit_code;
}

int cmd_gallery(const std::string& filter, const fs::path& out_dir,
                std::uint64_t seed) {
    const auto entries = qfp::list_entries();
    bool any = false;
    bool all_met = true;
    std::printf("%-12s  %-7s  %s\n", "entry", "checks", "status");
    for (const auto& entry : entries) {
        if (!filter.empty() && !glob_match(filter, entry.label))
            continue;
        any = true;
        qfp::EntryReport report = qfp::run_entry(entry, seed);
        std::size_t ok = 0;
        for (const auto& c : report.checks)
            ok += c.ok ? 1 : 0;
        std::printf("%-12s  %2zu/%-2zu   %s\n", report.label.c_str(), ok,
                    report.checks.size(), report.all_met ? "all met" : "MISMATCH");
        if (!report.all_met) {
            all_met = false;
            for (const auto& c : report.checks)
                if (!c.ok)
                    std::printf("  failed: %s\n", c.name.c_str());
        }
        if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            write_atomic(out_dir / ("gallery_" + report.label + ".json"),
                         qfp::to_json(report).dump(2) + "\n");
        }
    }
    if (!any) {
        std::fprintf(stderr, "no entries match filter '%s'\n", filter.c_str());
        return 1;
    }
    return all_met ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixed-point iteration and contraction-class verification toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed_override;
    std::uint64_t seed_value = 0;
    bool trace = false;

    CLI::App* run = app.add_subcommand("run", "execute a JSON problem config");
    run->add_option("config", config_path, "path to the config file")->required();
    run->add_option("--out", out_dir, "output directory (default: config 'out' or .)");
    auto* seed_opt = run->add_option("--seed", seed_value, "override the config seed");
    run->add_flag("--trace", trace, "also write trace.csv");

    std::string filter;
    std::string gallery_out;
    std::uint64_t gallery_seed = 0;
    CLI::App* gallery = app.add_subcommand("gallery", "run bundled example entries");
    gallery->add_option("--filter", filter, "label glob, e.g. 'c*'");
    gallery->add_option("--out", gallery_out, "write per-entry JSON reports here");
    gallery->add_option("--seed", gallery_seed, "pair-sampling seed (default 0)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (seed_opt->count() > 0)
                seed_override = seed_value;
            return cmd_run(config_path, out_dir, seed_override, trace);
        }
        return cmd_gallery(filter, gallery_out, gallery_seed);
    } catch (const qfp::InputError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    } catch (const qfp::UnsupportedError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return 1;
    } catch (const qfp::DivergenceError& e) {
        std::fprintf(stderr, "divergence: %s\n", e.what());
        return 2;
    } catch (const qfp::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
