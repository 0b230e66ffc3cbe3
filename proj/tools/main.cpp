// Command-line driver: generate puzzle instances, print oracle solutions,
// execute experiment runs against a provider, and score logs into the report
// bundle.
//
// Exit codes: 0 success, 2 usage/argument error, 3 unsolvable oracle query,
// 4 I/O failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "puzzlebench/core.hpp"
#include "puzzlebench/environments.hpp"
#include "puzzlebench/report.hpp"
#include "puzzlebench/runner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kUnsolvable = 3;
constexpr int kIo = 4;

// Inclusive "a..b" range, or a single "n".
std::optional<std::pair<int, int>> parse_range(const std::string& text) {
    try {
        const auto dots = text.find("..");
        if (dots == std::string::npos) {
            const int n = std::stoi(text);
            return std::make_pair(n, n);
        }
        const int lo = std::stoi(text.substr(0, dots));
        const int hi = std::stoi(text.substr(dots + 2));
        if (lo < 1 || hi < lo) return std::nullopt;
        return std::make_pair(lo, hi);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::optional<std::vector<int>> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            const int v = std::stoi(item);
            if (v < 1) return std::nullopt;
            out.push_back(v);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (out.empty()) return std::nullopt;
    return out;
}

struct GenArgs {
    std::string puzzle;
    std::string range;
    int k = 0;
    int stacks = 0;
    std::string out_dir;
};

struct OracleArgs {
    std::string puzzle;
    std::string range;
    int k = 0;
    int stacks = 0;
};

struct RunArgs {
    std::string manifest_path;
    std::string log_path;
    bool resume = false;
    bool quiet = false;
    std::string asset_dir;
};

struct ReportArgs {
    std::vector<std::string> runs;
    std::string out_dir;
    std::string manifest_override;
    std::string bpe_vocab;
    int bins = 10;
    std::string k_list = "1,2,4,8,16,25";
};

pzb::Params params_from(int k, int stacks) {
    pzb::Params params;
    if (k > 0) params["k"] = k;
    if (stacks > 0) params["stacks"] = stacks;
    return params;
}

int cmd_gen(const GenArgs& args) {
    auto kind = pzb::puzzle_kind_from_string(args.puzzle);
    if (!kind) {
        std::cerr << "unknown puzzle: " << args.puzzle << '\n';
        return kUsage;
    }
    auto range = parse_range(args.range);
    if (!range) {
        std::cerr << "invalid range: " << args.range << " (expected a..b or n)\n";
        return kUsage;
    }
    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);
    if (ec) {
        std::cerr << "cannot create " << args.out_dir << ": " << ec.message() << '\n';
        return kIo;
    }
    const auto& env = pzb::environment_for(*kind);
    const pzb::Params params = params_from(args.k, args.stacks);
    for (int n = range->first; n <= range->second; ++n) {
        pzb::PuzzleInstance inst;
        try {
            inst = env.make_instance(n, params);
        } catch (const std::invalid_argument& e) {
            std::cerr << "cannot build " << args.puzzle << " N=" << n << ": " << e.what()
                      << '\n';
            return kUsage;
        }
        char name[64];
        std::snprintf(name, sizeof(name), "%s_n%02d.json", pzb::to_string(*kind).c_str(), n);
        const std::filesystem::path path = std::filesystem::path(args.out_dir) / name;
        std::ofstream out(path, std::ios::trunc);
        if (!out) {
            std::cerr << "cannot write " << path.string() << '\n';
            return kIo;
        }
        out << pzb::instance_to_json(inst).dump(2) << '\n';
        std::cout << "wrote " << path.string() << '\n';
    }
    return kOk;
}

int cmd_oracle(const OracleArgs& args) {
    auto kind = pzb::puzzle_kind_from_string(args.puzzle);
    if (!kind) {
        std::cerr << "unknown puzzle: " << args.puzzle << '\n';
        return kUsage;
    }
    auto range = parse_range(args.range);
    if (!range || range->first != range->second) {
        std::cerr << "oracle expects a single size via --n\n";
        return kUsage;
    }
    pzb::PuzzleInstance inst;
    try {
        inst = pzb::environment_for(*kind).make_instance(range->first,
                                                         params_from(args.k, args.stacks));
    } catch (const std::invalid_argument& e) {
        std::cerr << "cannot build " << args.puzzle << " N=" << range->first << ": "
                  << e.what() << '\n';
        return kUsage;
    }
    const pzb::SolveResult solved = pzb::environment_for(*kind).solve(inst);
    switch (solved.status) {
        case pzb::SolveResult::Status::solved:
            std::cout << pzb::format_move_list(*kind, solved.moves) << '\n';
            return kOk;
        case pzb::SolveResult::Status::unsolvable:
            std::cout << "UNSOLVABLE\n";
            return kUnsolvable;
        case pzb::SolveResult::Status::range_exceeded:
            std::cerr << "no oracle for " << args.puzzle << " at N=" << range->first
                      << " (search space too large)\n";
            return kUsage;
    }
    return kUsage;
}

int cmd_run(const RunArgs& args) {
    pzb::ExperimentManifest manifest = pzb::load_manifest(args.manifest_path);
    pzb::RecordLog log(args.log_path);
    if (!args.resume && !log.records().empty()) {
        std::cerr << "log " << args.log_path
                  << " already contains records; pass --resume to continue the run\n";
        return kUsage;
    }
    // Keep a sibling manifest copy so the log can be scored on its own later.
    pzb::save_manifest(manifest, args.log_path + ".manifest.json");
    const pzb::PromptLibrary prompts(args.asset_dir.empty()
                                         ? pzb::PromptLibrary::default_asset_dir()
                                         : args.asset_dir);
    pzb::RunOptions options;
    if (!args.quiet) options.progress = &std::cerr;
    const pzb::RunStats stats = pzb::execute_run(manifest, prompts, log, options);
    std::cout << "requested " << stats.requested << ", already present "
              << stats.already_present << ", completed " << stats.completed
              << ", transport failures " << stats.transport_failures << '\n';
    return kOk;
}

int cmd_report(const ReportArgs& args) {
    auto k_list = parse_int_list(args.k_list);
    if (!k_list) {
        std::cerr << "invalid --k-list: " << args.k_list << '\n';
        return kUsage;
    }
    if (args.bins < 2) {
        std::cerr << "--bins must be at least 2\n";
        return kUsage;
    }
    const pzb::Tokenizer tokenizer = args.bpe_vocab.empty()
                                         ? pzb::Tokenizer::character()
                                         : pzb::Tokenizer::bpe_from_file(args.bpe_vocab);
    std::vector<pzb::AttemptScore> scores;
    std::vector<pzb::PuzzleInstance> instances;
    std::set<std::string> seen_instances;
    for (const std::string& log_path : args.runs) {
        const std::vector<pzb::RunRecord> records = pzb::read_records(log_path);
        const std::string manifest_path = args.manifest_override.empty()
                                              ? log_path + ".manifest.json"
                                              : args.manifest_override;
        const pzb::ExperimentManifest manifest = pzb::load_manifest(manifest_path);
        std::vector<pzb::AttemptScore> part = pzb::score_log(records, manifest, tokenizer);
        scores.insert(scores.end(), std::make_move_iterator(part.begin()),
                      std::make_move_iterator(part.end()));
        for (auto& [inst, variant] : pzb::expand_sweep(manifest)) {
            if (seen_instances.insert(inst.instance_id).second) {
                instances.push_back(std::move(inst));
            }
        }
    }
    pzb::ReportOptions options;
    options.bins = args.bins;
    options.k_list = *k_list;
    pzb::write_report_bundle(scores, instances, args.out_dir, options);
    std::cout << "report written to " << args.out_dir << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Puzzle evaluation harness: simulators, oracles, runs and reports"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate instance files for a size sweep");
    gen->add_option("--puzzle", gen_args.puzzle, "hanoi | checkers | river | blocks")
        ->required();
    gen->add_option("--n", gen_args.range, "size or inclusive range a..b")->required();
    gen->add_option("--k", gen_args.k, "river boat capacity (2 or 3)");
    gen->add_option("--stacks", gen_args.stacks, "blocks stack count (default 3)");
    gen->add_option("--out", gen_args.out_dir, "output directory")->required();

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle", "Print the oracle solution for one size");
    oracle->add_option("--puzzle", oracle_args.puzzle, "hanoi | checkers | river | blocks")
        ->required();
    oracle->add_option("--n", oracle_args.range, "puzzle size")->required();
    oracle->add_option("--k", oracle_args.k, "river boat capacity (2 or 3)");
    oracle->add_option("--stacks", oracle_args.stacks, "blocks stack count (default 3)");

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Execute an experiment manifest");
    run->add_option("--manifest", run_args.manifest_path, "experiment manifest JSON")
        ->required();
    run->add_option("--log", run_args.log_path, "JSONL record log (appended)")->required();
    run->add_flag("--resume", run_args.resume, "continue a partially completed run");
    run->add_flag("--quiet", run_args.quiet, "suppress progress output");
    run->add_option("--assets", run_args.asset_dir, "prompt asset directory override");

    ReportArgs report_args;
    CLI::App* report = app.add_subcommand("report", "Score logs and emit the report bundle");
    report->add_option("--runs", report_args.runs, "record log path (repeatable)")
        ->required();
    report->add_option("--out", report_args.out_dir, "report output directory")->required();
    report->add_option("--manifest", report_args.manifest_override,
                       "manifest path override (default: <log>.manifest.json)");
    report->add_option("--bins", report_args.bins, "positional-analysis bin count");
    report->add_option("--k-list", report_args.k_list,
                       "comma-separated k values for pass@k");
    report->add_option("--bpe-vocab", report_args.bpe_vocab,
                       "tokenizer vocabulary for positional normalization");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_args);
        if (oracle->parsed()) return cmd_oracle(oracle_args);
        if (run->parsed()) return cmd_run(run_args);
        if (report->parsed()) return cmd_report(report_args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
    return kUsage;
}
