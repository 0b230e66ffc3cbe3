// Acceptance gate for the harness: nine end-to-end criteria covering the
// solvers, the extraction rules, the synthetic end-to-end path, the pass@k
// estimator, report determinism, and positional-analysis mechanics. Prints
// one PASS/FAIL line per criterion and exits nonzero if any criterion fails.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "puzzlebench/environments.hpp"
#include "puzzlebench/evaluation.hpp"
#include "puzzlebench/extraction.hpp"
#include "puzzlebench/gateway.hpp"
#include "puzzlebench/prompts.hpp"
#include "puzzlebench/report.hpp"
#include "puzzlebench/runner.hpp"
#include "puzzlebench/runstore.hpp"

using namespace pzb;

namespace {

// ---------------------------------------------------------------------------
// Tiny checking harness
// ---------------------------------------------------------------------------

struct Expect {
    std::vector<std::string> problems;

    void require(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }

    template <typename A, typename B>
    void equal(const A& actual, const B& expected, const std::string& what) {
        if (!(actual == static_cast<A>(expected))) {
            std::ostringstream msg;
            msg << what << " (got " << actual << ", expected " << expected << ")";
            problems.push_back(msg.str());
        }
    }
};

bool run_criterion(int number, const std::string& title,
                   const std::function<void(Expect&)>& body,
                   double limit_seconds = 0.0) {
    Expect expect;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(expect);
    } catch (const std::exception& e) {
        expect.problems.push_back(std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0.0 && seconds > limit_seconds) {
        std::ostringstream msg;
        msg << "runtime " << seconds << "s exceeds the " << limit_seconds << "s budget";
        expect.problems.push_back(msg.str());
    }
    std::ostringstream line;
    if (expect.problems.empty()) {
        line << "PASS criterion " << number << ": " << title;
    } else {
        line << "FAIL criterion " << number << ": " << title << " — "
             << expect.problems.size() << " problem(s), first: " << expect.problems.front();
    }
    char timing[32];
    std::snprintf(timing, sizeof(timing), " [%.2fs]", seconds);
    std::cout << line.str() << timing << std::endl;
    return expect.problems.empty();
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        static std::atomic<int> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("pzb_acc_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// LIFO tag-stack well-formedness scan (attribute quotes respected).
bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    if (text.rfind("<?xml", 0) == 0) {
        i = text.find("?>");
        if (i == std::string::npos) return false;
        i += 2;
    }
    while (i < text.size()) {
        char c = text[i];
        if (c == '<') {
            std::size_t end = i + 1;
            bool in_quote = false;
            char quote = 0;
            while (end < text.size() && (in_quote || text[end] != '>')) {
                if (in_quote) {
                    if (text[end] == quote) in_quote = false;
                } else if (text[end] == '"' || text[end] == '\'') {
                    in_quote = true;
                    quote = text[end];
                } else if (text[end] == '<') {
                    return false;
                }
                ++end;
            }
            if (end >= text.size()) return false;
            std::string tag = text.substr(i + 1, end - i - 1);
            if (tag.empty()) return false;
            if (tag.front() == '/') {
                if (stack.empty() || stack.back() != tag.substr(1)) return false;
                stack.pop_back();
            } else if (tag.back() == '/' || tag.front() == '!' || tag.front() == '?') {
                // self-closing / comment / declaration
            } else {
                stack.push_back(tag.substr(0, tag.find_first_of(" \t\r\n")));
            }
            i = end + 1;
        } else if (c == '&') {
            std::size_t semi = text.find(';', i);
            if (semi == std::string::npos || semi - i > 8) return false;
            i = semi + 1;
        } else {
            ++i;
        }
    }
    return stack.empty();
}

const PromptLibrary& library() {
    static PromptLibrary lib;
    return lib;
}

// ---------------------------------------------------------------------------
// Criteria 1..4: solvers and oracles
// ---------------------------------------------------------------------------

void criterion_hanoi(Expect& e) {
    const Environment& env = environment_for(PuzzleKind::hanoi);
    for (int n = 1; n <= 12; ++n) {
        const PuzzleInstance inst = env.make_instance(n);
        const SolveResult solved = env.solve(inst);
        e.require(solved.status == SolveResult::Status::solved,
                  "hanoi N=" + std::to_string(n) + " did not solve");
        if (solved.status != SolveResult::Status::solved) continue;
        e.equal(solved.moves.size(), (std::size_t{1} << n) - 1,
                "hanoi N=" + std::to_string(n) + " move count");
        e.require(env.apply_solution(inst, solved.moves).success,
                  "hanoi N=" + std::to_string(n) + " solution does not validate");
    }
}

void criterion_checkers(Expect& e) {
    const Environment& env = environment_for(PuzzleKind::checkers);
    for (int n = 1; n <= 5; ++n) {
        const PuzzleInstance inst = env.make_instance(n);
        const SolveResult solved = env.solve(inst);
        e.require(solved.status == SolveResult::Status::solved,
                  "checkers N=" + std::to_string(n) + " did not solve");
        if (solved.status != SolveResult::Status::solved) continue;
        e.equal(solved.moves.size(), static_cast<std::size_t>((n + 1) * (n + 1) - 1),
                "checkers N=" + std::to_string(n) + " shortest length");
        e.require(env.apply_solution(inst, solved.moves).success,
                  "checkers N=" + std::to_string(n) + " solution does not validate");
    }
}

void criterion_river(Expect& e) {
    const Environment& env = environment_for(PuzzleKind::river);
    auto shortest = [&](int n) {
        const PuzzleInstance inst = env.make_instance(n);
        const SolveResult solved = env.solve(inst);
        e.require(solved.status == SolveResult::Status::solved,
                  "river n=" + std::to_string(n) + " did not solve");
        if (solved.status == SolveResult::Status::solved) {
            e.require(env.apply_solution(inst, solved.moves).success,
                      "river n=" + std::to_string(n) + " solution does not validate");
            return solved.moves.size();
        }
        return std::size_t{0};
    };
    e.equal(shortest(2), std::size_t{5}, "river n=2 k=2 shortest length");
    e.equal(shortest(3), std::size_t{11}, "river n=3 k=2 shortest length");
    shortest(4);  // n=4 k=3 must be solvable and validate
    shortest(5);  // n=5 k=3 must be solvable and validate
    const SolveResult impossible = env.solve(env.make_instance(6));
    e.require(impossible.status == SolveResult::Status::unsolvable,
              "river n=6 k=3 must be reported unsolvable");
}

void criterion_blocks(Expect& e) {
    const Environment& env = environment_for(PuzzleKind::blocks);
    for (int n = 2; n <= 8; ++n) {
        const PuzzleInstance inst = env.make_instance(n);
        const SolveResult solved = env.solve(inst);
        e.require(solved.status == SolveResult::Status::solved,
                  "blocks N=" + std::to_string(n) + " did not solve");
        if (solved.status != SolveResult::Status::solved) continue;
        e.require(env.apply_solution(inst, solved.moves).success,
                  "blocks N=" + std::to_string(n) + " optimal plan does not validate");
        e.require(inst.min_moves && solved.moves.size() == *inst.min_moves,
                  "blocks N=" + std::to_string(n) + " plan is not the optimal length");
    }
    // The constructive planner keeps producing valid (not necessarily
    // optimal) plans far past the search bound.
    for (int n : {12, 25, 40}) {
        const PuzzleInstance inst = env.make_instance(n);
        const SolveResult solved = env.solve(inst);
        e.require(solved.status == SolveResult::Status::solved,
                  "blocks N=" + std::to_string(n) + " constructive plan missing");
        if (solved.status == SolveResult::Status::solved) {
            e.require(env.apply_solution(inst, solved.moves).success,
                      "blocks N=" + std::to_string(n) + " constructive plan invalid");
        }
    }
    const auto depth = depth_table(PuzzleKind::blocks, 2, 20);
    e.equal(depth.size(), std::size_t{19}, "depth table row count");
    std::uint64_t previous = 0;
    for (const DepthRow& row : depth) {
        if (row.size_n <= 8) {
            e.require(row.required_moves.has_value(),
                      "blocks depth must be known for N=" + std::to_string(row.size_n));
        } else {
            e.require(!row.required_moves.has_value(),
                      "blocks depth beyond the search bound must be absent (N=" +
                          std::to_string(row.size_n) + ")");
        }
        if (row.required_moves) {
            e.require(*row.required_moves >= previous,
                      "blocks depth decreased at N=" + std::to_string(row.size_n));
            previous = *row.required_moves;
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 5: extraction fixtures
// ---------------------------------------------------------------------------

void criterion_extraction(Expect& e) {
    {
        const std::string text =
            "Example: With 3 disks numbered 1 (smallest), 2, and 3 (largest), the "
            "initial state is [[3, 2, 1], [], []], and a solution might be:\n\n"
            "moves = [[1, 0, 2], [2, 0, 1], [1, 2, 1], [3, 0, 2],\n"
            "         [1, 1, 0], [2, 1, 2], [1, 0, 2]]\n\n"
            "This means: Move disk 1 from peg 0 to peg 2, then move disk 2 from peg 0 "
            "to peg 1, and so on.";
        const auto result = extract(text, PuzzleKind::hanoi, SolutionSource::final_answer);
        const MoveList expected = {HanoiMove{1, 0, 2}, HanoiMove{2, 0, 1},
                                   HanoiMove{1, 2, 1}, HanoiMove{3, 0, 2},
                                   HanoiMove{1, 1, 0}, HanoiMove{2, 1, 2},
                                   HanoiMove{1, 0, 2}};
        e.require(result.solutions.size() == 1 && result.solutions[0].moves == expected,
                  "hanoi example list not recovered from prose");
    }
    {
        const std::string text =
            "Your solution should be a list of moves. For example:\n\n"
            "moves = [['R', 0, 1], ['B', 2, 0], ['R', 1, 2]]\n\n"
            "This means: Move the red checker from position 0 to 1, and so on.";
        const auto result = extract(text, PuzzleKind::checkers, SolutionSource::final_answer);
        const MoveList expected = {CheckersMove{'R', 0, 1}, CheckersMove{'B', 2, 0},
                                   CheckersMove{'R', 1, 2}};
        e.require(result.solutions.size() == 1 && result.solutions[0].moves == expected,
                  "checkers example list not recovered from prose");
    }
    {
        const std::string text =
            "For example, if there were two actors and two agents, you should "
            "return:\n\n"
            "moves=[[\"A_2\", \"a_2\"], [\"A_2\"], [\"A_1\", \"A_2\"], [\"A_1\"], "
            "[\"A_1\", \"a_1\"]]\n\n"
            "which indicates that in the first move, A_2 and a_2 row from left to "
            "right.";
        const auto result = extract(text, PuzzleKind::river, SolutionSource::final_answer);
        const MoveList expected = {RiverMove{{"A_2", "a_2"}}, RiverMove{{"A_2"}},
                                   RiverMove{{"A_1", "A_2"}}, RiverMove{{"A_1"}},
                                   RiverMove{{"A_1", "a_1"}}};
        e.require(result.solutions.size() == 1 && result.solutions[0].moves == expected,
                  "river example list not recovered from prose");
    }
    {
        const std::string text =
            "Example: With initial state [[\"A\", \"B\"], [\"C\"], []] and goal state "
            "[[\"A\"], [\"B\"], [\"C\"]], a solution might be:\n\n"
            "moves = [[\"C\", 1, 2], [\"B\", 0, 1]]\n\n"
            "This means: Move block C from stack 1 to stack 2, then move block B from "
            "stack 0 to stack 1.";
        const auto result = extract(text, PuzzleKind::blocks, SolutionSource::final_answer);
        const MoveList expected = {BlocksMove{"C", 1, 2}, BlocksMove{"B", 0, 1}};
        e.require(result.solutions.size() == 1 && result.solutions[0].moves == expected,
                  "blocks example list not recovered from prose");
    }
    {
        const std::string text =
            "moves = [[1, 0, 2],  # move the small disk out of the way\n"
            "         [2, 0, 1]]  # then the medium disk\n";
        const auto result = extract(text, PuzzleKind::hanoi, SolutionSource::final_answer);
        const MoveList expected = {HanoiMove{1, 0, 2}, HanoiMove{2, 0, 1}};
        e.require(result.solutions.size() == 1 && result.solutions[0].moves == expected,
                  "comment stripping fixture failed");
    }
    {
        const std::string text =
            "First try:\nmoves = [[1, 0, 2], [2, 0, 1]]\n"
            "Checking again:\nmoves = [[1, 0, 2], [2, 0, 1]]\n"
            "Full answer:\nmoves = [[1, 0, 2], [2, 0, 1], [1, 2, 1]]\n";
        const auto result = extract(text, PuzzleKind::hanoi, SolutionSource::thinking);
        e.require(result.solutions.size() == 2,
                  "dedup fixture must keep two distinct solutions");
        if (result.solutions.size() == 2) {
            e.require(result.solutions[0].span_begin == text.find("moves = "),
                      "dedup must keep the FIRST occurrence of a duplicated solution");
            e.equal(result.solutions[1].moves.size(), std::size_t{3},
                    "dedup fixture second solution length");
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 6: synthetic end-to-end
// ---------------------------------------------------------------------------

ExperimentManifest synthetic_manifest(ProviderKind provider, const std::string& run_id,
                                      int samples) {
    ExperimentManifest m;
    m.run_id = run_id;
    m.provider.kind = provider;
    m.provider.model_id =
        provider == ProviderKind::oracle_synthetic ? "oracle" : "corruptor";
    m.provider.samples_per_instance = samples;
    m.provider.parallelism = 2;
    auto entry = [](PuzzleKind kind, int lo, int hi) {
        SweepEntry s;
        s.kind = kind;
        s.n_lo = lo;
        s.n_hi = hi;
        return s;
    };
    if (provider == ProviderKind::oracle_synthetic) {
        m.sweep = {entry(PuzzleKind::hanoi, 1, 8), entry(PuzzleKind::checkers, 1, 4),
                   entry(PuzzleKind::river, 2, 5), entry(PuzzleKind::blocks, 2, 10)};
    } else {
        // Every size here needs at least three moves so corrupt_index 2 is
        // never clamped.
        m.sweep = {entry(PuzzleKind::hanoi, 2, 5), entry(PuzzleKind::checkers, 1, 3),
                   entry(PuzzleKind::river, 2, 4), entry(PuzzleKind::blocks, 2, 6)};
    }
    return m;
}

void criterion_synthetic(Expect& e) {
    TempDir tmp;
    const Tokenizer tokenizer = Tokenizer::character();

    const ExperimentManifest oracle =
        synthetic_manifest(ProviderKind::oracle_synthetic, "acc-oracle", 2);
    {
        RecordLog log(tmp.file("oracle.jsonl"));
        execute_run(oracle, library(), log);
    }
    const auto oracle_scores =
        score_log(read_records(tmp.file("oracle.jsonl")), oracle, tokenizer);
    const MetricTable oracle_table = aggregate(oracle_scores, {1, 2});
    e.equal(oracle_table.size(), std::size_t{25}, "oracle sweep row count");
    for (const auto& [key, row] : oracle_table) {
        const std::string where =
            to_string(key.kind) + " N=" + std::to_string(key.size_n);
        e.require(row.accuracy == 1.0, "oracle accuracy must be 1.0 at " + where);
        e.equal(row.correct, row.samples, "oracle correct count at " + where);
        e.require(row.failure_histogram.empty(), "oracle run must have no failures");
    }

    const int corrupt_at = 2;
    ExperimentManifest corrupting =
        synthetic_manifest(ProviderKind::corrupting_synthetic, "acc-corrupt", 2);
    corrupting.provider.corrupt_index = corrupt_at;
    {
        RecordLog log(tmp.file("corrupt.jsonl"));
        execute_run(corrupting, library(), log);
    }
    const auto broken_scores =
        score_log(read_records(tmp.file("corrupt.jsonl")), corrupting, tokenizer);
    const MetricTable broken_table = aggregate(broken_scores, {1});
    e.equal(broken_table.size(), std::size_t{15}, "corrupting sweep row count");
    for (const auto& [key, row] : broken_table) {
        const std::string where =
            to_string(key.kind) + " N=" + std::to_string(key.size_n);
        e.require(row.accuracy == 0.0, "corrupted accuracy must be 0.0 at " + where);
        e.equal(row.correct, 0, "corrupted correct count at " + where);
        // Point mass: every failed sample fails at exactly the corrupt index.
        e.require(row.failure_histogram.size() == 1 &&
                      row.failure_histogram.count(corrupt_at) == 1 &&
                      row.failure_histogram.at(corrupt_at) == row.samples,
                  "first-failure point mass must sit at " +
                      std::to_string(corrupt_at) + " for " + where);
    }
}

// ---------------------------------------------------------------------------
// Criterion 7: pass@k against enumeration
// ---------------------------------------------------------------------------

double pass_at_k_enumerated(int n, int c, int k) {
    // Walk every size-k subset of n samples; the first c samples are the
    // correct ones.
    long hits = 0, subsets = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        ++subsets;
        if ((mask & ((1u << c) - 1u)) != 0) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(subsets);
}

void criterion_pass_at_k(Expect& e) {
    for (int n = 1; n <= 10; ++n) {
        for (int c = 0; c <= n; ++c) {
            for (int k = 1; k <= n; ++k) {
                const double expected = pass_at_k_enumerated(n, c, k);
                const double actual = pass_at_k(n, c, k);
                if (std::abs(actual - expected) > 1e-12) {
                    std::ostringstream msg;
                    msg << "pass_at_k(" << n << ", " << c << ", " << k << ") = " << actual
                        << " but enumeration gives " << expected;
                    e.problems.push_back(msg.str());
                }
            }
        }
    }
    e.require(pass_at_k(4, 2, 2) == 5.0 / 6.0, "pass_at_k(4, 2, 2) must equal 5/6");
}

// ---------------------------------------------------------------------------
// Criterion 8: report determinism on the frozen fixture log
// ---------------------------------------------------------------------------

const std::vector<std::string> kCsvNames = {
    "accuracy_vs_n.csv",   "thinking_tokens_vs_n.csv", "pass_at_k.csv",
    "positional_bins.csv", "positional_raw.csv",       "first_failure_by_n.csv",
    "failure_density.csv", "failure_means.csv",        "depth.csv",
    "accuracy_vs_depth.csv"};

const std::vector<std::string> kSvgNames = {
    "accuracy_vs_n.svg",       "thinking_tokens_vs_n.svg", "pass_at_k.svg",
    "positional_accuracy.svg", "positional_density.svg",   "first_failure_by_n.svg",
    "failure_density.svg",     "depth.svg",                "accuracy_vs_depth.svg"};

void criterion_determinism(Expect& e) {
    // Two frozen logs — an oracle run and a corrupting run — merged exactly
    // the way the report command merges multiple --runs arguments.
    const std::vector<std::string> log_paths = {
        std::string(PZB_FIXTURE_DIR) + "/frozen_run.jsonl",
        std::string(PZB_FIXTURE_DIR) + "/frozen_run_corrupt.jsonl"};
    const Tokenizer tokenizer = Tokenizer::character();

    auto score_all = [&] {
        std::vector<AttemptScore> scores;
        std::vector<PuzzleInstance> instances;
        std::set<std::string> seen;
        for (const std::string& log_path : log_paths) {
            const auto records = read_records(log_path);
            e.require(!records.empty(), log_path + " is empty");
            const ExperimentManifest manifest = load_manifest(log_path + ".manifest.json");
            auto part = score_log(records, manifest, tokenizer);
            scores.insert(scores.end(), part.begin(), part.end());
            for (auto& [inst, variant] : expand_sweep(manifest)) {
                if (seen.insert(inst.instance_id).second) instances.push_back(inst);
            }
        }
        return std::make_pair(std::move(scores), std::move(instances));
    };

    TempDir tmp;
    {
        const auto [scores, instances] = score_all();
        write_report_bundle(scores, instances, tmp.file("pass1"));
    }
    {
        const auto [scores, instances] = score_all();
        write_report_bundle(scores, instances, tmp.file("pass2"));
    }

    for (const std::string& name : kCsvNames) {
        const std::string first = slurp(tmp.file("pass1") + "/" + name);
        e.require(first == slurp(tmp.file("pass2") + "/" + name),
                  name + " differs between two scoring passes");
        e.require(first == slurp(std::string(PZB_GOLDEN_DIR) + "/" + name),
                  name + " differs from the pinned golden copy");
    }
    for (const std::string& name : kSvgNames) {
        e.require(xml_well_formed(slurp(tmp.file("pass1") + "/" + name)),
                  name + " is not well-formed XML");
    }
}

// ---------------------------------------------------------------------------
// Criterion 9: positional-analysis mechanics
// ---------------------------------------------------------------------------

void criterion_positional(Expect& e) {
    // Build thinking traces where the CORRECT solution appears first and two
    // INCORRECT variants appear later, then check that the measured mean
    // position of incorrect intermediate solutions exceeds the correct one.
    const Environment& env = environment_for(PuzzleKind::hanoi);
    const Tokenizer tokenizer = Tokenizer::character();
    std::vector<AttemptScore> scores;
    for (int n = 3; n <= 5; ++n) {
        const PuzzleInstance inst = env.make_instance(n);
        const SolveResult solved = env.solve(inst);
        if (solved.status != SolveResult::Status::solved) {
            e.problems.push_back("hanoi N=" + std::to_string(n) + " did not solve");
            return;
        }
        auto corrupted = [&](std::size_t index) {
            MoveList bad = solved.moves;
            auto& move = std::get<HanoiMove>(bad[index]);
            std::swap(move.from, move.to);
            return bad;
        };
        RunRecord record;
        record.run_id = "acc-positional";
        record.instance_id = inst.instance_id;
        record.response_text =
            "Final answer:\n" + format_move_list(inst.kind, solved.moves);
        record.thinking_text =
            "I will work through it; this looks right:\n" +
            format_move_list(inst.kind, solved.moves) +
            "\nbut let me double-check some variations before answering, maybe\n" +
            format_move_list(inst.kind, corrupted(0)) + "\nor perhaps\n" +
            format_move_list(inst.kind, corrupted(1)) +
            "\nNo — the first one was correct after all.";
        scores.push_back(score_record(inst, record, tokenizer));
        e.require(scores.back().final_success,
                  "constructed attempt must succeed at N=" + std::to_string(n));
        e.equal(scores.back().intermediate.size(), std::size_t{3},
                "constructed trace must contain three intermediate solutions");
    }

    const PositionalAnalysis analysis = positional_analysis(scores, 10);
    e.require(analysis.mean_position_correct.has_value(),
              "mean position of correct solutions missing");
    e.require(analysis.mean_position_incorrect.has_value(),
              "mean position of incorrect solutions missing");
    if (analysis.mean_position_correct && analysis.mean_position_incorrect) {
        e.require(*analysis.mean_position_incorrect > *analysis.mean_position_correct,
                  "incorrect solutions were placed later, so their mean position must "
                  "be strictly larger");
    }
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        std::string title;
        std::function<void(Expect&)> body;
        double limit_seconds = 0.0;
    };
    const std::vector<Criterion> criteria = {
        {1, "hanoi solver returns exactly 2^N-1 validating moves for N=1..12",
         criterion_hanoi, 5.0},
        {2, "checkers BFS shortest length equals (N+1)^2-1 for N=1..5",
         criterion_checkers, 30.0},
        {3, "river shortest lengths 5 and 11; n=4,5 at k=3 solvable; n=6 unsolvable",
         criterion_river, 60.0},
        {4, "blocks optimal plans validate, constructive plans scale, depth table is "
            "monotone",
         criterion_blocks},
        {5, "example move lists are recovered from prose; comments and duplicates "
            "handled",
         criterion_extraction},
        {6, "oracle runs score accuracy 1.0 everywhere; corrupted runs fail exactly at "
            "the corrupt index",
         criterion_synthetic},
        {7, "pass@k matches brute-force subset enumeration; (4,2,2) = 5/6",
         criterion_pass_at_k},
        {8, "scoring the frozen log twice is byte-identical, matches the pinned CSVs, "
            "and SVGs are well-formed",
         criterion_determinism},
        {9, "incorrect intermediate solutions placed later have a larger mean position",
         criterion_positional},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        if (!run_criterion(criterion.number, criterion.title, criterion.body,
                           criterion.limit_seconds)) {
            ++failures;
        }
    }
    if (failures > 0) {
        std::cout << failures << " of " << criteria.size() << " criteria failed"
                  << std::endl;
        return 1;
    }
    std::cout << "all " << criteria.size() << " criteria passed" << std::endl;
    return 0;
}
