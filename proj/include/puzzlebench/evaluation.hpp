#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "puzzlebench/core.hpp"
#include "puzzlebench/extraction.hpp"

// Scores attempts against the simulators and folds them into the metric
// suite: accuracy vs N, pass@k, token effort, positional analysis of
// intermediate solutions, first-failure distributions and compositional
// depth.

namespace pzb {

struct IntermediateMark {
    double position = 0.0;  // normalized within the thinking trace
    bool correct = false;
};

struct AttemptScore {
    std::string run_id;
    std::string instance_id;
    int sample_idx = 0;
    std::string model_id;
    PuzzleKind kind = PuzzleKind::hanoi;
    int size_n = 0;
    std::string variant = "standard";
    bool instance_solvable = true;
    bool final_success = false;
    std::optional<int> first_failure_index;
    std::optional<FailureReason> failure_reason;
    std::vector<IntermediateMark> intermediate;
    std::int64_t thinking_tokens = 0;
    std::int64_t completion_tokens = 0;
};

// Scores one attempt: the final answer is the LAST complete extracted list in
// the final response; every thinking-trace solution is replayed independently
// from the initial state. No extractable final answer scores as a malformed
// failure.
AttemptScore score_attempt(const PuzzleInstance& inst, const RunRecord& record,
                           const std::vector<ExtractedSolution>& final_solutions,
                           const std::vector<ExtractedSolution>& thinking_solutions);

// Convenience wrapper: extracts from the record's raw text (thinking
// positions normalized with `tokenizer`), then scores.
AttemptScore score_record(const PuzzleInstance& inst, const RunRecord& record,
                          const Tokenizer& tokenizer);

// Unbiased pass@k estimator: probability that a uniformly random size-k
// subset of n samples (c of them correct) contains at least one correct.
// Throws std::invalid_argument unless 0 <= c <= n and 1 <= k <= n.
double pass_at_k(int n, int c, int k);

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

struct MetricKey {
    PuzzleKind kind = PuzzleKind::hanoi;
    int size_n = 0;
    std::string model_id;
    std::string variant;
    auto operator<=>(const MetricKey&) const = default;
};

struct MetricRow {
    int samples = 0;             // solvable instances only
    int unsolvable_samples = 0;  // reported separately, excluded from accuracy
    int correct = 0;
    double accuracy = 0.0;
    std::map<int, double> pass_at_k;  // k -> estimate
    double mean_thinking_tokens = 0.0;
    double std_thinking_tokens = 0.0;
    std::map<int, int> failure_histogram;  // first_failure_index -> count
};

using MetricTable = std::map<MetricKey, MetricRow>;

// k values are capped at each row's sample count.
MetricTable aggregate(const std::vector<AttemptScore>& scores, const std::vector<int>& k_list);

// ---------------------------------------------------------------------------
// Positional analysis of intermediate solutions
// ---------------------------------------------------------------------------

struct PositionBin {
    double lo = 0.0;
    double hi = 0.0;
    int correct = 0;
    int incorrect = 0;
    std::optional<double> accuracy;  // absent when the bin is empty
};

struct PositionalAnalysis {
    std::vector<PositionBin> bins;
    std::vector<IntermediateMark> raw;  // all (position, correct) pairs
    std::optional<double> mean_position_correct;
    std::optional<double> mean_position_incorrect;
};

// Equal-width bins over [0,1]; requires bins >= 2. The last bin is closed on
// both sides.
PositionalAnalysis positional_analysis(const std::vector<AttemptScore>& scores, int bins);

// ---------------------------------------------------------------------------
// Failure analysis
// ---------------------------------------------------------------------------

struct FailurePool {
    std::vector<int> indices;  // pooled first-failure indices
    std::optional<double> mean;
};

struct FailureAnalysis {
    // (puzzle, N, model, variant) -> first_failure_index -> count, failed
    // attempts only.
    std::map<MetricKey, std::map<int, int>> by_n;
    // (puzzle, model) -> pooled density across N.
    std::map<std::pair<PuzzleKind, std::string>, FailurePool> pooled;
};

FailureAnalysis failure_analysis(const std::vector<AttemptScore>& scores);

// ---------------------------------------------------------------------------
// Compositional depth
// ---------------------------------------------------------------------------

struct DepthRow {
    int size_n = 0;
    std::optional<std::uint64_t> required_moves;  // absent when intractable
};

std::vector<DepthRow> depth_table(PuzzleKind kind, int n_lo, int n_hi, const Params& params = {});

// ---------------------------------------------------------------------------
// Budget-matched comparisons
// ---------------------------------------------------------------------------

struct BudgetSubsample {
    int n = 0;  // samples kept
    int c = 0;  // correct among kept
    std::int64_t tokens = 0;
};

// Keeps the maximal prefix (in sample order) whose cumulative completion
// tokens stay within `budget`; used to compare pass@k across models at
// matched compute.
BudgetSubsample budget_matched_subsample(
    const std::vector<std::pair<std::int64_t, bool>>& samples, std::int64_t budget);

}  // namespace pzb
