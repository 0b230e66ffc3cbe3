#include "puzzlebench/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "puzzlebench/environments.hpp"

namespace pzb {

AttemptScore score_attempt(const PuzzleInstance& inst, const RunRecord& record,
                           const std::vector<ExtractedSolution>& final_solutions,
                           const std::vector<ExtractedSolution>& thinking_solutions) {
    const auto& env = environment_for(inst.kind);
    AttemptScore score;
    score.run_id = record.run_id;
    score.instance_id = record.instance_id;
    score.sample_idx = record.sample_idx;
    score.model_id = record.model_id;
    score.kind = inst.kind;
    score.size_n = inst.size_n;
    score.instance_solvable = inst.solvable;
    score.thinking_tokens = record.usage.thinking_tokens;
    score.completion_tokens = record.usage.completion_tokens;

    if (final_solutions.empty()) {
        score.final_success = false;
        score.failure_reason = FailureReason::malformed;
    } else {
        // Models typically restate their answer last; grade the last complete
        // list in the final response.
        const Verdict verdict = env.apply_solution(inst, final_solutions.back().moves);
        score.final_success = verdict.success;
        score.first_failure_index = verdict.first_failure_index;
        score.failure_reason = verdict.failure_reason;
    }

    for (const auto& sol : thinking_solutions) {
        const Verdict verdict = env.apply_solution(inst, sol.moves);
        score.intermediate.push_back(IntermediateMark{sol.normalized_position, verdict.success});
    }
    return score;
}

AttemptScore score_record(const PuzzleInstance& inst, const RunRecord& record,
                          const Tokenizer& tokenizer) {
    auto final_found = extract(record.response_text, inst.kind, SolutionSource::final_answer);
    ExtractionResult thinking_found;
    if (record.thinking_text && !record.thinking_text->empty()) {
        thinking_found = extract(*record.thinking_text, inst.kind, SolutionSource::thinking);
        for (auto& sol : thinking_found.solutions) {
            position_of(sol, *record.thinking_text, tokenizer);
        }
    }
    return score_attempt(inst, record, final_found.solutions, thinking_found.solutions);
}

double pass_at_k(int n, int c, int k) {
    if (n < 0 || c < 0 || c > n) throw std::invalid_argument("pass_at_k: need 0 <= c <= n");
    if (k < 1 || k > n) throw std::invalid_argument("pass_at_k: need 1 <= k <= n");
    // 1 - C(n-c, k)/C(n, k), evaluated as a product to stay exact in double
    // for the modest n used here.
    double miss = 1.0;
    for (int i = 0; i < k; ++i) {
        const int num = n - c - i;
        if (num <= 0) return 1.0;
        miss *= static_cast<double>(num) / static_cast<double>(n - i);
    }
    return 1.0 - miss;
}

MetricTable aggregate(const std::vector<AttemptScore>& scores, const std::vector<int>& k_list) {
    struct Accum {
        int samples = 0;
        int unsolvable = 0;
        int correct = 0;
        std::vector<std::int64_t> thinking;
        std::map<int, int> failures;
    };
    std::map<MetricKey, Accum> buckets;
    for (const auto& score : scores) {
        MetricKey key{score.kind, score.size_n, score.model_id, score.variant};
        Accum& acc = buckets[key];
        if (!score.instance_solvable) {
            ++acc.unsolvable;
            continue;
        }
        ++acc.samples;
        acc.correct += score.final_success ? 1 : 0;
        acc.thinking.push_back(score.thinking_tokens);
        if (!score.final_success && score.first_failure_index) {
            ++acc.failures[*score.first_failure_index];
        }
    }

    MetricTable table;
    for (const auto& [key, acc] : buckets) {
        MetricRow row;
        row.samples = acc.samples;
        row.unsolvable_samples = acc.unsolvable;
        row.correct = acc.correct;
        if (acc.samples > 0) {
            row.accuracy = static_cast<double>(acc.correct) / acc.samples;
            for (int k : k_list) {
                const int capped = std::min(k, acc.samples);
                row.pass_at_k[capped] = pass_at_k(acc.samples, acc.correct, capped);
            }
            double sum = 0.0;
            for (auto tokens : acc.thinking) sum += static_cast<double>(tokens);
            row.mean_thinking_tokens = sum / acc.samples;
            double var = 0.0;
            for (auto tokens : acc.thinking) {
                const double d = static_cast<double>(tokens) - row.mean_thinking_tokens;
                var += d * d;
            }
            row.std_thinking_tokens = std::sqrt(var / acc.samples);
        }
        row.failure_histogram = acc.failures;
        table.emplace(key, std::move(row));
    }
    return table;
}

PositionalAnalysis positional_analysis(const std::vector<AttemptScore>& scores, int bins) {
    if (bins < 2) throw std::invalid_argument("positional_analysis: need at least 2 bins");
    PositionalAnalysis out;
    out.bins.resize(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        out.bins[b].lo = static_cast<double>(b) / bins;
        out.bins[b].hi = static_cast<double>(b + 1) / bins;
    }
    double sum_correct = 0.0, sum_incorrect = 0.0;
    int n_correct = 0, n_incorrect = 0;
    for (const auto& score : scores) {
        for (const auto& mark : score.intermediate) {
            out.raw.push_back(mark);
            int b = static_cast<int>(mark.position * bins);
            if (b >= bins) b = bins - 1;  // position 1.0 falls in the last bin
            if (mark.correct) {
                ++out.bins[b].correct;
                sum_correct += mark.position;
                ++n_correct;
            } else {
                ++out.bins[b].incorrect;
                sum_incorrect += mark.position;
                ++n_incorrect;
            }
        }
    }
    for (auto& bin : out.bins) {
        const int total = bin.correct + bin.incorrect;
        if (total > 0) bin.accuracy = static_cast<double>(bin.correct) / total;
    }
    if (n_correct > 0) out.mean_position_correct = sum_correct / n_correct;
    if (n_incorrect > 0) out.mean_position_incorrect = sum_incorrect / n_incorrect;
    return out;
}

FailureAnalysis failure_analysis(const std::vector<AttemptScore>& scores) {
    FailureAnalysis out;
    for (const auto& score : scores) {
        if (score.final_success || !score.first_failure_index || !score.instance_solvable) {
            continue;
        }
        MetricKey key{score.kind, score.size_n, score.model_id, score.variant};
        ++out.by_n[key][*score.first_failure_index];
        out.pooled[{score.kind, score.model_id}].indices.push_back(*score.first_failure_index);
    }
    for (auto& [key, pool] : out.pooled) {
        std::sort(pool.indices.begin(), pool.indices.end());
        double sum = 0.0;
        for (int idx : pool.indices) sum += idx;
        if (!pool.indices.empty()) pool.mean = sum / static_cast<double>(pool.indices.size());
    }
    return out;
}

std::vector<DepthRow> depth_table(PuzzleKind kind, int n_lo, int n_hi, const Params& params) {
    if (n_lo > n_hi) throw std::invalid_argument("depth_table: empty range");
    const auto& env = environment_for(kind);
    std::vector<DepthRow> rows;
    for (int n = n_lo; n <= n_hi; ++n) {
        rows.push_back(DepthRow{n, env.min_moves(n, params)});
    }
    return rows;
}

BudgetSubsample budget_matched_subsample(
    const std::vector<std::pair<std::int64_t, bool>>& samples, std::int64_t budget) {
    BudgetSubsample out;
    for (const auto& [tokens, correct] : samples) {
        if (out.tokens + tokens > budget) break;
        out.tokens += tokens;
        ++out.n;
        out.c += correct ? 1 : 0;
    }
    return out;
}

}  // namespace pzb
