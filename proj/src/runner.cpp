#include "puzzlebench/runner.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "puzzlebench/environments.hpp"
#include "puzzlebench/evaluation.hpp"
#include "puzzlebench/extraction.hpp"
#include "puzzlebench/gateway.hpp"

namespace pzb {
namespace {

std::int64_t wall_clock_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

struct TaskResult {
    bool ok = false;
    RunRecord record;
    std::string error;
};

// Builds the full record for one completed request: raw texts, usage,
// extraction summaries and the replay verdict of the final answer.
RunRecord build_record(const ExperimentManifest& manifest, const PuzzleInstance& inst,
                       int sample_idx, const PromptPair& prompt, const Completion& completion) {
    RunRecord rec;
    rec.run_id = manifest.run_id;
    rec.instance_id = inst.instance_id;
    rec.sample_idx = sample_idx;
    rec.model_id = manifest.provider.model_id;
    rec.prompt_hash = prompt.prompt_hash;
    rec.response_text = completion.final_text;
    rec.thinking_text = completion.thinking_text;
    rec.usage = completion.usage;

    ExtractionResult think;
    if (completion.thinking_text) {
        think = extract(*completion.thinking_text, inst.kind, SolutionSource::thinking);
    }
    ExtractionResult fin = extract(completion.final_text, inst.kind, SolutionSource::final_answer);
    for (const ExtractedSolution& s : think.solutions) {
        rec.extracted.push_back(to_string(s.source) + ":" + std::to_string(s.ordinal));
    }
    for (const ExtractedSolution& s : fin.solutions) {
        rec.extracted.push_back(to_string(s.source) + ":" + std::to_string(s.ordinal));
    }

    const Environment& env = environment_for(inst.kind);
    if (fin.solutions.empty()) {
        rec.final_verdict.success = false;
        rec.final_verdict.failure_reason = FailureReason::malformed;
        rec.final_verdict.final_state = inst.initial;
    } else {
        rec.final_verdict = env.apply_solution(inst, fin.solutions.back().moves);
    }
    return rec;
}

}  // namespace

RunStats execute_run(const ExperimentManifest& manifest, const PromptLibrary& prompts,
                     RecordLog& log, const RunOptions& options) {
    auto instances = expand_sweep(manifest);
    auto pending = resume_set(manifest, log);
    auto provider = make_provider(manifest.provider);

    RunStats stats;
    stats.requested = static_cast<int>(instances.size()) *
                      manifest.provider.samples_per_instance;
    stats.already_present = stats.requested - static_cast<int>(pending.size());
    if (pending.empty()) return stats;

    // Deterministic providers get a logical clock (two ticks per task) so
    // reruns produce identical bytes; live providers get wall-clock times.
    const bool logical_clock = provider->deterministic();

    const int workers =
        std::clamp(manifest.provider.parallelism, 1, static_cast<int>(pending.size()));

    std::mutex mu;
    std::condition_variable cv;
    std::map<int, TaskResult> ready;  // task index -> result, consumed in order
    std::atomic<int> next_task{0};
    std::exception_ptr worker_panic;

    auto worker = [&]() {
        while (true) {
            const int task = next_task.fetch_add(1);
            if (task >= static_cast<int>(pending.size())) return;
            const auto [inst_idx, sample_idx] = pending[static_cast<std::size_t>(task)];
            const auto& [inst, variant] = instances[static_cast<std::size_t>(inst_idx)];

            TaskResult result;
            try {
                PromptPair prompt = prompts.render(inst, variant);
                const std::int64_t t0 = logical_clock ? 2 * task : wall_clock_ms();
                Completion completion = provider->request(prompt, inst, sample_idx);
                const std::int64_t t1 = logical_clock ? 2 * task + 1 : wall_clock_ms();
                result.record = build_record(manifest, inst, sample_idx, prompt, completion);
                result.record.t_start_ms = t0;
                result.record.t_end_ms = t1;
                result.ok = true;
            } catch (const TransportError& e) {
                result.error = e.what();
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!worker_panic) worker_panic = std::current_exception();
                cv.notify_all();
                return;
            }
            {
                std::lock_guard<std::mutex> lock(mu);
                ready.emplace(task, std::move(result));
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);

    // The writer consumes results strictly in task order; a transport failure
    // leaves its pair un-appended so --resume retries it later.
    for (int task = 0; task < static_cast<int>(pending.size()); ++task) {
        TaskResult result;
        {
            std::unique_lock<std::mutex> lock(mu);
            cv.wait(lock, [&] { return ready.contains(task) || worker_panic; });
            if (worker_panic) break;
            result = std::move(ready.at(task));
            ready.erase(task);
        }
        if (result.ok) {
            log.append(result.record);
            ++stats.completed;
        } else {
            ++stats.transport_failures;
            if (options.progress) {
                *options.progress << "transport failure (will retry on resume): "
                                  << result.error << '\n';
            }
        }
        if (options.progress) {
            *options.progress << "done " << (task + 1) << "/" << pending.size() << '\n';
        }
    }

    for (std::thread& t : pool) t.join();
    if (worker_panic) std::rethrow_exception(worker_panic);
    return stats;
}

}  // namespace pzb
