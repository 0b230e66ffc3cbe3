#pragma once

#include <fstream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "puzzlebench/core.hpp"
#include "puzzlebench/gateway.hpp"

// Durable run storage: an append-only JSONL record log with crash recovery,
// and the experiment manifest that pins what a run must contain so it can be
// resumed or re-scored later.

namespace pzb {

// One entry of the puzzle sweep: a kind, an inclusive size range, fixed
// params, and the prompt variant to use.
struct SweepEntry {
    PuzzleKind kind = PuzzleKind::hanoi;
    int n_lo = 1;
    int n_hi = 1;
    Params params;
    PromptVariant variant = PromptVariant::standard;
    bool operator==(const SweepEntry&) const = default;
};

struct ExperimentManifest {
    std::string run_id;
    std::vector<SweepEntry> sweep;
    ProviderConfig provider;
    std::int64_t seed = 0;
};

json manifest_to_json(const ExperimentManifest& manifest);
ExperimentManifest manifest_from_json(const json& j);
ExperimentManifest load_manifest(const std::string& path);
void save_manifest(const ExperimentManifest& manifest, const std::string& path);

// All instances the manifest demands, in deterministic sweep order, paired
// with their prompt variant.
std::vector<std::pair<PuzzleInstance, PromptVariant>> expand_sweep(
    const ExperimentManifest& manifest);

// Append-only JSONL store for run records keyed by
// (run_id, instance_id, sample_idx).
//
// Opening scans the existing file; a single malformed trailing line (a write
// cut short by a crash) is discarded and truncated away, while malformed
// interior lines are treated as corruption and rejected.
class RecordLog {
public:
    explicit RecordLog(std::string path);

    const std::string& path() const { return path_; }
    const std::vector<RunRecord>& records() const { return records_; }

    // Rejects duplicates of an already-present key with std::invalid_argument.
    // Each append is flushed before returning.
    void append(const RunRecord& rec);

    bool contains(const std::string& run_id, const std::string& instance_id,
                  int sample_idx) const;

private:
    std::string path_;
    std::vector<RunRecord> records_;
    std::set<std::tuple<std::string, std::string, int>> keys_;
    std::ofstream out_;
};

// Loads records without keeping the file open for writing.
std::vector<RunRecord> read_records(const std::string& path);

// The (instance index into expand_sweep(manifest), sample_idx) pairs the
// manifest demands that the log does not yet contain, in run order.
// Throws std::invalid_argument when the log holds records of a different run.
std::vector<std::pair<int, int>> resume_set(const ExperimentManifest& manifest,
                                            const RecordLog& log);

}  // namespace pzb
