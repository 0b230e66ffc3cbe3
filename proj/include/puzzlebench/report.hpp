#pragma once

#include <string>
#include <vector>

#include "puzzlebench/evaluation.hpp"
#include "puzzlebench/runstore.hpp"

// Turns scored runs into the report bundle: one CSV per metric (header row,
// stable column order, deterministic formatting) plus self-contained SVG
// charts drawn directly, with axes, series markers and legends.

namespace pzb {

// ---------------------------------------------------------------------------
// SVG charts
// ---------------------------------------------------------------------------

struct ChartSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // sorted by x by the caller
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;  // non-positive values are skipped on log axes
    std::vector<ChartSeries> series;
};

// Always returns a complete, well-formed SVG document, even with no series.
std::string render_chart_svg(const ChartSpec& spec);

// ---------------------------------------------------------------------------
// Scoring a stored log
// ---------------------------------------------------------------------------

// Scores every record in the log against the instances its manifest demands.
// The prompt variant recorded in the sweep is carried into each score.
// Throws std::runtime_error for records whose instance the manifest lacks.
std::vector<AttemptScore> score_log(const std::vector<RunRecord>& records,
                                    const ExperimentManifest& manifest,
                                    const Tokenizer& tokenizer);

// ---------------------------------------------------------------------------
// Bundle
// ---------------------------------------------------------------------------

struct ReportOptions {
    int bins = 10;
    std::vector<int> k_list = {1, 2, 4, 8, 16, 25};
};

// Writes the full bundle into out_dir (created if missing):
//   accuracy_vs_n.csv/.svg        accuracy by puzzle size
//   thinking_tokens_vs_n.csv/.svg thinking-token effort by puzzle size
//   pass_at_k.csv/.svg            pass@k curves
//   positional_bins.csv           binned intermediate-solution accuracy
//   positional_raw.csv            every (position, correct) mark
//   positional_accuracy.svg       binned accuracy over position
//   positional_density.svg        where correct/incorrect marks concentrate
//   first_failure_by_n.csv/.svg   first-failure histograms / mean by size
//   failure_density.csv/.svg      pooled first-failure densities
//   failure_means.csv             pooled mean first-failure index
//   depth.csv/.svg                required moves by size (log-scale chart)
//   accuracy_vs_depth.csv/.svg    accuracy against required moves
// `instances` supplies the depth data; pass the manifest expansion.
// An empty score list produces header-only CSVs and empty-axes SVGs.
void write_report_bundle(const std::vector<AttemptScore>& scores,
                         const std::vector<PuzzleInstance>& instances,
                         const std::string& out_dir, const ReportOptions& options = {});

}  // namespace pzb
