#include "puzzlebench/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace pzb {
namespace {

// ---------------------------------------------------------------------------
// Formatting helpers (deterministic across runs and locales)
// ---------------------------------------------------------------------------

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
        : out_(path, std::ios::trunc | std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot write " + path.string());
        row(header);
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i > 0) out_ << ',';
            out_ << csv_escape(fields[i]);
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

// ---------------------------------------------------------------------------
// Chart rendering
// ---------------------------------------------------------------------------

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 240.0;  // room for the legend
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kPaletteSize = 10;

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;
    std::vector<double> ticks;
};

double nice_step(double span) {
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double nice = frac < 1.5 ? 1.0 : frac < 3.0 ? 2.0 : frac < 7.0 ? 5.0 : 10.0;
    return nice * mag;
}

Axis make_axis(std::vector<double> values, bool log) {
    Axis axis;
    axis.log = log;
    if (log) {
        std::erase_if(values, [](double v) { return v <= 0.0; });
    }
    if (values.empty()) {
        axis.lo = log ? 1.0 : 0.0;
        axis.hi = log ? 10.0 : 1.0;
    } else {
        auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        axis.lo = *mn;
        axis.hi = *mx;
    }
    if (log) {
        axis.lo = std::pow(10.0, std::floor(std::log10(axis.lo)));
        axis.hi = std::pow(10.0, std::ceil(std::log10(axis.hi)));
        if (axis.hi <= axis.lo) axis.hi = axis.lo * 10.0;
        for (double t = axis.lo; t <= axis.hi * 1.0001; t *= 10.0) axis.ticks.push_back(t);
    } else {
        if (axis.hi <= axis.lo) axis.hi = axis.lo + 1.0;
        const double step = nice_step(axis.hi - axis.lo);
        axis.lo = std::floor(axis.lo / step) * step;
        axis.hi = std::ceil(axis.hi / step) * step;
        for (double t = axis.lo; t <= axis.hi + step * 0.5; t += step) {
            axis.ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
        }
    }
    return axis;
}

double project(double v, const Axis& axis, double px_lo, double px_hi) {
    double u;
    if (axis.log) {
        u = (std::log10(v) - std::log10(axis.lo)) /
            (std::log10(axis.hi) - std::log10(axis.lo));
    } else {
        u = (v - axis.lo) / (axis.hi - axis.lo);
    }
    return px_lo + u * (px_hi - px_lo);
}

}  // namespace

std::string render_chart_svg(const ChartSpec& spec) {
    std::vector<double> xs, ys;
    for (const ChartSeries& s : spec.series) {
        for (auto [x, y] : s.points) {
            if (!(spec.log_x && x <= 0.0)) xs.push_back(x);
            if (!(spec.log_y && y <= 0.0)) ys.push_back(y);
        }
    }
    const Axis ax = make_axis(std::move(xs), spec.log_x);
    const Axis ay = make_axis(std::move(ys), spec.log_y);

    const double plot_l = kLeft, plot_r = kWidth - kRight;
    const double plot_t = kTop, plot_b = kHeight - kBottom;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_tick(kWidth)
        << "\" height=\"" << fmt_tick(kHeight) << "\" viewBox=\"0 0 " << fmt_tick(kWidth)
        << " " << fmt_tick(kHeight) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << fmt_tick((plot_l + plot_r) / 2) << "\" y=\"28\" "
        << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << xml_escape(spec.title) << "</text>\n";

    // Grid, ticks and tick labels.
    for (double t : ax.ticks) {
        const double x = project(t, ax, plot_l, plot_r);
        svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(plot_t) << "\" x2=\"" << fmt(x)
            << "\" y2=\"" << fmt(plot_b) << "\" stroke=\"#e0e0e0\"/>\n"
            << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(plot_b + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(t) << "</text>\n";
    }
    for (double t : ay.ticks) {
        const double y = project(t, ay, plot_b, plot_t);
        svg << "<line x1=\"" << fmt(plot_l) << "\" y1=\"" << fmt(y) << "\" x2=\""
            << fmt(plot_r) << "\" y2=\"" << fmt(y) << "\" stroke=\"#e0e0e0\"/>\n"
            << "<text x=\"" << fmt(plot_l - 8) << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(t) << "</text>\n";
    }

    // Axes frame and labels.
    svg << "<rect x=\"" << fmt(plot_l) << "\" y=\"" << fmt(plot_t) << "\" width=\""
        << fmt(plot_r - plot_l) << "\" height=\"" << fmt(plot_b - plot_t)
        << "\" fill=\"none\" stroke=\"black\"/>\n"
        << "<text x=\"" << fmt_tick((plot_l + plot_r) / 2) << "\" y=\""
        << fmt_tick(kHeight - 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(spec.x_label) << "</text>\n"
        << "<text x=\"20\" y=\"" << fmt_tick((plot_t + plot_b) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 20 " << fmt_tick((plot_t + plot_b) / 2) << ")\">"
        << xml_escape(spec.y_label) << "</text>\n";

    // Series polylines with point markers.
    for (std::size_t i = 0; i < spec.series.size(); ++i) {
        const ChartSeries& s = spec.series[i];
        const char* color = kPalette[i % kPaletteSize];
        std::ostringstream pts;
        bool any = false;
        for (auto [x, y] : s.points) {
            if ((spec.log_x && x <= 0.0) || (spec.log_y && y <= 0.0)) continue;
            pts << fmt(project(x, ax, plot_l, plot_r)) << ','
                << fmt(project(y, ay, plot_b, plot_t)) << ' ';
            any = true;
        }
        if (any) {
            svg << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"2\" points=\"" << pts.str() << "\"/>\n";
            for (auto [x, y] : s.points) {
                if ((spec.log_x && x <= 0.0) || (spec.log_y && y <= 0.0)) continue;
                svg << "<circle cx=\"" << fmt(project(x, ax, plot_l, plot_r)) << "\" cy=\""
                    << fmt(project(y, ay, plot_b, plot_t)) << "\" r=\"3\" fill=\"" << color
                    << "\"/>\n";
            }
        }
        // Legend row (drawn even for empty series so the labels are complete).
        const double ly = plot_t + 10 + 18 * static_cast<double>(i);
        svg << "<line x1=\"" << fmt(plot_r + 12) << "\" y1=\"" << fmt(ly) << "\" x2=\""
            << fmt(plot_r + 36) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << fmt(plot_r + 42) << "\" y=\"" << fmt(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(s.label)
            << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

// ---------------------------------------------------------------------------
// Scoring a stored log
// ---------------------------------------------------------------------------

std::vector<AttemptScore> score_log(const std::vector<RunRecord>& records,
                                    const ExperimentManifest& manifest,
                                    const Tokenizer& tokenizer) {
    std::map<std::string, std::pair<const PuzzleInstance*, PromptVariant>> by_id;
    const auto instances = expand_sweep(manifest);
    for (const auto& [inst, variant] : instances) {
        by_id.emplace(inst.instance_id, std::make_pair(&inst, variant));
    }
    std::vector<AttemptScore> scores;
    scores.reserve(records.size());
    for (const RunRecord& rec : records) {
        auto it = by_id.find(rec.instance_id);
        if (it == by_id.end()) {
            throw std::runtime_error("record references instance " + rec.instance_id +
                                     " absent from the manifest sweep");
        }
        AttemptScore score = score_record(*it->second.first, rec, tokenizer);
        score.variant = to_string(it->second.second);
        scores.push_back(std::move(score));
    }
    return scores;
}

// ---------------------------------------------------------------------------
// Bundle
// ---------------------------------------------------------------------------

namespace {

std::string series_label(const MetricKey& key, bool with_n) {
    std::string label = to_string(key.kind) + " / " + key.model_id;
    if (key.variant != "standard" && !key.variant.empty()) label += " / " + key.variant;
    if (with_n) label += " / N=" + std::to_string(key.size_n);
    return label;
}

// Collapses per-N metric rows into chart series keyed by (kind, model,
// variant), one point per N.
template <typename Value>
std::vector<ChartSeries> series_over_n(
    const std::map<MetricKey, Value>& table,
    const std::function<std::optional<double>(const Value&)>& pick) {
    std::map<std::string, ChartSeries> grouped;
    for (const auto& [key, value] : table) {
        auto y = pick(value);
        if (!y) continue;
        const std::string label = series_label(key, false);
        ChartSeries& s = grouped[label];
        s.label = label;
        s.points.emplace_back(key.size_n, *y);
    }
    std::vector<ChartSeries> out;
    for (auto& [label, s] : grouped) out.push_back(std::move(s));
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

}  // namespace

void write_report_bundle(const std::vector<AttemptScore>& scores,
                         const std::vector<PuzzleInstance>& instances,
                         const std::string& out_dir, const ReportOptions& options) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    fs::create_directories(dir);

    const MetricTable table = aggregate(scores, options.k_list);
    const PositionalAnalysis positional = positional_analysis(scores, options.bins);
    const FailureAnalysis failures = failure_analysis(scores);

    // Required moves per (kind, N), first instance wins.
    std::map<std::pair<PuzzleKind, int>, std::optional<std::uint64_t>> depth;
    for (const PuzzleInstance& inst : instances) {
        depth.emplace(std::make_pair(inst.kind, inst.size_n), inst.min_moves);
    }

    // ------------------------------ CSVs ------------------------------

    {
        CsvWriter csv(dir / "accuracy_vs_n.csv",
                      {"puzzle", "n", "model", "variant", "samples", "unsolvable_samples",
                       "correct", "accuracy"});
        for (const auto& [key, row] : table) {
            csv.row({to_string(key.kind), std::to_string(key.size_n), key.model_id,
                     key.variant, std::to_string(row.samples),
                     std::to_string(row.unsolvable_samples), std::to_string(row.correct),
                     fmt(row.accuracy)});
        }
    }
    {
        CsvWriter csv(dir / "thinking_tokens_vs_n.csv",
                      {"puzzle", "n", "model", "variant", "samples", "mean_thinking_tokens",
                       "std_thinking_tokens"});
        for (const auto& [key, row] : table) {
            csv.row({to_string(key.kind), std::to_string(key.size_n), key.model_id,
                     key.variant, std::to_string(row.samples), fmt(row.mean_thinking_tokens),
                     fmt(row.std_thinking_tokens)});
        }
    }
    {
        CsvWriter csv(dir / "pass_at_k.csv",
                      {"puzzle", "n", "model", "variant", "k", "pass_at_k"});
        for (const auto& [key, row] : table) {
            for (const auto& [k, value] : row.pass_at_k) {
                csv.row({to_string(key.kind), std::to_string(key.size_n), key.model_id,
                         key.variant, std::to_string(k), fmt(value)});
            }
        }
    }
    {
        CsvWriter csv(dir / "positional_bins.csv",
                      {"bin_lo", "bin_hi", "correct", "incorrect", "accuracy"});
        // With no marks at all there is nothing to bin; keep the file
        // header-only rather than emitting rows of zeros.
        if (!positional.raw.empty()) {
            for (const PositionBin& bin : positional.bins) {
                csv.row({fmt(bin.lo), fmt(bin.hi), std::to_string(bin.correct),
                         std::to_string(bin.incorrect),
                         bin.accuracy ? fmt(*bin.accuracy) : std::string{}});
            }
        }
    }
    {
        CsvWriter csv(dir / "positional_raw.csv", {"position", "correct"});
        for (const IntermediateMark& mark : positional.raw) {
            csv.row({fmt(mark.position), mark.correct ? "1" : "0"});
        }
    }
    {
        CsvWriter csv(dir / "first_failure_by_n.csv",
                      {"puzzle", "n", "model", "variant", "first_failure_index", "count"});
        for (const auto& [key, hist] : failures.by_n) {
            for (const auto& [index, count] : hist) {
                csv.row({to_string(key.kind), std::to_string(key.size_n), key.model_id,
                         key.variant, std::to_string(index), std::to_string(count)});
            }
        }
    }
    {
        CsvWriter csv(dir / "failure_density.csv",
                      {"puzzle", "model", "first_failure_index", "count"});
        for (const auto& [key, pool] : failures.pooled) {
            std::map<int, int> hist;
            for (int idx : pool.indices) ++hist[idx];
            for (const auto& [index, count] : hist) {
                csv.row({to_string(key.first), key.second, std::to_string(index),
                         std::to_string(count)});
            }
        }
    }
    {
        CsvWriter csv(dir / "failure_means.csv",
                      {"puzzle", "model", "failed_samples", "mean_first_failure_index"});
        for (const auto& [key, pool] : failures.pooled) {
            csv.row({to_string(key.first), key.second, std::to_string(pool.indices.size()),
                     pool.mean ? fmt(*pool.mean) : std::string{}});
        }
    }
    {
        CsvWriter csv(dir / "depth.csv", {"puzzle", "n", "required_moves"});
        for (const auto& [key, moves] : depth) {
            csv.row({to_string(key.first), std::to_string(key.second),
                     moves ? std::to_string(*moves) : std::string{}});
        }
    }
    {
        CsvWriter csv(dir / "accuracy_vs_depth.csv",
                      {"puzzle", "n", "model", "variant", "required_moves", "accuracy"});
        for (const auto& [key, row] : table) {
            auto it = depth.find({key.kind, key.size_n});
            if (it == depth.end() || !it->second) continue;
            csv.row({to_string(key.kind), std::to_string(key.size_n), key.model_id,
                     key.variant, std::to_string(*it->second), fmt(row.accuracy)});
        }
    }

    // ------------------------------ SVGs ------------------------------

    using PickRow = std::function<std::optional<double>(const MetricRow&)>;

    {
        ChartSpec spec{"Accuracy by puzzle size", "puzzle size N", "accuracy"};
        spec.series = series_over_n<MetricRow>(table, PickRow([](const MetricRow& row) {
            return row.samples > 0 ? std::optional<double>(row.accuracy) : std::nullopt;
        }));
        write_text_file(dir / "accuracy_vs_n.svg", render_chart_svg(spec));
    }
    {
        ChartSpec spec{"Thinking tokens by puzzle size", "puzzle size N",
                       "mean thinking tokens"};
        spec.series = series_over_n<MetricRow>(table, PickRow([](const MetricRow& row) {
            return row.samples > 0 ? std::optional<double>(row.mean_thinking_tokens)
                                   : std::nullopt;
        }));
        write_text_file(dir / "thinking_tokens_vs_n.svg", render_chart_svg(spec));
    }
    {
        ChartSpec spec{"pass@k", "k", "pass@k"};
        for (const auto& [key, row] : table) {
            if (row.pass_at_k.empty()) continue;
            ChartSeries s;
            s.label = series_label(key, true);
            for (const auto& [k, value] : row.pass_at_k) {
                s.points.emplace_back(k, value);
            }
            spec.series.push_back(std::move(s));
        }
        write_text_file(dir / "pass_at_k.svg", render_chart_svg(spec));
    }
    {
        ChartSpec spec{"Intermediate-solution accuracy by position",
                       "normalized position in thinking trace", "accuracy"};
        ChartSeries s;
        s.label = "binned accuracy";
        for (const PositionBin& bin : positional.bins) {
            if (bin.accuracy) s.points.emplace_back((bin.lo + bin.hi) / 2, *bin.accuracy);
        }
        spec.series.push_back(std::move(s));
        write_text_file(dir / "positional_accuracy.svg", render_chart_svg(spec));
    }
    {
        ChartSpec spec{"Intermediate-solution density by position",
                       "normalized position in thinking trace", "fraction of marks"};
        int total_correct = 0, total_incorrect = 0;
        for (const PositionBin& bin : positional.bins) {
            total_correct += bin.correct;
            total_incorrect += bin.incorrect;
        }
        ChartSeries correct{"correct", {}}, incorrect{"incorrect", {}};
        for (const PositionBin& bin : positional.bins) {
            const double mid = (bin.lo + bin.hi) / 2;
            if (total_correct > 0) {
                correct.points.emplace_back(mid, static_cast<double>(bin.correct) /
                                                     total_correct);
            }
            if (total_incorrect > 0) {
                incorrect.points.emplace_back(mid, static_cast<double>(bin.incorrect) /
                                                       total_incorrect);
            }
        }
        spec.series = {std::move(correct), std::move(incorrect)};
        write_text_file(dir / "positional_density.svg", render_chart_svg(spec));
    }
    {
        ChartSpec spec{"Mean first-failure move index by puzzle size", "puzzle size N",
                       "mean first-failure index"};
        std::map<std::string, ChartSeries> grouped;
        for (const auto& [key, hist] : failures.by_n) {
            double sum = 0.0;
            int count = 0;
            for (const auto& [index, c] : hist) {
                sum += static_cast<double>(index) * c;
                count += c;
            }
            if (count == 0) continue;
            const std::string label = series_label(key, false);
            ChartSeries& s = grouped[label];
            s.label = label;
            s.points.emplace_back(key.size_n, sum / count);
        }
        for (auto& [label, s] : grouped) spec.series.push_back(std::move(s));
        write_text_file(dir / "first_failure_by_n.svg", render_chart_svg(spec));
    }
    {
        ChartSpec spec{"Pooled first-failure density", "first-failure move index", "count"};
        for (const auto& [key, pool] : failures.pooled) {
            std::map<int, int> hist;
            for (int idx : pool.indices) ++hist[idx];
            ChartSeries s;
            s.label = to_string(key.first) + " / " + key.second;
            for (const auto& [index, count] : hist) s.points.emplace_back(index, count);
            spec.series.push_back(std::move(s));
        }
        write_text_file(dir / "failure_density.svg", render_chart_svg(spec));
    }
    {
        ChartSpec spec{"Required moves by puzzle size", "puzzle size N", "required moves"};
        spec.log_y = true;
        std::map<PuzzleKind, ChartSeries> grouped;
        for (const auto& [key, moves] : depth) {
            if (!moves) continue;
            ChartSeries& s = grouped[key.first];
            s.label = to_string(key.first);
            s.points.emplace_back(key.second, static_cast<double>(*moves));
        }
        for (auto& [kind, s] : grouped) spec.series.push_back(std::move(s));
        write_text_file(dir / "depth.svg", render_chart_svg(spec));
    }
    {
        ChartSpec spec{"Accuracy by required moves", "required moves (log scale)",
                       "accuracy"};
        spec.log_x = true;
        std::map<std::string, ChartSeries> grouped;
        for (const auto& [key, row] : table) {
            if (row.samples == 0) continue;
            auto it = depth.find({key.kind, key.size_n});
            if (it == depth.end() || !it->second) continue;
            const std::string label = series_label(key, false);
            ChartSeries& s = grouped[label];
            s.label = label;
            s.points.emplace_back(static_cast<double>(*it->second), row.accuracy);
        }
        for (auto& [label, s] : grouped) spec.series.push_back(std::move(s));
        write_text_file(dir / "accuracy_vs_depth.svg", render_chart_svg(spec));
    }
}

}  // namespace pzb
