#include "puzzlebench/runstore.hpp"

#include <filesystem>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "puzzlebench/environments.hpp"

namespace pzb {
namespace {

bool blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::optional<RunRecord> try_parse_record(const std::string& line) {
    try {
        return record_from_json(json::parse(line));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace

json manifest_to_json(const ExperimentManifest& manifest) {
    json sweep = json::array();
    for (const SweepEntry& e : manifest.sweep) {
        sweep.push_back(json{{"puzzle", to_string(e.kind)},
                             {"n_lo", e.n_lo},
                             {"n_hi", e.n_hi},
                             {"params", e.params},
                             {"variant", to_string(e.variant)}});
    }
    return json{{"run_id", manifest.run_id},
                {"sweep", sweep},
                {"provider", provider_config_to_json(manifest.provider)},
                {"seed", manifest.seed}};
}

ExperimentManifest manifest_from_json(const json& j) {
    ExperimentManifest m;
    m.run_id = j.at("run_id").get<std::string>();
    for (const json& e : j.at("sweep")) {
        SweepEntry entry;
        const std::string kind_name = e.at("puzzle").get<std::string>();
        auto kind = puzzle_kind_from_string(kind_name);
        if (!kind) throw std::invalid_argument("unknown puzzle kind: " + kind_name);
        entry.kind = *kind;
        entry.n_lo = e.at("n_lo").get<int>();
        entry.n_hi = e.at("n_hi").get<int>();
        if (entry.n_lo < 1 || entry.n_hi < entry.n_lo) {
            throw std::invalid_argument("invalid sweep range " + std::to_string(entry.n_lo) +
                                        ".." + std::to_string(entry.n_hi));
        }
        if (e.contains("params")) entry.params = e["params"].get<Params>();
        if (e.contains("variant")) {
            const std::string name = e["variant"].get<std::string>();
            auto variant = prompt_variant_from_string(name);
            if (!variant) throw std::invalid_argument("unknown prompt variant: " + name);
            entry.variant = *variant;
        }
        m.sweep.push_back(std::move(entry));
    }
    m.provider = provider_config_from_json(j.at("provider"));
    m.seed = j.value("seed", std::int64_t{0});
    return m;
}

ExperimentManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("manifest not readable: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("manifest " + path + " is not valid JSON: " + e.what());
    }
    return manifest_from_json(j);
}

void save_manifest(const ExperimentManifest& manifest, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("manifest not writable: " + path);
    out << manifest_to_json(manifest).dump(2) << '\n';
}

std::vector<std::pair<PuzzleInstance, PromptVariant>> expand_sweep(
    const ExperimentManifest& manifest) {
    std::vector<std::pair<PuzzleInstance, PromptVariant>> out;
    for (const SweepEntry& e : manifest.sweep) {
        const Environment& env = environment_for(e.kind);
        for (int n = e.n_lo; n <= e.n_hi; ++n) {
            out.emplace_back(env.make_instance(n, e.params), e.variant);
        }
    }
    return out;
}

RecordLog::RecordLog(std::string path) : path_(std::move(path)) {
    std::string content;
    {
        std::ifstream in(path_, std::ios::binary);
        if (in) {
            content.assign(std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>());
        }
    }

    // Scan line by line, remembering each line's byte offset so a torn final
    // write can be truncated away.
    std::size_t line_start = 0;
    std::optional<std::size_t> truncate_at;
    while (line_start < content.size()) {
        std::size_t nl = content.find('\n', line_start);
        std::size_t line_end = (nl == std::string::npos) ? content.size() : nl;
        std::string line = content.substr(line_start, line_end - line_start);
        if (!blank(line)) {
            if (auto rec = try_parse_record(line)) {
                auto key = std::make_tuple(rec->run_id, rec->instance_id, rec->sample_idx);
                if (!keys_.insert(key).second) {
                    throw std::runtime_error("record log " + path_ +
                                             " contains duplicate record keys");
                }
                records_.push_back(std::move(*rec));
            } else {
                // Only the final non-blank line may be malformed (partial write).
                std::size_t rest = (nl == std::string::npos) ? content.size() : nl + 1;
                while (rest < content.size()) {
                    std::size_t rest_nl = content.find('\n', rest);
                    std::size_t rest_end =
                        (rest_nl == std::string::npos) ? content.size() : rest_nl;
                    if (!blank(content.substr(rest, rest_end - rest))) {
                        throw std::runtime_error("record log " + path_ +
                                                 " is corrupt: malformed interior line");
                    }
                    rest = (rest_nl == std::string::npos) ? content.size() : rest_nl + 1;
                }
                truncate_at = line_start;
                break;
            }
        }
        line_start = (nl == std::string::npos) ? content.size() : nl + 1;
    }

    if (truncate_at) {
        std::filesystem::resize_file(path_, *truncate_at);
    }

    out_.open(path_, std::ios::app | std::ios::binary);
    if (!out_) throw std::runtime_error("record log not writable: " + path_);
}

void RecordLog::append(const RunRecord& rec) {
    auto key = std::make_tuple(rec.run_id, rec.instance_id, rec.sample_idx);
    if (keys_.contains(key)) {
        throw std::invalid_argument("duplicate record key (" + rec.run_id + ", " +
                                    rec.instance_id + ", " + std::to_string(rec.sample_idx) +
                                    ")");
    }
    out_ << record_to_json(rec).dump() << '\n';
    out_.flush();
    if (!out_) throw std::runtime_error("write to record log failed: " + path_);
    keys_.insert(key);
    records_.push_back(rec);
}

bool RecordLog::contains(const std::string& run_id, const std::string& instance_id,
                         int sample_idx) const {
    return keys_.contains(std::make_tuple(run_id, instance_id, sample_idx));
}

std::vector<RunRecord> read_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("record log not readable: " + path);
    std::vector<RunRecord> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        if (auto rec = try_parse_record(line)) {
            out.push_back(std::move(*rec));
        } else if (in.peek() == std::char_traits<char>::eof()) {
            break;  // torn trailing write; recoverable
        } else {
            throw std::runtime_error("record log " + path + " line " +
                                     std::to_string(lineno) + " is malformed");
        }
    }
    return out;
}

std::vector<std::pair<int, int>> resume_set(const ExperimentManifest& manifest,
                                            const RecordLog& log) {
    for (const RunRecord& rec : log.records()) {
        if (rec.run_id != manifest.run_id) {
            throw std::invalid_argument("record log belongs to run \"" + rec.run_id +
                                        "\", manifest expects \"" + manifest.run_id + "\"");
        }
    }
    auto instances = expand_sweep(manifest);
    std::vector<std::pair<int, int>> pending;
    for (int i = 0; i < static_cast<int>(instances.size()); ++i) {
        for (int s = 0; s < manifest.provider.samples_per_instance; ++s) {
            if (!log.contains(manifest.run_id, instances[i].first.instance_id, s)) {
                pending.emplace_back(i, s);
            }
        }
    }
    return pending;
}

}  // namespace pzb
