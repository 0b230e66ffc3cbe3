#include "puzzlebench/prompts.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pzb {
namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open prompt template: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// "3 (bottom), 2, 1 (top)" for a peg listed bottom to top; "(empty)" when
// bare; "1 (bottom, top)" for a single disk.
std::string peg_listing(const std::vector<int>& peg) {
    if (peg.empty()) return "(empty)";
    if (peg.size() == 1) return std::to_string(peg[0]) + " (bottom, top)";
    std::string out;
    for (size_t i = 0; i < peg.size(); ++i) {
        if (i > 0) out += ", ";
        out += std::to_string(peg[i]);
        if (i == 0) out += " (bottom)";
        if (i + 1 == peg.size()) out += " (top)";
    }
    return out;
}

std::string board_listing(const std::vector<char>& cells) {
    std::string out;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out += ' ';
        out += cells[i];
    }
    return out;
}

std::string stack_listing(const std::vector<std::vector<std::string>>& stacks) {
    std::string out;
    for (size_t i = 0; i < stacks.size(); ++i) {
        if (i > 0) out += '\n';
        out += "Stack " + std::to_string(i) + ": ";
        if (stacks[i].empty()) {
            out += "(empty)";
            continue;
        }
        for (size_t b = 0; b < stacks[i].size(); ++b) {
            if (b > 0) out += ' ';
            out += stacks[i][b];
        }
        out += " (top)";
    }
    return out;
}

std::map<std::string, std::string> values_for(const PuzzleInstance& inst) {
    std::map<std::string, std::string> values;
    values["n"] = std::to_string(inst.size_n);
    switch (inst.kind) {
        case PuzzleKind::hanoi: {
            const auto& initial = std::get<HanoiState>(inst.initial);
            const auto& goal = std::get<HanoiState>(inst.goal);
            for (int p = 0; p < 3; ++p) {
                values["initial_peg_" + std::to_string(p)] = peg_listing(initial.pegs[p]);
                values["goal_peg_" + std::to_string(p)] = peg_listing(goal.pegs[p]);
            }
            break;
        }
        case PuzzleKind::checkers: {
            const auto& initial = std::get<CheckersState>(inst.initial);
            const auto& goal = std::get<CheckersState>(inst.goal);
            values["board_len"] = std::to_string(initial.cells.size());
            values["initial_board"] = board_listing(initial.cells);
            values["goal_board"] = board_listing(goal.cells);
            break;
        }
        case PuzzleKind::river: {
            const auto& initial = std::get<RiverState>(inst.initial);
            values["k"] = std::to_string(initial.boat_capacity);
            break;
        }
        case PuzzleKind::blocks: {
            const auto& initial = std::get<BlocksState>(inst.initial);
            const auto& goal = std::get<BlocksState>(inst.goal);
            values["initial_stacks"] = stack_listing(initial.stacks);
            values["goal_stacks"] = stack_listing(goal.stacks);
            break;
        }
    }
    return values;
}

}  // namespace

std::string to_string(PromptVariant variant) {
    return variant == PromptVariant::standard ? "standard" : "prescribed_algorithm";
}

std::optional<PromptVariant> prompt_variant_from_string(const std::string& name) {
    if (name == "standard") return PromptVariant::standard;
    if (name == "prescribed_algorithm") return PromptVariant::prescribed_algorithm;
    return std::nullopt;
}

std::string substitute_placeholders(const std::string& tmpl,
                                    const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(tmpl.size());
    size_t at = 0;
    while (at < tmpl.size()) {
        const size_t open = tmpl.find("${", at);
        if (open == std::string::npos) {
            out.append(tmpl, at, std::string::npos);
            break;
        }
        out.append(tmpl, at, open - at);
        const size_t close = tmpl.find('}', open + 2);
        if (close == std::string::npos) {
            throw std::invalid_argument("unterminated placeholder in template");
        }
        const std::string name = tmpl.substr(open + 2, close - open - 2);
        auto hit = values.find(name);
        if (hit == values.end()) {
            throw std::invalid_argument("no value for placeholder ${" + name + "}");
        }
        out += hit->second;
        at = close + 1;
    }
    return out;
}

std::string PromptLibrary::default_asset_dir() {
    if (const char* env = std::getenv("PUZZLEBENCH_ASSETS")) return env;
#ifdef PZB_DEFAULT_ASSET_DIR
    return PZB_DEFAULT_ASSET_DIR;
#else
    return "assets";
#endif
}

PromptLibrary::PromptLibrary(const std::string& asset_dir) {
    const std::filesystem::path base = std::filesystem::path(asset_dir) / "prompts";
    for (PuzzleKind kind : all_puzzle_kinds) {
        const std::string name = to_string(kind);
        for (const char* role : {"system", "user"}) {
            const std::string stem = name + "_" + role;
            templates_[stem] = read_file(base / (stem + ".txt"));
        }
    }
    templates_["hanoi_algorithm"] = read_file(base / "hanoi_algorithm.txt");
}

const std::string& PromptLibrary::text(const std::string& stem) const {
    auto hit = templates_.find(stem);
    if (hit == templates_.end()) throw std::runtime_error("missing template: " + stem);
    return hit->second;
}

PromptPair PromptLibrary::render(const PuzzleInstance& inst, PromptVariant variant) const {
    if (variant == PromptVariant::prescribed_algorithm && inst.kind != PuzzleKind::hanoi) {
        throw std::invalid_argument("prescribed_algorithm variant is only defined for hanoi");
    }
    const std::string name = to_string(inst.kind);
    const auto values = values_for(inst);

    PromptPair pair;
    pair.variant = variant;
    pair.system_text = substitute_placeholders(text(name + "_system"), values);
    if (variant == PromptVariant::prescribed_algorithm) {
        std::string algo = text("hanoi_algorithm");
        // Keep exactly one blank line between the standard prompt and the
        // appended scratchpad.
        while (!pair.system_text.empty() && pair.system_text.back() == '\n') {
            pair.system_text.pop_back();
        }
        pair.system_text += "\n\n" + algo;
    }
    pair.user_text = substitute_placeholders(text(name + "_user"), values);

    json h;
    h["system"] = pair.system_text;
    h["user"] = pair.user_text;
    pair.prompt_hash = short_hash(h.dump());
    return pair;
}

}  // namespace pzb
