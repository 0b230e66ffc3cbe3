#include "puzzlebench/core.hpp"

#include <openssl/sha.h>

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pzb {

std::string to_string(PuzzleKind kind) {
    switch (kind) {
        case PuzzleKind::hanoi: return "hanoi";
        case PuzzleKind::checkers: return "checkers";
        case PuzzleKind::river: return "river";
        case PuzzleKind::blocks: return "blocks";
    }
    return "?";
}

std::optional<PuzzleKind> puzzle_kind_from_string(const std::string& name) {
    for (PuzzleKind k : all_puzzle_kinds) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

PuzzleKind kind_of(const PuzzleState& state) {
    return static_cast<PuzzleKind>(state.index());
}

PuzzleKind kind_of(const Move& move) {
    return static_cast<PuzzleKind>(move.index());
}

std::string to_string(RuleViolation v) {
    switch (v) {
        case RuleViolation::kind_mismatch: return "kind_mismatch";
        case RuleViolation::index_out_of_bounds: return "index_out_of_bounds";
        case RuleViolation::source_empty: return "source_empty";
        case RuleViolation::not_topmost: return "not_topmost";
        case RuleViolation::larger_on_smaller: return "larger_on_smaller";
        case RuleViolation::wrong_color: return "wrong_color";
        case RuleViolation::target_not_empty: return "target_not_empty";
        case RuleViolation::invalid_distance: return "invalid_distance";
        case RuleViolation::backward_move: return "backward_move";
        case RuleViolation::bad_jump: return "bad_jump";
        case RuleViolation::unknown_individual: return "unknown_individual";
        case RuleViolation::duplicate_passenger: return "duplicate_passenger";
        case RuleViolation::empty_boat: return "empty_boat";
        case RuleViolation::overloaded_boat: return "overloaded_boat";
        case RuleViolation::passenger_not_on_boat_side: return "passenger_not_on_boat_side";
        case RuleViolation::unprotected_actor: return "unprotected_actor";
    }
    return "?";
}

std::string to_string(FailureReason r) {
    switch (r) {
        case FailureReason::malformed: return "malformed";
        case FailureReason::illegal_move: return "illegal_move";
        case FailureReason::constraint_violation: return "constraint_violation";
        case FailureReason::goal_not_reached: return "goal_not_reached";
    }
    return "?";
}

std::optional<FailureReason> failure_reason_from_string(const std::string& name) {
    for (FailureReason r : {FailureReason::malformed, FailureReason::illegal_move,
                            FailureReason::constraint_violation, FailureReason::goal_not_reached}) {
        if (to_string(r) == name) return r;
    }
    return std::nullopt;
}

FailureReason failure_reason_for(RuleViolation v) {
    switch (v) {
        case RuleViolation::larger_on_smaller:
        case RuleViolation::backward_move:
        case RuleViolation::bad_jump:
        case RuleViolation::empty_boat:
        case RuleViolation::overloaded_boat:
        case RuleViolation::unprotected_actor:
            return FailureReason::constraint_violation;
        default:
            return FailureReason::illegal_move;
    }
}

// ---------------------------------------------------------------------------
// Hashing
// ---------------------------------------------------------------------------

std::string sha256_hex(const std::string& data) {
    unsigned char digest[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
    std::string out(SHA256_DIGEST_LENGTH * 2, '0');
    static const char* hex = "0123456789abcdef";
    for (int i = 0; i < SHA256_DIGEST_LENGTH; ++i) {
        out[2 * i] = hex[digest[i] >> 4];
        out[2 * i + 1] = hex[digest[i] & 0xf];
    }
    return out;
}

std::string short_hash(const std::string& data) {
    return sha256_hex(data).substr(0, 16);
}

std::string instance_id(PuzzleKind kind, int size_n, const Params& params) {
    if (size_n < 1) {
        throw std::invalid_argument("instance_id: size_n must be >= 1, got " +
                                    std::to_string(size_n));
    }
    json canon;
    canon["kind"] = to_string(kind);
    canon["n"] = size_n;
    canon["params"] = json::object();
    for (const auto& [key, value] : params) canon["params"][key] = value;
    return short_hash(canon.dump());
}

std::string block_label(int index) {
    std::string label;
    int i = index;
    do {
        label.insert(label.begin(), static_cast<char>('A' + i % 26));
        i = i / 26 - 1;
    } while (i >= 0);
    return label;
}

// ---------------------------------------------------------------------------
// Move formatting (prompt notation)
// ---------------------------------------------------------------------------

std::string format_move(const Move& move) {
    std::ostringstream os;
    if (const auto* h = std::get_if<HanoiMove>(&move)) {
        os << "[" << h->disk << ", " << h->from << ", " << h->to << "]";
    } else if (const auto* c = std::get_if<CheckersMove>(&move)) {
        os << "['" << c->color << "', " << c->from << ", " << c->to << "]";
    } else if (const auto* r = std::get_if<RiverMove>(&move)) {
        os << "[";
        for (size_t i = 0; i < r->passengers.size(); ++i) {
            if (i) os << ", ";
            os << "\"" << r->passengers[i] << "\"";
        }
        os << "]";
    } else if (const auto* b = std::get_if<BlocksMove>(&move)) {
        os << "[\"" << b->block << "\", " << b->from << ", " << b->to << "]";
    }
    return os.str();
}

std::string format_move_list(PuzzleKind kind, const MoveList& moves) {
    // The river prompt's example writes `moves=` without spaces; the other
    // three puzzles write `moves = `.
    std::ostringstream os;
    os << (kind == PuzzleKind::river ? "moves=[" : "moves = [");
    for (size_t i = 0; i < moves.size(); ++i) {
        if (i) os << ", ";
        os << format_move(moves[i]);
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

json state_to_json(const PuzzleState& state) {
    json j = json::array();
    if (const auto* h = std::get_if<HanoiState>(&state)) {
        for (const auto& peg : h->pegs) j.push_back(peg);
    } else if (const auto* c = std::get_if<CheckersState>(&state)) {
        for (char cell : c->cells) j.push_back(std::string(1, cell));
    } else if (const auto* r = std::get_if<RiverState>(&state)) {
        j = json::object();
        j["left"] = r->left;
        j["right"] = r->right;
        j["boat"] = r->boat_on_left ? "left" : "right";
        j["capacity"] = r->boat_capacity;
    } else if (const auto* b = std::get_if<BlocksState>(&state)) {
        for (const auto& stack : b->stacks) j.push_back(stack);
    }
    return j;
}

PuzzleState state_from_json(PuzzleKind kind, const json& j) {
    switch (kind) {
        case PuzzleKind::hanoi: {
            HanoiState s;
            if (!j.is_array() || j.size() != 3) throw std::invalid_argument("hanoi state needs 3 pegs");
            for (int i = 0; i < 3; ++i) s.pegs[i] = j[i].get<std::vector<int>>();
            return s;
        }
        case PuzzleKind::checkers: {
            CheckersState s;
            for (const auto& cell : j) {
                std::string c = cell.get<std::string>();
                if (c.size() != 1) throw std::invalid_argument("checkers cell must be one char");
                s.cells.push_back(c[0]);
            }
            return s;
        }
        case PuzzleKind::river: {
            RiverState s;
            s.left = j.at("left").get<std::set<std::string>>();
            s.right = j.at("right").get<std::set<std::string>>();
            s.boat_on_left = j.at("boat").get<std::string>() == "left";
            s.boat_capacity = j.at("capacity").get<int>();
            return s;
        }
        case PuzzleKind::blocks: {
            BlocksState s;
            for (const auto& stack : j) s.stacks.push_back(stack.get<std::vector<std::string>>());
            return s;
        }
    }
    throw std::invalid_argument("unknown puzzle kind");
}

json move_to_json(const Move& move) {
    json j = json::array();
    if (const auto* h = std::get_if<HanoiMove>(&move)) {
        j = {h->disk, h->from, h->to};
    } else if (const auto* c = std::get_if<CheckersMove>(&move)) {
        j = {std::string(1, c->color), c->from, c->to};
    } else if (const auto* r = std::get_if<RiverMove>(&move)) {
        for (const auto& p : r->passengers) j.push_back(p);
    } else if (const auto* b = std::get_if<BlocksMove>(&move)) {
        j = {b->block, b->from, b->to};
    }
    return j;
}

Move move_from_json(PuzzleKind kind, const json& j) {
    switch (kind) {
        case PuzzleKind::hanoi:
            return HanoiMove{j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>()};
        case PuzzleKind::checkers: {
            std::string color = j.at(0).get<std::string>();
            if (color.size() != 1) throw std::invalid_argument("checkers color must be one char");
            return CheckersMove{color[0], j.at(1).get<int>(), j.at(2).get<int>()};
        }
        case PuzzleKind::river:
            return RiverMove{j.get<std::vector<std::string>>()};
        case PuzzleKind::blocks:
            return BlocksMove{j.at(0).get<std::string>(), j.at(1).get<int>(), j.at(2).get<int>()};
    }
    throw std::invalid_argument("unknown puzzle kind");
}

json instance_to_json(const PuzzleInstance& inst) {
    json j;
    j["kind"] = to_string(inst.kind);
    j["n"] = inst.size_n;
    j["params"] = json::object();
    for (const auto& [key, value] : inst.params) j["params"][key] = value;
    j["initial"] = state_to_json(inst.initial);
    j["goal"] = state_to_json(inst.goal);
    if (inst.min_moves) {
        j["min_moves"] = *inst.min_moves;
    } else {
        j["min_moves"] = nullptr;
    }
    j["solvable"] = inst.solvable;
    j["instance_id"] = inst.instance_id;
    return j;
}

PuzzleInstance instance_from_json(const json& j) {
    PuzzleInstance inst;
    auto kind = puzzle_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw std::invalid_argument("unknown puzzle kind in instance");
    inst.kind = *kind;
    inst.size_n = j.at("n").get<int>();
    for (const auto& [key, value] : j.at("params").items()) inst.params[key] = value.get<int>();
    inst.initial = state_from_json(inst.kind, j.at("initial"));
    inst.goal = state_from_json(inst.kind, j.at("goal"));
    if (j.contains("min_moves") && !j.at("min_moves").is_null()) {
        inst.min_moves = j.at("min_moves").get<std::uint64_t>();
    }
    inst.solvable = j.at("solvable").get<bool>();
    inst.instance_id = j.at("instance_id").get<std::string>();
    return inst;
}

json verdict_to_json(const Verdict& v) {
    json j;
    j["kind"] = to_string(kind_of(v.final_state));
    j["moves_checked"] = v.moves_checked;
    j["first_failure_index"] = v.first_failure_index ? json(*v.first_failure_index) : json(nullptr);
    j["failure_reason"] = v.failure_reason ? json(to_string(*v.failure_reason)) : json(nullptr);
    j["success"] = v.success;
    j["final_state"] = state_to_json(v.final_state);
    return j;
}

Verdict verdict_from_json(const json& j) {
    Verdict v;
    auto kind = puzzle_kind_from_string(j.at("kind").get<std::string>());
    if (!kind) throw std::invalid_argument("unknown puzzle kind in verdict");
    v.moves_checked = j.at("moves_checked").get<int>();
    if (!j.at("first_failure_index").is_null()) {
        v.first_failure_index = j.at("first_failure_index").get<int>();
    }
    if (!j.at("failure_reason").is_null()) {
        auto reason = failure_reason_from_string(j.at("failure_reason").get<std::string>());
        if (!reason) throw std::invalid_argument("unknown failure reason");
        v.failure_reason = reason;
    }
    v.success = j.at("success").get<bool>();
    v.final_state = state_from_json(*kind, j.at("final_state"));
    return v;
}

json record_to_json(const RunRecord& rec) {
    json j;
    j["run_id"] = rec.run_id;
    j["instance_id"] = rec.instance_id;
    j["sample_idx"] = rec.sample_idx;
    j["model_id"] = rec.model_id;
    j["prompt_hash"] = rec.prompt_hash;
    j["response_text"] = rec.response_text;
    j["thinking_text"] = rec.thinking_text ? json(*rec.thinking_text) : json(nullptr);
    j["usage"] = {{"prompt_tokens", rec.usage.prompt_tokens},
                  {"completion_tokens", rec.usage.completion_tokens},
                  {"thinking_tokens", rec.usage.thinking_tokens}};
    j["extracted"] = rec.extracted;
    j["final_verdict"] = verdict_to_json(rec.final_verdict);
    j["t_start_ms"] = rec.t_start_ms;
    j["t_end_ms"] = rec.t_end_ms;
    return j;
}

RunRecord record_from_json(const json& j) {
    RunRecord rec;
    rec.run_id = j.at("run_id").get<std::string>();
    rec.instance_id = j.at("instance_id").get<std::string>();
    rec.sample_idx = j.at("sample_idx").get<int>();
    rec.model_id = j.at("model_id").get<std::string>();
    rec.prompt_hash = j.at("prompt_hash").get<std::string>();
    rec.response_text = j.at("response_text").get<std::string>();
    if (!j.at("thinking_text").is_null()) {
        rec.thinking_text = j.at("thinking_text").get<std::string>();
    }
    const json& u = j.at("usage");
    rec.usage.prompt_tokens = u.at("prompt_tokens").get<std::int64_t>();
    rec.usage.completion_tokens = u.at("completion_tokens").get<std::int64_t>();
    rec.usage.thinking_tokens = u.at("thinking_tokens").get<std::int64_t>();
    rec.extracted = j.at("extracted").get<std::vector<std::string>>();
    rec.final_verdict = verdict_from_json(j.at("final_verdict"));
    rec.t_start_ms = j.at("t_start_ms").get<std::int64_t>();
    rec.t_end_ms = j.at("t_end_ms").get<std::int64_t>();
    return rec;
}

}  // namespace pzb
