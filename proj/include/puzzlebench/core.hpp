#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

// Shared domain model: puzzle kinds, states, moves, instances, verdicts and
// run records. Everything here is an immutable value type; simulators and
// scorers never mutate shared state.

namespace pzb {

using json = nlohmann::json;

enum class PuzzleKind { hanoi, checkers, river, blocks };

constexpr std::array<PuzzleKind, 4> all_puzzle_kinds = {
    PuzzleKind::hanoi, PuzzleKind::checkers, PuzzleKind::river, PuzzleKind::blocks};

std::string to_string(PuzzleKind kind);
std::optional<PuzzleKind> puzzle_kind_from_string(const std::string& name);

// Kind-specific parameters (river: "k" boat capacity; blocks: "stacks").
using Params = std::map<std::string, int>;

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

// Pegs hold disk ids bottom to top; ids run 1 (smallest) .. N (largest).
struct HanoiState {
    std::array<std::vector<int>, 3> pegs;
    bool operator==(const HanoiState&) const = default;
};

// Linear board of 'R', 'B' and exactly one '_'.
struct CheckersState {
    std::vector<char> cells;
    bool operator==(const CheckersState&) const = default;
};

// Individuals are "a_1".."a_N" (actors) and "A_1".."A_N" (agents).  The boat
// capacity travels with the state so a move can be judged from the scene alone.
struct RiverState {
    std::set<std::string> left;
    std::set<std::string> right;
    bool boat_on_left = true;
    int boat_capacity = 2;
    bool operator==(const RiverState&) const = default;
};

// Stacks hold block labels bottom to top ("A".."Z", then "AA", "AB", ...).
struct BlocksState {
    std::vector<std::vector<std::string>> stacks;
    bool operator==(const BlocksState&) const = default;
};

using PuzzleState = std::variant<HanoiState, CheckersState, RiverState, BlocksState>;

PuzzleKind kind_of(const PuzzleState& state);

// ---------------------------------------------------------------------------
// Moves
// ---------------------------------------------------------------------------

struct HanoiMove {
    int disk = 0;
    int from = 0;
    int to = 0;
    bool operator==(const HanoiMove&) const = default;
};

struct CheckersMove {
    char color = 'R';
    int from = 0;
    int to = 0;
    bool operator==(const CheckersMove&) const = default;
};

// Passenger list for one crossing; never empty for a well-formed move.
struct RiverMove {
    std::vector<std::string> passengers;
    bool operator==(const RiverMove&) const = default;
};

struct BlocksMove {
    std::string block;
    int from = 0;
    int to = 0;
    bool operator==(const BlocksMove&) const = default;
};

using Move = std::variant<HanoiMove, CheckersMove, RiverMove, BlocksMove>;
using MoveList = std::vector<Move>;

PuzzleKind kind_of(const Move& move);

// Renders a move list in the exact notation the prompts ask for, e.g.
// `moves = [[1, 0, 2], [2, 0, 1]]` for Hanoi. The river prompt spells its
// example as `moves=[[...]]` without spaces, so that rendering matches too.
std::string format_move(const Move& move);
std::string format_move_list(PuzzleKind kind, const MoveList& moves);

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

struct PuzzleInstance {
    PuzzleKind kind = PuzzleKind::hanoi;
    int size_n = 1;
    Params params;
    PuzzleState initial;
    PuzzleState goal;
    std::optional<std::uint64_t> min_moves;
    bool solvable = true;
    std::string instance_id;
};

// Deterministic content id over (kind, size_n, params); canonical JSON with
// sorted keys hashed with SHA-256, truncated to 16 hex chars.
// Throws std::invalid_argument for size_n < 1.
std::string instance_id(PuzzleKind kind, int size_n, const Params& params);

// ---------------------------------------------------------------------------
// Move validation outcomes
// ---------------------------------------------------------------------------

enum class RuleViolation {
    kind_mismatch,
    index_out_of_bounds,
    source_empty,
    not_topmost,
    larger_on_smaller,
    wrong_color,
    target_not_empty,
    invalid_distance,
    backward_move,
    bad_jump,
    unknown_individual,
    duplicate_passenger,
    empty_boat,
    overloaded_boat,
    passenger_not_on_boat_side,
    unprotected_actor,
};

std::string to_string(RuleViolation v);

// Either the successor state or the first rule the move breaks.
using MoveResult = std::variant<PuzzleState, RuleViolation>;

inline bool move_ok(const MoveResult& r) { return std::holds_alternative<PuzzleState>(r); }

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

enum class FailureReason { malformed, illegal_move, constraint_violation, goal_not_reached };

std::string to_string(FailureReason r);
std::optional<FailureReason> failure_reason_from_string(const std::string& name);

// Replay verdict for one candidate move list. final_state is the state at the
// failing move when the replay stops early.
struct Verdict {
    int moves_checked = 0;
    std::optional<int> first_failure_index;
    std::optional<FailureReason> failure_reason;
    bool success = false;
    PuzzleState final_state;
};

// Buckets a per-move violation into the verdict-level failure taxonomy:
// shape/geometry problems are illegal_move, puzzle-rule problems are
// constraint_violation.
FailureReason failure_reason_for(RuleViolation v);

// ---------------------------------------------------------------------------
// Run records
// ---------------------------------------------------------------------------

struct TokenUsage {
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
    std::int64_t thinking_tokens = 0;
    bool operator==(const TokenUsage&) const = default;
};

// One sampled model attempt. (run_id, instance_id, sample_idx) is the store key.
struct RunRecord {
    std::string run_id;
    std::string instance_id;
    int sample_idx = 0;
    std::string model_id;
    std::string prompt_hash;
    std::string response_text;
    std::optional<std::string> thinking_text;
    TokenUsage usage;
    std::vector<std::string> extracted;  // "<source>:<ordinal>" summaries
    Verdict final_verdict;
    std::int64_t t_start_ms = 0;
    std::int64_t t_end_ms = 0;
};

// ---------------------------------------------------------------------------
// JSON serialization (canonical schema; states use the prompt's bracket
// notation, e.g. [[3,2,1],[],[]])
// ---------------------------------------------------------------------------

json state_to_json(const PuzzleState& state);
PuzzleState state_from_json(PuzzleKind kind, const json& j);

json move_to_json(const Move& move);
Move move_from_json(PuzzleKind kind, const json& j);

json instance_to_json(const PuzzleInstance& inst);
PuzzleInstance instance_from_json(const json& j);

// Verdict JSON carries a "kind" tag so every log line parses on its own.
json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);

json record_to_json(const RunRecord& rec);
RunRecord record_from_json(const json& j);

// SHA-256 hex digest helpers (libcrypto-backed).
std::string sha256_hex(const std::string& data);
std::string short_hash(const std::string& data);  // first 16 hex chars

// Spreadsheet-style block labels: 0 -> "A", 25 -> "Z", 26 -> "AA".
std::string block_label(int index);

}  // namespace pzb
