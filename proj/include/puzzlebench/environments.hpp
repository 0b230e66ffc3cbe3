#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "puzzlebench/core.hpp"

// The four puzzle simulators and their oracle solvers. Simulators validate
// one move at a time against the full rule set; oracles produce verified
// reference solutions (recursive for Hanoi, breadth-first search elsewhere,
// plus a constructive fallback for large Blocks World).

namespace pzb {

struct SolveResult {
    enum class Status { solved, unsolvable, range_exceeded };
    Status status = Status::solved;
    MoveList moves;
};

class Environment {
public:
    virtual ~Environment() = default;

    virtual PuzzleKind kind() const = 0;

    // Builds the canonical instance for this size: the standard initial/goal
    // layouts, min_moves from formula or search, solvability from the oracle.
    // Throws std::invalid_argument for out-of-range sizes.
    virtual PuzzleInstance make_instance(int size_n, const Params& params = {}) const = 0;

    // Successor state iff the move is legal, otherwise the violated rule.
    virtual MoveResult validate_move(const PuzzleState& state, const Move& move) const = 0;

    virtual SolveResult solve(const PuzzleInstance& inst) const = 0;

    // Closed form where the puzzle has one, shortest-path search where it is
    // tractable, absent otherwise.
    virtual std::optional<std::uint64_t> min_moves(int size_n, const Params& params = {}) const = 0;

    // Structural invariants of a state for this kind/size; nullopt when valid.
    virtual std::optional<std::string> check_state(int size_n, const Params& params,
                                                   const PuzzleState& state) const = 0;

    // River accepts any boat side at the goal; the other puzzles compare
    // states directly.
    virtual bool goal_reached(const PuzzleInstance& inst, const PuzzleState& state) const;

    // Replays moves from the initial state, stopping at the first violation.
    // Optimality is not graded: success means every move legal and the goal
    // reached.
    Verdict apply_solution(const PuzzleInstance& inst, const MoveList& moves) const;
};

// Total over the four kinds; returned references have static lifetime.
const Environment& environment_for(PuzzleKind kind);

// Effective river boat capacity: explicit "k" param, else 2 for n <= 3 and 3
// for larger n.
int river_boat_capacity(int n_pairs, const Params& params);

// Effective blocks stack count: explicit "stacks" param, else 3.
int blocks_stack_count(const Params& params);

// Default sweep ceilings for the oracle search per kind.
constexpr int kHanoiMaxN = 25;
constexpr int kCheckersMaxBfsN = 6;
constexpr int kRiverMaxBfsN = 6;
constexpr int kBlocksMaxBfsN = 8;
constexpr int kBlocksMaxN = 64;

}  // namespace pzb
