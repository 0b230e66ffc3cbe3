#include "puzzlebench/environments.hpp"

#include <stdexcept>

#include "envs_internal.hpp"

namespace pzb {

bool Environment::goal_reached(const PuzzleInstance& inst, const PuzzleState& state) const {
    return state == inst.goal;
}

Verdict Environment::apply_solution(const PuzzleInstance& inst, const MoveList& moves) const {
    Verdict v;
    PuzzleState current = inst.initial;
    for (size_t i = 0; i < moves.size(); ++i) {
        MoveResult result = validate_move(current, moves[i]);
        if (const auto* violation = std::get_if<RuleViolation>(&result)) {
            v.moves_checked = static_cast<int>(i) + 1;
            v.first_failure_index = static_cast<int>(i);
            v.failure_reason = failure_reason_for(*violation);
            v.success = false;
            v.final_state = current;
            return v;
        }
        current = std::move(std::get<PuzzleState>(result));
    }
    v.moves_checked = static_cast<int>(moves.size());
    v.final_state = current;
    v.success = goal_reached(inst, current);
    if (!v.success) v.failure_reason = FailureReason::goal_not_reached;
    return v;
}

const Environment& environment_for(PuzzleKind kind) {
    switch (kind) {
        case PuzzleKind::hanoi: return hanoi_environment();
        case PuzzleKind::checkers: return checkers_environment();
        case PuzzleKind::river: return river_environment();
        case PuzzleKind::blocks: return blocks_environment();
    }
    throw std::invalid_argument("unknown puzzle kind");
}

int river_boat_capacity(int n_pairs, const Params& params) {
    auto it = params.find("k");
    if (it != params.end()) return it->second;
    return n_pairs <= 3 ? 2 : 3;
}

int blocks_stack_count(const Params& params) {
    auto it = params.find("stacks");
    if (it != params.end()) return it->second;
    return 3;
}

}  // namespace pzb
