#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "envs_internal.hpp"

namespace pzb {
namespace {

class HanoiEnv final : public Environment {
public:
    PuzzleKind kind() const override { return PuzzleKind::hanoi; }

    PuzzleInstance make_instance(int size_n, const Params& params) const override {
        if (size_n < 1 || size_n > kHanoiMaxN) {
            throw std::invalid_argument("hanoi: n must be in 1.." + std::to_string(kHanoiMaxN));
        }
        PuzzleInstance inst;
        inst.kind = kind();
        inst.size_n = size_n;
        inst.params = params;
        HanoiState initial;
        for (int d = size_n; d >= 1; --d) initial.pegs[0].push_back(d);
        HanoiState goal;
        goal.pegs[2] = initial.pegs[0];
        inst.initial = initial;
        inst.goal = goal;
        inst.min_moves = min_moves(size_n, params);
        inst.solvable = true;
        inst.instance_id = instance_id(kind(), size_n, params);
        return inst;
    }

    MoveResult validate_move(const PuzzleState& state, const Move& move) const override {
        const auto* s = std::get_if<HanoiState>(&state);
        const auto* m = std::get_if<HanoiMove>(&move);
        if (!s || !m) return RuleViolation::kind_mismatch;
        if (m->from < 0 || m->from > 2 || m->to < 0 || m->to > 2) {
            return RuleViolation::index_out_of_bounds;
        }
        const auto& src = s->pegs[m->from];
        if (src.empty()) return RuleViolation::source_empty;
        if (src.back() != m->disk) return RuleViolation::not_topmost;
        HanoiState next = *s;
        next.pegs[m->from].pop_back();
        const auto& dst = next.pegs[m->to];
        if (!dst.empty() && dst.back() < m->disk) return RuleViolation::larger_on_smaller;
        next.pegs[m->to].push_back(m->disk);
        return PuzzleState{std::move(next)};
    }

    SolveResult solve(const PuzzleInstance& inst) const override {
        if (inst.size_n > kHanoiMaxN) return {SolveResult::Status::range_exceeded, {}};
        // Recursive transfer that reads the actual top disk from the tracked
        // peg state rather than assuming a numbering.
        HanoiState pegs = std::get<HanoiState>(inst.initial);
        SolveResult result;
        result.moves.reserve((std::size_t{1} << inst.size_n) - 1);
        transfer(inst.size_n, 0, 2, 1, pegs, result.moves);
        return result;
    }

    std::optional<std::uint64_t> min_moves(int size_n, const Params&) const override {
        if (size_n < 1 || size_n > 62) return std::nullopt;
        return (std::uint64_t{1} << size_n) - 1;
    }

    std::optional<std::string> check_state(int size_n, const Params&,
                                           const PuzzleState& state) const override {
        const auto* s = std::get_if<HanoiState>(&state);
        if (!s) return "state is not a hanoi state";
        std::vector<int> seen;
        for (const auto& peg : s->pegs) {
            for (size_t i = 0; i + 1 < peg.size(); ++i) {
                if (peg[i] <= peg[i + 1]) return "peg not strictly decreasing bottom to top";
            }
            seen.insert(seen.end(), peg.begin(), peg.end());
        }
        std::sort(seen.begin(), seen.end());
        std::vector<int> want(size_n);
        std::iota(want.begin(), want.end(), 1);
        if (seen != want) return "disk ids do not form exactly {1..N}";
        return std::nullopt;
    }

private:
    static void transfer(int count, int source, int target, int auxiliary, HanoiState& pegs,
                         MoveList& moves) {
        if (count == 1) {
            move_top(source, target, pegs, moves);
            return;
        }
        transfer(count - 1, source, auxiliary, target, pegs, moves);
        move_top(source, target, pegs, moves);
        transfer(count - 1, auxiliary, target, source, pegs, moves);
    }

    static void move_top(int source, int target, HanoiState& pegs, MoveList& moves) {
        int disk = pegs.pegs[source].back();
        pegs.pegs[source].pop_back();
        pegs.pegs[target].push_back(disk);
        moves.push_back(HanoiMove{disk, source, target});
    }
};

}  // namespace

const Environment& hanoi_environment() {
    static const HanoiEnv env;
    return env;
}

}  // namespace pzb
