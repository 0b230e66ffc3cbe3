#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "envs_internal.hpp"

namespace pzb {
namespace {

// Compact board key for BFS: single-letter labels per stack, '|' separators.
// Only used for n <= kBlocksMaxBfsN, where every label is one character.
std::string pack(const BlocksState& s) {
    std::string key;
    for (const auto& stack : s.stacks) {
        for (const auto& block : stack) key += block;
        key += '|';
    }
    return key;
}

struct PackedMove {
    char block;
    signed char from;
    signed char to;
};

class BlocksEnv final : public Environment {
public:
    PuzzleKind kind() const override { return PuzzleKind::blocks; }

    PuzzleInstance make_instance(int size_n, const Params& params) const override {
        PuzzleInstance inst = build_layouts(size_n, params);
        inst.min_moves = min_moves(size_n, params);
        return inst;
    }

    MoveResult validate_move(const PuzzleState& state, const Move& move) const override {
        const auto* s = std::get_if<BlocksState>(&state);
        const auto* m = std::get_if<BlocksMove>(&move);
        if (!s || !m) return RuleViolation::kind_mismatch;
        const int stacks = static_cast<int>(s->stacks.size());
        if (m->from < 0 || m->from >= stacks || m->to < 0 || m->to >= stacks) {
            return RuleViolation::index_out_of_bounds;
        }
        const auto& src = s->stacks[m->from];
        if (src.empty()) return RuleViolation::source_empty;
        if (src.back() != m->block) return RuleViolation::not_topmost;
        BlocksState next = *s;
        next.stacks[m->from].pop_back();
        next.stacks[m->to].push_back(m->block);
        return PuzzleState{std::move(next)};
    }

    SolveResult solve(const PuzzleInstance& inst) const override {
        if (inst.size_n <= kBlocksMaxBfsN) return solve_bfs(inst);
        return solve_constructive(inst);
    }

    std::optional<std::uint64_t> min_moves(int size_n, const Params& params) const override {
        if (size_n < 2 || size_n > kBlocksMaxBfsN) return std::nullopt;
        auto solved = solve_bfs(build_layouts(size_n, params));
        if (solved.status != SolveResult::Status::solved) return std::nullopt;
        return solved.moves.size();
    }

    std::optional<std::string> check_state(int size_n, const Params& params,
                                           const PuzzleState& state) const override {
        const auto* s = std::get_if<BlocksState>(&state);
        if (!s) return "state is not a blocks state";
        if (static_cast<int>(s->stacks.size()) != blocks_stack_count(params)) {
            return "stack count mismatch";
        }
        std::vector<std::string> seen;
        for (const auto& stack : s->stacks) seen.insert(seen.end(), stack.begin(), stack.end());
        std::vector<std::string> want;
        for (int i = 0; i < size_n; ++i) want.push_back(block_label(i));
        std::sort(seen.begin(), seen.end());
        std::sort(want.begin(), want.end());
        if (seen != want) return "block labels do not form exactly the expected set";
        return std::nullopt;
    }

private:
    static PuzzleInstance build_layouts(int size_n, const Params& params) {
        if (size_n < 2 || size_n > kBlocksMaxN) {
            throw std::invalid_argument("blocks: n must be in 2.." + std::to_string(kBlocksMaxN));
        }
        const int stacks = blocks_stack_count(params);
        if (stacks < 3) throw std::invalid_argument("blocks: need at least 3 stacks");
        PuzzleInstance inst;
        inst.kind = PuzzleKind::blocks;
        inst.size_n = size_n;
        inst.params = params;

        BlocksState initial;
        initial.stacks.resize(stacks);
        const int first = (size_n + 1) / 2;
        for (int i = 0; i < first; ++i) initial.stacks[0].push_back(block_label(i));
        for (int i = first; i < size_n; ++i) initial.stacks[1].push_back(block_label(i));

        // Goal: everything on stack 0, alternating between the two initial
        // stacks taken top to bottom, starting with stack 1's top block.
        BlocksState goal;
        goal.stacks.resize(stacks);
        auto s0 = initial.stacks[0];
        auto s1 = initial.stacks[1];
        std::reverse(s0.begin(), s0.end());
        std::reverse(s1.begin(), s1.end());
        size_t i0 = 0, i1 = 0;
        while (i0 < s0.size() || i1 < s1.size()) {
            if (i1 < s1.size()) goal.stacks[0].push_back(s1[i1++]);
            if (i0 < s0.size()) goal.stacks[0].push_back(s0[i0++]);
        }

        inst.initial = initial;
        inst.goal = goal;
        inst.solvable = true;
        inst.instance_id = instance_id(PuzzleKind::blocks, size_n, params);
        return inst;
    }

    static SolveResult solve_bfs(const PuzzleInstance& inst) {
        const auto& initial = std::get<BlocksState>(inst.initial);
        const auto& goal_state = std::get<BlocksState>(inst.goal);
        const std::string start = pack(initial);
        const std::string goal = pack(goal_state);
        const int stacks = static_cast<int>(initial.stacks.size());
        std::unordered_map<std::string, std::pair<std::string, PackedMove>> parent;
        std::queue<std::string> frontier;
        parent.emplace(start, std::make_pair(std::string{}, PackedMove{}));
        frontier.push(start);
        while (!frontier.empty()) {
            std::string key = frontier.front();
            frontier.pop();
            if (key == goal) {
                SolveResult result;
                for (std::string at = key; at != start;) {
                    const auto& [prev, mv] = parent.at(at);
                    result.moves.push_back(
                        BlocksMove{std::string(1, mv.block), mv.from, mv.to});
                    at = prev;
                }
                std::reverse(result.moves.begin(), result.moves.end());
                return result;
            }
            // Decode stack extents from the key in place.
            std::vector<std::pair<int, int>> extent;  // [begin, end) per stack
            int begin = 0;
            for (int i = 0; i < static_cast<int>(key.size()); ++i) {
                if (key[i] == '|') {
                    extent.emplace_back(begin, i);
                    begin = i + 1;
                }
            }
            for (int from = 0; from < stacks; ++from) {
                if (extent[from].first == extent[from].second) continue;
                const char block = key[extent[from].second - 1];
                for (int to = 0; to < stacks; ++to) {
                    if (to == from) continue;
                    std::string next;
                    next.reserve(key.size());
                    for (int s = 0; s < stacks; ++s) {
                        int end = extent[s].second;
                        if (s == from) --end;
                        next.append(key, extent[s].first, end - extent[s].first);
                        if (s == to) next += block;
                        next += '|';
                    }
                    if (parent
                            .emplace(next, std::make_pair(key, PackedMove{block,
                                                                          static_cast<signed char>(from),
                                                                          static_cast<signed char>(to)}))
                            .second) {
                        frontier.push(std::move(next));
                    }
                }
            }
        }
        return {SolveResult::Status::unsolvable, {}};
    }

    // Non-optimal plan for large boards: clear stack 0 onto stack 2, then
    // build the goal tower bottom-up, digging each needed block out of
    // whichever buffer holds it.  Requires the goal to be a single tower on
    // stack 0 (the generated layout), otherwise the range is exceeded.
    static SolveResult solve_constructive(const PuzzleInstance& inst) {
        const auto& goal_state = std::get<BlocksState>(inst.goal);
        const int stacks = static_cast<int>(goal_state.stacks.size());
        if (stacks < 3) return {SolveResult::Status::range_exceeded, {}};
        for (int s = 1; s < stacks; ++s) {
            if (!goal_state.stacks[s].empty()) return {SolveResult::Status::range_exceeded, {}};
        }
        BlocksState board = std::get<BlocksState>(inst.initial);
        SolveResult result;
        auto shift = [&](int from, int to) {
            const std::string block = board.stacks[from].back();
            board.stacks[from].pop_back();
            board.stacks[to].push_back(block);
            result.moves.push_back(BlocksMove{block, from, to});
        };
        while (!board.stacks[0].empty()) shift(0, 2);
        for (const auto& needed : goal_state.stacks[0]) {
            int holder = -1;
            for (int s = 1; s < stacks && holder < 0; ++s) {
                for (const auto& block : board.stacks[s]) {
                    if (block == needed) {
                        holder = s;
                        break;
                    }
                }
            }
            if (holder < 0) return {SolveResult::Status::range_exceeded, {}};
            const int dump = holder == 1 ? 2 : 1;
            while (board.stacks[holder].back() != needed) shift(holder, dump);
            shift(holder, 0);
        }
        return result;
    }
};

}  // namespace

const Environment& blocks_environment() {
    static const BlocksEnv env;
    return env;
}

}  // namespace pzb
