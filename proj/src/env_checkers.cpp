#include <cstdlib>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>

#include "envs_internal.hpp"

namespace pzb {
namespace {

std::string pack(const CheckersState& s) { return std::string(s.cells.begin(), s.cells.end()); }

class CheckersEnv final : public Environment {
public:
    PuzzleKind kind() const override { return PuzzleKind::checkers; }

    PuzzleInstance make_instance(int size_n, const Params& params) const override {
        if (size_n < 1 || size_n > 30) {
            throw std::invalid_argument("checkers: n must be in 1..30");
        }
        PuzzleInstance inst;
        inst.kind = kind();
        inst.size_n = size_n;
        inst.params = params;
        CheckersState initial;
        initial.cells.assign(2 * size_n + 1, '_');
        for (int i = 0; i < size_n; ++i) initial.cells[i] = 'R';
        for (int i = size_n + 1; i < 2 * size_n + 1; ++i) initial.cells[i] = 'B';
        CheckersState goal;
        goal.cells.assign(2 * size_n + 1, '_');
        for (int i = 0; i < size_n; ++i) goal.cells[i] = 'B';
        for (int i = size_n + 1; i < 2 * size_n + 1; ++i) goal.cells[i] = 'R';
        inst.initial = initial;
        inst.goal = goal;
        inst.min_moves = min_moves(size_n, params);
        inst.solvable = true;
        inst.instance_id = instance_id(kind(), size_n, params);
        return inst;
    }

    MoveResult validate_move(const PuzzleState& state, const Move& move) const override {
        const auto* s = std::get_if<CheckersState>(&state);
        const auto* m = std::get_if<CheckersMove>(&move);
        if (!s || !m) return RuleViolation::kind_mismatch;
        const int len = static_cast<int>(s->cells.size());
        if (m->from < 0 || m->from >= len || m->to < 0 || m->to >= len) {
            return RuleViolation::index_out_of_bounds;
        }
        if ((m->color != 'R' && m->color != 'B') || s->cells[m->from] != m->color) {
            return RuleViolation::wrong_color;
        }
        if (s->cells[m->to] != '_') return RuleViolation::target_not_empty;
        const int delta = m->to - m->from;
        // Red checkers only ever move right, blue only left.
        if (m->color == 'R' ? delta < 0 : delta > 0) return RuleViolation::backward_move;
        const int dist = std::abs(delta);
        if (dist == 2) {
            const char mid = s->cells[(m->from + m->to) / 2];
            const char other = m->color == 'R' ? 'B' : 'R';
            if (mid != other) return RuleViolation::bad_jump;
        } else if (dist != 1) {
            return RuleViolation::invalid_distance;
        }
        CheckersState next = *s;
        next.cells[m->from] = '_';
        next.cells[m->to] = m->color;
        return PuzzleState{std::move(next)};
    }

    SolveResult solve(const PuzzleInstance& inst) const override {
        if (inst.size_n > kCheckersMaxBfsN) return {SolveResult::Status::range_exceeded, {}};
        const std::string start = pack(std::get<CheckersState>(inst.initial));
        const std::string goal = pack(std::get<CheckersState>(inst.goal));
        std::map<std::string, std::pair<std::string, CheckersMove>> parent;
        std::queue<std::string> frontier;
        frontier.push(start);
        parent.emplace(start, std::make_pair(std::string{}, CheckersMove{}));
        while (!frontier.empty()) {
            std::string board = frontier.front();
            frontier.pop();
            if (board == goal) {
                SolveResult result;
                for (std::string at = board; at != start;) {
                    const auto& [prev, mv] = parent.at(at);
                    result.moves.push_back(mv);
                    at = prev;
                }
                std::reverse(result.moves.begin(), result.moves.end());
                return result;
            }
            const int len = static_cast<int>(board.size());
            for (int from = 0; from < len; ++from) {
                const char color = board[from];
                if (color == '_') continue;
                const int dir = color == 'R' ? 1 : -1;
                for (int dist : {1, 2}) {
                    const int to = from + dir * dist;
                    if (to < 0 || to >= len || board[to] != '_') continue;
                    if (dist == 2 && board[(from + to) / 2] == color) continue;
                    if (dist == 2 && board[(from + to) / 2] == '_') continue;
                    std::string next = board;
                    next[from] = '_';
                    next[to] = color;
                    if (parent.emplace(next, std::make_pair(board, CheckersMove{color, from, to}))
                            .second) {
                        frontier.push(std::move(next));
                    }
                }
            }
        }
        return {SolveResult::Status::unsolvable, {}};
    }

    std::optional<std::uint64_t> min_moves(int size_n, const Params&) const override {
        if (size_n < 1) return std::nullopt;
        const std::uint64_t side = static_cast<std::uint64_t>(size_n) + 1;
        return side * side - 1;
    }

    std::optional<std::string> check_state(int size_n, const Params&,
                                           const PuzzleState& state) const override {
        const auto* s = std::get_if<CheckersState>(&state);
        if (!s) return "state is not a checkers state";
        if (static_cast<int>(s->cells.size()) != 2 * size_n + 1) return "board length mismatch";
        int reds = 0, blues = 0, blanks = 0;
        for (char c : s->cells) {
            if (c == 'R') ++reds;
            else if (c == 'B') ++blues;
            else if (c == '_') ++blanks;
            else return "unknown cell marker";
        }
        if (reds != size_n || blues != size_n || blanks != 1) return "checker counts mismatch";
        return std::nullopt;
    }
};

}  // namespace

const Environment& checkers_environment() {
    static const CheckersEnv env;
    return env;
}

}  // namespace pzb
