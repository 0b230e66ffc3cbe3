#include <algorithm>
#include <bit>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "envs_internal.hpp"

namespace pzb {
namespace {

// Individuals are numbered 0..2n-1: even index 2i is actor a_{i+1}, odd index
// 2i+1 is the matching agent A_{i+1}.
std::string label_of(int idx) {
    return (idx % 2 == 0 ? "a_" : "A_") + std::to_string(idx / 2 + 1);
}

std::optional<int> index_of(const std::string& label, int n) {
    if (label.size() < 3 || label[1] != '_') return std::nullopt;
    if (label[0] != 'a' && label[0] != 'A') return std::nullopt;
    int pair = 0;
    for (size_t i = 2; i < label.size(); ++i) {
        if (label[i] < '0' || label[i] > '9') return std::nullopt;
        pair = pair * 10 + (label[i] - '0');
        if (pair > n) return std::nullopt;
    }
    if (pair < 1 || pair > n) return std::nullopt;
    return (pair - 1) * 2 + (label[0] == 'A' ? 1 : 0);
}

// A group is unsafe when some actor is there without their own agent while any
// agent at all is present.
bool group_safe(unsigned mask, int n) {
    unsigned agents = 0;
    for (int i = 0; i < n; ++i) agents |= (mask >> (2 * i + 1)) & 1u;
    if (!agents) return true;
    for (int i = 0; i < n; ++i) {
        const bool actor_here = (mask >> (2 * i)) & 1u;
        const bool own_agent_here = (mask >> (2 * i + 1)) & 1u;
        if (actor_here && !own_agent_here) return false;
    }
    return true;
}

bool set_safe(const std::set<std::string>& group) {
    bool any_agent = false;
    for (const auto& who : group) {
        if (who[0] == 'A') any_agent = true;
    }
    if (!any_agent) return true;
    for (const auto& who : group) {
        if (who[0] == 'a' && !group.count("A" + who.substr(1))) return false;
    }
    return true;
}

// Within one crossing, list the agent before the actor of each pair, pairs in
// ascending order (matches the worked example "A_2 then a_2").
std::vector<std::string> ordered_passengers(unsigned mask, int n) {
    std::vector<int> idx;
    for (int i = 0; i < 2 * n; ++i) {
        if ((mask >> i) & 1u) idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end(), [](int a, int b) {
        if (a / 2 != b / 2) return a / 2 < b / 2;
        return a % 2 > b % 2;
    });
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(label_of(i));
    return out;
}

class RiverEnv final : public Environment {
public:
    PuzzleKind kind() const override { return PuzzleKind::river; }

    PuzzleInstance make_instance(int size_n, const Params& params) const override {
        if (size_n < 2 || size_n > 20) {
            throw std::invalid_argument("river: n must be in 2..20");
        }
        const int k = river_boat_capacity(size_n, params);
        if (k != 2 && k != 3) throw std::invalid_argument("river: boat capacity must be 2 or 3");
        PuzzleInstance inst;
        inst.kind = kind();
        inst.size_n = size_n;
        inst.params = params;
        RiverState initial;
        initial.boat_capacity = k;
        for (int i = 0; i < 2 * size_n; ++i) initial.left.insert(label_of(i));
        RiverState goal;
        goal.boat_capacity = k;
        goal.boat_on_left = false;
        goal.right = initial.left;
        inst.initial = initial;
        inst.goal = goal;
        inst.solvable = k == 2 ? size_n <= 3 : size_n <= 5;
        if (inst.solvable && size_n <= kRiverMaxBfsN) {
            auto solved = solve_mask(size_n, k);
            inst.min_moves = solved ? std::optional<std::uint64_t>(solved->size()) : std::nullopt;
        }
        inst.instance_id = instance_id(kind(), size_n, params);
        return inst;
    }

    MoveResult validate_move(const PuzzleState& state, const Move& move) const override {
        const auto* s = std::get_if<RiverState>(&state);
        const auto* m = std::get_if<RiverMove>(&move);
        if (!s || !m) return RuleViolation::kind_mismatch;
        const int n = static_cast<int>(s->left.size() + s->right.size()) / 2;
        std::set<std::string> boarding;
        for (const auto& who : m->passengers) {
            if (!index_of(who, n)) return RuleViolation::unknown_individual;
            if (!boarding.insert(who).second) return RuleViolation::duplicate_passenger;
        }
        if (boarding.empty()) return RuleViolation::empty_boat;
        if (static_cast<int>(boarding.size()) > s->boat_capacity) {
            return RuleViolation::overloaded_boat;
        }
        const auto& here = s->boat_on_left ? s->left : s->right;
        for (const auto& who : boarding) {
            if (!here.count(who)) return RuleViolation::passenger_not_on_boat_side;
        }
        if (!set_safe(boarding)) return RuleViolation::unprotected_actor;
        RiverState next = *s;
        auto& from_bank = next.boat_on_left ? next.left : next.right;
        auto& to_bank = next.boat_on_left ? next.right : next.left;
        for (const auto& who : boarding) {
            from_bank.erase(who);
            to_bank.insert(who);
        }
        next.boat_on_left = !next.boat_on_left;
        if (!set_safe(next.left) || !set_safe(next.right)) {
            return RuleViolation::unprotected_actor;
        }
        return PuzzleState{std::move(next)};
    }

    SolveResult solve(const PuzzleInstance& inst) const override {
        if (inst.size_n > kRiverMaxBfsN) return {SolveResult::Status::range_exceeded, {}};
        const int k = river_boat_capacity(inst.size_n, inst.params);
        auto crossings = solve_mask(inst.size_n, k);
        if (!crossings) return {SolveResult::Status::unsolvable, {}};
        SolveResult result;
        for (unsigned mask : *crossings) {
            result.moves.push_back(RiverMove{ordered_passengers(mask, inst.size_n)});
        }
        return result;
    }

    std::optional<std::uint64_t> min_moves(int size_n, const Params& params) const override {
        if (size_n < 2 || size_n > kRiverMaxBfsN) return std::nullopt;
        auto crossings = solve_mask(size_n, river_boat_capacity(size_n, params));
        if (!crossings) return std::nullopt;
        return crossings->size();
    }

    bool goal_reached(const PuzzleInstance& inst, const PuzzleState& state) const override {
        const auto* s = std::get_if<RiverState>(&state);
        const auto* g = std::get_if<RiverState>(&inst.goal);
        if (!s || !g) return false;
        return s->left.empty() && s->right == g->right;
    }

    std::optional<std::string> check_state(int size_n, const Params& params,
                                           const PuzzleState& state) const override {
        const auto* s = std::get_if<RiverState>(&state);
        if (!s) return "state is not a river state";
        if (s->boat_capacity != river_boat_capacity(size_n, params)) {
            return "boat capacity mismatch";
        }
        std::set<std::string> all;
        for (int i = 0; i < 2 * size_n; ++i) all.insert(label_of(i));
        std::set<std::string> seen = s->left;
        for (const auto& who : s->right) {
            if (!seen.insert(who).second) return "individual on both banks";
        }
        if (seen != all) return "banks do not partition the travel party";
        return std::nullopt;
    }

private:
    // BFS over (who-is-on-the-right bitmask, boat side).  Returns the crossing
    // groups along a shortest safe plan, or nullopt when the goal is cut off.
    static std::optional<std::vector<unsigned>> solve_mask(int n, int k) {
        const unsigned full = (1u << (2 * n)) - 1u;
        auto bank_safe = [&](unsigned right) {
            return group_safe(right, n) && group_safe(full & ~right, n);
        };
        const unsigned start = 0u << 1 | 0u;  // everyone left, boat left
        std::unordered_map<unsigned, std::pair<unsigned, unsigned>> parent;  // state -> (prev, move)
        std::queue<unsigned> frontier;
        parent.emplace(start, std::make_pair(start, 0u));
        frontier.push(start);
        while (!frontier.empty()) {
            const unsigned at = frontier.front();
            frontier.pop();
            const unsigned right = at >> 1;
            const bool boat_right = at & 1u;
            if (right == full) {
                std::vector<unsigned> crossings;
                for (unsigned cur = at; cur != start; cur = parent.at(cur).first) {
                    crossings.push_back(parent.at(cur).second);
                }
                std::reverse(crossings.begin(), crossings.end());
                return crossings;
            }
            const unsigned side = boat_right ? right : (full & ~right);
            for (unsigned group = side; group; group = (group - 1) & side) {
                if (std::popcount(group) > k) continue;
                if (!group_safe(group, n)) continue;
                const unsigned next_right = boat_right ? right & ~group : right | group;
                if (!bank_safe(next_right)) continue;
                const unsigned next = next_right << 1 | (boat_right ? 0u : 1u);
                if (parent.emplace(next, std::make_pair(at, group)).second) frontier.push(next);
            }
        }
        return std::nullopt;
    }
};

}  // namespace

const Environment& river_environment() {
    static const RiverEnv env;
    return env;
}

}  // namespace pzb
