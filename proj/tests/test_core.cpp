#include <doctest.h>
#include <nlohmann/json.hpp>

#include "puzzlebench/core.hpp"

using namespace pzb;

TEST_CASE("puzzle kind names round-trip") {
    for (PuzzleKind kind : all_puzzle_kinds) {
        auto back = puzzle_kind_from_string(to_string(kind));
        REQUIRE(back.has_value());
        CHECK(*back == kind);
    }
    CHECK_FALSE(puzzle_kind_from_string("chess").has_value());
}

TEST_CASE("sha256 matches published test vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(short_hash("abc") == "ba7816bf8f01cfea");
}

TEST_CASE("instance ids are stable, short, and size-sensitive") {
    const std::string id = instance_id(PuzzleKind::hanoi, 3, {});
    CHECK(id.size() == 16);
    CHECK(id == instance_id(PuzzleKind::hanoi, 3, {}));
    CHECK(id != instance_id(PuzzleKind::hanoi, 4, {}));
    CHECK(id != instance_id(PuzzleKind::checkers, 3, {}));
    CHECK(instance_id(PuzzleKind::river, 4, {{"k", 2}}) !=
          instance_id(PuzzleKind::river, 4, {{"k", 3}}));
    CHECK_THROWS_AS(instance_id(PuzzleKind::hanoi, 0, {}), std::invalid_argument);
}

TEST_CASE("block labels follow spreadsheet order") {
    CHECK(block_label(0) == "A");
    CHECK(block_label(25) == "Z");
    CHECK(block_label(26) == "AA");
    CHECK(block_label(27) == "AB");
    CHECK(block_label(51) == "AZ");
    CHECK(block_label(52) == "BA");
}

TEST_CASE("moves render in prompt notation") {
    CHECK(format_move(HanoiMove{1, 0, 2}) == "[1, 0, 2]");
    CHECK(format_move(CheckersMove{'R', 0, 1}) == "['R', 0, 1]");
    CHECK(format_move(RiverMove{{"A_2", "a_2"}}) == "[\"A_2\", \"a_2\"]");
    CHECK(format_move(BlocksMove{"C", 1, 2}) == "[\"C\", 1, 2]");

    MoveList hanoi = {HanoiMove{1, 0, 2}, HanoiMove{2, 0, 1}};
    CHECK(format_move_list(PuzzleKind::hanoi, hanoi) == "moves = [[1, 0, 2], [2, 0, 1]]");

    MoveList river = {RiverMove{{"A_2", "a_2"}}, RiverMove{{"A_2"}}};
    CHECK(format_move_list(PuzzleKind::river, river) ==
          "moves=[[\"A_2\", \"a_2\"], [\"A_2\"]]");
}

TEST_CASE("state json round-trips for every kind") {
    HanoiState h;
    h.pegs = {std::vector<int>{3, 2}, {}, {1}};
    CheckersState c;
    c.cells = {'R', '_', 'B'};
    RiverState r;
    r.left = {"a_1"};
    r.right = {"A_1"};
    r.boat_on_left = false;
    r.boat_capacity = 3;
    BlocksState b;
    b.stacks = {{"A", "B"}, {"C"}, {}};

    CHECK(std::get<HanoiState>(state_from_json(PuzzleKind::hanoi, state_to_json(h))) == h);
    CHECK(std::get<CheckersState>(state_from_json(PuzzleKind::checkers, state_to_json(c))) == c);
    CHECK(std::get<RiverState>(state_from_json(PuzzleKind::river, state_to_json(r))) == r);
    CHECK(std::get<BlocksState>(state_from_json(PuzzleKind::blocks, state_to_json(b))) == b);

    CHECK(state_to_json(h).dump() == "[[3,2],[],[1]]");
}

TEST_CASE("move json round-trips for every kind") {
    Move moves[] = {HanoiMove{2, 0, 1}, CheckersMove{'B', 4, 2}, RiverMove{{"a_1", "A_1"}},
                    BlocksMove{"AA", 0, 2}};
    PuzzleKind kinds[] = {PuzzleKind::hanoi, PuzzleKind::checkers, PuzzleKind::river,
                          PuzzleKind::blocks};
    for (int i = 0; i < 4; ++i) {
        CHECK(move_from_json(kinds[i], move_to_json(moves[i])) == moves[i]);
    }
}

TEST_CASE("verdict json carries enough to round-trip standalone") {
    Verdict v;
    v.moves_checked = 5;
    v.first_failure_index = 4;
    v.failure_reason = FailureReason::constraint_violation;
    v.success = false;
    HanoiState h;
    h.pegs = {std::vector<int>{2, 1}, {}, {3}};
    v.final_state = h;

    Verdict back = verdict_from_json(verdict_to_json(v));
    CHECK(back.moves_checked == v.moves_checked);
    CHECK(back.first_failure_index == v.first_failure_index);
    CHECK(back.failure_reason == v.failure_reason);
    CHECK(back.success == v.success);
    CHECK(std::get<HanoiState>(back.final_state) == h);
}

TEST_CASE("run record json round-trips") {
    RunRecord rec;
    rec.run_id = "run-1";
    rec.instance_id = "0123456789abcdef";
    rec.sample_idx = 7;
    rec.model_id = "oracle";
    rec.prompt_hash = "feedfacefeedface";
    rec.response_text = "moves = [[1, 0, 2]]";
    rec.thinking_text = "let me think";
    rec.usage = {12, 34, 56};
    rec.extracted = {"thinking:0", "final:1"};
    rec.final_verdict.success = true;
    rec.final_verdict.moves_checked = 1;
    HanoiState h;
    h.pegs = {std::vector<int>{}, {}, {1}};
    rec.final_verdict.final_state = h;
    rec.t_start_ms = 100;
    rec.t_end_ms = 250;

    RunRecord back = record_from_json(record_to_json(rec));
    CHECK(back.run_id == rec.run_id);
    CHECK(back.instance_id == rec.instance_id);
    CHECK(back.sample_idx == rec.sample_idx);
    CHECK(back.model_id == rec.model_id);
    CHECK(back.prompt_hash == rec.prompt_hash);
    CHECK(back.response_text == rec.response_text);
    CHECK(back.thinking_text == rec.thinking_text);
    CHECK(back.usage == rec.usage);
    CHECK(back.extracted == rec.extracted);
    CHECK(back.final_verdict.success);
    CHECK(back.t_start_ms == 100);
    CHECK(back.t_end_ms == 250);

    RunRecord plain;
    plain.run_id = "run-2";
    plain.instance_id = "x";
    plain.final_verdict.final_state = CheckersState{{'R', '_', 'B'}};
    RunRecord plain_back = record_from_json(record_to_json(plain));
    CHECK_FALSE(plain_back.thinking_text.has_value());
}

TEST_CASE("instance json round-trips") {
    PuzzleInstance inst;
    inst.kind = PuzzleKind::river;
    inst.size_n = 2;
    inst.params = {{"k", 2}};
    RiverState initial;
    initial.left = {"a_1", "A_1", "a_2", "A_2"};
    inst.initial = initial;
    RiverState goal;
    goal.right = initial.left;
    goal.boat_on_left = false;
    inst.goal = goal;
    inst.min_moves = 5;
    inst.solvable = true;
    inst.instance_id = instance_id(inst.kind, inst.size_n, inst.params);

    PuzzleInstance back = instance_from_json(instance_to_json(inst));
    CHECK(back.kind == inst.kind);
    CHECK(back.size_n == inst.size_n);
    CHECK(back.params == inst.params);
    CHECK(std::get<RiverState>(back.initial) == initial);
    CHECK(std::get<RiverState>(back.goal) == goal);
    CHECK(back.min_moves == inst.min_moves);
    CHECK(back.solvable == inst.solvable);
    CHECK(back.instance_id == inst.instance_id);
}

TEST_CASE("violations map onto the verdict failure taxonomy") {
    CHECK(failure_reason_for(RuleViolation::larger_on_smaller) ==
          FailureReason::constraint_violation);
    CHECK(failure_reason_for(RuleViolation::backward_move) == FailureReason::constraint_violation);
    CHECK(failure_reason_for(RuleViolation::unprotected_actor) ==
          FailureReason::constraint_violation);
    CHECK(failure_reason_for(RuleViolation::not_topmost) == FailureReason::illegal_move);
    CHECK(failure_reason_for(RuleViolation::index_out_of_bounds) == FailureReason::illegal_move);
    CHECK(failure_reason_for(RuleViolation::source_empty) == FailureReason::illegal_move);
}
