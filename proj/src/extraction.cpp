#include "puzzlebench/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace pzb {
namespace {

// ---------------------------------------------------------------------------
// Tolerant bracket-list parser
// ---------------------------------------------------------------------------

struct Node;
using NodeList = std::vector<Node>;
struct Node {
    std::variant<long long, std::string, NodeList> value;
};

struct Parser {
    const std::string& text;
    std::size_t at;

    bool done() const { return at >= text.size(); }
    char peek() const { return text[at]; }

    // Whitespace and "#"-to-end-of-line comments are interchangeable between
    // tokens; quoted strings are consumed atomically elsewhere, so a '#'
    // inside one never reaches this point.
    void skip_ws() {
        while (!done()) {
            const char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++at;
            } else if (c == '#') {
                while (!done() && peek() != '\n') ++at;
            } else {
                break;
            }
        }
    }

    bool parse_string(Node& out) {
        const char quote = peek();
        ++at;
        std::string s;
        while (!done()) {
            const char c = peek();
            if (c == quote) {
                ++at;
                out.value = std::move(s);
                return true;
            }
            if (c == '\\' && at + 1 < text.size()) {
                ++at;
                s += peek();
                ++at;
                continue;
            }
            if (c == '\n') return false;  // strings do not span lines
            s += c;
            ++at;
        }
        return false;
    }

    bool parse_int(Node& out) {
        std::size_t start = at;
        if (peek() == '-') ++at;
        std::size_t digits = 0;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
            ++at;
            ++digits;
        }
        if (digits == 0) return false;
        if (!done() && peek() == '.') return false;  // floats are not moves
        out.value = std::stoll(text.substr(start, at - start));
        return true;
    }

    bool parse_value(Node& out) {
        skip_ws();
        if (done()) return false;
        const char c = peek();
        if (c == '[') return parse_list(out);
        if (c == '\'' || c == '"') return parse_string(out);
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return parse_int(out);
        return false;
    }

    bool parse_list(Node& out) {
        if (done() || peek() != '[') return false;
        ++at;
        NodeList items;
        skip_ws();
        if (!done() && peek() == ']') {
            ++at;
            out.value = std::move(items);
            return true;
        }
        while (true) {
            Node item;
            if (!parse_value(item)) return false;
            items.push_back(std::move(item));
            skip_ws();
            if (done()) return false;
            if (peek() == ',') {
                ++at;
                skip_ws();
                if (!done() && peek() == ']') {  // trailing comma
                    ++at;
                    break;
                }
                continue;
            }
            if (peek() == ']') {
                ++at;
                break;
            }
            return false;
        }
        out.value = std::move(items);
        return true;
    }
};

// ---------------------------------------------------------------------------
// Node -> typed move conversion
// ---------------------------------------------------------------------------

std::optional<int> int_of(const Node& node) {
    if (const auto* i = std::get_if<long long>(&node.value)) {
        if (*i < -1000000 || *i > 1000000) return std::nullopt;
        return static_cast<int>(*i);
    }
    if (const auto* s = std::get_if<std::string>(&node.value)) {
        if (s->empty() || s->size() > 7) return std::nullopt;
        std::size_t i = s->front() == '-' ? 1 : 0;
        if (i == s->size()) return std::nullopt;
        for (; i < s->size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>((*s)[i]))) return std::nullopt;
        }
        return std::stoi(*s);
    }
    return std::nullopt;
}

const std::string* string_of(const Node& node) {
    return std::get_if<std::string>(&node.value);
}

bool is_river_id(const std::string& s) {
    if (s.size() < 3 || (s[0] != 'a' && s[0] != 'A') || s[1] != '_') return false;
    for (std::size_t i = 2; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

bool is_block_label(const std::string& s) {
    if (s.empty() || s.size() > 2) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

std::optional<Move> move_of(const NodeList& items, PuzzleKind kind) {
    switch (kind) {
        case PuzzleKind::hanoi: {
            if (items.size() != 3) return std::nullopt;
            auto disk = int_of(items[0]), from = int_of(items[1]), to = int_of(items[2]);
            if (!disk || !from || !to) return std::nullopt;
            return HanoiMove{*disk, *from, *to};
        }
        case PuzzleKind::checkers: {
            if (items.size() != 3) return std::nullopt;
            const std::string* color = string_of(items[0]);
            if (!color || (*color != "R" && *color != "B")) return std::nullopt;
            auto from = int_of(items[1]), to = int_of(items[2]);
            if (!from || !to) return std::nullopt;
            return CheckersMove{(*color)[0], *from, *to};
        }
        case PuzzleKind::river: {
            if (items.empty()) return std::nullopt;
            std::vector<std::string> passengers;
            for (const auto& item : items) {
                const std::string* id = string_of(item);
                if (!id || !is_river_id(*id)) return std::nullopt;
                passengers.push_back(*id);
            }
            return RiverMove{std::move(passengers)};
        }
        case PuzzleKind::blocks: {
            if (items.size() != 3) return std::nullopt;
            const std::string* block = string_of(items[0]);
            if (!block || !is_block_label(*block)) return std::nullopt;
            auto from = int_of(items[1]), to = int_of(items[2]);
            if (!from || !to) return std::nullopt;
            return BlocksMove{*block, *from, *to};
        }
    }
    return std::nullopt;
}

std::optional<MoveList> move_list_of(const Node& node, PuzzleKind kind) {
    const auto* items = std::get_if<NodeList>(&node.value);
    if (!items) return std::nullopt;
    MoveList moves;
    for (const auto& item : *items) {
        const auto* inner = std::get_if<NodeList>(&item.value);
        if (!inner) return std::nullopt;
        auto move = move_of(*inner, kind);
        if (!move) return std::nullopt;
        moves.push_back(std::move(*move));
    }
    return moves;
}

// Matches "moves" at a word boundary followed by '=' and an opening bracket;
// returns the bracket position.
std::optional<std::size_t> match_moves_anchor(const std::string& text, std::size_t at) {
    if (text.compare(at, 5, "moves") != 0) return std::nullopt;
    if (at > 0) {
        const char prev = text[at - 1];
        if (std::isalnum(static_cast<unsigned char>(prev)) || prev == '_') return std::nullopt;
    }
    std::size_t j = at + 5;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j >= text.size() || text[j] != '=') return std::nullopt;
    ++j;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j >= text.size() || text[j] != '[') return std::nullopt;
    return j;
}

// A '[' whose next token is another '[' (whitespace/comments in between).
bool opens_list_of_lists(const std::string& text, std::size_t at) {
    if (text[at] != '[') return false;
    Parser probe{text, at + 1};
    probe.skip_ws();
    return !probe.done() && probe.peek() == '[';
}

}  // namespace

std::string to_string(SolutionSource source) {
    return source == SolutionSource::thinking ? "thinking" : "final";
}

ExtractionResult extract(const std::string& text, PuzzleKind kind, SolutionSource source) {
    ExtractionResult result;
    std::vector<MoveList> seen;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t list_at = std::string::npos;
        std::size_t span_begin = i;
        if (auto anchored = match_moves_anchor(text, i)) {
            list_at = *anchored;
        } else if (opens_list_of_lists(text, i)) {
            list_at = i;
        }
        if (list_at == std::string::npos) {
            ++i;
            continue;
        }
        Parser parser{text, list_at};
        Node node;
        // On failure, resume just inside the failed bracket: nested salvageable
        // lists are still found, but the same bracket is never counted twice.
        if (!parser.parse_list(node)) {
            ++result.dropped;
            i = list_at + 1;
            continue;
        }
        auto moves = move_list_of(node, kind);
        if (!moves) {
            ++result.dropped;
            i = list_at + 1;
            continue;
        }
        const std::size_t span_end = parser.at;
        if (std::find(seen.begin(), seen.end(), *moves) == seen.end()) {
            seen.push_back(*moves);
            ExtractedSolution sol;
            sol.moves = std::move(*moves);
            sol.source = source;
            sol.span_begin = span_begin;
            sol.span_end = span_end;
            sol.normalized_position =
                text.empty() ? 0.0
                             : std::clamp(static_cast<double>(span_begin) /
                                              static_cast<double>(text.size()),
                                          0.0, 1.0);
            sol.ordinal = static_cast<int>(result.solutions.size());
            result.solutions.push_back(std::move(sol));
        }
        i = span_end;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

namespace {

std::string base64_decode(const std::string& in) {
    static const std::string alphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    int bits = 0, value = 0;
    for (char c : in) {
        if (c == '=') break;
        const std::size_t idx = alphabet.find(c);
        if (idx == std::string::npos) throw std::runtime_error("invalid base64 in vocabulary");
        value = (value << 6) | static_cast<int>(idx);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out += static_cast<char>((value >> bits) & 0xFF);
        }
    }
    return out;
}

}  // namespace

Tokenizer Tokenizer::character() { return Tokenizer(); }

Tokenizer Tokenizer::bpe_from_file(const std::string& vocab_path) {
    std::ifstream in(vocab_path);
    if (!in) throw std::runtime_error("cannot open BPE vocabulary: " + vocab_path);
    Tokenizer tok;
    tok.mode_ = Mode::bpe;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::size_t space = line.find(' ');
        if (space == std::string::npos) {
            throw std::runtime_error("malformed vocabulary line: " + line);
        }
        tok.ranks_[base64_decode(line.substr(0, space))] = std::stol(line.substr(space + 1));
    }
    if (tok.ranks_.empty()) throw std::runtime_error("empty BPE vocabulary: " + vocab_path);
    return tok;
}

std::vector<std::size_t> Tokenizer::token_lengths(const std::string& text) const {
    std::vector<std::size_t> lengths;
    if (mode_ == Mode::character) {
        lengths.assign(text.size(), 1);
        return lengths;
    }
    std::size_t i = 0;
    while (i < text.size()) {
        // Chunking: a non-whitespace run plus at most one preceding space;
        // any other whitespace run stands alone.
        std::size_t begin = i;
        if (text[i] == ' ' && i + 1 < text.size() &&
            !std::isspace(static_cast<unsigned char>(text[i + 1]))) {
            ++i;
        }
        if (std::isspace(static_cast<unsigned char>(text[begin])) && i == begin) {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
                // Leave a final single space to glue onto a following word.
                if (text[i] == ' ' && i + 1 < text.size() &&
                    !std::isspace(static_cast<unsigned char>(text[i + 1]))) {
                    break;
                }
                ++i;
            }
        } else {
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        }
        const std::string chunk = text.substr(begin, i - begin);

        // Greedy lowest-rank adjacent merges within the chunk.
        std::vector<std::string> parts;
        for (char c : chunk) parts.emplace_back(1, c);
        while (parts.size() > 1) {
            long best_rank = -1;
            std::size_t best_at = 0;
            for (std::size_t p = 0; p + 1 < parts.size(); ++p) {
                auto hit = ranks_.find(parts[p] + parts[p + 1]);
                if (hit == ranks_.end()) continue;
                if (best_rank < 0 || hit->second < best_rank) {
                    best_rank = hit->second;
                    best_at = p;
                }
            }
            if (best_rank < 0) break;
            parts[best_at] += parts[best_at + 1];
            parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(best_at) + 1);
        }
        for (const auto& part : parts) lengths.push_back(part.size());
    }
    return lengths;
}

std::size_t Tokenizer::count_tokens(const std::string& text) const {
    if (mode_ == Mode::character) return text.size();
    return token_lengths(text).size();
}

std::size_t Tokenizer::token_index_at(const std::string& text, std::size_t byte_offset) const {
    if (mode_ == Mode::character) return std::min(byte_offset, text.empty() ? 0 : text.size() - 1);
    const auto lengths = token_lengths(text);
    std::size_t covered = 0;
    for (std::size_t idx = 0; idx < lengths.size(); ++idx) {
        covered += lengths[idx];
        if (byte_offset < covered) return idx;
    }
    return lengths.empty() ? 0 : lengths.size() - 1;
}

double position_of(ExtractedSolution& solution, const std::string& full_text,
                   const Tokenizer& tokenizer) {
    if (full_text.empty()) {
        throw std::invalid_argument("positional normalization needs non-empty text");
    }
    double position = 0.0;
    if (tokenizer.mode() == Tokenizer::Mode::character) {
        position = static_cast<double>(solution.span_begin) / static_cast<double>(full_text.size());
    } else {
        const std::size_t index = tokenizer.token_index_at(full_text, solution.span_begin);
        const std::size_t total = tokenizer.count_tokens(full_text);
        solution.token_index = index;
        position = total == 0 ? 0.0 : static_cast<double>(index) / static_cast<double>(total);
    }
    position = std::clamp(position, 0.0, 1.0);
    solution.normalized_position = position;
    return position;
}

// ---------------------------------------------------------------------------
// <think> segmentation
// ---------------------------------------------------------------------------

ThinkSplit split_think_tags(const std::string& transcript) {
    static const std::string open = "<think>";
    static const std::string close = "</think>";
    ThinkSplit split;
    const std::size_t begin = transcript.find(open);
    if (begin == std::string::npos) {
        split.final_text = transcript;
        return split;
    }
    const std::size_t body = begin + open.size();
    const std::size_t end = transcript.find(close, body);
    if (end == std::string::npos) {
        split.final_text = transcript;
        return split;
    }
    split.thinking = transcript.substr(body, end - body);
    split.final_text = transcript.substr(0, begin) + transcript.substr(end + close.size());
    return split;
}

}  // namespace pzb
