#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "puzzlebench/core.hpp"

// Pulls candidate move-list solutions out of raw response/thinking text.
// Candidates are found by anchor scanning ("moves = [" assignments and
// standalone "[[" openers) followed by a tolerant balanced-bracket parser,
// then cleaned (comments stripped), normalized (quote styles, numeric
// strings), converted to typed Moves, and deduplicated keeping the first
// occurrence of identical move lists.

namespace pzb {

enum class SolutionSource { thinking, final_answer };

std::string to_string(SolutionSource source);

struct ExtractedSolution {
    MoveList moves;
    SolutionSource source = SolutionSource::final_answer;
    std::size_t span_begin = 0;  // byte offsets into the source text
    std::size_t span_end = 0;
    std::optional<std::size_t> token_index;
    double normalized_position = 0.0;  // character-mode ratio, clamped to [0,1]
    int ordinal = 0;
};

struct ExtractionResult {
    std::vector<ExtractedSolution> solutions;
    int dropped = 0;  // candidates that failed to parse or convert
};

// Pure and deterministic over (text, kind). Malformed candidates are dropped
// (counted), never repaired; wrong-arity inner lists invalidate the whole
// candidate.
ExtractionResult extract(const std::string& text, PuzzleKind kind, SolutionSource source);

// ---------------------------------------------------------------------------
// Tokenizers for positional normalization
// ---------------------------------------------------------------------------

// character mode: every byte is one token. bpe mode: byte-pair merging over a
// tiktoken-format vocabulary ("<base64 token> <rank>" per line). Text is
// pre-split into chunks (a non-whitespace run glued to one preceding space;
// other whitespace runs form their own chunk), then adjacent-pair merges are
// applied lowest rank first within each chunk.
class Tokenizer {
public:
    enum class Mode { character, bpe };

    static Tokenizer character();
    static Tokenizer bpe_from_file(const std::string& vocab_path);

    Mode mode() const { return mode_; }

    std::size_t count_tokens(const std::string& text) const;

    // Index of the token whose byte range contains `byte_offset`.
    std::size_t token_index_at(const std::string& text, std::size_t byte_offset) const;

private:
    Tokenizer() = default;

    std::vector<std::size_t> token_lengths(const std::string& text) const;

    Mode mode_ = Mode::character;
    std::map<std::string, long> ranks_;
};

// Position of a solution within its full source text: character mode uses
// span start / byte length; bpe mode uses containing-token index / token
// count. Throws std::invalid_argument for empty text. Updates token_index in
// bpe mode.
double position_of(ExtractedSolution& solution, const std::string& full_text,
                   const Tokenizer& tokenizer);

// ---------------------------------------------------------------------------
// Inline thinking segmentation
// ---------------------------------------------------------------------------

struct ThinkSplit {
    std::optional<std::string> thinking;
    std::string final_text;
};

// Splits the first <think>...</think> block out of a transcript. Lossless:
// final_text is the transcript with the block and its delimiters removed;
// absent tags leave the transcript untouched with no thinking text.
ThinkSplit split_think_tags(const std::string& transcript);

}  // namespace pzb
