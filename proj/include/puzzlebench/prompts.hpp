#pragma once

#include <map>
#include <optional>
#include <string>

#include "puzzlebench/core.hpp"

// Renders the per-puzzle system and user prompts from external template
// assets. Rendering is deterministic: identical (instance, variant) inputs
// produce identical texts and hash.

namespace pzb {

enum class PromptVariant { standard, prescribed_algorithm };

std::string to_string(PromptVariant variant);
std::optional<PromptVariant> prompt_variant_from_string(const std::string& name);

struct PromptPair {
    std::string system_text;
    std::string user_text;
    PromptVariant variant = PromptVariant::standard;
    std::string prompt_hash;  // short hash over both texts
};

// Loads all templates from `<asset_dir>/prompts/` eagerly; rendering is then
// pure and safe for parallel use. The prescribed_algorithm variant appends
// the solving-algorithm scratchpad to the system prompt and exists only for
// hanoi; requesting it elsewhere throws std::invalid_argument.
class PromptLibrary {
public:
    explicit PromptLibrary(const std::string& asset_dir = default_asset_dir());

    PromptPair render(const PuzzleInstance& inst,
                      PromptVariant variant = PromptVariant::standard) const;

    // Compile-time default, overridable with the PUZZLEBENCH_ASSETS
    // environment variable.
    static std::string default_asset_dir();

private:
    std::map<std::string, std::string> templates_;  // file stem -> contents

    const std::string& text(const std::string& stem) const;
};

// `${name}` placeholder substitution; throws std::invalid_argument when a
// placeholder has no value.
std::string substitute_placeholders(const std::string& tmpl,
                                    const std::map<std::string, std::string>& values);

}  // namespace pzb
