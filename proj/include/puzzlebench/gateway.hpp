#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "puzzlebench/core.hpp"
#include "puzzlebench/prompts.hpp"

// Model providers: a live HTTP chat-completion client, a replay provider over
// canned transcripts, and synthetic providers (oracle-answering and
// fault-injecting) for offline end-to-end runs.

namespace pzb {

enum class ProviderKind { http_chat, replay, oracle_synthetic, corrupting_synthetic };

std::string to_string(ProviderKind kind);
std::optional<ProviderKind> provider_kind_from_string(const std::string& name);

struct ProviderConfig {
    ProviderKind kind = ProviderKind::oracle_synthetic;
    std::string model_id = "oracle";
    std::string endpoint;     // http_chat: base URL, e.g. http://host:port
    std::string api_key_env;  // name of the env var holding the credential
    double temperature = 1.0;
    int max_output_tokens = 64000;
    int samples_per_instance = 25;
    int parallelism = 1;
    int corrupt_index = 0;     // corrupting_synthetic: which move to break
    std::string fixture_path;  // replay: JSONL transcript file
    int max_attempts = 4;      // transport retry cap
    int retry_base_ms = 250;   // exponential backoff base
};

json provider_config_to_json(const ProviderConfig& config);
ProviderConfig provider_config_from_json(const json& j);

struct Completion {
    std::string final_text;
    std::optional<std::string> thinking_text;
    TokenUsage usage;
    std::map<std::string, std::string> provider_meta;
};

// Raised when a request cannot be completed after retries; the runner records
// the failure and continues with other samples.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Provider {
public:
    virtual ~Provider() = default;

    // Synthetic providers derive their answer from the instance; live ones
    // only see the prompt. sample_idx is surfaced in provider metadata.
    virtual Completion request(const PromptPair& prompt, const PuzzleInstance& inst,
                               int sample_idx) = 0;

    // True when identical inputs always produce identical completions (and
    // byte-identical logs under the logical clock).
    virtual bool deterministic() const = 0;
};

std::unique_ptr<Provider> make_provider(const ProviderConfig& config);

}  // namespace pzb
