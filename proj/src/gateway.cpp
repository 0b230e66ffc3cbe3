#include "puzzlebench/gateway.hpp"

#include <chrono>
#include <deque>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "puzzlebench/environments.hpp"
#include "puzzlebench/extraction.hpp"

namespace pzb {
namespace {

const char* provider_kind_names[] = {"http_chat", "replay", "oracle_synthetic",
                                     "corrupting_synthetic"};

// Character-count fallback when a provider reports no usage.
std::int64_t estimated_tokens(const std::string& text) {
    return static_cast<std::int64_t>(text.size());
}

// Produces a copy of `moves` whose move at `index` (clamped) breaks a rule:
// swapping source and destination always yields an illegal move for the
// positional puzzles, and an over-capacity crossing does for the river.
MoveList corrupt_moves(const PuzzleInstance& inst, const MoveList& moves, int index) {
    MoveList out = moves;
    if (out.empty()) return out;
    auto i = static_cast<std::size_t>(
        std::clamp<int>(index, 0, static_cast<int>(out.size()) - 1));
    if (inst.kind == PuzzleKind::river) {
        int capacity = std::get<RiverState>(inst.initial).boat_capacity;
        RiverMove bad;
        for (int p = 0; p < capacity + 1; ++p) {
            int pair = p / 2 + 1;
            bad.passengers.push_back((p % 2 == 0 ? "a_" : "A_") + std::to_string(pair));
        }
        out[i] = bad;
    } else {
        std::visit(
            [](auto& m) {
                using T = std::decay_t<decltype(m)>;
                if constexpr (!std::is_same_v<T, RiverMove>) std::swap(m.from, m.to);
            },
            out[i]);
    }
    return out;
}

std::string no_solution_text() {
    return "I explored the reachable states exhaustively and none of them satisfies "
           "the goal, so I cannot provide a move list.";
}

class OracleSyntheticProvider final : public Provider {
public:
    explicit OracleSyntheticProvider(ProviderConfig config) : config_(std::move(config)) {}

    Completion request(const PromptPair& prompt, const PuzzleInstance& inst,
                       int sample_idx) override {
        Completion c;
        auto solved = environment_for(inst.kind).solve(inst);
        if (solved.status != SolveResult::Status::solved) {
            c.final_text = no_solution_text();
            c.thinking_text = "Let me map out the state space first.";
        } else {
            const std::string answer = format_move_list(inst.kind, solved.moves);
            const std::string wrong =
                format_move_list(inst.kind, corrupt_moves(inst, solved.moves, 0));
            std::ostringstream think;
            think << "Let me try a first sketch of the sequence.\n\n"
                  << wrong
                  << "\n\nWait, the opening move is wrong; redoing it carefully gives\n\n"
                  << answer << "\n\nThat checks out against the rules.\n";
            std::ostringstream fin;
            fin << "Here is the complete solution.\n\n"
                << answer << "\n\nEvery move respects the constraints.\n";
            c.thinking_text = think.str();
            c.final_text = fin.str();
        }
        c.usage.prompt_tokens =
            estimated_tokens(prompt.system_text) + estimated_tokens(prompt.user_text);
        c.usage.completion_tokens = estimated_tokens(c.final_text);
        c.usage.thinking_tokens = c.thinking_text ? estimated_tokens(*c.thinking_text) : 0;
        c.provider_meta = {{"provider", "oracle_synthetic"},
                           {"sample_idx", std::to_string(sample_idx)}};
        return c;
    }

    bool deterministic() const override { return true; }

private:
    ProviderConfig config_;
};

class CorruptingSyntheticProvider final : public Provider {
public:
    explicit CorruptingSyntheticProvider(ProviderConfig config) : config_(std::move(config)) {}

    Completion request(const PromptPair& prompt, const PuzzleInstance& inst,
                       int sample_idx) override {
        Completion c;
        auto solved = environment_for(inst.kind).solve(inst);
        if (solved.status != SolveResult::Status::solved) {
            c.final_text = no_solution_text();
        } else {
            MoveList bad = corrupt_moves(inst, solved.moves, config_.corrupt_index);
            std::ostringstream fin;
            fin << "Here is the complete solution.\n\n"
                << format_move_list(inst.kind, bad) << "\n";
            c.final_text = fin.str();
        }
        c.usage.prompt_tokens =
            estimated_tokens(prompt.system_text) + estimated_tokens(prompt.user_text);
        c.usage.completion_tokens = estimated_tokens(c.final_text);
        c.provider_meta = {{"provider", "corrupting_synthetic"},
                           {"sample_idx", std::to_string(sample_idx)},
                           {"corrupt_index", std::to_string(config_.corrupt_index)}};
        return c;
    }

    bool deterministic() const override { return true; }

private:
    ProviderConfig config_;
};

class ReplayProvider final : public Provider {
public:
    explicit ReplayProvider(ProviderConfig config) : config_(std::move(config)) {
        std::ifstream in(config_.fixture_path);
        if (!in) {
            throw std::runtime_error("replay fixture not readable: " + config_.fixture_path);
        }
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            json j;
            try {
                j = json::parse(line);
            } catch (const json::exception& e) {
                throw std::runtime_error("replay fixture line " + std::to_string(lineno) +
                                         " is not valid JSON: " + e.what());
            }
            Completion c;
            c.final_text = j.at("final_text").get<std::string>();
            if (j.contains("thinking_text") && !j["thinking_text"].is_null()) {
                c.thinking_text = j["thinking_text"].get<std::string>();
            }
            if (j.contains("usage")) {
                const json& u = j["usage"];
                c.usage.prompt_tokens = u.value("prompt_tokens", std::int64_t{0});
                c.usage.completion_tokens = u.value("completion_tokens", std::int64_t{0});
                c.usage.thinking_tokens = u.value("thinking_tokens", std::int64_t{0});
            } else {
                c.usage.completion_tokens = estimated_tokens(c.final_text);
                c.usage.thinking_tokens =
                    c.thinking_text ? estimated_tokens(*c.thinking_text) : 0;
            }
            c.provider_meta = {{"provider", "replay"}};
            by_hash_[j.at("prompt_hash").get<std::string>()].push_back(std::move(c));
        }
    }

    Completion request(const PromptPair& prompt, const PuzzleInstance&, int) override {
        auto it = by_hash_.find(prompt.prompt_hash);
        if (it == by_hash_.end() || it->second.empty()) {
            throw TransportError("replay fixture has no completion left for prompt hash " +
                                 prompt.prompt_hash);
        }
        Completion c = std::move(it->second.front());
        it->second.pop_front();
        return c;
    }

    bool deterministic() const override { return true; }

private:
    ProviderConfig config_;
    std::map<std::string, std::deque<Completion>> by_hash_;
};

class HttpChatProvider final : public Provider {
public:
    explicit HttpChatProvider(ProviderConfig config) : config_(std::move(config)) {
        if (config_.endpoint.empty()) {
            throw std::invalid_argument("http_chat provider requires an endpoint URL");
        }
        // Split "scheme://host:port/optional/path" into client base and path.
        auto scheme_end = config_.endpoint.find("://");
        std::size_t path_start = config_.endpoint.find(
            '/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
        if (path_start == std::string::npos) {
            base_ = config_.endpoint;
            path_ = "/v1/chat/completions";
        } else {
            base_ = config_.endpoint.substr(0, path_start);
            path_ = config_.endpoint.substr(path_start);
        }
        if (!config_.api_key_env.empty()) {
            const char* key = std::getenv(config_.api_key_env.c_str());
            if (key == nullptr || *key == '\0') {
                throw std::invalid_argument("credential environment variable " +
                                            config_.api_key_env + " is not set");
            }
            api_key_ = key;
        }
    }

    Completion request(const PromptPair& prompt, const PuzzleInstance&,
                       int sample_idx) override {
        json body = {{"model", config_.model_id},
                     {"messages",
                      json::array({json{{"role", "system"}, {"content", prompt.system_text}},
                                   json{{"role", "user"}, {"content", prompt.user_text}}})},
                     {"temperature", config_.temperature},
                     {"max_tokens", config_.max_output_tokens}};
        const std::string payload = body.dump();

        std::string last_error = "no attempt made";
        for (int attempt = 0; attempt < std::max(1, config_.max_attempts); ++attempt) {
            if (attempt > 0) back_off(attempt);
            httplib::Client cli(base_);
            cli.set_read_timeout(600, 0);
            cli.set_connection_timeout(10, 0);
            httplib::Headers headers;
            if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
            auto res = cli.Post(path_, headers, payload, "application/json");
            if (!res) {
                last_error = "connection failure: " + httplib::to_string(res.error());
                continue;
            }
            if (res->status == 200) return parse_response(res->body, sample_idx);
            last_error = "HTTP " + std::to_string(res->status);
            if (res->status == 429 || res->status == 503) {
                retry_after_s_ = parse_retry_after(*res);
                continue;
            }
            if (res->status >= 500 || res->status == 408) continue;
            // Remaining 4xx are configuration problems; retrying cannot help.
            throw TransportError("request rejected (" + last_error + "): " + res->body);
        }
        throw TransportError("request failed after " + std::to_string(config_.max_attempts) +
                             " attempts; last error: " + last_error);
    }

    bool deterministic() const override { return false; }

private:
    static std::optional<int> parse_retry_after(const httplib::Response& res) {
        if (!res.has_header("Retry-After")) return std::nullopt;
        try {
            return std::stoi(res.get_header_value("Retry-After"));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    void back_off(int attempt) {
        std::chrono::milliseconds delay{config_.retry_base_ms * (1 << (attempt - 1))};
        if (retry_after_s_) {
            delay = std::max(delay, std::chrono::milliseconds(*retry_after_s_ * 1000));
            retry_after_s_.reset();
        }
        std::this_thread::sleep_for(delay);
    }

    Completion parse_response(const std::string& body, int sample_idx) {
        json j;
        try {
            j = json::parse(body);
        } catch (const json::exception& e) {
            throw TransportError(std::string("response is not valid JSON: ") + e.what());
        }
        Completion c;
        try {
            const json& message = j.at("choices").at(0).at("message");
            std::string content = message.value("content", std::string{});
            if (message.contains("reasoning_content") &&
                message["reasoning_content"].is_string()) {
                c.thinking_text = message["reasoning_content"].get<std::string>();
                c.final_text = content;
            } else {
                // Providers that inline reasoning wrap it in <think> tags.
                ThinkSplit split = split_think_tags(content);
                c.final_text = split.final_text;
                c.thinking_text = split.thinking;
            }
        } catch (const json::exception& e) {
            throw TransportError(std::string("response missing chat fields: ") + e.what());
        }
        if (j.contains("usage") && j["usage"].is_object()) {
            const json& u = j["usage"];
            c.usage.prompt_tokens = u.value("prompt_tokens", std::int64_t{0});
            c.usage.completion_tokens = u.value("completion_tokens", std::int64_t{0});
            if (u.contains("completion_tokens_details") &&
                u["completion_tokens_details"].is_object()) {
                c.usage.thinking_tokens = u["completion_tokens_details"].value(
                    "reasoning_tokens", std::int64_t{0});
            } else {
                c.usage.thinking_tokens = u.value("reasoning_tokens", std::int64_t{0});
            }
        }
        if (c.usage.completion_tokens == 0) {
            c.usage.completion_tokens = estimated_tokens(c.final_text);
        }
        if (c.usage.thinking_tokens == 0 && c.thinking_text) {
            c.usage.thinking_tokens = estimated_tokens(*c.thinking_text);
        }
        if (j.contains("model") && j["model"].is_string()) {
            c.provider_meta["model"] = j["model"].get<std::string>();
        }
        c.provider_meta["provider"] = "http_chat";
        c.provider_meta["sample_idx"] = std::to_string(sample_idx);
        return c;
    }

    ProviderConfig config_;
    std::string base_;
    std::string path_;
    std::string api_key_;
    std::optional<int> retry_after_s_;
};

}  // namespace

std::string to_string(ProviderKind kind) {
    return provider_kind_names[static_cast<int>(kind)];
}

std::optional<ProviderKind> provider_kind_from_string(const std::string& name) {
    for (int i = 0; i < 4; ++i) {
        if (name == provider_kind_names[i]) return static_cast<ProviderKind>(i);
    }
    return std::nullopt;
}

json provider_config_to_json(const ProviderConfig& config) {
    return json{{"kind", to_string(config.kind)},
                {"model_id", config.model_id},
                {"endpoint", config.endpoint},
                {"api_key_env", config.api_key_env},
                {"temperature", config.temperature},
                {"max_output_tokens", config.max_output_tokens},
                {"samples_per_instance", config.samples_per_instance},
                {"parallelism", config.parallelism},
                {"corrupt_index", config.corrupt_index},
                {"fixture_path", config.fixture_path},
                {"max_attempts", config.max_attempts},
                {"retry_base_ms", config.retry_base_ms}};
}

ProviderConfig provider_config_from_json(const json& j) {
    ProviderConfig c;
    const std::string kind_name = j.at("kind").get<std::string>();
    auto kind = provider_kind_from_string(kind_name);
    if (!kind) throw std::invalid_argument("unknown provider kind: " + kind_name);
    c.kind = *kind;
    c.model_id = j.value("model_id", c.model_id);
    c.endpoint = j.value("endpoint", c.endpoint);
    c.api_key_env = j.value("api_key_env", c.api_key_env);
    c.temperature = j.value("temperature", c.temperature);
    c.max_output_tokens = j.value("max_output_tokens", c.max_output_tokens);
    c.samples_per_instance = j.value("samples_per_instance", c.samples_per_instance);
    c.parallelism = j.value("parallelism", c.parallelism);
    c.corrupt_index = j.value("corrupt_index", c.corrupt_index);
    c.fixture_path = j.value("fixture_path", c.fixture_path);
    c.max_attempts = j.value("max_attempts", c.max_attempts);
    c.retry_base_ms = j.value("retry_base_ms", c.retry_base_ms);
    return c;
}

std::unique_ptr<Provider> make_provider(const ProviderConfig& config) {
    switch (config.kind) {
        case ProviderKind::http_chat:
            return std::make_unique<HttpChatProvider>(config);
        case ProviderKind::replay:
            return std::make_unique<ReplayProvider>(config);
        case ProviderKind::oracle_synthetic:
            return std::make_unique<OracleSyntheticProvider>(config);
        case ProviderKind::corrupting_synthetic:
            return std::make_unique<CorruptingSyntheticProvider>(config);
    }
    throw std::logic_error("unreachable provider kind");
}

}  // namespace pzb
