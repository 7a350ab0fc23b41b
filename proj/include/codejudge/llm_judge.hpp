#pragma once

#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "codejudge/core.hpp"
#include "codejudge/prompts.hpp"

namespace codejudge {

struct ChatRequest {
    std::string model;
    std::string prompt;
    double temperature = 0.0;
    int max_output_tokens = 512;
    bool instruction_as_system = false;
    // routing context so fixture-backed clients can tell otherwise identical
    // prompts apart
    std::string problem_id;
    std::string snippet;
    std::string record_key;  // "<problem_id>#<per-problem ordinal>"
};

// Transport interface: returns the raw completion text, throws AuthError
// (non-retryable) or TransportError (retryable) otherwise.
class ChatClient {
  public:
    virtual ~ChatClient() = default;
    virtual std::string complete(const ChatRequest& request) = 0;
};

struct JudgeResponse {
    std::string raw_text;
    std::string model;
    std::string prompt_hash;
    long long latency_ms = 0;
    bool from_cache = false;
};

// hex SHA-256 of model, a NUL separator, and the prompt
std::string prompt_digest(const std::string& model, const std::string& prompt);

// Content-addressed response store: one file per digest holding the verbatim
// payload, written atomically (temp file + rename). Concurrent fetches of the
// same digest coalesce into a single upstream request.
class JudgeCache {
  public:
    explicit JudgeCache(std::filesystem::path dir);

    std::optional<std::string> get(const std::string& digest);
    void put(const std::string& digest, const std::string& payload);
    std::filesystem::path path_for(const std::string& digest) const;

    // payload plus whether it was served without calling `make`
    std::pair<std::string, bool> fetch(const std::string& digest,
                                       const std::function<std::string()>& make);

  private:
    std::filesystem::path dir_;
    std::mutex mu_;
    std::map<std::string, std::shared_future<std::string>> inflight_;
};

// Chat-completion HTTP client (messages schema). The instruction travels as
// a single user message unless the request asks for a system/user split.
class HttpChatClient : public ChatClient {
  public:
    HttpChatClient(std::string endpoint, std::string api_key);
    std::string complete(const ChatRequest& request) override;

  private:
    std::string scheme_host_;
    std::string base_path_;
    std::string api_key_;
};

// Fixture-backed client: JSONL rows {problem_id, ordinal, response}. Lookup
// order: "<problem_id>#<ordinal>", then problem_id, then "*". Records every
// request key it serves.
class MockChatClient : public ChatClient {
  public:
    explicit MockChatClient(const std::string& fixture_path);
    std::string complete(const ChatRequest& request) override;
    std::vector<std::string> calls() const;

  private:
    std::map<std::string, std::string> responses_;
    mutable std::mutex mu_;
    std::vector<std::string> calls_;
};

// One judged snippet: builds the prompt, consults the cache, retries
// transient transport failures with exponential backoff.
JudgeResponse judge(const Problem& problem, const std::string& snippet,
                    const std::optional<std::string>& reference,
                    const PromptConfig& config, ChatClient& client,
                    JudgeCache* cache = nullptr, const std::string& record_key = "");

struct JudgeOutcome {
    size_t gen_index = 0;
    std::string problem_id;
    std::optional<JudgeResponse> response;
    std::optional<std::string> error;
};

// Judges every generation with at most concurrency_limit requests in flight;
// results come back in input order and per-record failures are markers, not
// aborts.
std::vector<JudgeOutcome> judge_batch(const Dataset& dataset, const PromptConfig& config,
                                      ChatClient& client, JudgeCache* cache,
                                      size_t concurrency_limit);

}  // namespace codejudge
