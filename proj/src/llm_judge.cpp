#include "codejudge/llm_judge.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "codejudge/errors.hpp"

namespace codejudge {

using nlohmann::json;

std::string prompt_digest(const std::string& model, const std::string& prompt) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int md_len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx) throw Error("digest context allocation failed");
    bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
              EVP_DigestUpdate(ctx, model.data(), model.size()) == 1 &&
              EVP_DigestUpdate(ctx, "\0", 1) == 1 &&
              EVP_DigestUpdate(ctx, prompt.data(), prompt.size()) == 1 &&
              EVP_DigestFinal_ex(ctx, md, &md_len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok) throw Error("SHA-256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * md_len);
    for (unsigned int i = 0; i < md_len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

JudgeCache::JudgeCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::filesystem::path JudgeCache::path_for(const std::string& digest) const {
    return dir_ / digest;
}

std::optional<std::string> JudgeCache::get(const std::string& digest) {
    std::ifstream in(path_for(digest), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw Error("cache read failed: " + path_for(digest).string());
    return buf.str();
}

void JudgeCache::put(const std::string& digest, const std::string& payload) {
    static std::atomic<unsigned long long> serial{0};
    std::filesystem::path target = path_for(digest);
    std::filesystem::path tmp = target;
    tmp += ".tmp" + std::to_string(serial.fetch_add(1));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!out) throw Error("cache write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::pair<std::string, bool> JudgeCache::fetch(const std::string& digest,
                                               const std::function<std::string()>& make) {
    std::shared_future<std::string> pending;
    std::promise<std::string> promise;
    bool issuer = false;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = inflight_.find(digest);
        if (it != inflight_.end()) {
            pending = it->second;
        } else {
            if (std::optional<std::string> hit = get(digest)) return {std::move(*hit), true};
            issuer = true;
            pending = promise.get_future().share();
            inflight_.emplace(digest, pending);
        }
    }
    if (!issuer) return {pending.get(), true};
    try {
        std::string payload = make();
        put(digest, payload);
        promise.set_value(payload);
        std::lock_guard<std::mutex> lock(mu_);
        inflight_.erase(digest);
        return {std::move(payload), false};
    } catch (...) {
        promise.set_exception(std::current_exception());
        std::lock_guard<std::mutex> lock(mu_);
        inflight_.erase(digest);
        throw;
    }
}

HttpChatClient::HttpChatClient(std::string endpoint, std::string api_key)
    : api_key_(std::move(api_key)) {
    size_t scheme = endpoint.find("://");
    size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
    size_t path_start = endpoint.find('/', host_start);
    if (path_start == std::string::npos) {
        scheme_host_ = endpoint;
        base_path_ = "/v1/chat/completions";
    } else {
        scheme_host_ = endpoint.substr(0, path_start);
        base_path_ = endpoint.substr(path_start);
    }
}

std::string HttpChatClient::complete(const ChatRequest& request) {
    json messages = json::array();
    std::string user_text = request.prompt;
    if (request.instruction_as_system) {
        const std::string& instruction = prompt_instruction();
        std::string lead = instruction + "\n\n";
        if (user_text.rfind(lead, 0) == 0) {
            messages.push_back({{"role", "system"}, {"content", instruction}});
            user_text.erase(0, lead.size());
        }
    }
    messages.push_back({{"role", "user"}, {"content", user_text}});
    json body = {
        {"model", request.model},
        {"messages", messages},
        {"temperature", request.temperature},
        {"max_tokens", request.max_output_tokens},
    };

    httplib::Client http(scheme_host_);
    http.set_connection_timeout(15, 0);
    http.set_read_timeout(180, 0);
    httplib::Headers headers = {{"Authorization", "Bearer " + api_key_}};
    httplib::Result res = http.Post(base_path_, headers, body.dump(), "application/json");
    if (!res) {
        throw TransportError("connection to " + scheme_host_ +
                             " failed: " + httplib::to_string(res.error()));
    }
    if (res->status == 401 || res->status == 403) {
        throw AuthError("endpoint rejected the credential (HTTP " +
                        std::to_string(res->status) + ")");
    }
    if (res->status == 408 || res->status == 429 || res->status >= 500) {
        throw TransportError("HTTP " + std::to_string(res->status) + " from " + base_path_);
    }
    if (res->status < 200 || res->status >= 300) {
        throw Error("HTTP " + std::to_string(res->status) + " from " + base_path_ + ": " +
                    res->body.substr(0, 200));
    }
    try {
        json reply = json::parse(res->body);
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw TransportError(std::string("malformed completion payload: ") + e.what());
    }
}

MockChatClient::MockChatClient(const std::string& fixture_path) {
    std::ifstream in(fixture_path);
    if (!in) throw FileNotFound(fixture_path);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            json row = json::parse(line);
            std::string key = row.at("problem_id").get<std::string>();
            if (row.contains("ordinal")) {
                key += "#" + std::to_string(row.at("ordinal").get<long long>());
            }
            responses_[key] = row.at("response").get<std::string>();
        } catch (const json::exception& e) {
            throw ParseError(line_no, e.what());
        }
    }
}

std::string MockChatClient::complete(const ChatRequest& request) {
    std::lock_guard<std::mutex> lock(mu_);
    calls_.push_back(request.record_key.empty() ? request.problem_id : request.record_key);
    for (const std::string& key : {request.record_key, request.problem_id, std::string("*")}) {
        if (key.empty()) continue;
        auto it = responses_.find(key);
        if (it != responses_.end()) return it->second;
    }
    throw TransportError("no mock response for problem '" + request.problem_id + "' (key '" +
                         request.record_key + "')");
}

std::vector<std::string> MockChatClient::calls() const {
    std::lock_guard<std::mutex> lock(mu_);
    return calls_;
}

namespace {

std::string complete_with_retries(ChatClient& client, const ChatRequest& request, int retries) {
    int attempts = retries + 1;
    std::chrono::milliseconds delay(100);
    for (int attempt = 1;; ++attempt) {
        try {
            return client.complete(request);
        } catch (const TransportError&) {
            if (attempt >= attempts) throw;
            std::this_thread::sleep_for(delay);
            delay *= 2;
        }
    }
}

}  // namespace

JudgeResponse judge(const Problem& problem, const std::string& snippet,
                    const std::optional<std::string>& reference, const PromptConfig& config,
                    ChatClient& client, JudgeCache* cache, const std::string& record_key) {
    std::string prompt = build_prompt(problem, snippet, reference, config);
    std::string digest = prompt_digest(config.model, prompt);

    ChatRequest request;
    request.model = config.model;
    request.prompt = std::move(prompt);
    request.temperature = config.temperature;
    request.max_output_tokens = config.max_output_tokens;
    request.instruction_as_system = config.instruction_as_system;
    request.problem_id = problem.id;
    request.snippet = snippet;
    request.record_key = record_key;

    auto start = std::chrono::steady_clock::now();
    std::string text;
    bool cached = false;
    if (cache) {
        auto [payload, hit] = cache->fetch(
            digest, [&] { return complete_with_retries(client, request, config.retries); });
        text = std::move(payload);
        cached = hit;
    } else {
        text = complete_with_retries(client, request, config.retries);
    }
    auto elapsed = std::chrono::steady_clock::now() - start;

    JudgeResponse out;
    out.raw_text = std::move(text);
    out.model = config.model;
    out.prompt_hash = std::move(digest);
    out.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    out.from_cache = cached;
    return out;
}

std::vector<JudgeOutcome> judge_batch(const Dataset& dataset, const PromptConfig& config,
                                      ChatClient& client, JudgeCache* cache,
                                      size_t concurrency_limit) {
    if (concurrency_limit == 0) throw Error("concurrency_limit must be at least 1");
    const size_t n = dataset.generations.size();

    // per-problem ordinals make record keys stable regardless of worker timing
    std::vector<std::string> record_keys(n);
    std::map<std::string, size_t> ordinals;
    for (size_t i = 0; i < n; ++i) {
        const std::string& pid = dataset.generations[i].problem_id;
        record_keys[i] = pid + "#" + std::to_string(ordinals[pid]++);
    }

    std::vector<JudgeOutcome> out(n);
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n) return;
            const GenerationRecord& gen = dataset.generations[i];
            JudgeOutcome& slot = out[i];
            slot.gen_index = i;
            slot.problem_id = gen.problem_id;
            try {
                const Problem& problem = dataset.problems.at(gen.problem_id);
                slot.response = judge(problem, gen.snippet, problem.reference, config, client,
                                      cache, record_keys[i]);
            } catch (const std::exception& e) {
                slot.error = e.what();
            }
        }
    };

    size_t workers = std::min(concurrency_limit, n);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return out;
}

}  // namespace codejudge
