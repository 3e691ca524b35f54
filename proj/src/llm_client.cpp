// Copyright 2026 The aspectrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <condition_variable>
#include <sstream>
#include <thread>

#include "aspectrec/error.hpp"
#include "aspectrec/llm.hpp"

namespace aspectrec {

namespace {

using nlohmann::json;

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& base_url) {
    auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos)
        throw ContractError("base_url must include a scheme: " + base_url);
    auto path_start = base_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {base_url, "/v1/chat/completions"};
    return {base_url.substr(0, path_start), base_url.substr(path_start)};
}

bool retryable_status(int status) {
    return status == 429 || (status >= 500 && status < 600);
}

// Runtime-bounded concurrency gate; counting_semaphore's bound is a template
// parameter, so a condition variable keeps the limit configurable.
class InFlightGate {
public:
    explicit InFlightGate(int limit) : limit_(std::max(1, limit)) {}

    void acquire() {
        std::unique_lock lk(mu_);
        cv_.wait(lk, [&] { return active_ < limit_; });
        ++active_;
    }
    void release() {
        std::lock_guard lk(mu_);
        --active_;
        cv_.notify_one();
    }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    int limit_;
    int active_ = 0;
};

}  // namespace

struct HttpChatClient::Impl {
    explicit Impl(const LlmConfig& cfg) : gate(cfg.max_in_flight) {}
    InFlightGate gate;
};

HttpChatClient::HttpChatClient(LlmConfig cfg)
    : cfg_(std::move(cfg)), impl_(std::make_unique<Impl>(cfg_)) {}

HttpChatClient::~HttpChatClient() = default;

ChatExchange HttpChatClient::complete(const std::string& prompt) {
    const SplitUrl url = split_url(cfg_.base_url);

    std::string api_key;
    if (!cfg_.api_key_env.empty()) {
        const char* v = std::getenv(cfg_.api_key_env.c_str());
        if (!v || !*v)
            throw TransportError("API key environment variable not set: " + cfg_.api_key_env);
        api_key = v;
    }

    json body{{"model", cfg_.model_name},
              {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
              {"temperature", cfg_.temperature}};
    const std::string payload = body.dump();

    impl_->gate.acquire();
    struct Release {
        InFlightGate& g;
        ~Release() { g.release(); }
    } release{impl_->gate};

    const auto start = std::chrono::steady_clock::now();
    std::ostringstream attempt_log;

    for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
        if (attempt > 0) {
            auto delay = cfg_.retry_base_delay * (1 << (attempt - 1));
            delay = std::min(delay, std::chrono::milliseconds(8000));
            std::this_thread::sleep_for(delay);
        }

        httplib::Client cli(url.origin);
        cli.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(
            cfg_.request_timeout));
        cli.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(
            cfg_.request_timeout));
        httplib::Headers headers;
        if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

        auto res = cli.Post(url.path, headers, payload, "application/json");
        if (!res) {
            attempt_log << "attempt " << attempt << ": connection error; ";
            continue;
        }
        if (retryable_status(res->status)) {
            attempt_log << "attempt " << attempt << ": HTTP " << res->status << "; ";
            continue;
        }
        if (res->status != 200)
            throw TransportError("chat completion failed with HTTP " +
                                 std::to_string(res->status) + " (not retryable)");

        json reply = json::parse(res->body, nullptr, /*allow_exceptions=*/false);
        if (reply.is_discarded())
            throw ProtocolError("chat completion reply is not JSON");
        std::string content;
        try {
            content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const json::exception&) {
            throw ProtocolError("chat completion reply missing choices[0].message.content");
        }

        ChatExchange ex;
        ex.prompt = prompt;
        ex.response_text = std::move(content);
        ex.retries_used = attempt;
        ex.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start);
        return ex;
    }
    throw TransportError("chat completion failed after " + std::to_string(cfg_.max_retries) +
                         " retries: " + attempt_log.str());
}

}  // namespace aspectrec
