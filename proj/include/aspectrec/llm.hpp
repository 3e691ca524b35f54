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

#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "aspectrec/aspects.hpp"
#include "aspectrec/profiles.hpp"
#include "aspectrec/prompt.hpp"
#include "aspectrec/rerank.hpp"

namespace aspectrec {

struct LlmConfig {
    std::string base_url = "http://127.0.0.1:8000/v1/chat/completions";
    std::string model_name = "local-model";
    std::string api_key_env = "ASPECTREC_API_KEY";  // empty = no auth header
    double temperature = 0.0;
    int max_retries = 3;
    std::chrono::milliseconds request_timeout{30000};
    std::chrono::milliseconds retry_base_delay{250};
    int max_in_flight = 4;
};

struct ChatExchange {
    std::string prompt;
    std::string response_text;
    std::chrono::milliseconds latency{0};
    int retries_used = 0;
};

/// Completion source. The template name rides along as metadata so the mock
/// can stay a pure function of (template, prompt, seed); the HTTP backend
/// ignores it.
class CompletionBackend {
public:
    virtual ~CompletionBackend() = default;
    virtual std::string complete(TemplateName name, const std::string& prompt) = 0;
};

/// JSON-over-HTTP chat-completion client. POSTs {model, messages, temperature}
/// to base_url, retries 429/5xx and connection failures with exponential
/// backoff, and bounds global concurrency by max_in_flight.
class HttpChatClient {
public:
    explicit HttpChatClient(LlmConfig cfg);
    ~HttpChatClient();

    /// Throws TransportError after exhausting retries, ProtocolError when the
    /// reply is not a chat-completion JSON body.
    ChatExchange complete(const std::string& prompt);

    const LlmConfig& config() const { return cfg_; }

private:
    struct Impl;
    LlmConfig cfg_;
    std::unique_ptr<Impl> impl_;
};

class HttpBackend : public CompletionBackend {
public:
    explicit HttpBackend(LlmConfig cfg) : client_(std::move(cfg)) {}
    std::string complete(TemplateName, const std::string& prompt) override {
        return client_.complete(prompt).response_text;
    }

private:
    HttpChatClient client_;
};

/// Deterministic stand-in for the LLM. Behaviour per template:
/// aspect_summary extracts the first review sentence; direct/sequential echo
/// the first top_k presented item ids; explanation cites the first category
/// shared with the user profile; feedback_rr moves 0.1 of weight mass from the
/// largest to the smallest component; feedback_norr reverses the candidate
/// order; category_naming joins the top two terms.
class MockBackend : public CompletionBackend {
public:
    explicit MockBackend(std::uint64_t seed = 0) : seed_(seed) {}
    std::string complete(TemplateName name, const std::string& prompt) override;

private:
    std::uint64_t seed_;
};

// --- response parsing -------------------------------------------------------

struct ParsedRanking {
    std::vector<std::string> items;
    int padded = 0;  // ids appended from the candidate list on underfill
};

/// Scans a natural-language reply for candidate ids (longest match wins at
/// each position, first-occurrence order), deduplicates, truncates to top_k
/// and pads from the candidate list when too few were found. Throws
/// ParseError when no id occurs at all.
ParsedRanking parse_ranked_items(const std::string& text,
                                 const std::vector<std::string>& candidate_ids, int top_k);

struct WeightProposal {
    RerankWeights weights;
    std::string reasoning;
};

/// Extracts the first JSON object carrying profile_similarity /
/// category_similarity / popularity keys, clamps negatives and renormalizes
/// to sum 1. Throws ParseError when no such object exists.
WeightProposal parse_weight_proposal(const std::string& text);

// --- adapters ---------------------------------------------------------------

/// Summarizer backed by the aspect_summary template.
class LlmSummarizer : public Summarizer {
public:
    explicit LlmSummarizer(CompletionBackend& backend) : backend_(backend) {}
    std::string summarize(const SummaryRequest& req) override;

private:
    CompletionBackend& backend_;
};

/// CategoryNamer backed by the category_naming template.
class LlmCategoryNamer : public CategoryNamer {
public:
    explicit LlmCategoryNamer(CompletionBackend& backend) : backend_(backend) {}
    std::string name_cluster(int cluster_id, const std::vector<std::string>& terms) override;

private:
    CompletionBackend& backend_;
};

}  // namespace aspectrec
