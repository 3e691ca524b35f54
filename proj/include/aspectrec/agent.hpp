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

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aspectrec/llm.hpp"
#include "aspectrec/memory_store.hpp"
#include "aspectrec/profiles.hpp"
#include "aspectrec/rerank.hpp"

namespace aspectrec {

enum class TaskKind { direct, sequential, explanation };

const char* task_kind_str(TaskKind t);
TaskKind task_kind_from_str(std::string_view s);

/// One candidate item as presented to the agent.
struct AgentCandidate {
    std::string item_id;
    Profile profile;
    double pop = 0.0;
};

/// A past interaction referenced in the sequential prompt.
struct ItemRef {
    std::string item_id;
    std::set<std::string> categories;
};

struct RecommendationResult {
    std::string user_id;
    TaskKind task = TaskKind::direct;
    std::vector<std::string> ranked_items;
    std::map<std::string, std::string> explanations;  // keys subset of ranked_items
    RerankWeights weights_used;
    int feedback_rounds = 0;
    int parse_degradations = 0;
};

struct FeedbackRecord {
    int round = 0;  // >= 1
    RerankWeights old_weights;
    RerankWeights new_weights;
    std::string reasoning;
    bool hit_after = false;
};

enum class FeedbackMode { rr, norr };

struct AgentOptions {
    RerankWeights weights;
    int top_k = 10;
    bool use_rerank = true;
    int rerank_top_k = 30;
    int prompt_budget = 100;  // presentation cap when re-ranking is off
    int history_len = 5;      // most recent items shown in the sequential prompt
    int explain_word_limit = 15;
};

/// Drives the four-stage pipeline for one user at a time: presentation
/// (re-ranked or raw pool order), the LLM task, explanation generation, and
/// the self-feedback loop. Every step is logged to the memory store when one
/// is attached.
class Agent {
public:
    Agent(CompletionBackend& backend, AgentOptions opts, MemoryStore* store = nullptr)
        : backend_(backend), opts_(std::move(opts)), store_(store) {}

    RecommendationResult direct_recommend(const Profile& user,
                                          const std::vector<AgentCandidate>& pool);

    /// History items are excluded from the pool; the prompt shows the last
    /// min(history_len, |history|) of them oldest to newest.
    RecommendationResult sequential_recommend(const Profile& user,
                                              const std::vector<ItemRef>& history,
                                              const std::vector<AgentCandidate>& pool);

    /// One explanation sentence (at most explain_word_limit words) per ranked
    /// item; cites a category shared with the user when one exists.
    std::map<std::string, std::string> generate_explanations(
        const Profile& user, const RecommendationResult& result,
        const std::vector<AgentCandidate>& pool);

    /// Runs the task once, then while the ground truth is missed and rounds
    /// remain: rr mode asks for a weight proposal and re-ranks, norr mode asks
    /// for alternative recommendations over the same pool. Weights never leak
    /// into the caller's options.
    std::pair<RecommendationResult, std::vector<FeedbackRecord>> self_feedback_loop(
        const Profile& user, const std::vector<AgentCandidate>& pool,
        const std::string& ground_truth, int max_rounds, FeedbackMode mode, TaskKind task,
        const std::vector<ItemRef>& history = {});

    const AgentOptions& options() const { return opts_; }

private:
    std::vector<const AgentCandidate*> present(const Profile& user,
                                               const std::vector<AgentCandidate>& pool,
                                               const RerankWeights& w) const;
    RecommendationResult run_task(TaskKind task, const Profile& user,
                                  const std::vector<AgentCandidate>& pool,
                                  const std::vector<ItemRef>& history, const RerankWeights& w);
    void log(const std::string& kind, nlohmann::json payload);

    CompletionBackend& backend_;
    AgentOptions opts_;
    MemoryStore* store_;
};

}  // namespace aspectrec
