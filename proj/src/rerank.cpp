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

#include "aspectrec/rerank.hpp"

#include <algorithm>
#include <cmath>

#include "aspectrec/error.hpp"

namespace aspectrec {

RerankWeights RerankWeights::make(double alpha, double beta, double gamma, double tol) {
    RerankWeights w{alpha, beta, gamma};
    if (!w.valid(tol))
        throw ContractError("invalid rerank weights: " + std::to_string(alpha) + ", " +
                            std::to_string(beta) + ", " + std::to_string(gamma));
    return w;
}

RerankWeights RerankWeights::normalized(double alpha, double beta, double gamma) {
    double a = std::max(0.0, alpha), b = std::max(0.0, beta), g = std::max(0.0, gamma);
    double sum = a + b + g;
    if (sum <= 0.0) throw ContractError("rerank weights normalize to zero");
    return RerankWeights{a / sum, b / sum, g / sum};
}

bool RerankWeights::valid(double tol) const {
    return alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0 &&
           std::abs(alpha + beta + gamma - 1.0) <= tol;
}

double category_similarity(const std::set<std::string>& cu, const std::set<std::string>& ci) {
    if (cu.empty() && ci.empty()) return 0.0;
    std::size_t inter = 0;
    for (const auto& c : cu) inter += ci.count(c);
    std::size_t uni = cu.size() + ci.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

ScoredCandidate score(const Profile& user, const Profile& item, double pop,
                      const RerankWeights& w) {
    if (pop < 0.0 || pop > 1.0) throw ContractError("score: pop outside [0, 1]");
    ScoredCandidate sc;
    sc.item_id = item.owner_id;
    sc.sim_profile = cosine(user.embedding, item.embedding);
    sc.sim_category = category_similarity(user.categories, item.categories);
    sc.pop = pop;
    sc.s_total = w.alpha * sc.sim_profile + w.beta * sc.sim_category + w.gamma * sc.pop;
    return sc;
}

std::vector<ScoredCandidate> rerank(const Profile& user,
                                    const std::vector<RerankCandidate>& candidates,
                                    const RerankWeights& w, int top_k) {
    if (candidates.empty()) throw ContractError("rerank: empty candidate list");
    if (top_k < 1) throw ContractError("rerank: top_k must be >= 1");

    std::vector<ScoredCandidate> scored;
    scored.reserve(candidates.size());
    for (const auto& c : candidates) scored.push_back(score(user, *c.profile, c.pop, w));

    std::sort(scored.begin(), scored.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
        if (a.s_total != b.s_total) return a.s_total > b.s_total;
        return a.item_id < b.item_id;
    });
    if (static_cast<int>(scored.size()) > top_k) scored.resize(top_k);
    return scored;
}

}  // namespace aspectrec
