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

#include <set>
#include <string>
#include <vector>

#include "aspectrec/profiles.hpp"

namespace aspectrec {

/// Convex weights of the three score terms: profile similarity, category
/// similarity, popularity.
struct RerankWeights {
    double alpha = 0.4;
    double beta = 0.4;
    double gamma = 0.2;

    /// Validates non-negativity and sum == 1 within tol.
    static RerankWeights make(double alpha, double beta, double gamma, double tol = 1e-9);

    /// Clamps negatives to zero and renormalizes to sum 1. Throws
    /// ContractError when everything clamps to zero.
    static RerankWeights normalized(double alpha, double beta, double gamma);

    bool valid(double tol = 1e-9) const;

    bool operator==(const RerankWeights&) const = default;
};

/// One candidate scored by the multi-factor formula
///   s_total = alpha * sim_profile + beta * sim_category + gamma * pop.
struct ScoredCandidate {
    std::string item_id;
    double s_total = 0.0;
    double sim_profile = 0.0;   // cosine of profile embeddings, [-1, 1]
    double sim_category = 0.0;  // Jaccard of category sets, [0, 1]
    double pop = 0.0;           // relative popularity, [0, 1]
};

/// Jaccard similarity of two category sets; both-empty yields 0.
double category_similarity(const std::set<std::string>& cu, const std::set<std::string>& ci);

ScoredCandidate score(const Profile& user, const Profile& item, double pop,
                      const RerankWeights& w);

struct RerankCandidate {
    std::string item_id;
    const Profile* profile = nullptr;
    double pop = 0.0;
};

/// Scores every candidate and returns the top_k highest-scoring ones, ties
/// broken by item_id ascending. Throws ContractError on an empty list.
std::vector<ScoredCandidate> rerank(const Profile& user,
                                    const std::vector<RerankCandidate>& candidates,
                                    const RerankWeights& w, int top_k);

}  // namespace aspectrec
