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

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aspectrec/aspects.hpp"
#include "aspectrec/corpus.hpp"
#include "aspectrec/textvec.hpp"

namespace aspectrec {

enum class OwnerKind { user, item };

const char* owner_kind_str(OwnerKind kind);
OwnerKind owner_kind_from_str(std::string_view s);

/// Per-owner multi-aspect profile: one short summary sentence per aspect
/// category, the category set C(.), and a mean embedding over all summaries.
struct Profile {
    std::string owner_id;
    OwnerKind kind = OwnerKind::user;
    std::map<std::string, std::string> summaries;  // category -> <= word_limit-word sentence
    std::set<std::string> categories;              // always the key set of summaries
    EmbeddingVector embedding;
    std::int64_t built_at = 0;  // max input-review timestamp, so rebuilds are bit-identical

    bool operator==(const Profile& other) const;
};

struct SummaryRequest {
    std::string aspect;
    std::vector<std::string> sentences;
    int word_limit = 10;
};

/// Produces one candidate summary sentence for a SummaryRequest. The word
/// limit is enforced by summarize_category, not here.
class Summarizer {
public:
    virtual ~Summarizer() = default;
    virtual std::string summarize(const SummaryRequest& req) = 0;
};

struct ProfileBuildOptions {
    int word_limit = 10;
    int max_sentences = 50;  // most recent sentences fed to the summarizer
};

struct ProfileBuildStats {
    int truncated = 0;   // summarizer overran the word limit
    int fell_back = 0;   // empty summarizer output, extractive fallback used
};

/// Review text split on [.!?] boundaries, whitespace-trimmed, empties dropped.
std::vector<std::string> split_sentences(std::string_view text);

/// Sentences grouped under every category label_sentence assigns them;
/// categories with no sentences are absent; original order preserved.
std::map<std::string, std::vector<std::string>> group_by_category(
    const std::vector<Review>& reviews, const AspectModel& model);

/// Summary for one category: at most word_limit words, truncating (with a
/// stats bump) when the summarizer overruns and falling back to the first
/// sentence when it returns nothing.
std::string summarize_category(const SummaryRequest& req, Summarizer& summarizer,
                               ProfileBuildStats* stats = nullptr);

/// Full profile for one owner. Owners whose reviews yield zero labeled
/// sentences get a single "General" category summarizing the first review
/// sentence. Throws ContractError on an empty review set.
Profile build_profile(const std::string& owner_id, OwnerKind kind,
                      const std::vector<Review>& reviews, const AspectModel& model,
                      Summarizer& summarizer, const WordVectors& wv,
                      const ProfileBuildOptions& opts = {}, ProfileBuildStats* stats = nullptr);

/// Degenerate profile (zero embedding, no categories) for items that have no
/// train reviews; ranks neutrally on every score term.
Profile placeholder_profile(const std::string& owner_id, OwnerKind kind, int dim);

/// The profile text fed into prompts: one "Category: summary" line per
/// category in sorted order.
std::string profile_text(const Profile& p);

// JSON body (embedding excluded; it is stored separately as binary).
nlohmann::json profile_to_json(const Profile& p);
Profile profile_from_json(const nlohmann::json& j, EmbeddingVector embedding);

// Little-endian f32 embedding file: uint32 dim header then dim floats.
void write_embedding(const std::string& path, const EmbeddingVector& e);
EmbeddingVector read_embedding(const std::string& path);

}  // namespace aspectrec
