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
#include <vector>

namespace aspectrec {

/// One user-item interaction with review text.
struct Review {
    std::string user_id;
    std::string item_id;
    double rating = 0.0;  // [1, 5]
    std::string text;
    std::int64_t timestamp = 0;  // seconds since epoch

    bool operator==(const Review&) const = default;
};

struct Dataset {
    std::vector<Review> reviews;
    std::set<std::string> users;
    std::set<std::string> items;

    static Dataset from_reviews(std::vector<Review> reviews);

    std::size_t size() const { return reviews.size(); }
    bool empty() const { return reviews.empty(); }
};

enum class ReviewFormat { json_lines, csv };

struct LoadReport {
    int parsed = 0;
    int skipped = 0;  // malformed records
    int deduped = 0;  // same (user, item) pairs collapsed to the latest review
};

/// Load a review dump. JSON-lines uses the Amazon field names (reviewerID,
/// asin, overall, reviewText, unixReviewTime); CSV needs a header naming the
/// same five roles. Malformed records are skipped and counted. Duplicate
/// (user, item) pairs keep the latest review (by timestamp, then file order).
/// Throws IoError on unreadable files, FormatError when no valid record
/// survives.
Dataset load_reviews(const std::string& path, ReviewFormat format, LoadReport* report = nullptr);

/// Iterative k-core: remove users/items with fewer than k reviews until a
/// fixed point. Idempotent; may return an empty Dataset.
Dataset k_core_filter(const Dataset& ds, int k);

/// Leave-one-out split. Per user the chronologically last review (ties broken
/// by item_id ascending) is held out as the prediction target.
struct LooSplit {
    Dataset train;
    std::map<std::string, Review> targets;                   // user -> held-out review
    std::map<std::string, std::vector<std::string>> history; // user -> chronological items
    std::set<std::string> all_items;                         // every item known to the split
    int singleton_users = 0;  // users with one review, excluded from targets
};

LooSplit leave_one_out_split(const Dataset& ds);

struct PopularityIndex {
    std::map<std::string, int> counts;  // train-split review counts
    int max_count = 0;

    static PopularityIndex from_train(const Dataset& train);
};

/// Relative popularity in [0, 1]: ln(1+c_i) / ln(1+c_max). Unseen items map
/// to 0, the most-reviewed item to 1.
double popularity(const PopularityIndex& idx, const std::string& item);

/// Seeded candidate pool for one evaluation user: the ground-truth target plus
/// pool_size-1 items sampled uniformly without replacement from items the user
/// never interacted with, with the target inserted at a seeded position.
/// Deterministic for a fixed (seed, user). Throws ContractError when the user
/// has no target or too few items exist.
std::vector<std::string> sample_candidates(const LooSplit& split, const std::string& user,
                                           int pool_size, std::uint64_t seed);

// --- split manifest + JSONL I/O -------------------------------------------

void write_reviews_jsonl(const std::vector<Review>& reviews, const std::string& path);

/// Writes {train_path, targets: [{user, item, ts}]} to manifest_path and the
/// held-out reviews (with text) to targets_path.
void write_split_manifest(const LooSplit& split, const std::string& train_path,
                          const std::string& targets_path, const std::string& manifest_path);

/// Rebuilds a LooSplit from a manifest: train reviews are loaded from
/// train_path, histories recomputed, target texts filled in from the held-out
/// JSONL next to the manifest when present.
LooSplit load_split_manifest(const std::string& manifest_path);

}  // namespace aspectrec
