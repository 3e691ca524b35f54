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

#include "aspectrec/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "aspectrec/error.hpp"
#include "aspectrec/rng.hpp"

namespace aspectrec {

namespace {

using nlohmann::json;

bool valid_review(const Review& r) {
    return !r.user_id.empty() && !r.item_id.empty() && r.rating >= 1.0 && r.rating <= 5.0 &&
           r.timestamp >= 0;
}

// Minimal RFC-4180-ish CSV row reader (quoted fields, doubled quotes).
std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

// Keep the latest review per (user, item): max timestamp, later file order on
// ties. Returns the surviving reviews in original file order.
std::vector<Review> dedup_latest(std::vector<Review> reviews, int* deduped) {
    std::unordered_map<std::string, std::size_t> best;  // key -> index into reviews
    std::vector<bool> keep(reviews.size(), false);
    for (std::size_t i = 0; i < reviews.size(); ++i) {
        std::string key = reviews[i].user_id + '\x1f' + reviews[i].item_id;
        auto it = best.find(key);
        if (it == best.end()) {
            best[key] = i;
            keep[i] = true;
        } else if (reviews[i].timestamp >= reviews[it->second].timestamp) {
            keep[it->second] = false;
            keep[i] = true;
            it->second = i;
            if (deduped) ++*deduped;
        } else {
            if (deduped) ++*deduped;
        }
    }
    std::vector<Review> out;
    out.reserve(best.size());
    for (std::size_t i = 0; i < reviews.size(); ++i) {
        if (keep[i]) out.push_back(std::move(reviews[i]));
    }
    return out;
}

json review_to_json(const Review& r) {
    return json{{"reviewerID", r.user_id},
                {"asin", r.item_id},
                {"overall", r.rating},
                {"reviewText", r.text},
                {"unixReviewTime", r.timestamp}};
}

}  // namespace

Dataset Dataset::from_reviews(std::vector<Review> reviews) {
    Dataset ds;
    ds.reviews = std::move(reviews);
    for (const auto& r : ds.reviews) {
        ds.users.insert(r.user_id);
        ds.items.insert(r.item_id);
    }
    return ds;
}

Dataset load_reviews(const std::string& path, ReviewFormat format, LoadReport* report) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open review file: " + path);

    LoadReport local;
    std::vector<Review> reviews;
    std::string line;

    if (format == ReviewFormat::json_lines) {
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
            if (j.is_discarded() || !j.is_object()) {
                ++local.skipped;
                continue;
            }
            Review r;
            try {
                r.user_id = j.at("reviewerID").get<std::string>();
                r.item_id = j.at("asin").get<std::string>();
                r.rating = j.at("overall").get<double>();
                r.text = j.value("reviewText", std::string());
                r.timestamp = j.at("unixReviewTime").get<std::int64_t>();
            } catch (const json::exception&) {
                ++local.skipped;
                continue;
            }
            if (!valid_review(r)) {
                ++local.skipped;
                continue;
            }
            reviews.push_back(std::move(r));
            ++local.parsed;
        }
    } else {
        // Header row maps column positions to the five roles.
        if (!std::getline(in, line)) throw FormatError("empty CSV file: " + path);
        auto header = split_csv_row(line);
        std::map<std::string, int> col;
        for (int i = 0; i < static_cast<int>(header.size()); ++i) col[header[i]] = i;
        const char* roles[5] = {"reviewerID", "asin", "overall", "reviewText", "unixReviewTime"};
        for (const char* role : roles) {
            if (!col.count(role))
                throw FormatError(std::string("CSV header missing column: ") + role);
        }
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            auto fields = split_csv_row(line);
            if (fields.size() < header.size()) {
                ++local.skipped;
                continue;
            }
            Review r;
            try {
                r.user_id = fields[col["reviewerID"]];
                r.item_id = fields[col["asin"]];
                r.rating = std::stod(fields[col["overall"]]);
                r.text = fields[col["reviewText"]];
                r.timestamp = std::stoll(fields[col["unixReviewTime"]]);
            } catch (const std::exception&) {
                ++local.skipped;
                continue;
            }
            if (!valid_review(r)) {
                ++local.skipped;
                continue;
            }
            reviews.push_back(std::move(r));
            ++local.parsed;
        }
    }

    reviews = dedup_latest(std::move(reviews), &local.deduped);
    if (report) *report = local;
    if (reviews.empty()) throw FormatError("no valid reviews in " + path);
    return Dataset::from_reviews(std::move(reviews));
}

Dataset k_core_filter(const Dataset& ds, int k) {
    if (k < 1) throw ContractError("k_core_filter: k must be >= 1");
    std::vector<Review> current = ds.reviews;
    for (;;) {
        std::unordered_map<std::string, int> ucount, icount;
        for (const auto& r : current) {
            ++ucount[r.user_id];
            ++icount[r.item_id];
        }
        std::vector<Review> next;
        next.reserve(current.size());
        for (auto& r : current) {
            if (ucount[r.user_id] >= k && icount[r.item_id] >= k) next.push_back(std::move(r));
        }
        if (next.size() == current.size()) break;
        current = std::move(next);
    }
    return Dataset::from_reviews(std::move(current));
}

LooSplit leave_one_out_split(const Dataset& ds) {
    // Chronological order per user with the (timestamp, item_id) tiebreak.
    std::map<std::string, std::vector<const Review*>> per_user;
    for (const auto& r : ds.reviews) per_user[r.user_id].push_back(&r);

    LooSplit split;
    std::vector<Review> train;
    split.all_items = ds.items;
    for (auto& [user, seq] : per_user) {
        std::sort(seq.begin(), seq.end(), [](const Review* a, const Review* b) {
            if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
            return a->item_id < b->item_id;
        });
        if (seq.size() < 2) {
            ++split.singleton_users;
            for (const Review* r : seq) train.push_back(*r);
            continue;
        }
        const Review* target = seq.back();
        split.targets[user] = *target;
        auto& hist = split.history[user];
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            train.push_back(*seq[i]);
            hist.push_back(seq[i]->item_id);
        }
    }
    split.train = Dataset::from_reviews(std::move(train));
    return split;
}

PopularityIndex PopularityIndex::from_train(const Dataset& train) {
    PopularityIndex idx;
    for (const auto& r : train.reviews) ++idx.counts[r.item_id];
    for (const auto& [item, c] : idx.counts) idx.max_count = std::max(idx.max_count, c);
    return idx;
}

double popularity(const PopularityIndex& idx, const std::string& item) {
    if (idx.max_count < 1) throw ContractError("popularity: empty index");
    auto it = idx.counts.find(item);
    if (it == idx.counts.end()) return 0.0;
    return std::log1p(static_cast<double>(it->second)) /
           std::log1p(static_cast<double>(idx.max_count));
}

std::vector<std::string> sample_candidates(const LooSplit& split, const std::string& user,
                                           int pool_size, std::uint64_t seed) {
    auto tgt = split.targets.find(user);
    if (tgt == split.targets.end())
        throw ContractError("sample_candidates: user has no target: " + user);
    if (pool_size < 1) throw ContractError("sample_candidates: pool_size must be >= 1");

    std::set<std::string> interacted;
    auto hist = split.history.find(user);
    if (hist != split.history.end())
        interacted.insert(hist->second.begin(), hist->second.end());
    interacted.insert(tgt->second.item_id);

    std::vector<std::string> eligible;
    eligible.reserve(split.all_items.size());
    for (const auto& item : split.all_items) {
        if (!interacted.count(item)) eligible.push_back(item);
    }
    const int negatives = pool_size - 1;
    if (static_cast<int>(eligible.size()) < negatives)
        throw ContractError("sample_candidates: pool_size " + std::to_string(pool_size) +
                            " too large; only " + std::to_string(eligible.size()) +
                            " non-interacted items");

    Rng rng(derive_seed(seed, "pool:" + user));
    // Partial Fisher-Yates over the sorted eligible list.
    std::vector<std::string> pool;
    pool.reserve(pool_size);
    for (int i = 0; i < negatives; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.bounded(eligible.size() - i));
        std::swap(eligible[i], eligible[j]);
        pool.push_back(eligible[i]);
    }
    std::size_t gt_pos = static_cast<std::size_t>(rng.bounded(pool_size));
    pool.insert(pool.begin() + gt_pos, tgt->second.item_id);
    return pool;
}

void write_reviews_jsonl(const std::vector<Review>& reviews, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& r : reviews) out << review_to_json(r).dump() << '\n';
}

void write_split_manifest(const LooSplit& split, const std::string& train_path,
                          const std::string& targets_path, const std::string& manifest_path) {
    write_reviews_jsonl(split.train.reviews, train_path);

    std::vector<Review> held_out;
    held_out.reserve(split.targets.size());
    for (const auto& [user, r] : split.targets) held_out.push_back(r);
    write_reviews_jsonl(held_out, targets_path);

    json targets = json::array();
    for (const auto& [user, r] : split.targets) {
        targets.push_back(json{{"user", user}, {"item", r.item_id}, {"ts", r.timestamp}});
    }
    json manifest{{"train_path", train_path}, {"targets", targets}};
    std::ofstream out(manifest_path);
    if (!out) throw IoError("cannot write " + manifest_path);
    out << manifest.dump(2) << '\n';
}

LooSplit load_split_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot open manifest: " + manifest_path);
    json manifest = json::parse(in, nullptr, false);
    if (manifest.is_discarded() || !manifest.contains("train_path") ||
        !manifest.contains("targets"))
        throw FormatError("malformed split manifest: " + manifest_path);

    LooSplit split;
    split.train = load_reviews(manifest["train_path"].get<std::string>(),
                               ReviewFormat::json_lines);
    split.all_items = split.train.items;

    for (const auto& t : manifest["targets"]) {
        Review r;
        r.user_id = t.at("user").get<std::string>();
        r.item_id = t.at("item").get<std::string>();
        r.timestamp = t.at("ts").get<std::int64_t>();
        r.rating = 5.0;  // placeholder until the held-out JSONL fills it in
        split.targets[r.user_id] = r;
        split.all_items.insert(r.item_id);
    }

    // Held-out texts live next to the manifest as targets.jsonl (optional).
    auto targets_jsonl =
        std::filesystem::path(manifest_path).parent_path() / "targets.jsonl";
    if (std::filesystem::exists(targets_jsonl)) {
        Dataset held = load_reviews(targets_jsonl.string(), ReviewFormat::json_lines);
        for (const auto& r : held.reviews) {
            auto it = split.targets.find(r.user_id);
            if (it != split.targets.end() && it->second.item_id == r.item_id) it->second = r;
        }
    }

    // Histories recomputed from train, chronological with the item_id tiebreak.
    std::map<std::string, std::vector<const Review*>> per_user;
    for (const auto& r : split.train.reviews) per_user[r.user_id].push_back(&r);
    for (auto& [user, seq] : per_user) {
        if (!split.targets.count(user)) continue;
        std::sort(seq.begin(), seq.end(), [](const Review* a, const Review* b) {
            if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
            return a->item_id < b->item_id;
        });
        auto& hist = split.history[user];
        for (const Review* r : seq) hist.push_back(r->item_id);
    }
    return split;
}

}  // namespace aspectrec
