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
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "aspectrec/corpus.hpp"
#include "aspectrec/textvec.hpp"

namespace aspectrec {

/// A named aspect dimension with its representative terms, most
/// representative first.
struct AspectCategory {
    std::string name;
    std::vector<std::string> terms;
};

/// The extraction result: categories plus the inverted term index used for
/// sentence labeling. A term may belong to several categories.
struct AspectModel {
    std::vector<AspectCategory> categories;
    std::unordered_map<std::string, std::set<std::string>> term_index;

    /// Builds the index and validates category invariants (non-empty names,
    /// non-empty distinct lowercase terms).
    static AspectModel from_categories(std::vector<AspectCategory> categories);

    nlohmann::json to_json() const;
    static AspectModel from_json(const nlohmann::json& j);
    void save(const std::string& path) const;
    static AspectModel load(const std::string& path);
};

struct ClusterResult {
    int k = 0;
    std::vector<Vec> centroids;
    std::map<std::string, int> assignment;  // token -> cluster id
    double inertia = 0.0;
    std::vector<double> inertia_history;  // per Lloyd iteration, non-increasing
};

struct ClusterConfig {
    int k = 8;
    std::uint64_t seed = 42;
    int max_iter = 50;
    int restarts = 1;  // best inertia wins; each restart derives its own seed
};

/// Lloyd's k-means with k-means++ seeding over the in-vocabulary token
/// vectors. Deterministic for a fixed seed; empty clusters are re-seeded from
/// the farthest point; inertia is asserted non-increasing every iteration.
/// Throws ContractError when fewer than k tokens are in vocabulary.
ClusterResult cluster_terms(const WordVectors& wv, const std::set<std::string>& vocab,
                            const ClusterConfig& cfg);

/// Up to m tokens of one cluster ordered by centroid proximity, ties broken
/// by token ascending.
std::vector<std::string> top_terms(const ClusterResult& cr, const WordVectors& wv, int cluster,
                                   int m);

class CategoryNamer {
public:
    virtual ~CategoryNamer() = default;
    virtual std::string name_cluster(int cluster_id, const std::vector<std::string>& terms) = 0;
};

/// Names clusters from a JSON map keyed by cluster index ("0", "1", ...) or by
/// an anchor term contained in the cluster. Throws FormatError (listing the
/// cluster's top terms) when no entry matches.
class MappingNamer : public CategoryNamer {
public:
    explicit MappingNamer(std::map<std::string, std::string> mapping)
        : mapping_(std::move(mapping)) {}
    static MappingNamer load(const std::string& path);

    std::string name_cluster(int cluster_id, const std::vector<std::string>& terms) override;

private:
    std::map<std::string, std::string> mapping_;
};

/// Assigns a non-empty name to every cluster; duplicate names get "-2", "-3"
/// suffixes in cluster order.
std::vector<AspectCategory> name_categories(
    const std::vector<std::pair<int, std::vector<std::string>>>& clusters, CategoryNamer& namer);

/// Categories whose terms intersect tokenize(sentence); may be empty.
std::set<std::string> label_sentence(std::string_view sentence, const AspectModel& model);

/// Clustering vocabulary: in-vocabulary tokens with corpus frequency >=
/// min_freq and document frequency <= max_doc_frac of reviews.
std::set<std::string> select_vocabulary(const Dataset& ds, const WordVectors& wv, int min_freq,
                                        double max_doc_frac);

}  // namespace aspectrec
