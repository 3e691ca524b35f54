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

#include "aspectrec/aspects.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "aspectrec/error.hpp"
#include "aspectrec/rng.hpp"

namespace aspectrec {

namespace {

using nlohmann::json;

double sq_dist(const Vec& a, const Vec& b) {
    return (a.cast<double>() - b.cast<double>()).squaredNorm();
}

struct KmeansInstance {
    std::vector<std::string> tokens;  // sorted, stable index space
    std::vector<Vec> points;
};

// One seeded k-means run (k-means++ init, Lloyd iterations).
ClusterResult run_kmeans(const KmeansInstance& inst, int k, std::uint64_t seed, int max_iter) {
    const int n = static_cast<int>(inst.points.size());
    Rng rng(seed);

    // k-means++ seeding: first centroid uniform, the rest weighted by squared
    // distance to the nearest chosen centroid.
    std::vector<Vec> centroids;
    centroids.reserve(k);
    centroids.push_back(inst.points[rng.bounded(n)]);
    std::vector<double> d2(n);
    while (static_cast<int>(centroids.size()) < k) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            for (const auto& c : centroids) best = std::min(best, sq_dist(inst.points[i], c));
            d2[i] = best;
            total += best;
        }
        int chosen;
        if (total <= 0.0) {
            chosen = static_cast<int>(rng.bounded(n));
        } else {
            double target = rng.next_u01() * total;
            double acc = 0.0;
            chosen = n - 1;
            for (int i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc >= target) {
                    chosen = i;
                    break;
                }
            }
        }
        centroids.push_back(inst.points[chosen]);
    }

    std::vector<int> assign(n, -1);
    auto assign_all = [&]() -> std::pair<bool, double> {
        bool changed = false;
        double inertia = 0.0;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double bestd = sq_dist(inst.points[i], centroids[0]);
            for (int c = 1; c < k; ++c) {
                double d = sq_dist(inst.points[i], centroids[c]);
                if (d < bestd) {
                    bestd = d;
                    best = c;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
            inertia += bestd;
        }
        return {changed, inertia};
    };

    ClusterResult result;
    result.k = k;
    auto [_, inertia0] = assign_all();
    result.inertia_history.push_back(inertia0);

    for (int iter = 0; iter < max_iter; ++iter) {
        // Update step: centroid = mean of its members; empty clusters are
        // re-seeded from the point farthest from its current centroid.
        std::vector<Vec> sums(k, Vec::Zero(inst.points[0].size()));
        std::vector<int> counts(k, 0);
        for (int i = 0; i < n; ++i) {
            sums[assign[i]] += inst.points[i];
            ++counts[assign[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) centroids[c] = sums[c] / static_cast<float>(counts[c]);
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            int far = 0;
            double fard = -1.0;
            for (int i = 0; i < n; ++i) {
                double d = sq_dist(inst.points[i], centroids[assign[i]]);
                if (d > fard) {
                    fard = d;
                    far = i;
                }
            }
            centroids[c] = inst.points[far];
        }

        auto [changed, inertia] = assign_all();
        const double prev = result.inertia_history.back();
        if (inertia > prev + 1e-9 * (1.0 + prev))
            throw Error("k-means inertia increased: " + std::to_string(prev) + " -> " +
                        std::to_string(inertia));
        result.inertia_history.push_back(inertia);
        if (!changed) break;
    }

    result.centroids = centroids;
    result.inertia = result.inertia_history.back();
    for (int i = 0; i < n; ++i) result.assignment[inst.tokens[i]] = assign[i];
    return result;
}

}  // namespace

ClusterResult cluster_terms(const WordVectors& wv, const std::set<std::string>& vocab,
                            const ClusterConfig& cfg) {
    if (cfg.k < 1) throw ContractError("cluster_terms: k must be >= 1");
    KmeansInstance inst;
    for (const auto& t : vocab) {
        if (auto v = wv.lookup(t)) {
            inst.tokens.push_back(t);
            inst.points.push_back(*v);
        }
    }
    if (static_cast<int>(inst.tokens.size()) < cfg.k)
        throw ContractError("cluster_terms: only " + std::to_string(inst.tokens.size()) +
                            " in-vocabulary tokens for k=" + std::to_string(cfg.k));

    ClusterResult best;
    bool have = false;
    const int restarts = std::max(1, cfg.restarts);
    for (int r = 0; r < restarts; ++r) {
        ClusterResult run =
            run_kmeans(inst, cfg.k, derive_seed(cfg.seed, "restart:" + std::to_string(r)),
                       cfg.max_iter);
        if (!have || run.inertia < best.inertia) {
            best = std::move(run);
            have = true;
        }
    }
    return best;
}

std::vector<std::string> top_terms(const ClusterResult& cr, const WordVectors& wv, int cluster,
                                   int m) {
    if (cluster < 0 || cluster >= cr.k) throw ContractError("top_terms: no such cluster");
    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& [token, c] : cr.assignment) {
        if (c != cluster) continue;
        auto v = wv.lookup(token);
        if (!v) continue;
        ranked.emplace_back(sq_dist(*v, cr.centroids[cluster]), token);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    std::vector<std::string> out;
    for (const auto& [d, t] : ranked) {
        if (static_cast<int>(out.size()) >= m) break;
        out.push_back(t);
    }
    return out;
}

MappingNamer MappingNamer::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open category mapping: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw FormatError("category mapping must be a JSON object: " + path);
    std::map<std::string, std::string> mapping;
    for (auto& [key, value] : j.items()) mapping[key] = value.get<std::string>();
    return MappingNamer(std::move(mapping));
}

std::string MappingNamer::name_cluster(int cluster_id, const std::vector<std::string>& terms) {
    auto it = mapping_.find(std::to_string(cluster_id));
    if (it != mapping_.end()) return it->second;
    for (const auto& t : terms) {
        it = mapping_.find(t);
        if (it != mapping_.end()) return it->second;
    }
    std::string listing;
    for (const auto& t : terms) {
        if (!listing.empty()) listing += ", ";
        listing += t;
    }
    throw FormatError("no mapping entry for cluster " + std::to_string(cluster_id) +
                      " (top terms: " + listing + ")");
}

std::vector<AspectCategory> name_categories(
    const std::vector<std::pair<int, std::vector<std::string>>>& clusters, CategoryNamer& namer) {
    std::vector<AspectCategory> out;
    std::map<std::string, int> seen;
    for (const auto& [id, terms] : clusters) {
        std::string name = namer.name_cluster(id, terms);
        if (name.empty()) throw FormatError("empty category name for cluster " + std::to_string(id));
        int n = ++seen[name];
        if (n > 1) name += "-" + std::to_string(n);
        out.push_back(AspectCategory{name, terms});
    }
    return out;
}

AspectModel AspectModel::from_categories(std::vector<AspectCategory> categories) {
    AspectModel model;
    for (auto& cat : categories) {
        if (cat.name.empty()) throw ContractError("aspect category with empty name");
        if (cat.terms.empty()) throw ContractError("aspect category with no terms: " + cat.name);
        std::set<std::string> dedup;
        for (const auto& t : cat.terms) {
            if (t.empty() || !dedup.insert(t).second)
                throw ContractError("aspect terms must be non-empty and distinct: " + cat.name);
        }
    }
    model.categories = std::move(categories);
    for (const auto& cat : model.categories) {
        for (const auto& t : cat.terms) model.term_index[t].insert(cat.name);
    }
    return model;
}

json AspectModel::to_json() const {
    json cats = json::array();
    for (const auto& c : categories) cats.push_back(json{{"name", c.name}, {"terms", c.terms}});
    return json{{"categories", cats}};
}

AspectModel AspectModel::from_json(const json& j) {
    std::vector<AspectCategory> cats;
    for (const auto& c : j.at("categories")) {
        AspectCategory cat;
        cat.name = c.at("name").get<std::string>();
        cat.terms = c.at("terms").get<std::vector<std::string>>();
        cats.push_back(std::move(cat));
    }
    return from_categories(std::move(cats));
}

void AspectModel::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write aspect model: " + path);
    out << to_json().dump(2) << '\n';
}

AspectModel AspectModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open aspect model: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw FormatError("malformed aspect model JSON: " + path);
    return from_json(j);
}

std::set<std::string> label_sentence(std::string_view sentence, const AspectModel& model) {
    std::set<std::string> labels;
    for (const auto& token : tokenize(sentence)) {
        auto it = model.term_index.find(token);
        if (it != model.term_index.end()) labels.insert(it->second.begin(), it->second.end());
    }
    return labels;
}

std::set<std::string> select_vocabulary(const Dataset& ds, const WordVectors& wv, int min_freq,
                                        double max_doc_frac) {
    std::unordered_map<std::string, int> freq;
    std::unordered_map<std::string, int> doc_freq;
    for (const auto& r : ds.reviews) {
        auto tokens = tokenize(r.text);
        std::set<std::string> uniq(tokens.begin(), tokens.end());
        for (const auto& t : tokens) ++freq[t];
        for (const auto& t : uniq) ++doc_freq[t];
    }
    const double max_docs = max_doc_frac * static_cast<double>(ds.reviews.size());
    std::set<std::string> vocab;
    for (const auto& [t, f] : freq) {
        if (f >= min_freq && doc_freq[t] <= max_docs && wv.has(t)) vocab.insert(t);
    }
    return vocab;
}

}  // namespace aspectrec
