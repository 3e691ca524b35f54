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

#include "aspectrec/textvec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "aspectrec/error.hpp"
#include "aspectrec/rng.hpp"

namespace aspectrec {

namespace {

const std::unordered_set<std::string_view>& stopwords() {
    static const std::unordered_set<std::string_view> kStopwords = {
        "a",     "about", "above", "after",  "again",   "all",   "am",    "an",
        "and",   "any",   "are",   "as",     "at",      "be",    "been",  "before",
        "being", "below", "but",   "by",     "did",     "do",    "does",  "doing",
        "down",  "during", "each", "few",    "for",     "from",  "had",   "has",
        "have",  "having", "he",   "her",    "here",    "hers",  "him",   "his",
        "how",   "i",     "if",    "in",     "into",    "is",    "it",    "its",
        "itself", "just", "me",    "more",   "most",    "my",    "no",    "nor",
        "not",   "now",   "of",    "off",    "on",      "once",  "only",  "or",
        "other", "our",   "ours",  "out",    "over",    "own",   "same",  "she",
        "so",    "some",  "such",  "than",   "that",    "the",   "their", "theirs",
        "them",  "then",  "there", "these",  "they",    "this",  "those", "through",
        "to",    "too",   "under", "until",  "up",      "very",  "was",   "we",
        "were",  "what",  "when",  "where",  "which",   "while", "who",   "whom",
        "why",   "will",  "with",  "would",  "you",     "your",  "yours",
    };
    return kStopwords;
}

inline bool is_token_byte(unsigned char c) {
    // Bytes >= 0x80 belong to UTF-8 multibyte sequences and never split.
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c >= 0x80;
}

// Deterministic unit vector for the hashing fallback.
Vec hash_vector(const std::string& token, std::uint64_t seed, int dim) {
    Rng rng(splitmix64(seed ^ fnv1a64(token)));
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = static_cast<float>(rng.next_gaussian());
    float n = v.norm();
    if (n > 0.0f) v /= n;
    return v;
}

}  // namespace

double Rng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1, u2;
    do {
        u1 = next_u01();
    } while (u1 <= 0.0);
    u2 = next_u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

bool is_stopword(std::string_view token) {
    return stopwords().count(token) > 0;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (cur.size() >= 2 && !is_stopword(cur)) out.push_back(cur);
        cur.clear();
    };
    for (unsigned char c : text) {
        if (is_token_byte(c)) {
            cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                               : static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

int word_count(std::string_view text) {
    int n = 0;
    bool in_word = false;
    for (unsigned char c : text) {
        bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r';
        if (!ws && !in_word) ++n;
        in_word = !ws;
    }
    return n;
}

std::string truncate_words(std::string_view text, int max_words) {
    int n = 0;
    bool in_word = false;
    std::size_t end = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r';
        if (!ws) {
            if (!in_word) {
                ++n;
                if (n > max_words) break;
            }
            end = i + 1;
        }
        in_word = !ws;
    }
    return std::string(text.substr(0, end));
}

WordVectors WordVectors::load(const std::string& path, LoadStats* stats) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open word-vector file: " + path);

    struct Line {
        std::string token;
        std::vector<float> values;
    };
    std::vector<Line> lines;
    std::map<int, int> arity_count;  // dim -> occurrences; map keeps ties stable
    std::vector<int> first_seen_order;

    std::string raw;
    bool first = true;
    int skipped = 0;
    while (std::getline(in, raw)) {
        if (raw.empty()) continue;
        std::istringstream ss(raw);
        std::string token;
        ss >> token;
        std::vector<float> vals;
        double x;
        while (ss >> x) vals.push_back(static_cast<float>(x));
        if (first) {
            first = false;
            // Optional "count dim" header: token is numeric and exactly one
            // trailing number.
            if (vals.size() == 1 &&
                token.find_first_not_of("0123456789") == std::string::npos) {
                continue;
            }
        }
        if (vals.empty() || token.empty()) {
            ++skipped;
            continue;
        }
        int d = static_cast<int>(vals.size());
        if (arity_count.find(d) == arity_count.end()) first_seen_order.push_back(d);
        arity_count[d]++;
        lines.push_back({std::move(token), std::move(vals)});
    }
    if (lines.empty()) throw FormatError("no parseable word-vector lines in " + path);

    int best_dim = first_seen_order.front();
    for (int d : first_seen_order) {
        if (arity_count[d] > arity_count[best_dim]) best_dim = d;
    }

    WordVectors wv;
    wv.dim_ = best_dim;
    for (auto& ln : lines) {
        if (static_cast<int>(ln.values.size()) != best_dim) {
            ++skipped;
            continue;
        }
        std::string token = ln.token;
        std::transform(token.begin(), token.end(), token.begin(), [](unsigned char c) {
            return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
        });
        Vec v = Eigen::Map<Vec>(ln.values.data(), best_dim);
        wv.table_[token] = std::move(v);
    }
    if (stats) {
        stats->kept = static_cast<int>(wv.table_.size());
        stats->skipped = skipped;
    }
    return wv;
}

WordVectors WordVectors::hashing(int dim, std::uint64_t seed) {
    if (dim < 1) throw ContractError("hashing word vectors need dim >= 1");
    WordVectors wv;
    wv.dim_ = dim;
    wv.hashing_ = true;
    wv.seed_ = seed;
    return wv;
}

bool WordVectors::has(const std::string& token) const {
    return hashing_ || table_.count(token) > 0;
}

std::optional<Vec> WordVectors::lookup(const std::string& token) const {
    if (hashing_) return hash_vector(token, seed_, dim_);
    auto it = table_.find(token);
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

EmbeddingVector embed_tokens(const std::vector<std::string>& tokens, const WordVectors& wv) {
    EmbeddingVector out;
    out.values = Vec::Zero(wv.dim());
    int n = 0;
    for (const auto& t : tokens) {
        if (auto v = wv.lookup(t)) {
            out.values += *v;
            ++n;
        }
    }
    if (n == 0) {
        out.degenerate = true;
    } else {
        out.values /= static_cast<float>(n);
    }
    return out;
}

EmbeddingVector embed_text(std::string_view text, const WordVectors& wv) {
    return embed_tokens(tokenize(text), wv);
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b, bool* degenerate) {
    if (a.dim() != b.dim())
        throw ContractError("cosine: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()) + ")");
    if (degenerate) *degenerate = false;
    const Eigen::VectorXd x = a.values.cast<double>();
    const Eigen::VectorXd y = b.values.cast<double>();
    const double nx = x.norm();
    const double ny = y.norm();
    if (nx == 0.0 || ny == 0.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    double c = x.dot(y) / (nx * ny);
    return std::clamp(c, -1.0, 1.0);
}

}  // namespace aspectrec
