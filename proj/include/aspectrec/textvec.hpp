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

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aspectrec {

using Vec = Eigen::VectorXf;

/// Dense text embedding. `degenerate` is set when no in-vocabulary token
/// contributed and the vector is therefore zero.
struct EmbeddingVector {
    Vec values;
    bool degenerate = false;

    int dim() const { return static_cast<int>(values.size()); }
};

/// Lowercased content tokens: split on non-alphanumeric boundaries (UTF-8
/// multibyte sequences are kept intact), tokens shorter than two bytes and a
/// fixed stopword list removed.
std::vector<std::string> tokenize(std::string_view text);

bool is_stopword(std::string_view token);

/// Whitespace word count / truncation, used to enforce summary word limits.
int word_count(std::string_view text);
std::string truncate_words(std::string_view text, int max_words);

/// Pretrained word vectors loaded from a text file, or a deterministic
/// hashing fallback that synthesizes a seeded pseudo-random unit vector per
/// token so the pipeline runs with no external file.
class WordVectors {
public:
    struct LoadStats {
        int kept = 0;
        int skipped = 0;
    };

    // Format: one "token v1 ... vd" line per token, optional "count dim"
    // header. The dimension is taken as the majority arity across data lines;
    // lines of any other arity are skipped and counted.
    static WordVectors load(const std::string& path, LoadStats* stats = nullptr);

    static WordVectors hashing(int dim, std::uint64_t seed);

    int dim() const { return dim_; }
    bool is_hashing() const { return hashing_; }
    std::size_t table_size() const { return table_.size(); }

    bool has(const std::string& token) const;

    // nullopt for out-of-vocabulary tokens (hashing mode is never OOV).
    std::optional<Vec> lookup(const std::string& token) const;

private:
    int dim_ = 0;
    bool hashing_ = false;
    std::uint64_t seed_ = 0;
    std::unordered_map<std::string, Vec> table_;
};

/// Mean of in-vocabulary token vectors; zero vector flagged degenerate when
/// nothing is in vocabulary.
EmbeddingVector embed_text(std::string_view text, const WordVectors& wv);
EmbeddingVector embed_tokens(const std::vector<std::string>& tokens, const WordVectors& wv);

/// Cosine similarity in [-1, 1]. A zero-norm side yields 0 (and sets
/// *degenerate when provided) so degenerate profiles stay rank-neutral.
/// Throws ContractError on dimension mismatch.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b, bool* degenerate = nullptr);

}  // namespace aspectrec
