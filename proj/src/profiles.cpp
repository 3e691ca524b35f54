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

#include "aspectrec/profiles.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "aspectrec/error.hpp"

namespace aspectrec {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

const char* owner_kind_str(OwnerKind kind) {
    return kind == OwnerKind::user ? "user" : "item";
}

OwnerKind owner_kind_from_str(std::string_view s) {
    if (s == "user") return OwnerKind::user;
    if (s == "item") return OwnerKind::item;
    throw ContractError("unknown owner kind: " + std::string(s));
}

bool Profile::operator==(const Profile& other) const {
    return owner_id == other.owner_id && kind == other.kind && summaries == other.summaries &&
           categories == other.categories && built_at == other.built_at &&
           embedding.degenerate == other.embedding.degenerate &&
           embedding.values.size() == other.embedding.values.size() &&
           embedding.values == other.embedding.values;
}

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == '.' || c == '!' || c == '?') {
            std::string s = trim(cur);
            if (!s.empty()) out.push_back(std::move(s));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    std::string s = trim(cur);
    if (!s.empty()) out.push_back(std::move(s));
    return out;
}

std::map<std::string, std::vector<std::string>> group_by_category(
    const std::vector<Review>& reviews, const AspectModel& model) {
    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& r : reviews) {
        for (auto& sentence : split_sentences(r.text)) {
            for (const auto& cat : label_sentence(sentence, model)) {
                groups[cat].push_back(sentence);
            }
        }
    }
    return groups;
}

std::string summarize_category(const SummaryRequest& req, Summarizer& summarizer,
                               ProfileBuildStats* stats) {
    if (req.sentences.empty()) throw ContractError("summarize_category: no sentences");
    std::string out = trim(summarizer.summarize(req));
    if (out.empty()) {
        out = truncate_words(trim(req.sentences.front()), req.word_limit);
        if (stats) ++stats->fell_back;
    } else if (word_count(out) > req.word_limit) {
        out = truncate_words(out, req.word_limit);
        if (stats) ++stats->truncated;
    }
    return out;
}

Profile build_profile(const std::string& owner_id, OwnerKind kind,
                      const std::vector<Review>& reviews, const AspectModel& model,
                      Summarizer& summarizer, const WordVectors& wv,
                      const ProfileBuildOptions& opts, ProfileBuildStats* stats) {
    if (reviews.empty()) throw ContractError("build_profile: empty review set for " + owner_id);

    Profile p;
    p.owner_id = owner_id;
    p.kind = kind;
    for (const auto& r : reviews) p.built_at = std::max(p.built_at, r.timestamp);

    auto groups = group_by_category(reviews, model);
    if (groups.empty()) {
        // Nothing labeled: synthesize a single General category from the
        // first sentence that exists.
        std::string first;
        for (const auto& r : reviews) {
            auto sentences = split_sentences(r.text);
            if (!sentences.empty()) {
                first = sentences.front();
                break;
            }
        }
        if (first.empty()) first = "no review text";
        p.summaries["General"] = truncate_words(first, opts.word_limit);
    } else {
        for (auto& [cat, sentences] : groups) {
            SummaryRequest req;
            req.aspect = cat;
            req.word_limit = opts.word_limit;
            if (static_cast<int>(sentences.size()) > opts.max_sentences) {
                req.sentences.assign(sentences.end() - opts.max_sentences, sentences.end());
            } else {
                req.sentences = sentences;
            }
            p.summaries[cat] = summarize_category(req, summarizer, stats);
        }
    }

    for (const auto& [cat, s] : p.summaries) p.categories.insert(cat);

    std::string joined;
    for (const auto& [cat, s] : p.summaries) {
        if (!joined.empty()) joined += ' ';
        joined += s;
    }
    p.embedding = embed_text(joined, wv);
    return p;
}

Profile placeholder_profile(const std::string& owner_id, OwnerKind kind, int dim) {
    Profile p;
    p.owner_id = owner_id;
    p.kind = kind;
    p.embedding.values = Vec::Zero(dim);
    p.embedding.degenerate = true;
    return p;
}

std::string profile_text(const Profile& p) {
    std::string out;
    for (const auto& [cat, s] : p.summaries) {
        if (!out.empty()) out += '\n';
        out += cat + ": " + s;
    }
    return out;
}

json profile_to_json(const Profile& p) {
    json summaries = json::object();
    for (const auto& [cat, s] : p.summaries) summaries[cat] = s;
    return json{{"owner_id", p.owner_id},
                {"kind", owner_kind_str(p.kind)},
                {"summaries", summaries},
                {"built_at", p.built_at}};
}

Profile profile_from_json(const json& j, EmbeddingVector embedding) {
    Profile p;
    p.owner_id = j.at("owner_id").get<std::string>();
    p.kind = owner_kind_from_str(j.at("kind").get<std::string>());
    for (auto& [cat, s] : j.at("summaries").items()) {
        p.summaries[cat] = s.get<std::string>();
        p.categories.insert(cat);
    }
    p.built_at = j.at("built_at").get<std::int64_t>();
    p.embedding = std::move(embedding);
    return p;
}

void write_embedding(const std::string& path, const EmbeddingVector& e) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write embedding: " + path);
    std::uint32_t dim = static_cast<std::uint32_t>(e.values.size());
    // Little-endian byte order, explicitly.
    unsigned char hdr[4] = {static_cast<unsigned char>(dim & 0xff),
                            static_cast<unsigned char>((dim >> 8) & 0xff),
                            static_cast<unsigned char>((dim >> 16) & 0xff),
                            static_cast<unsigned char>((dim >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(hdr), 4);
    for (std::uint32_t i = 0; i < dim; ++i) {
        float f = e.values[static_cast<int>(i)];
        std::uint32_t bits;
        std::memcpy(&bits, &f, 4);
        unsigned char b[4] = {static_cast<unsigned char>(bits & 0xff),
                              static_cast<unsigned char>((bits >> 8) & 0xff),
                              static_cast<unsigned char>((bits >> 16) & 0xff),
                              static_cast<unsigned char>((bits >> 24) & 0xff)};
        out.write(reinterpret_cast<const char*>(b), 4);
    }
}

EmbeddingVector read_embedding(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open embedding: " + path);
    unsigned char hdr[4];
    if (!in.read(reinterpret_cast<char*>(hdr), 4))
        throw CorruptRecordError("truncated embedding header: " + path);
    std::uint32_t dim = static_cast<std::uint32_t>(hdr[0]) |
                        (static_cast<std::uint32_t>(hdr[1]) << 8) |
                        (static_cast<std::uint32_t>(hdr[2]) << 16) |
                        (static_cast<std::uint32_t>(hdr[3]) << 24);
    EmbeddingVector e;
    e.values = Vec::Zero(static_cast<int>(dim));
    for (std::uint32_t i = 0; i < dim; ++i) {
        unsigned char b[4];
        if (!in.read(reinterpret_cast<char*>(b), 4))
            throw CorruptRecordError("truncated embedding payload: " + path);
        std::uint32_t bits = static_cast<std::uint32_t>(b[0]) |
                             (static_cast<std::uint32_t>(b[1]) << 8) |
                             (static_cast<std::uint32_t>(b[2]) << 16) |
                             (static_cast<std::uint32_t>(b[3]) << 24);
        float f;
        std::memcpy(&f, &bits, 4);
        e.values[static_cast<int>(i)] = f;
    }
    e.degenerate = e.values.isZero(0.0f);
    return e;
}

}  // namespace aspectrec
