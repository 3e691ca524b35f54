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

#include <json.hpp>

#include <algorithm>
#include <set>

#include "aspectrec/error.hpp"
#include "aspectrec/llm.hpp"

namespace aspectrec {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Takes the text of the line following "marker" (e.g. "Summary:"), or an
// empty string when the marker is absent.
std::string line_after_marker(const std::string& text, const std::string& marker) {
    std::size_t pos = text.rfind(marker, 0) == 0 ? 0 : text.find("\n" + marker);
    if (pos == std::string::npos) return {};
    std::size_t start = (pos == 0 ? 0 : pos + 1) + marker.size();
    std::size_t end = text.find('\n', start);
    return trim(text.substr(start, end == std::string::npos ? std::string::npos : end - start));
}

std::optional<double> as_number(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return std::stod(v.get<std::string>());
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace

ParsedRanking parse_ranked_items(const std::string& text,
                                 const std::vector<std::string>& candidate_ids, int top_k) {
    if (top_k < 1) throw ContractError("parse_ranked_items: top_k must be >= 1");

    ParsedRanking out;
    std::set<std::string> seen;
    std::size_t i = 0;
    while (i < text.size()) {
        // Longest candidate id starting at this position wins.
        const std::string* best = nullptr;
        for (const auto& id : candidate_ids) {
            if (id.empty() || id.size() > text.size() - i) continue;
            if (text.compare(i, id.size(), id) != 0) continue;
            if (!best || id.size() > best->size()) best = &id;
        }
        if (best) {
            if (seen.insert(*best).second) out.items.push_back(*best);
            i += best->size();
        } else {
            ++i;
        }
    }
    if (out.items.empty())
        throw ParseError("no candidate id found in model reply (" +
                         std::to_string(candidate_ids.size()) + " candidates)");

    const int want = std::min<int>(top_k, static_cast<int>(candidate_ids.size()));
    if (static_cast<int>(out.items.size()) > want) out.items.resize(want);
    for (const auto& id : candidate_ids) {
        if (static_cast<int>(out.items.size()) >= want) break;
        if (seen.insert(id).second) {
            out.items.push_back(id);
            ++out.padded;
        }
    }
    return out;
}

WeightProposal parse_weight_proposal(const std::string& text) {
    for (std::size_t start = text.find('{'); start != std::string::npos;
         start = text.find('{', start + 1)) {
        // Balanced-brace scan, string-literal aware.
        int depth = 0;
        bool in_str = false, esc = false;
        std::size_t end = std::string::npos;
        for (std::size_t i = start; i < text.size(); ++i) {
            char c = text[i];
            if (in_str) {
                if (esc) {
                    esc = false;
                } else if (c == '\\') {
                    esc = true;
                } else if (c == '"') {
                    in_str = false;
                }
            } else if (c == '"') {
                in_str = true;
            } else if (c == '{') {
                ++depth;
            } else if (c == '}') {
                if (--depth == 0) {
                    end = i;
                    break;
                }
            }
        }
        if (end == std::string::npos) continue;

        json j = json::parse(text.substr(start, end - start + 1), nullptr,
                             /*allow_exceptions=*/false);
        if (j.is_discarded() || !j.is_object()) continue;
        if (!j.contains("profile_similarity") || !j.contains("category_similarity") ||
            !j.contains("popularity"))
            continue;
        auto a = as_number(j["profile_similarity"]);
        auto b = as_number(j["category_similarity"]);
        auto g = as_number(j["popularity"]);
        if (!a || !b || !g) continue;
        try {
            WeightProposal p;
            p.weights = RerankWeights::normalized(*a, *b, *g);
            if (j.contains("reasoning") && j["reasoning"].is_string())
                p.reasoning = j["reasoning"].get<std::string>();
            return p;
        } catch (const ContractError&) {
            continue;  // all-zero proposal; keep scanning
        }
    }
    throw ParseError("no weight-proposal JSON object in model reply");
}

std::string LlmSummarizer::summarize(const SummaryRequest& req) {
    std::string combined;
    for (const auto& s : req.sentences) {
        if (!combined.empty()) combined += '\n';
        combined += s;
    }
    std::string prompt = render_prompt(get_template(TemplateName::aspect_summary),
                                       {{"aspect", req.aspect}, {"combined_text", combined}});
    std::string reply = backend_.complete(TemplateName::aspect_summary, prompt);
    std::string summary = line_after_marker(reply, "Summary:");
    return summary.empty() ? trim(reply) : summary;
}

std::string LlmCategoryNamer::name_cluster(int cluster_id, const std::vector<std::string>& terms) {
    std::string joined;
    for (const auto& t : terms) {
        if (!joined.empty()) joined += ", ";
        joined += t;
    }
    std::string prompt =
        render_prompt(get_template(TemplateName::category_naming), {{"terms", joined}});
    std::string reply = backend_.complete(TemplateName::category_naming, prompt);
    std::string name = line_after_marker(reply, "Category:");
    if (name.empty()) name = trim(reply.substr(0, reply.find('\n')));
    if (name.empty())
        throw FormatError("empty category name from model for cluster " +
                          std::to_string(cluster_id));
    return name;
}

}  // namespace aspectrec
