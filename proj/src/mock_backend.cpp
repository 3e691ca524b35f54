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

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "aspectrec/error.hpp"
#include "aspectrec/llm.hpp"
#include "aspectrec/profiles.hpp"

namespace aspectrec {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(line);
    }
    return out;
}

// Item ids in presentation order, from "- ID: {id} | ..." block lines.
std::vector<std::string> extract_item_ids(const std::string& prompt) {
    std::vector<std::string> ids;
    for (const auto& line : lines_of(prompt)) {
        const std::string prefix = "- ID: ";
        if (line.rfind(prefix, 0) != 0) continue;
        std::size_t end = line.find(" |", prefix.size());
        ids.push_back(line.substr(prefix.size(), end == std::string::npos
                                                     ? std::string::npos
                                                     : end - prefix.size()));
    }
    return ids;
}

// Per-item category lists, from "... | Categories: a, b | ..." block lines.
std::vector<std::vector<std::string>> extract_item_categories(const std::string& prompt) {
    std::vector<std::vector<std::string>> out;
    for (const auto& line : lines_of(prompt)) {
        if (line.rfind("- ID: ", 0) != 0) continue;
        std::vector<std::string> cats;
        const std::string marker = "| Categories: ";
        std::size_t pos = line.find(marker);
        if (pos != std::string::npos) {
            std::size_t start = pos + marker.size();
            std::size_t end = line.find(" |", start);
            std::string seg =
                line.substr(start, end == std::string::npos ? std::string::npos : end - start);
            std::istringstream ss(seg);
            std::string cat;
            while (std::getline(ss, cat, ',')) {
                cat = trim(cat);
                if (!cat.empty() && cat != "-") cats.push_back(cat);
            }
        }
        out.push_back(std::move(cats));
    }
    return out;
}

int extract_top_k(const std::string& prompt) {
    for (const char* marker : {"top-", "top "}) {
        std::size_t pos = prompt.find(marker);
        while (pos != std::string::npos) {
            std::size_t digits = pos + std::char_traits<char>::length(marker);
            if (digits < prompt.size() && std::isdigit(static_cast<unsigned char>(prompt[digits]))) {
                return std::stoi(prompt.substr(digits));
            }
            pos = prompt.find(marker, pos + 1);
        }
    }
    return 1;
}

// Category names from the user-profile block ("Cat: summary" lines).
std::vector<std::string> extract_user_categories(const std::string& prompt) {
    const std::string inline_marker = "Summarize what the user values in products: ";
    const std::string section_marker = "[User Profile]\n";
    std::size_t start = prompt.find(inline_marker);
    if (start != std::string::npos) {
        start += inline_marker.size();
    } else {
        start = prompt.find(section_marker);
        if (start == std::string::npos) return {};
        start += section_marker.size();
    }
    std::size_t end = prompt.find("\n\n[", start);
    std::string block = prompt.substr(start, end == std::string::npos ? std::string::npos
                                                                      : end - start);
    std::vector<std::string> cats;
    for (const auto& line : lines_of(block)) {
        std::size_t colon = line.find(": ");
        if (colon != std::string::npos && colon > 0) cats.push_back(line.substr(0, colon));
    }
    return cats;
}

std::string numbered_list(const std::vector<std::string>& ids, int limit) {
    std::ostringstream out;
    int n = 0;
    for (const auto& id : ids) {
        if (n >= limit) break;
        out << ++n << ". " << id << "\n";
    }
    return out.str();
}

double extract_weight_line(const std::string& prompt, const std::string& label) {
    std::size_t pos = prompt.find(label);
    if (pos == std::string::npos) return 0.0;
    try {
        return std::stod(prompt.substr(pos + label.size()));
    } catch (const std::exception&) {
        return 0.0;
    }
}

double round6(double x) {
    return std::round(x * 1e6) / 1e6;
}

std::string mock_aspect_summary(const std::string& prompt) {
    std::string aspect;
    const std::string a_marker = "the aspect \"";
    std::size_t apos = prompt.find(a_marker);
    if (apos != std::string::npos) {
        std::size_t end = prompt.find('"', apos + a_marker.size());
        if (end != std::string::npos) aspect = prompt.substr(apos + a_marker.size(),
                                                             end - apos - a_marker.size());
    }
    std::string reviews;
    std::size_t f1 = prompt.find("\"\"\"\n");
    if (f1 != std::string::npos) {
        std::size_t body = f1 + 4;
        std::size_t f2 = prompt.find("\n\"\"\"", body);
        if (f2 != std::string::npos) reviews = prompt.substr(body, f2 - body);
    }
    std::string first;
    auto sentences = split_sentences(reviews);
    if (!sentences.empty()) first = sentences.front();
    return "Aspect: " + aspect + "\nSummary: " + truncate_words(first, 10);
}

std::string mock_feedback_rr(const std::string& prompt) {
    double w[3] = {extract_weight_line(prompt, "- Profile similarity: "),
                   extract_weight_line(prompt, "- Category similarity: "),
                   extract_weight_line(prompt, "- Popularity: ")};
    int largest = 0, smallest = 2;
    for (int i = 1; i < 3; ++i) {
        if (w[i] > w[largest]) largest = i;
    }
    for (int i = 1; i >= 0; --i) {
        if (w[i] < w[smallest]) smallest = i;
    }
    double delta = std::min(0.1, w[largest]);
    w[largest] -= delta;
    w[smallest] += delta;

    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "{\n  \"profile_similarity\": %g,\n  \"category_similarity\": %g,\n"
                  "  \"popularity\": %g,\n  \"reasoning\": "
                  "\"Move weight from the dominant factor to the weakest one.\"\n}",
                  round6(w[0]), round6(w[1]), round6(w[2]));
    return buf;
}

std::string mock_explanation(const std::string& prompt) {
    auto ids = extract_item_ids(prompt);
    auto cats = extract_item_categories(prompt);
    auto user_cats = extract_user_categories(prompt);
    std::ostringstream out;
    out << "Explanation:\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        std::string chosen = "General";
        if (i < cats.size()) {
            for (const auto& c : cats[i]) {
                if (std::find(user_cats.begin(), user_cats.end(), c) != user_cats.end()) {
                    chosen = c;
                    break;
                }
            }
            if (chosen == "General" && !cats[i].empty()) chosen = cats[i].front();
        }
        out << "- " << ids[i] << ": matches user profile on " << chosen << "\n";
    }
    return out.str();
}

std::string mock_category_naming(const std::string& prompt) {
    std::string terms_line = [&] {
        const std::string marker = "Terms: ";
        std::size_t pos = prompt.find(marker);
        if (pos == std::string::npos) return std::string();
        std::size_t end = prompt.find('\n', pos);
        return prompt.substr(pos + marker.size(),
                             end == std::string::npos ? std::string::npos
                                                      : end - pos - marker.size());
    }();
    std::vector<std::string> terms;
    std::istringstream ss(terms_line);
    std::string t;
    while (std::getline(ss, t, ',')) {
        t = trim(t);
        if (!t.empty()) terms.push_back(t);
    }
    std::string name;
    for (std::size_t i = 0; i < terms.size() && i < 2; ++i) {
        if (!name.empty()) name += ' ';
        name += terms[i];
    }
    if (name.empty()) name = "General";
    return "Category: " + name;
}

}  // namespace

std::string MockBackend::complete(TemplateName name, const std::string& prompt) {
    (void)seed_;  // reserved for future stochastic mocks; replies are pure today
    switch (name) {
        case TemplateName::aspect_summary:
            return mock_aspect_summary(prompt);
        case TemplateName::direct_rec:
        case TemplateName::sequential_rec:
            return numbered_list(extract_item_ids(prompt), extract_top_k(prompt));
        case TemplateName::explanation:
            return mock_explanation(prompt);
        case TemplateName::feedback_rr:
            return mock_feedback_rr(prompt);
        case TemplateName::feedback_norr: {
            auto ids = extract_item_ids(prompt);
            std::reverse(ids.begin(), ids.end());
            return numbered_list(ids, extract_top_k(prompt));
        }
        case TemplateName::category_naming:
            return mock_category_naming(prompt);
    }
    throw ContractError("mock backend: unknown template");
}

}  // namespace aspectrec
