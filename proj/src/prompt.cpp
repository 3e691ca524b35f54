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

#include "aspectrec/prompt.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "aspectrec/error.hpp"

namespace aspectrec {

namespace {

constexpr const char* kAspectSummary =
    R"(You are an intelligent assistant that builds personalized user profiles for a recommendation system.

Your job is to summarize what the user values most regarding the aspect "{aspect}", based on the reviews below.
Only extract information that is directly related to the aspect "{aspect}".
Ignore general praise, irrelevant sentences, or duplicated expressions.

Focus on capturing the user's unique preferences and patterns for this aspect.
Summarize the user's preference or priority into one sentence within 10 words, reflecting what kind of features the user tends to like or look for.

Reviews:
"""
{combined_text}
"""

Answer format:
Aspect: {aspect}
Summary: <Your 10-word sentence here>)";

constexpr const char* kDirectRec =
    R"(You are a smart recommendation agent.

[User Profile]
Summarize what the user values in products: {user_profile_text}

[Candidate Items]
You are given {num_candidates} candidate items. Each includes a category and aspect-based profile summary.

{item_blocks}

[Task]
Based on the user profile and the information for each item, select the top-{top_k} items that best match the user's preferences. For each item, consider how it matches with the user's specific aspects and preferences.

Think step by step before making a final decision. Choose the top {top_k} products to recommend in order of priority, from highest to lowest.)";

constexpr const char* kSequentialRec =
    R"(You are a smart recommendation agent.

[User Profile]
Summarize what the user values in products: {user_profile_text}

[User Purchase History]
The user has recently purchased these items in this exact order (oldest to newest):{recent_items_text}

[Candidate Items]
You are given {num_candidates} candidate items. Each includes a category and aspect-based profile summary.

{item_blocks}

[Task]
Based on both the user's profile and purchase sequence/pattern, predict the next item the user is most likely to purchase.
The sequential pattern and evolution of the user's preferences over time. The user's aspect-based preferences from their profile

Think step by step before making a final decision, Choose the top {top_k} products to recommend in order of priority, from highest to lowest.)";

constexpr const char* kExplanation =
    R"(You are a smart recommendation agent.

[User Profile]
Summarize what the user values in products: {user_profile_text}

[Candidate Items]
You are given {num_candidates} candidate items. Each includes a category and aspect-based profile summary.

{item_blocks}

[Task]
Based on the user profile and the information for each item, select the top-{top_k} items that best match the user's preferences and explain the recommendation reason based on aspects. For each item, consider how it matches with the user's specific aspects and preferences.

Think step by step before making a final decision, Choose the top {top_k} products to recommend in order of priority, from highest to lowest.

[Example]
Explanation:
- id1: Brief explanation how this item matches user's specific aspects (15 words max))";

constexpr const char* kFeedbackRr =
    R"(You are a recommendation system weight analysis expert.

[User Profile]
{user_profile_text}

[Previously Recommendation]
{prev_items}

[Actually Selected Item]
{actual_item}

[Current Weights]
- Profile similarity: {alpha}
- Category similarity: {beta}
- Popularity: {gamma}

Analysis:
1. What are the differences between the actually selected item and recommended items?
2. How should weights be adjusted to rank the actual item higher?

Propose new weights in the following format:
{{
  "profile_similarity": 0.X,
  "category_similarity": 0.X,
  "popularity": 0.X,
  "reasoning": "Explanation for weight adjustment"
}})";

constexpr const char* kFeedbackNorr =
    R"(You are a recommendation system that needs to improve its strategy.

[User Profile]
{user_profile_text}

[Previous Recommendation]
You previously recommended these items, but the customer didn't choose any of them:
{prev_items}

[All Candidate Items]
{item_blocks}

[Task]
Since the customer didn't choose any of your previous recommendations, you need to:
Reconsider your recommendation strategy
Think about different aspects or categories that might better match the user's preferences
Select {top_k} different items that could better satisfy the customer's needs

Try to recommend items from different categories or with different characteristics than before.

Choose the top {top_k} products to recommend in order of priority, from highest to lowest.)";

constexpr const char* kCategoryNaming =
    R"(You are a domain expert who names aspect categories for a recommendation system.

The following terms were grouped together because they appear in similar review contexts:

Terms: {terms}

Give this group a short, interpretable category name (one to three words).

Answer format:
Category: <your category name>)";

const std::array<PromptTemplate, 7>& all_templates() {
    static const std::array<PromptTemplate, 7> kTemplates = {{
        {TemplateName::aspect_summary, kAspectSummary},
        {TemplateName::direct_rec, kDirectRec},
        {TemplateName::sequential_rec, kSequentialRec},
        {TemplateName::explanation, kExplanation},
        {TemplateName::feedback_rr, kFeedbackRr},
        {TemplateName::feedback_norr, kFeedbackNorr},
        {TemplateName::category_naming, kCategoryNaming},
    }};
    return kTemplates;
}

}  // namespace

const char* template_name_str(TemplateName name) {
    switch (name) {
        case TemplateName::aspect_summary: return "aspect_summary";
        case TemplateName::direct_rec: return "direct_rec";
        case TemplateName::sequential_rec: return "sequential_rec";
        case TemplateName::explanation: return "explanation";
        case TemplateName::feedback_rr: return "feedback_rr";
        case TemplateName::feedback_norr: return "feedback_norr";
        case TemplateName::category_naming: return "category_naming";
    }
    return "unknown";
}

const PromptTemplate& get_template(TemplateName name) {
    for (const auto& t : all_templates()) {
        if (t.name == name) return t;
    }
    throw ContractError("unknown template");
}

std::string render_prompt(const PromptTemplate& t,
                          const std::map<std::string, std::string>& bindings) {
    std::string out;
    out.reserve(t.body.size() * 2);
    const std::string& body = t.body;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '{') {
            if (i + 1 < body.size() && body[i + 1] == '{') {
                out.push_back('{');
                ++i;
                continue;
            }
            std::size_t end = body.find('}', i + 1);
            if (end == std::string::npos)
                throw RenderError("unterminated placeholder in template " +
                                      std::string(template_name_str(t.name)),
                                  body.substr(i + 1));
            std::string key = body.substr(i + 1, end - i - 1);
            auto it = bindings.find(key);
            if (it == bindings.end())
                throw RenderError("unbound placeholder: " + key, key);
            out += it->second;
            i = end;
        } else if (c == '}') {
            if (i + 1 < body.size() && body[i + 1] == '}') {
                out.push_back('}');
                ++i;
                continue;
            }
            throw RenderError("stray '}' in template " + std::string(template_name_str(t.name)),
                              "}");
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::string format_weight(double w) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", w);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.push_back('0');
    return s;
}

}  // namespace aspectrec
