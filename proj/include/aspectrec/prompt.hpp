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

#include <map>
#include <string>
#include <string_view>

namespace aspectrec {

enum class TemplateName {
    aspect_summary,
    direct_rec,
    sequential_rec,
    explanation,
    feedback_rr,
    feedback_norr,
    category_naming,
};

const char* template_name_str(TemplateName name);

/// Prompt body with {placeholder} slots. Literal braces are written {{ }}.
struct PromptTemplate {
    TemplateName name;
    std::string body;
};

const PromptTemplate& get_template(TemplateName name);

/// Byte-deterministic substitution. Every placeholder must be bound (throws
/// RenderError naming the missing one) and no stray unescaped brace may
/// survive the render.
std::string render_prompt(const PromptTemplate& t,
                          const std::map<std::string, std::string>& bindings);

/// Compact decimal formatting for weights bound into prompts ("0.4",
/// "0.455"); up to three decimals, trailing zeros trimmed.
std::string format_weight(double w);

}  // namespace aspectrec
