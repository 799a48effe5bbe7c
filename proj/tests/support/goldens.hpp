/*
 * Copyright 2026 The impid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef IMPID_TESTS_GOLDENS_HPP
#define IMPID_TESTS_GOLDENS_HPP

#include <regex>
#include <string>
#include <vector>

#include "impid/impid.hpp"

// Exact-string goldens for the transform examples, both at the function
// level and through the full render pipeline.

namespace impid_test {

struct Golden {
  std::string name;
  std::string got;
  std::string want;
  bool ok() const { return got == want; }
};

inline std::string strip_sgr(const std::string& s) {
  static const std::regex sgr("\x1b\\[[0-9;]*m");
  return std::regex_replace(s, sgr, "");
}

// The rendered line that contains `needle` in the original source, with
// escapes removed and indentation trimmed.
inline std::string rendered_line(const std::string& source, const impid::Profile& profile, const std::string& needle) {
  const auto unit = impid::extract_occurrences(source);
  impid::Profile quiet = profile;
  quiet.categories["naming"] = {false, 1};  // keeps `e` and friends undecorated
  const std::string out = strip_sgr(impid::render_unit(unit, "G.java", quiet, {}, impid::Format::ansi));
  const std::size_t at = source.find(needle);
  if (at == std::string::npos) return "<needle not in source>";
  const int line = impid::line_col_at(source, at).first;
  std::size_t pos = 0;
  for (int i = 1; i < line && pos != std::string::npos; ++i) pos = out.find('\n', pos) + 1;
  std::string text = out.substr(pos, out.find('\n', pos) - pos);
  return text.substr(std::min(text.find_first_not_of(' '), text.size()));
}

inline std::vector<Golden> run_goldens() {
  using impid::AbbreviationStrategy;
  std::vector<Golden> out;

  // abbreviation, function level
  out.push_back({"abbreviate initialism-keep-last",
                 impid::abbreviate("VeryLongJavaLanguageException", AbbreviationStrategy::initialism_keep_last, 15).display,
                 "VLJLException"});
  out.push_back({"abbreviate per-word-prefix-3",
                 impid::abbreviate("InvocationTargetException", AbbreviationStrategy::per_word_prefix_3, 15,
                                   impid::TransformConfig{}.word_abbreviations)
                     .display,
                 "InvTarExp"});
  out.push_back({"strip accessor prefix", impid::strip_accessor_prefix("getUsers"), "users"});
  out.push_back({"expand method name", impid::expand_method_name("getUsers", {"status"}), "getUsersByStatus"});

  // the same through the pipeline
  {
    impid::Profile p;
    p.transform.abbreviation = AbbreviationStrategy::initialism_keep_last;
    out.push_back({"render initialism",
                   rendered_line("package g;\nclass VeryLongJavaLanguageException extends Exception {}\n", p, "class Very"),
                   "class VLJLException\U0001FA73 extends Exception {}"});
  }
  {
    impid::Profile p;
    p.transform.abbreviation = AbbreviationStrategy::per_word_prefix_3;
    p.transform.strip_accessor_prefixes = true;
    const std::string src =
        "package g;\n"
        "class Loader {\n"
        "    java.util.List<String> getUsers() { return null; }\n"
        "    void load() {\n"
        "        try { getUsers(); } catch (InvocationTargetException e) { }\n"
        "    }\n"
        "}\n";
    out.push_back({"render per-word-prefix-3 and strip", rendered_line(src, p, "try {"),
                   "try { users(); } catch (InvTarExp\U0001FA73 e) { }"});
  }
  {
    impid::Profile p;
    p.transform.expansion = true;
    const std::string src =
        "package g;\n"
        "class Users {\n"
        "    java.util.List<String> getUsers(String status) { return null; }\n"
        "}\n";
    out.push_back({"render expansion", rendered_line(src, p, "java.util.List<String> getUsers"),
                   "java.util.List<String> getUsersByStatus(String status) { return null; }"});
  }
  {
    impid::Profile p;
    p.transform.parameter_hints = true;
    const std::string src =
        "package g;\n"
        "class Calc {\n"
        "    int add(int argument1, int argument2) { return argument1 + argument2; }\n"
        "    int seven() { return add(2, 5); }\n"
        "}\n";
    out.push_back({"render hints add", rendered_line(src, p, "int seven"), "int seven() { return add(argument1: 2, argument2: 5); }"});
  }
  {
    impid::Profile p;
    p.transform.parameter_hints = true;
    const std::string src =
        "package g;\n"
        "class Translator {\n"
        "    void addTranslation(String word, String translation) { }\n"
        "    void demo() {\n"
        "        addTranslation(\"buon\", \"good\");\n"
        "    }\n"
        "}\n";
    out.push_back({"render hints addTranslation", rendered_line(src, p, "addTranslation(\"buon\""),
                   "addTranslation(word: \"buon\", translation: \"good\");"});
  }
  return out;
}

}  // namespace impid_test

#endif  // IMPID_TESTS_GOLDENS_HPP
