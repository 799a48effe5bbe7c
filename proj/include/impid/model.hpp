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

// Shared vocabulary types: spans, identity keys, occurrences, context facts,
// decorations, findings, fact records and render plans.

#ifndef IMPID_MODEL_HPP
#define IMPID_MODEL_HPP

#include <algorithm>
#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace impid {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Error carrying a 1-based source location.
class LocatedError : public Error {
 public:
  LocatedError(const std::string& what, int line, int col)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

class TokenizeError : public LocatedError {
 public:
  using LocatedError::LocatedError;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Span
// ---------------------------------------------------------------------------

struct Span {
  std::size_t start = 0;  // byte offset, inclusive
  std::size_t end = 0;    // byte offset, exclusive
  int line = 1;           // advisory
  int col = 1;            // advisory

  std::size_t size() const { return end - start; }
  bool contains(std::size_t offset) const { return offset >= start && offset < end; }
  bool contains(const Span& other) const { return other.start >= start && other.end <= end; }
  bool overlaps(const Span& other) const { return start < other.end && other.start < end; }

  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span& a, const Span& b) {
    return std::tie(a.start, a.end) <=> std::tie(b.start, b.end);
  }
};

// 1-based line and column of a byte offset; columns count codepoints.
inline std::pair<int, int> line_col_at(std::string_view source, std::size_t offset) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < offset && i < source.size(); ++i) {
    if (source[i] == '\n') {
      ++line;
      col = 1;
    } else if ((static_cast<unsigned char>(source[i]) & 0xC0) != 0x80) {
      ++col;
    }
  }
  return {line, col};
}

// ---------------------------------------------------------------------------
// IdentityKey
// ---------------------------------------------------------------------------

inline bool is_identifier_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

inline bool is_identifier_part(unsigned char c) {
  return is_identifier_start(c) || (c >= '0' && c <= '9');
}

inline bool is_identifier_text(std::string_view text) {
  if (text.empty() || !is_identifier_start(static_cast<unsigned char>(text.front()))) return false;
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return is_identifier_part(static_cast<unsigned char>(c)); });
}

enum class IdentityShape { type, field, method, variable, external };

// Decomposed form of an identity key.
//
//   pkg.Class                          type
//   pkg.Class#field[@n]                field
//   pkg.Class#method(arity)[@n]        method
//   pkg.Class#method(arity)$name@n     parameter or local
//   ext:dotted.name                    unresolved external reference
//
// Initializer blocks use the member names <init> and <clinit>. The optional
// @n after a member disambiguates same-arity overloads.
struct IdentityParts {
  IdentityShape shape = IdentityShape::type;
  std::string type_path;  // dotted; for externals the full dotted name
  std::string member;
  int arity = -1;
  int member_ordinal = 0;  // 0 when absent
  std::string variable;
  int variable_ordinal = 0;
};

class IdentityKey {
 public:
  IdentityKey() = default;
  explicit IdentityKey(std::string text) : text_(std::move(text)) {}

  static IdentityKey external(std::string_view dotted) { return IdentityKey("ext:" + std::string(dotted)); }

  const std::string& str() const { return text_; }
  bool empty() const { return text_.empty(); }
  bool is_external() const { return text_.rfind("ext:", 0) == 0; }

  // Parses the key; std::nullopt when it does not follow the grammar.
  std::optional<IdentityParts> parts() const;
  bool valid() const { return parts().has_value(); }

  // The source-level name this key denotes (last name component).
  std::string simple_name() const;

  friend bool operator==(const IdentityKey&, const IdentityKey&) = default;
  friend auto operator<=>(const IdentityKey&, const IdentityKey&) = default;

 private:
  std::string text_;
};

namespace detail {

inline bool parse_dotted(std::string_view text) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  while (true) {
    std::size_t dot = text.find('.', pos);
    std::string_view seg = text.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
    if (!is_identifier_text(seg)) return false;
    if (dot == std::string_view::npos) return true;
    pos = dot + 1;
  }
}

inline std::optional<int> parse_positive(std::string_view digits) {
  if (digits.empty() || digits.size() > 6) return std::nullopt;
  int value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

inline std::optional<int> parse_natural(std::string_view digits) { return parse_positive(digits); }

}  // namespace detail

inline std::optional<IdentityParts> IdentityKey::parts() const {
  std::string_view text = text_;
  IdentityParts out;
  if (text.rfind("ext:", 0) == 0) {
    std::string_view name = text.substr(4);
    if (!detail::parse_dotted(name)) return std::nullopt;
    out.shape = IdentityShape::external;
    out.type_path = std::string(name);
    return out;
  }
  std::size_t hash = text.find('#');
  std::string_view type_path = text.substr(0, hash);
  if (!detail::parse_dotted(type_path)) return std::nullopt;
  out.type_path = std::string(type_path);
  if (hash == std::string_view::npos) {
    out.shape = IdentityShape::type;
    return out;
  }
  std::string_view rest = text.substr(hash + 1);
  std::size_t paren = rest.find('(');
  if (paren == std::string_view::npos) {
    // field[@n]
    std::size_t at = rest.rfind('@');
    std::string_view name = rest.substr(0, at);
    if (!is_identifier_text(name)) return std::nullopt;
    out.shape = IdentityShape::field;
    out.member = std::string(name);
    if (at != std::string_view::npos) {
      auto n = detail::parse_positive(rest.substr(at + 1));
      if (!n || *n < 1) return std::nullopt;
      out.member_ordinal = *n;
    }
    return out;
  }
  std::string_view name = rest.substr(0, paren);
  if (!is_identifier_text(name) && name != "<init>" && name != "<clinit>") return std::nullopt;
  std::size_t close = rest.find(')', paren);
  if (close == std::string_view::npos) return std::nullopt;
  auto arity = detail::parse_natural(rest.substr(paren + 1, close - paren - 1));
  if (!arity) return std::nullopt;
  out.member = std::string(name);
  out.arity = *arity;
  std::string_view tail = rest.substr(close + 1);
  if (!tail.empty() && tail.front() == '@') {
    std::size_t dollar = tail.find('$');
    auto n = detail::parse_positive(tail.substr(1, dollar == std::string_view::npos ? std::string_view::npos : dollar - 1));
    if (!n || *n < 1) return std::nullopt;
    out.member_ordinal = *n;
    tail = dollar == std::string_view::npos ? std::string_view{} : tail.substr(dollar);
  }
  if (tail.empty()) {
    out.shape = IdentityShape::method;
    return out;
  }
  if (tail.front() != '$') return std::nullopt;
  std::size_t at = tail.rfind('@');
  if (at == std::string_view::npos || at < 2) return std::nullopt;
  std::string_view var = tail.substr(1, at - 1);
  if (!is_identifier_text(var)) return std::nullopt;
  auto ord = detail::parse_positive(tail.substr(at + 1));
  if (!ord || *ord < 1) return std::nullopt;
  out.shape = IdentityShape::variable;
  out.variable = std::string(var);
  out.variable_ordinal = *ord;
  return out;
}

inline std::string IdentityKey::simple_name() const {
  auto p = parts();
  if (!p) return {};
  switch (p->shape) {
    case IdentityShape::variable:
      return p->variable;
    case IdentityShape::field:
    case IdentityShape::method:
      return p->member;
    case IdentityShape::type:
    case IdentityShape::external: {
      std::size_t dot = p->type_path.rfind('.');
      return dot == std::string::npos ? p->type_path : p->type_path.substr(dot + 1);
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Occurrences and context facts
// ---------------------------------------------------------------------------

enum class Role { declaration, usage };
enum class EntityKind { class_, interface_, enum_, method, field, parameter, local };

inline std::string_view to_string(Role r) { return r == Role::declaration ? "declaration" : "usage"; }

inline std::string_view to_string(EntityKind k) {
  switch (k) {
    case EntityKind::class_: return "class";
    case EntityKind::interface_: return "interface";
    case EntityKind::enum_: return "enum";
    case EntityKind::method: return "method";
    case EntityKind::field: return "field";
    case EntityKind::parameter: return "parameter";
    case EntityKind::local: return "local";
  }
  return "?";
}

inline bool is_type_kind(EntityKind k) {
  return k == EntityKind::class_ || k == EntityKind::interface_ || k == EntityKind::enum_;
}

inline bool is_variable_kind(EntityKind k) {
  return k == EntityKind::field || k == EntityKind::parameter || k == EntityKind::local;
}

struct Occurrence {
  IdentityKey identity;
  Span span;
  Role role = Role::usage;
  EntityKind kind = EntityKind::local;
  std::string name;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

enum class Modifier { public_, private_, protected_, static_, final_, synchronized_, abstract_ };

inline constexpr Modifier kAllModifiers[] = {Modifier::public_,  Modifier::private_,      Modifier::protected_,
                                             Modifier::static_,  Modifier::final_,        Modifier::synchronized_,
                                             Modifier::abstract_};

inline std::string_view to_string(Modifier m) {
  switch (m) {
    case Modifier::public_: return "public";
    case Modifier::private_: return "private";
    case Modifier::protected_: return "protected";
    case Modifier::static_: return "static";
    case Modifier::final_: return "final";
    case Modifier::synchronized_: return "synchronized";
    case Modifier::abstract_: return "abstract";
  }
  return "?";
}

inline std::optional<Modifier> modifier_from_string(std::string_view s) {
  for (Modifier m : kAllModifiers)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

struct Annotation {
  std::string name;       // as written, possibly qualified
  std::string arguments;  // raw text between the parentheses, trimmed

  std::string simple_name() const {
    auto dot = name.rfind('.');
    return dot == std::string::npos ? name : name.substr(dot + 1);
  }
  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct TypeRef {
  std::string text;       // whitespace-free type text, e.g. List<User>
  bool container = false;  // collection type or array

  // Last dotted segment before any type arguments or dimensions.
  std::string base_name() const {
    std::string head = text.substr(0, text.find_first_of("<["));
    auto dot = head.rfind('.');
    return dot == std::string::npos ? head : head.substr(dot + 1);
  }
  bool empty() const { return text.empty(); }
  friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

struct ContextFacts {
  std::set<Modifier> modifiers;
  std::vector<Annotation> annotations;
  TypeRef declared_type;                 // fields, parameters, locals
  std::vector<std::string> parameters;   // methods
  std::optional<std::string> return_type;  // methods; absent for constructors
  std::vector<std::string> supertypes;   // types: extends + implements base names
  std::string initializer;               // variables: whitespace-normalized initializer text
  bool loop_header = false;              // declared in a for-statement header

  bool has(Modifier m) const { return modifiers.count(m) != 0; }
  friend bool operator==(const ContextFacts&, const ContextFacts&) = default;
};

// ---------------------------------------------------------------------------
// Decorations
// ---------------------------------------------------------------------------

// Declaration order is the left-to-right display order at one offset.
enum class DecorationKind { inline_hint, prefix_glyph, replace_name, suffix_glyph };

inline std::string_view to_string(DecorationKind k) {
  switch (k) {
    case DecorationKind::replace_name: return "replace-name";
    case DecorationKind::prefix_glyph: return "prefix-glyph";
    case DecorationKind::suffix_glyph: return "suffix-glyph";
    case DecorationKind::inline_hint: return "inline-hint";
  }
  return "?";
}

inline std::optional<DecorationKind> decoration_kind_from_string(std::string_view s) {
  for (auto k : {DecorationKind::inline_hint, DecorationKind::prefix_glyph, DecorationKind::replace_name,
                 DecorationKind::suffix_glyph})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

namespace category {
inline constexpr std::string_view alias = "alias";
inline constexpr std::string_view transform = "transform";
inline constexpr std::string_view naming = "naming";
inline constexpr std::string_view modifiers = "modifiers";
inline constexpr std::string_view annotations = "annotations";
inline constexpr std::string_view project = "project";
inline constexpr std::string_view api_usage = "api-usage";
inline constexpr std::string_view history = "history";
inline constexpr std::string_view risk = "risk";
inline constexpr std::string_view analysis = "analysis";
inline constexpr std::string_view process = "process";
inline constexpr std::string_view hints = "hints";

inline constexpr std::string_view kKnown[] = {alias,   transform, naming, modifiers, annotations, project,
                                              api_usage, history, risk,   analysis,  process,     hints};

inline bool is_known(std::string_view id) {
  return std::find(std::begin(kKnown), std::end(kKnown), id) != std::end(kKnown);
}

// Priority a category has when a profile does not configure it.
inline int default_priority(std::string_view id) {
  if (id == modifiers || id == annotations || id == api_usage || id == process) return 2;
  if (id == history || id == project || id == hints) return 3;
  return 1;
}
}  // namespace category

struct Decoration {
  Span target;
  std::optional<IdentityKey> identity;
  DecorationKind kind = DecorationKind::suffix_glyph;
  std::string text;
  std::string category;
  int priority = 1;
  std::string description;

  friend bool operator==(const Decoration&, const Decoration&) = default;
};

// Total order used by render plans: (start, kind), then the glyph ordering
// (priority, category, text), then the remaining fields for determinism.
inline bool decoration_less(const Decoration& a, const Decoration& b) {
  const int ka = static_cast<int>(a.kind);
  const int kb = static_cast<int>(b.kind);
  const auto ia = a.identity.value_or(IdentityKey{});
  const auto ib = b.identity.value_or(IdentityKey{});
  return std::tie(a.target.start, ka, a.priority, a.category, a.text, a.target.end, a.description, ia) <
         std::tie(b.target.start, kb, b.priority, b.category, b.text, b.target.end, b.description, ib);
}

// ---------------------------------------------------------------------------
// Findings
// ---------------------------------------------------------------------------

enum class RuleId { singular_holds_many, plural_holds_one, single_letter, getter_no_return };

inline std::string_view to_string(RuleId r) {
  switch (r) {
    case RuleId::singular_holds_many: return "SINGULAR_HOLDS_MANY";
    case RuleId::plural_holds_one: return "PLURAL_HOLDS_ONE";
    case RuleId::single_letter: return "SINGLE_LETTER";
    case RuleId::getter_no_return: return "GETTER_NO_RETURN";
  }
  return "?";
}

inline std::optional<RuleId> rule_id_from_string(std::string_view s) {
  for (auto r : {RuleId::singular_holds_many, RuleId::plural_holds_one, RuleId::single_letter,
                 RuleId::getter_no_return})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

struct Finding {
  RuleId rule = RuleId::single_letter;
  IdentityKey target;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

// ---------------------------------------------------------------------------
// Fact records
// ---------------------------------------------------------------------------

using Timestamp = std::chrono::sys_seconds;

enum class FactType { renamed, method_added, method_changed, last_author, risky_call, finding, change_status };

inline std::string_view to_string(FactType t) {
  switch (t) {
    case FactType::renamed: return "renamed";
    case FactType::method_added: return "method-added";
    case FactType::method_changed: return "method-changed";
    case FactType::last_author: return "last-author";
    case FactType::risky_call: return "risky-call";
    case FactType::finding: return "finding";
    case FactType::change_status: return "change-status";
  }
  return "?";
}

inline std::optional<FactType> fact_type_from_string(std::string_view s) {
  for (auto t : {FactType::renamed, FactType::method_added, FactType::method_changed, FactType::last_author,
                 FactType::risky_call, FactType::finding, FactType::change_status})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

enum class ChangeStatus { inspection_pending, needs_change, no_change, implemented };

inline std::string_view to_string(ChangeStatus s) {
  switch (s) {
    case ChangeStatus::inspection_pending: return "inspection-pending";
    case ChangeStatus::needs_change: return "needs-change";
    case ChangeStatus::no_change: return "no-change";
    case ChangeStatus::implemented: return "implemented";
  }
  return "?";
}

inline std::optional<ChangeStatus> change_status_from_string(std::string_view s) {
  for (auto v : {ChangeStatus::inspection_pending, ChangeStatus::needs_change, ChangeStatus::no_change,
                 ChangeStatus::implemented})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

// Span target of a fact: either a byte range or a 1-based line/column.
struct FactSpan {
  std::optional<std::size_t> start, end;
  std::optional<int> line, col;
  friend bool operator==(const FactSpan&, const FactSpan&) = default;
};

struct FactRecord {
  FactType type = FactType::renamed;
  std::optional<IdentityKey> identity;
  std::optional<FactSpan> span;
  std::optional<Timestamp> timestamp;
  // Payload; which fields are meaningful depends on type.
  std::string author;
  std::string avatar;  // codepoint notation, e.g. U+1F467,U+1F3FE
  std::string previous;
  std::string rule;
  std::string severity;
  std::string message;
  std::optional<ChangeStatus> status;

  friend bool operator==(const FactRecord&, const FactRecord&) = default;
};

// ---------------------------------------------------------------------------
// Render plan
// ---------------------------------------------------------------------------

struct RenderPlan {
  std::string file;
  std::string source_hash;
  std::vector<Decoration> decorations;

  friend bool operator==(const RenderPlan&, const RenderPlan&) = default;
};

// FNV-1a 64-bit digest of the source bytes, as "fnv1a64:<16 hex digits>".
inline std::string source_hash(std::string_view source) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : source) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "fnv1a64:";
  for (int shift = 60; shift >= 0; shift -= 4) out.push_back(kHex[(h >> shift) & 0xf]);
  return out;
}

}  // namespace impid

#endif  // IMPID_MODEL_HPP
