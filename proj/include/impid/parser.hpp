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

// Tolerant declaration parser and lexical resolver for the Java-like subset.
//
// The parser recognises package/import headers, type declarations, members,
// parameters and local variables, and builds a lexical scope tree. Statement
// bodies are parsed only deeply enough to track blocks and local
// declarations; anything unrecognised is skipped token-wise. Every identifier
// token outside package/import headers becomes one Occurrence.

#ifndef IMPID_PARSER_HPP
#define IMPID_PARSER_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "impid/lexer.hpp"
#include "impid/model.hpp"

namespace impid {

class ParseError : public LocatedError {
 public:
  ParseError(const std::string& what, const Span& span)
      : LocatedError(what, span.line, span.col), span_(span) {}
  const Span& span() const { return span_; }

 private:
  Span span_;
};

struct ParserOptions {
  // Base type names treated as containers (arrays always are).
  std::vector<std::string> collection_types = {"List", "ArrayList", "LinkedList", "Set",        "HashSet",
                                               "TreeSet", "Map",     "HashMap",    "Collection", "Iterable"};
};

enum class ScopeKind { unit, type, method, block };

struct Scope {
  ScopeKind kind = ScopeKind::block;
  int parent = -1;
  std::size_t begin = 0;  // byte extent [begin, end)
  std::size_t end = 0;
  std::vector<int> children;
  std::vector<std::size_t> declarations;
  // Type and method scopes: the owning declaration. Initializer blocks have
  // no owner and use member_name <init> or <clinit>.
  std::optional<std::size_t> owner;
  std::string member_name;

  bool contains(std::size_t offset) const { return offset >= begin && offset < end; }
};

struct Declaration {
  IdentityKey identity;
  Occurrence occurrence;
  ContextFacts facts;
  int scope = 0;        // scope the declaration belongs to
  int body_scope = -1;  // scope owned by a type or method declaration
};

struct SymbolTable {
  std::string package_name;
  std::vector<Declaration> declarations;
  std::vector<Scope> scopes;  // scopes[0] is the compilation unit

  const Declaration* find(const IdentityKey& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &declarations[it->second];
  }
  std::optional<std::size_t> index_of(const IdentityKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int innermost_scope_at(std::size_t offset) const {
    int current = 0;
    while (true) {
      int next = -1;
      for (int child : scopes[current].children)
        if (scopes[child].contains(offset)) next = child;
      if (next < 0) return current;
      current = next;
    }
  }

  bool is_ancestor_or_self(int ancestor, int scope) const {
    for (int s = scope; s >= 0; s = scopes[s].parent)
      if (s == ancestor) return true;
    return false;
  }

  // Nearest enclosing type scope (including `scope`), or -1.
  int enclosing_type_scope(int scope) const {
    for (int s = scope; s >= 0; s = scopes[s].parent)
      if (scopes[s].kind == ScopeKind::type) return s;
    return -1;
  }

  void rebuild_index() {
    index_.clear();
    for (std::size_t i = 0; i < declarations.size(); ++i) index_.emplace(declarations[i].identity, i);
  }

 private:
  std::map<IdentityKey, std::size_t> index_;
};

// Computes the identity key of declarations[index]. Keys of earlier
// declarations must already be assigned (true for tables built by the parser).
inline IdentityKey identity_key(const SymbolTable& table, std::size_t index) {
  const Declaration& decl = table.declarations[index];
  const std::string& name = decl.occurrence.name;

  auto type_path_of_scope = [&](int scope) -> std::string {
    int ts = table.enclosing_type_scope(scope);
    if (ts < 0 || !table.scopes[ts].owner) return table.package_name.empty() ? std::string("$unit") : table.package_name;
    return table.declarations[*table.scopes[ts].owner].identity.str();
  };

  const EntityKind kind = decl.occurrence.kind;
  if (is_type_kind(kind)) {
    int ts = table.enclosing_type_scope(decl.scope);
    if (ts >= 0 && table.scopes[ts].owner) return IdentityKey(type_path_of_scope(decl.scope) + "." + name);
    return IdentityKey(table.package_name.empty() ? name : table.package_name + "." + name);
  }

  auto count_earlier = [&](const std::string& prefix, auto&& same) {
    int n = 0;
    for (std::size_t j = 0; j < index; ++j)
      if (same(table.declarations[j]) && table.declarations[j].identity.str().rfind(prefix, 0) == 0) ++n;
    return n;
  };

  if (kind == EntityKind::method || kind == EntityKind::field) {
    std::string base = type_path_of_scope(decl.scope) + "#" + name;
    if (kind == EntityKind::method) base += "(" + std::to_string(decl.facts.parameters.size()) + ")";
    int earlier = 0;
    for (std::size_t j = 0; j < index; ++j) {
      const Declaration& other = table.declarations[j];
      if (other.occurrence.kind != kind || other.scope != decl.scope || other.occurrence.name != name) continue;
      if (kind == EntityKind::method && other.facts.parameters.size() != decl.facts.parameters.size()) continue;
      ++earlier;
    }
    return IdentityKey(earlier == 0 ? base : base + "@" + std::to_string(earlier + 1));
  }

  // Parameters and locals: qualified by their enclosing method or initializer.
  std::string method_key;
  for (int s = decl.scope; s >= 0; s = table.scopes[s].parent) {
    const Scope& sc = table.scopes[s];
    if (sc.kind != ScopeKind::method) continue;
    if (sc.owner) {
      method_key = table.declarations[*sc.owner].identity.str();
    } else {
      method_key = type_path_of_scope(s) + "#" + sc.member_name + "(0)";
    }
    break;
  }
  if (method_key.empty()) method_key = type_path_of_scope(decl.scope) + "#<init>(0)";
  std::string prefix = method_key + "$" + name + "@";
  int earlier = count_earlier(prefix, [&](const Declaration& d) {
    return (d.occurrence.kind == EntityKind::parameter || d.occurrence.kind == EntityKind::local) &&
           d.occurrence.name == name;
  });
  return IdentityKey(prefix + std::to_string(earlier + 1));
}

struct CallSite {
  std::size_t occurrence = 0;  // index into ParsedUnit::occurrences
  std::optional<IdentityKey> receiver;
  std::vector<Span> arguments;
};

struct ParsedUnit {
  std::string source;
  SymbolTable table;
  std::vector<Occurrence> occurrences;  // sorted by span.start
  std::vector<CallSite> calls;

  const Declaration* declaration_of(const IdentityKey& key) const { return table.find(key); }
};

namespace detail {

inline bool is_primitive_type(std::string_view w) {
  return w == "boolean" || w == "byte" || w == "char" || w == "short" || w == "int" || w == "long" ||
         w == "float" || w == "double" || w == "void";
}

inline bool is_modifier_keyword(std::string_view w) {
  return w == "public" || w == "private" || w == "protected" || w == "static" || w == "final" ||
         w == "synchronized" || w == "abstract" || w == "native" || w == "transient" || w == "volatile" ||
         w == "strictfp" || w == "default";
}

struct TypeParse {
  std::size_t next = 0;  // significant-token index after the type
  TypeRef type;
  std::size_t first = 0;  // first significant-token index of the type
};

struct ParseOutput {
  SymbolTable table;
  std::vector<Token> tokens;
  std::vector<std::size_t> sig;    // indices of significant tokens
  std::vector<int> match;          // per sig index: matching bracket sig index or -1
  std::vector<bool> excluded;      // per sig index: not an occurrence
  std::vector<int> declaration_at; // per sig index: declaration index or -1
};

inline const Token& sig_token(const ParseOutput& out, std::size_t p) {
  static const Token kEnd{TokenKind::whitespace, Span{}, ""};
  return p < out.sig.size() ? out.tokens[out.sig[p]] : kEnd;
}

// Skips a type-argument list starting at '<'; nullopt when the tokens cannot
// form one (e.g. a less-than comparison).
inline std::optional<std::size_t> skip_type_arguments(const ParseOutput& out, std::size_t p) {
  int depth = 0;
  for (std::size_t q = p; q < out.sig.size(); ++q) {
    const Token& t = sig_token(out, q);
    if (t.is_punct("<")) {
      ++depth;
    } else if (t.is_punct(">")) {
      if (--depth == 0) return q + 1;
    } else if (t.kind == TokenKind::identifier || t.kind == TokenKind::annotation_marker || t.is_punct(".") ||
               t.is_punct(",") || t.is_punct("?") || t.is_punct("&") || t.is_punct("[") || t.is_punct("]") ||
               t.is_keyword("extends") || t.is_keyword("super") ||
               (t.kind == TokenKind::keyword && is_primitive_type(t.text))) {
      continue;
    } else {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// Next index after the expression element at p: jumps over balanced
// brackets and over generic arguments that precede a call, e.g.
// `new HashMap<K, V>()`.
inline std::size_t skip_expression_element(const ParseOutput& out, std::size_t p) {
  const Token& t = sig_token(out, p);
  if (t.is_punct("<") && p > 0 && sig_token(out, p - 1).kind == TokenKind::identifier) {
    if (auto after = skip_type_arguments(out, p); after && sig_token(out, *after).is_punct("(")) return *after;
  }
  int m = p < out.match.size() ? out.match[p] : -1;
  return m > static_cast<int>(p) ? static_cast<std::size_t>(m) + 1 : p + 1;
}

// Top-level comma-separated argument spans of the call whose '(' is at open.
inline std::vector<Span> split_arguments(const ParseOutput& out, std::size_t open) {
  std::vector<Span> args;
  int close_i = out.match[open];
  if (close_i < 0) return args;
  std::size_t close = static_cast<std::size_t>(close_i);
  auto push = [&](std::size_t from, std::size_t to) {
    if (from >= to) return;
    const Span& first = sig_token(out, from).span;
    args.push_back(Span{first.start, sig_token(out, to - 1).span.end, first.line, first.col});
  };
  std::size_t begin = open + 1;
  std::size_t q = begin;
  while (q < close) {
    if (sig_token(out, q).is_punct(",")) {
      push(begin, q);
      begin = ++q;
      continue;
    }
    q = std::min(skip_expression_element(out, q), close);
  }
  push(begin, close);
  return args;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ParserOptions& options) : options_(options) {
    out_.tokens = std::move(tokens);
    for (std::size_t i = 0; i < out_.tokens.size(); ++i)
      if (out_.tokens[i].significant()) out_.sig.push_back(i);
    out_.excluded.assign(out_.sig.size(), false);
    out_.declaration_at.assign(out_.sig.size(), -1);
  }

  ParseOutput run() {
    match_brackets();
    std::size_t size = out_.tokens.empty() ? 0 : out_.tokens.back().span.end;
    new_scope(ScopeKind::unit, -1, 0, size + 1);
    parse_unit();
    for (std::size_t i = 0; i < out_.table.declarations.size(); ++i)
      out_.table.declarations[i].identity = identity_key(out_.table, i);
    out_.table.rebuild_index();
    for (auto& d : out_.table.declarations) d.occurrence.identity = d.identity;
    return std::move(out_);
  }

 private:
  // -- token access ---------------------------------------------------------

  std::size_t n() const { return out_.sig.size(); }
  const Token& tok(std::size_t p) const {
    static const Token kEnd{TokenKind::whitespace, Span{}, ""};
    return p < n() ? out_.tokens[out_.sig[p]] : kEnd;
  }
  bool punct(std::size_t p, std::string_view t) const { return p < n() && tok(p).is_punct(t); }
  bool keyword(std::size_t p, std::string_view t) const { return p < n() && tok(p).is_keyword(t); }
  bool ident(std::size_t p) const { return p < n() && tok(p).kind == TokenKind::identifier; }
  bool ident(std::size_t p, std::string_view t) const { return ident(p) && tok(p).text == t; }
  int match_of(std::size_t p) const { return p < n() ? out_.match[p] : -1; }

  void match_brackets() {
    out_.match.assign(n(), -1);
    std::vector<std::size_t> stack;
    for (std::size_t p = 0; p < n(); ++p) {
      const Token& t = tok(p);
      if (t.kind != TokenKind::punctuation) continue;
      if (t.text == "{" || t.text == "(" || t.text == "[") {
        stack.push_back(p);
      } else if (t.text == "}") {
        while (!stack.empty() && !tok(stack.back()).is_punct("{")) stack.pop_back();
        if (stack.empty()) throw ParseError("unbalanced braces: unexpected '}'", t.span);
        out_.match[stack.back()] = static_cast<int>(p);
        out_.match[p] = static_cast<int>(stack.back());
        stack.pop_back();
      } else if (t.text == ")" || t.text == "]") {
        const char* open = t.text == ")" ? "(" : "[";
        if (!stack.empty() && tok(stack.back()).is_punct(open)) {
          out_.match[stack.back()] = static_cast<int>(p);
          out_.match[p] = static_cast<int>(stack.back());
          stack.pop_back();
        }
      }
    }
    for (std::size_t p : stack)
      if (tok(p).is_punct("{")) throw ParseError("unbalanced braces: unclosed '{'", tok(p).span);
  }

  // Skips past a balanced bracket at p; otherwise returns p + 1.
  std::size_t skip_balanced(std::size_t p) const {
    int m = match_of(p);
    if (m > static_cast<int>(p)) return static_cast<std::size_t>(m) + 1;
    return p + 1;
  }

  std::string joined_text(std::size_t from, std::size_t to, const char* sep) const {
    std::string s;
    for (std::size_t p = from; p < to && p < n(); ++p) {
      if (p > from) s += sep;
      s += tok(p).text;
    }
    return s;
  }

  // -- scopes and declarations ---------------------------------------------

  int new_scope(ScopeKind kind, int parent, std::size_t begin, std::size_t end) {
    auto& scopes = out_.table.scopes;
    Scope s;
    s.kind = kind;
    s.parent = parent;
    s.begin = begin;
    s.end = end;
    scopes.push_back(std::move(s));
    int id = static_cast<int>(scopes.size()) - 1;
    if (parent >= 0) scopes[parent].children.push_back(id);
    return id;
  }

  std::size_t declare(std::size_t name_p, EntityKind kind, int scope, ContextFacts facts) {
    auto& decls = out_.table.declarations;
    Declaration d;
    d.occurrence.span = tok(name_p).span;
    d.occurrence.role = Role::declaration;
    d.occurrence.kind = kind;
    d.occurrence.name = tok(name_p).text;
    d.facts = std::move(facts);
    d.scope = scope;
    decls.push_back(std::move(d));
    std::size_t index = decls.size() - 1;
    out_.table.scopes[scope].declarations.push_back(index);
    out_.declaration_at[name_p] = static_cast<int>(index);
    return index;
  }

  bool is_container(const TypeRef& t) const {
    if (t.text.find("[]") != std::string::npos || t.text.find("...") != std::string::npos) return true;
    std::string base = t.base_name();
    return std::find(options_.collection_types.begin(), options_.collection_types.end(), base) !=
           options_.collection_types.end();
  }

  // -- types, modifiers, annotations ---------------------------------------

  std::optional<std::size_t> skip_type_arguments(std::size_t p) const { return detail::skip_type_arguments(out_, p); }

  std::size_t skip_annotation_tokens(std::size_t p) const {
    // p at '@'
    std::size_t q = p + 1;
    if (!ident(q)) return p + 1;
    ++q;
    while (punct(q, ".") && ident(q + 1)) q += 2;
    if (punct(q, "(")) q = skip_balanced(q);
    return q;
  }

  std::optional<TypeParse> parse_type(std::size_t p) const {
    TypeParse r;
    r.first = p;
    std::size_t q = p;
    while (q < n() && tok(q).kind == TokenKind::annotation_marker && ident(q + 1)) q = skip_annotation_tokens(q);
    std::size_t type_start = q;
    if (q < n() && tok(q).kind == TokenKind::keyword && is_primitive_type(tok(q).text)) {
      ++q;
    } else if (ident(q)) {
      ++q;
      while (true) {
        if (punct(q, "<")) {
          auto after = skip_type_arguments(q);
          if (!after) return std::nullopt;
          q = *after;
        }
        if (punct(q, ".") && ident(q + 1)) {
          q += 2;
          continue;
        }
        break;
      }
    } else {
      return std::nullopt;
    }
    while (punct(q, "[") && punct(q + 1, "]")) q += 2;
    r.next = q;
    r.type.text = joined_text(type_start, q, "");
    r.type.container = is_container(r.type);
    return r;
  }

  std::size_t parse_modifiers(std::size_t p, std::size_t end, ContextFacts& facts) {
    while (p < end) {
      const Token& t = tok(p);
      if (t.kind == TokenKind::keyword && is_modifier_keyword(t.text) && !punct(p + 1, ":") && !punct(p + 1, "->")) {
        if (auto m = modifier_from_string(t.text)) facts.modifiers.insert(*m);
        ++p;
      } else if (t.kind == TokenKind::annotation_marker && ident(p + 1)) {
        Annotation a;
        std::size_t q = p + 1;
        std::size_t name_start = q;
        ++q;
        while (punct(q, ".") && ident(q + 1)) q += 2;
        a.name = joined_text(name_start, q, "");
        if (punct(q, "(")) {
          int m = match_of(q);
          if (m > static_cast<int>(q)) {
            std::size_t from = tok(q).span.end;
            std::size_t to = tok(static_cast<std::size_t>(m)).span.start;
            a.arguments = trim(source_slice(from, to));
            q = static_cast<std::size_t>(m) + 1;
          } else {
            ++q;
          }
        }
        facts.annotations.push_back(std::move(a));
        p = q;
      } else if (ident(p, "sealed") && (keyword(p + 1, "class") || keyword(p + 1, "interface") ||
                                         (p + 1 < n() && tok(p + 1).kind == TokenKind::keyword &&
                                          is_modifier_keyword(tok(p + 1).text)))) {
        out_.excluded[p] = true;
        ++p;
      } else if (ident(p, "non") && punct(p + 1, "-") && ident(p + 2, "sealed")) {
        out_.excluded[p] = out_.excluded[p + 2] = true;
        p += 3;
      } else {
        break;
      }
    }
    return p;
  }

  std::string source_slice(std::size_t from, std::size_t to) const {
    std::string s;
    for (const Token& t : out_.tokens) {
      if (t.span.end <= from) continue;
      if (t.span.start >= to) break;
      std::size_t a = std::max(from, t.span.start) - t.span.start;
      std::size_t b = std::min(to, t.span.end) - t.span.start;
      s += t.text.substr(a, b - a);
    }
    return s;
  }

  static std::string trim(std::string s) {
    auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (!s.empty() && ws(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && ws(s[i])) ++i;
    return s.substr(i);
  }

  // -- compilation unit -----------------------------------------------------

  void parse_unit() {
    std::size_t p = 0;
    while (p < n()) {
      if (punct(p, ";")) {
        ++p;
      } else if (keyword(p, "package") || keyword(p, "import")) {
        bool is_package = keyword(p, "package");
        std::size_t q = p + 1;
        while (q < n() && !punct(q, ";")) {
          out_.excluded[q] = true;
          ++q;
        }
        if (is_package) {
          std::string name;
          for (std::size_t k = p + 1; k < q; ++k)
            if (tok(k).kind != TokenKind::annotation_marker) name += tok(k).text;
          out_.table.package_name = name;
        }
        p = q + 1;
      } else {
        ContextFacts facts;
        std::size_t q = parse_modifiers(p, n(), facts);
        if (starts_type_declaration(q)) {
          p = parse_type_declaration(q, n(), 0, std::move(facts));
        } else {
          p = tolerant_skip(std::max(p, q), n());
        }
      }
    }
  }

  bool starts_type_declaration(std::size_t p) const {
    if (keyword(p, "class") || keyword(p, "interface") || keyword(p, "enum")) return ident(p + 1);
    if (p < n() && tok(p).kind == TokenKind::annotation_marker && keyword(p + 1, "interface")) return ident(p + 2);
    if (ident(p, "record") && ident(p + 1)) return punct(p + 2, "(") || punct(p + 2, "<");
    return false;
  }

  std::size_t tolerant_skip(std::size_t p, std::size_t end) const {
    while (p < end) {
      if (punct(p, ";")) return p + 1;
      if (punct(p, "{")) return skip_balanced(p);
      if (punct(p, "}")) return p + 1;
      p = skip_balanced(p);
    }
    return end;
  }

  // p at class/interface/enum/@/record. Returns the index after the body.
  std::size_t parse_type_declaration(std::size_t p, std::size_t end, int scope, ContextFacts facts) {
    EntityKind kind = EntityKind::class_;
    bool is_record = false;
    if (tok(p).kind == TokenKind::annotation_marker) {
      kind = EntityKind::interface_;
      p += 2;
    } else if (keyword(p, "interface")) {
      kind = EntityKind::interface_;
      ++p;
    } else if (keyword(p, "enum")) {
      kind = EntityKind::enum_;
      ++p;
    } else if (ident(p, "record")) {
      out_.excluded[p] = true;
      is_record = true;
      ++p;
    } else {
      ++p;
    }
    std::size_t name_p = p;
    const std::string type_name = tok(name_p).text;
    std::size_t q = p + 1;
    if (punct(q, "<")) {
      auto after = skip_type_arguments(q);
      q = after ? *after : q + 1;
    }
    std::size_t record_open = 0;
    if (is_record && punct(q, "(")) {
      record_open = q;
      q = skip_balanced(q);
    }
    while (q < end && !punct(q, "{") && !punct(q, ";")) {
      if (keyword(q, "extends") || keyword(q, "implements")) {
        ++q;
        while (q < end) {
          auto t = parse_type(q);
          if (!t) break;
          facts.supertypes.push_back(t->type.base_name());
          q = t->next;
          if (punct(q, ",")) ++q;
          else break;
        }
      } else if (ident(q, "permits")) {
        out_.excluded[q] = true;
        ++q;
      } else {
        ++q;
      }
    }
    std::size_t decl_index = declare(name_p, kind, scope, std::move(facts));
    if (!punct(q, "{")) return q + 1;
    int body_end = match_of(q);
    std::size_t scope_begin = tok(name_p + 1).span.start;
    int type_scope = new_scope(ScopeKind::type, scope, scope_begin, tok(static_cast<std::size_t>(body_end)).span.end);
    out_.table.scopes[type_scope].owner = decl_index;
    out_.table.declarations[decl_index].body_scope = type_scope;
    if (record_open) {
      for (auto& param : parse_parameters(record_open)) {
        param.facts.modifiers.insert(Modifier::private_);
        param.facts.modifiers.insert(Modifier::final_);
        declare(param.name_p, EntityKind::field, type_scope, std::move(param.facts));
      }
    }
    std::size_t body = q + 1;
    std::size_t stop = static_cast<std::size_t>(body_end);
    if (kind == EntityKind::enum_) body = parse_enum_constants(body, stop, type_scope);
    while (body < stop) body = parse_member(body, stop, type_scope, type_name);
    return stop + 1;
  }

  std::size_t parse_enum_constants(std::size_t p, std::size_t end, int type_scope) {
    while (p < end) {
      ContextFacts facts;
      std::size_t q = parse_modifiers(p, end, facts);
      if (!ident(q)) break;
      facts.modifiers.insert(Modifier::public_);
      facts.modifiers.insert(Modifier::static_);
      facts.modifiers.insert(Modifier::final_);
      declare(q, EntityKind::field, type_scope, std::move(facts));
      ++q;
      if (punct(q, "(")) q = skip_balanced(q);
      if (punct(q, "{")) q = skip_balanced(q);
      p = q;
      if (punct(p, ",")) {
        ++p;
        continue;
      }
      break;
    }
    if (punct(p, ";")) ++p;
    return p;
  }

  struct ParamInfo {
    std::size_t name_p = 0;
    ContextFacts facts;
  };

  // Parameters between the parenthesis at open and its match.
  std::vector<ParamInfo> parse_parameters(std::size_t open) {
    std::vector<ParamInfo> params;
    int close_i = match_of(open);
    if (close_i < 0) return params;
    std::size_t close = static_cast<std::size_t>(close_i);
    std::size_t q = open + 1;
    while (q < close) {
      ParamInfo info;
      q = parse_modifiers(q, close, info.facts);
      auto t = parse_type(q);
      if (!t) break;
      if (t->type.text == "var") out_.excluded[t->first] = true;
      info.facts.declared_type = t->type;
      q = t->next;
      if (punct(q, "...")) {
        info.facts.declared_type.text += "...";
        info.facts.declared_type.container = true;
        ++q;
      }
      if (keyword(q, "this")) {
        q = next_top_level_comma(q, close);
        continue;
      }
      if (!ident(q)) break;
      info.name_p = q++;
      while (punct(q, "[") && punct(q + 1, "]")) {
        info.facts.declared_type.text += "[]";
        info.facts.declared_type.container = true;
        q += 2;
      }
      params.push_back(std::move(info));
      if (punct(q, ",")) ++q;
      else break;
    }
    return params;
  }

  std::size_t next_top_level_comma(std::size_t p, std::size_t end) const {
    while (p < end) {
      if (punct(p, ",")) return p + 1;
      p = skip_balanced(p);
    }
    return end;
  }

  // -- members ---------------------------------------------------------------

  std::size_t parse_member(std::size_t p, std::size_t end, int type_scope, const std::string& type_name) {
    ContextFacts facts;
    std::size_t q = parse_modifiers(p, end, facts);
    if (q >= end) return end;
    if (punct(q, ";")) return q + 1;
    if (punct(q, "{")) {
      int close = match_of(q);
      int init = new_scope(ScopeKind::method, type_scope, tok(q).span.start, tok(static_cast<std::size_t>(close)).span.end);
      out_.table.scopes[init].member_name = facts.has(Modifier::static_) ? "<clinit>" : "<init>";
      parse_statements(q + 1, static_cast<std::size_t>(close), init);
      return static_cast<std::size_t>(close) + 1;
    }
    if (starts_type_declaration(q)) return parse_type_declaration(q, end, type_scope, std::move(facts));
    if (punct(q, "<")) {
      auto after = skip_type_arguments(q);
      if (!after) return tolerant_skip(q, end);
      q = *after;
    }
    // Constructor.
    if (ident(q, type_name) && punct(q + 1, "(")) return parse_method(q, end, type_scope, std::move(facts), std::nullopt);
    auto type = parse_type(q);
    if (!type || !ident(type->next)) return tolerant_skip(q, end);
    std::size_t name_p = type->next;
    if (punct(name_p + 1, "(")) return parse_method(name_p, end, type_scope, std::move(facts), type->type.text);
    return parse_declarators(name_p, end, type_scope, EntityKind::field, facts, type->type, false);
  }

  std::size_t parse_method(std::size_t name_p, std::size_t end, int type_scope, ContextFacts facts,
                           std::optional<std::string> return_type) {
    std::size_t open = name_p + 1;
    int close_i = match_of(open);
    if (close_i < 0) return tolerant_skip(open, end);
    std::size_t close = static_cast<std::size_t>(close_i);
    auto params = parse_parameters(open);
    for (const auto& prm : params) facts.parameters.push_back(tok(prm.name_p).text);
    facts.return_type = return_type;
    std::size_t q = close + 1;
    while (punct(q, "[") && punct(q + 1, "]")) q += 2;
    // throws list, default values: everything up to the body or ';'
    while (q < end && !punct(q, "{") && !punct(q, ";")) q = skip_balanced(q);
    std::size_t method_index = declare(name_p, EntityKind::method, type_scope, std::move(facts));
    std::size_t scope_end = q < end ? tok(punct(q, "{") ? static_cast<std::size_t>(match_of(q)) : q).span.end
                                    : tok(close).span.end;
    int method_scope = new_scope(ScopeKind::method, type_scope, tok(open).span.start, scope_end);
    out_.table.scopes[method_scope].owner = method_index;
    out_.table.declarations[method_index].body_scope = method_scope;
    for (auto& prm : params) declare(prm.name_p, EntityKind::parameter, method_scope, std::move(prm.facts));
    if (q >= end) return end;
    if (punct(q, ";")) return q + 1;
    std::size_t body_close = static_cast<std::size_t>(match_of(q));
    parse_statements(q + 1, body_close, method_scope);
    return body_close + 1;
  }

  // Declarators `name [dims] [= init] {, name ...}` starting at name_p. Stops
  // after ';' or at ':' (enhanced for) or at end.
  std::size_t parse_declarators(std::size_t name_p, std::size_t end, int scope, EntityKind kind,
                                const ContextFacts& common, const TypeRef& type, bool loop_header) {
    std::size_t q = name_p;
    while (q < end && ident(q)) {
      ContextFacts facts = common;
      facts.declared_type = type;
      facts.loop_header = loop_header;
      std::size_t name = q++;
      while (punct(q, "[") && punct(q + 1, "]")) {
        facts.declared_type.text += "[]";
        facts.declared_type.container = true;
        q += 2;
      }
      if (punct(q, "=")) {
        std::size_t init = q + 1;
        q = init;
        while (q < end && !punct(q, ",") && !punct(q, ";")) q = skip_expression_element(out_, q);
        facts.initializer = joined_text(init, std::min(q, end), " ");
      }
      declare(name, kind, scope, std::move(facts));
      if (punct(q, ",")) {
        ++q;
        continue;
      }
      break;
    }
    if (punct(q, ";")) return q + 1;
    if (q < end && !punct(q, ":") && !punct(q, ")")) return tolerant_skip(q, end);
    return q;
  }

  // -- statements ------------------------------------------------------------

  void parse_statements(std::size_t p, std::size_t end, int scope) {
    while (p < end) p = parse_statement(p, end, scope);
  }

  std::size_t close_of(std::size_t open, std::size_t end) const {
    int m = match_of(open);
    return m > static_cast<int>(open) && static_cast<std::size_t>(m) < end ? static_cast<std::size_t>(m) : end;
  }

  std::size_t skip_to_semicolon(std::size_t p, std::size_t end) const {
    while (p < end) {
      if (punct(p, ";")) return p + 1;
      if (punct(p, "}")) return p + 1;
      p = skip_balanced(p);
    }
    return end;
  }

  std::size_t span_end_before(std::size_t p) const { return p > 0 ? tok(p - 1).span.end : 0; }

  std::size_t parse_statement(std::size_t p, std::size_t end, int scope) {
    const Token& t = tok(p);
    if (t.is_punct("{")) {
      std::size_t close = close_of(p, end);
      int block = new_scope(ScopeKind::block, scope, t.span.start, close < end ? tok(close).span.end : span_end_before(end));
      parse_statements(p + 1, close, block);
      return std::min(close + 1, end);
    }
    if (t.is_punct(";")) return p + 1;
    if (t.kind == TokenKind::keyword) {
      const std::string& w = t.text;
      if (w == "for" && punct(p + 1, "(")) {
        std::size_t close = close_of(p + 1, end);
        int for_scope = new_scope(ScopeKind::block, scope, t.span.start, t.span.end);
        std::size_t h = p + 2;
        if (auto decl = try_local_declaration(h, close, for_scope, true)) (void)decl;
        std::size_t after = parse_statement_or_end(close + 1, end, for_scope);
        out_.table.scopes[for_scope].end = span_end_before(after);
        return after;
      }
      if ((w == "if" || w == "while" || w == "switch" || w == "synchronized") && punct(p + 1, "(")) {
        std::size_t close = close_of(p + 1, end);
        std::size_t after = parse_statement_or_end(close + 1, end, scope);
        if (w == "if" && keyword(after, "else")) after = parse_statement_or_end(after + 1, end, scope);
        return after;
      }
      if (w == "do") {
        std::size_t after = parse_statement_or_end(p + 1, end, scope);
        return skip_to_semicolon(after, end);
      }
      if (w == "try") return parse_try(p, end, scope);
      if (w == "else" || w == "finally") return p + 1;
      if (w == "case" || w == "default") {
        std::size_t q = p + 1;
        while (q < end && !punct(q, ":") && !punct(q, "->")) q = skip_balanced(q);
        return std::min(q + 1, end);
      }
      if (w == "class" || w == "interface" || w == "enum") {
        std::size_t q = p + 1;
        while (q < end && !punct(q, "{")) ++q;
        return q < end ? std::min(skip_balanced(q), end) : end;
      }
      if (w == "final" || is_primitive_type(w)) {
        if (auto after = try_local_declaration(p, end, scope, false)) return *after;
      }
      return skip_to_semicolon(p, end);
    }
    if (t.kind == TokenKind::annotation_marker) {
      if (auto after = try_local_declaration(p, end, scope, false)) return *after;
      return skip_to_semicolon(p, end);
    }
    if (t.kind == TokenKind::identifier) {
      if (punct(p + 1, ":")) return parse_statement_or_end(p + 2, end, scope);
      if (t.text == "yield" && !punct(p + 1, "=") && !punct(p + 1, "(") && !punct(p + 1, ".")) {
        out_.excluded[p] = true;
        return skip_to_semicolon(p + 1, end);
      }
      if (ident(p, "record") && ident(p + 1) && (punct(p + 2, "(") || punct(p + 2, "<"))) {
        out_.excluded[p] = true;
        std::size_t q = p + 1;
        while (q < end && !punct(q, "{")) q = skip_balanced(q);
        return q < end ? std::min(skip_balanced(q), end) : end;
      }
      if (auto after = try_local_declaration(p, end, scope, false)) return *after;
    }
    return skip_to_semicolon(p, end);
  }

  std::size_t parse_statement_or_end(std::size_t p, std::size_t end, int scope) {
    return p < end ? parse_statement(p, end, scope) : end;
  }

  std::size_t parse_try(std::size_t p, std::size_t end, int scope) {
    std::size_t q = p + 1;
    int body_scope = scope;
    int resource_scope = -1;
    if (punct(q, "(")) {
      std::size_t close = close_of(q, end);
      resource_scope = new_scope(ScopeKind::block, scope, tok(p).span.start, tok(p).span.end);
      std::size_t r = q + 1;
      while (r < close) {
        auto after = try_local_declaration(r, close, resource_scope, false);
        r = after ? *after : skip_to_semicolon(r, close);
        if (r < close && punct(r, ";")) ++r;
      }
      body_scope = resource_scope;
      q = close + 1;
    }
    if (punct(q, "{")) q = parse_statement(q, end, body_scope);
    if (resource_scope >= 0) out_.table.scopes[resource_scope].end = span_end_before(q);
    while (keyword(q, "catch") && punct(q + 1, "(")) {
      std::size_t open = q + 1;
      std::size_t close = close_of(open, end);
      int catch_scope = new_scope(ScopeKind::block, scope, tok(q).span.start, tok(q).span.end);
      ContextFacts facts;
      std::size_t r = parse_modifiers(open + 1, close, facts);
      std::optional<TypeRef> type;
      while (r < close) {
        auto t = parse_type(r);
        if (!t) break;
        if (!type) type = t->type;
        else type->text += "|" + t->type.text;
        r = t->next;
        if (punct(r, "|")) ++r;
        else break;
      }
      if (type && ident(r) && r < close) {
        facts.declared_type = *type;
        declare(r, EntityKind::parameter, catch_scope, std::move(facts));
      }
      q = close + 1;
      if (punct(q, "{")) q = parse_statement(q, end, catch_scope);
      out_.table.scopes[catch_scope].end = span_end_before(q);
    }
    if (keyword(q, "finally")) {
      ++q;
      if (punct(q, "{")) q = parse_statement(q, end, scope);
    }
    return std::max(q, p + 1);
  }

  // Local variable declaration at p, bounded by end. Returns the index after
  // the declaration, or nullopt when p does not start one.
  std::optional<std::size_t> try_local_declaration(std::size_t p, std::size_t end, int scope, bool loop_header) {
    ContextFacts facts;
    std::size_t q = parse_modifiers(p, end, facts);
    auto type = parse_type(q);
    if (!type || type->next >= end || !ident(type->next)) return std::nullopt;
    std::size_t name = type->next;
    std::size_t after = name + 1;
    while (punct(after, "[") && punct(after + 1, "]")) after += 2;
    if (!(punct(after, "=") || punct(after, ";") || punct(after, ",") || (loop_header && punct(after, ":")) ||
          (after >= end)))
      return std::nullopt;
    if (type->type.text == "var") out_.excluded[type->first] = true;
    return parse_declarators(name, end, scope, EntityKind::local, facts, type->type, loop_header);
  }

  const ParserOptions& options_;
  ParseOutput out_;
};

// Resolves every identifier token to an identity.
class Resolver {
 public:
  explicit Resolver(ParseOutput& parsed) : p_(parsed), table_(parsed.table) {
    resolved_.assign(p_.sig.size(), std::nullopt);
  }

  void run(ParsedUnit& unit) {
    for (std::size_t s = 0; s < p_.sig.size(); ++s) {
      const Token& t = tok(s);
      if (t.kind != TokenKind::identifier || p_.excluded[s]) continue;
      if (p_.declaration_at[s] >= 0) {
        const Declaration& d = table_.declarations[static_cast<std::size_t>(p_.declaration_at[s])];
        resolved_[s] = Ref{d.identity, static_cast<std::size_t>(p_.declaration_at[s])};
        unit.occurrences.push_back(d.occurrence);
        continue;
      }
      resolve_usage(s, unit);
    }
  }

 private:
  struct Ref {
    IdentityKey identity;
    std::optional<std::size_t> decl;
  };

  const Token& tok(std::size_t s) const {
    static const Token kEnd{TokenKind::whitespace, Span{}, ""};
    return s < p_.sig.size() ? p_.tokens[p_.sig[s]] : kEnd;
  }
  bool punct(std::size_t s, std::string_view t) const { return s < p_.sig.size() && tok(s).is_punct(t); }

  const Declaration& decl(std::size_t i) const { return table_.declarations[i]; }

  std::vector<Span> arguments(std::size_t open) const { return split_arguments(p_, open); }

  std::optional<std::size_t> find_member(int type_scope, const std::string& name, bool call, int arity,
                                         bool method_ref) const {
    const Scope& sc = table_.scopes[static_cast<std::size_t>(type_scope)];
    if (call) {
      for (std::size_t i : sc.declarations)
        if (decl(i).occurrence.kind == EntityKind::method && decl(i).occurrence.name == name &&
            static_cast<int>(decl(i).facts.parameters.size()) == arity)
          return i;
      return std::nullopt;
    }
    for (std::size_t i : sc.declarations)
      if (decl(i).occurrence.kind == EntityKind::field && decl(i).occurrence.name == name) return i;
    for (std::size_t i : sc.declarations)
      if (is_type_kind(decl(i).occurrence.kind) && decl(i).occurrence.name == name) return i;
    if (method_ref)
      for (std::size_t i : sc.declarations)
        if (decl(i).occurrence.kind == EntityKind::method && decl(i).occurrence.name == name) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> find_type_by_name(const std::string& name) const {
    for (std::size_t i = 0; i < table_.declarations.size(); ++i)
      if (is_type_kind(decl(i).occurrence.kind) && decl(i).occurrence.name == name) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> lookup_unqualified(int scope, std::size_t offset, const std::string& name, bool call,
                                                int arity, bool types_only) const {
    for (int s = scope; s >= 0; s = table_.scopes[static_cast<std::size_t>(s)].parent) {
      const Scope& sc = table_.scopes[static_cast<std::size_t>(s)];
      if (call) {
        if (sc.kind != ScopeKind::type) continue;
        if (auto m = find_member(s, name, true, arity, false)) return m;
        continue;
      }
      std::optional<std::size_t> variable, type;
      for (std::size_t i : sc.declarations) {
        const Declaration& d = decl(i);
        if (d.occurrence.name != name) continue;
        if (!types_only && is_variable_kind(d.occurrence.kind)) {
          if (d.occurrence.kind == EntityKind::local && d.occurrence.span.start >= offset) continue;
          variable = i;  // last visible one wins
        } else if (is_type_kind(d.occurrence.kind) && !type) {
          type = i;
        }
      }
      if (variable) return variable;
      if (type) return type;
    }
    return std::nullopt;
  }

  EntityKind external_kind(const std::string& name, bool call, bool after_new, bool annotation) const {
    if (annotation) return EntityKind::interface_;
    if (call && !after_new) return EntityKind::method;
    if (after_new) return EntityKind::class_;
    bool upper = name[0] >= 'A' && name[0] <= 'Z';
    bool has_lower = std::any_of(name.begin(), name.end(), [](char c) { return c >= 'a' && c <= 'z'; });
    return upper && (has_lower || name.size() == 1) ? EntityKind::class_ : EntityKind::field;
  }

  void resolve_usage(std::size_t s, ParsedUnit& unit) {
    const Token& t = tok(s);
    const std::string& name = t.text;
    const bool annotation = s > 0 && tok(s - 1).kind == TokenKind::annotation_marker;
    const bool call = punct(s + 1, "(") && !annotation;
    const bool after_new = s > 0 && (tok(s - 1).is_keyword("new") || annotation);
    const int arity = call ? static_cast<int>(arguments(s + 1).size()) : 0;
    const bool member = s > 0 && (punct(s - 1, ".") || punct(s - 1, "::"));
    const bool method_ref = s > 0 && punct(s - 1, "::");
    const int scope = table_.innermost_scope_at(t.span.start);

    std::optional<std::size_t> found;
    std::optional<IdentityKey> receiver_identity;
    std::string external;
    if (member) {
      std::size_t r = s - 2;
      const Token& rt = tok(r);
      int receiver_type_scope = -1;
      std::string receiver_prefix;
      if (s >= 2 && rt.kind == TokenKind::identifier && resolved_[r]) {
        const Ref& ref = *resolved_[r];
        receiver_identity = ref.identity;
        if (ref.decl) {
          const Declaration& rd = decl(*ref.decl);
          if (is_type_kind(rd.occurrence.kind)) {
            receiver_type_scope = rd.body_scope;
            receiver_prefix = rd.occurrence.name;
          } else if (is_variable_kind(rd.occurrence.kind)) {
            std::string base = rd.facts.declared_type.base_name();
            if (auto ti = find_type_by_name(base)) receiver_type_scope = decl(*ti).body_scope;
            if (base != "var" && is_identifier_text(base)) receiver_prefix = base;
          }
        } else if (rt.kind == TokenKind::identifier) {
          receiver_prefix = ref.identity.str().substr(4);
        }
      } else if (s >= 2 && rt.is_keyword("this")) {
        receiver_type_scope = table_.enclosing_type_scope(scope);
        if (receiver_type_scope >= 0 && table_.scopes[receiver_type_scope].owner)
          receiver_prefix = decl(*table_.scopes[receiver_type_scope].owner).occurrence.name;
      }
      if (receiver_type_scope >= 0) found = find_member(receiver_type_scope, name, call, arity, method_ref);
      if (!found) external = receiver_prefix.empty() ? name : receiver_prefix + "." + name;
    } else {
      found = lookup_unqualified(scope, t.span.start, name, call && !after_new, arity, after_new);
      if (!found) external = name;
    }

    Occurrence occ;
    occ.span = t.span;
    occ.role = Role::usage;
    occ.name = name;
    if (found) {
      occ.identity = decl(*found).identity;
      occ.kind = decl(*found).occurrence.kind;
      resolved_[s] = Ref{occ.identity, *found};
    } else {
      occ.identity = IdentityKey::external(external);
      occ.kind = external_kind(name, call, after_new, annotation);
      resolved_[s] = Ref{occ.identity, std::nullopt};
    }
    unit.occurrences.push_back(occ);
    if (call && !after_new) {
      CallSite site;
      site.occurrence = unit.occurrences.size() - 1;
      site.receiver = receiver_identity;
      site.arguments = arguments(s + 1);
      unit.calls.push_back(std::move(site));
    }
  }

  ParseOutput& p_;
  const SymbolTable& table_;
  std::vector<std::optional<Ref>> resolved_;
};

inline ParseOutput parse_tokens(std::vector<Token> tokens, const ParserOptions& options) {
  return Parser(std::move(tokens), options).run();
}

}  // namespace detail

// Builds the symbol table for a token stream produced by tokenize().
inline SymbolTable parse_declarations(std::vector<Token> tokens, const ParserOptions& options = {}) {
  return detail::parse_tokens(std::move(tokens), options).table;
}

// Tokenizes, parses and resolves one source file.
inline ParsedUnit extract_occurrences(std::string_view source, const ParserOptions& options = {}) {
  detail::ParseOutput parsed = detail::parse_tokens(tokenize(source), options);
  ParsedUnit unit;
  unit.source = std::string(source);
  detail::Resolver(parsed).run(unit);
  unit.table = std::move(parsed.table);
  unit.table.rebuild_index();
  return unit;
}

}  // namespace impid

#endif  // IMPID_PARSER_HPP
