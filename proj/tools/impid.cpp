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

// impid command line: render, alias, scan, serve.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "impid/impid.hpp"
#include "impid/service.hpp"

namespace fs = std::filesystem;
using namespace impid;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConflict = 3;

struct UsageError : Error {
  using Error::Error;
};

Timestamp parse_now(const std::string& text) {
  if (text.empty()) return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  auto t = parse_timestamp(text);
  if (!t) throw UsageError("--now expects an ISO-8601 UTC timestamp, got '" + text + "'");
  return *t;
}

std::chrono::seconds parse_window(const std::string& text) {
  auto w = parse_duration(text);
  if (!w || w->count() <= 0) throw UsageError("--window expects a positive duration such as 14d");
  return *w;
}

Profile profile_or_default(const std::string& path) {
  if (path.empty()) return Profile{};
  return load_profile(read_file(path));
}

void print_warnings(const std::vector<std::string>& warnings, const std::string& origin) {
  for (const auto& w : warnings) std::cerr << "impid: warning: " << origin << ": " << w << "\n";
}

struct RenderArgs {
  std::string file;
  std::string format = "ansi";
  std::string profile;
  std::string facts;
  int slider = -1;
  std::vector<std::string> categories;
  std::string now;
  std::string window = "14d";
};

int cmd_render(const RenderArgs& a) {
  auto format = format_from_string(a.format);
  if (!format) throw UsageError("--format must be ansi, html or json");
  ViewOptions view;
  if (a.slider >= 0) view.slider = a.slider;
  for (const auto& c : a.categories) {
    auto eq = c.find('=');
    std::string value = eq == std::string::npos ? "" : c.substr(eq + 1);
    if (eq == std::string::npos || eq == 0 || (value != "on" && value != "off"))
      throw UsageError("--category expects NAME=on|off, got '" + c + "'");
    view.categories[c.substr(0, eq)] = value == "on";
  }
  const Timestamp now = parse_now(a.now);
  const Profile profile = view.apply(profile_or_default(a.profile));
  FactsInput facts;
  facts.recency = {parse_window(a.window), now};
  if (!a.facts.empty()) {
    std::vector<std::string> diagnostics;
    facts.records = load_facts_file(a.facts, now, &diagnostics);
    print_warnings(diagnostics, a.facts);
  }
  const std::string source = read_file(a.file);
  ParsedUnit unit = extract_occurrences(source);
  std::vector<std::string> warnings;
  std::string out = render_unit(unit, a.file, profile, facts, *format, &warnings);
  print_warnings(warnings, a.file);
  std::fwrite(out.data(), 1, out.size(), stdout);
  return 0;
}

struct AliasArgs {
  std::string identity;
  std::string display;
  std::string profile;
  bool create = false;
  std::vector<std::string> files;
  std::string root;
};

std::vector<ParsedUnit> units_for(const AliasArgs& a) {
  std::vector<ParsedUnit> units;
  std::vector<std::string> paths = a.files;
  if (!a.root.empty()) {
    std::vector<std::string> warnings;
    for (const auto& rel : list_java_files(a.root, &warnings)) paths.push_back((fs::path(a.root) / rel).string());
    print_warnings(warnings, a.root);
  }
  for (const auto& p : paths) {
    try {
      units.push_back(extract_occurrences(read_file(p)));
    } catch (const LocatedError& e) {
      std::cerr << "impid: warning: " << p << ": " << e.what() << " (not checked)\n";
    }
  }
  return units;
}

Profile load_for_alias(const AliasArgs& a, bool must_exist) {
  if (a.profile.empty()) throw UsageError("--profile is required");
  if (!fs::exists(a.profile)) {
    if (must_exist && !a.create) throw FileNotFound("profile not found: " + a.profile + " (use --create)");
    return Profile{};
  }
  return load_profile(read_file(a.profile));
}

int cmd_alias_set(const AliasArgs& a) {
  IdentityKey identity(a.identity);
  if (!identity.valid()) throw InvalidAlias("invalid identity '" + a.identity + "'");
  Profile profile = load_for_alias(a, true);
  auto units = units_for(a);
  std::vector<const ParsedUnit*> ptrs;
  for (const auto& u : units) ptrs.push_back(&u);
  profile = set_alias(profile, identity, a.display, ptrs);
  write_file_atomic(a.profile, save_profile(profile));
  return 0;
}

int cmd_alias_rm(const AliasArgs& a) {
  IdentityKey identity(a.identity);
  if (!identity.valid()) throw InvalidAlias("invalid identity '" + a.identity + "'");
  if (a.profile.empty()) throw UsageError("--profile is required");
  if (!fs::exists(a.profile)) return 0;
  Profile profile = load_profile(read_file(a.profile));
  if (!profile.aliases.count(identity)) return 0;
  write_file_atomic(a.profile, save_profile(remove_alias(profile, identity)));
  return 0;
}

int cmd_alias_list(const AliasArgs& a) {
  Profile profile = load_for_alias(a, false);
  for (const auto& [identity, display] : profile.aliases) std::cout << identity.str() << " -> " << display << "\n";
  return 0;
}

int cmd_scan(const std::string& dir) {
  if (!fs::is_directory(dir)) throw FileNotFound("directory not found: " + dir);
  std::vector<std::string> warnings;
  std::set<std::string> identities;
  for (const auto& rel : list_java_files(dir, &warnings)) {
    const fs::path path = fs::path(dir) / rel;
    try {
      ParsedUnit unit = extract_occurrences(read_file(path));
      for (const auto& d : unit.table.declarations) identities.insert(d.identity.str());
    } catch (const Error& e) {
      warnings.push_back(rel + ": " + e.what());
    }
  }
  print_warnings(warnings, dir);
  for (const auto& id : identities) std::cout << id << "\n";
  return 0;
}

struct ServeArgs {
  std::string root;
  int port = 0;
  std::string profile;
  std::string facts;
  std::string now;
  std::string window = "14d";
  std::string host = "127.0.0.1";
};

int cmd_serve(const ServeArgs& a) {
  ServiceConfig config;
  config.root = a.root;
  if (!a.profile.empty()) config.profile_path = a.profile;
  if (!a.facts.empty()) config.facts_path = a.facts;
  config.now = parse_now(a.now);
  config.window = parse_window(a.window);
  ServiceState state(config);
  print_warnings(state.diagnostics(), a.facts);
  httplib::Server server;
  install_routes(server, state);
  if (!server.bind_to_port(a.host, a.port)) {
    std::cerr << "impid: cannot listen on " << a.host << ":" << a.port << "\n";
    return kExitFailure;
  }
  std::cerr << "impid: serving " << a.root << " on http://" << a.host << ":" << a.port << "\n";
  return server.listen_after_bind() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"impid - impermanent identifiers for Java sources"};
  app.require_subcommand(1);

  RenderArgs render;
  auto* r = app.add_subcommand("render", "Render a file with its decorations");
  r->add_option("FILE", render.file, "Java source file")->required();
  r->add_option("--format", render.format, "ansi, html or json")->check(CLI::IsMember({"ansi", "html", "json"}));
  r->add_option("--profile", render.profile, "Profile file");
  r->add_option("--facts", render.facts, "Facts file (.facts.ndjson or .vcs.txt)");
  r->add_option("--slider", render.slider, "Slider level")->check(CLI::NonNegativeNumber);
  r->add_option("--category", render.categories, "NAME=on|off")->allow_extra_args(false);
  r->add_option("--now", render.now, "Reference time, ISO-8601 UTC");
  r->add_option("--window", render.window, "Recency window, e.g. 14d");

  AliasArgs alias;
  auto* al = app.add_subcommand("alias", "Manage personal aliases");
  al->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--profile", alias.profile, "Profile file")->required();
  };
  auto* set = al->add_subcommand("set", "Set an alias");
  set->add_option("IDENTITY", alias.identity)->required();
  set->add_option("NAME", alias.display)->required();
  add_common(set);
  set->add_flag("--create", alias.create, "Create the profile if missing");
  set->add_option("--file", alias.files, "Source files to check for conflicts");
  set->add_option("--root", alias.root, "Directory of sources to check for conflicts");
  auto* rm = al->add_subcommand("rm", "Remove an alias");
  rm->add_option("IDENTITY", alias.identity)->required();
  add_common(rm);
  auto* list = al->add_subcommand("list", "List aliases");
  add_common(list);

  std::string scan_dir;
  auto* scan = app.add_subcommand("scan", "List declaration identities below a directory");
  scan->add_option("DIR", scan_dir)->required();

  ServeArgs serve;
  auto* sv = app.add_subcommand("serve", "Run the HTTP service");
  sv->add_option("--root", serve.root, "Project root")->required();
  sv->add_option("--port", serve.port, "TCP port")->required()->check(CLI::Range(0, 65535));
  sv->add_option("--profile", serve.profile, "Profile file");
  sv->add_option("--facts", serve.facts, "Facts file");
  sv->add_option("--now", serve.now, "Reference time, ISO-8601 UTC");
  sv->add_option("--window", serve.window, "Recency window");
  sv->add_option("--host", serve.host, "Bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*r) return cmd_render(render);
    if (*set) return cmd_alias_set(alias);
    if (*rm) return cmd_alias_rm(alias);
    if (*list) return cmd_alias_list(alias);
    if (*scan) return cmd_scan(scan_dir);
    if (*sv) return cmd_serve(serve);
  } catch (const FileNotFound& e) {
    std::cerr << "impid: " << e.what() << "\n";
    return kExitUsage;
  } catch (const AliasConflict& e) {
    std::cerr << "impid: " << e.what() << "\n";
    return kExitConflict;
  } catch (const InvalidAlias& e) {
    std::cerr << "impid: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "impid: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "impid: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
