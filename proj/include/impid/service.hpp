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

// HTTP service over the shared pipeline. One active profile per instance;
// profile mutations are serialized and written atomically.

#ifndef IMPID_SERVICE_HPP
#define IMPID_SERVICE_HPP

#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "impid/pipeline.hpp"

namespace impid {

struct ServiceConfig {
  std::filesystem::path root;
  std::optional<std::filesystem::path> profile_path;
  std::optional<std::filesystem::path> facts_path;
  Timestamp now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  std::chrono::seconds window = std::chrono::hours(24 * 14);
};

class HttpError : public Error {
 public:
  HttpError(int status, std::string code, const std::string& detail)
      : Error(detail), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

class ServiceState {
 public:
  explicit ServiceState(ServiceConfig config) : config_(std::move(config)) {
    if (!std::filesystem::is_directory(config_.root)) throw FileNotFound("root is not a directory: " + config_.root.string());
    root_ = std::filesystem::canonical(config_.root);
    if (config_.profile_path && std::filesystem::exists(*config_.profile_path))
      profile_ = load_profile(read_file(*config_.profile_path));
    facts_.recency = {config_.window, config_.now};
    if (config_.facts_path) facts_.records = load_facts_file(*config_.facts_path, config_.now, &diagnostics_);
  }

  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

  Profile profile() const {
    std::shared_lock lock(profile_mutex_);
    return profile_;
  }

  // Applies `change` to the active profile under the writer lock and
  // persists the result before publishing it.
  template <class Change>
  Profile update_profile(Change&& change) {
    std::unique_lock lock(profile_mutex_);
    Profile next = change(profile_);
    if (config_.profile_path) write_file_atomic(*config_.profile_path, save_profile(next));
    profile_ = next;
    return next;
  }

  std::vector<std::string> files() const { return list_java_files(root_); }

  std::filesystem::path resolve(const std::string& relative) const {
    if (relative.empty()) throw HttpError(400, "bad-request", "missing path parameter");
    auto full = std::filesystem::weakly_canonical(root_ / relative);
    auto rel = full.lexically_relative(root_);
    if (rel.empty() || rel.native().rfind("..", 0) == 0) throw HttpError(400, "bad-request", "path escapes root");
    return full;
  }

  // Parsed unit for a path under root, cached by source hash.
  std::shared_ptr<const ParsedUnit> unit(const std::string& relative) {
    auto full = resolve(relative);
    std::string source;
    try {
      source = read_file(full);
    } catch (const FileNotFound&) {
      throw HttpError(404, "file-not-found", "file not found: " + relative);
    }
    const std::string hash = source_hash(source);
    {
      std::lock_guard lock(cache_mutex_);
      auto it = cache_.find(relative);
      if (it != cache_.end() && it->second.first == hash) return it->second.second;
    }
    std::shared_ptr<const ParsedUnit> parsed;
    try {
      parsed = std::make_shared<const ParsedUnit>(extract_occurrences(source));
    } catch (const LocatedError& e) {
      throw HttpError(422, "parse-error", relative + ": " + e.what());
    }
    std::lock_guard lock(cache_mutex_);
    cache_[relative] = {hash, parsed};
    return parsed;
  }

  std::vector<std::shared_ptr<const ParsedUnit>> all_units() {
    std::vector<std::shared_ptr<const ParsedUnit>> out;
    for (const auto& f : files()) {
      try {
        out.push_back(unit(f));
      } catch (const HttpError&) {
      }
    }
    return out;
  }

  const FactsInput& facts() const { return facts_; }

 private:
  ServiceConfig config_;
  std::filesystem::path root_;
  mutable std::shared_mutex profile_mutex_;
  Profile profile_;
  FactsInput facts_;
  std::vector<std::string> diagnostics_;
  std::mutex cache_mutex_;
  std::map<std::string, std::pair<std::string, std::shared_ptr<const ParsedUnit>>> cache_;
};

namespace detail {

inline void send_error(httplib::Response& res, int status, const std::string& code, const std::string& detail) {
  res.status = status;
  res.set_content(canonical_text(Json{{"error", code}, {"code", status}, {"detail", detail}}), "application/json");
}

template <class Handler>
httplib::Server::Handler guarded(Handler h) {
  return [h](const httplib::Request& req, httplib::Response& res) {
    try {
      h(req, res);
    } catch (const HttpError& e) {
      send_error(res, e.status(), e.code(), e.what());
    } catch (const AliasConflict& e) {
      send_error(res, 409, "alias-conflict", describe(e.info()));
    } catch (const InvalidAlias& e) {
      send_error(res, 400, "invalid-alias", e.what());
    } catch (const Json::exception& e) {
      send_error(res, 400, "bad-request", std::string("malformed body: ") + e.what());
    } catch (const UnsupportedVersion& e) {
      send_error(res, 400, "unsupported-version", e.what());
    } catch (const FormatError& e) {
      send_error(res, 400, "bad-request", e.what());
    } catch (const LocatedError& e) {
      send_error(res, 400, "bad-request", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

inline std::optional<int> parse_slider(const std::string& s) {
  if (s.empty() || s.size() > 6 || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  return std::stoi(s);
}

inline Json parse_body(const httplib::Request& req) {
  Json body = Json::parse(req.body);
  if (!body.is_object()) throw HttpError(400, "bad-request", "body must be an object");
  return body;
}

}  // namespace detail

inline Json identities_json(const ParsedUnit& unit, const Profile& profile) {
  Json list = Json::array();
  for (const auto& v : visible_identities(unit)) {
    auto r = resolve_display(v.identity, v.original, v.kind, profile, v.facts);
    list.push_back(Json{{"identity", v.identity.str()},
                        {"name", v.original},
                        {"kind", to_string(v.kind)},
                        {"display", r.display},
                        {"provenance", to_string(r.provenance)}});
  }
  return list;
}

inline void install_routes(httplib::Server& server, ServiceState& state) {
  using detail::guarded;
  using httplib::Request;
  using httplib::Response;

  server.Get("/api/health", guarded([](const Request&, Response& res) {
    res.set_content(canonical_text(Json{{"status", "ok"}}), "application/json");
  }));

  server.Get("/api/files", guarded([&state](const Request&, Response& res) {
    res.set_content(canonical_text(Json{{"files", state.files()}}), "application/json");
  }));

  server.Get("/api/render", guarded([&state](const Request& req, Response& res) {
    const std::string path = req.get_param_value("path");
    const std::string format = req.has_param("format") ? req.get_param_value("format") : "json";
    ViewOptions view;
    if (req.has_param("slider")) {
      view.slider = detail::parse_slider(req.get_param_value("slider"));
      if (!view.slider) throw HttpError(400, "bad-request", "slider must be a non-negative integer");
    }
    auto unit = state.unit(path);
    if (format == "source") {
      res.set_content(unit->source, "text/plain; charset=utf-8");
      return;
    }
    auto fmt = format_from_string(format);
    if (!fmt) throw HttpError(400, "bad-request", "unknown format '" + format + "'");
    const Profile profile = view.apply(state.profile());
    std::string body = render_unit(*unit, path, profile, state.facts(), *fmt);
    const char* type = *fmt == Format::json ? "application/json" : *fmt == Format::html ? "text/html; charset=utf-8"
                                                                                         : "text/plain; charset=utf-8";
    res.set_content(body, type);
  }));

  server.Get("/api/identities", guarded([&state](const Request& req, Response& res) {
    const std::string path = req.get_param_value("path");
    auto unit = state.unit(path);
    res.set_content(canonical_text(Json{{"path", path}, {"identities", identities_json(*unit, state.profile())}}),
                    "application/json");
  }));

  server.Post("/api/alias", guarded([&state](const Request& req, Response& res) {
    Json body = detail::parse_body(req);
    IdentityKey identity(detail::get_string(body, "identity"));
    const std::string display = detail::get_string(body, "display");
    auto units = state.all_units();
    std::vector<const ParsedUnit*> ptrs;
    for (const auto& u : units) ptrs.push_back(u.get());
    Profile next = state.update_profile([&](const Profile& p) { return set_alias(p, identity, display, ptrs); });
    res.set_content(save_profile(next), "application/json");
  }));

  server.Delete(R"(/api/alias/(.+))", guarded([&state](const Request& req, Response& res) {
    IdentityKey identity(req.matches[1].str());
    if (!identity.valid()) throw InvalidAlias("invalid identity '" + identity.str() + "'");
    Profile next = state.update_profile([&](const Profile& p) { return remove_alias(p, identity); });
    res.set_content(save_profile(next), "application/json");
  }));

  server.Get("/api/profile", guarded([&state](const Request&, Response& res) {
    res.set_content(save_profile(state.profile()), "application/json");
  }));

  server.Put("/api/profile", guarded([&state](const Request& req, Response& res) {
    Profile incoming = load_profile(req.body);
    Profile next = state.update_profile([&](const Profile&) { return incoming; });
    res.set_content(save_profile(next), "application/json");
  }));

  server.Patch(R"(/api/categories/([A-Za-z0-9_.-]+))", guarded([&state](const Request& req, Response& res) {
    const std::string id = req.matches[1].str();
    Json body = detail::parse_body(req);
    Profile next = state.update_profile([&](const Profile& p) {
      Profile q = p;
      CategorySetting s = q.category(id);
      s.enabled = detail::get_bool(body, "enabled", s.enabled);
      if (body.contains("priority")) s.priority = detail::get_number<int>(body, "priority");
      if (s.priority < 1) throw HttpError(400, "bad-request", "priority must be at least 1");
      q.categories[id] = s;
      return q;
    });
    res.set_content(save_profile(next), "application/json");
  }));

  server.set_error_handler([](const Request&, Response& res) {
    if (res.body.empty()) detail::send_error(res, res.status, "not-found", "no such endpoint");
  });
}

}  // namespace impid

#endif  // IMPID_SERVICE_HPP
