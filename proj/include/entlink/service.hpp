#pragma once

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>

#include "entlink/config.hpp"
#include "entlink/index.hpp"
#include "entlink/linker.hpp"

namespace entlink {

inline constexpr std::string_view kAnnotatePath = "/AGDISTIS";
inline constexpr std::string_view kHealthPath = "/health";
inline constexpr std::string_view kJsonContentType = "application/json; charset=utf-8";

using FormFields = std::multimap<std::string, std::string>;

/// application/x-www-form-urlencoded decoding; '+' is a space.
FormFields parse_form_urlencoded(std::string_view body);

struct HttpReply {
  int status = 200;
  std::string body;
};

// Request-level failure with the HTTP status and error code it maps to.
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& message);
  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }

 private:
  int status_;
  std::string code_;
};

/// {"error": code, "message": message}
std::string render_error_json(std::string_view code, std::string_view message);

// Transport-independent request handling over one swappable bundle.
class AnnotationService {
 public:
  explicit AnnotationService(ServiceConfig cfg, std::shared_ptr<const IndexBundle> bundle = nullptr);

  const ServiceConfig& config() const noexcept { return cfg_; }

  // Response body for tagged `text` and `type` (agdistis | candidates).
  // Throws ServiceError, TextInputError, InvalidUtf8 or InvalidValue.
  std::string annotate(std::string_view text, std::string_view type, const LinkerConfig& cfg) const;

  // Form body with text and type; LinkerConfig overrides may come from the
  // body or the query, the query winning.
  HttpReply handle_link(std::string_view body, const FormFields& query) const;
  HttpReply health() const;

  // Requests arriving while `load` runs get 503. On failure the previous
  // bundle stays active and the exception propagates.
  void reload(const std::function<std::shared_ptr<const IndexBundle>()>& load);

 private:
  std::shared_ptr<const Linker> active_linker() const;

  ServiceConfig cfg_;
  mutable std::shared_mutex mutex_;
  std::shared_ptr<const Linker> linker_;
  std::atomic<bool> reloading_{false};
};

// HTTP binding of an AnnotationService: POST /AGDISTIS, GET /health, CORS.
class HttpServer {
 public:
  explicit HttpServer(AnnotationService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds host:port (port 0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); requires bind().
  void run();
  /// run() on a background thread, returning once the server accepts.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace entlink
