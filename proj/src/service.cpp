#include "entlink/service.hpp"

#include <mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "entlink/response.hpp"
#include "entlink/text.hpp"
#include "entlink/text_input.hpp"

namespace entlink {

namespace {

const std::string* first_field(const FormFields& fields, const std::string& key) {
  const auto it = fields.find(key);
  return it == fields.end() ? nullptr : &it->second;
}

void apply_overrides(LinkerConfig& cfg, const FormFields& fields) {
  for (const auto& [key, value] : fields) {
    if (is_linker_key(key)) apply_linker_setting(cfg, key, value);
  }
}

HttpReply error_reply(int status, std::string_view code, std::string_view message) {
  return {status, render_error_json(code, message)};
}

}  // namespace

FormFields parse_form_urlencoded(std::string_view body) {
  httplib::Params params;
  httplib::detail::parse_query_text(body.data(), body.size(), params);
  return FormFields(params.begin(), params.end());
}

ServiceError::ServiceError(int status, std::string code, const std::string& message)
    : std::runtime_error(message), status_(status), code_(std::move(code)) {}

std::string render_error_json(std::string_view code, std::string_view message) {
  nlohmann::ordered_json j;
  j["error"] = code;
  j["message"] = message;
  return j.dump();
}

AnnotationService::AnnotationService(ServiceConfig cfg, std::shared_ptr<const IndexBundle> bundle)
    : cfg_(std::move(cfg)) {
  cfg_.linker.validate();
  if (bundle) linker_ = std::make_shared<const Linker>(std::move(bundle));
}

std::shared_ptr<const Linker> AnnotationService::active_linker() const {
  if (reloading_.load()) throw ServiceError(503, "Reloading", "bundle reload in progress");
  std::shared_lock lock(mutex_);
  if (!linker_) throw ServiceError(500, "BundleUnavailable", "no index bundle loaded");
  return linker_;
}

std::string AnnotationService::annotate(std::string_view text, std::string_view type, const LinkerConfig& cfg) const {
  if (type != "agdistis" && type != "candidates")
    throw ServiceError(400, "InvalidType", "type must be agdistis or candidates, got '" + std::string(type) + "'");
  cfg.validate();
  const Document doc = parse_entity_tagged_text(text);
  const auto linker = active_linker();
  if (type == "candidates") return render_candidates_json(doc, linker->candidates(doc, cfg));
  return render_annotation_json(doc, linker->link(doc, cfg).result);
}

HttpReply AnnotationService::handle_link(std::string_view body, const FormFields& query) const {
  if (body.size() > cfg_.max_request_bytes)
    return error_reply(413, "PayloadTooLarge", "request body exceeds " + std::to_string(cfg_.max_request_bytes) + " bytes");
  try {
    const FormFields form = parse_form_urlencoded(body);
    const std::string* text = first_field(form, "text");
    const std::string* type = first_field(form, "type");
    if (!text) return error_reply(400, "MissingParameter", "missing parameter: text");
    if (!type) return error_reply(400, "MissingParameter", "missing parameter: type");

    LinkerConfig cfg = cfg_.linker;
    apply_overrides(cfg, form);
    apply_overrides(cfg, query);
    return {200, annotate(*text, *type, cfg)};
  } catch (const ServiceError& e) {
    return error_reply(e.status(), e.code(), e.what());
  } catch (const UnbalancedTag& e) {
    return error_reply(400, "UnbalancedTag", e.what());
  } catch (const EmptyMention& e) {
    return error_reply(400, "EmptyMention", e.what());
  } catch (const InvalidUtf8& e) {
    return error_reply(400, "InvalidUtf8", e.what());
  } catch (const InvalidValue& e) {
    return error_reply(400, "InvalidValue", e.what());
  }
}

HttpReply AnnotationService::health() const {
  try {
    const auto linker = active_linker();
    const BundleMeta& meta = linker->bundle().meta;
    nlohmann::ordered_json j;
    j["status"] = "ok";
    j["language"] = meta.language;
    j["kb"] = meta.kb_name;
    j["entityCount"] = meta.entity_count;
    j["formatVersion"] = meta.format_version;
    return {200, j.dump()};
  } catch (const ServiceError& e) {
    return error_reply(e.status(), e.code(), e.what());
  }
}

void AnnotationService::reload(const std::function<std::shared_ptr<const IndexBundle>()>& load) {
  reloading_.store(true);
  try {
    auto next = std::make_shared<const Linker>(load());
    std::unique_lock lock(mutex_);
    linker_ = std::move(next);
  } catch (...) {
    reloading_.store(false);
    throw;
  }
  reloading_.store(false);
}

struct HttpServer::Impl {
  AnnotationService& service;
  httplib::Server server;
  std::thread thread;
  bool bound = false;

  explicit Impl(AnnotationService& s) : service(s) {}
};

HttpServer::HttpServer(AnnotationService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& server = impl_->server;
  server.set_payload_max_length(service.config().max_request_bytes);
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

  const auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, std::string(kJsonContentType));
  };

  server.Post(std::string(kAnnotatePath), [this, send](const httplib::Request& req, httplib::Response& res) {
    const auto q = req.target.find('?');
    const FormFields query = q == std::string::npos ? FormFields{} : parse_form_urlencoded(std::string_view(req.target).substr(q + 1));
    send(res, impl_->service.handle_link(req.body, query));
  });
  server.Get(std::string(kHealthPath),
             [this, send](const httplib::Request&, httplib::Response& res) { send(res, impl_->service.health()); });
  server.Options(std::string(kAnnotatePath), [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    res.set_header("Access-Control-Allow-Methods", "POST, GET, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });

  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    const std::string code = res.status == 413 ? "PayloadTooLarge" : res.status == 404 ? "NotFound" : "HttpError";
    res.set_content(render_error_json(code, httplib::status_message(res.status)), std::string(kJsonContentType));
  });
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(render_error_json("InternalError", message), std::string(kJsonContentType));
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& server = impl_->server;
  int bound = -1;
  if (port == 0) {
    bound = server.bind_to_any_port(host);
  } else if (server.bind_to_port(host, port)) {
    bound = port;
  }
  if (bound <= 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  impl_->bound = true;
  return bound;
}

void HttpServer::run() {
  if (!impl_->bound) throw std::logic_error("HttpServer::run before bind");
  impl_->server.listen_after_bind();
}

void HttpServer::start() {
  impl_->thread = std::thread([this] { run(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace entlink
