#pragma once

#include <chrono>
#include <cmath>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "threatstream/error.hpp"
#include "threatstream/gazetteer.hpp"
#include "threatstream/scored_term.hpp"
#include "threatstream/text.hpp"

namespace threatstream {

struct RemoteNerOptions {
  std::string endpoint;  // http://host[:port]/path
  int timeout_ms = 2000;
  int retries = 2;
  std::ptrdiff_t max_in_flight = 4;
};

/// Entities for one text plus whether the gazetteer had to stand in.
struct EntityResult {
  std::vector<ScoredTerm> entities;
  bool fell_back = false;
  std::string diagnostic;
};

/// Decodes {"entities":[{"matched_text","type","confidence"}]}. Matched text
/// is normalized like gazetteer surface forms; repeated entities keep the
/// highest confidence.
inline std::vector<ScoredTerm> parse_ner_response(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("response is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entities") || !doc["entities"].is_array()) {
    throw ProtocolError("response lacks an 'entities' array");
  }
  std::vector<ScoredTerm> out;
  std::unordered_map<std::string, std::size_t> position;
  for (const auto& e : doc["entities"]) {
    if (!e.is_object()) throw ProtocolError("entity is not an object");
    auto text = e.find("matched_text");
    auto type = e.find("type");
    auto conf = e.find("confidence");
    if (text == e.end() || !text->is_string()) throw ProtocolError("entity lacks string 'matched_text'");
    if (type == e.end() || !type->is_string()) throw ProtocolError("entity lacks string 'type'");
    if (conf == e.end() || !conf->is_number()) throw ProtocolError("entity lacks numeric 'confidence'");
    const double c = conf->get<double>();
    if (!std::isfinite(c)) throw ProtocolError("entity confidence is not finite");
    auto term = normalize_phrase(text->get<std::string>());
    if (term.empty()) continue;
    auto [it, inserted] = position.emplace(term, out.size());
    if (inserted) {
      out.push_back({std::move(term), c, TermKind::entity});
    } else if (c > out[it->second].raw_score) {
      out[it->second].raw_score = c;
    }
  }
  return out;
}

/// HTTP client for an external entity recognizer. Safe to share between
/// threads; at most `max_in_flight` requests run at once.
class RemoteNerClient {
 public:
  explicit RemoteNerClient(RemoteNerOptions options)
      : options_(std::move(options)),
        slots_(make_slots(options_.max_in_flight)) {
    if (options_.timeout_ms <= 0) throw ConfigError("ner.timeout_ms must be positive");
    if (options_.retries < 0) throw ConfigError("ner.retries must be non-negative");
    const std::string_view ep = options_.endpoint;
    constexpr std::string_view scheme = "http://";
    if (ep.substr(0, scheme.size()) != scheme) {
      throw ConfigError("ner.endpoint must start with http:// (got '" + options_.endpoint + "')");
    }
    const auto slash = ep.find('/', scheme.size());
    host_ = std::string(ep.substr(0, slash));
    path_ = slash == std::string_view::npos ? "/" : std::string(ep.substr(slash));
    if (host_.size() == scheme.size()) throw ConfigError("ner.endpoint has no host");
  }

  const RemoteNerOptions& options() const { return options_; }

  /// One logical request with retries on transport failure.
  /// Throws TransportError when every attempt failed, ProtocolError on a
  /// non-200 status or schema violation.
  std::vector<ScoredTerm> request(std::string_view text) const {
    slots_->acquire();
    struct Release {
      std::counting_semaphore<>* s;
      ~Release() { s->release(); }
    } release{slots_.get()};

    const std::string body = nlohmann::json{{"text", std::string(text)}}.dump();
    std::string last_error;
    for (int attempt = 0; attempt <= options_.retries; ++attempt) {
      if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(25 * attempt));
      httplib::Client client(host_);
      const auto timeout = std::chrono::milliseconds(options_.timeout_ms);
      client.set_connection_timeout(timeout);
      client.set_read_timeout(timeout);
      client.set_write_timeout(timeout);
      auto res = client.Post(path_, body, "application/json");
      if (!res) {
        last_error = httplib::to_string(res.error());
        continue;
      }
      if (res->status != 200) throw ProtocolError("recognizer returned HTTP " + std::to_string(res->status));
      return parse_ner_response(res->body);
    }
    throw TransportError("recognizer unreachable after " + std::to_string(options_.retries + 1) +
                         " attempt(s): " + last_error);
  }

 private:
  static std::unique_ptr<std::counting_semaphore<>> make_slots(std::ptrdiff_t n) {
    if (n < 1) throw ConfigError("ner.max_in_flight must be at least 1");
    return std::make_unique<std::counting_semaphore<>>(n);
  }

  RemoteNerOptions options_;
  std::string host_;
  std::string path_;
  std::unique_ptr<std::counting_semaphore<>> slots_;
};

/// Remote recognition; on transport or protocol failure the gazetteer result
/// is returned with `fell_back` set and the cause in `diagnostic`.
inline EntityResult recognize_entities_remote(std::string_view text, const RemoteNerClient& client,
                                              const Gazetteer& fallback) {
  try {
    return {client.request(text), false, {}};
  } catch (const TransportError& e) {
    return {fallback.recognize(text), true, e.what()};
  } catch (const ProtocolError& e) {
    return {fallback.recognize(text), true, e.what()};
  }
}

}  // namespace threatstream
