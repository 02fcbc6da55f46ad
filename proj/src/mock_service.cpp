#include "negaffirm/mock_service.hpp"

#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "negaffirm/errors.hpp"

namespace negaffirm {

using nlohmann::json;

struct MockGenerationService::Impl {
  std::map<std::string, std::vector<std::string>> fixtures;
  httplib::Server server;
  std::thread thread;
  int port = 0;

  void install_routes(const MockGenerationService& self) {
    server.Post("/generate", [&self](const httplib::Request& req, httplib::Response& res) {
      json parsed;
      try {
        parsed = json::parse(req.body);
      } catch (const json::exception&) {
        res.status = 400;
        res.set_content(R"({"error":"invalid JSON body"})", "application/json");
        return;
      }
      if (!parsed.contains("text") || !parsed["text"].is_string()) {
        res.status = 400;
        res.set_content(R"({"error":"missing \"text\""})", "application/json");
        return;
      }
      int n = parsed.value("n", 1);
      if (n < 1) {
        res.status = 400;
        res.set_content(R"({"error":"\"n\" must be positive"})", "application/json");
        return;
      }
      std::vector<std::string> candidates =
          self.respond(parsed["text"].get<std::string>(), n);
      res.set_content(json{{"candidates", candidates}}.dump(), "application/json");
    });
  }
};

MockGenerationService::MockGenerationService() : impl_(std::make_unique<Impl>()) {
  impl_->install_routes(*this);
}

MockGenerationService::~MockGenerationService() { stop(); }

void MockGenerationService::load_fixtures_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open fixtures file: " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  load_fixtures_json(text);
}

void MockGenerationService::load_fixtures_json(const std::string& json_text) {
  json parsed;
  try {
    parsed = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("fixtures are not valid JSON: ") + e.what());
  }
  if (!parsed.is_object()) {
    throw SchemaError("fixtures must be a JSON object mapping text to candidates");
  }
  for (const auto& [input, value] : parsed.items()) {
    if (!value.is_array()) {
      throw SchemaError("fixture for \"" + input + "\" is not an array");
    }
    std::vector<std::string> candidates;
    for (const auto& item : value) {
      if (!item.is_string()) {
        throw SchemaError("fixture for \"" + input + "\" holds a non-string candidate");
      }
      candidates.push_back(item.get<std::string>());
    }
    impl_->fixtures[input] = std::move(candidates);
  }
}

void MockGenerationService::set_fixture(const std::string& input,
                                        std::vector<std::string> candidates) {
  impl_->fixtures[input] = std::move(candidates);
}

std::vector<std::string> MockGenerationService::respond(const std::string& text, int n) const {
  auto it = impl_->fixtures.find(text);
  std::vector<std::string> candidates;
  if (it != impl_->fixtures.end()) {
    candidates = it->second;
  } else {
    candidates.push_back(text);  // deterministic echo for unknown inputs
  }
  if (candidates.size() > static_cast<std::size_t>(n)) {
    candidates.resize(static_cast<std::size_t>(n));
  }
  return candidates;
}

int MockGenerationService::start(int port) {
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
  } else {
    if (!impl_->server.bind_to_port("127.0.0.1", port)) {
      throw ConfigError("cannot bind mock service to port " + std::to_string(port));
    }
    impl_->port = port;
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void MockGenerationService::stop() {
  if (impl_->thread.joinable()) {
    impl_->server.stop();
    impl_->thread.join();
  }
}

int MockGenerationService::port() const { return impl_->port; }

std::string MockGenerationService::base_url() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port);
}

void MockGenerationService::serve_blocking(int port) {
  impl_->port = port;
  if (!impl_->server.listen("127.0.0.1", port)) {
    throw ConfigError("mock service failed to listen on port " + std::to_string(port));
  }
}

}  // namespace negaffirm
