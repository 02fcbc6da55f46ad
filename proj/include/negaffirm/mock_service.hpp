#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace negaffirm {

// Deterministic stand-in for the generation service. Candidate lists come
// from a fixtures file (JSON object: input text -> array of candidates);
// unknown inputs get a single echo candidate so runs stay reproducible.
class MockGenerationService {
 public:
  MockGenerationService();
  ~MockGenerationService();
  MockGenerationService(const MockGenerationService&) = delete;
  MockGenerationService& operator=(const MockGenerationService&) = delete;

  void load_fixtures_file(const std::string& path);
  void load_fixtures_json(const std::string& json_text);
  void set_fixture(const std::string& input, std::vector<std::string> candidates);

  // Binds to 127.0.0.1 on an OS-assigned (or given) port and serves on a
  // background thread until stop() or destruction.
  int start(int port = 0);
  void stop();
  int port() const;
  std::string base_url() const;

  // Runs in the calling thread (the mock-serve subcommand).
  void serve_blocking(int port);

  std::vector<std::string> respond(const std::string& text, int n) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace negaffirm
