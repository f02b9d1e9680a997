#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

struct ProcessResult {
  int exit_code = -1;
  std::string out;
};

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  return out + "'";
}

// Runs `cmd` through the shell; stdout captured, stderr passed through.
inline ProcessResult run_capture(const std::string& cmd) {
  ProcessResult r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = ::pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string slurp_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Copy of a fixture config with the endpoint URL and store path replaced and
// the corpus path made absolute.
inline std::filesystem::path write_config(const std::filesystem::path& fixture_config,
                                          const std::filesystem::path& dir,
                                          const std::string& url, const std::string& store,
                                          const std::string& auth_env_var = "") {
  auto j = nlohmann::json::parse(slurp_file(fixture_config));
  j["corpus"] = (fixture_config.parent_path() / j["corpus"].get<std::string>()).string();
  j["out"] = store;
  for (auto& e : j["endpoints"]) {
    e["url"] = url;
    if (!auth_env_var.empty()) e["auth_env_var"] = auth_env_var;
  }
  std::filesystem::create_directories(dir);
  auto path = dir / fixture_config.filename();
  std::ofstream(path) << j.dump(2);
  return path;
}
