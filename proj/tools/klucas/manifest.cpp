#include "manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "klucas/errors.hpp"
#include "klucas/search.hpp"

namespace klucas::cli {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_output(const std::filesystem::path& dir, const std::string& name,
                  const std::string& text, RunManifest& m) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw DomainError("cannot write " + (dir / name).string());
  m.outputs.push_back(name);
}

void write_manifest(const std::filesystem::path& dir, RunManifest m) {
  if (m.finished.empty()) m.finished = utc_now();
  nlohmann::json j{{"command", m.command},
                   {"inputs", m.inputs},
                   {"config_digest", digest_of(m.inputs.dump())},
                   {"precision", m.precision},
                   {"started", m.started},
                   {"finished", m.finished},
                   {"status", m.status},
                   {"outputs", m.outputs}};
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  out << j.dump(2) << '\n';
}

}  // namespace klucas::cli
