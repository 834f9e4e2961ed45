#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace klucas::cli {

struct RunManifest {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  long precision = 0;
  std::string started;
  std::string finished;
  std::string status = "completed";
  std::vector<std::string> outputs;
};

std::string utc_now();

// Writes text to dir/name and lists it in the manifest.
void write_output(const std::filesystem::path& dir, const std::string& name,
                  const std::string& text, RunManifest& m);

// dir/manifest.json; config_digest covers m.inputs.
void write_manifest(const std::filesystem::path& dir, RunManifest m);

}  // namespace klucas::cli
