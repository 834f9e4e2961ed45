#pragma once

#include <filesystem>

#include "CLI11.hpp"

namespace klucas::cli {

struct GlobalOptions {
  std::filesystem::path out_dir = "klucas-out";
};

void add_eval(CLI::App& app, const GlobalOptions& g);
void add_search(CLI::App& app, const GlobalOptions& g);
void add_reduce(CLI::App& app, const GlobalOptions& g);
void add_cf(CLI::App& app, const GlobalOptions& g);
void add_bounds(CLI::App& app, const GlobalOptions& g);
void add_roots(CLI::App& app, const GlobalOptions& g);

}  // namespace klucas::cli
