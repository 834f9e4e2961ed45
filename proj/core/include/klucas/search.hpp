#pragma once

// Verification and bounded enumeration of solutions (n, m, k, x) of
// (L_{n+1})^x + (L_n)^x - (L_{n-1})^x = L_m.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "klucas/numeric.hpp"

namespace klucas {

struct IntRange {
  long lo = 0;
  long hi = 0;
  bool contains(long v) const { return lo <= v && v <= hi; }
};

// "a..b" or a single integer.
IntRange parse_range(const std::string& text);

enum class NBound { Absolute, AtMostK, AboveK };

struct SearchSegment {
  IntRange k{2, 10};
  IntRange n{0, 20};
  IntRange x{0, 15};
  // Explicit m range; otherwise nx - 2 <= m <= (n + 3)x + 2.
  std::optional<IntRange> m;
  // Further clips n to [0, k] or [k + 1, ...].
  NBound n_bound = NBound::Absolute;
};

struct SearchConfig {
  std::vector<SearchSegment> segments{SearchSegment{}};
  std::size_t batch_size = 4;  // (k, n) blocks per work unit
  bool modular_filter = true;
  bool parity_filter = true;
  unsigned jobs = 1;
  // Stop with ResourceLimitError after this many newly processed blocks.
  std::optional<std::size_t> max_blocks;
  // Appended after each finished block; completed blocks are skipped on rerun.
  std::string journal_path;
};

void validate(const SearchConfig& cfg);

// "desk" or "paper-full".
SearchConfig preset(const std::string& name);

struct SolutionRecord {
  long k = 2;
  long n = 0;
  long m = 0;
  long x = 0;
  BigInt lhs_value;
  std::string certificate;  // "fnv1a64:<hex>" over the decimal digits of lhs_value

  friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

bool record_less(const SolutionRecord& a, const SolutionRecord& b);

// "fnv1a64:<16 hex digits>".
std::string digest_of(const std::string& text);
std::string certificate_of(const BigInt& value);

std::optional<SolutionRecord> verify_solution(long k, long n, long m, long x);

// x = 0 with m in [0, 2] and x = 1 with m in [n - 2, n + 5], for 0 <= n <= n_cap.
std::vector<SolutionRecord> trivial_solutions(IntRange k_range, long n_cap = 20);

struct ModularClasses {
  std::uint64_t modulus = 2;
  std::uint64_t lhs_residue = 0;
  // Period of L_m mod modulus; absent when it exceeds the search cap.
  std::optional<std::uint64_t> period;
  // Residues r in [0, period) with L_r = lhs (mod modulus).
  std::vector<std::uint64_t> admissible;
};

ModularClasses modular_filter(long k, long n, long x, std::uint64_t modulus,
                              std::uint64_t period_cap = 1'000'000);

// Sorted by (k, n, x, m).
std::vector<SolutionRecord> exhaustive_search(const SearchConfig& cfg);

std::string to_json_line(const SolutionRecord& r);
std::string to_json(const SearchConfig& cfg);
// Hash over every field that affects the result set.
std::string config_digest(const SearchConfig& cfg);

}  // namespace klucas
