#include "klucas/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "klucas/errors.hpp"
#include "klucas/seq.hpp"

namespace klucas {

using nlohmann::json;

namespace {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t mod_u(const BigInt& v, std::uint64_t m) {
  return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m));
}

// L_0 .. L_{period-1} mod modulus, or nothing if the period exceeds cap.
std::optional<std::vector<std::uint64_t>> residue_cycle(long k, std::uint64_t modulus,
                                                        std::uint64_t cap) {
  const auto kk = static_cast<std::size_t>(k);
  // Window L_{2-k} .. L_1; the recurrence is invertible, so the sequence is
  // purely periodic and the period is the first return of this window.
  std::vector<std::uint64_t> state(kk, 0);
  state[kk - 1] = 1 % modulus;
  state[kk - 2] = 2 % modulus;
  const std::vector<std::uint64_t> start = state;
  std::vector<std::uint64_t> cycle{2 % modulus};
  std::uint64_t sum = 0;
  for (auto v : state) sum = (sum + v) % modulus;
  std::size_t head = 0;  // index of the oldest entry
  for (std::uint64_t step = 1; step <= cap; ++step) {
    cycle.push_back(state[(head + kk - 1) % kk]);
    const std::uint64_t next = sum;
    sum = (sum + next + modulus - state[head]) % modulus;
    state[head] = next;
    head = (head + 1) % kk;
    bool same = true;
    for (std::size_t i = 0; i < kk && same; ++i) same = state[(head + i) % kk] == start[i];
    if (same) {
      cycle.resize(step);
      return cycle;
    }
  }
  return std::nullopt;
}

struct Block {
  std::size_t segment;
  long k;
  long n;
};

std::vector<Block> enumerate_blocks(const SearchConfig& cfg) {
  std::vector<Block> blocks;
  for (std::size_t s = 0; s < cfg.segments.size(); ++s) {
    const auto& seg = cfg.segments[s];
    for (long k = seg.k.lo; k <= seg.k.hi; ++k) {
      long lo = std::max(seg.n.lo, 0L), hi = seg.n.hi;
      if (seg.n_bound == NBound::AtMostK) hi = std::min(hi, k);
      if (seg.n_bound == NBound::AboveK) lo = std::max(lo, k + 1);
      for (long n = lo; n <= hi; ++n) blocks.push_back({s, k, n});
    }
  }
  return blocks;
}

struct Filter {
  std::uint64_t modulus;
  std::vector<std::uint64_t> cycle;
};

std::vector<SolutionRecord> run_block(const SearchSegment& seg, long k, long n,
                                      const std::vector<Filter>& filters) {
  std::vector<SolutionRecord> out;
  const long x_lo = std::max(seg.x.lo, 0L);
  auto m_bounds = [&](long x) {
    long lo = std::max(n * x - 2, 0L), hi = (n + 3) * x + 2;
    if (seg.m) {
      lo = std::max(lo, seg.m->lo);
      hi = std::min(hi, seg.m->hi);
    }
    return std::pair{lo, hi};
  };
  long m_max = -1;
  for (long x = x_lo; x <= seg.x.hi; ++x) m_max = std::max(m_max, m_bounds(x).second);
  if (m_max < 0) return out;
  const auto window = lucas_window(k, std::max(m_max, n + 1));
  const BigInt& up = window[static_cast<std::size_t>(n + 1)];
  const BigInt& mid = window[static_cast<std::size_t>(n)];
  const BigInt down = n >= 1 ? window[static_cast<std::size_t>(n - 1)] : lucas(k, n - 1);
  for (long x = x_lo; x <= seg.x.hi; ++x) {
    const auto [lo, hi] = m_bounds(x);
    if (lo > hi) continue;
    const BigInt value = power_of(up, x) + power_of(mid, x) - power_of(down, x);
    std::vector<std::uint64_t> residues;
    for (const auto& f : filters) residues.push_back(mod_u(value, f.modulus));
    for (long m = lo; m <= hi; ++m) {
      bool pass = true;
      for (std::size_t i = 0; i < filters.size() && pass; ++i) {
        const auto& cyc = filters[i].cycle;
        pass = cyc[static_cast<std::size_t>(m) % cyc.size()] == residues[i];
      }
      if (!pass) continue;
      if (window[static_cast<std::size_t>(m)] == value) {
        out.push_back({k, n, m, x, value, certificate_of(value)});
      }
    }
  }
  return out;
}

std::vector<Filter> filters_for(const SearchConfig& cfg, long k) {
  std::vector<Filter> fs;
  std::vector<std::uint64_t> moduli;
  if (cfg.parity_filter) moduli.push_back(2);
  if (cfg.modular_filter) moduli.push_back(5);
  for (auto mod : moduli) {
    if (auto cyc = residue_cycle(k, mod, 100'000)) fs.push_back({mod, std::move(*cyc)});
  }
  return fs;
}

json range_json(const IntRange& r) { return json::array({r.lo, r.hi}); }

const char* to_string(NBound b) {
  switch (b) {
    case NBound::Absolute: return "absolute";
    case NBound::AtMostK: return "at-most-k";
    case NBound::AboveK: return "above-k";
  }
  return "absolute";
}

json config_json(const SearchConfig& cfg, bool with_runtime) {
  json segs = json::array();
  for (const auto& s : cfg.segments) {
    json j{{"k", range_json(s.k)}, {"n", range_json(s.n)}, {"x", range_json(s.x)},
           {"n_bound", to_string(s.n_bound)}};
    j["m"] = s.m ? range_json(*s.m) : json(nullptr);
    segs.push_back(j);
  }
  json j{{"segments", segs},
         {"modular_filter", cfg.modular_filter},
         {"parity_filter", cfg.parity_filter}};
  if (with_runtime) {
    j["batch_size"] = cfg.batch_size;
    j["jobs"] = cfg.jobs;
    j["max_blocks"] = cfg.max_blocks ? json(*cfg.max_blocks) : json(nullptr);
  }
  return j;
}

using BlockKey = std::tuple<std::size_t, long, long>;

std::map<BlockKey, std::vector<SolutionRecord>> read_journal(const std::string& path,
                                                             const std::string& digest) {
  std::map<BlockKey, std::vector<SolutionRecord>> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) break;  // torn final line
    if (!header) {
      if (!j.contains("config") || j["config"] != digest) {
        throw DomainError("journal " + path + " belongs to a different search configuration");
      }
      header = true;
      continue;
    }
    BlockKey key{j.at("seg").get<std::size_t>(), j.at("k").get<long>(), j.at("n").get<long>()};
    std::vector<SolutionRecord> recs;
    for (const auto& mx : j.at("sol")) {
      const long m = mx.at(0).get<long>(), x = mx.at(1).get<long>();
      auto r = verify_solution(std::get<1>(key), std::get<2>(key), m, x);
      if (!r) throw DomainError("journal " + path + " contains a record that does not verify");
      recs.push_back(std::move(*r));
    }
    done[key] = std::move(recs);
  }
  return done;
}

}  // namespace

IntRange parse_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const long v = std::stol(text, &used);
      if (used != text.size()) throw DomainError("");
      return {v, v};
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    IntRange r{std::stol(a, &used), 0};
    if (used != a.size()) throw DomainError("");
    r.hi = std::stol(b, &used);
    if (used != b.size() || r.hi < r.lo) throw DomainError("");
    return r;
  } catch (const std::exception&) {
    throw DomainError("bad range '" + text + "', expected a..b");
  }
}

void validate(const SearchConfig& cfg) {
  if (cfg.segments.empty()) throw DomainError("search needs at least one segment");
  for (const auto& s : cfg.segments) {
    if (s.k.lo > s.k.hi || s.n.lo > s.n.hi || s.x.lo > s.x.hi) {
      throw DomainError("search ranges must be nonempty");
    }
    if (s.m && s.m->lo > s.m->hi) throw DomainError("search ranges must be nonempty");
    if (s.k.lo < 2) throw DomainError("k range must start at 2 or above");
    if (s.n.hi < 0 || s.x.hi < 0) throw DomainError("n and x ranges must reach nonnegative values");
  }
  if (cfg.batch_size == 0) throw DomainError("batch_size must be positive");
  if (cfg.jobs == 0) throw DomainError("jobs must be positive");
}

SearchConfig preset(const std::string& name) {
  SearchConfig cfg;
  if (name == "desk") return cfg;
  if (name == "paper-full") {
    cfg.segments = {
        SearchSegment{{2, 800}, {0, 800}, {1, 1119}, IntRange{3, 5597}, NBound::AtMostK},
        SearchSegment{{2, 800}, {0, 800}, {2, 736}, std::nullopt, NBound::AboveK},
        SearchSegment{{2, 800}, {801, 1278}, {2, 1722}, std::nullopt, NBound::AboveK},
    };
    cfg.batch_size = 1;
    return cfg;
  }
  throw DomainError("unknown preset '" + name + "' (expected desk or paper-full)");
}

bool record_less(const SolutionRecord& a, const SolutionRecord& b) {
  return std::tie(a.k, a.n, a.x, a.m) < std::tie(b.k, b.n, b.x, b.m);
}

std::string digest_of(const std::string& text) { return "fnv1a64:" + hex64(fnv1a64(text)); }

std::string certificate_of(const BigInt& value) { return digest_of(value.get_str()); }

std::optional<SolutionRecord> verify_solution(long k, long n, long m, long x) {
  const EquationInstance inst{k, n, m, x};
  validate(inst);
  BigInt value = lhs(inst);
  if (value != lucas(k, m)) return std::nullopt;
  std::string cert = certificate_of(value);
  return SolutionRecord{k, n, m, x, std::move(value), std::move(cert)};
}

std::vector<SolutionRecord> trivial_solutions(IntRange k_range, long n_cap) {
  if (k_range.lo < 2 || k_range.lo > k_range.hi) throw DomainError("bad k range");
  if (n_cap < 0) throw DomainError("n_cap must be nonnegative");
  std::vector<SolutionRecord> out;
  for (long k = k_range.lo; k <= k_range.hi; ++k) {
    for (long n = 0; n <= n_cap; ++n) {
      for (long m = 0; m <= 2; ++m) {
        if (auto r = verify_solution(k, n, m, 0)) out.push_back(std::move(*r));
      }
      for (long m = std::max(n - 2, 0L); m <= n + 5; ++m) {
        if (auto r = verify_solution(k, n, m, 1)) out.push_back(std::move(*r));
      }
    }
  }
  std::sort(out.begin(), out.end(), record_less);
  return out;
}

ModularClasses modular_filter(long k, long n, long x, std::uint64_t modulus,
                              std::uint64_t period_cap) {
  if (modulus < 2) throw DomainError("modulus must be at least 2");
  validate(EquationInstance{k, n, 0, x});
  ModularClasses mc;
  mc.modulus = modulus;
  mc.lhs_residue = mod_u(lhs(EquationInstance{k, n, 0, x}), modulus);
  if (auto cyc = residue_cycle(k, modulus, period_cap)) {
    mc.period = cyc->size();
    for (std::uint64_t r = 0; r < cyc->size(); ++r) {
      if ((*cyc)[r] == mc.lhs_residue) mc.admissible.push_back(r);
    }
  }
  return mc;
}

std::vector<SolutionRecord> exhaustive_search(const SearchConfig& cfg) {
  validate(cfg);
  const auto blocks = enumerate_blocks(cfg);
  const std::string digest = config_digest(cfg);

  std::map<BlockKey, std::vector<SolutionRecord>> done;
  std::ofstream journal;
  if (!cfg.journal_path.empty()) {
    done = read_journal(cfg.journal_path, digest);
    const bool fresh = !std::ifstream(cfg.journal_path).good() || done.empty();
    if (fresh) {
      journal.open(cfg.journal_path, std::ios::trunc);
      journal << json{{"config", digest}}.dump() << '\n';
    } else {
      journal.open(cfg.journal_path, std::ios::app);
    }
    journal.flush();
    if (!journal) throw DomainError("cannot write journal " + cfg.journal_path);
  }

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!done.count({blocks[i].segment, blocks[i].k, blocks[i].n})) todo.push_back(i);
  }

  std::vector<std::vector<SolutionRecord>> found(blocks.size());
  std::atomic<std::size_t> next{0}, started{0};
  std::mutex mu;
  std::exception_ptr failure;
  const std::size_t budget = cfg.max_blocks.value_or(todo.size());
  std::map<long, std::vector<Filter>> filter_cache;

  auto filters = [&](long k) -> const std::vector<Filter>& {
    std::lock_guard<std::mutex> lock(mu);
    auto it = filter_cache.find(k);
    if (it == filter_cache.end()) it = filter_cache.emplace(k, filters_for(cfg, k)).first;
    return it->second;
  };

  auto worker = [&] {
    try {
      for (;;) {
        const std::size_t b0 = next.fetch_add(cfg.batch_size);
        if (b0 >= todo.size()) return;
        const std::size_t b1 = std::min(todo.size(), b0 + cfg.batch_size);
        for (std::size_t t = b0; t < b1; ++t) {
          if (started.fetch_add(1) >= budget) return;
          const Block& blk = blocks[todo[t]];
          auto recs = run_block(cfg.segments[blk.segment], blk.k, blk.n, filters(blk.k));
          if (journal.is_open()) {
            json sol = json::array();
            for (const auto& r : recs) sol.push_back(json::array({r.m, r.x}));
            std::lock_guard<std::mutex> lock(mu);
            journal << json{{"seg", blk.segment}, {"k", blk.k}, {"n", blk.n}, {"sol", sol}}.dump()
                    << '\n';
            journal.flush();
          }
          found[todo[t]] = std::move(recs);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
      next = todo.size();
    }
  };

  std::vector<std::thread> pool;
  for (unsigned j = 1; j < cfg.jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  if (budget < todo.size()) {
    throw ResourceLimitError("block budget of " + std::to_string(budget) + " exhausted with " +
                             std::to_string(todo.size() - budget) + " blocks left" +
                             (cfg.journal_path.empty() ? std::string()
                                                       : "; resume from " + cfg.journal_path));
  }

  std::vector<SolutionRecord> out;
  for (auto& [key, recs] : done) out.insert(out.end(), recs.begin(), recs.end());
  for (auto& recs : found) out.insert(out.end(), recs.begin(), recs.end());
  std::sort(out.begin(), out.end(), record_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_json_line(const SolutionRecord& r) {
  return json{{"k", r.k},
              {"n", r.n},
              {"m", r.m},
              {"x", r.x},
              {"lhs_value", r.lhs_value.get_str()},
              {"certificate", r.certificate}}
      .dump();
}

std::string to_json(const SearchConfig& cfg) { return config_json(cfg, true).dump(); }

std::string config_digest(const SearchConfig& cfg) {
  return digest_of(config_json(cfg, false).dump());
}

}  // namespace klucas
