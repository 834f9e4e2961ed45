#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "klucas/algebraic.hpp"
#include "klucas/contfrac.hpp"
#include "klucas/errors.hpp"
#include "klucas/linforms.hpp"
#include "klucas/reduction.hpp"
#include "klucas/search.hpp"
#include "klucas/seq.hpp"
#include "manifest.hpp"

namespace klucas::cli {

using nlohmann::json;

namespace {

constexpr const char* kPrecEnv = "KLUCAS_PREC";

RunManifest start(std::string command, json inputs, long precision) {
  RunManifest m;
  m.command = std::move(command);
  m.inputs = std::move(inputs);
  m.precision = precision;
  m.started = utc_now();
  return m;
}

void emit(const GlobalOptions& g, RunManifest& m, const std::string& file, const std::string& text) {
  std::cout << text;
  write_output(g.out_dir, file, text, m);
}

// ---- eval ----

struct EvalOptions {
  long k = 2;
  long n = 0;
  long n_max = 0;
  long x = 1;
  bool lhs = false;
};

void run_eval(const EvalOptions& o, const CLI::App& sub, const GlobalOptions& g) {
  RunManifest m = start("eval", {}, 0);
  const bool has_n = sub.count("--n") > 0, has_max = sub.count("--n-max") > 0;
  if (has_n == has_max) throw DomainError("eval needs exactly one of --n and --n-max");
  std::ostringstream out;
  if (o.lhs) {
    if (!has_n || sub.count("--x") == 0) throw DomainError("--lhs needs --n and --x");
    m.inputs = {{"k", o.k}, {"n", o.n}, {"x", o.x}, {"lhs", true}};
    out << lhs(EquationInstance{o.k, o.n, 0, o.x}).get_str() << '\n';
  } else if (has_n) {
    m.inputs = {{"k", o.k}, {"n", o.n}};
    out << lucas(o.k, o.n).get_str() << '\n';
  } else {
    m.inputs = {{"k", o.k}, {"n_max", o.n_max}};
    const auto w = lucas_window(o.k, o.n_max);
    for (std::size_t i = 0; i < w.size(); ++i) out << i << '\t' << w[i].get_str() << '\n';
  }
  emit(g, m, "eval.txt", out.str());
  write_manifest(g.out_dir, std::move(m));
}

// ---- search ----

struct SearchOptions {
  std::string preset_name;
  std::string k, n, x, m;
  unsigned jobs = 1;
  std::size_t batch_size = 4;
  std::size_t max_blocks = 0;
  std::string resume;
  bool no_modular = false;
  bool no_parity = false;
};

void run_search(const SearchOptions& o, const GlobalOptions& g) {
  RunManifest man = start("search", {}, 0);
  const bool explicit_ranges = !o.k.empty() || !o.n.empty() || !o.x.empty() || !o.m.empty();
  if (!o.preset_name.empty() && explicit_ranges) {
    throw DomainError("use either --preset or explicit ranges, not both");
  }
  SearchConfig cfg = preset(o.preset_name.empty() ? "desk" : o.preset_name);
  if (explicit_ranges) {
    SearchSegment& s = cfg.segments.front();
    if (!o.k.empty()) s.k = parse_range(o.k);
    if (!o.n.empty()) s.n = parse_range(o.n);
    if (!o.x.empty()) s.x = parse_range(o.x);
    if (!o.m.empty()) s.m = parse_range(o.m);
  }
  cfg.jobs = o.jobs;
  cfg.batch_size = o.batch_size;
  cfg.modular_filter = !o.no_modular;
  cfg.parity_filter = !o.no_parity;
  if (o.max_blocks > 0) cfg.max_blocks = o.max_blocks;
  std::filesystem::create_directories(g.out_dir);
  if (o.resume.empty()) {
    cfg.journal_path = (g.out_dir / "progress.journal").string();
    std::filesystem::remove(cfg.journal_path);
  } else {
    cfg.journal_path = o.resume;
  }
  man.inputs = json::parse(to_json(cfg));
  man.inputs.erase("jobs");
  man.inputs.erase("batch_size");
  man.inputs.erase("max_blocks");
  man.outputs.push_back("progress.journal");
  std::vector<SolutionRecord> recs;
  try {
    recs = exhaustive_search(cfg);
  } catch (const ResourceLimitError&) {
    man.status = "incomplete";
    write_manifest(g.out_dir, man);
    throw;
  }
  std::string text;
  for (const auto& r : recs) text += to_json_line(r) + '\n';
  emit(g, man, "results.jsonl", text);
  write_manifest(g.out_dir, std::move(man));
}

// ---- reduce ----

struct ReduceOptions {
  std::string spec_file;
  std::string form = "L1";
  std::string k = "2";
  long x = 0, n = 0, delta = 0;
  std::string C, c3, c4, abound;
  long prec = kDefaultPrecision;
  long prec_cap = 1L << 15;
  bool no_merge = false;
  unsigned jobs = 1;
};

json summary(const ReductionResult& r) {
  json j = json::parse(to_json(r));
  j["k"] = r.spec.k;
  return j;
}

void run_reduce(const ReduceOptions& o, const CLI::App& sub, const GlobalOptions& g) {
  ReductionSpec spec;
  if (!o.spec_file.empty()) {
    std::ifstream in(o.spec_file);
    if (!in) throw DomainError("cannot read " + o.spec_file);
    std::stringstream ss;
    ss << in.rdbuf();
    spec = spec_from_json(ss.str());
  }
  auto given = [&](const char* flag) { return sub.count(flag) > 0 || o.spec_file.empty(); };
  if (given("--form")) spec.form = parse_reduction_form(o.form);
  if (sub.count("--x")) spec.x = o.x;
  if (sub.count("--n")) spec.n = o.n;
  if (sub.count("--delta")) spec.delta = o.delta;
  if (sub.count("--C")) spec.C = o.C;
  if (sub.count("--c3")) spec.c3 = o.c3;
  if (sub.count("--c4")) spec.c4 = o.c4;
  if (sub.count("--abound")) spec.abound = o.abound;
  if (given("--prec") || std::getenv(kPrecEnv)) spec.prec = o.prec;
  if (given("--prec-cap")) spec.prec_cap = o.prec_cap;
  if (o.no_merge) spec.merge_k2 = false;
  IntRange ks{spec.k, spec.k};
  if (given("--k")) ks = parse_range(o.k);
  if (ks.lo > ks.hi) throw DomainError("empty k range");

  RunManifest man = start("reduce", {}, static_cast<long>(spec.prec));
  spec.k = ks.lo;
  man.inputs = json::parse(to_json(spec));
  man.inputs["k_range"] = json::array({ks.lo, ks.hi});

  if (ks.lo == ks.hi) {
    const ReductionResult r = run_reduction(spec);
    man.precision = static_cast<long>(r.precision_used);
    emit(g, man, "reduce.json", to_json(r) + "\n");
    write_manifest(g.out_dir, man);
    if (!r.outcome.condition_holds) {
      throw ConditionError("c1^2 < T^2 + S for this instance; raise --C and retry");
    }
    return;
  }

  const std::size_t count = static_cast<std::size_t>(ks.hi - ks.lo + 1);
  std::vector<json> rows(count);
  std::vector<std::string> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      ReductionSpec s = spec;
      s.k = ks.lo + static_cast<long>(i);
      try {
        rows[i] = summary(run_reduction(s));
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::max(1u, o.jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json out{{"form", to_string(spec.form)}, {"k_range", json::array({ks.lo, ks.hi})}};
  json per_k = json::array();
  bool all_hold = true;
  std::optional<BigInt> max_bound;
  long max_prec = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (!errors[i].empty()) {
      all_hold = false;
      per_k.push_back({{"k", ks.lo + static_cast<long>(i)}, {"error", errors[i]}});
      continue;
    }
    const json& r = rows[i];
    per_k.push_back({{"k", r["k"]},
                     {"dim", r["dim"]},
                     {"precision_used", r["precision_used"]},
                     {"c1_lower", r["c1_lower"]},
                     {"condition_holds", r["condition_holds"]},
                     {"H_bound", r["H_bound"]},
                     {"variable_bound", r["variable_bound"]}});
    max_prec = std::max(max_prec, r["precision_used"].get<long>());
    if (!r["condition_holds"].get<bool>()) {
      all_hold = false;
      continue;
    }
    const BigInt b(r["variable_bound"].get<std::string>());
    if (!max_bound || b > *max_bound) max_bound = b;
  }
  out["per_k"] = per_k;
  out["bounded_variable"] = rows.front().is_null() ? json(nullptr) : rows.front()["bounded_variable"];
  out["sweep_max_bound"] = max_bound ? json(max_bound->get_str()) : json(nullptr);
  out["all_conditions_hold"] = all_hold;
  man.precision = max_prec;
  emit(g, man, "reduce.json", out.dump(2) + "\n");
  write_manifest(g.out_dir, man);
  if (!all_hold) throw ConditionError("some k in the sweep failed; raise --C for those entries");
}

// ---- cf ----

struct CfOptions {
  std::string value = "log3/log2";
  std::size_t count = 188;
  long prec = 1024;
  std::string denom_bound;
  bool minima = false;
  std::string k_threshold = "inf";
  std::string coef = "8";
  std::string rate = "0.72";
};

Interval cf_target(const std::string& name, Precision p) {
  if (name == "log3/log2") return log3_over_log2(p);
  if (name == "golden") return (sqrt(Interval::from_int(5, p)) + 1) / 2;
  throw DomainError("unknown value '" + name + "' (expected log3/log2 or golden)");
}

json refutation_json(double kt, SmallXVariant v, const SmallXRegime& reg, Precision p) {
  json rows = json::array();
  bool all = true;
  for (const auto& r : small_x_refutation(kt, v, reg, 2, 10, p)) {
    rows.push_back({{"x", r.x}, {"refuted", r.refuted}, {"rhs_upper", r.rhs.hi_string(8)}});
    all = all && r.refuted;
  }
  return {{"rows", rows}, {"all_refuted", all}};
}

void run_cf(const CfOptions& o, const GlobalOptions& g) {
  const auto p = static_cast<Precision>(o.prec);
  RunManifest man = start("cf", {}, o.prec);
  man.inputs = {{"value", o.value}, {"count", o.count}, {"prec", o.prec},
                {"denom_bound", o.denom_bound}, {"minima", o.minima}};
  if (o.count == 0) throw DomainError("--count must be positive");
  const CFExpansion cf = cf_expand(cf_target(o.value, p), o.count);
  json q = json::array();
  BigInt a_max = 0;
  std::size_t a_max_at = 0;
  for (std::size_t i = 0; i < cf.quotients.size(); ++i) {
    q.push_back(cf.quotients[i].get_str());
    if (cf.quotients[i] > a_max) {
      a_max = cf.quotients[i];
      a_max_at = i;
    }
  }
  json out{{"value", o.value}, {"precision", o.prec}, {"count", cf.quotients.size()},
           {"quotients", q}, {"max_quotient", a_max.get_str()}, {"max_quotient_index", a_max_at}};
  json checks = json::array();
  for (auto [idx, e] : {std::pair{97UL, 47UL}, std::pair{187UL, 89UL}}) {
    if (idx >= cf.convergents.size()) continue;
    const BigInt& qi = cf.convergents[idx].second;
    checks.push_back({{"index", idx}, {"q", qi.get_str()}, {"exceeds_power_of_ten", e},
                      {"holds", qi > pow10(e)}});
  }
  out["denominator_checks"] = checks;
  const BigInt& qN = cf.convergents.back().second;
  const BigInt bound = o.denom_bound.empty()
                           ? pow10(static_cast<unsigned long>(qN.get_str().size() - 1))
                           : parse_bigint(o.denom_bound);
  out["legendre"] = {{"denom_bound", bound.get_str()},
                     {"coefficient", legendre_gap(cf, bound).get_str()}};
  if (o.minima) {
    json mins = json::array();
    for (long x = 2; x <= 10; ++x) {
      const TwoLogMin mn = min_two_log_form(x, p);
      const auto f2 = (mn.value * 100).certified_floor();
      std::string two_dec = "?";
      if (f2) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%ld.%02ld", f2->get_si() / 100, f2->get_si() % 100);
        two_dec = buf;
      }
      mins.push_back({{"x", x}, {"z", mn.z.get_str()}, {"value", mn.value.mid_string(12)},
                      {"floor_2dp", two_dec}});
    }
    out["minima"] = mins;
    const double kt = o.k_threshold == "inf" ? INFINITY : std::stod(o.k_threshold);
    const SmallXRegime reg{parse_decimal(o.coef), parse_decimal(o.rate)};
    out["refutation"] = {{"k_threshold", o.k_threshold},
                         {"coef", o.coef},
                         {"rate", o.rate},
                         {"n_at_least_3", refutation_json(kt, SmallXVariant::NAtLeast3, reg, p)},
                         {"n_1", refutation_json(kt, SmallXVariant::N1, reg, p)},
                         {"n_2", refutation_json(kt, SmallXVariant::N2, reg, p)}};
  }
  emit(g, man, "cf.json", out.dump(2) + "\n");
  write_manifest(g.out_dir, std::move(man));
}

// ---- bounds ----

struct BoundsOptions {
  long k = 2;
  long n = 0;
  std::string m;
  long prec = kDefaultPrecision;
};

json opt_hi(const std::optional<Interval>& v) { return v ? json(v->hi_string(6)) : json(nullptr); }

void run_bounds(const BoundsOptions& o, const CLI::App& sub, const GlobalOptions& g) {
  const auto p = static_cast<Precision>(o.prec);
  RunManifest man = start("bounds", {}, o.prec);
  std::optional<long> n;
  std::optional<Interval> m;
  if (sub.count("--n")) n = o.n;
  if (!o.m.empty()) m = Interval::from_q(parse_decimal(o.m), p);
  man.inputs = {{"k", o.k}, {"n", n ? json(*n) : json(nullptr)}, {"m", o.m}, {"prec", o.prec}};
  const EnvelopeBounds e = envelope_bounds(o.k, n, m, p);
  json out{{"k", o.k}};
  out["small_n"] = {{"x_upper", opt_hi(e.x_small_n)},
                    {"m_upper", e.m_small_n.hi_string(6)},
                    {"m_below_2^0.28k", e.m_small_n_below_2_028k}};
  out["large_n"] = {{"x_upper_in_n", opt_hi(e.x_large_n)},
                    {"n_upper", e.n_large_n.hi_string(6)},
                    {"x_upper", e.x_large_n_k.hi_string(6)},
                    {"m_upper", e.m_large_n.hi_string(6)},
                    {"n_below_2^0.24k", e.n_large_n_below_2_024k},
                    {"m_below_2^0.39k", e.m_large_n_below_2_039k}};
  const Interval mm = m ? *m : e.m_small_n;
  const MatveevInput mi = gamma1_matveev_input(o.k, mm, p);
  out["matveev"] = {{"m", mm.hi_string(6)},
                    {"lower_log", matveev_lower(mi).lo_string(8)},
                    {"x_upper", matveev_x_bound(o.k, mm, p).hi_string(8)}};
  emit(g, man, "bounds.json", out.dump(2) + "\n");
  write_manifest(g.out_dir, std::move(man));
}

// ---- roots ----

struct RootsOptions {
  long k = 3;
  long prec = kDefaultPrecision;
};

void run_roots(const RootsOptions& o, const GlobalOptions& g) {
  const auto p = static_cast<Precision>(o.prec);
  RunManifest man = start("roots", {{"k", o.k}, {"prec", o.prec}}, o.prec);
  const AlgebraicContext ctx = build_context_escalating(o.k, p);
  const Precision w = ctx.working;
  json others = json::array();
  for (const auto& r : ctx.other_roots) others.push_back(r.to_string(16));
  const Interval lower = 2 * (1 - pow(Interval::from_int(2, w), -o.k));
  const bool alpha_ok = lower.certainly_less(ctx.alpha) &&
                        ctx.alpha.certainly_less(Interval::from_int(2, w));
  const bool f_ok = Interval::from_q(Rational(1, 2), w).certainly_less(ctx.fk_alpha) &&
                    mpfr_lessequal_p(ctx.fk_alpha.hi().get(),
                                     Interval::from_q(Rational(3, 4), w).lo().get());
  BigInt two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(o.k + 1));
  const BigInt n2a = norm_2alpha_minus_1(ctx);
  const Rational nf = norm_fk(ctx);
  const Rational nf_closed = norm_fk_closed_form(o.k);
  Rational abs_nf = nf;
  if (abs_nf < 0) abs_nf = -abs_nf;
  json mp = json::array();
  for (const auto& c : minpoly_fk(o.k)) mp.push_back(c.get_str());
  json out{{"k", o.k},
           {"precision", static_cast<long>(ctx.prec)},
           {"alpha", ctx.alpha.to_string(30)},
           {"other_roots", others},
           {"alpha_in_2(1-2^-k)..2", alpha_ok},
           {"f_alpha", ctx.fk_alpha.to_string(20)},
           {"f_alpha_in_(1/2,3/4]", f_ok},
           {"norm_2alpha_minus_1", n2a.get_str()},
           {"abs_norm_2alpha_minus_1_matches", abs(n2a) == two_pow - 3},
           {"norm_f", nf.get_str()},
           {"norm_f_closed_form", nf_closed.get_str()},
           {"abs_norm_f_matches", abs_nf == nf_closed},
           {"minpoly_f", mp},
           {"height_f", height_fk_exact(ctx).to_string(12)},
           {"height_f_bound", height_fk_bound(o.k, w).hi_string(12)}};
  man.precision = static_cast<long>(ctx.prec);
  emit(g, man, "roots.json", out.dump(2) + "\n");
  write_manifest(g.out_dir, std::move(man));
}

}  // namespace

void add_eval(CLI::App& app, const GlobalOptions& g) {
  auto o = std::make_shared<EvalOptions>();
  auto* sub = app.add_subcommand("eval", "Exact L_n, a table of L_0..L_N, or the left-hand side");
  sub->add_option("--k", o->k, "Order k >= 2")->required();
  sub->add_option("--n", o->n, "Index n");
  sub->add_option("--n-max", o->n_max, "Print L_0 .. L_{n-max}");
  sub->add_option("--x", o->x, "Exponent for --lhs");
  sub->add_flag("--lhs", o->lhs, "Print (L_{n+1})^x + (L_n)^x - (L_{n-1})^x");
  sub->final_callback([o, sub, &g] { run_eval(*o, *sub, g); });
}

void add_search(CLI::App& app, const GlobalOptions& g) {
  auto o = std::make_shared<SearchOptions>();
  auto* sub = app.add_subcommand("search", "Exhaustive solution search");
  sub->add_option("--preset", o->preset_name, "desk or paper-full");
  sub->add_option("--k", o->k, "k range a..b");
  sub->add_option("--n", o->n, "n range a..b");
  sub->add_option("--x", o->x, "x range a..b");
  sub->add_option("--m", o->m, "explicit m range a..b (intersected with the derived one)");
  sub->add_option("--jobs", o->jobs, "Worker threads")->capture_default_str();
  sub->add_option("--batch-size", o->batch_size, "(k, n) blocks per work unit")
      ->capture_default_str();
  sub->add_option("--max-blocks", o->max_blocks, "Stop after this many blocks (0 = no limit)");
  sub->add_option("--resume", o->resume, "Progress journal to resume from");
  sub->add_flag("--no-modular-filter", o->no_modular, "Disable the mod 5 filter");
  sub->add_flag("--no-parity-filter", o->no_parity, "Disable the mod 2 filter");
  sub->final_callback([o, &g] { run_search(*o, g); });
}

void add_reduce(CLI::App& app, const GlobalOptions& g) {
  auto o = std::make_shared<ReduceOptions>();
  auto* sub = app.add_subcommand("reduce", "Lattice reduction of a linear form in logarithms");
  sub->add_option("--spec", o->spec_file, "JSON reduction spec; flags override its fields");
  sub->add_option("--form", o->form, "L1, L1s, L2, L3, L4 or L5")->capture_default_str();
  sub->add_option("--k", o->k, "k or a range a..b (sweep)")->capture_default_str();
  sub->add_option("--x", o->x, "x for L2 and L5");
  sub->add_option("--n", o->n, "n for L3");
  sub->add_option("--delta", o->delta, "2, 3 or 6 for L1s");
  sub->add_option("--C", o->C, "Scaling constant, e.g. 1e331");
  sub->add_option("--c3", o->c3, "Decimal c3");
  sub->add_option("--c4", o->c4, "ln<decimal>, lnalpha or a decimal");
  sub->add_option("--abound", o->abound, "Coefficient bound A");
  sub->add_option("--prec", o->prec, "Starting precision in bits")
      ->envname(kPrecEnv)
      ->capture_default_str();
  sub->add_option("--prec-cap", o->prec_cap, "Largest precision tried")->capture_default_str();
  sub->add_flag("--no-merge", o->no_merge, "Keep log f and log(2a-1) separate for k = 2");
  sub->add_option("--jobs", o->jobs, "Worker threads for sweeps")->capture_default_str();
  sub->final_callback([o, sub, &g] { run_reduce(*o, *sub, g); });
}

void add_cf(CLI::App& app, const GlobalOptions& g) {
  auto o = std::make_shared<CfOptions>();
  auto* sub = app.add_subcommand("cf", "Certified continued fraction expansion");
  sub->add_option("value", o->value, "log3/log2 or golden")->capture_default_str();
  sub->add_option("--count", o->count, "Number of partial quotients")->capture_default_str();
  sub->add_option("--prec", o->prec, "Precision in bits")->envname(kPrecEnv)->capture_default_str();
  sub->add_option("--denom-bound", o->denom_bound, "Denominator bound for the Legendre gap");
  sub->add_flag("--minima", o->minima, "Add the two-logarithm minima and small-x refutation");
  sub->add_option("--k-threshold", o->k_threshold, "k for the 2^{-rate k} term, or inf")
      ->capture_default_str();
  sub->add_option("--coef", o->coef, "Coefficient of the 2^{-rate k} term")->capture_default_str();
  sub->add_option("--rate", o->rate, "Rate of the 2^{-rate k} term")->capture_default_str();
  sub->final_callback([o, &g] { run_cf(*o, g); });
}

void add_bounds(CLI::App& app, const GlobalOptions& g) {
  auto o = std::make_shared<BoundsOptions>();
  auto* sub = app.add_subcommand("bounds", "Closed-form envelopes and the Matveev x-bound");
  sub->add_option("--k", o->k, "Order k")->required();
  sub->add_option("--n", o->n, "n for the n-dependent x envelope");
  sub->add_option("--m", o->m, "m for the x envelopes (decimal)");
  sub->add_option("--prec", o->prec, "Precision in bits")->envname(kPrecEnv)->capture_default_str();
  sub->final_callback([o, sub, &g] { run_bounds(*o, *sub, g); });
}

void add_roots(CLI::App& app, const GlobalOptions& g) {
  auto o = std::make_shared<RootsOptions>();
  auto* sub = app.add_subcommand("roots", "Certified roots, norms and heights");
  sub->add_option("--k", o->k, "Order k")->required();
  sub->add_option("--prec", o->prec, "Precision in bits")->envname(kPrecEnv)->capture_default_str();
  sub->final_callback([o, &g] { run_roots(*o, g); });
}

}  // namespace klucas::cli
