#include "klucas/reduction.hpp"

#include "json.hpp"

#include "klucas/errors.hpp"
#include "klucas/seq.hpp"

namespace klucas {

using nlohmann::json;

std::string to_string(ReductionForm f) {
  switch (f) {
    case ReductionForm::L1: return "L1";
    case ReductionForm::L1s: return "L1s";
    case ReductionForm::L2: return "L2";
    case ReductionForm::L3: return "L3";
    case ReductionForm::L4: return "L4";
    case ReductionForm::L5: return "L5";
  }
  return "?";
}

ReductionForm parse_reduction_form(const std::string& s) {
  for (auto f : {ReductionForm::L1, ReductionForm::L1s, ReductionForm::L2, ReductionForm::L3,
                 ReductionForm::L4, ReductionForm::L5}) {
    if (to_string(f) == s) return f;
  }
  throw DomainError("unknown reduction form '" + s + "' (expected L1, L1s, L2, L3, L4 or L5)");
}

namespace {

bool small_n_L3(const ReductionSpec& s) { return s.n && *s.n <= 800; }

void check_spec(const ReductionSpec& s) {
  if (s.k < 2) throw DomainError("order k must be at least 2");
  switch (s.form) {
    case ReductionForm::L1s:
      if (!s.delta || (*s.delta != 2 && *s.delta != 3 && *s.delta != 6)) {
        throw DomainError("L1s needs delta in {2, 3, 6}");
      }
      break;
    case ReductionForm::L2:
      if (!s.x || *s.x < 1) throw DomainError("L2 needs x >= 1");
      break;
    case ReductionForm::L5:
      if (!s.x || *s.x < 1) throw DomainError("L5 needs x >= 1");
      break;
    case ReductionForm::L3:
      if (!s.n || *s.n <= s.k) throw DomainError("L3 needs n > k");
      break;
    default:
      break;
  }
}

// c4 accepts "ln<decimal>", "lnalpha" or a plain decimal.
Interval parse_c4(const std::string& text, const AlgebraicContext& ctx) {
  const Precision p = ctx.working;
  std::string t = text;
  for (const char* prefix : {"ln", "log"}) {
    const std::string pre(prefix);
    if (t.rfind(pre, 0) == 0) {
      std::string arg = t.substr(pre.size());
      if (!arg.empty() && arg.front() == '(' && arg.back() == ')') arg = arg.substr(1, arg.size() - 2);
      if (arg == "alpha" || arg == "a") return ctx.log_alpha;
      Interval v = Interval::from_decimal(arg, p);
      return log(v);
    }
  }
  return Interval::from_decimal(t, p);
}

BigInt coefficient_bound(const Interval& A) {
  BigInt b;
  mpfr_get_z(b.get_mpz_t(), A.hi().get(), MPFR_RNDD);
  return b;
}

}  // namespace

ReductionSpec with_defaults(ReductionSpec s) {
  check_spec(s);
  auto fill = [](std::string& field, const char* v) {
    if (field.empty()) field = v;
  };
  switch (s.form) {
    case ReductionForm::L1:
      fill(s.C, "1e331"); fill(s.c3, "4.5"); fill(s.c4, "ln2");
      break;
    case ReductionForm::L1s:
      fill(s.C, "1e265"); fill(s.c3, "4.5"); fill(s.c4, "ln1.5");
      break;
    case ReductionForm::L2:
      fill(s.C, "1e396"); fill(s.c3, "3"); fill(s.c4, "lnalpha");
      break;
    case ReductionForm::L3:
      fill(s.C, small_n_L3(s) ? "1e145" : "1e335"); fill(s.c3, "1.5"); fill(s.c4, "ln1.4");
      break;
    case ReductionForm::L4:
      fill(s.C, "1e252"); fill(s.c3, "40.5"); fill(s.c4, "lnalpha");
      break;
    case ReductionForm::L5:
      fill(s.C, "1e335"); fill(s.c3, "4.5"); fill(s.c4, "lnalpha");
      break;
  }
  return s;
}

Interval default_abound(const ReductionSpec& s, Precision prec) {
  if (!s.abound.empty()) return Interval::from_decimal(s.abound, prec);
  const Interval K = Interval::from_int(s.k, prec);
  const Interval lk = log(K);
  switch (s.form) {
    case ReductionForm::L1:
    case ReductionForm::L1s:
    case ReductionForm::L2:
      return Interval::from_decimal("6.3e32", prec) * pow(K, 10) * pow(lk, 5);
    case ReductionForm::L3:
      if (small_n_L3(s)) return Interval::from_decimal("1.4e36", prec);
      [[fallthrough]];
    case ReductionForm::L4:
    case ReductionForm::L5:
      return Interval::from_decimal("5.6e44", prec) * pow(K, 10) * pow(lk, 12);
  }
  return Interval(prec);
}

ReductionInstance make_instance(const ReductionSpec& spec_in, const AlgebraicContext& ctx,
                                std::vector<std::string>* names) {
  const ReductionSpec s = with_defaults(spec_in);
  if (ctx.k != s.k) throw DomainError("context built for a different k");
  const Precision p = ctx.working;
  const BigInt A = coefficient_bound(default_abound(s, p));
  const bool merged = s.merge_k2 && s.k == 2;

  std::vector<std::pair<std::string, Interval>> cols;
  std::vector<BigInt> bounds;
  if (merged) {
    cols.emplace_back("log a", ctx.log_alpha);
    bounds.push_back(2 * A);
  } else {
    cols.emplace_back("log f", ctx.log_fk);
    cols.emplace_back("log(2a-1)", ctx.log_2am1);
    cols.emplace_back("log a", ctx.log_alpha);
    bounds.insert(bounds.end(), {A, A, A});
  }
  auto add = [&](const char* name, const Interval& v) {
    cols.emplace_back(name, v);
    bounds.push_back(A);
  };
  switch (s.form) {
    case ReductionForm::L1:
      add("log 3", ctx.log3);
      add("log 2", ctx.log2);
      break;
    case ReductionForm::L1s:
      add("log delta", log(Interval::from_int(*s.delta, p)));
      break;
    case ReductionForm::L2: {
      add("log 3", ctx.log3);
      add("log 2", ctx.log2);
      const long x = *s.x;
      BigInt tx;
      mpz_ui_pow_ui(tx.get_mpz_t(), 2, static_cast<unsigned long>(x));
      const Rational w = Rational(tx) + 1 - Rational(BigInt(1), tx);
      add("log(2^x+1-2^-x)", log(Interval::from_q(w, p)));
      break;
    }
    case ReductionForm::L3:
      add("log L_{n+1}", log(Interval::from_z(lucas(s.k, *s.n + 1), p)));
      break;
    case ReductionForm::L4:
      break;
    case ReductionForm::L5: {
      const long x = *s.x;
      add("log(1+a^-x-a^-2x)", log(Interval::from_int(1, p) + pow(ctx.alpha, -x) - pow(ctx.alpha, -2 * x)));
      break;
    }
  }
  ReductionInstance inst;
  inst.C = parse_bigint(s.C);
  for (auto& [name, v] : cols) {
    if (names) names->push_back(name);
    inst.etas.push_back(v);
  }
  inst.A = std::move(bounds);
  inst.c3 = Interval::from_decimal(s.c3, p);
  inst.c4 = parse_c4(s.c4, ctx);
  if (!inst.c4.is_positive()) throw DomainError("c4 must be positive");
  return inst;
}

ReductionResult run_reduction(const ReductionSpec& spec_in) {
  ReductionResult r;
  r.spec = with_defaults(spec_in);
  const ReductionSpec& s = r.spec;
  if (s.prec < 64) throw DomainError("precision must be at least 64 bits");
  for (Precision p = s.prec;; p *= 2) {
    AlgebraicContext ctx = build_context(s.k, p, true);
    try {
      std::vector<std::string> names;
      ReductionInstance inst = make_instance(s, ctx, &names);
      r.outcome = analyze_reduction(inst, ctx.working);
      r.precision_used = p;
      r.eta_names = std::move(names);
      r.abounds = inst.A;
      r.eta_values.clear();
      for (const auto& e : inst.etas) r.eta_values.push_back(e.mid_string(24));
      break;
    } catch (const FloorAmbiguityError&) {
      if (p * 2 > s.prec_cap) throw;
    }
  }
  if (r.outcome.H_bound) {
    const BigInt& H = *r.outcome.H_bound;
    switch (s.form) {
      case ReductionForm::L1:
      case ReductionForm::L1s:
      case ReductionForm::L3:
        r.bounded_variable = "x";
        r.variable_bound = H;
        break;
      case ReductionForm::L2:
        r.bounded_variable = "m";
        r.variable_bound = H + 1;
        break;
      case ReductionForm::L4:
        r.bounded_variable = "min(0.7n,x)";
        r.variable_bound = H;
        break;
      case ReductionForm::L5: {
        // 0.97 n - 5 <= H
        r.bounded_variable = "n";
        BigInt q;
        BigInt num = 100 * (H + 5);
        mpz_fdiv_q_ui(q.get_mpz_t(), num.get_mpz_t(), 97);
        r.variable_bound = q;
        break;
      }
    }
  }
  return r;
}

namespace {

json opt_long(const std::optional<long>& v) { return v ? json(*v) : json(nullptr); }

std::optional<long> get_opt_long(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<long>();
}

std::string approx(const Rational& q, int digits = 8) {
  return Interval::from_q(q, 256).mid_string(digits);
}

}  // namespace

std::string to_json(const ReductionSpec& s) {
  json j;
  j["form"] = to_string(s.form);
  j["k"] = s.k;
  j["x"] = opt_long(s.x);
  j["n"] = opt_long(s.n);
  j["delta"] = opt_long(s.delta);
  j["C"] = s.C;
  j["c3"] = s.c3;
  j["c4"] = s.c4;
  j["abound"] = s.abound;
  j["prec"] = static_cast<long>(s.prec);
  j["prec_cap"] = static_cast<long>(s.prec_cap);
  j["merge_k2"] = s.merge_k2;
  return j.dump();
}

ReductionSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid reduction spec: ") + e.what());
  }
  ReductionSpec s;
  try {
    s.form = parse_reduction_form(j.at("form").get<std::string>());
    s.k = j.at("k").get<long>();
    s.x = get_opt_long(j, "x");
    s.n = get_opt_long(j, "n");
    s.delta = get_opt_long(j, "delta");
    s.C = j.value("C", std::string{});
    s.c3 = j.value("c3", std::string{});
    s.c4 = j.value("c4", std::string{});
    s.abound = j.value("abound", std::string{});
    s.prec = j.value("prec", static_cast<long>(kDefaultPrecision));
    s.prec_cap = j.value("prec_cap", static_cast<long>(Precision{1} << 15));
    s.merge_k2 = j.value("merge_k2", true);
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid reduction spec: ") + e.what());
  }
  return s;
}

std::string to_json(const ReductionResult& r) {
  const ReductionOutcome& o = r.outcome;
  json j;
  j["spec"] = json::parse(to_json(r.spec));
  j["precision_used"] = static_cast<long>(r.precision_used);
  json etas = json::array();
  for (std::size_t i = 0; i < r.eta_names.size(); ++i) {
    etas.push_back({{"name", r.eta_names[i]}, {"value", r.eta_values[i]}});
  }
  j["etas"] = etas;
  json A = json::array();
  for (const auto& a : r.abounds) A.push_back(a.get_str());
  j["A"] = A;
  j["dim"] = o.dim;
  j["c1_lower"] = o.c1.lo_string(12);
  j["c2"] = o.c2.get_str();
  j["c2_approx"] = approx(o.c2);
  j["sigma"] = o.sigma.get_str();
  j["b1_norm_sq"] = o.b1_norm_sq.get_str();
  j["y_in_lattice"] = o.y_in_lattice;
  j["S"] = o.S.get_str();
  j["T"] = o.T.get_str();
  j["T_eff"] = o.T_eff.get_str();
  j["condition_holds"] = o.condition_holds;
  j["condition_holds_printed_T"] = o.condition_holds_printed_T;
  j["H_value"] = o.H_value ? json(o.H_value->to_string(12)) : json(nullptr);
  j["H_bound"] = o.H_bound ? json(o.H_bound->get_str()) : json(nullptr);
  j["degenerate_a_n"] = o.degenerate_a_n ? json(o.degenerate_a_n->get_str()) : json(nullptr);
  j["bounded_variable"] = r.bounded_variable;
  j["variable_bound"] = r.variable_bound ? json(r.variable_bound->get_str()) : json(nullptr);
  return j.dump(2);
}

}  // namespace klucas
