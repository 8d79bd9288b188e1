#include "expro/registry.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <numeric>

#include "expro/error.hpp"

namespace expro {

namespace {

struct RunContext {
  int depth = 3;
  CheckOptions opts;
  int n = 2;
  ModulePtr module() const { return verma_window(n, depth); }
};

using Runner = std::function<void(const RunContext&, RegistryOutcome&)>;

template <class F>
WeightOperator<F> top_block(ModulePtr module, const F& field) {
  return WeightOperator<F>::block_scalar(module, field, [](const WeightKey& k) {
    return typename F::Scalar(key_height(k) == 0 ? 1 : 0);
  });
}

SubalgebraSpec spec(const std::string& text, int n) { return SubalgebraSpec::parse(text, n); }

std::vector<Root> reference_order(int n) { return positive_roots(n); }

Weight rho(int n) { return RootDatum(n).rho(); }

Weight random_rational_weight(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<long> num(-60, 60), den(1, 9);
  Weight w(n);
  for (auto& c : w) {
    c = Rational(num(rng), den(rng));
    c.canonicalize();
  }
  return w;
}

Verdict merge(Verdict a, const Verdict& b) {
  if (a.equal && !b.equal) {
    a.equal = false;
    a.witness = b.witness;
  }
  for (const auto& p : b.points) a.points.push_back(p);
  a.depth = std::max(a.depth, b.depth);
  return a;
}

Verdict verdict_of(bool equal, const RunContext& ctx) {
  Verdict v;
  v.equal = equal;
  v.mode = mode_name(ctx.opts.mode);
  v.depth = ctx.depth;
  return v;
}

// Both sides of an identity built per field.
template <class Build>
Verdict compare(const RunContext& ctx, Build&& build) {
  return check_identity(ctx.n, std::forward<Build>(build), ctx.opts);
}

// ---------------------------------------------------------------- projectors

void run_fin_fac(const RunContext& ctx, RegistryOutcome& out) {
  auto m = ctx.module();
  out.details["order"] = Json::array();
  for (const Root& r : reference_order(ctx.n)) out.details["order"].push_back(r.name());
  out.verdict = compare(ctx, [&](const auto& f) {
    return std::make_pair(ast_product(m, f, reference_order(ctx.n), rho(ctx.n)), top_block(m, f));
  });
}

void run_zh90(const RunContext& ctx, RegistryOutcome& out) {
  auto m = ctx.module();
  const Weight tau = random_rational_weight(ctx.opts.seed, ctx.n);
  const auto words = reduced_words_of_w0(ctx.n);
  std::vector<std::vector<Root>> orders;
  for (const auto& w : words) orders.push_back(normal_order_from_word(w, ctx.n));
  out.details["tau"] = weight_to_string(tau);
  out.details["normal_orders"] = static_cast<int>(orders.size());
  out.checks.push_back({"all orders normal", std::all_of(orders.begin(), orders.end(), [&](const auto& o) {
                          return is_normal_order(o, ctx.n);
                        })});
  out.verdict = verdict_of(true, ctx);
  for (std::size_t i = 1; i < orders.size() && out.verdict.equal; ++i)
    out.verdict = merge(out.verdict, compare(ctx, [&](const auto& f) {
                          return std::make_pair(ast_product(m, f, orders[0], tau), ast_product(m, f, orders[i], tau));
                        }));
}

// Closed form of prod_{i=t}^{N} (1 - FE / (i (H + 1 + i))) on F^k: the Q_t
// entry times prod_{j=N-k+1}^{N} (y + j) / j with y = x1 - x2 - k + 1.
RatFunc telescoping_remainder(int k, int last) {
  const RatFunc y = coroot_function(Root{1, 2}) - RatFunc(k - 1);
  RatFunc r(1);
  for (int j = last - k + 1; j <= last; ++j) r *= (y + RatFunc(j)) * RatFunc(Rational(1, j));
  return r;
}

void run_qt_image(const RunContext& ctx, RegistryOutcome& out) {
  auto m = ctx.module();
  SymbolicField s;
  const int last = ctx.depth + 4;
  out.details["product_last_index"] = last;
  for (int t = 1; t <= 3; ++t) {
    const auto q = qt_factor(m, s, Root{1, 2}, Rational(t));
    const auto prod = sl2_casimir_product(m, s, t, last);
    bool image = true, telescoped = true;
    for (const auto& key : m->weights()) {
      const int k = key_height(key);
      const RatFunc& qk = q.block(key)(0, 0);
      image = image && ((k < t) != qk.is_zero());
      const RatFunc expected = k < t ? qk * telescoping_remainder(k, last) : RatFunc(0);
      telescoped = telescoped && prod.block(key)(0, 0) == expected;
    }
    const auto hermitian = WeightOperator<SymbolicField>::block_scalar(
        m, s, [t](const WeightKey& key) { return RatFunc(key_height(key) < t ? 1 : 0); });
    const std::string tag = "t=" + std::to_string(t);
    out.details[tag + " self-adjoint"] = op_equal(shapovalov_adjoint(q), q).equal;
    out.checks.push_back({tag + " image is the top t blocks", image});
    out.checks.push_back({tag + " truncated product telescopes to Q_t", telescoped});
    out.checks.push_back({tag + (t == 1 ? " equals" : " differs from") + std::string(" the Hermitian projection onto its image"),
                          op_equal(hermitian, q).equal == (t == 1)});
  }
  bool all = std::all_of(out.checks.begin(), out.checks.end(), [](const NamedCheck& c) { return c.ok; });
  out.verdict = verdict_of(all, ctx);
}

void run_inf_comm_fac(const RunContext& ctx, RegistryOutcome& out) {
  auto m = ctx.module();
  const CentralElement omega = casimir_omega2(ctx.n);
  out.details["hc_omega2"] = omega.hc_image.to_string();
  out.verdict = compare(ctx, [&](const auto& f) {
    return std::make_pair(zhelobenko_product(m, f, omega.hc_image), top_block(m, f));
  });
  Verdict action = compare(ctx, [&](const auto& f) {
    return std::make_pair(central_action(m, f, omega.hc_image), element_action(m, f, omega.expression));
  });
  out.checks.push_back({"central action matches the Casimir matrices", action.equal});
}

void run_successive(const RunContext& ctx, RegistryOutcome& out, const std::string& l) {
  auto m = ctx.module();
  const auto lspec = spec(l, ctx.n);
  out.verdict = compare(ctx, [&](const auto& f) {
    return std::make_pair(direct_projector(m, f, lspec) * extremal_projector(m, f, lspec),
                          ast_product(m, f, reference_order(ctx.n), rho(ctx.n)));
  });
  Verdict nested = compare(ctx, [&](const auto& f) {
    NestedBasis nb(m, f, SubalgebraSpec::whole(ctx.n), lspec);
    return std::make_pair(nb.relative_projector(), direct_projector(m, f, lspec));
  });
  out.checks.push_back({"copy-basis projector equals the direct projector", nested.equal});
}

void run_any_omega(const RunContext& ctx, RegistryOutcome& out, const std::string& l) {
  auto m = ctx.module();
  const auto lspec = spec(l, ctx.n);
  const RatFunc p = casimir_omega2(ctx.n).hc_image;
  out.verdict = compare(ctx, [&](const auto& f) {
    NestedBasis nb(m, f, SubalgebraSpec::whole(ctx.n), lspec);
    return std::make_pair(relative_casimir_product(nb, p), direct_projector(m, f, lspec));
  });
}

void run_hermitian(const RunContext& ctx, RegistryOutcome& out, const std::string& l) {
  auto m = ctx.module();
  const auto lspec = spec(l, ctx.n);
  out.verdict = compare(ctx, [&](const auto& f) {
    auto p = direct_projector(m, f, lspec);
    return std::make_pair(shapovalov_adjoint(p), p);
  });
  Verdict idem = compare(ctx, [&](const auto& f) {
    auto p = direct_projector(m, f, lspec);
    return std::make_pair(p * p, p);
  });
  out.checks.push_back({"idempotent", idem.equal});
}

void run_thm41(const RunContext& ctx, RegistryOutcome& out, const std::string& l, const Weight& t) {
  auto m = ctx.module();
  const auto lspec = spec(l, ctx.n);
  out.details["T"] = weight_to_string(t);
  out.verdict = compare(ctx, [&](const auto& f) {
    NestedBasis nb(m, f, SubalgebraSpec::whole(ctx.n), lspec);
    return std::make_pair(thm41_product(nb, t), direct_projector(m, f, lspec));
  });
  NestedBasis nb(m, SymbolicField{}, SubalgebraSpec::whole(ctx.n), lspec);
  const auto lattice = relative_t_lattice(t, thm41_values(*m, lspec, t));
  bool all = true;
  Json dens = Json::array();
  for (const Poly& d : thm41_denominators(nb, t)) {
    bool ok = divide_by_lattice(d, lattice).divides;
    all = all && ok;
    dens.push_back({{"factor", d.to_string()}, {"divides", ok}});
  }
  out.details["denominators"] = dens;
  out.details["lattice"] = to_json(lattice);
  out.checks.push_back({"denominators divide the T-lattice", all});
}

void run_counterexample(const RunContext& ctx, RegistryOutcome& out) {
  auto m = ctx.module();
  const auto l23 = spec("23", 3);
  const auto l12 = spec("12", 3);
  out.verdict = compare(ctx, [&](const auto& f) {
    return std::make_pair(direct_projector(m, f, l23), extremal_projector(m, f, l12) * qt_factor(m, f, Root{1, 3}, Rational(2)));
  });
  SymbolicField s;
  const WeightKey key{1, 1};
  const VermaVector f13 = VermaVector::basis(3, unit_index(1, 3));
  const auto direct = direct_projector(m, s, l23).apply_to(f13, key);
  const auto q2 = qt_factor(m, s, Root{1, 3}, Rational(2));
  const auto mixed = (extremal_projector(m, s, l12) * q2).apply_to(f13, key);
  const auto image = q2.apply_to(f13, key);
  auto is_zero = [](const std::vector<RatFunc>& v) {
    return std::all_of(v.begin(), v.end(), [](const RatFunc& c) { return c.is_zero(); });
  };
  std::vector<RatFunc> expected(image.size(), RatFunc(0));
  expected[m->position(key, unit_index(1, 3))] = RatFunc::parse("1/(x1-x3+1)");
  out.checks.push_back({"direct projector kills F13", is_zero(direct)});
  out.checks.push_back({"P12 Q2(a13) does not kill F13", !is_zero(mixed)});
  out.checks.push_back({"Q2(a13) F13 = F13 (x1-x3+1)^-1", image == expected});
}

// ------------------------------------------------------------- denominators

void run_abs_denom(const RunContext& ctx, RegistryOutcome& out) {
  const int bound = ctx.depth;
  const PbwElement series = ast_series_product(ctx.n, reference_order(ctx.n), rho(ctx.n), bound);
  const PbwElement wider = truncate_height(ast_series_product(ctx.n, reference_order(ctx.n), rho(ctx.n), 2 * bound), bound);
  const auto lattice = absolute_lattice(SubalgebraSpec::whole(ctx.n), 2 * bound);
  bool all = true;
  Json terms = Json::array();
  for (const auto& [key, c] : right_form(series)) {
    const bool ok = divide_by_lattice(c.denominator(), lattice).divides;
    all = all && ok;
    terms.push_back({{"f", monomial_string('F', key.f, ctx.n)}, {"e", monomial_string('E', key.e, ctx.n)},
                     {"coefficient", c.to_string()}, {"divides", ok}});
  }
  out.details["terms"] = terms;
  out.checks.push_back({"series stable under a wider truncation", series == wider});
  out.checks.push_back({"every denominator divides the absolute lattice", all});
  out.verdict = verdict_of(all, ctx);
}

// ------------------------------------------------------------------- solver

const char* const kWarmup = "n=3\nl=h\nm=13\nml=h\nleft=P(12)\nright=P(23)\n";
const char* const kSl4i = "n=4\nl=12\nm=124\nml=12\nleft=P(123|12)\nright=P(34)\n";
const char* const kSl4ii = "n=4\nl=23\nm=14\nml=h\nleft=P(123|23)\nright=P(234|23)\n";
const char* const kSl5r1i = "n=5\nl=12\nm=125\nml=12\nleft=P(1234|12)\nright=P(345)\n";
const char* const kSl5r1ii = "n=5\nl=23\nm=15\nml=h\nleft=P(1234|23)\nright=P(2345|23)\n";
const char* const kSl5r2i = "n=5\nl=123\nm=1235\nml=123\nleft=P(1234|123)\nright=P(45)\n";
const char* const kSl5r2ii = "n=5\nl=234\nm=15\nml=h\nleft=P(1234|234)\nright=P(2345|234)\n";
const char* const kSl5r2iii = "n=5\nl=12,34\nm=125\nml=12\nleft=P(1234|12,34)\nright=P(345|34)\n";
const char* const kAmbiguous = "n=5\nl=12,45\nm=1245\nml=12,45\nleft=P(123|12)\nright=P(345|45)\n";

FactorizationProblem problem_of(const std::string& text, const RunContext& ctx) {
  FactorizationProblem p = parse_problem(text);
  p.depth = ctx.depth;
  p.check = ctx.opts;
  return p;
}

FactorizationResult solve_and_record(const std::string& text, const RunContext& ctx, RegistryOutcome& out,
                                     const std::string& label, const FactorContext& fctx = {}) {
  const FactorizationProblem p = problem_of(text, ctx);
  FactorizationResult r = solve(p, fctx);
  out.details[label] = to_json(r, p.n);
  const bool pivots = std::all_of(r.pivots.begin(), r.pivots.end(), [](const PivotRecord& v) { return !v.pivot.is_zero(); });
  out.checks.push_back({label + " unique", r.status == "unique"});
  out.checks.push_back({label + " pivots nonzero", pivots});
  return r;
}

Verdict reconstruction_of(const FactorizationResult& r, const RunContext& ctx) {
  return r.reconstruction ? *r.reconstruction : verdict_of(false, ctx);
}

// Solved middle against a known AST factor Q_t(a).
void compare_middle(const FactorizationResult& r, const std::string& m, const std::string& ml, const Root& a,
                    const Rational& t, const RunContext& ctx, RegistryOutcome& out) {
  auto mod = ctx.module();
  const auto mspec = spec(m, ctx.n), mlspec = spec(ml, ctx.n);
  Verdict v = compare(ctx, [&](const auto& f) {
    NestedBasis nb(mod, f, mspec, mlspec);
    return std::make_pair(nb.induce(r.q), qt_factor(mod, f, a, t));
  });
  out.checks.push_back({"middle equals Q_" + rational_to_string(t) + "(" + a.name() + ")", v.equal});
}

SolvedFactor solved(const FactorizationResult& r, const std::string& m, const std::string& ml, int n) {
  return {spec(m, n), spec(ml, n), r.q};
}

void record_check(const FactorizationCheck& c, RegistryOutcome& out, const std::string& label, bool partition = true) {
  out.details[label] = {{"factors", c.factors}, {"verdict", to_json(c.verdict)}, {"root_partition", c.root_partition}};
  if (partition) out.checks.push_back({label + " root partition", c.root_partition});
}

void run_warmup(const RunContext& ctx, RegistryOutcome& out) {
  const auto r = solve_and_record(kWarmup, ctx, out, "solve");
  out.verdict = reconstruction_of(r, ctx);
  if (r.status != "unique") return;
  bool profile = true;
  for (const auto& [k, q] : r.q) {
    const int deg = std::accumulate(k.begin(), k.end(), 0);
    const RatFunc want = deg == 0 ? RatFunc(1) : deg == 1 ? RatFunc::parse("1/(x1-x3+1)") : RatFunc(0);
    profile = profile && q == want;
  }
  out.checks.push_back({"q profile 1, (x1-x3+1)^-1, 0, ...", profile});
  compare_middle(r, "13", "h", Root{1, 3}, Rational(2), ctx, out);
  const auto rep = conjecture_report(r, spec("13", 3), spec("h", 3), ctx.depth + 2);
  out.details["conjecture"] = to_json(rep, 3);
  out.checks.push_back({"no denominators beyond the relative lattice", rep.no_extra_factors()});
}

void run_plain_solve(const RunContext& ctx, RegistryOutcome& out, const char* text) {
  const auto r = solve_and_record(text, ctx, out, "solve");
  out.verdict = reconstruction_of(r, ctx);
}

void run_solve_ast_middle(const RunContext& ctx, RegistryOutcome& out, const char* text, const std::string& m,
                          const Root& a, const Rational& t) {
  const auto r = solve_and_record(text, ctx, out, "solve");
  out.verdict = reconstruction_of(r, ctx);
  if (r.status == "unique") compare_middle(r, m, "h", a, t, ctx, out);
}

RunContext sl4_context(const RunContext& ctx) {
  RunContext c = ctx;
  c.n = 4;
  return c;
}

void run_sl5r1i_long(const RunContext& ctx, RegistryOutcome& out) {
  const auto r4 = solve_and_record(kSl4i, sl4_context(ctx), out, "solve sl4");
  const auto r5 = solve_and_record(kSl5r1i, ctx, out, "solve");
  FactorContext fctx;
  fctx["Q(124|12)"] = embed_factor(solved(r4, "124", "12", 4), 5, {1, 2, 3, 4});
  fctx["Q(125|12)"] = solved(r5, "125", "12", 5);
  const auto c = verify_factorization(5, spec("12", 5), split_factor_list("P(123|12) Q(124|12) P(34) Q(125|12) Q(35) P(45)"),
                                      "", ctx.depth, ctx.opts, fctx);
  record_check(c, out, "long form");
  out.verdict = merge(reconstruction_of(r5, ctx), c.verdict);
}

void run_sl5r1ii_long(const RunContext& ctx, RegistryOutcome& out) {
  const auto r4 = solve_and_record(kSl4i, sl4_context(ctx), out, "solve sl4");
  const auto r5 = solve_and_record(kSl5r1ii, ctx, out, "solve");
  FactorContext fctx;
  fctx["Q(235|23)"] = embed_factor(solved(r4, "124", "12", 4), 5, {2, 3, 4, 5});
  const auto c = verify_factorization(5, spec("23", 5), split_factor_list("P(123|23) Q(14) P(234|23) Q(15) Q(235|23) P(45)"),
                                      "", ctx.depth, ctx.opts, fctx);
  record_check(c, out, "long form");
  out.verdict = merge(reconstruction_of(r5, ctx), c.verdict);
}

void run_sl5r2iii(const RunContext& ctx, RegistryOutcome& out) {
  const auto r1 = solve_and_record(kSl5r1i, ctx, out, "solve l12");
  const auto r = solve_and_record(kSl5r2iii, ctx, out, "solve");
  out.checks.push_back({"same middle as for l12", r.q == r1.q});
  FactorContext fctx;
  fctx["Q(125|12)"] = solved(r1, "125", "12", 5);
  const auto c = verify_factorization(5, spec("12,34", 5), split_factor_list("P(1234|12,34) Q(125|12) P(345|34)"), "",
                                      ctx.depth, ctx.opts, fctx);
  record_check(c, out, "closing");
  out.verdict = merge(reconstruction_of(r, ctx), c.verdict);
}

void run_lemma(const RunContext& ctx, RegistryOutcome& out) {
  const auto c = verify_factorization(5, spec("23", 5), split_factor_list("P(1234|23) Q(15) P(2345|23)"), "", ctx.depth,
                                      ctx.opts);
  record_check(c, out, "lemma", false);
  out.verdict = c.verdict;
}

void run_ambiguity(const RunContext& ctx, RegistryOutcome& out) {
  const FactorizationProblem p = problem_of(kAmbiguous, ctx);
  const auto r = solve(p);
  out.details["solve"] = to_json(r, p.n);
  const auto& a = r.ambiguity;
  std::vector<std::string> w = a.witnesses;
  std::sort(w.begin(), w.end());
  out.checks.push_back({"weight a14+a25", a.ambiguous && key_string(a.weight) == "1,2,2,1"});
  out.checks.push_back({"dimension 2", a.dimension == 2});
  out.checks.push_back({"witnesses F14*F25, F15*F24", w == std::vector<std::string>{"F14*F25", "F15*F24"}});
  out.verdict = verdict_of(r.status == "ambiguous", ctx);
}

// ------------------------------------------------------------------- table

struct Registered {
  RegistryEntry entry;
  Runner run;
};

const std::vector<Registered>& table() {
  using M = Mode;
  const M S = M::kSymbolic, G = M::kGeneric;
  static const std::vector<Registered> t = {
      {{"fin-fac-sl2", "AST product equals P(g) on sl2", 2, 4, S, true}, run_fin_fac},
      {{"fin-fac-sl3", "AST product equals P(g) on sl3", 3, 4, S, true}, run_fin_fac},
      {{"fin-fac-sl4", "AST product equals P(g) on sl4", 4, 3, G, true}, run_fin_fac},
      {{"zh90-sl3", "Q_tau independent of the normal order, sl3", 3, 4, S, true}, run_zh90},
      {{"zh90-sl4", "Q_tau independent of the normal order, sl4", 4, 3, G, true}, run_zh90},
      {{"qt-image-sl2", "Q_t image, telescoping product and adjoint on sl2", 2, 8, S, true}, run_qt_image},
      {{"inf-comm-fac-sl2", "Casimir product equals P(sl2)", 2, 5, S, true}, run_inf_comm_fac},
      {{"inf-comm-fac-sl3", "Casimir product equals P(sl3)", 3, 4, S, true}, run_inf_comm_fac},
      {{"successive-sl3", "P(g) = P(g, l23) P(l23) on sl3", 3, 4, S, true},
       [](const RunContext& c, RegistryOutcome& o) { run_successive(c, o, "23"); }},
      {{"successive-sl4", "P(g) = P(g, l23) P(l23) on sl4", 4, 3, G, true},
       [](const RunContext& c, RegistryOutcome& o) { run_successive(c, o, "23"); }},
      {{"any-omega-sl3-l23", "relative Casimir product equals P(sl3, l23)", 3, 4, S, true},
       [](const RunContext& c, RegistryOutcome& o) { run_any_omega(c, o, "23"); }},
      {{"any-omega-sl3-l12", "relative Casimir product equals P(sl3, l12)", 3, 4, S, true},
       [](const RunContext& c, RegistryOutcome& o) { run_any_omega(c, o, "12"); }},
      {{"hermitian-sl3-l23", "P(sl3, l23) is self-adjoint for the Shapovalov form", 3, 4, S, true},
       [](const RunContext& c, RegistryOutcome& o) { run_hermitian(c, o, "23"); }},
      {{"thm41-sl3-l12", "T-product equals P(sl3, l12), T = (1,1,-2)", 3, 4, S, true},
       [](const RunContext& c, RegistryOutcome& o) { run_thm41(c, o, "12", Weight{1, 1, -2}); }},
      {{"counterexample-sl3", "P(sl3, l23) differs from P12 Q2(a13)", 3, 3, S, false}, run_counterexample},
      {{"abs-denom-sl2", "P(sl2) coefficients divide the absolute lattice", 2, 4, S, true}, run_abs_denom},
      {{"abs-denom-sl3", "P(sl3) coefficients divide the absolute lattice", 3, 3, S, true}, run_abs_denom},
      {{"sl3-warmup", "P12 Q P23 = P(sl3)", 3, 8, S, true}, run_warmup},
      {{"sl4-i", "P(123|12) Q(124|12) P(34) = P(sl4, l12)", 4, 3, G, true},
       [](const RunContext& c, RegistryOutcome& o) { run_plain_solve(c, o, kSl4i); }},
      {{"sl4-ii", "P(123|23) Q14 P(234|23) = P(sl4, l23)", 4, 3, G, true},
       [](const RunContext& c, RegistryOutcome& o) { run_solve_ast_middle(c, o, kSl4ii, "14", Root{1, 4}, Rational(3)); }},
      {{"sl5r1-i", "P(1234|12) Q(125|12) P(345) = P(sl5, l12)", 5, 2, G, true},
       [](const RunContext& c, RegistryOutcome& o) { run_plain_solve(c, o, kSl5r1i); }},
      {{"sl5r1-i-long", "P(123|12) Q(124|12) P34 Q(125|12) Q35 P45 = P(sl5, l12)", 5, 2, G, true}, run_sl5r1i_long},
      {{"sl5r1-ii", "P(1234|23) Q15 P(2345|23) = P(sl5, l23)", 5, 2, G, true},
       [](const RunContext& c, RegistryOutcome& o) { run_solve_ast_middle(c, o, kSl5r1ii, "15", Root{1, 5}, Rational(4)); }},
      {{"sl5r1-ii-long", "P(123|23) Q14 P(234|23) Q15 Q(235|23) P45 = P(sl5, l23)", 5, 2, G, true}, run_sl5r1ii_long},
      {{"sl5r2-i", "P(1234|123) Q(1235|123) P45 = P(sl5, l123)", 5, 2, G, true},
       [](const RunContext& c, RegistryOutcome& o) { run_plain_solve(c, o, kSl5r2i); }},
      {{"sl5r2-ii", "P(1234|234) Q15 P(2345|234) = P(sl5, l234)", 5, 2, G, true},
       [](const RunContext& c, RegistryOutcome& o) { run_solve_ast_middle(c, o, kSl5r2ii, "15", Root{1, 5}, Rational(4)); }},
      {{"sl5r2-iii", "P(1234|12,34) Q(125|12) P(345|34) = P(sl5, l12,34)", 5, 2, G, true}, run_sl5r2iii},
      {{"lemma-n5-a2-b3", "P(1234|23) Q15 P(2345|23) = P(sl5, l23)", 5, 2, G, true}, run_lemma},
      {{"ambiguity-sl5-l12-45", "l12,45 problem has a 2-dimensional image", 5, 6, G, true}, run_ambiguity},
  };
  return t;
}

const Registered& find(const std::string& id) {
  for (const auto& r : table())
    if (r.entry.id == id) return r;
  throw Error(ErrorCode::kInvalidArgument, "unknown registry id '" + id + "'");
}

}  // namespace

bool RegistryOutcome::passed() const {
  if (verdict.equal != entry.expect_equal) return false;
  return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.ok; });
}

const std::vector<RegistryEntry>& registry_entries() {
  static const std::vector<RegistryEntry> entries = [] {
    std::vector<RegistryEntry> out;
    for (const auto& r : table()) out.push_back(r.entry);
    return out;
  }();
  return entries;
}

const RegistryEntry& registry_entry(const std::string& id) { return find(id).entry; }

RegistryOutcome run_registry(const std::string& id, const RegistryOverrides& overrides) {
  const Registered& reg = find(id);
  RunContext ctx;
  ctx.n = reg.entry.n;
  ctx.depth = overrides.depth.value_or(reg.entry.depth);
  if (ctx.depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be at least 1");
  ctx.opts.mode = overrides.mode.value_or(reg.entry.mode);
  if (overrides.seed) ctx.opts.seed = *overrides.seed;
  if (overrides.trials) ctx.opts.trials = *overrides.trials;
  RegistryOutcome out;
  out.entry = reg.entry;
  out.depth = ctx.depth;
  const auto t0 = std::chrono::steady_clock::now();
  reg.run(ctx, out);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

Json to_json(const RegistryOutcome& o) {
  Json checks = Json::array();
  for (const auto& c : o.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}});
  return {{"id", o.entry.id},
          {"title", o.entry.title},
          {"n", o.entry.n},
          {"depth", o.depth},
          {"expect_equal", o.entry.expect_equal},
          {"verdict", to_json(o.verdict)},
          {"checks", checks},
          {"details", o.details},
          {"passed", o.passed()}};
}

}  // namespace expro
