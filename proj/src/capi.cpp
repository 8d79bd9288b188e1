#include "expro/expro_c.h"

#include <optional>
#include <random>
#include <string>

#include "expro/registry.hpp"

using namespace expro;

struct expro_context {
  std::optional<int> depth;
  std::optional<Mode> mode;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  bool force = false;
  std::string error;
};

struct expro_result {
  std::string json;
  bool passed = true;
};

namespace {

const std::string kVersion = "0.3.0";

class CostGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

expro_status status_of(ErrorCode code) { return static_cast<expro_status>(static_cast<int>(code)); }

template <class Fn>
expro_status guarded(expro_context* ctx, Fn&& fn) {
  if (!ctx) return EXPRO_ERR_INVALID_ARGUMENT;
  ctx->error.clear();
  try {
    fn();
    return EXPRO_OK;
  } catch (const Error& e) {
    ctx->error = e.what();
    return status_of(e.code());
  } catch (const CostGuard& e) {
    ctx->error = e.what();
    return EXPRO_ERR_COST_GUARD;
  } catch (const std::exception& e) {
    ctx->error = e.what();
    return EXPRO_ERR_INTERNAL;
  } catch (...) {
    ctx->error = "unknown failure";
    return EXPRO_ERR_INTERNAL;
  }
}

void require_out(expro_result** out) {
  if (!out) throw Error(ErrorCode::kInvalidArgument, "null result pointer");
  *out = nullptr;
}

void emit(expro_result** out, const std::string& command, Json body, bool passed) {
  auto* r = new expro_result;
  r->json = report_envelope(command, std::move(body)).dump(2);
  r->passed = passed;
  *out = r;
}

void check_rank(int n) {
  if (n < 2 || n > 8) throw Error(ErrorCode::kInvalidRank, "n must lie in 2..8, got " + std::to_string(n));
}

void cost_guard(const expro_context* ctx, Mode mode, int n) {
  if (mode == Mode::kSymbolic && n > 4 && !ctx->force)
    throw CostGuard("symbolic mode for n = " + std::to_string(n) + " needs force");
}

CheckOptions options_of(const expro_context* ctx, Mode fallback) {
  CheckOptions o;
  o.mode = ctx->mode.value_or(fallback);
  if (ctx->seed) o.seed = *ctx->seed;
  if (ctx->trials) o.trials = *ctx->trials;
  return o;
}

std::string text_or(const char* s, const std::string& fallback) { return s && *s ? std::string(s) : fallback; }

template <class F>
Json projector_report(const WeightOperator<F>& p) {
  const TruncatedVerma& m = p.module();
  Json kernel = Json::array();
  Json ranks = Json::object();
  for (const auto& k : m.weights()) {
    const auto& b = p.block(k);
    ranks[key_string(k)] = rank(b);
    for (int j = 0; j < b.cols(); ++j) {
      bool zero = true;
      for (int i = 0; i < b.rows() && zero; ++i) zero = b(i, j) == typename F::Scalar(0);
      if (zero) kernel.push_back(monomial_string('F', m.basis(k)[j], m.rank()));
    }
  }
  return {{"operator", operator_to_json(p)},
          {"idempotent", op_equal(p * p, p).equal},
          {"annihilated_basis", kernel},
          {"block_ranks", ranks}};
}

template <class F>
WeightOperator<F> projector_of(ModulePtr mod, const F& f, const SubalgebraSpec& m, const SubalgebraSpec& l) {
  if (m.is_whole()) return direct_projector(mod, f, l);
  NestedBasis<F> nb(mod, f, m, l);
  return nb.relative_projector();
}

}  // namespace

extern "C" {

const char* expro_version(void) { return kVersion.c_str(); }

const char* expro_status_name(expro_status status) {
  switch (status) {
    case EXPRO_OK:
      return "ok";
    case EXPRO_ERR_COST_GUARD:
      return "cost-guard";
    default:
      if (status >= EXPRO_ERR_INVALID_RANK && status <= EXPRO_ERR_INTERNAL)
        return error_code_name(static_cast<ErrorCode>(static_cast<int>(status)));
      return "unknown-status";
  }
}

expro_status expro_context_new(expro_context** out) {
  if (!out) return EXPRO_ERR_INVALID_ARGUMENT;
  *out = new (std::nothrow) expro_context;
  return *out ? EXPRO_OK : EXPRO_ERR_INTERNAL;
}

void expro_context_free(expro_context* ctx) { delete ctx; }

const char* expro_context_last_error(const expro_context* ctx) { return ctx ? ctx->error.c_str() : ""; }

expro_status expro_context_set_depth(expro_context* ctx, int depth) {
  return guarded(ctx, [&] {
    if (depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be at least 1");
    ctx->depth = depth;
  });
}

expro_status expro_context_set_mode(expro_context* ctx, const char* mode) {
  return guarded(ctx, [&] {
    if (!mode) throw Error(ErrorCode::kInvalidArgument, "null mode");
    ctx->mode = parse_mode(mode);
  });
}

expro_status expro_context_set_seed(expro_context* ctx, uint64_t seed) {
  return guarded(ctx, [&] { ctx->seed = seed; });
}

expro_status expro_context_set_trials(expro_context* ctx, int trials) {
  return guarded(ctx, [&] {
    if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
    ctx->trials = trials;
  });
}

expro_status expro_context_set_force(expro_context* ctx, int force) {
  return guarded(ctx, [&] { ctx->force = force != 0; });
}

size_t expro_registry_count(void) { return registry_entries().size(); }

const char* expro_registry_id(size_t index) {
  const auto& e = registry_entries();
  return index < e.size() ? e[index].id.c_str() : nullptr;
}

expro_status expro_roots(expro_context* ctx, int n, expro_result** out) {
  return guarded(ctx, [&] {
    require_out(out);
    check_rank(n);
    RootDatum rd(n);
    Json pos = Json::array(), simple = Json::array();
    for (const Root& r : rd.positive_roots()) pos.push_back({{"name", r.name()}, {"weight", weight_to_string(root_weight(r, n))}});
    for (const Root& r : rd.simple_roots()) simple.push_back(r.name());
    emit(out, "roots",
         {{"n", n}, {"positive_roots", pos}, {"simple_roots", simple}, {"rho", weight_to_string(rd.rho())},
          {"count", rd.num_roots()}},
         true);
  });
}

expro_status expro_normal_orders(expro_context* ctx, int n, expro_result** out) {
  return guarded(ctx, [&] {
    require_out(out);
    check_rank(n);
    if (n > 6) throw Error(ErrorCode::kInvalidRank, "normal orders are enumerated for n <= 6");
    Json orders = Json::array();
    bool all_normal = true;
    for (const auto& w : reduced_words_of_w0(n)) {
      const auto order = normal_order_from_word(w, n);
      all_normal = all_normal && is_normal_order(order, n);
      Json roots = Json::array();
      for (const Root& r : order) roots.push_back(r.name());
      orders.push_back({{"word", word_to_string(w)}, {"order", roots}});
    }
    emit(out, "normal-orders", {{"n", n}, {"count", orders.size()}, {"orders", orders}}, all_normal);
  });
}

expro_status expro_projector(expro_context* ctx, int n, const char* m, const char* l, expro_result** out) {
  return guarded(ctx, [&] {
    require_out(out);
    check_rank(n);
    const int depth = ctx->depth.value_or(3);
    const CheckOptions opts = options_of(ctx, Mode::kSymbolic);
    cost_guard(ctx, opts.mode, n);
    const auto mspec = SubalgebraSpec::parse(text_or(m, "g"), n);
    const auto lspec = SubalgebraSpec::parse(text_or(l, "h"), n);
    if (!mspec.contains(lspec)) throw Error(ErrorCode::kInvalidArgument, lspec.name() + " is not inside " + mspec.name());
    auto mod = verma_window(n, depth);
    Json body;
    if (opts.mode == Mode::kSymbolic) {
      body = projector_report(projector_of(mod, SymbolicField{}, mspec, lspec));
    } else {
      std::mt19937_64 rng(opts.seed);
      for (int attempt = 0;; ++attempt) {
        try {
          body = projector_report(projector_of(mod, PointField{random_point(rng, n)}, mspec, lspec));
          break;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kPoleAtPoint && e.code() != ErrorCode::kZeroDivisor) throw;
          if (attempt >= 50) throw Error(ErrorCode::kInternal, "no pole-free point found");
        }
      }
    }
    body["m"] = mspec.name();
    body["l"] = lspec.name();
    const bool idem = body["idempotent"].get<bool>();
    emit(out, "projector", std::move(body), idem);
  });
}

expro_status expro_verify(expro_context* ctx, const char* registry_id, expro_result** out) {
  return guarded(ctx, [&] {
    require_out(out);
    if (!registry_id) throw Error(ErrorCode::kInvalidArgument, "null registry id");
    const RegistryEntry& entry = registry_entry(registry_id);
    RegistryOverrides ov{ctx->depth, ctx->mode, ctx->seed, ctx->trials};
    cost_guard(ctx, ov.mode.value_or(entry.mode), entry.n);
    const RegistryOutcome o = run_registry(registry_id, ov);
    emit(out, "verify", to_json(o), o.passed());
  });
}

expro_status expro_solve(expro_context* ctx, const char* problem, expro_result** out) {
  return guarded(ctx, [&] {
    require_out(out);
    if (!problem) throw Error(ErrorCode::kInvalidArgument, "null problem");
    FactorizationProblem p = parse_problem(problem);
    if (ctx->depth) p.depth = *ctx->depth;
    if (ctx->mode) p.check.mode = *ctx->mode;
    if (ctx->seed) p.check.seed = *ctx->seed;
    if (ctx->trials) p.check.trials = *ctx->trials;
    cost_guard(ctx, p.check.mode, p.n);
    const FactorizationResult r = solve(p);
    Json body = to_json(r, p.n);
    body["problem"] = {{"n", p.n},         {"l", p.l.name()},     {"m", p.m.name()},
                       {"ml", p.ml.name()}, {"left", p.left},      {"right", p.right},
                       {"target", p.target.empty() ? "P(g,l)" : p.target},
                       {"depth", p.depth}, {"mode", mode_name(p.check.mode)}, {"seed", p.check.seed},
                       {"trials", p.check.trials}};
    const bool passed = r.status != "obstructed" && !(r.reconstruction && !r.reconstruction->equal);
    emit(out, "solve", std::move(body), passed);
  });
}

expro_status expro_denominators(expro_context* ctx, int n, const char* m, const char* l, int bound, const char* problem,
                                expro_result** out) {
  return guarded(ctx, [&] {
    require_out(out);
    check_rank(n);
    if (bound < 1) throw Error(ErrorCode::kInvalidArgument, "bound must be at least 1");
    const auto mspec = SubalgebraSpec::parse(text_or(m, "g"), n);
    const auto lspec = SubalgebraSpec::parse(text_or(l, "h"), n);
    Json body{{"m", mspec.name()}, {"l", lspec.name()}, {"bound", bound}};
    body["lattice"] = to_json(lspec.is_cartan() ? absolute_lattice(mspec, bound) : relative_lattice(mspec, lspec, bound));
    if (problem && *problem) {
      FactorizationProblem p = parse_problem(problem);
      if (ctx->depth) p.depth = *ctx->depth;
      if (ctx->mode) p.check.mode = *ctx->mode;
      if (ctx->seed) p.check.seed = *ctx->seed;
      if (ctx->trials) p.check.trials = *ctx->trials;
      cost_guard(ctx, p.check.mode, p.n);
      const FactorizationResult r = solve(p);
      body["solve_status"] = r.status;
      if (r.status == "unique") body["conjecture_report"] = to_json(conjecture_report(r, p.m, p.ml, bound), p.n);
    }
    emit(out, "denominators", std::move(body), true);
  });
}

expro_status expro_shapovalov(expro_context* ctx, int n, expro_result** out) {
  return guarded(ctx, [&] {
    require_out(out);
    check_rank(n);
    const int depth = ctx->depth.value_or(2);
    cost_guard(ctx, Mode::kSymbolic, n);
    auto mod = verma_window(n, depth);
    Json blocks = Json::array();
    bool symmetric = true;
    for (const auto& k : mod->weights()) {
      const Matrix<RatFunc>& g = cached_gram(n, k);
      Json basis = Json::array(), rows = Json::array();
      for (const auto& idx : mod->basis(k)) basis.push_back(monomial_string('F', idx, n));
      for (int i = 0; i < g.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < g.cols(); ++j) {
          row.push_back(g(i, j).to_string());
          symmetric = symmetric && g(i, j) == g(j, i);
        }
        rows.push_back(std::move(row));
      }
      blocks.push_back({{"weight", key_string(k)},
                        {"basis", basis},
                        {"gram", rows},
                        {"determinant", determinant(g).to_string()},
                        {"kostant", kostant_partition_count(k)}});
    }
    emit(out, "shapovalov", {{"n", n}, {"depth", depth}, {"symmetric", symmetric}, {"blocks", blocks}}, symmetric);
  });
}

const char* expro_result_json(const expro_result* result) { return result ? result->json.c_str() : ""; }

int expro_result_passed(const expro_result* result) { return result && result->passed ? 1 : 0; }

void expro_result_free(expro_result* result) { delete result; }

}  // extern "C"
