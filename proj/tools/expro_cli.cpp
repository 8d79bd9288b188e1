// Command-line front end over the C interface.
//
//   expro roots --n 4
//   expro projector --n 3 --l 23 --depth 3
//   expro verify --registry-id fin-fac-sl3
//   expro solve --config problem.txt --out result.json
//
// Exit codes: 0 success, 1 identity violation, 2 usage error, 3 internal error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "expro/expro_c.h"

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kInternal = 3 };

struct Options {
  int n = 3;
  std::string l;
  std::string m;
  int depth = 0;
  std::string mode;
  std::uint64_t seed = 0;
  int trials = 0;
  std::string out;
  std::string registry_id;
  std::string config;
  int bound = 3;
  bool force = false;
  bool list = false;
};

int exit_for(expro_status s) {
  switch (s) {
    case EXPRO_OK:
      return kOk;
    case EXPRO_ERR_INVALID_RANK:
    case EXPRO_ERR_INVALID_ORDER:
    case EXPRO_ERR_INVALID_T:
    case EXPRO_ERR_PARSE:
    case EXPRO_ERR_INVALID_ARGUMENT:
    case EXPRO_ERR_COST_GUARD:
      return kUsage;
    default:
      return kInternal;
  }
}

class Session {
 public:
  Session() {
    if (expro_context_new(&ctx_) != EXPRO_OK) ctx_ = nullptr;
  }
  ~Session() { expro_context_free(ctx_); }
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  expro_context* get() const { return ctx_; }

  int fail(expro_status s) const {
    std::cerr << "error (" << expro_status_name(s) << "): " << expro_context_last_error(ctx_) << "\n";
    return exit_for(s);
  }

 private:
  expro_context* ctx_ = nullptr;
};

int apply_settings(const Session& session, const Options& o, const CLI::App& sub) {
  expro_context* ctx = session.get();
  expro_status s = EXPRO_OK;
  if (sub.count("--depth") && (s = expro_context_set_depth(ctx, o.depth)) != EXPRO_OK) return session.fail(s);
  if (sub.count("--mode") && (s = expro_context_set_mode(ctx, o.mode.c_str())) != EXPRO_OK) return session.fail(s);
  if (sub.count("--seed") && (s = expro_context_set_seed(ctx, o.seed)) != EXPRO_OK) return session.fail(s);
  if (sub.count("--trials") && (s = expro_context_set_trials(ctx, o.trials)) != EXPRO_OK) return session.fail(s);
  if (o.force && (s = expro_context_set_force(ctx, 1)) != EXPRO_OK) return session.fail(s);
  return kOk;
}

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

int write_result(expro_result* r, const Options& o) {
  const std::string json = expro_result_json(r);
  const bool passed = expro_result_passed(r) != 0;
  expro_result_free(r);
  if (o.out.empty()) {
    std::cout << json << "\n";
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return kUsage;
    }
    f << json << "\n";
  }
  return passed ? kOk : kViolation;
}

void common_flags(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n, "gl_n rank")->check(CLI::Range(2, 8));
  sub->add_option("--depth", o.depth, "truncation depth (root height)")->check(CLI::PositiveNumber);
  sub->add_option("--mode", o.mode, "symbolic or generic")->check(CLI::IsMember({"symbolic", "generic"}));
  sub->add_option("--seed", o.seed, "seed for generic points");
  sub->add_option("--trials", o.trials, "generic points per check")->check(CLI::PositiveNumber);
  sub->add_option("--out", o.out, "write JSON here instead of stdout");
  sub->add_flag("--force", o.force, "allow symbolic mode for n > 4");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal projectors on truncated Verma modules"};
  app.require_subcommand(1);
  Options o;

  auto* roots = app.add_subcommand("roots", "positive roots, simple roots and rho");
  auto* orders = app.add_subcommand("normal-orders", "normal orders of the positive roots");
  auto* projector = app.add_subcommand("projector", "relative projector P(m, l) as a weight operator");
  auto* verify = app.add_subcommand("verify", "check a named identity from the registry");
  auto* solve = app.add_subcommand("solve", "solve a factorization problem file");
  auto* denoms = app.add_subcommand("denominators", "denominator lattices and solver denominator report");
  auto* shap = app.add_subcommand("shapovalov", "Shapovalov Gram matrices per weight block");

  for (auto* sub : {roots, orders, projector, verify, solve, denoms, shap}) common_flags(sub, o);
  projector->add_option("--l", o.l, "Levi subalgebra, e.g. 23 or 12,45");
  projector->add_option("--m", o.m, "outer subalgebra (default g)");
  verify->add_option("--registry-id", o.registry_id, "identity name");
  verify->add_flag("--list", o.list, "list registry ids");
  solve->add_option("--config", o.config, "key=value problem file")->required()->check(CLI::ExistingFile);
  denoms->add_option("--m", o.m, "subalgebra whose lattice is listed (default g)");
  denoms->add_option("--l", o.l, "inner Levi subalgebra (default h)");
  denoms->add_option("--bound", o.bound, "largest shift i")->check(CLI::PositiveNumber);
  denoms->add_option("--config", o.config, "problem file whose solution is reported")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  Session session;
  if (!session.get()) return kInternal;
  CLI::App* sub = app.get_subcommands().front();
  if (int rc = apply_settings(session, o, *sub); rc != kOk) return rc;

  expro_result* result = nullptr;
  expro_status s = EXPRO_OK;
  std::string text;
  if (sub == roots) {
    s = expro_roots(session.get(), o.n, &result);
  } else if (sub == orders) {
    s = expro_normal_orders(session.get(), o.n, &result);
  } else if (sub == projector) {
    s = expro_projector(session.get(), o.n, o.m.c_str(), o.l.c_str(), &result);
  } else if (sub == verify) {
    if (o.list) {
      for (std::size_t i = 0; i < expro_registry_count(); ++i) std::cout << expro_registry_id(i) << "\n";
      return kOk;
    }
    if (o.registry_id.empty()) {
      std::cerr << "error: verify needs --registry-id or --list\n";
      return kUsage;
    }
    s = expro_verify(session.get(), o.registry_id.c_str(), &result);
  } else if (sub == solve) {
    if (!read_file(o.config, text)) {
      std::cerr << "error: cannot read " << o.config << "\n";
      return kUsage;
    }
    s = expro_solve(session.get(), text.c_str(), &result);
  } else if (sub == denoms) {
    if (!o.config.empty() && !read_file(o.config, text)) {
      std::cerr << "error: cannot read " << o.config << "\n";
      return kUsage;
    }
    s = expro_denominators(session.get(), o.n, o.m.c_str(), o.l.c_str(), o.bound, text.c_str(), &result);
  } else if (sub == shap) {
    s = expro_shapovalov(session.get(), o.n, &result);
  }
  if (s != EXPRO_OK) return session.fail(s);
  return write_result(result, o);
}
