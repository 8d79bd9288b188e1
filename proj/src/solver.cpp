#include "expro/solver.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace expro {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Weight negated(const Weight& w) { return Rational(-1) * w; }

int total_degree(const MultiIndex& k) {
  int d = 0;
  for (int e : k) d += e;
  return d;
}

template <class F>
struct ReducedSides {
  WeightOperator<F> left, right, target;
};

template <class F>
ReducedSides<F> reduced_sides(const FactorizationProblem& p, ModulePtr module, const F& field, const FactorContext& ctx) {
  auto pl = extremal_projector(module, field, p.l);
  auto left = build_product(p.left, module, field, ctx);
  auto right = build_product(p.right, module, field, ctx);
  auto target = p.target.empty() ? direct_projector(module, field, p.l)
                                 : build_product(split_factor_list(p.target), module, field, ctx);
  return {left * pl, right * pl, target * pl};
}

template <class F>
std::vector<WeightKey> cone_of(const ReducedSides<F>& s) {
  std::vector<WeightKey> out;
  for (const auto& k : s.left.module().weights())
    if (!s.left.block(k).is_zero() && !s.right.block(k).is_zero()) out.push_back(k);
  return out;
}

template <class S>
std::vector<std::string> witnesses_for(const Matrix<S>& block, const std::vector<MultiIndex>& basis, int n) {
  std::vector<int> order(basis.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    int da = total_degree(basis[a]), db = total_degree(basis[b]);
    if (da != db) return da < db;
    return basis[a] > basis[b];
  });
  Matrix<S> cols(block.rows(), static_cast<int>(order.size()));
  for (std::size_t j = 0; j < order.size(); ++j) cols.set_column(static_cast<int>(j), block.column(order[j]));
  std::vector<std::string> out;
  for (int j : independent_columns(cols)) out.push_back(monomial_string('F', basis[order[j]], n));
  return out;
}

template <class F>
AmbiguityReport ambiguity_of(const ReducedSides<F>& s) {
  AmbiguityReport rep;
  const TruncatedVerma& m = s.left.module();
  for (const auto& k : cone_of(s)) {
    int rr = rank(s.right.block(k));
    int rl = rank(s.left.block(k));
    if (rr > 1 || rl > 1) {
      rep.ambiguous = true;
      rep.weight = k;
      rep.side = rr > 1 ? "right" : "left";
      rep.dimension = std::max(rr, rl);
      rep.witnesses = witnesses_for(rr > 1 ? s.right.block(k) : s.left.block(k), m.basis(k), m.rank());
      return rep;
    }
  }
  return rep;
}

template <class Fn>
auto with_field(const CheckOptions& opts, int n, Fn&& fn) {
  if (opts.mode == Mode::kSymbolic) return fn(SymbolicField{});
  std::mt19937_64 rng(opts.seed);
  for (int attempt = 0;; ++attempt) {
    try {
      return fn(PointField{random_point(rng, n)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPoleAtPoint && e.code() != ErrorCode::kZeroDivisor) throw;
      if (attempt >= 50) throw Error(ErrorCode::kInternal, "no pole-free point found");
    }
  }
}

std::vector<Root> factor_roots(const FactorSpec& f) {
  switch (f.kind) {
    case FactorSpec::Kind::kIdentity:
      return {};
    case FactorSpec::Kind::kAst:
      return {f.alpha};
    default:
      return f.m.positive_roots();
  }
}

}  // namespace

std::vector<std::string> split_factor_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ' ' || c == '*' || c == ';') && depth == 0) {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

FactorSpec parse_factor(const std::string& raw, int n) {
  const std::string name = trim(raw);
  FactorSpec f;
  f.name = name;
  if (name == "1" || name == "I") return f;
  if (name.size() < 4 || (name[0] != 'P' && name[0] != 'Q') || name[1] != '(' || name.back() != ')')
    throw Error(ErrorCode::kParse, "bad factor name '" + name + "'");
  const std::string inner = name.substr(2, name.size() - 3);
  const auto bar = inner.find('|');
  const std::string outer_text = inner.substr(0, bar);
  f.m = SubalgebraSpec::parse(outer_text, n);
  if (bar != std::string::npos) f.ml = SubalgebraSpec::parse(inner.substr(bar + 1), n);
  if (name[0] == 'P') {
    f.kind = bar == std::string::npos ? FactorSpec::Kind::kExtremal : FactorSpec::Kind::kRelative;
    return f;
  }
  if (bar != std::string::npos) {
    f.kind = FactorSpec::Kind::kSolved;
    return f;
  }
  if (outer_text.size() != 2 || f.m.blocks().size() != 1 || f.m.blocks()[0].size() != 2)
    throw Error(ErrorCode::kParse, "AST factor needs two indices: '" + name + "'");
  f.kind = FactorSpec::Kind::kAst;
  f.alpha = Root{f.m.blocks()[0][0], f.m.blocks()[0][1]};
  return f;
}

template <class F>
WeightOperator<F> build_factor(const FactorSpec& spec, ModulePtr module, const F& field, const FactorContext& ctx) {
  switch (spec.kind) {
    case FactorSpec::Kind::kIdentity:
      return WeightOperator<F>::identity(module, field);
    case FactorSpec::Kind::kExtremal:
      return extremal_projector(module, field, spec.m);
    case FactorSpec::Kind::kRelative:
      return NestedBasis<F>(module, field, spec.m, spec.ml).relative_projector();
    case FactorSpec::Kind::kAst:
      return qt_factor(module, field, spec.alpha, Rational(spec.alpha.height()));
    case FactorSpec::Kind::kSolved: {
      auto it = ctx.find(spec.name);
      if (it == ctx.end()) throw Error(ErrorCode::kInvalidArgument, "no solved factor named " + spec.name);
      return NestedBasis<F>(module, field, it->second.m, it->second.ml).induce(it->second.q);
    }
  }
  throw Error(ErrorCode::kInternal, "unhandled factor kind");
}

template <class F>
WeightOperator<F> build_product(const std::vector<std::string>& names, ModulePtr module, const F& field,
                                const FactorContext& ctx) {
  auto op = WeightOperator<F>::identity(module, field);
  for (const auto& name : names) op = op * build_factor(parse_factor(name, module->rank()), module, field, ctx);
  return op;
}

FactorizationProblem parse_problem(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::kParse, "line " + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  static const std::set<std::string> known{"n", "l", "m", "ml", "left", "right", "target", "depth", "mode", "seed", "trials"};
  for (const auto& [k, v] : kv)
    if (!known.count(k)) throw Error(ErrorCode::kParse, "unknown key '" + k + "'");
  FactorizationProblem p;
  auto get = [&](const std::string& k, const std::string& def) { return kv.count(k) ? kv[k] : def; };
  try {
    p.n = std::stoi(get("n", "3"));
    p.depth = std::stoi(get("depth", "3"));
    if (kv.count("seed")) p.check.seed = std::stoull(kv["seed"]);
    p.check.trials = std::stoi(get("trials", "3"));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kParse, "numeric field expected");
  }
  if (p.depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be at least 1");
  p.check.mode = parse_mode(get("mode", "symbolic"));
  p.l = SubalgebraSpec::parse(get("l", "h"), p.n);
  p.m = SubalgebraSpec::parse(get("m", "g"), p.n);
  p.ml = kv.count("ml") ? SubalgebraSpec::parse(kv["ml"], p.n) : p.l;
  if (!p.m.contains(p.ml)) throw Error(ErrorCode::kInvalidArgument, "ml must lie inside m");
  p.left = split_factor_list(get("left", ""));
  p.right = split_factor_list(get("right", ""));
  p.target = get("target", "");
  return p;
}

std::vector<WeightKey> admissible_cone(const FactorizationProblem& p, const FactorContext& ctx) {
  return with_field(p.check, p.n, [&](const auto& field) {
    return cone_of(reduced_sides(p, verma_window(p.n, p.depth), field, ctx));
  });
}

AmbiguityReport analyze_ambiguity(const FactorizationProblem& p, const FactorContext& ctx) {
  return with_field(p.check, p.n, [&](const auto& field) {
    return ambiguity_of(reduced_sides(p, verma_window(p.n, p.depth), field, ctx));
  });
}

SolvedFactor embed_factor(const SolvedFactor& f, int n, const std::vector<int>& index_map) {
  const int k = f.m.rank();
  if (static_cast<int>(index_map.size()) != k || k > n)
    throw Error(ErrorCode::kInvalidArgument, "index map does not match the source rank");
  for (int i = 0; i < k; ++i)
    if (index_map[i] < 1 || index_map[i] > n || (i > 0 && index_map[i] <= index_map[i - 1]))
      throw Error(ErrorCode::kInvalidArgument, "index map must be increasing into 1.." + std::to_string(n));
  auto map_spec = [&](const SubalgebraSpec& s) {
    std::vector<std::vector<int>> blocks;
    for (const auto& blk : s.blocks()) {
      std::vector<int> b;
      for (int i : blk) b.push_back(index_map[i - 1]);
      blocks.push_back(b);
    }
    return SubalgebraSpec(n, blocks);
  };
  std::vector<int> perm(k);
  std::vector<Rational> offset(k, Rational(0));
  for (int i = 0; i < k; ++i) perm[i] = index_map[i] - 1;
  const auto src = positive_roots(k);
  const auto dst = positive_roots(n);
  SolvedFactor out{map_spec(f.m), map_spec(f.ml), {}};
  for (const auto& [idx, q] : f.q) {
    MultiIndex img(dst.size(), 0);
    for (std::size_t r = 0; r < src.size(); ++r) {
      if (!idx[r]) continue;
      Root target{index_map[src[r].i - 1], index_map[src[r].j - 1]};
      img[std::find(dst.begin(), dst.end(), target) - dst.begin()] = idx[r];
    }
    out.q[img] = q.substitute_affine(perm, offset);
  }
  return out;
}

bool depends_only_on_semisimple_part(const RatFunc& q, const SubalgebraSpec& m) {
  const int n = m.rank();
  std::vector<Weight> directions;
  for (int i = 1; i <= n; ++i)
    if (m.block_of(i) < 0) {
      Weight d(n, Rational(0));
      d[i - 1] = 1;
      directions.push_back(d);
    }
  for (const auto& blk : m.blocks()) {
    Weight d(n, Rational(0));
    for (int i : blk) d[i - 1] = 1;
    directions.push_back(d);
  }
  for (const auto& d : directions)
    if (!(q.shift(d) == q)) return false;
  return true;
}

FactorizationResult solve(const FactorizationProblem& p, const FactorContext& ctx) {
  FactorizationResult res;
  if (!p.m.contains(p.ml)) throw Error(ErrorCode::kInvalidArgument, p.ml.name() + " is not inside " + p.m.name());

  res.ambiguity = analyze_ambiguity(p, ctx);
  if (res.ambiguity.ambiguous) {
    res.status = "ambiguous";
    res.failure_weight = res.ambiguity.weight;
    res.failure_reason = "image of dimension " + std::to_string(res.ambiguity.dimension) + " on the " + res.ambiguity.side + " side";
    return res;
  }

  const int n = p.n;
  SymbolicField sym;
  auto module = verma_window(n, p.depth);
  auto sides = reduced_sides(p, module, sym, ctx);
  NestedBasis<SymbolicField> nb(module, sym, p.m, p.ml);
  res.cone = cone_of(sides);

  for (const auto& key : res.cone) {
    const auto& rblock = sides.right.block(key);
    int j0 = -1;
    for (int j = 0; j < rblock.cols() && j0 < 0; ++j)
      for (int i = 0; i < rblock.rows(); ++i)
        if (!rblock(i, j).is_zero()) {
          j0 = j;
          break;
        }
    const auto r = rblock.column(j0);
    const auto beta = nb.inverse_matrix(key).apply(r);
    const auto lc = sides.left.block(key) * nb.matrix(key);
    const auto& cols = nb.columns(key);
    std::vector<RatFunc> rhs = sides.target.block(key).column(j0);
    std::map<std::pair<MultiIndex, MultiIndex>, std::vector<RatFunc>> unknown;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (beta[c].is_zero()) continue;
      std::vector<RatFunc> v = lc.column(static_cast<int>(c));
      bool zero = true;
      for (auto& x : v) {
        x *= beta[c];
        zero = zero && x.is_zero();
      }
      if (zero) continue;
      const Weight shift_i = negated(index_weight(cols[c].outer, n));
      auto known = res.q.find(cols[c].inner);
      if (known != res.q.end()) {
        RatFunc s = known->second.shift(shift_i);
        for (std::size_t i = 0; i < v.size(); ++i) rhs[i] -= v[i] * s;
      } else {
        auto& acc = unknown[{cols[c].inner, cols[c].outer}];
        if (acc.empty()) acc.assign(v.size(), RatFunc(0));
        for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
      }
    }
    std::erase_if(unknown, [](const auto& kv) {
      return std::all_of(kv.second.begin(), kv.second.end(), [](const RatFunc& x) { return x.is_zero(); });
    });
    const bool rhs_zero = std::all_of(rhs.begin(), rhs.end(), [](const RatFunc& x) { return x.is_zero(); });
    if (unknown.empty()) {
      if (!rhs_zero) {
        res.status = "obstructed";
        res.failure_weight = key;
        res.failure_reason = "no unknown left to absorb a nonzero residual";
        break;
      }
      continue;
    }
    if (unknown.size() > 1) {
      res.status = "ambiguous";
      res.failure_weight = key;
      res.failure_reason = std::to_string(unknown.size()) + " unknown coefficients at one weight";
      break;
    }
    const auto& [ki, a] = *unknown.begin();
    int pivot = -1;
    for (std::size_t i = 0; i < a.size() && pivot < 0; ++i)
      if (!a[i].is_zero()) pivot = static_cast<int>(i);
    RatFunc s = rhs[pivot] / a[pivot];
    bool consistent = true;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(a[i] * s == rhs[i])) consistent = false;
    if (!consistent) {
      res.status = "obstructed";
      res.failure_weight = key;
      res.failure_reason = "pivot solution fails the remaining rows";
      break;
    }
    res.q[ki.first] = s.shift(index_weight(ki.second, n));
    res.pivots.push_back({ki.first, key, a[pivot]});
  }

  for (const auto& k : nb.inner_indices())
    if (!res.q.count(k)) {
      res.q[k] = RatFunc(0);
      res.undetermined.push_back(k);
    }

  for (const auto& [k, qk] : res.q) {
    if (qk.is_zero()) continue;
    res.nonzero_support.push_back(k);
    res.max_nonzero_height = std::max(res.max_nonzero_height, index_height(k, n));
    bool ss = depends_only_on_semisimple_part(qk, p.m);
    res.in_semisimple_part[k] = ss;
    res.all_in_semisimple_part = res.all_in_semisimple_part && ss;
  }
  res.middle_is_standard = p.m.is_standard();
  if (res.status != "unique") return res;

  res.reconstruction = check_identity(
      n,
      [&](const auto& field) {
        auto m = verma_window(n, p.depth);
        using F = std::decay_t<decltype(field)>;
        auto left = build_product(p.left, m, field, ctx);
        auto right = build_product(p.right, m, field, ctx);
        auto target = p.target.empty() ? direct_projector(m, field, p.l)
                                       : build_product(split_factor_list(p.target), m, field, ctx);
        NestedBasis<F> basis(m, field, p.m, p.ml);
        return std::make_pair(left * basis.induce(res.q) * right, target);
      },
      p.check);
  if (!res.reconstruction->equal) {
    res.status = "obstructed";
    res.failure_weight = res.reconstruction->witness->weight;
    res.failure_reason = "reconstruction differs from the target";
  }
  auto solved = nb.induce(res.q);
  res.equals_relative_projector = op_equal(solved, nb.relative_projector()).equal;
  return res;
}

FactorizationCheck verify_factorization(int n, const SubalgebraSpec& l, const std::vector<std::string>& factors,
                                        const std::string& target, int depth, const CheckOptions& opts,
                                        const FactorContext& ctx) {
  FactorizationCheck out;
  out.factors = factors;
  out.verdict = check_identity(
      n,
      [&](const auto& field) {
        auto m = verma_window(n, depth);
        auto lhs = build_product(factors, m, field, ctx);
        auto rhs = target.empty() ? direct_projector(m, field, l) : build_product(split_factor_list(target), m, field, ctx);
        return std::make_pair(lhs, rhs);
      },
      opts);
  std::multiset<Root> covered;
  for (const auto& name : factors)
    for (const Root& r : factor_roots(parse_factor(name, n)))
      if (!l.contains_root(r)) covered.insert(r);
  const auto u = l.complement_roots();
  out.root_partition = covered.size() == u.size() && std::all_of(u.begin(), u.end(), [&](const Root& r) {
                         return covered.count(r) == 1;
                       });
  return out;
}

ConjectureReport conjecture_report(const FactorizationResult& r, const SubalgebraSpec& m, const SubalgebraSpec& ml,
                                   int bound) {
  ConjectureReport rep;
  const int n = m.rank();
  const auto lattice = relative_lattice(m, ml, bound);
  rep.lattice = lattice.kind;
  for (const auto& [k, qk] : r.q) {
    if (qk.is_zero()) continue;
    rep.sparsity.push_back(k);
    const RatFunc hc = qk.shift(index_weight(k, n));
    const auto div = divide_by_lattice(hc.denominator(), lattice);
    const std::string where = "q[" + monomial_string('F', k, n) + "]";
    for (const auto& f : div.matched) rep.entries.push_back({where, f, true});
    if (!div.divides) {
      rep.entries.push_back({where, div.residual, false});
      rep.extra_factors.push_back(div.residual);
    }
  }
  return rep;
}

#define EXPRO_SOLVER_INSTANTIATE(F)                                                                            \
  template WeightOperator<F> build_factor(const FactorSpec&, ModulePtr, const F&, const FactorContext&);       \
  template WeightOperator<F> build_product(const std::vector<std::string>&, ModulePtr, const F&, const FactorContext&);

EXPRO_SOLVER_INSTANTIATE(SymbolicField)
EXPRO_SOLVER_INSTANTIATE(PointField)

}  // namespace expro
