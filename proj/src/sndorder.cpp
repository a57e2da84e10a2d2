#include "lvt/sndorder.hpp"

#include <functional>

#include "lvt/format.hpp"

namespace lvt::so {

// ---------------------------------------------------------------- builders

namespace f {
FOExpr var(Name x) { return FOVar{std::move(x)}; }
FOExpr fun(Name name, std::vector<FOExpr> args) { return Fun{std::move(name), std::move(args)}; }
FOExpr lit(std::uint64_t n) { return Lit{n}; }
Formula pred(Name X, std::vector<FOExpr> args) { return Pred{std::move(X), std::move(args)}; }
Formula implies(Formula a, Formula b) { return Implies{std::move(a), std::move(b)}; }
Formula all_fo(Name x, Formula body) { return ForallFO{std::move(x), std::move(body)}; }
Formula all_so(Name X, std::size_t arity, Formula body) { return ForallSO{std::move(X), arity, std::move(body)}; }
}  // namespace f

Formula from_type(const Type& a) {
  if (const auto* atom = a.as_atom()) return f::pred(atom->name);
  const auto& arr = *a.as_arrow();
  return f::implies(from_type(*arr.dom), from_type(*arr.cod));
}

// ---------------------------------------------------------------- free symbols

namespace {

void collect_expr(const FOExpr& e, FreeSymbols& out) {
  if (const auto* v = std::get_if<FOVar>(&e.node)) {
    out.fovars.insert(v->name);
  } else if (const auto* fn = std::get_if<Fun>(&e.node)) {
    for (const auto& a : fn->args) collect_expr(a, out);
  }
}

void collect_formula(const Formula& a, FreeSymbols& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Pred>) {
          out.preds.insert(n.name);
          for (const auto& e : n.args) collect_expr(e, out);
        } else if constexpr (std::is_same_v<N, Implies>) {
          collect_formula(*n.lhs, out);
          collect_formula(*n.rhs, out);
        } else if constexpr (std::is_same_v<N, ForallFO>) {
          FreeSymbols inner;
          collect_formula(*n.body, inner);
          inner.fovars.erase(n.var);
          out.fovars.insert(inner.fovars.begin(), inner.fovars.end());
          out.preds.insert(inner.preds.begin(), inner.preds.end());
        } else {
          FreeSymbols inner;
          collect_formula(*n.body, inner);
          inner.preds.erase(n.pred);
          out.fovars.insert(inner.fovars.begin(), inner.fovars.end());
          out.preds.insert(inner.preds.begin(), inner.preds.end());
        }
      },
      a.node);
}

// Every symbol occurring anywhere, bound or free; used to pick fresh names.
void collect_all(const Formula& a, std::set<Name>& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Pred>) {
          out.insert(n.name);
          FreeSymbols fs;
          for (const auto& e : n.args) collect_expr(e, fs);
          out.insert(fs.fovars.begin(), fs.fovars.end());
        } else if constexpr (std::is_same_v<N, Implies>) {
          collect_all(*n.lhs, out);
          collect_all(*n.rhs, out);
        } else if constexpr (std::is_same_v<N, ForallFO>) {
          out.insert(n.var);
          collect_all(*n.body, out);
        } else {
          out.insert(n.pred);
          collect_all(*n.body, out);
        }
      },
      a.node);
}

Name fresh_avoiding(const Name& base, const std::set<Name>& avoid) {
  const std::string stem(base_name(base));
  for (std::uint64_t i = 0;; ++i) {
    Name candidate = stem + "#" + std::to_string(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

}  // namespace

FreeSymbols fv_expr(const FOExpr& e) {
  FreeSymbols out;
  collect_expr(e, out);
  return out;
}

FreeSymbols fv_formula(const Formula& a) {
  FreeSymbols out;
  collect_formula(a, out);
  return out;
}

FreeSymbols fv_context(const FContext& ctx) {
  FreeSymbols out;
  for (const auto& e : ctx) collect_formula(e.formula, out);
  return out;
}

// ---------------------------------------------------------------- α-equivalence

namespace {

using Pairs = std::vector<std::pair<Name, Name>>;

// Bound on both sides at the same depth, or free and equal on both sides.
bool same_name(const Pairs& env, const Name& a, const Name& b) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    const bool la = it->first == a;
    const bool rb = it->second == b;
    if (la || rb) return la && rb;
  }
  return a == b;
}

bool expr_eq(const FOExpr& a, const FOExpr& b, const Pairs& fo) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* va = std::get_if<FOVar>(&a.node)) return same_name(fo, va->name, std::get<FOVar>(b.node).name);
  if (const auto* la = std::get_if<Lit>(&a.node)) return la->value == std::get<Lit>(b.node).value;
  const auto& fa = std::get<Fun>(a.node);
  const auto& fb = std::get<Fun>(b.node);
  if (fa.name != fb.name || fa.args.size() != fb.args.size()) return false;
  for (std::size_t i = 0; i < fa.args.size(); ++i)
    if (!expr_eq(fa.args[i], fb.args[i], fo)) return false;
  return true;
}

bool formula_eq(const Formula& a, const Formula& b, Pairs& fo, Pairs& sop) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* pa = std::get_if<Pred>(&a.node)) {
    const auto& pb = std::get<Pred>(b.node);
    if (!same_name(sop, pa->name, pb.name) || pa->args.size() != pb.args.size()) return false;
    for (std::size_t i = 0; i < pa->args.size(); ++i)
      if (!expr_eq(pa->args[i], pb.args[i], fo)) return false;
    return true;
  }
  if (const auto* ia = std::get_if<Implies>(&a.node)) {
    const auto& ib = std::get<Implies>(b.node);
    return formula_eq(*ia->lhs, *ib.lhs, fo, sop) && formula_eq(*ia->rhs, *ib.rhs, fo, sop);
  }
  if (const auto* qa = std::get_if<ForallFO>(&a.node)) {
    const auto& qb = std::get<ForallFO>(b.node);
    fo.emplace_back(qa->var, qb.var);
    const bool ok = formula_eq(*qa->body, *qb.body, fo, sop);
    fo.pop_back();
    return ok;
  }
  const auto& qa = std::get<ForallSO>(a.node);
  const auto& qb = std::get<ForallSO>(b.node);
  if (qa.arity != qb.arity) return false;
  sop.emplace_back(qa.pred, qb.pred);
  const bool ok = formula_eq(*qa.body, *qb.body, fo, sop);
  sop.pop_back();
  return ok;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  Pairs fo, sop;
  return formula_eq(a, b, fo, sop);
}

// ---------------------------------------------------------------- substitution

namespace {

using ExprMap = std::map<Name, FOExpr>;

FOExpr subst_expr(const FOExpr& e, const ExprMap& m) {
  if (const auto* v = std::get_if<FOVar>(&e.node)) {
    const auto it = m.find(v->name);
    return it == m.end() ? e : it->second;
  }
  if (const auto* fn = std::get_if<Fun>(&e.node)) {
    Fun out{fn->name, {}};
    for (const auto& a : fn->args) out.args.push_back(subst_expr(a, m));
    return out;
  }
  return e;
}

// Simultaneous capture-avoiding [m(x)/x].
Formula subst_fo_many(const Formula& a, const ExprMap& m) {
  if (m.empty()) return a;
  return std::visit(
      [&](const auto& n) -> Formula {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Pred>) {
          Pred out{n.name, {}};
          for (const auto& e : n.args) out.args.push_back(subst_expr(e, m));
          return out;
        } else if constexpr (std::is_same_v<N, Implies>) {
          return Implies{subst_fo_many(*n.lhs, m), subst_fo_many(*n.rhs, m)};
        } else if constexpr (std::is_same_v<N, ForallFO>) {
          ExprMap inner = m;
          inner.erase(n.var);
          const FreeSymbols body_fv = fv_formula(*n.body);
          std::set<Name> incoming;
          for (const auto& [x, e] : inner) {
            if (!body_fv.fovars.contains(x)) continue;
            const auto fe = fv_expr(e);
            incoming.insert(fe.fovars.begin(), fe.fovars.end());
          }
          if (!incoming.contains(n.var)) return ForallFO{n.var, subst_fo_many(*n.body, inner)};
          std::set<Name> avoid = incoming;
          collect_all(*n.body, avoid);
          for (const auto& [x, e] : inner) avoid.insert(x);
          const Name y = fresh_avoiding(n.var, avoid);
          inner.insert_or_assign(n.var, FOExpr(FOVar{y}));
          return ForallFO{y, subst_fo_many(*n.body, inner)};
        } else {
          return ForallSO{n.pred, n.arity, subst_fo_many(*n.body, m)};
        }
      },
      a.node);
}

Formula rename_pred(const Formula& a, const Name& from, const Name& to) {
  return std::visit(
      [&](const auto& n) -> Formula {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Pred>) {
          return Pred{n.name == from ? to : n.name, n.args};
        } else if constexpr (std::is_same_v<N, Implies>) {
          return Implies{rename_pred(*n.lhs, from, to), rename_pred(*n.rhs, from, to)};
        } else if constexpr (std::is_same_v<N, ForallFO>) {
          return ForallFO{n.var, rename_pred(*n.body, from, to)};
        } else {
          if (n.pred == from) return n;
          return ForallSO{n.pred, n.arity, rename_pred(*n.body, from, to)};
        }
      },
      a.node);
}

}  // namespace

Formula subst_fo(const Formula& a, const FOExpr& e, const Name& x) { return subst_fo_many(a, ExprMap{{x, e}}); }

Formula subst_so(const Formula& a, const SOWitness& b, const Name& X) {
  return std::visit(
      [&](const auto& n) -> Formula {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Pred>) {
          if (n.name != X) return n;
          if (n.args.size() != b.holes.size()) {
            throw ArityMismatch("predicate " + X + " applied to " + std::to_string(n.args.size()) +
                                " arguments but the witness has " + std::to_string(b.holes.size()) + " holes");
          }
          ExprMap m;
          for (std::size_t i = 0; i < n.args.size(); ++i) m.insert_or_assign(b.holes[i], n.args[i]);
          return subst_fo_many(b.body, m);
        } else if constexpr (std::is_same_v<N, Implies>) {
          return Implies{subst_so(*n.lhs, b, X), subst_so(*n.rhs, b, X)};
        } else if constexpr (std::is_same_v<N, ForallFO>) {
          FreeSymbols wfv = fv_formula(b.body);
          for (const auto& h : b.holes) wfv.fovars.erase(h);
          if (!wfv.fovars.contains(n.var) || !fv_formula(*n.body).preds.contains(X)) {
            return ForallFO{n.var, subst_so(*n.body, b, X)};
          }
          std::set<Name> avoid = wfv.fovars;
          collect_all(*n.body, avoid);
          collect_all(b.body, avoid);
          const Name y = fresh_avoiding(n.var, avoid);
          return ForallFO{y, subst_so(subst_fo(*n.body, FOVar{y}, n.var), b, X)};
        } else {
          if (n.pred == X) return n;
          const FreeSymbols wfv = fv_formula(b.body);
          if (!wfv.preds.contains(n.pred) || !fv_formula(*n.body).preds.contains(X)) {
            return ForallSO{n.pred, n.arity, subst_so(*n.body, b, X)};
          }
          std::set<Name> avoid = wfv.preds;
          collect_all(*n.body, avoid);
          collect_all(b.body, avoid);
          avoid.insert(X);
          const Name Y = fresh_avoiding(n.pred, avoid);
          return ForallSO{Y, n.arity, subst_so(rename_pred(*n.body, n.pred, Y), b, X)};
        }
      },
      a.node);
}

// ---------------------------------------------------------------- arities

namespace {

struct ArityTable {
  std::map<Name, std::size_t> preds;
  std::map<Name, std::size_t> funs;
  std::vector<std::pair<Name, std::size_t>> bound;

  void expr(const FOExpr& e) {
    if (const auto* fn = std::get_if<Fun>(&e.node)) {
      note(funs, "function", fn->name, fn->args.size());
      for (const auto& a : fn->args) expr(a);
    }
  }

  void formula(const Formula& a) {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Pred>) {
            for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
              if (it->first != n.name) continue;
              if (it->second != n.args.size()) {
                throw ArityMismatch("bound predicate " + n.name + " declared with arity " +
                                    std::to_string(it->second) + " but applied to " +
                                    std::to_string(n.args.size()) + " arguments");
              }
              for (const auto& e : n.args) expr(e);
              return;
            }
            note(preds, "predicate", n.name, n.args.size());
            for (const auto& e : n.args) expr(e);
          } else if constexpr (std::is_same_v<N, Implies>) {
            formula(*n.lhs);
            formula(*n.rhs);
          } else if constexpr (std::is_same_v<N, ForallFO>) {
            formula(*n.body);
          } else {
            bound.emplace_back(n.pred, n.arity);
            formula(*n.body);
            bound.pop_back();
          }
        },
        a.node);
  }

  static void note(std::map<Name, std::size_t>& table, const char* what, const Name& name, std::size_t k) {
    const auto [it, inserted] = table.emplace(name, k);
    if (!inserted && it->second != k) {
      throw ArityMismatch(std::string(what) + " " + name + " used with arities " + std::to_string(it->second) +
                          " and " + std::to_string(k));
    }
  }
};

}  // namespace

void check_arities(const std::vector<const Formula*>& formulas) {
  ArityTable table;
  for (const Formula* a : formulas) table.formula(*a);
}

// ---------------------------------------------------------------- derivation checking

std::string_view to_string(DRule rule) {
  switch (rule) {
    case DRule::k: return "k";
    case DRule::arrow_r: return "->r";
    case DRule::x: return "x";
    case DRule::upV: return "upV";
    case DRule::kappa: return "kappa";
    case DRule::arrow_l: return "->l";
    case DRule::alpha: return "alpha";
    case DRule::upE: return "upE";
    case DRule::upt: return "upt";
    case DRule::mu: return "mu";
    case DRule::upe: return "upe";
    case DRule::tmu: return "tmu";
    case DRule::tmub: return "tmub";
    case DRule::cut: return "cut";
    case DRule::l: return "l";
    case DRule::eps: return "eps";
    case DRule::taut: return "taut";
    case DRule::tauE: return "tauE";
    case DRule::all1r: return "all1r";
    case DRule::all2r: return "all2r";
    case DRule::all1l: return "all1l";
    case DRule::all2l: return "all2l";
  }
  return "?";
}

std::optional<DRule> parse_drule(std::string_view text) {
  for (int i = 0; i <= static_cast<int>(DRule::all2l); ++i) {
    const auto r = static_cast<DRule>(i);
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

std::string_view to_string(DerivationError::Kind kind) {
  switch (kind) {
    case DerivationError::Kind::RuleMismatch: return "RuleMismatch";
    case DerivationError::Kind::SideConditionViolated: return "SideConditionViolated";
    case DerivationError::Kind::ValueRestrictionViolated: return "ValueRestrictionViolated";
    case DerivationError::Kind::LevelViolation: return "LevelViolation";
    case DerivationError::Kind::ArityMismatch: return "ArityMismatch";
  }
  return "?";
}

DerivationError::DerivationError(Kind kind, const std::string& path, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + " at " + path + ": " + detail), kind_(kind), path_(path) {}

namespace {

using K = DerivationError::Kind;

bool ctx_equal(const FContext& a, const FContext& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].sort != b[i].sort || a[i].name != b[i].name || !alpha_equal(a[i].formula, b[i].formula)) return false;
  }
  return true;
}

const Formula* ctx_lookup(const FContext& ctx, Sort sort, const Name& name) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
    if (it->sort == sort && it->name == name) return &it->formula;
  return nullptr;
}

class Verifier {
 public:
  explicit Verifier(const Signature& sig) : sig_(sig) {}

  void check(const Derivation& d, const std::string& parent) {
    const std::string path = parent.empty() ? std::string(to_string(d.rule)) : parent + "/" + std::string(to_string(d.rule));
    const Conclusion& c = d.concl;
    path_ = &path;

    if (needs_formula(c.level) && !c.formula) fail(K::RuleMismatch, "conclusion lacks a formula");
    if (c.level == Level::tau && !c.produced) fail(K::RuleMismatch, "store conclusion lacks its context");
    const bool quantifier_l = d.rule == DRule::all1l || d.rule == DRule::all2l;
    if (!quantifier_l && !std::holds_alternative<std::monostate>(d.witness)) {
      fail(K::RuleMismatch, "witness given to a rule that takes none");
    }

    switch (d.rule) {
      case DRule::k: {
        level(c, Level::v);
        premises(d, 0);
        const auto& k = subject_alt<Const>(subject<StrongValue>(c).node, "a constant");
        const auto it = sig_.consts.find(k.name);
        if (it == sig_.consts.end()) fail(K::RuleMismatch, "constant " + k.name + " not in signature");
        same_formula(*c.formula, f::pred(it->second), "constant type");
        break;
      }
      case DRule::arrow_r: {
        level(c, Level::v);
        premises(d, 1);
        const auto& lam = subject_alt<Lam>(subject<StrongValue>(c).node, "a λ-abstraction");
        const auto& arr = implies(*c.formula);
        const Derivation& p = d.premises[0];
        premise(p, Level::t, extend(c.ctx, Sort::Var, lam.binder, *arr.lhs), *lam.body);
        same_formula(*p.concl.formula, *arr.rhs, "codomain");
        break;
      }
      case DRule::x: {
        level(c, Level::V);
        premises(d, 0);
        const auto& x = subject_alt<Var>(subject<WeakValue>(c).node, "a variable");
        const Formula* a = ctx_lookup(c.ctx, Sort::Var, x.name);
        if (!a) fail(K::RuleMismatch, "variable " + x.name + " not in context");
        same_formula(*c.formula, *a, "variable type");
        break;
      }
      case DRule::upV: {
        level(c, Level::V);
        premises(d, 1);
        const auto& v = subject_alt<StrongValue>(subject<WeakValue>(c).node, "a strong value");
        lifted(d, Level::v, v);
        break;
      }
      case DRule::kappa: {
        level(c, Level::F);
        premises(d, 0);
        const auto& k = subject_alt<CoConst>(subject<ForcingContext>(c).node, "a co-constant");
        const auto it = sig_.coconsts.find(k.name);
        if (it == sig_.coconsts.end()) fail(K::RuleMismatch, "co-constant " + k.name + " not in signature");
        same_formula(*c.formula, from_type(it->second), "co-constant type");
        break;
      }
      case DRule::arrow_l: {
        level(c, Level::F);
        premises(d, 2);
        const auto& app = subject_alt<App>(subject<ForcingContext>(c).node, "an application context");
        const auto& arr = implies(*c.formula);
        premise(d.premises[0], Level::t, c.ctx, app.arg);
        same_formula(*d.premises[0].concl.formula, *arr.lhs, "argument type");
        premise(d.premises[1], Level::E, c.ctx, *app.rest);
        same_formula(*d.premises[1].concl.formula, *arr.rhs, "result type");
        break;
      }
      case DRule::alpha: {
        level(c, Level::E);
        premises(d, 0);
        const auto& a = subject_alt<CoVar>(subject<CatchableContext>(c).node, "a co-variable");
        const Formula* f = ctx_lookup(c.ctx, Sort::CoVar, a.name);
        if (!f) fail(K::RuleMismatch, "co-variable " + a.name + " not in context");
        same_formula(*c.formula, *f, "co-variable type");
        break;
      }
      case DRule::upE: {
        level(c, Level::E);
        premises(d, 1);
        lifted(d, Level::F, subject_alt<ForcingContext>(subject<CatchableContext>(c).node, "a forcing context"));
        break;
      }
      case DRule::upt: {
        level(c, Level::t);
        premises(d, 1);
        lifted(d, Level::V, subject_alt<WeakValue>(subject<Term>(c).node, "a weak value"));
        break;
      }
      case DRule::mu: {
        level(c, Level::t);
        premises(d, 1);
        const auto& m = subject_alt<Mu>(subject<Term>(c).node, "a µ-abstraction");
        premise(d.premises[0], Level::c, extend(c.ctx, Sort::CoVar, m.binder, *c.formula), *m.body);
        break;
      }
      case DRule::upe: {
        level(c, Level::e);
        premises(d, 1);
        lifted(d, Level::E, subject_alt<CatchableContext>(subject<EvalContext>(c).node, "a catchable context"));
        break;
      }
      case DRule::tmu: {
        level(c, Level::e);
        premises(d, 1);
        const auto& m = subject_alt<Tmu>(subject<EvalContext>(c).node, "a µ̃-abstraction");
        premise(d.premises[0], Level::c, extend(c.ctx, Sort::Var, m.binder, *c.formula), *m.body);
        break;
      }
      case DRule::tmub: {
        level(c, Level::E);
        premises(d, 2);
        const auto& b = subject_alt<TmuBracket>(subject<CatchableContext>(c).node, "a µ̃[] frame");
        const FContext with_x = extend(c.ctx, Sort::Var, b.binder, *c.formula);
        const Derivation& st = d.premises[1];
        premise(st, Level::tau, with_x, *b.suffix);
        premise(d.premises[0], Level::F, concat(with_x, *st.concl.produced), b.forcing);
        same_formula(*d.premises[0].concl.formula, *c.formula, "forced type");
        break;
      }
      case DRule::cut: {
        level(c, Level::c);
        premises(d, 2);
        const auto& cmd = subject<Command>(c);
        premise(d.premises[0], Level::t, c.ctx, cmd.term);
        premise(d.premises[1], Level::e, c.ctx, cmd.context);
        same_formula(*d.premises[1].concl.formula, *d.premises[0].concl.formula, "cut formula");
        break;
      }
      case DRule::l: {
        level(c, Level::l);
        premises(d, 2);
        const auto& cl = subject<Closure>(c);
        const Derivation& st = d.premises[1];
        premise(st, Level::tau, c.ctx, cl.store);
        premise(d.premises[0], Level::c, concat(c.ctx, *st.concl.produced), cl.command);
        break;
      }
      case DRule::eps: {
        level(c, Level::tau);
        premises(d, 0);
        if (!subject<Store>(c).empty()) fail(K::RuleMismatch, "eps needs the empty store");
        if (!c.produced->empty()) fail(K::RuleMismatch, "eps produces the empty context");
        break;
      }
      case DRule::taut:
      case DRule::tauE: {
        level(c, Level::tau);
        premises(d, 2);
        const Store& s = subject<Store>(c);
        if (s.empty()) fail(K::RuleMismatch, "store extension rule on the empty store");
        const Binding& last = s.bindings.back();
        const Sort sort = d.rule == DRule::taut ? Sort::Var : Sort::CoVar;
        if (last.sort() != sort) fail(K::RuleMismatch, "last binding has the wrong sort for this rule");
        Store prefix{std::vector<Binding>(s.bindings.begin(), s.bindings.end() - 1)};
        const Derivation& st = d.premises[0];
        premise(st, Level::tau, c.ctx, prefix);
        const FContext under = concat(c.ctx, *st.concl.produced);
        const Derivation& val = d.premises[1];
        if (sort == Sort::Var) {
          premise(val, Level::t, under, *last.term());
        } else {
          premise(val, Level::E, under, *last.context());
        }
        const FContext expected = extend(*st.concl.produced, sort, last.key, *val.concl.formula, &c.ctx);
        if (!ctx_equal(expected, *c.produced)) fail(K::RuleMismatch, "produced context does not match premises");
        break;
      }
      case DRule::all1r:
      case DRule::all2r: {
        if (c.level != Level::v) {
          fail(K::ValueRestrictionViolated, "∀-introduction at level " + std::string(to_string(c.level)) +
                                                 ", only strong values may be generalised");
        }
        premises(d, 1);
        premise(d.premises[0], Level::v, c.ctx, subject<StrongValue>(c));
        const Formula& body = *d.premises[0].concl.formula;
        const FreeSymbols gamma = fv_context(c.ctx);
        // The eigenvariable is whatever name the premise uses; the
        // conclusion's binder is only a candidate, up to α.
        if (d.rule == DRule::all1r) {
          const auto* q = std::get_if<ForallFO>(&c.formula->node);
          if (!q) fail(K::RuleMismatch, "conclusion is not a first-order ∀");
          const auto eigen = eigenvariable(body, *c.formula, q->var, fv_formula(body).fovars, [](Name x, const Formula& b) {
            return Formula(ForallFO{std::move(x), b});
          });
          if (!eigen) fail(K::RuleMismatch, "generalised formula: " + to_string(body) + " vs " + to_string(*q->body));
          if (gamma.fovars.contains(*eigen)) fail(K::SideConditionViolated, *eigen + " is free in the context");
        } else {
          const auto* q = std::get_if<ForallSO>(&c.formula->node);
          if (!q) fail(K::RuleMismatch, "conclusion is not a second-order ∀");
          const std::size_t k = q->arity;
          const auto eigen = eigenvariable(body, *c.formula, q->pred, fv_formula(body).preds, [k](Name X, const Formula& b) {
            return Formula(ForallSO{std::move(X), k, b});
          });
          if (!eigen) fail(K::RuleMismatch, "generalised formula: " + to_string(body) + " vs " + to_string(*q->body));
          if (gamma.preds.contains(*eigen)) fail(K::SideConditionViolated, *eigen + " is free in the context");
        }
        break;
      }
      case DRule::all1l:
      case DRule::all2l: {
        if (c.level != Level::e) {
          fail(K::LevelViolation, "∀-elimination at level " + std::string(to_string(c.level)) + ", only e is allowed");
        }
        premises(d, 1);
        Formula instance = *c.formula;
        if (d.rule == DRule::all1l) {
          const auto* q = std::get_if<ForallFO>(&c.formula->node);
          if (!q) fail(K::RuleMismatch, "conclusion is not a first-order ∀");
          const auto* w = std::get_if<FOExpr>(&d.witness);
          if (!w) fail(K::RuleMismatch, "all1l needs an expression witness");
          if (!fv_expr(*w).fovars.empty()) fail(K::RuleMismatch, "witness must be a closed expression");
          instance = subst_fo(*q->body, *w, q->var);
        } else {
          const auto* q = std::get_if<ForallSO>(&c.formula->node);
          if (!q) fail(K::RuleMismatch, "conclusion is not a second-order ∀");
          const auto* w = std::get_if<SOWitness>(&d.witness);
          if (!w) fail(K::RuleMismatch, "all2l needs a formula witness");
          if (w->holes.size() != q->arity) {
            fail(K::ArityMismatch, "witness has " + std::to_string(w->holes.size()) + " holes, " + q->pred +
                                       " has arity " + std::to_string(q->arity));
          }
          try {
            instance = subst_so(*q->body, *w, q->pred);
          } catch (const ArityMismatch& err) {
            fail(K::ArityMismatch, err.what());
          }
        }
        premise(d.premises[0], Level::e, c.ctx, subject<EvalContext>(c));
        same_formula(*d.premises[0].concl.formula, instance, "instantiated formula");
        break;
      }
    }

    for (const auto& p : d.premises) check(p, path);
  }

 private:
  static bool needs_formula(Level l) { return l != Level::c && l != Level::tau && l != Level::l; }

  // Name N such that bind(N, body) ≡α concl, trying the conclusion's own binder first.
  template <class Bind>
  static std::optional<Name> eigenvariable(const Formula& body, const Formula& concl, const Name& binder,
                                           const std::set<Name>& free_in_body, Bind bind) {
    if (alpha_equal(bind(binder, body), concl)) return binder;
    for (const Name& n : free_in_body)
      if (alpha_equal(bind(n, body), concl)) return n;
    return std::nullopt;
  }

  [[noreturn]] void fail(K kind, const std::string& detail) const { throw DerivationError(kind, *path_, detail); }

  void level(const Conclusion& c, Level want) const {
    if (c.level != want) {
      fail(K::RuleMismatch, "rule concludes at level " + std::string(to_string(want)) + ", not " +
                                std::string(to_string(c.level)));
    }
  }

  void premises(const Derivation& d, std::size_t n) const {
    if (d.premises.size() != n) {
      fail(K::RuleMismatch, "expected " + std::to_string(n) + " premises, got " + std::to_string(d.premises.size()));
    }
  }

  template <class T>
  const T& subject(const Conclusion& c) const {
    const T* s = std::get_if<T>(&c.subject);
    if (!s) fail(K::RuleMismatch, "subject has the wrong syntactic category");
    return *s;
  }

  template <class Alt, class Variant>
  const Alt& subject_alt(const Variant& v, const char* what) const {
    const Alt* a = std::get_if<Alt>(&v);
    if (!a) fail(K::RuleMismatch, std::string("subject is not ") + what);
    return *a;
  }

  const Implies& implies(const Formula& a) const {
    const auto* i = std::get_if<Implies>(&a.node);
    if (!i) fail(K::RuleMismatch, "formula is not an implication: " + to_string(a));
    return *i;
  }

  void same_formula(const Formula& got, const Formula& want, const char* what) const {
    if (!alpha_equal(got, want)) fail(K::RuleMismatch, std::string(what) + ": " + to_string(got) + " vs " + to_string(want));
  }

  /// Γ, name : formula. `outer` is additionally checked for clashes.
  FContext extend(const FContext& ctx, Sort sort, const Name& name, const Formula& formula,
                  const FContext* outer = nullptr) const {
    if (ctx_lookup(ctx, sort, name) || (outer && ctx_lookup(*outer, sort, name))) {
      fail(K::RuleMismatch, name + " already occurs in the context");
    }
    FContext out = ctx;
    out.push_back(FEntry{sort, name, formula});
    return out;
  }

  FContext concat(const FContext& a, const FContext& b) const {
    FContext out = a;
    for (const auto& e : b) out = extend(out, e.sort, e.name, e.formula);
    return out;
  }

  template <class T>
  void premise(const Derivation& p, Level want, const FContext& ctx, const T& node) const {
    if (p.concl.level != want) {
      fail(K::RuleMismatch, "premise at level " + std::string(to_string(p.concl.level)) + ", expected " +
                                std::string(to_string(want)));
    }
    if (!ctx_equal(p.concl.ctx, ctx)) fail(K::RuleMismatch, "premise context differs from the one the rule needs");
    const T* s = std::get_if<T>(&p.concl.subject);
    if (!s || !(*s == node)) fail(K::RuleMismatch, "premise subject is not the expected sub-term");
    if (needs_formula(want) && !p.concl.formula) fail(K::RuleMismatch, "premise lacks a formula");
    if (want == Level::tau && !p.concl.produced) fail(K::RuleMismatch, "store premise lacks its context");
  }

  template <class T>
  void lifted(const Derivation& d, Level want, const T& node) const {
    premise(d.premises[0], want, d.concl.ctx, node);
    same_formula(*d.premises[0].concl.formula, *d.concl.formula, "lifted formula");
  }

  const Signature& sig_;
  const std::string* path_ = nullptr;
};

void gather_formulas(const Derivation& d, std::vector<const Formula*>& out) {
  for (const auto& e : d.concl.ctx) out.push_back(&e.formula);
  if (d.concl.formula) out.push_back(&*d.concl.formula);
  if (d.concl.produced)
    for (const auto& e : *d.concl.produced) out.push_back(&e.formula);
  if (const auto* w = std::get_if<SOWitness>(&d.witness)) out.push_back(&w->body);
  for (const auto& p : d.premises) gather_formulas(p, out);
}

}  // namespace

void check_derivation(const Derivation& d, const Signature& sig) {
  std::vector<const Formula*> all;
  gather_formulas(d, all);
  try {
    check_arities(all);
  } catch (const ArityMismatch& err) {
    throw DerivationError(K::ArityMismatch, std::string(to_string(d.rule)), err.what());
  }
  Verifier(sig).check(d, "");
}

std::size_t size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& p : d.premises) n += size(p);
  return n;
}

// ---------------------------------------------------------------- text form

FOExpr parse_expr(const SExpr& s) {
  if (s.is_form("fovar") && s.items.size() == 2) return FOVar{parse_name(s.items[1])};
  if (s.is_form("lit") && s.items.size() == 2 && s.items[1].is_atom()) {
    const std::string& digits = s.items[1].atom;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      syntax_error(s.items[1], "literal must be a natural number");
    }
    try {
      return Lit{std::stoull(digits)};
    } catch (const std::out_of_range&) {
      syntax_error(s.items[1], "literal out of range");
    }
  }
  if (s.is_form("fun") && s.items.size() >= 2) {
    Fun out{parse_name(s.items[1]), {}};
    for (std::size_t i = 2; i < s.items.size(); ++i) out.args.push_back(parse_expr(s.items[i]));
    return out;
  }
  syntax_error(s, "expected (fovar x), (fun f e*) or (lit n)");
}

Formula parse_formula(const SExpr& s) {
  if (s.is_form("pred") && s.items.size() >= 2) {
    Pred out{parse_name(s.items[1]), {}};
    for (std::size_t i = 2; i < s.items.size(); ++i) out.args.push_back(parse_expr(s.items[i]));
    return out;
  }
  if (s.is_form("->") && s.items.size() == 3) return f::implies(parse_formula(s.items[1]), parse_formula(s.items[2]));
  if (s.is_form("allfo") && s.items.size() == 3) return f::all_fo(parse_name(s.items[1]), parse_formula(s.items[2]));
  if (s.is_form("allso") && s.items.size() == 4 && s.items[2].is_atom()) {
    const std::string& k = s.items[2].atom;
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) {
      syntax_error(s.items[2], "arity must be a natural number");
    }
    return f::all_so(parse_name(s.items[1]), std::stoul(k), parse_formula(s.items[3]));
  }
  syntax_error(s, "expected a formula: (pred ...), (-> ...), (allfo ...) or (allso ...)");
}

FContext parse_fcontext(const SExpr& s) {
  if (!s.is_form("ctx")) syntax_error(s, "expected (ctx ...)");
  FContext out;
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    const SExpr& e = s.items[i];
    const bool var = e.is_form("var");
    if (!(var || e.is_form("covar")) || e.items.size() != 3) syntax_error(e, "expected (var x f) or (covar a f)");
    const Sort sort = var ? Sort::Var : Sort::CoVar;
    Name name = parse_name(e.items[1]);
    if (ctx_lookup(out, sort, name)) syntax_error(e, name + " occurs twice in the context");
    out.push_back(FEntry{sort, std::move(name), parse_formula(e.items[2])});
  }
  return out;
}

namespace {

AnyNode parse_subject(Level level, const SExpr& s) {
  switch (level) {
    case Level::v: return parse_strong_value(s);
    case Level::V: return parse_weak_value(s);
    case Level::t: return parse_term(s);
    case Level::F: return parse_forcing(s);
    case Level::E: return parse_catchable(s);
    case Level::e: return parse_eval_context(s);
    case Level::c: return parse_command(s);
    case Level::tau: return parse_store(s);
    case Level::l: return parse_closure(s);
  }
  syntax_error(s, "unknown level");
}

}  // namespace

Derivation parse_derivation(const SExpr& s) {
  if (!s.is_form("deriv") || s.items.size() < 3) syntax_error(s, "expected (deriv RULE (concl ...) ...)");
  if (!s.items[1].is_atom()) syntax_error(s.items[1], "rule name expected");
  const auto rule = parse_drule(s.items[1].atom);
  if (!rule) syntax_error(s.items[1], "unknown rule " + s.items[1].atom);

  const SExpr& cs = s.items[2];
  if (!cs.is_form("concl") || cs.items.size() < 4 || !cs.items[1].is_atom()) {
    syntax_error(cs, "expected (concl LEVEL ctx subject slot?)");
  }
  const auto level = parse_level(cs.items[1].atom);
  if (!level) syntax_error(cs.items[1], "unknown level " + cs.items[1].atom);
  const bool has_formula = *level != Level::c && *level != Level::tau && *level != Level::l;
  const std::size_t want = (*level == Level::c || *level == Level::l) ? 4 : 5;
  if (cs.items.size() != want) syntax_error(cs, "wrong number of fields for a conclusion at this level");

  Conclusion concl{*level, parse_fcontext(cs.items[2]), parse_subject(*level, cs.items[3]), std::nullopt,
                   std::nullopt};
  if (has_formula) concl.formula = parse_formula(cs.items[4]);
  if (*level == Level::tau) concl.produced = parse_fcontext(cs.items[4]);

  Derivation d{*rule, std::move(concl), std::monostate{}, {}};
  std::size_t i = 3;
  if (i < s.items.size() && s.items[i].is_form("witness")) {
    const SExpr& w = s.items[i];
    if (w.items.size() == 2) {
      d.witness = parse_expr(w.items[1]);
    } else if (w.items.size() == 3 && w.items[1].is_form("holes")) {
      SOWitness sw{{}, parse_formula(w.items[2])};
      for (std::size_t j = 1; j < w.items[1].items.size(); ++j) sw.holes.push_back(parse_name(w.items[1].items[j]));
      d.witness = std::move(sw);
    } else {
      syntax_error(w, "expected (witness expr) or (witness (holes x*) formula)");
    }
    ++i;
  }
  for (; i < s.items.size(); ++i) d.premises.push_back(parse_derivation(s.items[i]));
  return d;
}

Derivation parse_derivation(std::string_view text) { return parse_derivation(read_sexpr(text)); }

std::string to_sexpr(const FOExpr& e) {
  if (const auto* v = std::get_if<FOVar>(&e.node)) return "(fovar " + v->name + ")";
  if (const auto* n = std::get_if<Lit>(&e.node)) return "(lit " + std::to_string(n->value) + ")";
  const auto& fn = std::get<Fun>(e.node);
  std::string out = "(fun " + fn.name;
  for (const auto& a : fn.args) out += " " + to_sexpr(a);
  return out + ")";
}

std::string to_sexpr(const Formula& a) {
  return std::visit(
      [](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Pred>) {
          std::string out = "(pred " + n.name;
          for (const auto& e : n.args) out += " " + to_sexpr(e);
          return out + ")";
        } else if constexpr (std::is_same_v<N, Implies>) {
          return "(-> " + to_sexpr(*n.lhs) + " " + to_sexpr(*n.rhs) + ")";
        } else if constexpr (std::is_same_v<N, ForallFO>) {
          return "(allfo " + n.var + " " + to_sexpr(*n.body) + ")";
        } else {
          return "(allso " + n.pred + " " + std::to_string(n.arity) + " " + to_sexpr(*n.body) + ")";
        }
      },
      a.node);
}

std::string to_sexpr(const FContext& ctx) {
  std::string out = "(ctx";
  for (const auto& e : ctx) {
    out += e.sort == Sort::Var ? " (var " : " (covar ";
    out += e.name + " " + to_sexpr(e.formula) + ")";
  }
  return out + ")";
}

std::string to_sexpr(const Derivation& d) {
  std::string out = "(deriv " + std::string(to_string(d.rule)) + " (concl " + std::string(to_string(d.concl.level)) +
                    " " + to_sexpr(d.concl.ctx) + " ";
  out += std::visit([](const auto& n) { return lvt::to_sexpr(n); }, d.concl.subject);
  if (d.concl.formula) out += " " + to_sexpr(*d.concl.formula);
  if (d.concl.produced) out += " " + to_sexpr(*d.concl.produced);
  out += ")";
  if (const auto* e = std::get_if<FOExpr>(&d.witness)) out += " (witness " + to_sexpr(*e) + ")";
  if (const auto* w = std::get_if<SOWitness>(&d.witness)) {
    out += " (witness (holes";
    for (const auto& h : w->holes) out += " " + h;
    out += ") " + to_sexpr(w->body) + ")";
  }
  for (const auto& p : d.premises) out += " " + to_sexpr(p);
  return out + ")";
}

namespace {

std::string expr_string(const FOExpr& e) {
  if (const auto* v = std::get_if<FOVar>(&e.node)) return v->name;
  if (const auto* n = std::get_if<Lit>(&e.node)) return std::to_string(n->value);
  const auto& fn = std::get<Fun>(e.node);
  std::string out = fn.name + "(";
  for (std::size_t i = 0; i < fn.args.size(); ++i) out += (i ? ", " : "") + expr_string(fn.args[i]);
  return out + ")";
}

}  // namespace

std::string to_string(const Formula& a) {
  return std::visit(
      [](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Pred>) {
          if (n.args.empty()) return n.name;
          std::string out = n.name + "(";
          for (std::size_t i = 0; i < n.args.size(); ++i) out += (i ? ", " : "") + expr_string(n.args[i]);
          return out + ")";
        } else if constexpr (std::is_same_v<N, Implies>) {
          const bool paren = !std::holds_alternative<Pred>(n.lhs->node);
          const std::string lhs = to_string(*n.lhs);
          return (paren ? "(" + lhs + ")" : lhs) + " → " + to_string(*n.rhs);
        } else if constexpr (std::is_same_v<N, ForallFO>) {
          return "∀" + n.var + ".(" + to_string(*n.body) + ")";
        } else {
          return "∀" + n.pred + (n.arity ? "/" + std::to_string(n.arity) : "") + ".(" + to_string(*n.body) + ")";
        }
      },
      a.node);
}

// ---------------------------------------------------------------- elaboration

namespace {

FContext to_fcontext(const TypingContext& ctx) {
  FContext out;
  for (const auto& e : ctx.entries()) out.push_back(FEntry{e.sort, e.name, from_type(e.type)});
  return out;
}

class Elaborator {
 public:
  explicit Elaborator(const Signature& sig) : sig_(sig) {}

  struct Typed {
    Derivation d;
    Type type;
  };

  Typed v(const TypingContext& g, const StrongValue& node) {
    if (const auto* k = std::get_if<Const>(&node.node)) {
      const auto it = sig_.consts.find(k->name);
      if (it == sig_.consts.end()) throw TypeError(Level::v, to_sexpr(node), "constant " + k->name + " not in signature");
      Type a = Type::atom(it->second);
      return {leaf(DRule::k, Level::v, g, node, a), a};
    }
    const auto& lam = std::get<Lam>(node.node);
    Typed body = t(bind(g, Sort::Var, lam.binder, lam.annot, Level::v), *lam.body);
    Type a = Type::arrow(lam.annot, body.type);
    return {node_of(DRule::arrow_r, Level::v, g, node, a, {std::move(body.d)}), a};
  }

  Typed V(const TypingContext& g, const WeakValue& node) {
    if (const auto* x = std::get_if<Var>(&node.node)) {
      const Type* a = g.lookup(Sort::Var, x->name);
      if (!a) throw TypeError(Level::V, to_sexpr(node), "unbound variable " + x->name);
      return {leaf(DRule::x, Level::V, g, node, *a), *a};
    }
    Typed inner = v(g, std::get<StrongValue>(node.node));
    return lift(DRule::upV, Level::V, g, node, std::move(inner));
  }

  Typed t(const TypingContext& g, const Term& node) {
    if (const auto* m = node.as_mu()) {
      Derivation body = c(bind(g, Sort::CoVar, m->binder, m->annot, Level::t), *m->body);
      return {node_of(DRule::mu, Level::t, g, node, m->annot, {std::move(body)}), m->annot};
    }
    return lift(DRule::upt, Level::t, g, node, V(g, *node.as_weak()));
  }

  Typed F(const TypingContext& g, const ForcingContext& node) {
    if (const auto* k = std::get_if<CoConst>(&node.node)) {
      const auto it = sig_.coconsts.find(k->name);
      if (it == sig_.coconsts.end()) {
        throw TypeError(Level::F, to_sexpr(node), "co-constant " + k->name + " not in signature");
      }
      return {leaf(DRule::kappa, Level::F, g, node, it->second), it->second};
    }
    const auto& app = std::get<App>(node.node);
    Typed arg = t(g, app.arg);
    Typed rest = E(g, *app.rest);
    Type a = Type::arrow(arg.type, rest.type);
    return {node_of(DRule::arrow_l, Level::F, g, node, a, {std::move(arg.d), std::move(rest.d)}), a};
  }

  Typed E(const TypingContext& g, const CatchableContext& node) {
    if (const auto* f = node.as_forcing()) return lift(DRule::upE, Level::E, g, node, F(g, *f));
    if (const auto* a = node.as_covar()) {
      const Type* ty = g.lookup(Sort::CoVar, a->name);
      if (!ty) throw TypeError(Level::E, to_sexpr(node), "unbound co-variable " + a->name);
      return {leaf(DRule::alpha, Level::E, g, node, *ty), *ty};
    }
    const auto& b = *node.as_bracket();
    const TypingContext gx = bind(g, Sort::Var, b.binder, b.annot, Level::E);
    auto [st, produced] = tau(gx, *b.suffix);
    Typed forced = F(gx.concat(produced), b.forcing);
    if (!(forced.type == b.annot)) throw TypeError(Level::E, to_sexpr(node), "bracket type mismatch", b.annot, forced.type);
    return {node_of(DRule::tmub, Level::E, g, node, b.annot, {std::move(forced.d), std::move(st)}), b.annot};
  }

  Typed e(const TypingContext& g, const EvalContext& node) {
    if (const auto* m = node.as_tmu()) {
      Derivation body = c(bind(g, Sort::Var, m->binder, m->annot, Level::e), *m->body);
      return {node_of(DRule::tmu, Level::e, g, node, m->annot, {std::move(body)}), m->annot};
    }
    return lift(DRule::upe, Level::e, g, node, E(g, *node.as_catchable()));
  }

  Derivation c(const TypingContext& g, const Command& node) {
    Typed lhs = t(g, node.term);
    Typed rhs = e(g, node.context);
    if (!(lhs.type == rhs.type)) throw TypeError(Level::c, to_sexpr(node), "cut mismatch", lhs.type, rhs.type);
    return Derivation{DRule::cut, Conclusion{Level::c, to_fcontext(g), node, std::nullopt, std::nullopt},
                      std::monostate{}, {std::move(lhs.d), std::move(rhs.d)}};
  }

  std::pair<Derivation, TypingContext> tau(const TypingContext& g, const Store& s) {
    const FContext fg = to_fcontext(g);
    Derivation d{DRule::eps, Conclusion{Level::tau, fg, Store{}, std::nullopt, FContext{}}, std::monostate{}, {}};
    TypingContext produced;
    Store prefix;
    for (const auto& b : s.bindings) {
      const TypingContext under = g.concat(produced);
      Typed val = b.term() ? t(under, *b.term()) : E(under, *b.context());
      if (g.contains(b.sort(), b.key) || produced.contains(b.sort(), b.key)) {
        throw TypeError(Level::tau, to_sexpr(s), "store key " + b.key + " already bound in context");
      }
      produced = produced.with(b.sort(), b.key, val.type);
      prefix.bindings.push_back(b);
      const DRule rule = b.term() ? DRule::taut : DRule::tauE;
      d = Derivation{rule, Conclusion{Level::tau, fg, prefix, std::nullopt, to_fcontext(produced)}, std::monostate{},
                     {std::move(d), std::move(val.d)}};
    }
    return {std::move(d), std::move(produced)};
  }

  Derivation l(const Closure& node) {
    auto [st, produced] = tau(TypingContext{}, node.store);
    Derivation cmd = c(produced, node.command);
    return Derivation{DRule::l, Conclusion{Level::l, FContext{}, node, std::nullopt, std::nullopt}, std::monostate{},
                      {std::move(cmd), std::move(st)}};
  }

 private:
  TypingContext bind(const TypingContext& g, Sort sort, const Name& name, const Type& a, Level level) const {
    if (g.contains(sort, name)) throw TypeError(level, name, "binder " + name + " already occurs in the typing context");
    return g.with(sort, name, a);
  }

  template <class Node>
  static Derivation leaf(DRule rule, Level level, const TypingContext& g, const Node& node, const Type& a) {
    return node_of(rule, level, g, node, a, {});
  }

  template <class Node>
  static Derivation node_of(DRule rule, Level level, const TypingContext& g, const Node& node, const Type& a,
                            std::vector<Derivation> premises) {
    return Derivation{rule, Conclusion{level, to_fcontext(g), AnyNode(node), from_type(a), std::nullopt},
                      std::monostate{}, std::move(premises)};
  }

  template <class Node>
  static Typed lift(DRule rule, Level level, const TypingContext& g, const Node& node, Typed inner) {
    Type a = inner.type;
    return {node_of(rule, level, g, node, a, {std::move(inner.d)}), std::move(a)};
  }

  const Signature& sig_;
};

}  // namespace

Derivation elaborate_closure(const Signature& sig, const Closure& l) { return Elaborator(sig).l(l); }

Derivation elaborate_strong_value(const Signature& sig, const TypingContext& ctx, const StrongValue& v) {
  return Elaborator(sig).v(ctx, v).d;
}

}  // namespace lvt::so
