#include <set>

#include "gen_internal.hpp"
#include "lvt/format.hpp"

namespace lvt {

Signature default_signature() {
  Signature sig;
  sig.add_const("k", "X");
  sig.add_const("k2", "X");
  sig.add_const("j", "Y");
  sig.add_coconst("q", Type::atom("X"));
  sig.add_coconst("r", Type::atom("Y"));
  sig.add_coconst("h", Type::arrow(Type::atom("X"), Type::atom("Y")));
  return sig;
}

namespace detail {

namespace {

// Atoms with at least one constant and one co-constant: every type built
// from them is inhabited on both sides.
std::vector<Name> usable_atoms(const Signature& sig) {
  std::set<Name> with_const;
  for (const auto& [k, atom] : sig.consts) with_const.insert(atom);
  std::set<Name> out;
  for (const auto& [kappa, type] : sig.coconsts)
    if (const auto* a = type.as_atom(); a && with_const.contains(a->name)) out.insert(a->name);
  return {out.begin(), out.end()};
}

}  // namespace

TypedGen::TypedGen(const GenConfig& cfg, Rng& rng, std::vector<ContextEntry> env)
    : cfg_(cfg), rng_(rng), env_(std::move(env)), atoms_(usable_atoms(cfg.signature)) {
  if (atoms_.empty()) throw GenerationFailed("signature has no atom with both a constant and a co-constant");
}

Name TypedGen::fresh_var() { return "x" + std::to_string(counter_++); }
Name TypedGen::fresh_covar() { return "a" + std::to_string(counter_++); }

Type TypedGen::atom() { return Type::atom(rng_.pick(atoms_)); }

Type TypedGen::random_type(int depth) {
  if (depth <= 0 || rng_.chance(0.55)) return atom();
  return Type::arrow(random_type(depth - 1), random_type(depth - 1));
}

std::vector<Name> TypedGen::candidates(Sort sort, const Type& a) const {
  std::vector<Name> out;
  for (const auto& e : env_)
    if (e.sort == sort && e.type == a) out.push_back(e.name);
  return out;
}

Type TypedGen::cut_type() {
  if (!env_.empty() && rng_.chance(0.6)) return rng_.pick(env_).type;
  return random_type(2);
}

StrongValue TypedGen::strong(const Type& a, int d) {
  if (const auto* at = a.as_atom()) {
    std::vector<Name> ks;
    for (const auto& [k, x] : cfg_.signature.consts)
      if (x == at->name) ks.push_back(k);
    return Const{rng_.pick(ks)};
  }
  const auto& arr = *a.as_arrow();
  const std::size_t m = mark();
  Name x = fresh_var();
  env_.push_back(ContextEntry{Sort::Var, x, *arr.dom});
  Term body = term(*arr.cod, d - 1);
  reset(m);
  return Lam{std::move(x), *arr.dom, std::move(body)};
}

WeakValue TypedGen::weak(const Type& a, int d) {
  const auto xs = candidates(Sort::Var, a);
  if (!xs.empty() && rng_.chance(0.6)) return Var{rng_.pick(xs)};
  return strong(a, d);
}

Term TypedGen::term(const Type& a, int d) {
  if (d > 0 && rng_.chance(cfg_.control_rate)) {
    const std::size_t m = mark();
    Name alpha = fresh_covar();
    env_.push_back(ContextEntry{Sort::CoVar, alpha, a});
    Command body = command(d - 1);
    reset(m);
    return Mu{std::move(alpha), a, std::move(body)};
  }
  return weak(a, d);
}

ForcingContext TypedGen::forcing(const Type& a, int d) {
  std::vector<Name> kappas;
  for (const auto& [kappa, type] : cfg_.signature.coconsts)
    if (type == a) kappas.push_back(kappa);
  const auto* arr = a.as_arrow();
  if (!arr || (!kappas.empty() && rng_.chance(d <= 0 ? 0.5 : 0.25))) return CoConst{rng_.pick(kappas)};
  Term arg = term(*arr->dom, d - 1);
  CatchableContext rest = catchable(*arr->cod, d - 1);
  return App{std::move(arg), std::move(rest)};
}

TmuBracket TypedGen::bracket(const Type& a, int d) {
  const std::size_t m = mark();
  Name x = fresh_var();
  env_.push_back(ContextEntry{Sort::Var, x, a});
  Store suffix = bindings(static_cast<int>(rng_.below(3)), d - 1);
  ForcingContext f = forcing(a, d - 1);
  reset(m);
  return TmuBracket{std::move(x), a, std::move(f), std::move(suffix)};
}

CatchableContext TypedGen::catchable(const Type& a, int d) {
  const auto as = candidates(Sort::CoVar, a);
  if (!as.empty() && rng_.chance(0.5)) return CoVar{rng_.pick(as)};
  if (d > 0 && rng_.chance(cfg_.bracket_rate)) return bracket(a, d);
  return forcing(a, d);
}

EvalContext TypedGen::eval(const Type& a, int d) {
  if (d > 0 && rng_.chance(cfg_.control_rate)) {
    const std::size_t m = mark();
    Name x = fresh_var();
    env_.push_back(ContextEntry{Sort::Var, x, a});
    Command body = command(d - 1);
    reset(m);
    return Tmu{std::move(x), a, std::move(body)};
  }
  return catchable(a, d);
}

Command TypedGen::command(int d) {
  const Type b = cut_type();
  Term t = term(b, d);
  EvalContext e = eval(b, d);
  return Command{std::move(t), std::move(e)};
}

Store TypedGen::bindings(int n, int d) {
  Store s;
  for (int i = 0; i < n; ++i) {
    const Type a = random_type(1);
    if (rng_.chance(0.25)) {
      CatchableContext e = catchable(a, d);
      Name alpha = fresh_covar();
      env_.push_back(ContextEntry{Sort::CoVar, alpha, a});
      s.bindings.push_back(Binding{std::move(alpha), std::move(e)});
    } else {
      Term t = term(a, d);
      Name x = fresh_var();
      env_.push_back(ContextEntry{Sort::Var, x, a});
      s.bindings.push_back(Binding{std::move(x), std::move(t)});
    }
  }
  return s;
}

Closure TypedGen::closure() {
  const std::size_t m = mark();
  Store s = bindings(cfg_.store_prefill, std::max(1, cfg_.max_depth - 2));
  Command c = command(cfg_.max_depth);
  reset(m);
  return Closure{std::move(c), std::move(s)};
}

// ---------------------------------------------------------------- untyped

namespace {
const std::vector<Name> kConsts = {"k", "k2", "j"};
const std::vector<Name> kCoConsts = {"q", "r", "h"};
}  // namespace

Name UntypedGen::fresh(const char* prefix) { return prefix + tag + std::to_string(counter_++); }

Term UntypedGen::term(int d) {
  const std::uint64_t pick = rng_.below(d <= 0 ? 2 : 5);
  if (pick == 0 && !vars.empty()) return Var{rng_.pick(vars)};
  if (pick <= 1) return Const{rng_.pick(kConsts)};
  if (pick <= 3) {
    Name x = fresh("x");
    vars.push_back(x);
    Term body = term(d - 1);
    vars.pop_back();
    return Lam{std::move(x), Type::atom("X"), std::move(body)};
  }
  Name a = fresh("a");
  covars.push_back(a);
  Command body = command(d - 1);
  covars.pop_back();
  return Mu{std::move(a), Type::atom("X"), std::move(body)};
}

ForcingContext UntypedGen::forcing(int d) {
  if (d <= 0 || rng_.chance(0.4)) return CoConst{rng_.pick(kCoConsts)};
  Term arg = term(d - 1);
  CatchableContext rest = catchable(d - 1);
  return App{std::move(arg), std::move(rest)};
}

CatchableContext UntypedGen::catchable(int d) {
  const std::uint64_t pick = rng_.below(d <= 0 ? 2 : 4);
  if (pick == 0 && !covars.empty()) return CoVar{rng_.pick(covars)};
  if (pick <= 2) return forcing(d);
  const std::size_t vmark = vars.size(), cmark = covars.size();
  Name x = fresh("x");
  vars.push_back(x);
  Store suffix = store(static_cast<int>(rng_.below(3)), d - 1);
  ForcingContext f = forcing(d - 1);
  vars.resize(vmark);
  covars.resize(cmark);
  return TmuBracket{std::move(x), Type::atom("X"), std::move(f), std::move(suffix)};
}

EvalContext UntypedGen::eval(int d) {
  if (d > 0 && rng_.chance(0.3)) {
    Name x = fresh("x");
    vars.push_back(x);
    Command body = command(d - 1);
    vars.pop_back();
    return Tmu{std::move(x), Type::atom("X"), std::move(body)};
  }
  return catchable(d);
}

Command UntypedGen::command(int d) {
  Term t = term(d);
  EvalContext e = eval(d);
  return Command{std::move(t), std::move(e)};
}

Binding UntypedGen::binding(int d) {
  if (rng_.chance(0.3)) {
    CatchableContext e = catchable(d);
    Name a = fresh("a");
    covars.push_back(a);
    return Binding{std::move(a), std::move(e)};
  }
  Term t = term(d);
  Name x = fresh("x");
  vars.push_back(x);
  return Binding{std::move(x), std::move(t)};
}

Store UntypedGen::store(int n, int d) {
  Store s;
  for (int i = 0; i < n; ++i) s.bindings.push_back(binding(d));
  return s;
}

}  // namespace detail

Closure gen_typed_closure(const GenConfig& cfg) {
  detail::Rng rng(cfg.seed);
  detail::TypedGen gen(cfg, rng);
  return gen.closure();
}

std::vector<Closure> gen_typed_corpus(const GenConfig& cfg, std::size_t count) {
  std::vector<Closure> out;
  out.reserve(count);
  GenConfig c = cfg;
  for (std::size_t i = 0; i < count; ++i) {
    c.seed = cfg.seed + i;
    out.push_back(gen_typed_closure(c));
  }
  return out;
}

Closure gen_untyped_closure(std::uint64_t seed, int max_depth) {
  detail::Rng rng(seed);
  detail::UntypedGen gen(rng);
  Store s = gen.store(static_cast<int>(rng.below(4)), std::max(1, max_depth - 2));
  Command c = gen.command(max_depth);
  return Closure{std::move(c), std::move(s)};
}

// ---------------------------------------------------------------- counting

namespace {

struct Counter {
  ControlCount& n;

  void term(const Term& t) {
    if (const auto* m = t.as_mu()) {
      ++n.mu;
      command(*m->body);
    } else if (const auto* v = t.as_strong()) {
      if (const auto* lam = std::get_if<Lam>(&v->node)) term(*lam->body);
    }
  }
  void forcing(const ForcingContext& f) {
    if (const auto* a = std::get_if<App>(&f.node)) {
      term(a->arg);
      catchable(*a->rest);
    }
  }
  void catchable(const CatchableContext& e) {
    if (const auto* f = e.as_forcing()) forcing(*f);
    if (const auto* b = e.as_bracket()) {
      ++n.bracket;
      forcing(b->forcing);
      store(*b->suffix);
    }
  }
  void eval(const EvalContext& e) {
    if (const auto* m = e.as_tmu()) {
      ++n.tmu;
      command(*m->body);
    } else {
      catchable(*e.as_catchable());
    }
  }
  void command(const Command& c) {
    term(c.term);
    eval(c.context);
  }
  void store(const Store& s) {
    for (const auto& b : s.bindings) {
      if (b.term()) term(*b.term());
      else catchable(*b.context());
    }
  }
};

}  // namespace

ControlCount count_control(const Closure& l) {
  ControlCount n;
  Counter c{n};
  c.command(l.command);
  c.store(l.store);
  return n;
}

}  // namespace lvt
