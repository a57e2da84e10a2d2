#include <map>

#include "gen_internal.hpp"
#include "lvt/format.hpp"
#include "lvt/harness.hpp"

namespace lvt {

namespace pure {
PureTerm var(Name x) { return PVar{std::move(x)}; }
PureTerm konst(Name k) { return PConst{std::move(k)}; }
PureTerm lam(Name x, Type annot, PureTerm body) { return PLam{std::move(x), std::move(annot), std::move(body)}; }
PureTerm app(PureTerm f, PureTerm a) { return PApp{std::move(f), std::move(a)}; }
}  // namespace pure

std::string to_string(const PureTerm& t) {
  return std::visit(
      [](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PVar> || std::is_same_v<N, PConst>) {
          return n.name;
        } else if constexpr (std::is_same_v<N, PLam>) {
          return "(\\" + n.binder + ":" + to_sexpr(n.annot) + ". " + to_string(*n.body) + ")";
        } else {
          return "(" + to_string(*n.fun) + " " + to_string(*n.arg) + ")";
        }
      },
      t.node);
}

namespace {

using Env = std::vector<std::pair<Name, Type>>;

const Type* env_lookup(const Env& env, const Name& x) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == x) return &it->second;
  return nullptr;
}

Type type_of(const Signature& sig, Env& env, const PureTerm& t) {
  return std::visit(
      [&](const auto& n) -> Type {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PVar>) {
          const Type* a = env_lookup(env, n.name);
          if (!a) throw IllTypedPureTerm("unbound variable " + n.name);
          return *a;
        } else if constexpr (std::is_same_v<N, PConst>) {
          const auto it = sig.consts.find(n.name);
          if (it == sig.consts.end()) throw IllTypedPureTerm("unknown constant " + n.name);
          return Type::atom(it->second);
        } else if constexpr (std::is_same_v<N, PLam>) {
          env.emplace_back(n.binder, n.annot);
          Type body = type_of(sig, env, *n.body);
          env.pop_back();
          return Type::arrow(n.annot, std::move(body));
        } else {
          const Type f = type_of(sig, env, *n.fun);
          const Type a = type_of(sig, env, *n.arg);
          const auto* arr = f.as_arrow();
          if (!arr) throw IllTypedPureTerm("applying a term of type " + to_string(f));
          if (!(*arr->dom == a)) {
            throw IllTypedPureTerm("argument of type " + to_string(a) + " where " + to_string(*arr->dom) + " is expected");
          }
          return *arr->cod;
        }
      },
      t.node);
}

std::pair<Term, Type> embed(const Signature& sig, Env& env, const PureTerm& t, FreshSupply& fresh) {
  return std::visit(
      [&](const auto& n) -> std::pair<Term, Type> {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PVar>) {
          return {Var{n.name}, type_of(sig, env, t)};
        } else if constexpr (std::is_same_v<N, PConst>) {
          return {Const{n.name}, type_of(sig, env, t)};
        } else if constexpr (std::is_same_v<N, PLam>) {
          env.emplace_back(n.binder, n.annot);
          auto [body, cod] = embed(sig, env, *n.body, fresh);
          env.pop_back();
          return {Lam{n.binder, n.annot, std::move(body)}, Type::arrow(n.annot, cod)};
        } else {
          auto [u, tu] = embed(sig, env, *n.fun, fresh);
          auto [v, tv] = embed(sig, env, *n.arg, fresh);
          const auto* arr = tu.as_arrow();
          if (!arr || !(*arr->dom == tv)) throw IllTypedPureTerm("ill-typed application " + to_string(t));
          const Type result = *arr->cod;
          Name alpha = fresh.fresh("a");
          Command body{std::move(u), EvalContext(App{std::move(v), CatchableContext(CoVar{alpha})})};
          return {Mu{std::move(alpha), result, std::move(body)}, result};
        }
      },
      t.node);
}

// The substituted argument is always closed: weak-head reduction of a closed
// term only ever substitutes spine arguments, which are closed subterms.
PureTerm substitute(const PureTerm& t, const Name& x, const PureTerm& arg) {
  return std::visit(
      [&](const auto& n) -> PureTerm {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PVar>) {
          return n.name == x ? arg : t;
        } else if constexpr (std::is_same_v<N, PConst>) {
          return t;
        } else if constexpr (std::is_same_v<N, PLam>) {
          if (n.binder == x) return t;
          return PLam{n.binder, n.annot, substitute(*n.body, x, arg)};
        } else {
          return PApp{substitute(*n.fun, x, arg), substitute(*n.arg, x, arg)};
        }
      },
      t.node);
}

}  // namespace

Type pure_type(const Signature& sig, const PureTerm& t) {
  Env env;
  return type_of(sig, env, t);
}

Term embed_pure(const Signature& sig, const PureTerm& t, FreshSupply& fresh) {
  Env env;
  return embed(sig, env, t, fresh).first;
}

std::optional<Name> cbn_eval(const PureTerm& t, std::uint64_t fuel) {
  PureTerm head = t;
  std::vector<PureTerm> spine;  // pending arguments, innermost last
  for (;;) {
    if (const auto* a = std::get_if<PApp>(&head.node)) {
      spine.push_back(*a->arg);
      PureTerm f = *a->fun;
      head = std::move(f);
    } else if (const auto* l = std::get_if<PLam>(&head.node)) {
      if (spine.empty()) return std::nullopt;
      if (fuel == 0) return std::nullopt;
      --fuel;
      PureTerm next = substitute(*l->body, l->binder, spine.back());
      spine.pop_back();
      head = std::move(next);
    } else if (const auto* k = std::get_if<PConst>(&head.node)) {
      if (!spine.empty()) return std::nullopt;
      return k->name;
    } else {
      return std::nullopt;  // free variable
    }
  }
}

namespace {

class PureGen {
 public:
  PureGen(const Signature& sig, detail::Rng& rng) : sig_(sig), rng_(rng) {
    for (const auto& [k, atom] : sig.consts) consts_[atom].push_back(k);
    for (const auto& [kappa, type] : sig.coconsts)
      if (const auto* a = type.as_atom(); a && consts_.contains(a->name)) atoms_.push_back(a->name);
    if (atoms_.empty()) throw GenerationFailed("no atomic type with a constant and a co-constant");
  }

  Type atom() { return Type::atom(rng_.pick(atoms_)); }

  Type random_type(int depth) {
    if (depth <= 0 || rng_.chance(0.6)) return atom();
    return Type::arrow(random_type(depth - 1), random_type(depth - 1));
  }

  PureTerm gen(const Type& a, int d) {
    std::vector<Name> xs;
    for (const auto& [x, type] : env_)
      if (type == a) xs.push_back(x);
    if (!xs.empty() && rng_.chance(0.4)) return PVar{rng_.pick(xs)};
    if (d > 0 && rng_.chance(0.7)) {
      const Type b = random_type(1);
      PureTerm f = gen(Type::arrow(b, a), d - 1);
      PureTerm arg = gen(b, d - 1);
      return PApp{std::move(f), std::move(arg)};
    }
    if (const auto* at = a.as_atom()) return PConst{rng_.pick(consts_.at(at->name))};
    const auto& arr = *a.as_arrow();
    Name x = "x" + std::to_string(counter_++);
    env_.emplace_back(x, *arr.dom);
    PureTerm body = gen(*arr.cod, d - 1);
    env_.pop_back();
    return PLam{std::move(x), *arr.dom, std::move(body)};
  }

 private:
  const Signature& sig_;
  detail::Rng& rng_;
  std::map<Name, std::vector<Name>> consts_;
  std::vector<Name> atoms_;
  Env env_;
  std::uint64_t counter_ = 0;
};

}  // namespace

PureTerm gen_pure_term(const Signature& sig, std::uint64_t seed, int max_depth) {
  detail::Rng rng(seed);
  PureGen gen(sig, rng);
  return gen.gen(gen.atom(), max_depth);
}

Report cbn_agreement_check(const Signature& sig, const PureTerm& t, std::uint64_t fuel) {
  Report r;
  r.name = "cbn_agreement";
  const std::string subject = to_string(t);
  Type a = Type::atom("?");
  try {
    a = pure_type(sig, t);
  } catch (const IllTypedPureTerm& e) {
    ++r.precondition_failed;
    r.notes.push_back(std::string("precondition violated: ") + e.what() + ": " + subject);
    return r;
  }
  const auto* atom = a.as_atom();
  Name kappa;
  for (const auto& [name, type] : sig.coconsts) {
    if (type == a) {
      kappa = name;
      break;
    }
  }
  if (!atom || kappa.empty()) {
    ++r.precondition_failed;
    r.notes.push_back("precondition violated: no co-constant at type " + to_string(a) + ": " + subject);
    return r;
  }

  FreshSupply fresh;
  const Closure start{Command{embed_pure(sig, t, fresh), EvalContext(CoConst{kappa})}, Store{}};
  const Trace trace = run(start, fuel, fresh, RunOptions{nullptr, false, {}});
  std::optional<Name> machine;
  if (trace.outcome.kind == Outcome::Kind::Normal && is_value_vs_coconst(trace.final_state)) {
    const auto* k = std::get_if<Const>(&trace.final_state.command.term.as_strong()->node);
    const auto& f = *trace.final_state.command.context.as_catchable()->as_forcing();
    if (k && std::get<CoConst>(f.node).name == kappa) machine = k->name;
  }
  const std::optional<Name> reference = cbn_eval(t, fuel);
  r.steps += trace.fuel_used;
  r.histogram[machine ? "machine_constant" : "machine_none"]++;
  r.record(machine == reference && machine.has_value(),
           "machine " + machine.value_or("-") + " vs call-by-name " + reference.value_or("-") + ": " + subject);
  return r;
}

Report cbn_suite(const Signature& sig, std::size_t count, std::uint64_t seed, std::uint64_t fuel) {
  Report r;
  r.name = "cbn_agreement";
  for (std::size_t i = 0; i < count; ++i) {
    const PureTerm t = gen_pure_term(sig, seed + i, 5);
    r.merge(cbn_agreement_check(sig, t, fuel));
  }
  return r;
}

}  // namespace lvt
