#include "lvt/syntax.hpp"

#include <algorithm>
#include <charconv>

namespace lvt {

Type Type::atom(Name name) { return Type{Atom{std::move(name)}}; }

Type Type::arrow(Type dom, Type cod) { return Type{Arrow{std::move(dom), std::move(cod)}}; }

std::string to_string(const Type& type) {
  if (const auto* a = type.as_atom()) return a->name;
  const auto& arrow = *type.as_arrow();
  std::string dom = to_string(*arrow.dom);
  if (!arrow.dom->is_atom()) dom = "(" + dom + ")";
  return dom + " -> " + to_string(*arrow.cod);
}

const Var* Term::as_var() const {
  const auto* w = as_weak();
  return w ? std::get_if<Var>(&w->node) : nullptr;
}

const StrongValue* Term::as_strong() const {
  const auto* w = as_weak();
  return w ? std::get_if<StrongValue>(&w->node) : nullptr;
}

namespace ast {
Term var(Name x) { return Var{std::move(x)}; }
Term konst(Name k) { return Const{std::move(k)}; }
Lam lam(Name x, Type annot, Term body) { return Lam{std::move(x), std::move(annot), std::move(body)}; }
Mu mu(Name alpha, Type annot, Command body) {
  return Mu{std::move(alpha), std::move(annot), std::move(body)};
}
ForcingContext app(Term arg, CatchableContext rest) { return App{std::move(arg), std::move(rest)}; }
ForcingContext coconst(Name kappa) { return CoConst{std::move(kappa)}; }
CatchableContext covar(Name alpha) { return CoVar{std::move(alpha)}; }
TmuBracket tmub(Name x, Type annot, ForcingContext forcing, Store suffix) {
  return TmuBracket{std::move(x), std::move(annot), std::move(forcing), std::move(suffix)};
}
Tmu tmu(Name x, Type annot, Command body) { return Tmu{std::move(x), std::move(annot), std::move(body)}; }
Command cmd(Term t, EvalContext e) { return Command{std::move(t), std::move(e)}; }
Binding bind(Name x, Term t) { return Binding{std::move(x), std::move(t)}; }
Binding cobind(Name alpha, CatchableContext e) { return Binding{std::move(alpha), std::move(e)}; }
Store store(std::vector<Binding> bindings) { return Store{std::move(bindings)}; }
Closure closure(Command c, Store s) { return Closure{std::move(c), std::move(s)}; }
}  // namespace ast

// ---------------------------------------------------------------- free names

bool FreeNames::contains(Sort sort, const Name& name) const {
  return sort == Sort::Var ? vars.contains(name) : covars.contains(name);
}

void FreeNames::insert(Sort sort, const Name& name) {
  (sort == Sort::Var ? vars : covars).insert(name);
}

void FreeNames::merge(const FreeNames& other) {
  vars.insert(other.vars.begin(), other.vars.end());
  covars.insert(other.covars.begin(), other.covars.end());
}

namespace {

void erase(FreeNames& fv, Sort sort, const Name& name) {
  (sort == Sort::Var ? fv.vars : fv.covars).erase(name);
}

// Removes every name bound by `dom` from `fv`.
void subtract(FreeNames& fv, const FreeNames& dom) {
  for (const auto& x : dom.vars) fv.vars.erase(x);
  for (const auto& a : dom.covars) fv.covars.erase(a);
}

FreeNames fv_binding_value(const Binding& b) {
  return b.term() ? free_vars(*b.term()) : free_vars(*b.context());
}

}  // namespace

FreeNames free_vars(const StrongValue& v) {
  if (const auto* lam = std::get_if<Lam>(&v.node)) {
    FreeNames fv = free_vars(*lam->body);
    erase(fv, Sort::Var, lam->binder);
    return fv;
  }
  return {};
}

FreeNames free_vars(const WeakValue& v) {
  if (const auto* x = std::get_if<Var>(&v.node)) {
    FreeNames fv;
    fv.vars.insert(x->name);
    return fv;
  }
  return free_vars(std::get<StrongValue>(v.node));
}

FreeNames free_vars(const Term& t) {
  if (const auto* m = t.as_mu()) {
    FreeNames fv = free_vars(*m->body);
    erase(fv, Sort::CoVar, m->binder);
    return fv;
  }
  return free_vars(*t.as_weak());
}

FreeNames free_vars(const ForcingContext& f) {
  if (const auto* a = std::get_if<App>(&f.node)) {
    FreeNames fv = free_vars(a->arg);
    fv.merge(free_vars(*a->rest));
    return fv;
  }
  return {};
}

FreeNames free_vars(const CatchableContext& e) {
  if (const auto* f = e.as_forcing()) return free_vars(*f);
  if (const auto* a = e.as_covar()) {
    FreeNames fv;
    fv.covars.insert(a->name);
    return fv;
  }
  const auto& b = *e.as_bracket();
  FreeNames fv = free_vars(b.forcing);
  subtract(fv, store_domain(*b.suffix));
  fv.merge(free_vars(*b.suffix));
  erase(fv, Sort::Var, b.binder);
  return fv;
}

FreeNames free_vars(const EvalContext& e) {
  if (const auto* m = e.as_tmu()) {
    FreeNames fv = free_vars(*m->body);
    erase(fv, Sort::Var, m->binder);
    return fv;
  }
  return free_vars(*e.as_catchable());
}

FreeNames free_vars(const Command& c) {
  FreeNames fv = free_vars(c.term);
  fv.merge(free_vars(c.context));
  return fv;
}

FreeNames free_vars(const Store& s) {
  FreeNames fv;
  FreeNames dom;
  for (const auto& b : s.bindings) {
    FreeNames here = fv_binding_value(b);
    subtract(here, dom);
    fv.merge(here);
    dom.insert(b.sort(), b.key);
  }
  return fv;
}

FreeNames free_vars(const Closure& l) {
  FreeNames fv = free_vars(l.command);
  subtract(fv, store_domain(l.store));
  fv.merge(free_vars(l.store));
  return fv;
}

FreeNames store_domain(const Store& s) {
  FreeNames dom;
  for (const auto& b : s.bindings) dom.insert(b.sort(), b.key);
  return dom;
}

bool is_closed(const Closure& l) { return is_closed_in(l.command, l.store); }

// ---------------------------------------------------------------- fresh names

bool is_fresh_name(std::string_view name) { return name.find('#') != std::string_view::npos; }

std::string_view base_name(std::string_view name) {
  const auto hash = name.find('#');
  return hash == std::string_view::npos ? name : name.substr(0, hash);
}

Name FreshSupply::fresh(std::string_view base) {
  Name out(base_name(base));
  out += '#';
  out += std::to_string(next_++);
  return out;
}

namespace {

struct NameCollector {
  std::set<Name>& out;

  void operator()(const Type&) const {}
  void operator()(const StrongValue& v) const {
    if (const auto* lam = std::get_if<Lam>(&v.node)) {
      out.insert(lam->binder);
      (*this)(*lam->body);
    }
  }
  void operator()(const WeakValue& v) const {
    if (const auto* x = std::get_if<Var>(&v.node)) {
      out.insert(x->name);
    } else {
      (*this)(std::get<StrongValue>(v.node));
    }
  }
  void operator()(const Term& t) const {
    if (const auto* m = t.as_mu()) {
      out.insert(m->binder);
      (*this)(*m->body);
    } else {
      (*this)(*t.as_weak());
    }
  }
  void operator()(const ForcingContext& f) const {
    if (const auto* a = std::get_if<App>(&f.node)) {
      (*this)(a->arg);
      (*this)(*a->rest);
    }
  }
  void operator()(const CatchableContext& e) const {
    if (const auto* f = e.as_forcing()) {
      (*this)(*f);
    } else if (const auto* a = e.as_covar()) {
      out.insert(a->name);
    } else {
      const auto& b = *e.as_bracket();
      out.insert(b.binder);
      (*this)(b.forcing);
      (*this)(*b.suffix);
    }
  }
  void operator()(const EvalContext& e) const {
    if (const auto* m = e.as_tmu()) {
      out.insert(m->binder);
      (*this)(*m->body);
    } else {
      (*this)(*e.as_catchable());
    }
  }
  void operator()(const Command& c) const {
    (*this)(c.term);
    (*this)(c.context);
  }
  void operator()(const Store& s) const {
    for (const auto& b : s.bindings) {
      out.insert(b.key);
      if (b.term()) {
        (*this)(*b.term());
      } else {
        (*this)(*b.context());
      }
    }
  }
};

template <class T>
std::set<Name> collect_names(const T& node) {
  std::set<Name> out;
  NameCollector{out}(node);
  return out;
}

}  // namespace

std::set<Name> all_names(const Term& t) { return collect_names(t); }
std::set<Name> all_names(const CatchableContext& e) { return collect_names(e); }
std::set<Name> all_names(const EvalContext& e) { return collect_names(e); }
std::set<Name> all_names(const Command& c) { return collect_names(c); }
std::set<Name> all_names(const Store& s) { return collect_names(s); }

std::set<Name> all_names(const Closure& l) {
  std::set<Name> out;
  NameCollector collect{out};
  collect(l.command);
  collect(l.store);
  return out;
}

std::int64_t max_fresh_index(const Closure& l) {
  std::int64_t best = -1;
  for (const auto& name : all_names(l)) {
    const auto hash = name.find('#');
    if (hash == std::string::npos) continue;
    std::int64_t n = 0;
    const char* first = name.data() + hash + 1;
    const char* last = name.data() + name.size();
    if (std::from_chars(first, last, n).ec == std::errc{}) best = std::max(best, n);
  }
  return best;
}

FreshSupply FreshSupply::above(const Closure& l) {
  return FreshSupply(static_cast<std::uint64_t>(max_fresh_index(l) + 1));
}

// ---------------------------------------------------------------- renaming

namespace {

struct Renamer {
  const Renaming& map;

  const Name* target(Sort s, const Name& n) const {
    const auto it = map.find({s, n});
    return it == map.end() ? nullptr : &it->second;
  }
  bool binds(Sort s, const Name& n) const { return map.contains({s, n}); }
  // Renaming under a binder that shadows one of the entries.
  Renaming without(Sort s, const Name& n) const {
    Renaming inner = map;
    inner.erase({s, n});
    return inner;
  }

  StrongValue operator()(const StrongValue& v) const {
    if (const auto* lam = std::get_if<Lam>(&v.node)) {
      if (binds(Sort::Var, lam->binder)) {
        const Renaming inner = without(Sort::Var, lam->binder);
        return Lam{lam->binder, lam->annot, Renamer{inner}(*lam->body)};
      }
      return Lam{lam->binder, lam->annot, (*this)(*lam->body)};
    }
    return v;
  }
  WeakValue operator()(const WeakValue& v) const {
    if (const auto* x = std::get_if<Var>(&v.node)) {
      const Name* to = target(Sort::Var, x->name);
      return to ? WeakValue(Var{*to}) : v;
    }
    return (*this)(std::get<StrongValue>(v.node));
  }
  Term operator()(const Term& t) const {
    if (const auto* m = t.as_mu()) {
      if (binds(Sort::CoVar, m->binder)) {
        const Renaming inner = without(Sort::CoVar, m->binder);
        return Mu{m->binder, m->annot, Renamer{inner}(*m->body)};
      }
      return Mu{m->binder, m->annot, (*this)(*m->body)};
    }
    return (*this)(*t.as_weak());
  }
  ForcingContext operator()(const ForcingContext& f) const {
    if (const auto* a = std::get_if<App>(&f.node)) {
      return App{(*this)(a->arg), (*this)(*a->rest)};
    }
    return f;
  }
  CatchableContext operator()(const CatchableContext& e) const {
    if (const auto* f = e.as_forcing()) return (*this)(*f);
    if (const auto* a = e.as_covar()) {
      const Name* to = target(Sort::CoVar, a->name);
      return to ? CatchableContext(CoVar{*to}) : e;
    }
    // µ̃[x] binds x in F and the suffix, and the suffix keys in F
    const auto& b = *e.as_bracket();
    Renaming inner = map;
    inner.erase({Sort::Var, b.binder});
    Store suffix = Renamer{inner}(*b.suffix);
    for (const auto& x : b.suffix->bindings) inner.erase({x.sort(), x.key});
    return TmuBracket{b.binder, b.annot, Renamer{inner}(b.forcing), std::move(suffix)};
  }
  EvalContext operator()(const EvalContext& e) const {
    if (const auto* m = e.as_tmu()) {
      if (binds(Sort::Var, m->binder)) {
        const Renaming inner = without(Sort::Var, m->binder);
        return Tmu{m->binder, m->annot, Renamer{inner}(*m->body)};
      }
      return Tmu{m->binder, m->annot, (*this)(*m->body)};
    }
    return (*this)(*e.as_catchable());
  }
  Command operator()(const Command& c) const { return Command{(*this)(c.term), (*this)(c.context)}; }
  // Each key scopes over the bindings after it.
  Store operator()(const Store& s) const {
    Store out;
    out.bindings.reserve(s.size());
    Renaming inner;
    const Renaming* cur = &map;
    for (const auto& b : s.bindings) {
      const Renamer r{*cur};
      if (b.term()) {
        out.bindings.push_back(Binding{b.key, r(*b.term())});
      } else {
        out.bindings.push_back(Binding{b.key, r(*b.context())});
      }
      if (cur->contains({b.sort(), b.key})) {
        if (cur == &map) inner = map;
        inner.erase({b.sort(), b.key});
        cur = &inner;
      }
    }
    return out;
  }
};

Renaming single(Sort sort, const Name& from, const Name& to) { return Renaming{{{sort, from}, to}}; }

}  // namespace

StrongValue rename_free(const StrongValue& v, Sort sort, const Name& from, const Name& to) {
  return Renamer{single(sort, from, to)}(v);
}
WeakValue rename_free(const WeakValue& v, Sort sort, const Name& from, const Name& to) {
  return Renamer{single(sort, from, to)}(v);
}
Term rename_free(const Term& t, Sort sort, const Name& from, const Name& to) {
  return Renamer{single(sort, from, to)}(t);
}
ForcingContext rename_free(const ForcingContext& f, Sort sort, const Name& from, const Name& to) {
  return Renamer{single(sort, from, to)}(f);
}
CatchableContext rename_free(const CatchableContext& e, Sort sort, const Name& from, const Name& to) {
  return Renamer{single(sort, from, to)}(e);
}
EvalContext rename_free(const EvalContext& e, Sort sort, const Name& from, const Name& to) {
  return Renamer{single(sort, from, to)}(e);
}
Command rename_free(const Command& c, Sort sort, const Name& from, const Name& to) {
  return Renamer{single(sort, from, to)}(c);
}
Store rename_free(const Store& s, Sort sort, const Name& from, const Name& to) {
  return Renamer{single(sort, from, to)}(s);
}

Term rename_free(const Term& t, const Renaming& r) { return Renamer{r}(t); }
ForcingContext rename_free(const ForcingContext& f, const Renaming& r) { return Renamer{r}(f); }
CatchableContext rename_free(const CatchableContext& e, const Renaming& r) { return Renamer{r}(e); }
Store rename_free(const Store& s, const Renaming& r) { return Renamer{r}(s); }

Lam rename_binder(const Lam& lam, FreshSupply& fresh) {
  Name x = fresh.fresh(lam.binder);
  Term body = rename_free(*lam.body, Sort::Var, lam.binder, x);
  return Lam{std::move(x), lam.annot, std::move(body)};
}

Mu rename_binder(const Mu& mu, FreshSupply& fresh) {
  Name a = fresh.fresh(mu.binder);
  Command body = rename_free(*mu.body, Sort::CoVar, mu.binder, a);
  return Mu{std::move(a), mu.annot, std::move(body)};
}

Tmu rename_binder(const Tmu& tmu, FreshSupply& fresh) {
  Name x = fresh.fresh(tmu.binder);
  Command body = rename_free(*tmu.body, Sort::Var, tmu.binder, x);
  return Tmu{std::move(x), tmu.annot, std::move(body)};
}

TmuBracket rename_binder(const TmuBracket& b, FreshSupply& fresh) {
  Name x = fresh.fresh(b.binder);
  const bool shadowed = store_domain(*b.suffix).contains(Sort::Var, b.binder);
  ForcingContext forcing = shadowed ? b.forcing : rename_free(b.forcing, Sort::Var, b.binder, x);
  Store suffix = rename_free(*b.suffix, Sort::Var, b.binder, x);
  return TmuBracket{std::move(x), b.annot, std::move(forcing), std::move(suffix)};
}

// ---------------------------------------------------------------- α-equivalence

namespace {

class AlphaEq {
 public:
  bool operator()(const StrongValue& a, const StrongValue& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* la = std::get_if<Lam>(&a.node)) {
      const auto& lb = std::get<Lam>(b.node);
      if (!(la->annot == lb.annot)) return false;
      return scoped(Sort::Var, la->binder, lb.binder, [&] { return (*this)(*la->body, *lb.body); });
    }
    return std::get<Const>(a.node).name == std::get<Const>(b.node).name;
  }
  bool operator()(const WeakValue& a, const WeakValue& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* xa = std::get_if<Var>(&a.node)) {
      return same(Sort::Var, xa->name, std::get<Var>(b.node).name);
    }
    return (*this)(std::get<StrongValue>(a.node), std::get<StrongValue>(b.node));
  }
  bool operator()(const Term& a, const Term& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* ma = a.as_mu()) {
      const auto* mb = b.as_mu();
      if (!(ma->annot == mb->annot)) return false;
      return scoped(Sort::CoVar, ma->binder, mb->binder, [&] { return (*this)(*ma->body, *mb->body); });
    }
    return (*this)(*a.as_weak(), *b.as_weak());
  }
  bool operator()(const ForcingContext& a, const ForcingContext& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* pa = std::get_if<App>(&a.node)) {
      const auto& pb = std::get<App>(b.node);
      return (*this)(pa->arg, pb.arg) && (*this)(*pa->rest, *pb.rest);
    }
    return std::get<CoConst>(a.node).name == std::get<CoConst>(b.node).name;
  }
  bool operator()(const CatchableContext& a, const CatchableContext& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* f = a.as_forcing()) return (*this)(*f, *b.as_forcing());
    if (const auto* c = a.as_covar()) return same(Sort::CoVar, c->name, b.as_covar()->name);
    const auto& ba = *a.as_bracket();
    const auto& bb = *b.as_bracket();
    if (!(ba.annot == bb.annot)) return false;
    return scoped(Sort::Var, ba.binder, bb.binder, [&] {
      const std::size_t mark_v = vars_.size();
      const std::size_t mark_c = covars_.size();
      const bool ok = store(*ba.suffix, *bb.suffix) && (*this)(ba.forcing, bb.forcing);
      vars_.resize(mark_v);
      covars_.resize(mark_c);
      return ok;
    });
  }
  bool operator()(const EvalContext& a, const EvalContext& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* ma = a.as_tmu()) {
      const auto* mb = b.as_tmu();
      if (!(ma->annot == mb->annot)) return false;
      return scoped(Sort::Var, ma->binder, mb->binder, [&] { return (*this)(*ma->body, *mb->body); });
    }
    return (*this)(*a.as_catchable(), *b.as_catchable());
  }
  bool operator()(const Command& a, const Command& b) {
    return (*this)(a.term, b.term) && (*this)(a.context, b.context);
  }
  bool values(const Binding& a, const Binding& b) {
    if (a.sort() != b.sort()) return false;
    if (a.term()) return (*this)(*a.term(), *b.term());
    return (*this)(*a.context(), *b.context());
  }
  /// Compares the stores and leaves their keys in scope.
  bool store(const Store& a, const Store& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto& ba = a.bindings[i];
      const auto& bb = b.bindings[i];
      if (!values(ba, bb)) return false;
      scope(ba.sort()).emplace_back(ba.key, bb.key);
    }
    return true;
  }

 private:
  using Scope = std::vector<std::pair<Name, Name>>;

  Scope& scope(Sort sort) { return sort == Sort::Var ? vars_ : covars_; }

  bool same(Sort sort, const Name& a, const Name& b) {
    const Scope& s = scope(sort);
    std::ptrdiff_t ia = -1;
    std::ptrdiff_t ib = -1;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(s.size()) - 1; i >= 0; --i) {
      if (ia < 0 && s[i].first == a) ia = i;
      if (ib < 0 && s[i].second == b) ib = i;
    }
    if (ia < 0 && ib < 0) return a == b;
    return ia == ib;
  }

  template <class F>
  bool scoped(Sort sort, const Name& a, const Name& b, F&& body) {
    scope(sort).emplace_back(a, b);
    const bool ok = body();
    scope(sort).pop_back();
    return ok;
  }

  Scope vars_;
  Scope covars_;
};

}  // namespace

bool alpha_equal(const Term& a, const Term& b) { return AlphaEq{}(a, b); }
bool alpha_equal(const CatchableContext& a, const CatchableContext& b) { return AlphaEq{}(a, b); }
bool alpha_equal(const EvalContext& a, const EvalContext& b) { return AlphaEq{}(a, b); }
bool alpha_equal(const Command& a, const Command& b) { return AlphaEq{}(a, b); }
bool alpha_equal(const Store& a, const Store& b) { return AlphaEq{}.store(a, b); }

bool alpha_equal(const Closure& a, const Closure& b) {
  AlphaEq eq;
  return eq.store(a.store, b.store) && eq(a.command, b.command);
}

bool alpha_equal_values(const Binding& a, const Binding& b) { return AlphaEq{}.values(a, b); }

}  // namespace lvt
