#pragma once

// Abstract syntax of the lazy control calculus. The nine syntactic
// categories are distinct C++ types; lower categories convert implicitly
// into the ones that contain them (v -> V -> t, F -> E -> e), mirroring the
// lifting rules of the type system.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lvt/box.hpp"

namespace lvt {

using Name = std::string;

// Term variables and co-variables live in disjoint namespaces.
enum class Sort { Var, CoVar };

struct Type {
  struct Atom {
    Name name;
    bool operator==(const Atom&) const = default;
  };
  struct Arrow {
    Box<Type> dom;
    Box<Type> cod;
    bool operator==(const Arrow&) const = default;
  };

  std::variant<Atom, Arrow> node;

  static Type atom(Name name);
  static Type arrow(Type dom, Type cod);

  bool is_atom() const { return std::holds_alternative<Atom>(node); }
  const Atom* as_atom() const { return std::get_if<Atom>(&node); }
  const Arrow* as_arrow() const { return std::get_if<Arrow>(&node); }

  bool operator==(const Type&) const = default;
};

/// Human-readable rendering, arrows associate to the right: "X -> Y -> X".
std::string to_string(const Type& type);

struct Term;
struct Command;
struct CatchableContext;
struct Store;

// ---- strong values  v ::= λx.t | k

struct Lam {
  Name binder;
  Type annot;
  Box<Term> body;
  bool operator==(const Lam&) const = default;
};

struct Const {
  Name name;
  bool operator==(const Const&) const = default;
};

struct StrongValue {
  std::variant<Lam, Const> node;
  StrongValue(Lam lam) : node(std::move(lam)) {}
  StrongValue(Const k) : node(std::move(k)) {}
  bool operator==(const StrongValue&) const = default;
};

// ---- weak values  V ::= v | x

struct Var {
  Name name;
  bool operator==(const Var&) const = default;
};

struct WeakValue {
  std::variant<StrongValue, Var> node;
  WeakValue(StrongValue v) : node(std::move(v)) {}
  WeakValue(Lam v) : node(StrongValue(std::move(v))) {}
  WeakValue(Const v) : node(StrongValue(std::move(v))) {}
  WeakValue(Var x) : node(std::move(x)) {}
  bool operator==(const WeakValue&) const = default;
};

// ---- terms  t ::= V | µα.c

struct Mu {
  Name binder;
  Type annot;
  Box<Command> body;
  bool operator==(const Mu&) const = default;
};

struct Term {
  std::variant<WeakValue, Mu> node;
  Term(WeakValue v) : node(std::move(v)) {}
  Term(StrongValue v) : node(WeakValue(std::move(v))) {}
  Term(Lam v) : node(WeakValue(std::move(v))) {}
  Term(Const v) : node(WeakValue(std::move(v))) {}
  Term(Var v) : node(WeakValue(std::move(v))) {}
  Term(Mu m) : node(std::move(m)) {}

  const WeakValue* as_weak() const { return std::get_if<WeakValue>(&node); }
  const Mu* as_mu() const { return std::get_if<Mu>(&node); }
  /// Non-null when the term is a variable.
  const Var* as_var() const;
  /// Non-null when the term is a strong value.
  const StrongValue* as_strong() const;

  bool operator==(const Term&) const = default;
};

// ---- forcing contexts  F ::= t·E | κ

struct App {
  Term arg;
  Box<CatchableContext> rest;
  bool operator==(const App&) const = default;
};

struct CoConst {
  Name name;
  bool operator==(const CoConst&) const = default;
};

struct ForcingContext {
  std::variant<App, CoConst> node;
  ForcingContext(App a) : node(std::move(a)) {}
  ForcingContext(CoConst k) : node(std::move(k)) {}
  bool operator==(const ForcingContext&) const = default;
};

// ---- catchable contexts  E ::= F | α | µ̃[x].⟨x‖F⟩τ

struct CoVar {
  Name name;
  bool operator==(const CoVar&) const = default;
};

/// The frame µ̃[x].⟨x‖F⟩τ. The inner variable occurrence is always the
/// binder itself, so only the forcing context and the suffix are stored.
struct TmuBracket {
  Name binder;
  Type annot;
  ForcingContext forcing;
  Box<Store> suffix;
  bool operator==(const TmuBracket&) const = default;
};

struct CatchableContext {
  std::variant<ForcingContext, CoVar, TmuBracket> node;
  CatchableContext(ForcingContext f) : node(std::move(f)) {}
  CatchableContext(App f) : node(ForcingContext(std::move(f))) {}
  CatchableContext(CoConst f) : node(ForcingContext(std::move(f))) {}
  CatchableContext(CoVar a) : node(std::move(a)) {}
  CatchableContext(TmuBracket b) : node(std::move(b)) {}

  const ForcingContext* as_forcing() const { return std::get_if<ForcingContext>(&node); }
  const CoVar* as_covar() const { return std::get_if<CoVar>(&node); }
  const TmuBracket* as_bracket() const { return std::get_if<TmuBracket>(&node); }

  bool operator==(const CatchableContext&) const = default;
};

// ---- evaluation contexts  e ::= E | µ̃x.c

struct Tmu {
  Name binder;
  Type annot;
  Box<Command> body;
  bool operator==(const Tmu&) const = default;
};

struct EvalContext {
  std::variant<CatchableContext, Tmu> node;
  EvalContext(CatchableContext e) : node(std::move(e)) {}
  EvalContext(ForcingContext f) : node(CatchableContext(std::move(f))) {}
  EvalContext(App f) : node(CatchableContext(std::move(f))) {}
  EvalContext(CoConst f) : node(CatchableContext(std::move(f))) {}
  EvalContext(CoVar a) : node(CatchableContext(std::move(a))) {}
  EvalContext(TmuBracket b) : node(CatchableContext(std::move(b))) {}
  EvalContext(Tmu m) : node(std::move(m)) {}

  const CatchableContext* as_catchable() const { return std::get_if<CatchableContext>(&node); }
  const Tmu* as_tmu() const { return std::get_if<Tmu>(&node); }

  bool operator==(const EvalContext&) const = default;
};

// ---- commands, stores, closures

struct Command {
  Term term;
  EvalContext context;
  bool operator==(const Command&) const = default;
};

/// [x:=t] when the value is a Term, [α:=E] when it is a CatchableContext.
struct Binding {
  Name key;
  std::variant<Term, CatchableContext> value;

  Sort sort() const { return std::holds_alternative<Term>(value) ? Sort::Var : Sort::CoVar; }
  const Term* term() const { return std::get_if<Term>(&value); }
  const CatchableContext* context() const { return std::get_if<CatchableContext>(&value); }

  bool operator==(const Binding&) const = default;
};

struct Store {
  std::vector<Binding> bindings;

  bool empty() const { return bindings.empty(); }
  std::size_t size() const { return bindings.size(); }

  bool operator==(const Store&) const = default;
};

struct Closure {
  Command command;
  Store store;
  bool operator==(const Closure&) const = default;
};

// ---- construction helpers

namespace ast {
Term var(Name x);
Term konst(Name k);
Lam lam(Name x, Type annot, Term body);
Mu mu(Name alpha, Type annot, Command body);
ForcingContext app(Term arg, CatchableContext rest);
ForcingContext coconst(Name kappa);
CatchableContext covar(Name alpha);
TmuBracket tmub(Name x, Type annot, ForcingContext forcing, Store suffix = {});
Tmu tmu(Name x, Type annot, Command body);
Command cmd(Term t, EvalContext e);
Binding bind(Name x, Term t);
Binding cobind(Name alpha, CatchableContext e);
Store store(std::vector<Binding> bindings = {});
Closure closure(Command c, Store s = {});
}  // namespace ast

// ---- free names

struct FreeNames {
  std::set<Name> vars;
  std::set<Name> covars;

  bool empty() const { return vars.empty() && covars.empty(); }
  bool contains(Sort sort, const Name& name) const;
  void insert(Sort sort, const Name& name);
  void merge(const FreeNames& other);
  bool operator==(const FreeNames&) const = default;
};

FreeNames free_vars(const StrongValue& v);
FreeNames free_vars(const WeakValue& v);
FreeNames free_vars(const Term& t);
FreeNames free_vars(const ForcingContext& f);
FreeNames free_vars(const CatchableContext& e);
FreeNames free_vars(const EvalContext& e);
FreeNames free_vars(const Command& c);
/// FV(τ[x:=t]) = FV(τ) ∪ {y ∈ FV(t) : y ∉ dom(τ)}, and likewise for [α:=E].
FreeNames free_vars(const Store& s);
FreeNames free_vars(const Closure& l);

/// Keys bound by a store, split by sort.
FreeNames store_domain(const Store& s);

/// FV(τ) = ∅ and FV(node) ⊆ dom(τ).
template <class Node>
bool is_closed_in(const Node& node, const Store& store) {
  if (!free_vars(store).empty()) return false;
  const FreeNames dom = store_domain(store);
  const FreeNames fv = free_vars(node);
  for (const auto& x : fv.vars)
    if (!dom.vars.contains(x)) return false;
  for (const auto& a : fv.covars)
    if (!dom.covars.contains(a)) return false;
  return true;
}

bool is_closed(const Closure& l);

// ---- fresh names

/// Whether `name` carries the reserved fresh suffix `#n`.
bool is_fresh_name(std::string_view name);
/// "x#12" -> "x"; identity on user names.
std::string_view base_name(std::string_view name);

/// Source of globally unique names `base#n`. Not thread-safe; one per run.
class FreshSupply {
 public:
  explicit FreshSupply(std::uint64_t next = 0) : next_(next) {}

  Name fresh(std::string_view base);
  std::uint64_t peek() const { return next_; }

  /// A supply whose names cannot collide with any `#n` name already in `l`.
  static FreshSupply above(const Closure& l);

 private:
  std::uint64_t next_;
};

/// Largest `#n` index occurring anywhere in the closure, if any.
std::int64_t max_fresh_index(const Closure& l);

/// Every name occurring in the node: binders, occurrences and store keys.
std::set<Name> all_names(const Term& t);
std::set<Name> all_names(const CatchableContext& e);
std::set<Name> all_names(const EvalContext& e);
std::set<Name> all_names(const Command& c);
std::set<Name> all_names(const Store& s);
std::set<Name> all_names(const Closure& l);

// ---- renaming

// Replace free occurrences of (sort, from) by `to`. `to` must be fresh for
// the node; no capture check is performed.
StrongValue rename_free(const StrongValue& v, Sort sort, const Name& from, const Name& to);
WeakValue rename_free(const WeakValue& v, Sort sort, const Name& from, const Name& to);
Term rename_free(const Term& t, Sort sort, const Name& from, const Name& to);
ForcingContext rename_free(const ForcingContext& f, Sort sort, const Name& from, const Name& to);
CatchableContext rename_free(const CatchableContext& e, Sort sort, const Name& from, const Name& to);
EvalContext rename_free(const EvalContext& e, Sort sort, const Name& from, const Name& to);
Command rename_free(const Command& c, Sort sort, const Name& from, const Name& to);
/// Renames inside binding values; a binding whose key is `from` shadows the rest.
Store rename_free(const Store& s, Sort sort, const Name& from, const Name& to);

// α-conversion of the top binder to a fresh name.
/// Simultaneous renaming of free names, keyed by sort and old name.
using Renaming = std::map<std::pair<Sort, Name>, Name>;
Term rename_free(const Term& t, const Renaming& r);
ForcingContext rename_free(const ForcingContext& f, const Renaming& r);
CatchableContext rename_free(const CatchableContext& e, const Renaming& r);
Store rename_free(const Store& s, const Renaming& r);

Lam rename_binder(const Lam& lam, FreshSupply& fresh);
Mu rename_binder(const Mu& mu, FreshSupply& fresh);
Tmu rename_binder(const Tmu& tmu, FreshSupply& fresh);
/// Renames x in both the forcing context and the suffix store.
TmuBracket rename_binder(const TmuBracket& b, FreshSupply& fresh);

// ---- α-equivalence

bool alpha_equal(const Term& a, const Term& b);
bool alpha_equal(const CatchableContext& a, const CatchableContext& b);
bool alpha_equal(const EvalContext& a, const EvalContext& b);
bool alpha_equal(const Command& a, const Command& b);
/// Store keys are treated as binders for the later bindings.
bool alpha_equal(const Store& a, const Store& b);
bool alpha_equal(const Closure& a, const Closure& b);
/// Compares binding values (not keys) up to α.
bool alpha_equal_values(const Binding& a, const Binding& b);

}  // namespace lvt
