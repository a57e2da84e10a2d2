#pragma once

// Second-order formulas over first-order expressions, capture-avoiding
// substitution, and a checker for explicit typing derivations. The subject
// of each judgment is an ordinary AST node; its binder annotations are not
// consulted, only the formulas written in the derivation.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lvt/sexpr.hpp"
#include "lvt/syntax.hpp"
#include "lvt/typing.hpp"

namespace lvt::so {

// ---- first-order expressions  e ::= x | f(e1..ek) | n

struct FOExpr;

struct FOVar {
  Name name;
  bool operator==(const FOVar&) const = default;
};
struct Fun {
  Name name;
  std::vector<FOExpr> args;
  bool operator==(const Fun&) const;
};
struct Lit {
  std::uint64_t value;
  bool operator==(const Lit&) const = default;
};

struct FOExpr {
  std::variant<FOVar, Fun, Lit> node;
  FOExpr(FOVar v) : node(std::move(v)) {}
  FOExpr(Fun f) : node(std::move(f)) {}
  FOExpr(Lit n) : node(n) {}
  bool operator==(const FOExpr&) const = default;
};

inline bool Fun::operator==(const Fun& o) const { return name == o.name && args == o.args; }

// ---- formulas  A ::= X(e1..ek) | A → B | ∀x.A | ∀X^k.A

struct Formula;

struct Pred {
  Name name;
  std::vector<FOExpr> args;
  bool operator==(const Pred&) const = default;
};
struct Implies {
  Box<Formula> lhs;
  Box<Formula> rhs;
  bool operator==(const Implies&) const = default;
};
struct ForallFO {
  Name var;
  Box<Formula> body;
  bool operator==(const ForallFO&) const = default;
};
struct ForallSO {
  Name pred;
  std::size_t arity;
  Box<Formula> body;
  bool operator==(const ForallSO&) const = default;
};

struct Formula {
  std::variant<Pred, Implies, ForallFO, ForallSO> node;
  Formula(Pred p) : node(std::move(p)) {}
  Formula(Implies i) : node(std::move(i)) {}
  Formula(ForallFO f) : node(std::move(f)) {}
  Formula(ForallSO f) : node(std::move(f)) {}
  bool operator==(const Formula&) const = default;
};

namespace f {
FOExpr var(Name x);
FOExpr fun(Name f, std::vector<FOExpr> args);
FOExpr lit(std::uint64_t n);
Formula pred(Name X, std::vector<FOExpr> args = {});
Formula implies(Formula a, Formula b);
Formula all_fo(Name x, Formula body);
Formula all_so(Name X, std::size_t arity, Formula body);
}  // namespace f

/// Atom X ↦ X(), A → B ↦ A → B.
Formula from_type(const Type& a);

struct FreeSymbols {
  std::set<Name> fovars;
  std::set<Name> preds;
  bool operator==(const FreeSymbols&) const = default;
};

FreeSymbols fv_expr(const FOExpr& e);
FreeSymbols fv_formula(const Formula& a);

/// Γ with formulas in place of simple types; co-variable entries read A⊥⊥.
struct FEntry {
  Sort sort;
  Name name;
  Formula formula;
  bool operator==(const FEntry&) const = default;
};
using FContext = std::vector<FEntry>;

FreeSymbols fv_context(const FContext& ctx);

bool alpha_equal(const Formula& a, const Formula& b);

class ArityMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A[e/x], renaming bound first-order variables as needed.
Formula subst_fo(const Formula& a, const FOExpr& e, const Name& x);

/// A formula with k named holes, standing for λx1..xk.B.
struct SOWitness {
  std::vector<Name> holes;
  Formula body;
  bool operator==(const SOWitness&) const = default;
};

/// A[B/X]. Throws ArityMismatch when an occurrence of X has a different
/// number of arguments than B has holes.
Formula subst_so(const Formula& a, const SOWitness& b, const Name& X);

/// Throws ArityMismatch if a predicate or function symbol is used with two
/// different arities, or a bound predicate with other than its declared k.
void check_arities(const std::vector<const Formula*>& formulas);

// ---- derivations

enum class DRule {
  k, arrow_r, x, upV, kappa, arrow_l, alpha, upE, upt, mu, upe, tmu, tmub, cut, l, eps, taut, tauE,
  all1r, all2r, all1l, all2l
};

std::string_view to_string(DRule rule);
std::optional<DRule> parse_drule(std::string_view text);

struct Conclusion {
  Level level;
  FContext ctx;
  AnyNode subject;
  /// Present for v, V, t, F, E, e.
  std::optional<Formula> formula;
  /// Γ′ for τ.
  std::optional<FContext> produced;
};

using Witness = std::variant<std::monostate, FOExpr, SOWitness>;

struct Derivation {
  DRule rule;
  Conclusion concl;
  Witness witness;
  std::vector<Derivation> premises;
};

class DerivationError : public std::runtime_error {
 public:
  enum class Kind { RuleMismatch, SideConditionViolated, ValueRestrictionViolated, LevelViolation,
                    ArityMismatch };

  DerivationError(Kind kind, const std::string& path, const std::string& detail);

  Kind kind() const { return kind_; }
  const std::string& path() const { return path_; }

 private:
  Kind kind_;
  std::string path_;
};

std::string_view to_string(DerivationError::Kind kind);

/// Throws DerivationError at the first node (pre-order) that does not
/// instantiate its rule.
void check_derivation(const Derivation& d, const Signature& sig);

// ---- text form
//
//   deriv   := (deriv RULE (concl LEVEL ctx subject slot?) witness? deriv*)
//   ctx     := (ctx (var NAME formula)* (covar NAME formula)*)   ; any order
//   slot    := formula for v V t F E e, ctx for tau, absent for c and l
//   witness := (witness expr) | (witness (holes NAME*) formula)
//   formula := (pred NAME expr*) | (-> formula formula) | (allfo NAME formula)
//            | (allso NAME k formula)
//   expr    := (fovar NAME) | (fun NAME expr*) | (lit n)

Formula parse_formula(const SExpr& s);
FOExpr parse_expr(const SExpr& s);
FContext parse_fcontext(const SExpr& s);
Derivation parse_derivation(const SExpr& s);
Derivation parse_derivation(std::string_view text);

std::string to_sexpr(const FOExpr& e);
std::string to_sexpr(const Formula& a);
std::string to_sexpr(const FContext& ctx);
std::string to_sexpr(const Derivation& d);

/// Human-readable: "∀X.(X → X)".
std::string to_string(const Formula& a);

// ---- elaboration of simply-typed checks

/// Derivation of ⊢l l mirroring the simple type checker. Throws TypeError
/// when the closure does not type.
Derivation elaborate_closure(const Signature& sig, const Closure& l);
/// Derivation of Γ ⊢v v : A for a strong value.
Derivation elaborate_strong_value(const Signature& sig, const TypingContext& ctx, const StrongValue& v);

/// Number of nodes in the tree.
std::size_t size(const Derivation& d);

}  // namespace lvt::so
