#pragma once

// Syntax-directed checker for the nine typing judgments over annotated
// terms. Every judgment either asserts a type (v, V, t), expects one
// (F, E, e; the returned A stands for A⊥⊥), produces a context (τ), or
// just succeeds (c, l).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lvt/syntax.hpp"

namespace lvt {

enum class Level { v, V, t, F, E, e, c, tau, l };

std::string_view to_string(Level level);
std::optional<Level> parse_level(std::string_view text);

struct ContextEntry {
  Sort sort;
  Name name;
  Type type;
  bool operator==(const ContextEntry&) const = default;
};

/// Ordered Γ; each name occurs at most once per sort.
class TypingContext {
 public:
  TypingContext() = default;
  /// Throws DuplicateName.
  explicit TypingContext(std::vector<ContextEntry> entries);

  /// Throws DuplicateName if the name is already bound for this sort.
  TypingContext with(Sort sort, const Name& name, Type type) const;
  TypingContext with_var(const Name& x, Type type) const { return with(Sort::Var, x, std::move(type)); }
  TypingContext with_covar(const Name& a, Type type) const { return with(Sort::CoVar, a, std::move(type)); }
  /// Γ, Γ′.
  TypingContext concat(const TypingContext& rest) const;

  const Type* lookup(Sort sort, const Name& name) const;
  bool contains(Sort sort, const Name& name) const { return lookup(sort, name) != nullptr; }

  const std::vector<ContextEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool operator==(const TypingContext& other) const { return entries_ == other.entries_; }

 private:
  std::vector<ContextEntry> entries_;
};

/// "x : X, a : (X -> X)^" with ^ marking A⊥⊥.
std::string to_string(const TypingContext& ctx);

class DuplicateName : public std::runtime_error {
 public:
  DuplicateName(Sort sort, const Name& name);
};

struct Signature {
  std::map<Name, Name> consts;     // k : X, atomic only
  std::map<Name, Type> coconsts;   // κ : A

  /// Throws std::invalid_argument when the name is already declared.
  void add_const(const Name& k, const Name& atom);
  void add_coconst(const Name& kappa, Type type);
};

/// (sig (const NAME atomic-type)* (coconst NAME type)*)
Signature parse_signature(std::string_view text);
std::string to_sexpr(const Signature& sig);

class TypeError : public std::runtime_error {
 public:
  TypeError(Level level, std::string location, std::string detail,
            std::optional<Type> expected = std::nullopt, std::optional<Type> actual = std::nullopt,
            std::optional<Name> missing = std::nullopt);

  Level level() const { return level_; }
  const std::string& location() const { return location_; }
  const std::optional<Type>& expected() const { return expected_; }
  const std::optional<Type>& actual() const { return actual_; }
  const std::optional<Name>& missing() const { return missing_; }

 private:
  Level level_;
  std::string location_;
  std::optional<Type> expected_;
  std::optional<Type> actual_;
  std::optional<Name> missing_;
};

/// Any node of one of the nine categories.
using AnyNode = std::variant<StrongValue, WeakValue, Term, ForcingContext, CatchableContext,
                             EvalContext, Command, Store, Closure>;

/// Result of check_with_context: a type for v/V/t/F/E/e, Γ′ for τ, nothing for c/l.
using Judgment = std::variant<std::monostate, Type, TypingContext>;

class Checker {
 public:
  explicit Checker(Signature sig) : sig_(std::move(sig)) {}

  Type infer_v(const TypingContext& ctx, const StrongValue& v) const;
  Type infer_V(const TypingContext& ctx, const WeakValue& v) const;
  Type infer_t(const TypingContext& ctx, const Term& t) const;
  Type infer_F(const TypingContext& ctx, const ForcingContext& f) const;
  Type infer_E(const TypingContext& ctx, const CatchableContext& e) const;
  Type infer_e(const TypingContext& ctx, const EvalContext& e) const;

  /// Cut: the type is taken from the term and the context is checked against it.
  void check_command(const TypingContext& ctx, const Command& c) const;
  /// Γ ⊢τ τ : Γ′, built left to right.
  TypingContext check_store(const TypingContext& ctx, const Store& s) const;
  /// Γ ⊢l cτ. Returns Γ′ from the store.
  TypingContext check_closure(const TypingContext& ctx, const Closure& l) const;
  TypingContext check_closure(const Closure& l) const { return check_closure(TypingContext{}, l); }

  /// Dispatch on level; lower categories are lifted (a StrongValue may be
  /// checked at v, V or t). Throws TypeError when the node's category is
  /// above the requested level.
  Judgment check_with_context(const TypingContext& ctx, const AnyNode& node, Level level) const;

  /// Type of the cut of the closure's command, under the store context.
  Type cut_type(const Closure& l) const;

  const Signature& signature() const { return sig_; }

 private:
  Signature sig_;
};

/// True iff check_closure succeeds.
bool well_typed(const Signature& sig, const Closure& l);

}  // namespace lvt
