#pragma once

// Generator internals shared by the suites. Not installed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lvt/harness.hpp"
#include "lvt/typing.hpp"

namespace lvt::detail {

// Modulo draws keep the stream identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : g_() % n; }
  bool chance(double p) { return static_cast<double>(g_() >> 11) * 0x1.0p-53 < p; }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[below(xs.size())];
  }

 private:
  std::mt19937_64 g_;
};

/// Top-down synthesis of typed nodes under a mutable Γ.
class TypedGen {
 public:
  TypedGen(const GenConfig& cfg, Rng& rng, std::vector<ContextEntry> env = {});

  Type random_type(int depth);
  Type atom();

  StrongValue strong(const Type& a, int d);
  WeakValue weak(const Type& a, int d);
  Term term(const Type& a, int d);
  ForcingContext forcing(const Type& a, int d);
  CatchableContext catchable(const Type& a, int d);
  EvalContext eval(const Type& a, int d);
  Command command(int d);
  /// Bindings are pushed onto Γ as they are made; callers reset afterwards.
  Store bindings(int n, int d);
  Closure closure();

  std::size_t mark() const { return env_.size(); }
  void reset(std::size_t mark) { env_.resize(mark); }
  const std::vector<ContextEntry>& env() const { return env_; }

  Name fresh_var();
  Name fresh_covar();

 private:
  std::vector<Name> candidates(Sort sort, const Type& a) const;
  Type cut_type();
  TmuBracket bracket(const Type& a, int d);

  const GenConfig& cfg_;
  Rng& rng_;
  std::vector<ContextEntry> env_;
  std::vector<Name> atoms_;
  std::uint64_t counter_ = 0;
};

/// Closed untyped nodes over a scope of bound names.
class UntypedGen {
 public:
  explicit UntypedGen(Rng& rng) : rng_(rng) {}

  Term term(int d);
  CatchableContext catchable(int d);
  ForcingContext forcing(int d);
  EvalContext eval(int d);
  Command command(int d);
  /// Keys are added to the scope.
  Binding binding(int d);
  Store store(int n, int d);

  std::vector<Name> vars;
  std::vector<Name> covars;
  /// Inserted into every generated name, to keep several generators apart.
  std::string tag;

 private:
  Name fresh(const char* prefix);

  Rng& rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace lvt::detail
