#pragma once

// Generators and property suites: well-typed closures by derivation
// synthesis, subject reduction and normalization along machine runs, the
// store union lemma, weakening, and agreement of the machine with a plain
// call-by-name evaluator on the pure λ-calculus.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvt/machine.hpp"
#include "lvt/syntax.hpp"
#include "lvt/typing.hpp"

namespace lvt {

// ---- reports

struct Report {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  /// Cases not run because their input did not satisfy the suite's precondition.
  std::uint64_t precondition_failed = 0;
  std::map<std::string, std::uint64_t> histogram;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  std::uint64_t steps = 0;

  bool ok() const { return fail == 0 && precondition_failed == 0; }
  void record(bool passed, const std::string& failure = {});
  /// Sums counts and concatenates failures; the name of `*this` is kept.
  void merge(const Report& other);
  /// SUITE line, RULE histogram lines, failures, notes. No RESULT line.
  std::string to_text() const;
};

/// Every report's text followed by `RESULT ok` or `RESULT fail`.
std::string render(const std::vector<Report>& reports);
bool all_ok(const std::vector<Report>& reports);

// ---- generation

class GenerationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenConfig {
  std::uint64_t seed = 1;
  int max_depth = 4;
  Signature signature;
  /// Probability of a µ (for terms) or µ̃ (for contexts) at each choice point.
  double control_rate = 0.3;
  /// Bindings synthesised before the command; the command may use them.
  int store_prefill = 2;
  /// Probability of building a µ̃[x] frame directly where a catchable
  /// context is needed. Zero means such frames only arise from Lookupx.
  double bracket_rate = 0.0;
};

/// k, k2 : X; j : Y; q : X; r : Y; h : X -> Y.
Signature default_signature();

/// A closed closure accepted by check_closure. Deterministic in cfg.seed.
/// Throws GenerationFailed when no atom has both a constant and a co-constant.
Closure gen_typed_closure(const GenConfig& cfg);

/// `count` closures with seeds cfg.seed, cfg.seed + 1, ...
std::vector<Closure> gen_typed_corpus(const GenConfig& cfg, std::size_t count);

/// A closed closure with no regard for types: names are always bound, but
/// constants, co-constants and cut shapes are arbitrary.
Closure gen_untyped_closure(std::uint64_t seed, int max_depth);

/// Counts of µ, µ̃ and µ̃[] nodes anywhere in the closure (stores included).
struct ControlCount {
  std::size_t mu = 0;
  std::size_t tmu = 0;
  std::size_t bracket = 0;
};
ControlCount count_control(const Closure& l);

// ---- rule left-hand sides, written independently of the machine

/// Whether the left-hand side of `rule` matches `l`, including the store
/// condition of the lookup rules.
bool lhs_matches(Rule rule, const Closure& l);

/// For every closure: at most one left-hand side matches, and the machine
/// agrees (same rule, or normal when none matches).
Report determinism_check(const std::vector<Closure>& closures);

// ---- machine suites

/// Runs the machine and re-checks every intermediate closure; also checks
/// closedness and key uniqueness after each step. One case per step.
Report subject_reduction_check(const Signature& sig, const Closure& l, std::uint64_t fuel);

/// One case: the run normalizes within fuel in a ⟨v‖κ⟩τ state.
Report normalization_check(const Signature& sig, const Closure& l, std::uint64_t fuel);

/// Generator soundness, subject reduction, normalization and elaboration
/// into accepted derivations, over `count` generated closures (one run each).
std::vector<Report> fuzz_suite(const GenConfig& cfg, std::size_t count, std::uint64_t fuel);

// ---- store and typing properties

Report store_lemma_suite(std::size_t count, std::uint64_t seed);

Report weakening_suite(std::size_t count, std::uint64_t seed);

// ---- pure λ-calculus and call-by-name agreement

struct PureTerm;

struct PVar {
  Name name;
};
struct PConst {
  Name name;
};
struct PLam {
  Name binder;
  Type annot;
  Box<PureTerm> body;
};
struct PApp {
  Box<PureTerm> fun;
  Box<PureTerm> arg;
};

struct PureTerm {
  std::variant<PVar, PConst, PLam, PApp> node;
  PureTerm(PVar v) : node(std::move(v)) {}
  PureTerm(PConst k) : node(std::move(k)) {}
  PureTerm(PLam l) : node(std::move(l)) {}
  PureTerm(PApp a) : node(std::move(a)) {}
};

namespace pure {
PureTerm var(Name x);
PureTerm konst(Name k);
PureTerm lam(Name x, Type annot, PureTerm body);
PureTerm app(PureTerm f, PureTerm a);
}  // namespace pure

std::string to_string(const PureTerm& t);

class IllTypedPureTerm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simple type of a closed pure term. Throws IllTypedPureTerm.
Type pure_type(const Signature& sig, const PureTerm& t);

/// App(u, v) ↦ µα.⟨u‖v·α⟩ with α fresh; the rest is mapped to itself.
/// Needs the signature to annotate µ. Throws IllTypedPureTerm.
Term embed_pure(const Signature& sig, const PureTerm& t, FreshSupply& fresh);

/// Normal-order weak-head reduction by substitution. Returns the constant
/// the term reduces to, or nullopt (λ, stuck or out of fuel).
std::optional<Name> cbn_eval(const PureTerm& t, std::uint64_t fuel);

/// Closed pure term of a random atomic type.
PureTerm gen_pure_term(const Signature& sig, std::uint64_t seed, int max_depth);

/// One case: machine on ⟨embed(t)‖κ⟩ε reaches ⟨k‖κ⟩τ iff cbn_eval gives k.
/// κ is the first co-constant declared at the atomic type of t.
Report cbn_agreement_check(const Signature& sig, const PureTerm& t, std::uint64_t fuel);

Report cbn_suite(const Signature& sig, std::size_t count, std::uint64_t seed, std::uint64_t fuel);

}  // namespace lvt
