#pragma once

// Weak-head abstract machine over closed closures. One rule fires at the
// top of the command; the store only grows, except that Lookupx moves a
// binding and its suffix into a µ̃[x] frame until Restore puts them back.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lvt/syntax.hpp"

namespace lvt {

struct Signature;

enum class Rule { Beta, Let, Catch, LookupAlpha, LookupX, Restore };
inline constexpr Rule kAllRules[] = {Rule::Beta,        Rule::Let,     Rule::Catch,
                                     Rule::LookupAlpha, Rule::LookupX, Rule::Restore};

enum class NormalKind { ValueVsCoConst, ConstVsApp };

std::string_view to_string(Rule rule);
std::optional<Rule> parse_rule(std::string_view text);
std::string_view to_string(NormalKind kind);

class NotClosed : public std::runtime_error {
 public:
  NotClosed() : std::runtime_error("closure is not closed") {}
};

struct Reduced {
  Rule rule;
  Closure next;
};
struct Normal {
  NormalKind kind;
};
struct Stuck {
  std::string reason;
};
using StepResult = std::variant<Reduced, Normal, Stuck>;

/// Rule whose left-hand side matches, or nullopt for a normal form.
/// Throws NotClosed.
std::optional<Rule> applicable_rule(const Closure& l);

/// Which dead end a normal closure is in. Precondition: no rule applies.
NormalKind normal_kind(const Closure& l);

struct StepOptions {
  /// Used by Lookupx to annotate the new µ̃[x] frame with the type of the
  /// looked-up term. Without it (or if the prefix does not type) the frame
  /// gets the placeholder atom `Untyped`.
  const Signature* signature = nullptr;
};

/// One step. Non-closed input yields Stuck, never an exception.
StepResult step(const Closure& l, FreshSupply& fresh, const StepOptions& opts = {});

struct Outcome {
  enum class Kind { Normal, FuelExhausted, Stuck };
  Kind kind = Kind::Normal;
  NormalKind normal = NormalKind::ValueVsCoConst;  // when kind == Normal
  std::string reason;                               // when kind == Stuck
};

struct TraceStep {
  Rule rule;
  Closure closure;  // state after the step
};

struct Trace {
  explicit Trace(Closure start) : final_state(std::move(start)) {}

  std::vector<TraceStep> steps;  // empty unless recorded
  Outcome outcome;
  std::uint64_t fuel_used = 0;
  Closure final_state;
};

struct RunOptions {
  const Signature* signature = nullptr;
  bool record = true;
  /// Called after every step with (step number from 1, rule, new state).
  std::function<void(std::uint64_t, Rule, const Closure&)> on_step;
};

/// Iterates step until Normal, Stuck or `fuel` steps have been taken.
/// Closedness is checked once on entry.
Trace run(const Closure& l, std::uint64_t fuel, FreshSupply& fresh, const RunOptions& opts = {});

/// Convenience: fresh supply taken above the closure's own fresh names.
Trace run(const Closure& l, std::uint64_t fuel, const RunOptions& opts = {});

/// `STEP <n> <RULE> <closure>`
std::string format_step(std::uint64_t n, Rule rule, const Closure& l);
/// `OUTCOME <Normal kind|FuelExhausted|Stuck reason> FUEL_USED <n>`
std::string format_outcome(const Outcome& outcome, std::uint64_t fuel_used);

/// ⟨v‖κ⟩τ with v strong.
bool is_value_vs_coconst(const Closure& l);

}  // namespace lvt
