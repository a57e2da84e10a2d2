#include "lvt/machine.hpp"

#include "lvt/format.hpp"
#include "lvt/store.hpp"
#include "lvt/typing.hpp"

namespace lvt {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::Beta: return "Beta";
    case Rule::Let: return "Let";
    case Rule::Catch: return "Catch";
    case Rule::LookupAlpha: return "LookupAlpha";
    case Rule::LookupX: return "LookupX";
    case Rule::Restore: return "Restore";
  }
  return "?";
}

std::optional<Rule> parse_rule(std::string_view text) {
  for (Rule r : kAllRules)
    if (to_string(r) == text) return r;
  return std::nullopt;
}

std::string_view to_string(NormalKind kind) {
  return kind == NormalKind::ValueVsCoConst ? "ValueVsCoConst" : "ConstVsApp";
}

namespace {

// Shape dispatch, assuming the closure is closed.
std::optional<Rule> match(const Command& c) {
  if (c.context.as_tmu()) return Rule::Let;
  const CatchableContext& e = *c.context.as_catchable();
  if (c.term.as_mu()) return Rule::Catch;
  if (e.as_covar()) return Rule::LookupAlpha;
  if (e.as_bracket()) return Rule::Restore;
  const ForcingContext& f = *e.as_forcing();
  if (c.term.as_var()) return Rule::LookupX;
  const StrongValue& v = *c.term.as_strong();
  if (std::holds_alternative<Lam>(v.node) && std::holds_alternative<App>(f.node)) return Rule::Beta;
  return std::nullopt;
}

// The rules take the closure by value so that run() can move the store
// through instead of copying it at every step.

Closure beta(Closure l, FreshSupply& fresh) {
  const Lam& lam = std::get<Lam>(l.command.term.as_strong()->node);
  const App& app = std::get<App>(l.command.context.as_catchable()->as_forcing()->node);
  // µ̃x scopes over E, so E must not mention x at all.
  Lam f = all_names(*app.rest).contains(lam.binder) ? rename_binder(lam, fresh) : lam;
  Tmu frame{f.binder, f.annot, Box<Command>(Command{*f.body, *app.rest})};
  Command next{app.arg, EvalContext(std::move(frame))};
  return Closure{std::move(next), std::move(l.store)};
}

Closure let(Closure l, FreshSupply& fresh) {
  const Tmu m = rename_binder(*l.command.context.as_tmu(), fresh);
  Store s = std::move(l.store);
  s.bindings.push_back(Binding{m.binder, std::move(l.command.term)});
  return Closure{*m.body, std::move(s)};
}

Closure catch_rule(Closure l, FreshSupply& fresh) {
  const Mu m = rename_binder(*l.command.term.as_mu(), fresh);
  Store s = std::move(l.store);
  s.bindings.push_back(Binding{m.binder, *l.command.context.as_catchable()});
  return Closure{*m.body, std::move(s)};
}

Closure lookup_alpha(Closure l) {
  const Name& a = l.command.context.as_catchable()->as_covar()->name;
  const std::size_t i = find_key(l.store, Key{Sort::CoVar, a});
  Command next{std::move(l.command.term), EvalContext(*l.store.bindings[i].context())};
  return Closure{std::move(next), std::move(l.store)};
}

Type frame_annotation(const Store& prefix, const Term& t, const Signature* sig) {
  if (sig) {
    try {
      const Checker checker(*sig);
      return checker.infer_t(checker.check_store(TypingContext{}, prefix), t);
    } catch (const TypeError&) {
    }
  }
  return Type::atom("Untyped");
}

Closure lookup_x(Closure l, const Signature* sig) {
  const Name x = l.command.term.as_var()->name;
  std::vector<Binding>& bs = l.store.bindings;
  const std::size_t i = find_key(l.store, Key{Sort::Var, x});
  const auto at = bs.begin() + static_cast<std::ptrdiff_t>(i);
  Term t = std::move(std::get<Term>(at->value));
  Store suffix{std::vector<Binding>(std::make_move_iterator(at + 1), std::make_move_iterator(bs.end()))};
  bs.erase(at, bs.end());
  Type annot = frame_annotation(l.store, t, sig);
  TmuBracket frame{x, std::move(annot), *l.command.context.as_catchable()->as_forcing(),
                   Box<Store>(std::move(suffix))};
  return Closure{Command{std::move(t), EvalContext(std::move(frame))}, std::move(l.store)};
}

// The frame's binder and every suffix key are renamed before re-entering the
// store: the same frame may be restored more than once when it was copied
// out of an [α:=E] binding.
Closure restore(Closure l, FreshSupply& fresh) {
  const TmuBracket& b = *l.command.context.as_catchable()->as_bracket();
  const Name x = fresh.fresh(b.binder);
  Renaming renaming{{{Sort::Var, b.binder}, x}};
  std::vector<Binding> suffix;
  suffix.reserve(b.suffix->size());
  for (const Binding& old : b.suffix->bindings) {
    Name key = fresh.fresh(old.key);
    if (const Term* t = old.term()) {
      suffix.push_back(Binding{key, rename_free(*t, renaming)});
    } else {
      suffix.push_back(Binding{key, rename_free(*old.context(), renaming)});
    }
    renaming.insert_or_assign({old.sort(), old.key}, std::move(key));
  }
  ForcingContext forcing = rename_free(b.forcing, renaming);
  const Term& value = l.command.term;
  Store s = std::move(l.store);
  s.bindings.push_back(Binding{x, value});
  s.bindings.insert(s.bindings.end(), std::make_move_iterator(suffix.begin()), std::make_move_iterator(suffix.end()));
  return Closure{Command{value, EvalContext(std::move(forcing))}, std::move(s)};
}

Closure apply(Rule rule, Closure l, FreshSupply& fresh, const Signature* sig) {
  switch (rule) {
    case Rule::Beta: return beta(std::move(l), fresh);
    case Rule::Let: return let(std::move(l), fresh);
    case Rule::Catch: return catch_rule(std::move(l), fresh);
    case Rule::LookupAlpha: return lookup_alpha(std::move(l));
    case Rule::LookupX: return lookup_x(std::move(l), sig);
    case Rule::Restore: return restore(std::move(l), fresh);
  }
  throw std::logic_error("unknown rule");
}

}  // namespace

std::optional<Rule> applicable_rule(const Closure& l) {
  if (!is_closed(l)) throw NotClosed();
  return match(l.command);
}

NormalKind normal_kind(const Closure& l) {
  const StrongValue* v = l.command.term.as_strong();
  const auto* e = l.command.context.as_catchable();
  const ForcingContext* f = e ? e->as_forcing() : nullptr;
  if (!v || !f) throw std::logic_error("normal_kind: closure is reducible");
  return std::holds_alternative<CoConst>(f->node) ? NormalKind::ValueVsCoConst : NormalKind::ConstVsApp;
}

bool is_value_vs_coconst(const Closure& l) {
  const auto* e = l.command.context.as_catchable();
  const ForcingContext* f = e ? e->as_forcing() : nullptr;
  return l.command.term.as_strong() && f && std::holds_alternative<CoConst>(f->node);
}

StepResult step(const Closure& l, FreshSupply& fresh, const StepOptions& opts) {
  if (!is_closed(l)) return Stuck{"NotClosed"};
  const auto rule = match(l.command);
  if (!rule) return Normal{normal_kind(l)};
  return Reduced{*rule, apply(*rule, l, fresh, opts.signature)};
}

Trace run(const Closure& l, std::uint64_t fuel, FreshSupply& fresh, const RunOptions& opts) {
  Trace trace(l);
  if (!is_closed(l)) {
    trace.outcome = Outcome{Outcome::Kind::Stuck, NormalKind::ValueVsCoConst, "NotClosed"};
    return trace;
  }
  Closure cur = l;
  for (;;) {
    const auto rule = match(cur.command);
    if (!rule) {
      trace.outcome = Outcome{Outcome::Kind::Normal, normal_kind(cur), {}};
      break;
    }
    if (trace.fuel_used == fuel) {
      trace.outcome = Outcome{Outcome::Kind::FuelExhausted, NormalKind::ValueVsCoConst, {}};
      break;
    }
    cur = apply(*rule, std::move(cur), fresh, opts.signature);
    ++trace.fuel_used;
    if (opts.on_step) opts.on_step(trace.fuel_used, *rule, cur);
    if (opts.record) trace.steps.push_back(TraceStep{*rule, cur});
  }
  trace.final_state = std::move(cur);
  return trace;
}

Trace run(const Closure& l, std::uint64_t fuel, const RunOptions& opts) {
  FreshSupply fresh = FreshSupply::above(l);
  return run(l, fuel, fresh, opts);
}

std::string format_step(std::uint64_t n, Rule rule, const Closure& l) {
  return "STEP " + std::to_string(n) + " " + std::string(to_string(rule)) + " " + to_sexpr(l);
}

std::string format_outcome(const Outcome& outcome, std::uint64_t fuel_used) {
  std::string out = "OUTCOME ";
  switch (outcome.kind) {
    case Outcome::Kind::Normal: out += "Normal " + std::string(to_string(outcome.normal)); break;
    case Outcome::Kind::FuelExhausted: out += "FuelExhausted"; break;
    case Outcome::Kind::Stuck: out += "Stuck " + outcome.reason; break;
  }
  return out + " FUEL_USED " + std::to_string(fuel_used);
}

}  // namespace lvt
