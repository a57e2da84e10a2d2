#include <algorithm>
#include <sstream>

#include "gen_internal.hpp"
#include "lvt/format.hpp"
#include "lvt/sndorder.hpp"
#include "lvt/store.hpp"

namespace lvt {

// ---------------------------------------------------------------- reports

namespace {
constexpr std::size_t kMaxFailures = 20;
}

void Report::record(bool passed, const std::string& failure) {
  ++cases;
  if (passed) {
    ++pass;
    return;
  }
  ++fail;
  if (failures.size() < kMaxFailures) failures.push_back(failure);
}

void Report::merge(const Report& other) {
  cases += other.cases;
  pass += other.pass;
  fail += other.fail;
  precondition_failed += other.precondition_failed;
  steps += other.steps;
  for (const auto& [k, n] : other.histogram) histogram[k] += n;
  for (const auto& f : other.failures)
    if (failures.size() < kMaxFailures) failures.push_back(f);
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "SUITE " << name << " CASES " << cases << " PASS " << pass << " FAIL " << fail << "\n";
  if (precondition_failed) out << "PRECONDITION_FAILED " << precondition_failed << "\n";
  for (const auto& [k, n] : histogram) out << "RULE " << k << " " << n << "\n";
  for (const auto& f : failures) out << "FAILED " << f << "\n";
  for (const auto& n : notes) out << "NOTE " << n << "\n";
  return out.str();
}

bool all_ok(const std::vector<Report>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.ok(); });
}

std::string render(const std::vector<Report>& reports) {
  std::string out;
  for (const auto& r : reports) out += r.to_text();
  out += all_ok(reports) ? "RESULT ok\n" : "RESULT fail\n";
  return out;
}

// ---------------------------------------------------------------- left-hand sides

namespace {

const StrongValue* strong_of(const Term& t) {
  const auto* w = std::get_if<WeakValue>(&t.node);
  return w ? std::get_if<StrongValue>(&w->node) : nullptr;
}

bool store_binds(const Store& s, Sort sort, const Name& name) {
  return std::any_of(s.bindings.begin(), s.bindings.end(),
                     [&](const Binding& b) { return b.key == name && b.sort() == sort; });
}

}  // namespace

bool lhs_matches(Rule rule, const Closure& l) {
  const Term& t = l.command.term;
  const EvalContext& e = l.command.context;
  const auto* ce = std::get_if<CatchableContext>(&e.node);
  const bool weak = std::holds_alternative<WeakValue>(t.node);
  switch (rule) {
    case Rule::Beta: {
      // ⟨λx.t‖u·E⟩
      const StrongValue* v = strong_of(t);
      const auto* f = ce ? std::get_if<ForcingContext>(&ce->node) : nullptr;
      return v && std::holds_alternative<Lam>(v->node) && f && std::holds_alternative<App>(f->node);
    }
    case Rule::Let:
      // ⟨t‖µ̃x.c⟩
      return std::holds_alternative<Tmu>(e.node);
    case Rule::Catch:
      // ⟨µα.c‖E⟩
      return std::holds_alternative<Mu>(t.node) && ce != nullptr;
    case Rule::LookupAlpha: {
      // ⟨V‖α⟩τ[α:=E]τ′
      const auto* a = ce ? std::get_if<CoVar>(&ce->node) : nullptr;
      return weak && a && store_binds(l.store, Sort::CoVar, a->name);
    }
    case Rule::LookupX: {
      // ⟨x‖F⟩τ[x:=t]τ′
      const auto* w = std::get_if<WeakValue>(&t.node);
      const auto* x = w ? std::get_if<Var>(&w->node) : nullptr;
      return x && ce && std::holds_alternative<ForcingContext>(ce->node) &&
             store_binds(l.store, Sort::Var, x->name);
    }
    case Rule::Restore:
      // ⟨V‖µ̃[x].⟨x‖F⟩τ′⟩
      return weak && ce && std::holds_alternative<TmuBracket>(ce->node);
  }
  return false;
}

Report determinism_check(const std::vector<Closure>& closures) {
  Report r;
  r.name = "determinism";
  for (const auto& l : closures) {
    std::vector<Rule> hits;
    for (Rule rule : kAllRules)
      if (lhs_matches(rule, l)) hits.push_back(rule);
    std::optional<Rule> machine;
    try {
      machine = applicable_rule(l);
    } catch (const NotClosed&) {
      r.record(false, "not closed: " + to_sexpr(l));
      continue;
    }
    const bool unique = hits.size() <= 1;
    const bool agrees = hits.empty() ? !machine.has_value() : machine == hits.front();
    std::string why;
    if (!unique) {
      why = std::to_string(hits.size()) + " rules match:";
      for (Rule h : hits) why += " " + std::string(to_string(h));
    } else if (!agrees) {
      why = "machine disagrees with the left-hand sides";
    }
    r.record(unique && agrees, why + ": " + to_sexpr(l));
    r.histogram[hits.empty() ? "none" : std::string(to_string(hits.front()))]++;
  }
  return r;
}

// ---------------------------------------------------------------- machine suites

namespace {

std::optional<std::string> ill_typed(const Checker& checker, const Closure& l) {
  try {
    checker.check_closure(l);
    return std::nullopt;
  } catch (const TypeError& e) {
    return std::string(e.what());
  }
}

// One run, feeding both the per-step and the final-state reports.
void typed_run(const Signature& sig, const Closure& l, std::uint64_t fuel, Report* sr, Report* norm) {
  const Checker checker(sig);
  if (auto err = ill_typed(checker, l)) {
    const std::string note = "precondition violated: check_closure failed: " + *err;
    for (Report* r : {sr, norm}) {
      if (!r) continue;
      ++r->precondition_failed;
      r->notes.push_back(note);
    }
    return;
  }

  RunOptions opts;
  opts.signature = &sig;
  opts.record = false;
  if (sr) {
    opts.on_step = [&](std::uint64_t n, Rule rule, const Closure& next) {
      std::string why;
      if (auto err = ill_typed(checker, next)) {
        why = *err;
      } else if (!is_closed(next)) {
        why = "successor is not closed";
      } else {
        try {
          check_unique_keys(next.store);
        } catch (const DuplicateKey& e) {
          why = e.what();
        }
      }
      sr->record(why.empty(), "step " + std::to_string(n) + " " + std::string(to_string(rule)) + ": " + why +
                                  " in " + to_sexpr(next) + " from " + to_sexpr(l));
      sr->histogram[std::string(to_string(rule))]++;
    };
  }
  const Trace trace = run(l, fuel, opts);
  if (sr) sr->steps += trace.fuel_used;
  if (norm) {
    norm->steps += trace.fuel_used;
    std::string why;
    if (trace.outcome.kind == Outcome::Kind::FuelExhausted) {
      why = "FuelExhausted after " + std::to_string(trace.fuel_used) + " steps";
      norm->histogram["FuelExhausted"]++;
    } else if (trace.outcome.kind == Outcome::Kind::Stuck) {
      why = "Stuck " + trace.outcome.reason;
      norm->histogram["Stuck"]++;
    } else {
      norm->histogram[std::string(to_string(trace.outcome.normal))]++;
      if (!is_value_vs_coconst(trace.final_state)) why = "final state is not <v||kappa>: " + to_sexpr(trace.final_state);
    }
    norm->record(why.empty(), why + " for " + to_sexpr(l));
  }
}

}  // namespace

Report subject_reduction_check(const Signature& sig, const Closure& l, std::uint64_t fuel) {
  Report r;
  r.name = "subject_reduction";
  typed_run(sig, l, fuel, &r, nullptr);
  return r;
}

Report normalization_check(const Signature& sig, const Closure& l, std::uint64_t fuel) {
  Report r;
  r.name = "normalization";
  typed_run(sig, l, fuel, nullptr, &r);
  return r;
}

std::vector<Report> fuzz_suite(const GenConfig& cfg, std::size_t count, std::uint64_t fuel) {
  Report gen, sr, norm, elab;
  gen.name = "generator";
  sr.name = "subject_reduction";
  norm.name = "normalization";
  elab.name = "elaboration";
  const Checker checker(cfg.signature);
  const auto corpus = gen_typed_corpus(cfg, count);
  for (const auto& l : corpus) {
    const auto err = ill_typed(checker, l);
    gen.record(!err, (err ? *err : "") + ": " + to_sexpr(l));
    const ControlCount cc = count_control(l);
    if (cc.mu) gen.histogram["with_mu"]++;
    if (cc.tmu) gen.histogram["with_tmu"]++;
    if (cc.bracket) gen.histogram["with_bracket"]++;
    typed_run(cfg.signature, l, fuel, &sr, &norm);
    if (err) continue;
    try {
      so::check_derivation(so::elaborate_closure(cfg.signature, l), cfg.signature);
      elab.record(true);
    } catch (const std::exception& e) {
      elab.record(false, std::string(e.what()) + ": " + to_sexpr(l));
    }
  }
  for (Rule rule : kAllRules) sr.histogram.try_emplace(std::string(to_string(rule)), 0);
  return {gen, sr, norm, elab};
}

// ---------------------------------------------------------------- store lemma

namespace {

struct StorePair {
  Store left;
  Store right;
};

// Shared bindings S depend only on earlier shared keys. Each side takes a
// prefix of S and interleaves private bindings that may depend on anything
// already placed on that side.
StorePair gen_store_pair(detail::Rng& rng) {
  detail::UntypedGen gen(rng);
  const int n_shared = static_cast<int>(rng.below(5));
  std::vector<Binding> shared;
  for (int i = 0; i < n_shared; ++i) shared.push_back(gen.binding(1));

  auto side = [&](std::size_t take, const char* tag) {
    detail::UntypedGen priv(rng);
    priv.tag = tag;
    Store s;
    std::size_t next = 0;
    const int n_priv = static_cast<int>(rng.below(5));
    int made = 0;
    while (next < take || made < n_priv) {
      const bool shared_next = next < take && (made >= n_priv || rng.chance(0.5));
      if (shared_next) {
        const Binding& b = shared[next++];
        s.bindings.push_back(b);
        (b.sort() == Sort::Var ? priv.vars : priv.covars).push_back(b.key);
      } else {
        s.bindings.push_back(priv.binding(1));
        ++made;
      }
    }
    return s;
  };
  const std::size_t left_take = shared.size();
  const std::size_t right_take = shared.empty() ? 0 : rng.below(shared.size() + 1);
  Store left = side(left_take, "L");
  Store right = side(right_take, "R");
  if (rng.chance(0.5)) std::swap(left, right);
  return {std::move(left), std::move(right)};
}

std::string describe_pair(const Store& a, const Store& b) { return to_sexpr(a) + " , " + to_sexpr(b); }

// Both extension facts and split preservation at every key of `a`.
std::string lemma_violation(const Store& a, const Store& b) {
  if (!compatible(a, b)) return "generated stores are not compatible";
  Store u;
  try {
    u = store_union(a, b);
  } catch (const StoreError& e) {
    return std::string("union failed: ") + e.what();
  }
  if (!free_vars(u).empty()) return "union is not closed: " + to_sexpr(u);
  try {
    check_unique_keys(u);
  } catch (const DuplicateKey& e) {
    return std::string("union has ") + e.what();
  }
  if (!extends(a, u)) return "left store not extended by union " + to_sexpr(u);
  if (!extends(b, u)) return "right store not extended by union " + to_sexpr(u);
  for (const auto& bind : a.bindings) {
    const Key key = key_of(bind);
    const SplitView before = split_at(a, key);
    if (!(before.reassemble() == a)) return "split does not reassemble at " + key.name;
    const SplitView after = split_at(u, key);
    if (!alpha_equal_values(before.binding, after.binding)) return "union changed the value of " + key.name;
    if (!extends(before.prefix, after.prefix)) return "prefix not preserved at " + key.name;
    if (!extends(before.suffix, after.suffix)) return "suffix not preserved at " + key.name;
  }
  return {};
}

}  // namespace

Report store_lemma_suite(std::size_t count, std::uint64_t seed) {
  Report r;
  r.name = "store_lemma";
  detail::Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const StorePair p = gen_store_pair(rng);
    const std::string why = lemma_violation(p.left, p.right);
    r.record(why.empty(), why + ": " + describe_pair(p.left, p.right));
    if (p.left.empty() || p.right.empty()) {
      r.histogram["with_empty"]++;
    } else if (independent(p.left, p.right)) {
      r.histogram["independent"]++;
    } else {
      r.histogram["overlapping"]++;
    }
  }
  return r;
}

// ---------------------------------------------------------------- weakening

namespace {

struct WeakeningCase {
  TypingContext ctx;
  AnyNode node;
  Level level;
};

WeakeningCase gen_weakening_case(const GenConfig& cfg, detail::Rng& rng) {
  detail::TypedGen gen(cfg, rng);
  std::vector<ContextEntry> entries;
  const int n = static_cast<int>(rng.below(4));
  for (int i = 0; i < n; ++i) {
    const bool co = rng.chance(0.3);
    entries.push_back(ContextEntry{co ? Sort::CoVar : Sort::Var, co ? gen.fresh_covar() : gen.fresh_var(),
                                   gen.random_type(1)});
  }
  detail::TypedGen g(cfg, rng, entries);
  const Level level = static_cast<Level>(rng.below(9));
  const Type a = g.random_type(2);
  const int d = cfg.max_depth;
  // The names from `gen` and `g` overlap; keep g's names apart.
  for (int i = 0; i < 4 * n + 4; ++i) g.fresh_var();
  AnyNode node = [&]() -> AnyNode {
    switch (level) {
      case Level::v: return g.strong(a, d);
      case Level::V: return g.weak(a, d);
      case Level::t: return g.term(a, d);
      case Level::F: return g.forcing(a, d);
      case Level::E: return g.catchable(a, d);
      case Level::e: return g.eval(a, d);
      case Level::c: return g.command(d);
      case Level::tau: {
        const std::size_t m = g.mark();
        Store s = g.bindings(1 + static_cast<int>(rng.below(3)), d - 1);
        g.reset(m);
        return s;
      }
      case Level::l: return g.closure();
    }
    return g.command(d);
  }();
  return WeakeningCase{TypingContext(entries), std::move(node), level};
}

std::string judgment_text(const Judgment& j) {
  if (const auto* t = std::get_if<Type>(&j)) return to_string(*t);
  if (const auto* c = std::get_if<TypingContext>(&j)) return "[" + to_string(*c) + "]";
  return "ok";
}

}  // namespace

Report weakening_suite(std::size_t count, std::uint64_t seed) {
  Report r;
  r.name = "weakening";
  GenConfig cfg;
  cfg.signature = default_signature();
  cfg.max_depth = 3;
  cfg.control_rate = 0.3;
  cfg.bracket_rate = 0.2;
  cfg.store_prefill = 1;
  detail::Rng rng(seed);
  const Checker checker(cfg.signature);
  for (std::size_t i = 0; i < count; ++i) {
    const WeakeningCase c = gen_weakening_case(cfg, rng);
    r.histogram[std::string(to_string(c.level))]++;
    const std::string node_text =
        std::string(to_string(c.level)) + " " + std::visit([](const auto& n) { return to_sexpr(n); }, c.node);
    Judgment before;
    try {
      before = checker.check_with_context(c.ctx, c.node, c.level);
    } catch (const TypeError& e) {
      r.record(false, std::string("generated node does not type: ") + e.what() + " " + node_text);
      continue;
    }
    // Insert fresh entries at random positions.
    std::vector<ContextEntry> wider = c.ctx.entries();
    const int extra = 1 + static_cast<int>(rng.below(3));
    for (int k = 0; k < extra; ++k) {
      const bool co = rng.chance(0.3);
      ContextEntry e{co ? Sort::CoVar : Sort::Var, "w" + std::to_string(k), Type::atom(k % 2 ? "Y" : "X")};
      wider.insert(wider.begin() + static_cast<std::ptrdiff_t>(rng.below(wider.size() + 1)), std::move(e));
    }
    const TypingContext extended(std::move(wider));
    try {
      const Judgment after = checker.check_with_context(extended, c.node, c.level);
      r.record(after == before, "judgment changed from " + judgment_text(before) + " to " + judgment_text(after) +
                                    " under " + to_string(extended) + ": " + node_text);
    } catch (const TypeError& e) {
      r.record(false, std::string("weakened check failed: ") + e.what() + " under " + to_string(extended) + ": " +
                          node_text);
    }
  }
  return r;
}

}  // namespace lvt
