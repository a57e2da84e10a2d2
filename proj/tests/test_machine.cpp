#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lvt/format.hpp"
#include "lvt/machine.hpp"
#include "lvt/store.hpp"
#include "lvt/typing.hpp"

using namespace lvt;

namespace {
Closure P(std::string_view s) { return parse_closure(s); }

Reduced reduced(const StepResult& r) {
  REQUIRE(std::holds_alternative<Reduced>(r));
  return std::get<Reduced>(r);
}

const char* kIdentity = "(closure (cmd (lam x X (var x)) (app (const k) (coconst q))) (store))";

// ω = λx.µα.⟨x‖x·α⟩, Ω = ⟨ω‖ω·q⟩ε
const char* kOmega =
    "(closure (cmd (lam x X (mu a X (cmd (var x) (app (var x) (covar a)))))"
    " (app (lam x X (mu a X (cmd (var x) (app (var x) (covar a))))) (coconst q))) (store))";
}  // namespace

TEST_CASE("applicable_rule") {
  CHECK(applicable_rule(P(kIdentity)) == Rule::Beta);
  CHECK(applicable_rule(P("(closure (cmd (const k) (coconst q)) (store))")) == std::nullopt);
  CHECK(normal_kind(P("(closure (cmd (const k) (coconst q)) (store))")) == NormalKind::ValueVsCoConst);
  CHECK_THROWS_AS(applicable_rule(P("(closure (cmd (var x) (coconst q)) (store))")), NotClosed);
}

TEST_CASE("the identity program step by step") {
  FreshSupply fresh(0);
  Signature sig = parse_signature("(sig (const k X) (coconst q X))");
  StepOptions opts{&sig};

  const Reduced beta = reduced(step(P(kIdentity), fresh, opts));
  CHECK(beta.rule == Rule::Beta);
  CHECK(beta.next == P("(closure (cmd (const k) (tmu x X (cmd (var x) (coconst q)))) (store))"));

  const Reduced let = reduced(step(beta.next, fresh, opts));
  CHECK(let.rule == Rule::Let);
  CHECK(let.next == P("(closure (cmd (var x#0) (coconst q)) (store (bind x#0 (const k))))"));

  const Reduced lookup = reduced(step(let.next, fresh, opts));
  CHECK(lookup.rule == Rule::LookupX);
  CHECK(lookup.next == P("(closure (cmd (const k) (tmub x#0 X (coconst q) (store))) (store))"));

  const Reduced restore = reduced(step(lookup.next, fresh, opts));
  CHECK(restore.rule == Rule::Restore);
  CHECK(alpha_equal(restore.next, P("(closure (cmd (const k) (coconst q)) (store (bind x#0 (const k))))")));

  CHECK(std::holds_alternative<Normal>(step(restore.next, fresh, opts)));
}

TEST_CASE("golden run") {
  const Trace t = run(P(kIdentity), 10);
  REQUIRE(t.steps.size() == 4);
  const Rule expected[] = {Rule::Beta, Rule::Let, Rule::LookupX, Rule::Restore};
  for (std::size_t i = 0; i < 4; ++i) CHECK(t.steps[i].rule == expected[i]);
  CHECK(t.outcome.kind == Outcome::Kind::Normal);
  CHECK(t.outcome.normal == NormalKind::ValueVsCoConst);
  CHECK(t.fuel_used == 4);
  CHECK(alpha_equal(t.final_state, P("(closure (cmd (const k) (coconst q)) (store (bind x (const k))))")));
  CHECK(t.final_state == t.steps.back().closure);
}

TEST_CASE("a normal form at zero fuel") {
  const Trace t = run(P("(closure (cmd (const k) (coconst q)) (store))"), 0);
  CHECK(t.outcome.kind == Outcome::Kind::Normal);
  CHECK(t.fuel_used == 0);
  CHECK(t.steps.empty());
}

TEST_CASE("zero fuel on a redex") {
  const Trace t = run(P(kIdentity), 0);
  CHECK(t.outcome.kind == Outcome::Kind::FuelExhausted);
  CHECK(t.fuel_used == 0);
}

TEST_CASE("Catch then LookupAlpha") {
  FreshSupply fresh(0);
  const Reduced c = reduced(step(P("(closure (cmd (mu a X (cmd (const k) (covar a))) (coconst q)) (store))"), fresh));
  CHECK(c.rule == Rule::Catch);
  CHECK(c.next == P("(closure (cmd (const k) (covar a#0)) (store (cobind a#0 (coconst q))))"));
  const Reduced l = reduced(step(c.next, fresh));
  CHECK(l.rule == Rule::LookupAlpha);
  CHECK(l.next == P("(closure (cmd (const k) (coconst q)) (store (cobind a#0 (coconst q))))"));
  CHECK(l.next.store == c.next.store);
}

TEST_CASE("LookupAlpha accepts a variable on the left") {
  const Closure l = P("(closure (cmd (var x) (covar a)) (store (bind x (const k)) (cobind a (coconst q))))");
  CHECK(applicable_rule(l) == Rule::LookupAlpha);
}

TEST_CASE("LookupX moves the suffix into the frame") {
  FreshSupply fresh(0);
  const Closure l = P(
      "(closure (cmd (var x) (coconst q))"
      " (store (bind p (const k)) (bind x (var p)) (bind y (var x)) (cobind b (coconst q))))");
  const Reduced r = reduced(step(l, fresh));
  CHECK(r.rule == Rule::LookupX);
  CHECK(r.next == P("(closure (cmd (var p) (tmub x Untyped (coconst q) (store (bind y (var x)) (cobind b (coconst q)))))"
                    " (store (bind p (const k))))"));
  // Restore fires on the variable p, so x is rebound to p; p is then fetched in turn
  const Trace t = run(l, 100);
  CHECK(t.outcome.kind == Outcome::Kind::Normal);
  CHECK(t.fuel_used == 4);
  CHECK(t.final_state.store.size() == 4);
  CHECK(alpha_equal(t.final_state, P("(closure (cmd (const k) (coconst q)) (store (bind p (const k)) (bind x (var p))"
                                     " (bind y (var x)) (cobind b (coconst q))))")));
}

TEST_CASE("Beta renames a binder free in the context") {
  FreshSupply fresh(0);
  const Closure l = P(
      "(closure (cmd (lam x X (lam z X (var x))) (app (const k) (app (var x) (coconst q))))"
      " (store (bind x (const k))))");
  const Reduced r = reduced(step(l, fresh));
  CHECK(r.rule == Rule::Beta);
  const Tmu* m = r.next.command.context.as_tmu();
  REQUIRE(m);
  CHECK(m->binder != "x");
  CHECK(alpha_equal(r.next, P("(closure (cmd (const k) (tmu y X (cmd (lam z X (var y)) (app (var x) (coconst q)))))"
                              " (store (bind x (const k))))")));
}

TEST_CASE("constant against an application is a dead end") {
  const Closure l = P("(closure (cmd (const k) (app (const k) (coconst q))) (store))");
  CHECK(applicable_rule(l) == std::nullopt);
  CHECK(normal_kind(l) == NormalKind::ConstVsApp);
  const Trace t = run(l, 5);
  CHECK(t.outcome.kind == Outcome::Kind::Normal);
  CHECK(t.outcome.normal == NormalKind::ConstVsApp);
  CHECK_FALSE(is_value_vs_coconst(t.final_state));
}

TEST_CASE("open closures are stuck") {
  FreshSupply fresh(0);
  const StepResult r = step(P("(closure (cmd (var x) (coconst q)) (store))"), fresh);
  CHECK(std::holds_alternative<Stuck>(r));
  const Trace t = run(P("(closure (cmd (const k) (covar a)) (store))"), 10);
  CHECK(t.outcome.kind == Outcome::Kind::Stuck);
  CHECK(format_outcome(t.outcome, t.fuel_used) == "OUTCOME Stuck NotClosed FUEL_USED 0");
}

TEST_CASE("self application loops") {
  const Trace t = run(P(kOmega), 2000, RunOptions{nullptr, false, {}});
  CHECK(t.outcome.kind == Outcome::Kind::FuelExhausted);
  CHECK(t.fuel_used == 2000);
  CHECK(format_outcome(t.outcome, t.fuel_used) == "OUTCOME FuelExhausted FUEL_USED 2000");
}

TEST_CASE("restoring a frame saved twice keeps keys unique") {
  // The µ̃[x] frame is captured by µα, restored once, then jumped to again.
  const Closure l = P(
      "(closure (cmd (var x) (coconst q))"
      " (store (bind x (mu a X (cmd (const k) (tmu u X (cmd (var u) (covar a))))))"
      " (bind y (const k2))))");
  const Trace t = run(l, 100);
  CHECK(t.outcome.kind == Outcome::Kind::Normal);
  for (const auto& s : t.steps) CHECK_NOTHROW(check_unique_keys(s.closure.store));

  const Closure twice = P(
      "(closure (cmd (var x) (app (const k) (coconst h)))"
      " (store (bind x (mu a (-> X X) (cmd (lam z X (mu b X (cmd (lam w X (var w)) (covar a)))) (covar a))))"
      " (bind y (const k2))))");
  const Trace t2 = run(twice, 200);
  for (const auto& s : t2.steps) {
    CHECK_NOTHROW(check_unique_keys(s.closure.store));
    CHECK(is_closed(s.closure));
  }
}

TEST_CASE("trace lines") {
  const Trace t = run(P(kIdentity), 10);
  const std::string line = format_step(1, t.steps[0].rule, t.steps[0].closure);
  CHECK(line == "STEP 1 Beta (closure (cmd (const k) (tmu x X (cmd (var x) (coconst q)))) (store))");
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const std::string s = format_step(i + 1, t.steps[i].rule, t.steps[i].closure);
    const auto sexpr = s.substr(s.find('('));
    CHECK(parse_closure(sexpr) == t.steps[i].closure);
  }
  CHECK(format_outcome(t.outcome, t.fuel_used) == "OUTCOME Normal ValueVsCoConst FUEL_USED 4");
}

TEST_CASE("rule names") {
  for (Rule r : kAllRules) CHECK(parse_rule(to_string(r)) == r);
  CHECK(parse_rule("Lookupx") == std::nullopt);
}

TEST_CASE("on_step sees every state") {
  std::vector<Rule> seen;
  RunOptions opts;
  opts.record = false;
  opts.on_step = [&](std::uint64_t n, Rule r, const Closure&) {
    CHECK(n == seen.size() + 1);
    seen.push_back(r);
  };
  const Trace t = run(P(kIdentity), 10, opts);
  CHECK(t.steps.empty());
  CHECK(seen.size() == 4);
}
