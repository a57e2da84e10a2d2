#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lvt/format.hpp"
#include "lvt/harness.hpp"
#include "lvt/machine.hpp"
#include "lvt/store.hpp"

using namespace lvt;

namespace {
const Type X = Type::atom("X");
const Type Y = Type::atom("Y");
Closure P(std::string_view s) { return parse_closure(s); }
Signature kq() { return parse_signature("(sig (const k X) (coconst q X))"); }

GenConfig config(std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.signature = default_signature();
  return cfg;
}

const char* kIdentity = "(closure (cmd (lam x X (var x)) (app (const k) (coconst q))) (store))";
}  // namespace

TEST_CASE("smallest generated closures") {
  GenConfig cfg = config(1);
  cfg.max_depth = 1;
  cfg.control_rate = 0;
  cfg.store_prefill = 0;
  for (std::uint64_t s = 1; s <= 50; ++s) {
    cfg.seed = s;
    const Closure l = gen_typed_closure(cfg);
    CHECK(well_typed(cfg.signature, l));
    const ControlCount n = count_control(l);
    CHECK(n.mu + n.tmu + n.bracket == 0);
  }
}

TEST_CASE("generated closures type check") {
  GenConfig cfg = config(7);
  cfg.bracket_rate = 0.2;
  for (const Closure& l : gen_typed_corpus(cfg, 300)) {
    CHECK(is_closed(l));
    CHECK(well_typed(cfg.signature, l));
  }
}

TEST_CASE("control_rate 1 gives control operators") {
  GenConfig cfg = config(100);
  cfg.control_rate = 1.0;
  int hits = 0;
  for (const Closure& l : gen_typed_corpus(cfg, 100)) {
    const ControlCount n = count_control(l);
    if (n.mu + n.tmu > 0) ++hits;
  }
  CHECK(hits >= 95);
}

TEST_CASE("generation is deterministic") {
  auto bytes = [](std::uint64_t seed) {
    std::string out;
    for (const Closure& l : gen_typed_corpus(config(seed), 50)) out += print_closure(l) + "\n";
    return out;
  };
  CHECK(bytes(42) == bytes(42));
  CHECK(bytes(42) != bytes(43));
  CHECK(print_closure(gen_untyped_closure(9, 4)) == print_closure(gen_untyped_closure(9, 4)));
}

TEST_CASE("generation needs an inhabited atom") {
  GenConfig cfg;
  cfg.signature = parse_signature("(sig (const k X) (coconst r Y))");
  CHECK_THROWS_AS(gen_typed_closure(cfg), GenerationFailed);
}

TEST_CASE("untyped closures are closed") {
  for (std::uint64_t s = 0; s < 200; ++s) CHECK(is_closed(gen_untyped_closure(s, 4)));
}

TEST_CASE("left-hand sides") {
  const Closure id = P(kIdentity);
  for (Rule r : kAllRules) CHECK(lhs_matches(r, id) == (r == Rule::Beta));
  CHECK(lhs_matches(Rule::LookupX, P("(closure (cmd (var x) (coconst q)) (store (bind x (const k))))")));
  CHECK_FALSE(lhs_matches(Rule::LookupX, P("(closure (cmd (var x) (covar a)) (store (bind x (const k)) (cobind a (coconst q))))")));
  CHECK(lhs_matches(Rule::LookupAlpha, P("(closure (cmd (var x) (covar a)) (store (bind x (const k)) (cobind a (coconst q))))")));
}

TEST_CASE("determinism on generated closures") {
  std::vector<Closure> corpus = gen_typed_corpus(config(5), 200);
  for (std::uint64_t s = 0; s < 200; ++s) corpus.push_back(gen_untyped_closure(s, 4));
  const Report r = determinism_check(corpus);
  CHECK(r.cases == 400);
  CHECK(r.ok());
}

TEST_CASE("subject reduction along the identity trace") {
  const Report r = subject_reduction_check(kq(), P(kIdentity), 100);
  CHECK(r.ok());
  CHECK(r.cases == 4);
  CHECK(r.pass == 4);
  CHECK(r.histogram.at("Beta") == 1);
  CHECK(r.histogram.at("Let") == 1);
  CHECK(r.histogram.at("LookupX") == 1);
  CHECK(r.histogram.at("Restore") == 1);
}

TEST_CASE("subject reduction on a normal closure is vacuous") {
  const Report r = subject_reduction_check(kq(), P("(closure (cmd (const k) (coconst q)) (store))"), 100);
  CHECK(r.ok());
  CHECK(r.cases == 0);
}

TEST_CASE("a corrupted store fails the precondition") {
  const Closure bad = P("(closure (cmd (var x) (coconst q)) (store (bind x (lam y X (var y)))))");
  const Report r = subject_reduction_check(kq(), bad, 100);
  CHECK_FALSE(r.ok());
  CHECK(r.precondition_failed == 1);
  REQUIRE_FALSE(r.notes.empty());
  CHECK(r.notes[0].find("precondition violated") != std::string::npos);
  CHECK(render({r}).find("RESULT fail") != std::string::npos);
}

TEST_CASE("normalization") {
  const Report id = normalization_check(kq(), P(kIdentity), 100);
  CHECK(id.ok());
  CHECK(id.steps == 4);
  const Report c = normalization_check(kq(), P("(closure (cmd (mu a X (cmd (const k) (covar a))) (coconst q)) (store))"), 100);
  CHECK(c.ok());
  CHECK(c.steps == 2);
  const Closure loop = P(
      "(closure (cmd (lam x X (mu a X (cmd (var x) (app (var x) (covar a)))))"
      " (app (lam x X (mu a X (cmd (var x) (app (var x) (covar a))))) (coconst q))) (store))");
  const Report l = normalization_check(kq(), loop, 1000);
  CHECK_FALSE(l.ok());
  CHECK(l.precondition_failed == 1);
}

TEST_CASE("report text") {
  Report r;
  r.name = "demo";
  r.record(true);
  r.record(false, "(closure (cmd (const k) (coconst q)) (store))");
  r.histogram["Beta"] = 3;
  const std::string t = render({r});
  CHECK(t.rfind("SUITE demo CASES 2 PASS 1 FAIL 1\n", 0) == 0);
  CHECK(t.find("RULE Beta 3\n") != std::string::npos);
  CHECK(t.find("FAILED (closure (cmd (const k) (coconst q)) (store))") != std::string::npos);
  CHECK(t.substr(t.size() - 12) == "RESULT fail\n");
  Report ok;
  ok.name = "fine";
  ok.record(true);
  CHECK(render({ok}).find("RESULT ok") != std::string::npos);
}

TEST_CASE("fuzz suite") {
  GenConfig cfg = config(42);
  cfg.bracket_rate = 0.1;
  const std::vector<Report> rs = fuzz_suite(cfg, 100, 1000000);
  REQUIRE(rs.size() == 4);
  for (const Report& r : rs) CHECK_MESSAGE(r.ok(), r.to_text());
  CHECK(rs[0].cases == 100);
}

TEST_CASE("store examples") {
  const Store t = parse_store(read_sexpr("(store (bind x (const k)) (cobind a (coconst q)) (bind y (var x)))"));
  CHECK(store_union(t, t) == t);
  CHECK(extends(t, store_union(t, t)));
  CHECK(store_union(t, Store{}) == t);
}

TEST_CASE("store lemma suite") {
  const Report r = store_lemma_suite(200, 3);
  CHECK_MESSAGE(r.ok(), r.to_text());
  CHECK(r.cases == 200);
}

TEST_CASE("weakening examples") {
  const Checker c(kq());
  const AnyNode id = StrongValue(ast::lam("x", X, ast::var("x")));
  const Judgment base = c.check_with_context(TypingContext{}, id, Level::v);
  const Judgment weak = c.check_with_context(TypingContext({{Sort::Var, "y", Y}}), id, Level::v);
  CHECK(base == weak);
  CHECK(std::get<Type>(weak) == Type::arrow(X, X));
  CHECK_THROWS_AS(TypingContext({{Sort::Var, "y", Y}}).with_var("y", X), DuplicateName);
}

TEST_CASE("weakening suite") {
  const Report r = weakening_suite(200, 11);
  CHECK_MESSAGE(r.ok(), r.to_text());
  CHECK(r.cases == 200);
}

TEST_CASE("call-by-name examples") {
  using namespace lvt::pure;
  const Signature sig = parse_signature("(sig (const k X) (const k2 X) (coconst q X))");
  const PureTerm terms[] = {
      konst("k"),
      app(lam("x", X, var("x")), konst("k")),
      app(app(lam("x", X, lam("y", X, var("x"))), konst("k")), konst("k2")),
  };
  for (const PureTerm& t : terms) {
    CHECK(cbn_eval(t, 100) == Name("k"));
    const Report r = cbn_agreement_check(sig, t, 1000);
    CHECK_MESSAGE(r.ok(), r.to_text());
  }
  // call by name: the unused argument is never evaluated
  const PureTerm second = app(app(lam("x", X, lam("y", X, var("y"))), konst("k")), konst("k2"));
  CHECK(cbn_eval(second, 100) == Name("k2"));
  CHECK(cbn_agreement_check(sig, second, 1000).ok());
}

TEST_CASE("embedding") {
  using namespace lvt::pure;
  const Signature sig = kq();
  FreshSupply fresh(0);
  const Term t = embed_pure(sig, app(lam("x", X, var("x")), konst("k")), fresh);
  CHECK(to_sexpr(t) == "(mu a#0 X (cmd (lam x X (var x)) (app (const k) (covar a#0))))");
  CHECK_THROWS_AS(pure_type(sig, app(konst("k"), konst("k"))), IllTypedPureTerm);
}

TEST_CASE("call-by-name suite") {
  const Report r = cbn_suite(default_signature(), 100, 42, 100000);
  CHECK_MESSAGE(r.ok(), r.to_text());
}
