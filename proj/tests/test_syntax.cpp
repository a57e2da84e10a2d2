#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lvt/format.hpp"
#include "lvt/syntax.hpp"

using namespace lvt;
using namespace lvt::ast;

namespace {
const Type X = Type::atom("X");

Closure parse(std::string_view s) { return parse_closure(s); }
}  // namespace

TEST_CASE("parse constant against co-constant") {
  const Closure l = parse("(closure (cmd (const k) (coconst q)) (store))");
  CHECK(l == closure(cmd(konst("k"), coconst("q"))));
}

TEST_CASE("parse identity applied to k") {
  const Closure l = parse("(closure (cmd (lam x X (var x)) (app (const k) (coconst q))) (store))");
  CHECK(l == closure(cmd(lam("x", X, var("x")), app(konst("k"), coconst("q")))));
}

TEST_CASE("a bare command is not a closure") {
  try {
    parse("(cmd (var x) (tmu y X (cmd (var y) (coconst q))))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::Category);
  }
}

TEST_CASE("tmu is rejected where a catchable context is required") {
  CHECK_THROWS_AS(parse("(closure (cmd (const k) (app (const k) (tmu y X (cmd (var y) (coconst q))))) (store))"),
                  ParseError);
  CHECK_THROWS_AS(parse("(closure (cmd (const k) (coconst q)) (store (cobind a (tmu y X (cmd (var y) (coconst q))))))"),
                  ParseError);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse("(closure (cmd (const k)\n  (coconst q)) (store)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ParseError::Kind::Syntax);
    CHECK(e.where().line >= 1);
  }
  CHECK_THROWS_AS(parse("(closure (cmd (const 9k) (coconst q)) (store))"), ParseError);
  CHECK_THROWS_AS(parse("(closure (cmd (const k) (coconst q)) (store)) extra"), ParseError);
}

TEST_CASE("printing") {
  CHECK(print_closure(closure(cmd(konst("k"), coconst("q")))) == "(closure (cmd (const k) (coconst q)) (store))");
  const Closure b = closure(cmd(konst("k"), tmub("x", X, coconst("q"), store({bind("y", var("x"))}))));
  CHECK(print_closure(b).find("(tmub x X (coconst q) (store (bind y (var x))))") != std::string::npos);
}

TEST_CASE("round trip") {
  const char* texts[] = {
      "(closure (cmd (const k) (coconst q)) (store))",
      "(closure (cmd (lam x X (var x)) (app (const k) (coconst q))) (store))",
      "(closure (cmd (mu a (-> X X) (cmd (var f) (covar a))) (tmu z (-> X X) (cmd (var z) (app (var y) (covar b)))))"
      " (store (bind y (const k)) (bind f (lam u X (var u))) (cobind b (coconst q))))",
      "(closure (cmd (const k) (tmub x#3 X (app (var x#3) (coconst q)) (store (bind w (var x#3))))) (store))",
  };
  for (const char* t : texts) {
    const Closure l = parse(t);
    CHECK(print_closure(l) == t);
    CHECK(parse(print_closure(l)) == l);
  }
  // whitespace and comments are irrelevant
  CHECK(parse("  ( closure\n(cmd (const k) ; note\n (coconst q))\n(store) )") == parse(texts[0]));
}

TEST_CASE("free variables") {
  const Store s = store({bind("x", konst("k")), bind("y", var("x"))});
  CHECK(free_vars(s).empty());
  CHECK(free_vars(Term(lam("x", X, var("x")))).empty());

  const Term m = mu("a", X, cmd(var("y"), covar("a")));
  const FreeNames fv = free_vars(m);
  CHECK(fv.vars == std::set<Name>{"y"});
  CHECK(fv.covars.empty());

  // µ̃[x] binds x in F and in the suffix
  const CatchableContext b = tmub("x", X, app(var("x"), covar("c")), store({bind("w", var("x")), bind("v", var("z"))}));
  const FreeNames fb = free_vars(b);
  CHECK(fb.vars == std::set<Name>{"z"});
  CHECK(fb.covars == std::set<Name>{"c"});
}

TEST_CASE("store free variables follow the prefix") {
  const Store s = store({bind("y", var("x")), bind("x", konst("k"))});
  CHECK(free_vars(s).vars == std::set<Name>{"x"});
  // FV(ττ') ⊆ FV(τ) ∪ (FV(τ') \ dom τ)
  const Store t = store({bind("x", konst("k"))});
  const Store u = store({bind("z", var("x")), bind("w", var("p"))});
  Store tu = t;
  for (const auto& b : u.bindings) tu.bindings.push_back(b);
  CHECK(free_vars(tu).vars == std::set<Name>{"p"});
}

TEST_CASE("is_closed_in") {
  CHECK(is_closed_in(var("x"), store({bind("x", konst("k"))})));
  CHECK_FALSE(is_closed_in(var("x"), store()));
  CHECK_FALSE(is_closed_in(konst("k"), store({bind("y", var("x"))})));
  CHECK(is_closed(parse("(closure (cmd (var x) (coconst q)) (store (bind x (const k))))")));
  CHECK_FALSE(is_closed(parse("(closure (cmd (var x) (coconst q)) (store))")));
}

TEST_CASE("rename_binder") {
  FreshSupply seven(7);
  const Lam id = rename_binder(lam("x", X, var("x")), seven);
  CHECK(id == lam("x#7", X, var("x#7")));
  CHECK(seven.peek() == 8);

  FreshSupply three(3);
  const Mu m = rename_binder(mu("a", X, cmd(konst("k"), covar("a"))), three);
  CHECK(m == mu("a#3", X, cmd(konst("k"), covar("a#3"))));

  FreshSupply fs(0);
  const TmuBracket b = tmub("x", X, app(var("x"), coconst("q")), store({bind("y", var("x"))}));
  const TmuBracket r = rename_binder(b, fs);
  CHECK(r.binder == "x#0");
  CHECK(free_vars(CatchableContext(r)) == free_vars(CatchableContext(b)));
  CHECK(alpha_equal(CatchableContext(r), CatchableContext(b)));
  CHECK(to_sexpr(CatchableContext(r)) == "(tmub x#0 X (app (var x#0) (coconst q)) (store (bind y (var x#0))))");
}

TEST_CASE("rename_binder leaves shadowed occurrences alone") {
  FreshSupply fs(0);
  const Lam inner = lam("x", X, Term(lam("x", X, var("x"))));
  const Lam r = rename_binder(inner, fs);
  CHECK(r == lam("x#0", X, Term(lam("x", X, var("x")))));
}

TEST_CASE("fresh names") {
  CHECK(is_fresh_name("x#12"));
  CHECK_FALSE(is_fresh_name("x"));
  CHECK(base_name("x#12") == "x");
  FreshSupply fs(4);
  CHECK(fs.fresh("y") == "y#4");
  CHECK(fs.fresh("y#4") == "y#5");
  const Closure l = parse("(closure (cmd (var x#9) (coconst q)) (store (bind x#9 (const k))))");
  CHECK(max_fresh_index(l) == 9);
  CHECK(FreshSupply::above(l).peek() == 10);
}

TEST_CASE("alpha equivalence") {
  const Closure a = parse("(closure (cmd (lam x X (var x)) (coconst q)) (store))");
  const Closure b = parse("(closure (cmd (lam y X (var y)) (coconst q)) (store))");
  const Closure c = parse("(closure (cmd (lam y X (var z)) (coconst q)) (store))");
  CHECK(alpha_equal(a, b));
  CHECK_FALSE(alpha_equal(a, c));
  // store keys are binders for the command
  const Closure s1 = parse("(closure (cmd (var x) (coconst q)) (store (bind x (const k))))");
  const Closure s2 = parse("(closure (cmd (var x#1) (coconst q)) (store (bind x#1 (const k))))");
  CHECK(alpha_equal(s1, s2));
}

TEST_CASE("applied constants parse") {
  // untypable, but formable
  CHECK_NOTHROW(parse("(closure (cmd (const k) (app (const k) (coconst q))) (store))"));
}
