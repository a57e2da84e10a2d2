#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lvt/format.hpp"
#include "lvt/typing.hpp"

using namespace lvt;
using namespace lvt::ast;

namespace {
const Type X = Type::atom("X");
const Type Y = Type::atom("Y");
Type arr(Type a, Type b) { return Type::arrow(std::move(a), std::move(b)); }

Checker checker(std::string_view sig = "(sig (const k X) (coconst q X))") { return Checker(parse_signature(sig)); }
Closure P(std::string_view s) { return parse_closure(s); }
const TypingContext empty;
}  // namespace

TEST_CASE("strong values") {
  const Checker c = checker();
  CHECK(c.infer_v(empty, lam("x", X, var("x"))) == arr(X, X));
  CHECK(c.infer_v(empty, Const{"k"}) == X);
  CHECK_THROWS_AS(c.infer_v(empty, Const{"nope"}), TypeError);
}

TEST_CASE("forcing contexts") {
  const Checker c = checker();
  CHECK(c.infer_F(empty, app(konst("k"), coconst("q"))) == arr(X, X));
  CHECK(c.infer_F(empty, coconst("q")) == X);
}

TEST_CASE("mu") {
  const Checker c = checker();
  CHECK(c.infer_t(empty, mu("a", X, cmd(konst("k"), covar("a")))) == X);
  CHECK_THROWS_AS(c.infer_t(empty, mu("a", arr(X, X), cmd(konst("k"), covar("a")))), TypeError);
}

TEST_CASE("commands") {
  CHECK_NOTHROW(checker().check_command(empty, cmd(konst("k"), coconst("q"))));
  try {
    checker("(sig (const k X) (coconst q Y))").check_command(empty, cmd(konst("k"), coconst("q")));
    FAIL("expected a type error");
  } catch (const TypeError& e) {
    CHECK(e.level() == Level::c);
    REQUIRE(e.expected());
    REQUIRE(e.actual());
    CHECK(*e.expected() == X);
    CHECK(*e.actual() == Y);
  }
  CHECK_NOTHROW(checker().check_command(empty, cmd(lam("x", X, var("x")), app(konst("k"), coconst("q")))));
}

TEST_CASE("stores") {
  const Checker c = checker();
  CHECK(c.check_store(empty, store()).empty());
  CHECK(c.check_store(empty, store({bind("x", konst("k"))})) == TypingContext({{Sort::Var, "x", X}}));
  try {
    c.check_store(empty, store({bind("y", var("x"))}));
    FAIL("expected a type error");
  } catch (const TypeError& e) {
    CHECK(e.missing() == Name("x"));
  }
  const TypingContext g = c.check_store(empty, store({bind("x", konst("k")), cobind("a", coconst("q")),
                                                      bind("f", lam("u", X, var("x")))}));
  CHECK(to_string(g) == "x : X, a : X^, f : X -> X");
}

TEST_CASE("closures") {
  const Checker c = checker();
  CHECK_NOTHROW(c.check_closure(P("(closure (cmd (var x) (coconst q)) (store (bind x (const k))))")));
  CHECK_NOTHROW(c.check_closure(P("(closure (cmd (const k) (coconst q)) (store (bind x#0 (const k))))")));
  CHECK_THROWS_AS(c.check_closure(P("(closure (cmd (var x) (coconst q)) (store))")), TypeError);
  CHECK(c.cut_type(P("(closure (cmd (lam x X (var x)) (app (const k) (coconst q))) (store))")) == arr(X, X));
  CHECK(well_typed(c.signature(), P("(closure (cmd (const k) (coconst q)) (store))")));
}

TEST_CASE("the tmub frame") {
  const Checker c = checker();
  // µ̃[x].⟨x‖q⟩[y:=x] at X
  const CatchableContext ok = tmub("x", X, coconst("q"), store({bind("y", var("x"))}));
  CHECK(c.infer_E(empty, ok) == X);
  // F sees the suffix
  const Checker h = checker("(sig (const k X) (coconst q X) (coconst h (-> X X)))");
  const CatchableContext f = tmub("x", arr(X, X), app(konst("k"), covar("b")), store({cobind("b", coconst("q"))}));
  CHECK(h.infer_E(empty, f) == arr(X, X));
  // the suffix is checked under Γ, x:A only
  CHECK_THROWS_AS(h.infer_E(empty, tmub("x", X, coconst("q"), store({bind("y", var("z"))}))), TypeError);
  // the annotation must agree with F
  CHECK_THROWS_AS(h.infer_E(empty, tmub("x", X, coconst("h"))), TypeError);
}

TEST_CASE("applied constants are rejected") {
  CHECK_THROWS_AS(checker().check_closure(P("(closure (cmd (const k) (app (const k) (coconst q))) (store))")),
                  TypeError);
}

TEST_CASE("duplicate names") {
  CHECK_THROWS_AS(TypingContext({{Sort::Var, "x", X}, {Sort::Var, "x", Y}}), DuplicateName);
  CHECK_NOTHROW(TypingContext({{Sort::Var, "x", X}, {Sort::CoVar, "x", Y}}));
  const Checker c = checker();
  CHECK_THROWS_AS(c.check_store(empty, store({bind("x", konst("k")), bind("x", konst("k"))})), TypeError);
  CHECK_THROWS_AS(c.infer_v(TypingContext({{Sort::Var, "x", X}}), lam("x", X, var("x"))), TypeError);
}

TEST_CASE("check_with_context lifts") {
  const Checker c = checker();
  const AnyNode v = StrongValue(Const{"k"});
  for (Level l : {Level::v, Level::V, Level::t}) {
    const Judgment j = c.check_with_context(empty, v, l);
    REQUIRE(std::holds_alternative<Type>(j));
    CHECK(std::get<Type>(j) == X);
  }
  CHECK_THROWS_AS(c.check_with_context(empty, AnyNode(Term(var("x"))), Level::v), TypeError);
  const AnyNode f = ForcingContext(coconst("q"));
  CHECK(std::get<Type>(c.check_with_context(empty, f, Level::e)) == X);
  CHECK(std::holds_alternative<std::monostate>(
      c.check_with_context(empty, AnyNode(cmd(konst("k"), coconst("q"))), Level::c)));
  const Judgment s = c.check_with_context(empty, AnyNode(store({bind("x", konst("k"))})), Level::tau);
  CHECK(std::get<TypingContext>(s).size() == 1);
  CHECK(std::holds_alternative<std::monostate>(
      c.check_with_context(empty, AnyNode(P("(closure (cmd (const k) (coconst q)) (store))")), Level::l)));
}

TEST_CASE("signatures") {
  const Signature s = parse_signature("(sig (const k X) (const j Y) (coconst q X) (coconst h (-> X Y)))");
  CHECK(s.consts.at("j") == "Y");
  CHECK(s.coconsts.at("h") == arr(X, Y));
  CHECK(parse_signature(to_sexpr(s)).coconsts == s.coconsts);
  CHECK_THROWS_AS(parse_signature("(sig (const k (-> X X)))"), ParseError);
  CHECK_THROWS_AS(parse_signature("(sig (const k X) (const k Y))"), ParseError);
  CHECK_THROWS_AS(parse_signature("(sig (coconst q X) (const k X))"), ParseError);
}

TEST_CASE("levels") {
  for (const char* t : {"v", "V", "t", "F", "E", "e", "c", "tau", "l"}) {
    const auto l = parse_level(t);
    REQUIRE(l);
    CHECK(to_string(*l) == t);
  }
  CHECK_FALSE(parse_level("x"));
}
