#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "lvt/format.hpp"
#include "lvt/sndorder.hpp"

using namespace lvt;
using namespace lvt::so;
using namespace lvt::so::f;

namespace {
std::string data(const std::string& name) {
  std::ifstream in(std::string(LVT_TEST_DATA) + "/" + name);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Signature kq() { return parse_signature("(sig (const k X) (coconst q X))"); }

DerivationError::Kind rejection(const Derivation& d) {
  try {
    check_derivation(d, kq());
  } catch (const DerivationError& e) {
    return e.kind();
  }
  FAIL("derivation was accepted");
  return DerivationError::Kind::RuleMismatch;
}

Formula F(std::string_view text) { return parse_formula(read_sexpr(text)); }
}  // namespace

TEST_CASE("first-order substitution") {
  CHECK(subst_fo(pred("X", {var("x")}), lit(3), "x") == pred("X", {lit(3)}));
  const Formula shadowed = all_fo("x", pred("X", {var("x")}));
  CHECK(subst_fo(shadowed, lit(3), "x") == shadowed);
  // capture: ∀y.X(x,y) [y/x] renames the bound y
  const Formula a = all_fo("y", pred("X", {var("x"), var("y")}));
  const Formula r = subst_fo(a, var("y"), "x");
  CHECK(fv_formula(r).fovars == std::set<Name>{"y"});
  CHECK(alpha_equal(r, all_fo("z", pred("X", {var("y"), var("z")}))));
  CHECK(subst_fo(a, var("x"), "x") == a);
}

TEST_CASE("second-order substitution") {
  const Formula a = implies(pred("X", {var("y")}), pred("X", {var("y")}));
  const SOWitness b{{"u"}, pred("Y", {var("u")})};
  CHECK(subst_so(a, b, "X") == implies(pred("Y", {var("y")}), pred("Y", {var("y")})));
  CHECK_THROWS_AS(subst_so(pred("X"), b, "X"), ArityMismatch);
  // the witness's free variables are not captured
  const SOWitness c{{}, pred("P", {var("z")})};
  const Formula under = all_fo("z", pred("X"));
  CHECK(fv_formula(subst_so(under, c, "X")).fovars == std::set<Name>{"z"});
  // bound X is left alone
  const Formula bound = all_so("X", 1, pred("X", {var("y")}));
  CHECK(subst_so(bound, b, "X") == bound);
}

TEST_CASE("free symbols") {
  FreeSymbols a = fv_formula(all_fo("x", pred("X", {var("x")})));
  CHECK(a.fovars.empty());
  CHECK(a.preds == std::set<Name>{"X"});
  FreeSymbols b = fv_formula(implies(pred("X", {var("x")}), pred("Y")));
  CHECK(b.fovars == std::set<Name>{"x"});
  CHECK(b.preds == std::set<Name>{"X", "Y"});
  FreeSymbols c = fv_context({FEntry{Sort::Var, "y", pred("X", {var("x")})}});
  CHECK(c.fovars == std::set<Name>{"x"});
  CHECK(c.preds == std::set<Name>{"X"});
  CHECK(fv_formula(all_so("X", 0, pred("X"))).preds.empty());
}

TEST_CASE("formula text") {
  const char* t = "(allso X 1 (allfo x (-> (pred X (fun s (fovar x))) (pred X (lit 0)))))";
  CHECK(to_sexpr(F(t)) == t);
  CHECK(to_string(all_so("X", 0, implies(pred("X"), pred("X")))) == "∀X.(X → X)");
  CHECK_THROWS_AS(F("(allso X two (pred X))"), ParseError);
}

TEST_CASE("arities") {
  const Formula mixed = implies(pred("X"), pred("X", {lit(1)}));
  CHECK_THROWS_AS(check_arities({&mixed}), ArityMismatch);
  const Formula ok = implies(pred("X", {lit(1)}), pred("X", {lit(2)}));
  CHECK_NOTHROW(check_arities({&ok}));
  const Formula bad = all_so("X", 2, pred("X", {lit(1)}));
  CHECK_THROWS_AS(check_arities({&bad}), ArityMismatch);
}

TEST_CASE("identity at forall X") {
  const Derivation d = parse_derivation(data("identity.deriv"));
  CHECK(size(d) == 4);
  CHECK_NOTHROW(check_derivation(d, kq()));
  CHECK(parse_derivation(to_sexpr(d)).rule == DRule::all2r);
  CHECK_NOTHROW(check_derivation(parse_derivation(to_sexpr(d)), kq()));
}

TEST_CASE("value restriction") {
  CHECK(rejection(parse_derivation(data("identity_at_t.deriv"))) == DerivationError::Kind::ValueRestrictionViolated);
}

TEST_CASE("eigenvariable condition") {
  CHECK(rejection(parse_derivation(data("all1r_free.deriv"))) == DerivationError::Kind::SideConditionViolated);
}

TEST_CASE("left rules live at level e") {
  CHECK_NOTHROW(check_derivation(parse_derivation(data("all1l.deriv")), kq()));
  CHECK(rejection(parse_derivation(data("all1l_at_E.deriv"))) == DerivationError::Kind::LevelViolation);
}

TEST_CASE("second-order instantiation") {
  const char* good =
      "(deriv all2l (concl e (ctx) (coconst q) (allso Z 0 (pred Z))) (witness (holes) (pred X))"
      "  (deriv upe (concl e (ctx) (coconst q) (pred X)) (deriv upE (concl E (ctx) (coconst q) (pred X))"
      "    (deriv kappa (concl F (ctx) (coconst q) (pred X))))))";
  CHECK_NOTHROW(check_derivation(parse_derivation(good), kq()));
  std::string wrong_arity = good;
  wrong_arity.replace(wrong_arity.find("(holes)"), 7, "(holes u)");
  CHECK(rejection(parse_derivation(wrong_arity)) == DerivationError::Kind::ArityMismatch);
  std::string wrong_witness = good;
  wrong_witness.replace(wrong_witness.find("(holes) (pred X)"), 16, "(holes) (pred W)");
  CHECK(rejection(parse_derivation(wrong_witness)) == DerivationError::Kind::RuleMismatch);
}

TEST_CASE("first-order witnesses are ground") {
  std::string d = data("all1l.deriv");
  d.replace(d.find("(lit 3)"), 7, "(fovar y)");
  CHECK(rejection(parse_derivation(d)) == DerivationError::Kind::RuleMismatch);
}

TEST_CASE("acceptance is invariant under renaming the bound type variable") {
  std::string d = data("identity.deriv");
  // rename the bound X to Z throughout the ∀ node's formula only
  d.replace(d.find("(allso X 0 (-> (pred X) (pred X)))"), 34, "(allso Z 0 (-> (pred Z) (pred Z)))");
  CHECK_NOTHROW(check_derivation(parse_derivation(d), kq()));
}

TEST_CASE("renaming the type variable through the whole tree") {
  std::string d = data("identity.deriv");
  for (std::size_t at; (at = d.find(" X 0 ")) != std::string::npos;) d.replace(at, 5, " Z 0 ");
  for (std::size_t at; (at = d.find("(pred X)")) != std::string::npos;) d.replace(at, 8, "(pred Z)");
  CHECK_NOTHROW(check_derivation(parse_derivation(d), kq()));
}

TEST_CASE("the side condition applies to the eigenvariable, not the printed binder") {
  const char* d =
      "(deriv all2r (concl v (ctx (var y (pred X))) (lam x X (var x)) (allso Z 0 (-> (pred Z) (pred Z))))"
      "  (deriv ->r (concl v (ctx (var y (pred X))) (lam x X (var x)) (-> (pred X) (pred X)))"
      "    (deriv upt (concl t (ctx (var y (pred X)) (var x (pred X))) (var x) (pred X))"
      "      (deriv x (concl V (ctx (var y (pred X)) (var x (pred X))) (var x) (pred X))))))";
  CHECK(rejection(parse_derivation(d)) == DerivationError::Kind::SideConditionViolated);
}

TEST_CASE("a wrong premise is a rule mismatch") {
  std::string d = data("identity.deriv");
  d.replace(d.find("(deriv x (concl V (ctx (var x (pred X))) (var x) (pred X))"), 58,
            "(deriv x (concl V (ctx (var x (pred X))) (var x) (pred Y))");
  try {
    check_derivation(parse_derivation(d), kq());
    FAIL("accepted");
  } catch (const DerivationError& e) {
    CHECK(e.kind() == DerivationError::Kind::RuleMismatch);
    CHECK(!e.path().empty());
  }
}

TEST_CASE("elaboration of simple typings") {
  const Signature sig = parse_signature("(sig (const k X) (coconst q X) (coconst h (-> X X)))");
  const char* closures[] = {
      "(closure (cmd (lam x X (var x)) (app (const k) (coconst q))) (store))",
      "(closure (cmd (var y) (tmub z (-> X X) (coconst h) (store (bind w (var z))))) (store (bind x (const k)) "
      "(bind y (lam u X (var x)))))",
      "(closure (cmd (mu a X (cmd (const k) (covar a))) (tmu v X (cmd (var v) (covar b)))) (store (cobind b (coconst q))))",
  };
  for (const char* t : closures) {
    const Derivation d = elaborate_closure(sig, parse_closure(t));
    CHECK(d.rule == DRule::l);
    CHECK_NOTHROW(check_derivation(d, sig));
    CHECK_NOTHROW(check_derivation(parse_derivation(to_sexpr(d)), sig));
  }
  CHECK_THROWS_AS(elaborate_closure(sig, parse_closure("(closure (cmd (var x) (coconst q)) (store))")), TypeError);
}

TEST_CASE("rule names") {
  for (const char* r : {"k", "->r", "x", "upV", "kappa", "->l", "alpha", "upE", "upt", "mu", "upe", "tmu",
                        "tmub", "cut", "l", "eps", "taut", "tauE", "all1r", "all2r", "all1l", "all2l"}) {
    const auto d = parse_drule(r);
    REQUIRE(d);
    CHECK(to_string(*d) == r);
  }
}
