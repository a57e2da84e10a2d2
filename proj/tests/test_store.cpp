#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lvt/format.hpp"
#include "lvt/store.hpp"

using namespace lvt;
using namespace lvt::ast;

namespace {
Store S(std::string_view text) { return parse_store(read_sexpr(text)); }
Key var_key(Name x) { return Key{Sort::Var, std::move(x)}; }
}  // namespace

TEST_CASE("domain") {
  CHECK(domain(store()).empty());
  const std::set<Key> d = domain(S("(store (bind x (const k)) (cobind a (coconst q)))"));
  CHECK(d == std::set<Key>{Key{Sort::Var, "x"}, Key{Sort::CoVar, "a"}});
  CHECK_THROWS_AS(check_unique_keys(S("(store (bind x (const k)) (bind x (const k2)))")), DuplicateKey);
  // the two namespaces do not clash
  CHECK_NOTHROW(check_unique_keys(S("(store (bind x (const k)) (cobind x (coconst q)))")));
}

TEST_CASE("independence, compatibility, extension") {
  const Store xk = S("(store (bind x (const k)))");
  const Store yk2 = S("(store (bind y (const k2)))");
  const Store xk2 = S("(store (bind x (const k2)))");
  CHECK(independent(xk, yk2));
  CHECK(compatible(xk, yk2));
  CHECK_FALSE(independent(xk, xk));
  CHECK(compatible(xk, xk));
  CHECK_FALSE(compatible(xk, xk2));

  CHECK(extends(xk, S("(store (bind x (const k)) (bind y (const k2)))")));
  CHECK_FALSE(extends(S("(store (bind x (const k)) (bind y (const k2)))"), xk));
  CHECK_FALSE(extends(xk, xk2));
  CHECK(extends(store(), xk));
}

TEST_CASE("compatibility is up to alpha") {
  const Store a = S("(store (bind f (lam u X (var u))))");
  const Store b = S("(store (bind f (lam v#4 X (var v#4))))");
  CHECK(compatible(a, b));
}

TEST_CASE("union of independent stores is concatenation") {
  const Store u = store_union(S("(store (bind x (const k)))"), S("(store (bind y (const k2)))"));
  CHECK(u == S("(store (bind x (const k)) (bind y (const k2)))"));
}

TEST_CASE("union with the empty store") {
  const Store t = S("(store (bind x (const k)) (bind y (var x)))");
  CHECK(store_union(t, store()) == t);
  CHECK(store_union(store(), t) == t);
  CHECK(store_union(t, t) == t);
}

TEST_CASE("union with a shared key") {
  const Store a = S("(store (bind x (const k)) (bind y (const k2)))");
  const Store b = S("(store (bind x (const k)) (bind z (const j)))");
  const Store u = store_union(a, b);
  CHECK(u == S("(store (bind x (const k)) (bind y (const k2)) (bind z (const j)))"));
  CHECK(extends(a, u));
  CHECK(extends(b, u));
}

TEST_CASE("union places private prefixes before the shared key") {
  const Store a = S("(store (bind p (const k)) (bind x (var p)))");
  const Store b = S("(store (bind w (const j)) (bind p (const k)) (bind x (var p)) (bind z (var w)))");
  const Store u = store_union(a, b);
  CHECK(u == S("(store (bind w (const j)) (bind p (const k)) (bind x (var p)) (bind z (var w)))"));
  CHECK(free_vars(u).empty());
  CHECK(extends(a, u));
  CHECK(extends(b, u));
}

TEST_CASE("union errors") {
  CHECK_THROWS_AS(store_union(S("(store (bind x (const k)))"), S("(store (bind x (const k2)))")), IncompatibleStores);
  CHECK_THROWS_AS(store_union(S("(store (bind y (var x)))"), store()), OpenStore);
}

TEST_CASE("split_at") {
  const Store s = S("(store (bind x (const k)) (bind y (const k2)))");
  const SplitView v = split_at(s, var_key("y"));
  CHECK(v.prefix == S("(store (bind x (const k)))"));
  CHECK(v.binding == bind("y", konst("k2")));
  CHECK(v.suffix.empty());
  CHECK(v.reassemble() == s);

  const SplitView w = split_at(S("(store (bind x (const k)))"), var_key("x"));
  CHECK(w.prefix.empty());
  CHECK(w.suffix.empty());
  CHECK(*w.binding.term() == konst("k"));

  CHECK_THROWS_AS(split_at(store(), var_key("x")), KeyNotFound);
  CHECK_THROWS_AS(split_at(s, Key{Sort::CoVar, "x"}), KeyNotFound);
}

TEST_CASE("append and concat") {
  CHECK(append(store(), bind("x", konst("k"))) == S("(store (bind x (const k)))"));
  CHECK_THROWS_AS(append(S("(store (bind x (const k)))"), bind("x", konst("k2"))), DuplicateKey);
  CHECK(concat(S("(store (bind x (const k)))"), S("(store (bind y (var x)))")) ==
        S("(store (bind x (const k)) (bind y (var x)))"));
  CHECK_THROWS_AS(concat(S("(store (bind x (const k)))"), S("(store (bind x (var x)))")), DuplicateKey);
}

TEST_CASE("operations leave their inputs unchanged") {
  const Store s = S("(store (bind x (const k)))");
  const Store copy = s;
  (void)append(s, bind("y", konst("k")));
  (void)store_union(s, S("(store (bind z (const j)))"));
  CHECK(s == copy);
}

TEST_CASE("find_key") {
  const Store s = S("(store (bind x (const k)) (cobind a (coconst q)))");
  CHECK(find_key(s, Key{Sort::CoVar, "a"}) == 1);
  CHECK(find_key(s, Key{Sort::Var, "a"}) == std::string::npos);
}
