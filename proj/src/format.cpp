#include "lvt/format.hpp"

namespace lvt {

namespace {

void expect_arity(const SExpr& s, std::size_t n) {
  if (s.items.size() != n) {
    syntax_error(s, "'" + std::string(s.head()) + "' expects " + std::to_string(n - 1) +
                        " argument(s), got " + std::to_string(s.items.size() - 1));
  }
}

const SExpr& expect_list(const SExpr& s, std::string_view what) {
  if (!s.is_list || s.items.empty() || !s.items.front().is_atom()) {
    syntax_error(s, "expected " + std::string(what));
  }
  return s;
}

void append(std::string& out, const Type& a) {
  if (const auto* atom = a.as_atom()) {
    out += atom->name;
    return;
  }
  const auto& arrow = *a.as_arrow();
  out += "(-> ";
  append(out, *arrow.dom);
  out += ' ';
  append(out, *arrow.cod);
  out += ')';
}

void append(std::string& out, const Term& t);
void append(std::string& out, const CatchableContext& e);
void append(std::string& out, const Command& c);
void append(std::string& out, const Store& s);

void append(std::string& out, const StrongValue& v) {
  if (const auto* lam = std::get_if<Lam>(&v.node)) {
    out += "(lam " + lam->binder + ' ';
    append(out, lam->annot);
    out += ' ';
    append(out, *lam->body);
    out += ')';
  } else {
    out += "(const " + std::get<Const>(v.node).name + ')';
  }
}

void append(std::string& out, const WeakValue& v) {
  if (const auto* x = std::get_if<Var>(&v.node)) {
    out += "(var " + x->name + ')';
  } else {
    append(out, std::get<StrongValue>(v.node));
  }
}

void append(std::string& out, const Term& t) {
  if (const auto* m = t.as_mu()) {
    out += "(mu " + m->binder + ' ';
    append(out, m->annot);
    out += ' ';
    append(out, *m->body);
    out += ')';
  } else {
    append(out, *t.as_weak());
  }
}

void append(std::string& out, const ForcingContext& f) {
  if (const auto* a = std::get_if<App>(&f.node)) {
    out += "(app ";
    append(out, a->arg);
    out += ' ';
    append(out, *a->rest);
    out += ')';
  } else {
    out += "(coconst " + std::get<CoConst>(f.node).name + ')';
  }
}

void append(std::string& out, const CatchableContext& e) {
  if (const auto* f = e.as_forcing()) {
    append(out, *f);
  } else if (const auto* a = e.as_covar()) {
    out += "(covar " + a->name + ')';
  } else {
    const auto& b = *e.as_bracket();
    out += "(tmub " + b.binder + ' ';
    append(out, b.annot);
    out += ' ';
    append(out, b.forcing);
    out += ' ';
    append(out, *b.suffix);
    out += ')';
  }
}

void append(std::string& out, const EvalContext& e) {
  if (const auto* m = e.as_tmu()) {
    out += "(tmu " + m->binder + ' ';
    append(out, m->annot);
    out += ' ';
    append(out, *m->body);
    out += ')';
  } else {
    append(out, *e.as_catchable());
  }
}

void append(std::string& out, const Command& c) {
  out += "(cmd ";
  append(out, c.term);
  out += ' ';
  append(out, c.context);
  out += ')';
}

void append(std::string& out, const Store& s) {
  out += "(store";
  for (const auto& b : s.bindings) {
    if (const auto* t = b.term()) {
      out += " (bind " + b.key + ' ';
      append(out, *t);
    } else {
      out += " (cobind " + b.key + ' ';
      append(out, *b.context());
    }
    out += ')';
  }
  out += ')';
}

template <class T>
std::string render(const T& node) {
  std::string out;
  append(out, node);
  return out;
}

}  // namespace

Name parse_name(const SExpr& s) {
  if (!s.is_atom() || !is_valid_name(s.atom)) {
    syntax_error(s, "expected a name");
  }
  return s.atom;
}

Type parse_type(const SExpr& s) {
  if (s.is_atom()) return Type::atom(parse_name(s));
  if (!s.is_form("->")) syntax_error(s, "expected a type");
  expect_arity(s, 3);
  return Type::arrow(parse_type(s.items[1]), parse_type(s.items[2]));
}

Term parse_term(const SExpr& s) {
  expect_list(s, "a term");
  const auto head = s.head();
  if (head == "var") {
    expect_arity(s, 2);
    return Var{parse_name(s.items[1])};
  }
  if (head == "mu") {
    expect_arity(s, 4);
    return Mu{parse_name(s.items[1]), parse_type(s.items[2]), parse_command(s.items[3])};
  }
  if (head == "const" || head == "lam") return parse_strong_value(s);
  if (head == "coconst" || head == "app" || head == "covar" || head == "tmub" || head == "tmu") {
    category_error(s, "context '" + std::string(head) + "' used where a term is required");
  }
  syntax_error(s, "unknown term form '" + std::string(head) + "'");
}

StrongValue parse_strong_value(const SExpr& s) {
  expect_list(s, "a strong value");
  const auto head = s.head();
  if (head == "const") {
    expect_arity(s, 2);
    return Const{parse_name(s.items[1])};
  }
  if (head == "lam") {
    expect_arity(s, 4);
    return Lam{parse_name(s.items[1]), parse_type(s.items[2]), parse_term(s.items[3])};
  }
  if (head == "var" || head == "mu") {
    category_error(s, "'" + std::string(head) + "' is not a strong value");
  }
  syntax_error(s, "unknown strong value form '" + std::string(head) + "'");
}

WeakValue parse_weak_value(const SExpr& s) {
  expect_list(s, "a weak value");
  if (s.head() == "var") {
    expect_arity(s, 2);
    return Var{parse_name(s.items[1])};
  }
  if (s.head() == "mu") category_error(s, "'mu' is not a weak value");
  return parse_strong_value(s);
}

ForcingContext parse_forcing(const SExpr& s) {
  expect_list(s, "a forcing context");
  const auto head = s.head();
  if (head == "coconst") {
    expect_arity(s, 2);
    return CoConst{parse_name(s.items[1])};
  }
  if (head == "app") {
    expect_arity(s, 3);
    return App{parse_term(s.items[1]), parse_catchable(s.items[2])};
  }
  if (head == "covar" || head == "tmub" || head == "tmu") {
    category_error(s, "'" + std::string(head) + "' used where a forcing context is required");
  }
  if (head == "var" || head == "const" || head == "lam" || head == "mu") {
    category_error(s, "term used where a forcing context is required");
  }
  syntax_error(s, "unknown context form '" + std::string(head) + "'");
}

CatchableContext parse_catchable(const SExpr& s) {
  expect_list(s, "a catchable context");
  const auto head = s.head();
  if (head == "covar") {
    expect_arity(s, 2);
    return CoVar{parse_name(s.items[1])};
  }
  if (head == "tmub") {
    expect_arity(s, 5);
    return TmuBracket{parse_name(s.items[1]), parse_type(s.items[2]), parse_forcing(s.items[3]),
                      parse_store(s.items[4])};
  }
  if (head == "tmu") {
    category_error(s, "'tmu' used where a catchable context is required");
  }
  return parse_forcing(s);
}

EvalContext parse_eval_context(const SExpr& s) {
  expect_list(s, "an evaluation context");
  if (s.head() == "tmu") {
    expect_arity(s, 4);
    return Tmu{parse_name(s.items[1]), parse_type(s.items[2]), parse_command(s.items[3])};
  }
  return parse_catchable(s);
}

Command parse_command(const SExpr& s) {
  expect_list(s, "a command");
  if (s.head() != "cmd") {
    category_error(s, "expected (cmd ...), got '" + std::string(s.head()) + "'");
  }
  expect_arity(s, 3);
  return Command{parse_term(s.items[1]), parse_eval_context(s.items[2])};
}

Store parse_store(const SExpr& s) {
  expect_list(s, "a store");
  if (s.head() != "store") category_error(s, "expected (store ...), got '" + std::string(s.head()) + "'");
  Store out;
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    const auto& b = expect_list(s.items[i], "a binding");
    if (b.head() == "bind") {
      expect_arity(b, 3);
      out.bindings.push_back(Binding{parse_name(b.items[1]), parse_term(b.items[2])});
    } else if (b.head() == "cobind") {
      expect_arity(b, 3);
      out.bindings.push_back(Binding{parse_name(b.items[1]), parse_catchable(b.items[2])});
    } else {
      syntax_error(b, "expected (bind ...) or (cobind ...)");
    }
  }
  return out;
}

Closure parse_closure(const SExpr& s) {
  expect_list(s, "a closure");
  if (s.head() != "closure") {
    category_error(s, "top level must be (closure ...), got '" + std::string(s.head()) + "'");
  }
  expect_arity(s, 3);
  return Closure{parse_command(s.items[1]), parse_store(s.items[2])};
}

Closure parse_closure(std::string_view text) { return parse_closure(read_sexpr(text)); }

std::string to_sexpr(const Type& a) { return render(a); }
std::string to_sexpr(const StrongValue& v) { return render(v); }
std::string to_sexpr(const WeakValue& v) { return render(v); }
std::string to_sexpr(const Term& t) { return render(t); }
std::string to_sexpr(const ForcingContext& f) { return render(f); }
std::string to_sexpr(const CatchableContext& e) { return render(e); }
std::string to_sexpr(const EvalContext& e) { return render(e); }
std::string to_sexpr(const Command& c) { return render(c); }
std::string to_sexpr(const Store& s) { return render(s); }

std::string to_sexpr(const Closure& l) {
  std::string out = "(closure ";
  append(out, l.command);
  out += ' ';
  append(out, l.store);
  out += ')';
  return out;
}

}  // namespace lvt
