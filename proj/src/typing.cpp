#include "lvt/typing.hpp"

#include <unordered_map>

#include "lvt/format.hpp"

namespace lvt {

std::string_view to_string(Level level) {
  switch (level) {
    case Level::v: return "v";
    case Level::V: return "V";
    case Level::t: return "t";
    case Level::F: return "F";
    case Level::E: return "E";
    case Level::e: return "e";
    case Level::c: return "c";
    case Level::tau: return "tau";
    case Level::l: return "l";
  }
  return "?";
}

std::optional<Level> parse_level(std::string_view text) {
  for (Level l : {Level::v, Level::V, Level::t, Level::F, Level::E, Level::e, Level::c, Level::tau,
                  Level::l}) {
    if (to_string(l) == text) return l;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- contexts

DuplicateName::DuplicateName(Sort sort, const Name& name)
    : std::runtime_error(std::string(sort == Sort::Var ? "variable " : "co-variable ") + name +
                         " already occurs in the typing context") {}

TypingContext::TypingContext(std::vector<ContextEntry> entries) {
  for (auto& e : entries) {
    if (contains(e.sort, e.name)) throw DuplicateName(e.sort, e.name);
    entries_.push_back(std::move(e));
  }
}

TypingContext TypingContext::with(Sort sort, const Name& name, Type type) const {
  if (contains(sort, name)) throw DuplicateName(sort, name);
  TypingContext out = *this;
  out.entries_.push_back(ContextEntry{sort, name, std::move(type)});
  return out;
}

TypingContext TypingContext::concat(const TypingContext& rest) const {
  TypingContext out = *this;
  for (const auto& e : rest.entries_) out = out.with(e.sort, e.name, e.type);
  return out;
}

const Type* TypingContext::lookup(Sort sort, const Name& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->sort == sort && it->name == name) return &it->type;
  }
  return nullptr;
}

std::string to_string(const TypingContext& ctx) {
  if (ctx.empty()) return "ε";
  std::string out;
  for (const auto& e : ctx.entries()) {
    if (!out.empty()) out += ", ";
    out += e.name + " : ";
    if (e.sort == Sort::Var) {
      out += to_string(e.type);
    } else {
      out += e.type.is_atom() ? to_string(e.type) : "(" + to_string(e.type) + ")";
      out += "^";
    }
  }
  return out;
}

// ---------------------------------------------------------------- signature

void Signature::add_const(const Name& k, const Name& atom) {
  if (!consts.emplace(k, atom).second) throw std::invalid_argument("constant declared twice: " + k);
}

void Signature::add_coconst(const Name& kappa, Type type) {
  if (!coconsts.emplace(kappa, std::move(type)).second) {
    throw std::invalid_argument("co-constant declared twice: " + kappa);
  }
}

Signature parse_signature(std::string_view text) {
  const SExpr s = read_sexpr(text);
  if (!s.is_form("sig")) category_error(s, "expected (sig ...)");
  Signature sig;
  bool seen_coconst = false;
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    const SExpr& d = s.items[i];
    if (d.is_form("const")) {
      if (d.items.size() != 3) syntax_error(d, "(const NAME atomic-type) expected");
      if (seen_coconst) syntax_error(d, "constants must precede co-constants");
      if (!d.items[2].is_atom()) category_error(d.items[2], "constants must have an atomic type");
      try {
        sig.add_const(parse_name(d.items[1]), parse_name(d.items[2]));
      } catch (const std::invalid_argument& err) {
        syntax_error(d, err.what());
      }
    } else if (d.is_form("coconst")) {
      if (d.items.size() != 3) syntax_error(d, "(coconst NAME type) expected");
      seen_coconst = true;
      try {
        sig.add_coconst(parse_name(d.items[1]), parse_type(d.items[2]));
      } catch (const std::invalid_argument& err) {
        syntax_error(d, err.what());
      }
    } else {
      syntax_error(d, "expected (const ...) or (coconst ...)");
    }
  }
  return sig;
}

std::string to_sexpr(const Signature& sig) {
  std::string out = "(sig";
  for (const auto& [k, atom] : sig.consts) out += " (const " + k + " " + atom + ")";
  for (const auto& [kappa, type] : sig.coconsts) out += " (coconst " + kappa + " " + to_sexpr(type) + ")";
  return out + ")";
}

// ---------------------------------------------------------------- errors

namespace {

std::string compose(Level level, const std::string& location, const std::string& detail) {
  return "type error at level " + std::string(to_string(level)) + ": " + detail + " in " + location;
}

constexpr std::size_t kMaxLocation = 160;

template <class Node>
std::string locate(const Node& node) {
  std::string s = to_sexpr(node);
  if (s.size() > kMaxLocation) s = s.substr(0, kMaxLocation) + "...";
  return s;
}

}  // namespace

TypeError::TypeError(Level level, std::string location, std::string detail, std::optional<Type> expected,
                     std::optional<Type> actual, std::optional<Name> missing)
    : std::runtime_error(compose(level, location, detail)),
      level_(level),
      location_(std::move(location)),
      expected_(std::move(expected)),
      actual_(std::move(actual)),
      missing_(std::move(missing)) {}

// ---------------------------------------------------------------- checker

namespace {

// Mutable Γ with scoped push/pop; lookups are by hash.
class Scope {
 public:
  explicit Scope(const TypingContext& base) {
    for (const auto& e : base.entries()) push_unchecked(e.sort, e.name, e.type);
  }

  bool push(Sort sort, const Name& name, const Type& type) {
    if (index(sort).contains(name)) return false;
    push_unchecked(sort, name, type);
    return true;
  }

  void pop() {
    const auto& last = entries_.back();
    index(last.sort).erase(last.name);
    entries_.pop_back();
  }

  std::size_t mark() const { return entries_.size(); }
  void reset(std::size_t mark) {
    while (entries_.size() > mark) pop();
  }

  const Type* lookup(Sort sort, const Name& name) const {
    const auto& idx = sort == Sort::Var ? vars_ : covars_;
    const auto it = idx.find(name);
    return it == idx.end() ? nullptr : &entries_[it->second].type;
  }

  TypingContext slice(std::size_t from) const {
    std::vector<ContextEntry> out(entries_.begin() + static_cast<std::ptrdiff_t>(from), entries_.end());
    return TypingContext(std::move(out));
  }

 private:
  std::unordered_map<Name, std::size_t>& index(Sort sort) { return sort == Sort::Var ? vars_ : covars_; }

  void push_unchecked(Sort sort, const Name& name, const Type& type) {
    index(sort)[name] = entries_.size();
    entries_.push_back(ContextEntry{sort, name, type});
  }

  std::vector<ContextEntry> entries_;
  std::unordered_map<Name, std::size_t> vars_;
  std::unordered_map<Name, std::size_t> covars_;
};

class Walker {
 public:
  Walker(const Signature& sig, const TypingContext& ctx) : sig_(sig), scope_(ctx) {}

  Type v(const StrongValue& node) {
    if (const auto* k = std::get_if<Const>(&node.node)) {
      const auto it = sig_.consts.find(k->name);
      if (it == sig_.consts.end()) {
        throw TypeError(Level::v, locate(node), "constant " + k->name + " not in signature", std::nullopt,
                        std::nullopt, k->name);
      }
      return Type::atom(it->second);
    }
    const auto& lam = std::get<Lam>(node.node);
    bind(Level::v, node, Sort::Var, lam.binder, lam.annot);
    Type body = t(*lam.body);
    scope_.pop();
    return Type::arrow(lam.annot, std::move(body));
  }

  Type V(const WeakValue& node) {
    if (const auto* x = std::get_if<Var>(&node.node)) {
      if (const Type* a = scope_.lookup(Sort::Var, x->name)) return *a;
      throw TypeError(Level::V, locate(node), "unbound variable " + x->name, std::nullopt, std::nullopt,
                      x->name);
    }
    return v(std::get<StrongValue>(node.node));
  }

  Type t(const Term& node) {
    if (const auto* m = node.as_mu()) {
      bind(Level::t, node, Sort::CoVar, m->binder, m->annot);
      c(*m->body);
      scope_.pop();
      return m->annot;
    }
    return V(*node.as_weak());
  }

  Type F(const ForcingContext& node) {
    if (const auto* k = std::get_if<CoConst>(&node.node)) {
      const auto it = sig_.coconsts.find(k->name);
      if (it == sig_.coconsts.end()) {
        throw TypeError(Level::F, locate(node), "co-constant " + k->name + " not in signature", std::nullopt,
                        std::nullopt, k->name);
      }
      return it->second;
    }
    const auto& a = std::get<App>(node.node);
    Type dom = t(a.arg);
    Type cod = E(*a.rest);
    return Type::arrow(std::move(dom), std::move(cod));
  }

  Type E(const CatchableContext& node) {
    if (const auto* f = node.as_forcing()) return F(*f);
    if (const auto* a = node.as_covar()) {
      if (const Type* ty = scope_.lookup(Sort::CoVar, a->name)) return *ty;
      throw TypeError(Level::E, locate(node), "unbound co-variable " + a->name, std::nullopt, std::nullopt,
                      a->name);
    }
    // Γ, x:A ⊢τ τ′ : Γ′  and  Γ, x:A, Γ′ ⊢F F : A⊥⊥
    const auto& b = *node.as_bracket();
    const std::size_t mark = scope_.mark();
    bind(Level::E, node, Sort::Var, b.binder, b.annot);
    store(*b.suffix);
    Type forced = F(b.forcing);
    scope_.reset(mark);
    if (!(forced == b.annot)) {
      throw TypeError(Level::E, locate(node), "forcing context of bracket expects " + to_string(forced) +
                                                  " but binder has type " + to_string(b.annot),
                      b.annot, forced);
    }
    return b.annot;
  }

  Type e(const EvalContext& node) {
    if (const auto* m = node.as_tmu()) {
      bind(Level::e, node, Sort::Var, m->binder, m->annot);
      c(*m->body);
      scope_.pop();
      return m->annot;
    }
    return E(*node.as_catchable());
  }

  Type c(const Command& node) {
    Type a = t(node.term);
    Type b = e(node.context);
    if (!(a == b)) {
      throw TypeError(Level::c, locate(node),
                      "cut mismatch: term has type " + to_string(a) + ", context expects " + to_string(b), a,
                      b);
    }
    return a;
  }

  /// Pushes the store's entries onto the scope (they stay pushed).
  void store(const Store& s) {
    for (const auto& b : s.bindings) {
      Type a = b.term() ? t(*b.term()) : E(*b.context());
      if (!scope_.push(b.sort(), b.key, a)) {
        throw TypeError(Level::tau, locate(s), "store key " + b.key + " already bound in context");
      }
    }
  }

  Scope& scope() { return scope_; }

 private:
  template <class Node>
  void bind(Level level, const Node& node, Sort sort, const Name& name, const Type& type) {
    if (!scope_.push(sort, name, type)) {
      throw TypeError(level, locate(node), "binder " + name + " already occurs in the typing context");
    }
  }

  const Signature& sig_;
  Scope scope_;
};

}  // namespace

Type Checker::infer_v(const TypingContext& ctx, const StrongValue& v) const { return Walker(sig_, ctx).v(v); }
Type Checker::infer_V(const TypingContext& ctx, const WeakValue& v) const { return Walker(sig_, ctx).V(v); }
Type Checker::infer_t(const TypingContext& ctx, const Term& t) const { return Walker(sig_, ctx).t(t); }
Type Checker::infer_F(const TypingContext& ctx, const ForcingContext& f) const {
  return Walker(sig_, ctx).F(f);
}
Type Checker::infer_E(const TypingContext& ctx, const CatchableContext& e) const {
  return Walker(sig_, ctx).E(e);
}
Type Checker::infer_e(const TypingContext& ctx, const EvalContext& e) const { return Walker(sig_, ctx).e(e); }

void Checker::check_command(const TypingContext& ctx, const Command& c) const { Walker(sig_, ctx).c(c); }

TypingContext Checker::check_store(const TypingContext& ctx, const Store& s) const {
  Walker w(sig_, ctx);
  w.store(s);
  return w.scope().slice(ctx.size());
}

TypingContext Checker::check_closure(const TypingContext& ctx, const Closure& l) const {
  Walker w(sig_, ctx);
  w.store(l.store);
  w.c(l.command);
  return w.scope().slice(ctx.size());
}

Type Checker::cut_type(const Closure& l) const {
  Walker w(sig_, TypingContext{});
  w.store(l.store);
  return w.c(l.command);
}

namespace {

[[noreturn]] void above_level(Level level, std::string_view category) {
  throw TypeError(level, std::string(category),
                  std::string(category) + " node cannot be checked at level " + std::string(to_string(level)));
}

}  // namespace

Judgment Checker::check_with_context(const TypingContext& ctx, const AnyNode& node, Level level) const {
  Walker w(sig_, ctx);
  return std::visit(
      [&](const auto& n) -> Judgment {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, StrongValue>) {
          if (level == Level::v) return w.v(n);
          if (level == Level::V) return w.V(n);
          if (level == Level::t) return w.t(n);
          above_level(level, "strong value");
        } else if constexpr (std::is_same_v<N, WeakValue>) {
          if (level == Level::V) return w.V(n);
          if (level == Level::t) return w.t(n);
          above_level(level, "weak value");
        } else if constexpr (std::is_same_v<N, Term>) {
          if (level == Level::t) return w.t(n);
          above_level(level, "term");
        } else if constexpr (std::is_same_v<N, ForcingContext>) {
          if (level == Level::F) return w.F(n);
          if (level == Level::E) return w.E(n);
          if (level == Level::e) return w.e(n);
          above_level(level, "forcing context");
        } else if constexpr (std::is_same_v<N, CatchableContext>) {
          if (level == Level::E) return w.E(n);
          if (level == Level::e) return w.e(n);
          above_level(level, "catchable context");
        } else if constexpr (std::is_same_v<N, EvalContext>) {
          if (level == Level::e) return w.e(n);
          above_level(level, "evaluation context");
        } else if constexpr (std::is_same_v<N, Command>) {
          if (level == Level::c) {
            w.c(n);
            return std::monostate{};
          }
          above_level(level, "command");
        } else if constexpr (std::is_same_v<N, Store>) {
          if (level == Level::tau) {
            w.store(n);
            return w.scope().slice(ctx.size());
          }
          above_level(level, "store");
        } else {
          if (level == Level::l) {
            w.store(n.store);
            w.c(n.command);
            return std::monostate{};
          }
          above_level(level, "closure");
        }
      },
      node);
}

bool well_typed(const Signature& sig, const Closure& l) {
  try {
    Checker(sig).check_closure(l);
    return true;
  } catch (const TypeError&) {
    return false;
  }
}

}  // namespace lvt
