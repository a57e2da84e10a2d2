#pragma once

// Textual S-expression form of the calculus:
//
//   closure := (closure cmd store)
//   cmd     := (cmd term ectx)
//   term    := (var NAME) | (const NAME) | (lam NAME type term) | (mu NAME type cmd)
//   ectx    := fctx | (covar NAME) | (tmub NAME type fctx store) | (tmu NAME type cmd)
//   fctx    := (coconst NAME) | (app term ectx)      ; ectx must be catchable here
//   store   := (store binding*)
//   binding := (bind NAME term) | (cobind NAME ectx) ; ectx must be catchable here
//   type    := NAME | (-> type type)

#include <string>
#include <string_view>

#include "lvt/sexpr.hpp"
#include "lvt/syntax.hpp"

namespace lvt {

Closure parse_closure(std::string_view text);

Type parse_type(const SExpr& s);
Term parse_term(const SExpr& s);
StrongValue parse_strong_value(const SExpr& s);
WeakValue parse_weak_value(const SExpr& s);
ForcingContext parse_forcing(const SExpr& s);
CatchableContext parse_catchable(const SExpr& s);
EvalContext parse_eval_context(const SExpr& s);
Command parse_command(const SExpr& s);
Store parse_store(const SExpr& s);
Closure parse_closure(const SExpr& s);
/// Validated NAME atom.
Name parse_name(const SExpr& s);

std::string to_sexpr(const Type& a);
std::string to_sexpr(const StrongValue& v);
std::string to_sexpr(const WeakValue& v);
std::string to_sexpr(const Term& t);
std::string to_sexpr(const ForcingContext& f);
std::string to_sexpr(const CatchableContext& e);
std::string to_sexpr(const EvalContext& e);
std::string to_sexpr(const Command& c);
std::string to_sexpr(const Store& s);
std::string to_sexpr(const Closure& l);

inline std::string print_closure(const Closure& l) { return to_sexpr(l); }

}  // namespace lvt
