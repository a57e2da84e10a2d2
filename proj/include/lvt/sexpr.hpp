#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lvt {

struct SourceLocation {
  int line = 1;
  int column = 1;
};

/// Raised for malformed input. `category` distinguishes a well-formed
/// S-expression placed where its syntactic category is not allowed.
class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Category };

  ParseError(Kind kind, SourceLocation where, const std::string& message);

  Kind kind() const { return kind_; }
  SourceLocation where() const { return where_; }

 private:
  Kind kind_;
  SourceLocation where_;
};

/// Atom or parenthesised list, with the position of its first character.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  SourceLocation where;

  bool is_atom() const { return !is_list; }
  /// True for a list whose head atom equals `head`.
  bool is_form(std::string_view head) const;
  /// Head atom of a list form, or empty.
  std::string_view head() const;
};

/// Reads exactly one S-expression (surrounding whitespace allowed). Text
/// from ';' to end of line is a comment.
SExpr read_sexpr(std::string_view text);

/// Reads every top-level S-expression in order.
std::vector<SExpr> read_all_sexprs(std::string_view text);

[[noreturn]] void syntax_error(const SExpr& at, const std::string& message);
[[noreturn]] void category_error(const SExpr& at, const std::string& message);

/// NAME := [A-Za-z][A-Za-z0-9_]* optionally followed by #[0-9]+.
bool is_valid_name(std::string_view text);

}  // namespace lvt
