#include "lvt/sexpr.hpp"

#include <cctype>

namespace lvt {

namespace {

std::string located(SourceLocation where, const std::string& message) {
  return std::to_string(where.line) + ":" + std::to_string(where.column) + ": " + message;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  SExpr read() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    SExpr out;
    out.where = here_;
    const char c = text_[pos_];
    if (c == ')') fail("unexpected ')'");
    if (c == '(') {
      out.is_list = true;
      advance();
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) {
          throw ParseError(ParseError::Kind::Syntax, out.where, located(out.where, "unclosed '('"));
        }
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        out.items.push_back(read());
      }
      return out;
    }
    while (pos_ < text_.size() && !is_delim(text_[pos_])) {
      out.atom.push_back(text_[pos_]);
      advance();
    }
    return out;
  }

 private:
  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c));
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++here_.line;
      here_.column = 1;
    } else {
      ++here_.column;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(ParseError::Kind::Syntax, here_, located(here_, message));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  SourceLocation here_;
};

}  // namespace

ParseError::ParseError(Kind kind, SourceLocation where, const std::string& message)
    : std::runtime_error(message), kind_(kind), where_(where) {}

bool SExpr::is_form(std::string_view h) const { return is_list && head() == h; }

std::string_view SExpr::head() const {
  if (!is_list || items.empty() || !items.front().is_atom()) return {};
  return items.front().atom;
}

SExpr read_sexpr(std::string_view text) {
  Reader reader(text);
  SExpr out = reader.read();
  if (!reader.at_end()) {
    // Re-read to locate the trailing form for the message.
    SExpr extra = reader.read();
    throw ParseError(ParseError::Kind::Syntax, extra.where,
                     located(extra.where, "trailing input after expression"));
  }
  return out;
}

std::vector<SExpr> read_all_sexprs(std::string_view text) {
  Reader reader(text);
  std::vector<SExpr> out;
  while (!reader.at_end()) out.push_back(reader.read());
  return out;
}

void syntax_error(const SExpr& at, const std::string& message) {
  throw ParseError(ParseError::Kind::Syntax, at.where, located(at.where, message));
}

void category_error(const SExpr& at, const std::string& message) {
  throw ParseError(ParseError::Kind::Category, at.where, located(at.where, message));
}

bool is_valid_name(std::string_view text) {
  std::size_t i = 0;
  if (text.empty() || !std::isalpha(static_cast<unsigned char>(text[0]))) return false;
  ++i;
  while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
  if (i == text.size()) return true;
  if (text[i] != '#') return false;
  ++i;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  return true;
}

}  // namespace lvt
