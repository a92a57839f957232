#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "supertrop/errors.hpp"
#include "supertrop/supertropical.hpp"

namespace supertrop {

namespace detail {

// expr := term ('+' term)* ; term := atom ('*' atom)* ; atom := element | '(' expr ')'
class ElementExpression {
 public:
  explicit ElementExpression(std::string_view text) : text_(text) {}

  SupertropicalElem evaluate() {
    SupertropicalElem x = expr();
    skip_space();
    if (pos_ != text_.size()) throw parse_error("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return x;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SupertropicalElem expr() {
    SupertropicalElem x = term();
    while (accept('+')) x = st_add(x, term());
    return x;
  }

  SupertropicalElem term() {
    SupertropicalElem x = atom();
    while (accept('*')) x = st_mul(x, atom());
    return x;
  }

  SupertropicalElem atom() {
    if (accept('(')) {
      SupertropicalElem x = expr();
      if (!accept(')')) throw parse_error("expected ')'", pos_);
      return x;
    }
    skip_space();
    return parse_supertropical_prefix(text_, pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Evaluates an expression such as `(t2 + g1) * t-1/2` in U(ℚ).
inline SupertropicalElem evaluate_expression(std::string_view text) {
  return detail::ElementExpression(text).evaluate();
}

}  // namespace supertrop
