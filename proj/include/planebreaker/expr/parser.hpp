#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "planebreaker/expr/ast.hpp"

namespace planebreaker::expr {

/// Malformed equation text. position is a byte offset into the source; it
/// equals the source length when the input ended too early.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, std::string reason);

    std::size_t position() const noexcept { return position_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t position_;
    std::string reason_;
};

/// Parses `z = f(x, y)` or a bare `f(x, y)`.
///
/// Grammar (see docs/grammar.md):
///
///     equation := [ "z" "=" ] sum
///     sum      := product { ("+" | "-") product }
///     product  := signed { ("*" | "/" | <juxtaposition>) signed }
///     signed   := ("-" | "+") signed | power
///     power    := primary [ "^" signed ]
///     primary  := number | "x" | "y" | "pi" | "e"
///               | function "(" sum ")" | "(" sum ")"
///
/// Juxtaposition is an implicit `*` whenever a complete operand is directly
/// followed by an identifier, "(" or a number, e.g. `3sin(x)` or `2(x+1)`.
/// Throws ParseError (lexical errors are reported the same way).
Expression parse(std::string_view source);

} // namespace planebreaker::expr
