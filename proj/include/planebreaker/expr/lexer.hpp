#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace planebreaker::expr {

enum class TokenKind {
    Number,
    Identifier,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Equals,
};

std::string_view name_of(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string lexeme;
    std::size_t position; // byte offset into the source

    friend bool operator==(const Token&, const Token&) = default;
};

/// Raised by tokenize() on a byte outside the token alphabet.
class LexError : public std::runtime_error {
public:
    explicit LexError(std::size_t position);

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Splits source into tokens. Whitespace is skipped, identifiers are maximal
/// runs of ASCII letters and numbers are `digits [. digits]`.
std::vector<Token> tokenize(std::string_view source);

} // namespace planebreaker::expr
