#include "planebreaker/expr/lexer.hpp"

namespace planebreaker::expr {

namespace {

bool is_digit(char c)
{
    return c >= '0' && c <= '9';
}

bool is_alpha(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

} // namespace

std::string_view name_of(TokenKind kind)
{
    switch (kind) {
    case TokenKind::Number: return "number";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Caret: return "'^'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::Equals: return "'='";
    }
    return "token";
}

LexError::LexError(std::size_t position)
    : std::runtime_error("unexpected character at offset " + std::to_string(position))
    , position_(position)
{
}

std::vector<Token> tokenize(std::string_view source)
{
    std::vector<Token> tokens;
    std::size_t pos = 0;
    const std::size_t n = source.size();

    while (pos < n) {
        const char c = source[pos];
        if (is_space(c)) {
            ++pos;
            continue;
        }

        const std::size_t start = pos;
        if (is_digit(c)) {
            while (pos < n && is_digit(source[pos])) {
                ++pos;
            }
            // A '.' only belongs to the number when digits follow it.
            if (pos + 1 < n && source[pos] == '.' && is_digit(source[pos + 1])) {
                ++pos;
                while (pos < n && is_digit(source[pos])) {
                    ++pos;
                }
            }
            tokens.push_back({TokenKind::Number, std::string(source.substr(start, pos - start)), start});
            continue;
        }
        if (is_alpha(c)) {
            while (pos < n && is_alpha(source[pos])) {
                ++pos;
            }
            tokens.push_back({TokenKind::Identifier, std::string(source.substr(start, pos - start)), start});
            continue;
        }

        TokenKind kind;
        switch (c) {
        case '+': kind = TokenKind::Plus; break;
        case '-': kind = TokenKind::Minus; break;
        case '*': kind = TokenKind::Star; break;
        case '/': kind = TokenKind::Slash; break;
        case '^': kind = TokenKind::Caret; break;
        case '(': kind = TokenKind::LParen; break;
        case ')': kind = TokenKind::RParen; break;
        case ',': kind = TokenKind::Comma; break;
        case '=': kind = TokenKind::Equals; break;
        default: throw LexError(pos);
        }
        tokens.push_back({kind, std::string(1, c), start});
        ++pos;
    }
    return tokens;
}

} // namespace planebreaker::expr
