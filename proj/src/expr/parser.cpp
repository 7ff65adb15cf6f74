#include "planebreaker/expr/parser.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "planebreaker/expr/lexer.hpp"

namespace planebreaker::expr {

ParseError::ParseError(std::size_t position, std::string reason)
    : std::runtime_error(reason + " at offset " + std::to_string(position))
    , position_(position)
    , reason_(std::move(reason))
{
}

namespace {

// Bounds the recursion of parsing and of every later tree walk.
constexpr std::size_t kMaxTokens = 4096;
constexpr std::size_t kMaxNesting = 256;

class Parser {
public:
    Parser(std::vector<Token> tokens, std::size_t source_length)
        : tokens_(std::move(tokens)), end_position_(source_length)
    {
    }

    Expression parse_equation()
    {
        if (tokens_.empty()) {
            throw ParseError(0, "empty expression");
        }
        if (tokens_.size() > kMaxTokens) {
            throw ParseError(tokens_[kMaxTokens].position, "expression too long");
        }
        if (tokens_.size() >= 2 && is_identifier("z", 0) && tokens_[1].kind == TokenKind::Equals) {
            pos_ = 2;
        }
        if (at_end()) {
            throw ParseError(end_position_, "expected expression");
        }
        Expression result = parse_sum();
        if (!at_end()) {
            const Token& t = peek();
            if (t.kind == TokenKind::RParen) {
                throw ParseError(t.position, "unmatched ')'");
            }
            if (t.kind == TokenKind::Equals) {
                throw ParseError(t.position, "'=' is only allowed after a leading 'z'");
            }
            throw ParseError(t.position, "unexpected " + std::string(name_of(t.kind)));
        }
        return result;
    }

private:
    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }
    std::size_t here() const { return at_end() ? end_position_ : peek().position; }

    bool check(TokenKind kind) const { return !at_end() && peek().kind == kind; }

    bool is_identifier(std::string_view name, std::size_t index) const
    {
        return tokens_[index].kind == TokenKind::Identifier && tokens_[index].lexeme == name;
    }

    Expression parse_sum()
    {
        Expression left = parse_product();
        while (check(TokenKind::Plus) || check(TokenKind::Minus)) {
            const BinaryOp op = peek().kind == TokenKind::Plus ? BinaryOp::Add : BinaryOp::Sub;
            ++pos_;
            left = Expression::binary(op, std::move(left), parse_product());
        }
        return left;
    }

    // A complete operand directly followed by one of these starts an
    // implicit product.
    bool starts_juxtaposed_operand() const
    {
        return check(TokenKind::Identifier) || check(TokenKind::LParen) || check(TokenKind::Number);
    }

    Expression parse_product()
    {
        Expression left = parse_signed();
        for (;;) {
            if (check(TokenKind::Star) || check(TokenKind::Slash)) {
                const BinaryOp op = peek().kind == TokenKind::Star ? BinaryOp::Mul : BinaryOp::Div;
                ++pos_;
                left = Expression::binary(op, std::move(left), parse_signed());
            } else if (starts_juxtaposed_operand()) {
                left = Expression::binary(BinaryOp::Mul, std::move(left), parse_signed());
            } else {
                return left;
            }
        }
    }

    Expression parse_signed()
    {
        if (++nesting_ > kMaxNesting) {
            throw ParseError(here(), "expression nested too deeply");
        }
        struct Leave {
            std::size_t& n;
            ~Leave() { --n; }
        } leave{nesting_};

        if (check(TokenKind::Minus)) {
            ++pos_;
            return Expression::negate(parse_signed());
        }
        if (check(TokenKind::Plus)) {
            ++pos_;
            return parse_signed();
        }
        return parse_power();
    }

    Expression parse_power()
    {
        Expression base = parse_primary();
        if (check(TokenKind::Caret)) {
            ++pos_;
            return Expression::binary(BinaryOp::Pow, std::move(base), parse_signed());
        }
        return base;
    }

    Expression parse_primary()
    {
        if (at_end()) {
            throw ParseError(end_position_, "expected operand");
        }
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::Number: {
            reject_exponent_notation(pos_);
            ++pos_;
            return number(t);
        }
        case TokenKind::Identifier:
            ++pos_;
            return identifier(t);
        case TokenKind::LParen: {
            ++pos_;
            if (check(TokenKind::RParen)) {
                throw ParseError(peek().position, "empty parentheses");
            }
            Expression inner = parse_sum();
            expect_close(t.position);
            return inner;
        }
        case TokenKind::RParen:
            throw ParseError(t.position, "unmatched ')'");
        case TokenKind::Equals:
            throw ParseError(t.position, "'=' is only allowed after a leading 'z'");
        case TokenKind::Comma:
            throw ParseError(t.position, "multi-argument functions are not supported");
        default:
            throw ParseError(t.position, "expected operand before " + std::string(name_of(t.kind)));
        }
    }

    bool adjacent(std::size_t a, std::size_t b) const
    {
        return b < tokens_.size() && tokens_[a].position + tokens_[a].lexeme.size() == tokens_[b].position;
    }

    // `2e5` or `2e-5` written without spaces would otherwise read as 2·e·5
    // or 2·e − 5 through juxtaposition.
    void reject_exponent_notation(std::size_t k) const
    {
        if (!adjacent(k, k + 1) || !is_identifier("e", k + 1)) {
            return;
        }
        const std::size_t next = k + 2;
        if (adjacent(k + 1, next) && tokens_[next].kind == TokenKind::Number) {
            throw ParseError(tokens_[k].position, "scientific notation is not supported");
        }
        const bool sign = next < tokens_.size()
            && (tokens_[next].kind == TokenKind::Plus || tokens_[next].kind == TokenKind::Minus);
        if (sign && adjacent(k + 1, next) && adjacent(next, next + 1)
            && tokens_[next + 1].kind == TokenKind::Number) {
            throw ParseError(tokens_[k].position, "scientific notation is not supported");
        }
    }

    Expression number(const Token& t) const
    {
        errno = 0;
        const double value = std::strtod(t.lexeme.c_str(), nullptr);
        if (errno == ERANGE && !std::isfinite(value)) {
            throw ParseError(t.position, "number out of range");
        }
        return Expression::literal(value);
    }

    Expression identifier(const Token& t)
    {
        if (auto v = variable_from_name(t.lexeme)) {
            return Expression::variable(*v);
        }
        if (auto c = constant_from_name(t.lexeme)) {
            return Expression::constant(*c);
        }
        if (auto fn = function_from_name(t.lexeme)) {
            if (!check(TokenKind::LParen)) {
                throw ParseError(here(), "function '" + t.lexeme + "' requires a parenthesized argument");
            }
            const std::size_t open = peek().position;
            ++pos_;
            if (check(TokenKind::RParen)) {
                throw ParseError(peek().position, "function '" + t.lexeme + "' without argument");
            }
            Expression argument = parse_sum();
            if (check(TokenKind::Comma)) {
                throw ParseError(peek().position, "multi-argument functions are not supported");
            }
            expect_close(open);
            return Expression::call(*fn, std::move(argument));
        }
        if (t.lexeme == "z" && check(TokenKind::Equals)) {
            throw ParseError(t.position, "'z =' may only appear at the start");
        }
        throw ParseError(t.position, "unknown identifier '" + t.lexeme + "'");
    }

    void expect_close(std::size_t open_position)
    {
        if (check(TokenKind::RParen)) {
            ++pos_;
            return;
        }
        if (at_end()) {
            throw ParseError(end_position_, "unclosed '(' opened at offset " + std::to_string(open_position));
        }
        throw ParseError(peek().position, "expected ')' but found " + std::string(name_of(peek().kind)));
    }

    std::vector<Token> tokens_;
    std::size_t end_position_;
    std::size_t pos_ = 0;
    std::size_t nesting_ = 0;
};

} // namespace

Expression parse(std::string_view source)
{
    std::vector<Token> tokens;
    try {
        tokens = tokenize(source);
    } catch (const LexError& e) {
        throw ParseError(e.position(), "unexpected character '" + std::string(1, source[e.position()]) + "'");
    }
    return Parser(std::move(tokens), source.size()).parse_equation();
}

} // namespace planebreaker::expr
