#include <doctest.h>

#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "planebreaker/expr/eval.hpp"
#include "planebreaker/expr/lexer.hpp"
#include "planebreaker/expr/parser.hpp"
#include "support/ast_gen.hpp"
#include "support/oracle.hpp"
#include "support/sexpr.hpp"

using namespace planebreaker::expr;
using planebreaker::testing::to_sexpr;

namespace {

Expression lit(double v) { return Expression::literal(v); }
Expression X() { return Expression::variable(Variable::X); }
Expression Y() { return Expression::variable(Variable::Y); }
Expression bin(BinaryOp op, Expression a, Expression b) { return Expression::binary(op, std::move(a), std::move(b)); }
Expression call(Function f, Expression a) { return Expression::call(f, std::move(a)); }

double value_at(std::string_view src, double x = 0.0, double y = 0.0)
{
    return evaluate(parse(src), x, y).value();
}

ParseError parse_error(std::string_view src)
{
    try {
        parse(src);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected ParseError for: " << src);
    return ParseError(0, "");
}

} // namespace

TEST_SUITE("tokenize") {

TEST_CASE("equation prefix")
{
    const auto t = tokenize("z = x");
    REQUIRE(t.size() == 3);
    CHECK(t[0] == Token{TokenKind::Identifier, "z", 0});
    CHECK(t[1] == Token{TokenKind::Equals, "=", 2});
    CHECK(t[2] == Token{TokenKind::Identifier, "x", 4});
}

TEST_CASE("number glued to function name")
{
    const auto t = tokenize("3sin(x)");
    REQUIRE(t.size() == 5);
    CHECK(t[0].kind == TokenKind::Number);
    CHECK(t[0].lexeme == "3");
    CHECK(t[1].kind == TokenKind::Identifier);
    CHECK(t[1].lexeme == "sin");
    CHECK(t[2].kind == TokenKind::LParen);
    CHECK(t[3].lexeme == "x");
    CHECK(t[4].kind == TokenKind::RParen);
}

TEST_CASE("characters outside the alphabet")
{
    try {
        tokenize("x # y");
        FAIL("no LexError");
    } catch (const LexError& e) {
        CHECK(e.position() == 2);
    }
    CHECK_THROWS_AS(tokenize(".5"), LexError);
    CHECK_THROWS_AS(tokenize("3."), LexError);
    CHECK_THROWS_AS(tokenize("x\xc3\xa9"), LexError);
}

TEST_CASE("decimal numbers and all operator kinds")
{
    const auto t = tokenize("12.75+-*/^(),=");
    REQUIRE(t.size() == 10);
    CHECK(t[0].lexeme == "12.75");
    CHECK(t[1].kind == TokenKind::Plus);
    CHECK(t[2].kind == TokenKind::Minus);
    CHECK(t[3].kind == TokenKind::Star);
    CHECK(t[4].kind == TokenKind::Slash);
    CHECK(t[5].kind == TokenKind::Caret);
    CHECK(t[8].kind == TokenKind::Comma);
    CHECK(t[9].kind == TokenKind::Equals);
    CHECK(tokenize("").empty());
    CHECK(tokenize(" \t\n").empty());
}

TEST_CASE("positions strictly increase and lexemes match the source")
{
    std::mt19937_64 rng(7);
    const std::string alphabet = "0123456789.xyzsinco+-*/^(),= \t";
    for (int round = 0; round < 2000; ++round) {
        std::string src;
        const int len = std::uniform_int_distribution<int>(0, 30)(rng);
        for (int k = 0; k < len; ++k) {
            src += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
        }
        std::vector<Token> tokens;
        try {
            tokens = tokenize(src);
        } catch (const LexError& e) {
            CHECK(src[e.position()] == '.');
            continue;
        }
        for (std::size_t k = 0; k < tokens.size(); ++k) {
            CHECK(src.substr(tokens[k].position, tokens[k].lexeme.size()) == tokens[k].lexeme);
            if (k > 0) {
                CHECK(tokens[k].position > tokens[k - 1].position);
            }
            if (tokens[k].kind == TokenKind::Number) {
                CHECK(tokens[k].lexeme.front() != '.');
                CHECK(tokens[k].lexeme.back() != '.');
            }
        }
    }
}

} // TEST_SUITE

TEST_SUITE("parse") {

TEST_CASE("figure equations")
{
    CHECK(parse("z = sin(x) + cos(y)") == bin(BinaryOp::Add, call(Function::Sin, X()), call(Function::Cos, Y())));
    CHECK(parse("3sin(x) + cos(y)")
          == bin(BinaryOp::Add, bin(BinaryOp::Mul, lit(3), call(Function::Sin, X())), call(Function::Cos, Y())));
}

TEST_CASE("power is right associative")
{
    CHECK(parse("x ^ 2 ^ 3") == bin(BinaryOp::Pow, X(), bin(BinaryOp::Pow, lit(2), lit(3))));
}

TEST_CASE("unary minus binds looser than power")
{
    CHECK(parse("-2^2") == Expression::negate(bin(BinaryOp::Pow, lit(2), lit(2))));
    CHECK(value_at("-2^2") == -4.0);
    CHECK(value_at("2+3*4") == 14.0);
    CHECK(value_at("(-2)^2") == 4.0);
    CHECK(value_at("2^-1") == 0.5);
}

TEST_CASE("golden corpus")
{
    std::ifstream in(PLANEBREAKER_TEST_DATA_DIR "/parser_corpus.tsv");
    REQUIRE(in);
    std::string line;
    int checked = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        REQUIRE(tab != std::string::npos);
        const std::string source = line.substr(0, tab);
        CAPTURE(source);
        CHECK(to_sexpr(parse(source)) == line.substr(tab + 1));
        ++checked;
    }
    CHECK(checked >= 50);
}

TEST_CASE("errors carry a position and a reason")
{
    struct Case {
        const char* source;
        std::size_t position;
        const char* reason_part;
    };
    const Case cases[] = {
        {"sin()", 4, "without argument"},
        {"sin(", 4, "expected operand"},
        {"(x + 1", 6, "unclosed"},
        {"x + 1)", 5, "unmatched"},
        {"x +", 3, "expected operand"},
        {"X", 0, "unknown identifier 'X'"},
        {"xy", 0, "unknown identifier 'xy'"},
        {"w + 1", 0, "unknown identifier"},
        {"x = 1", 2, "'='"},
        {"z = z = x", 4, "'z ='"},
        {"1 + z = x", 4, "'z ='"},
        {"x # y", 2, "unexpected character"},
        {".5", 0, "unexpected character"},
        {"1e5", 0, "scientific"},
        {"2.5e-3", 0, "scientific"},
        {"sin x", 4, "parenthesized"},
        {"sin", 3, "parenthesized"},
        {"atan(y, x)", 6, "multi-argument"},
        {"", 0, "empty"},
        {"   ", 0, "empty"},
        {"z =", 3, "expected expression"},
        {"()", 1, "empty parentheses"},
        {"2 * * 3", 4, "expected operand"},
        {"x^", 2, "expected operand"},
        {"x,y", 1, "unexpected ','"},
    };
    for (const Case& c : cases) {
        CAPTURE(c.source);
        const ParseError e = parse_error(c.source);
        CHECK(e.position() == c.position);
        CHECK(e.reason().find(c.reason_part) != std::string::npos);
    }
}

TEST_CASE("deep nesting is rejected instead of overflowing the stack")
{
    CHECK(parse_error(std::string(1000, '(') + "x").reason().find("nested") != std::string::npos);
    CHECK(parse_error(std::string(1000, '-') + "x").reason().find("nested") != std::string::npos);
    CHECK(parse_error(std::string(100000, '(') + "x").reason().find("too long") != std::string::npos);
    std::string chain = "x";
    for (int k = 0; k < 5000; ++k) chain += "+x";
    CHECK(parse_error(chain).reason().find("too long") != std::string::npos);
    CHECK_NOTHROW(parse(std::string(200, '(') + "x" + std::string(200, ')')));
}

TEST_CASE("variables other than x and y never appear")
{
    for (const char* s : {"a", "t", "z", "Y", "xx", "pie"}) {
        CHECK_THROWS_AS(parse(s), ParseError);
    }
}

} // TEST_SUITE

TEST_SUITE("evaluate") {

TEST_CASE("evaluate: reference points")
{
    CHECK(evaluate(parse("z = sin(x) + cos(y)"), 0, 0).value() == 1.0);
    CHECK(evaluate(parse("3sin(x) + cos(y)"), std::numbers::pi / 2, 0).value() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_FALSE(evaluate(parse("sqrt(x)"), -1, 0).is_defined());
    CHECK_FALSE(evaluate(parse("1/(x*y)"), 0, 5).is_defined());
    CHECK(evaluate(parse("sqrt(x)"), 0, 0).value() == 0.0);
}

TEST_CASE("domain errors collapse to Undefined")
{
    for (const char* s : {"ln(0)", "ln(-1)", "log(0)", "log(-2)", "asin(1.5)", "acos(-1.0001)", "sqrt(-0.5)",
                          "1/0", "0/0", "(-8)^(1/3)", "0^(-1)", "exp(1000)", "10^400", "x/(y-y)"}) {
        CAPTURE(s);
        CHECK_FALSE(evaluate(parse(s), 1.0, 2.0).is_defined());
    }
}

TEST_CASE("real power semantics")
{
    CHECK(value_at("(-2)^3") == -8.0);
    CHECK(value_at("(-2)^2") == 4.0);
    CHECK(value_at("0^0") == 1.0);
    CHECK(value_at("4^0.5") == 2.0);
    CHECK(value_at("x^y", -3.0, 2.0) == 9.0);
    CHECK_FALSE(evaluate(parse("x^y"), -3.0, 0.5).is_defined());
}

TEST_CASE("non-finite intermediates poison the result")
{
    // atan(inf) is finite, but the overflowing argument must still win.
    CHECK_FALSE(evaluate(parse("atan(exp(1000))"), 0, 0).is_defined());
    CHECK_FALSE(evaluate(parse("1/exp(1000)"), 0, 0).is_defined());
    CHECK_FALSE(evaluate(parse("0 * (1/x)"), 0, 0).is_defined());
}

TEST_CASE("constants and functions")
{
    CHECK(value_at("pi") == std::numbers::pi);
    CHECK(value_at("e") == std::numbers::e);
    CHECK(value_at("log(1000)") == doctest::Approx(3.0));
    CHECK(value_at("ln(e)") == doctest::Approx(1.0));
    CHECK(value_at("abs(-3)") == 3.0);
    CHECK(value_at("atan(1)") == doctest::Approx(std::numbers::pi / 4));
}

TEST_CASE("bit-identical across calls and threads")
{
    const Expression e = parse("sin(x y)/(x y) + sqrt(x^2+y^2)^1.5 - ln(abs(x) + 1)");
    const Program p(e);
    std::vector<std::uint64_t> expected;
    for (int k = 0; k < 200; ++k) {
        expected.push_back(std::bit_cast<std::uint64_t>(p.evaluate(k * 0.037 - 3.0, 2.0 - k * 0.011).value_or(-1)));
    }
    std::vector<std::thread> threads;
    std::atomic<int> mismatches{0};
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&] {
            for (int k = 0; k < 200; ++k) {
                const double v = evaluate(e, k * 0.037 - 3.0, 2.0 - k * 0.011).value_or(-1);
                if (std::bit_cast<std::uint64_t>(v) != expected[k]) ++mismatches;
            }
        });
    }
    for (auto& t : threads) t.join();
    CHECK(mismatches == 0);
}

TEST_CASE("stack depth matches tree shape")
{
    CHECK(Program(parse("x")).stack_depth() == 1);
    CHECK(Program(parse("x + y")).stack_depth() == 2);
    CHECK(Program(parse("x + (y + (x + y))")).stack_depth() == 4);
    CHECK(Program(parse("((x + y) + x) + y")).stack_depth() == 2);
    std::vector<double> too_small(1);
    CHECK_THROWS_AS(Program(parse("x+y")).evaluate(0, 0, too_small), std::invalid_argument);
}

TEST_CASE("agrees with the oracle on random trees")
{
    planebreaker::testing::AstGenerator gen(99);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    for (int k = 0; k < 3000; ++k) {
        const Expression e = gen.generate(5);
        const double x = coord(gen.rng());
        const double y = coord(gen.rng());
        const EvalResult got = evaluate(e, x, y);
        const auto want = planebreaker::testing::oracle_evaluate(e, x, y);
        CAPTURE(infix_text(e));
        REQUIRE(got.is_defined() == want.has_value());
        if (want) {
            CHECK(std::abs(got.value() - *want) <= 1e-12 * std::max(std::abs(*want), 1e-300));
        }
    }
}

} // TEST_SUITE

TEST_SUITE("canonical_text") {

TEST_CASE("renders fully parenthesized with the z prefix")
{
    CHECK(canonical_text(bin(BinaryOp::Add, call(Function::Sin, X()), call(Function::Cos, Y())))
          == "z = (sin(x) + cos(y))");
    CHECK(canonical_text(lit(3)) == "z = 3");
    CHECK(canonical_text(parse("3sin(x)+cos(y)")) == "z = ((3 * sin(x)) + cos(y))");
    CHECK(canonical_text(parse("-2^2")) == "z = (-(2 ^ 2))");
    CHECK(canonical_text(parse("sin(x+y)")) == "z = sin(x + y)");
    CHECK(canonical_text(parse("0.1 pi e")) == "z = ((0.1 * pi) * e)");
}

TEST_CASE("round trip over generated trees")
{
    planebreaker::testing::AstGenerator gen(2024);
    for (int k = 0; k < 2000; ++k) {
        const Expression e = gen.generate(6);
        const std::string text = canonical_text(e);
        CAPTURE(text);
        CHECK(parse(text) == e);
    }
    const Expression e = parse("3sin(x)+cos(y)");
    CHECK(parse(canonical_text(e)) == e);
}

TEST_CASE("literals survive the round trip exactly")
{
    for (double v : {0.1, 1.0 / 3.0, 123456789.123, 1e-9, 4.9406564584124654e-300, 1.7976931348623157e308}) {
        CHECK(parse(canonical_text(lit(v))) == lit(v));
    }
}

} // TEST_SUITE

TEST_CASE("free_variables")
{
    CHECK(free_variables(parse("x + y")) == std::set<Variable>{Variable::X, Variable::Y});
    CHECK(free_variables(parse("5")).empty());
    CHECK(free_variables(parse("sin(x)*x")) == std::set<Variable>{Variable::X});
    CHECK(free_variables(parse("pi e")).empty());
    CHECK(free_variables(parse("-(sqrt(y))")) == std::set<Variable>{Variable::Y});
}

TEST_CASE("EvalResult never holds a non-finite value")
{
    CHECK_FALSE(EvalResult::from(std::nan("")).is_defined());
    CHECK_FALSE(EvalResult::from(INFINITY).is_defined());
    CHECK_FALSE(EvalResult::from(-INFINITY).is_defined());
    CHECK(EvalResult::from(-0.0).is_defined());
    CHECK_THROWS_AS(EvalResult::undefined().value(), std::logic_error);
    CHECK(EvalResult::undefined() == EvalResult::undefined());
    CHECK_FALSE(EvalResult::from(1.0) == EvalResult::undefined());
    CHECK_THROWS_AS(Expression::literal(INFINITY), std::invalid_argument);
}
