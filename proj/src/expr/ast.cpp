#include "planebreaker/expr/ast.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace planebreaker::expr {

namespace {

constexpr std::array<std::string_view, 11> kFunctionNames = {
    "sin", "cos", "tan", "asin", "acos", "atan", "exp", "ln", "log", "sqrt", "abs",
};

std::string format_literal(double value)
{
    // Shortest fixed-notation text that reads back to the same double; the
    // grammar has no exponent syntax.
    std::array<char, 400> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed);
    if (ec != std::errc{}) {
        throw std::logic_error("literal does not fit the format buffer");
    }
    return std::string(buf.data(), end);
}

void render(const Expression& e, std::string& out);

struct Renderer {
    std::string& out;

    void operator()(const Literal& n) const
    {
        if (std::signbit(n.value)) {
            out += "(-" + format_literal(-n.value) + ")";
        } else {
            out += format_literal(n.value);
        }
    }
    void operator()(const VariableRef& n) const { out += name_of(n.name); }
    void operator()(const ConstantRef& n) const { out += name_of(n.name); }
    void operator()(const Unary& n) const
    {
        out += "(-";
        render(n.operand, out);
        out += ')';
    }
    void operator()(const Binary& n) const
    {
        out += '(';
        render(n.left, out);
        out += ' ';
        out += symbol_of(n.op);
        out += ' ';
        render(n.right, out);
        out += ')';
    }
    void operator()(const Call& n) const
    {
        out += name_of(n.function);
        // The call's own parentheses already delimit a compound argument.
        std::string inner;
        render(n.argument, inner);
        const bool wrapped = std::holds_alternative<Binary>(n.argument.node())
            || std::holds_alternative<Unary>(n.argument.node());
        if (wrapped) {
            out += inner;
        } else {
            out += '(' + inner + ')';
        }
    }
};

void render(const Expression& e, std::string& out)
{
    std::visit(Renderer{out}, e.node());
}

void collect(const Expression& e, std::set<Variable>& vars)
{
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VariableRef>) {
                vars.insert(n.name);
            } else if constexpr (std::is_same_v<T, Unary>) {
                collect(n.operand, vars);
            } else if constexpr (std::is_same_v<T, Binary>) {
                collect(n.left, vars);
                collect(n.right, vars);
            } else if constexpr (std::is_same_v<T, Call>) {
                collect(n.argument, vars);
            }
        },
        e.node());
}

} // namespace

std::string_view name_of(Variable v)
{
    return v == Variable::X ? "x" : "y";
}

std::string_view name_of(Constant c)
{
    return c == Constant::Pi ? "pi" : "e";
}

std::string_view name_of(Function f)
{
    return kFunctionNames.at(static_cast<std::size_t>(f));
}

std::string_view symbol_of(BinaryOp op)
{
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Pow: return "^";
    }
    return "?";
}

std::optional<Variable> variable_from_name(std::string_view name)
{
    if (name == "x") return Variable::X;
    if (name == "y") return Variable::Y;
    return std::nullopt;
}

std::optional<Constant> constant_from_name(std::string_view name)
{
    if (name == "pi") return Constant::Pi;
    if (name == "e") return Constant::E;
    return std::nullopt;
}

std::optional<Function> function_from_name(std::string_view name)
{
    for (std::size_t i = 0; i < kFunctionNames.size(); ++i) {
        if (kFunctionNames[i] == name) {
            return static_cast<Function>(i);
        }
    }
    return std::nullopt;
}

Expression Expression::literal(double value)
{
    if (!std::isfinite(value)) {
        throw std::invalid_argument("expression literal must be finite");
    }
    return Expression(std::make_shared<const Node>(Literal{value}));
}

Expression Expression::variable(Variable v)
{
    return Expression(std::make_shared<const Node>(VariableRef{v}));
}

Expression Expression::constant(Constant c)
{
    return Expression(std::make_shared<const Node>(ConstantRef{c}));
}

Expression Expression::negate(Expression operand)
{
    return Expression(std::make_shared<const Node>(Unary{UnaryOp::Neg, std::move(operand)}));
}

Expression Expression::binary(BinaryOp op, Expression left, Expression right)
{
    return Expression(std::make_shared<const Node>(Binary{op, std::move(left), std::move(right)}));
}

Expression Expression::call(Function fn, Expression argument)
{
    return Expression(std::make_shared<const Node>(Call{fn, std::move(argument)}));
}

bool operator==(const Expression& a, const Expression& b)
{
    if (a.node_ == b.node_) {
        return true;
    }
    const Expression::Node& na = a.node();
    const Expression::Node& nb = b.node();
    if (na.index() != nb.index()) {
        return false;
    }
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            const T& rhs = std::get<T>(nb);
            if constexpr (std::is_same_v<T, Literal>) {
                return lhs.value == rhs.value && std::signbit(lhs.value) == std::signbit(rhs.value);
            } else if constexpr (std::is_same_v<T, VariableRef> || std::is_same_v<T, ConstantRef>) {
                return lhs.name == rhs.name;
            } else if constexpr (std::is_same_v<T, Unary>) {
                return lhs.op == rhs.op && lhs.operand == rhs.operand;
            } else if constexpr (std::is_same_v<T, Binary>) {
                return lhs.op == rhs.op && lhs.left == rhs.left && lhs.right == rhs.right;
            } else {
                return lhs.function == rhs.function && lhs.argument == rhs.argument;
            }
        },
        na);
}

std::set<Variable> free_variables(const Expression& e)
{
    std::set<Variable> vars;
    collect(e, vars);
    return vars;
}

std::string infix_text(const Expression& e)
{
    std::string out;
    render(e, out);
    return out;
}

std::string canonical_text(const Expression& e)
{
    return "z = " + infix_text(e);
}

} // namespace planebreaker::expr
