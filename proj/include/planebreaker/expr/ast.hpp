#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace planebreaker::expr {

enum class Variable { X, Y };
enum class Constant { Pi, E };
enum class UnaryOp { Neg };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Sin, Cos, Tan, Asin, Acos, Atan, Exp, Ln, Log, Sqrt, Abs };

std::string_view name_of(Variable v);
std::string_view name_of(Constant c);
std::string_view name_of(Function f);
std::string_view symbol_of(BinaryOp op);

std::optional<Variable> variable_from_name(std::string_view name);
std::optional<Constant> constant_from_name(std::string_view name);
std::optional<Function> function_from_name(std::string_view name);

struct Literal;
struct VariableRef;
struct ConstantRef;
struct Unary;
struct Binary;
struct Call;

/// Immutable expression tree for a real function of x and y.
///
/// Nodes are shared between copies, so an Expression is cheap to copy and
/// safe to read from any number of threads. Equality is structural.
class Expression {
public:
    using Node = std::variant<Literal, VariableRef, ConstantRef, Unary, Binary, Call>;

    static Expression literal(double value);
    static Expression variable(Variable v);
    static Expression constant(Constant c);
    static Expression negate(Expression operand);
    static Expression binary(BinaryOp op, Expression left, Expression right);
    static Expression call(Function fn, Expression argument);

    const Node& node() const;

    friend bool operator==(const Expression& a, const Expression& b);

private:
    explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct Literal {
    double value;
};

struct VariableRef {
    Variable name;
};

struct ConstantRef {
    Constant name;
};

struct Unary {
    UnaryOp op;
    Expression operand;
};

struct Binary {
    BinaryOp op;
    Expression left;
    Expression right;
};

struct Call {
    Function function;
    Expression argument;
};

inline const Expression::Node& Expression::node() const
{
    return *node_;
}

/// Variables that occur anywhere in the tree.
std::set<Variable> free_variables(const Expression& e);

/// Fully parenthesized infix rendering, prefixed with "z = ".
///
/// Every binary and negation node is wrapped in parentheses, so the text
/// parses back to a structurally identical tree.
std::string canonical_text(const Expression& e);

/// Canonical rendering without the "z = " prefix.
std::string infix_text(const Expression& e);

} // namespace planebreaker::expr
