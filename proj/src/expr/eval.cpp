#include "planebreaker/expr/eval.hpp"

#include <array>
#include <numbers>

namespace planebreaker::expr {

Program::Program(const Expression& e)
{
    emit(e, 1);
}

void Program::emit(const Expression& e, std::size_t depth)
{
    depth_ = std::max(depth_, depth);
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Literal>) {
                code_.push_back({Op::PushLiteral, n.value});
            } else if constexpr (std::is_same_v<T, VariableRef>) {
                code_.push_back({n.name == Variable::X ? Op::PushX : Op::PushY, 0.0});
            } else if constexpr (std::is_same_v<T, ConstantRef>) {
                code_.push_back({Op::PushLiteral, n.name == Constant::Pi ? std::numbers::pi : std::numbers::e});
            } else if constexpr (std::is_same_v<T, Unary>) {
                emit(n.operand, depth);
                code_.push_back({Op::Neg, 0.0});
            } else if constexpr (std::is_same_v<T, Binary>) {
                emit(n.left, depth);
                emit(n.right, depth + 1);
                static constexpr std::array kOps = {Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Pow};
                code_.push_back({kOps[static_cast<std::size_t>(n.op)], 0.0});
            } else {
                emit(n.argument, depth);
                code_.push_back({static_cast<Op>(static_cast<int>(Op::Sin) + static_cast<int>(n.function)), 0.0});
            }
        },
        e.node());
}

EvalResult Program::evaluate(double x, double y) const
{
    std::array<double, 64> small;
    if (depth_ <= small.size()) {
        return evaluate(x, y, small);
    }
    std::vector<double> stack(depth_);
    return evaluate(x, y, stack);
}

EvalResult Program::evaluate(double x, double y, std::span<double> stack) const
{
    if (stack.size() < depth_) {
        throw std::invalid_argument("Program::evaluate: stack buffer too small");
    }
    double* top = stack.data() - 1;

    for (const Instruction& ins : code_) {
        double r;
        switch (ins.op) {
        case Op::PushLiteral: *++top = ins.literal; continue;
        case Op::PushX: *++top = x; continue;
        case Op::PushY: *++top = y; continue;
        case Op::Neg: r = -*top; break;
        case Op::Add: r = top[-1] + top[0]; --top; break;
        case Op::Sub: r = top[-1] - top[0]; --top; break;
        case Op::Mul: r = top[-1] * top[0]; --top; break;
        case Op::Div: r = top[-1] / top[0]; --top; break;
        // Negative base with a non-integer exponent yields NaN here.
        case Op::Pow: r = std::pow(top[-1], top[0]); --top; break;
        case Op::Sin: r = std::sin(*top); break;
        case Op::Cos: r = std::cos(*top); break;
        case Op::Tan: r = std::tan(*top); break;
        case Op::Asin: r = std::asin(*top); break;
        case Op::Acos: r = std::acos(*top); break;
        case Op::Atan: r = std::atan(*top); break;
        case Op::Exp: r = std::exp(*top); break;
        case Op::Ln: r = std::log(*top); break;
        case Op::Log: r = std::log10(*top); break;
        case Op::Sqrt: r = std::sqrt(*top); break;
        case Op::Abs: r = std::fabs(*top); break;
        default: r = std::numeric_limits<double>::quiet_NaN(); break;
        }
        // Any non-finite intermediate poisons the whole evaluation.
        if (!std::isfinite(r)) {
            return EvalResult::undefined();
        }
        *top = r;
    }
    return EvalResult::from(*top);
}

EvalResult evaluate(const Expression& e, double x, double y)
{
    return Program(e).evaluate(x, y);
}

} // namespace planebreaker::expr
