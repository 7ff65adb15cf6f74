#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "planebreaker/expr/ast.hpp"

namespace planebreaker::expr {

/// Either a finite real or Undefined. A non-finite input always collapses to
/// Undefined, so a defined result is never NaN or infinite.
class EvalResult {
public:
    constexpr EvalResult() noexcept = default;

    static constexpr EvalResult undefined() noexcept { return EvalResult{}; }

    static EvalResult from(double v) noexcept
    {
        EvalResult r;
        if (std::isfinite(v)) {
            r.value_ = v;
        }
        return r;
    }

    bool is_defined() const noexcept { return !std::isnan(value_); }

    double value() const
    {
        if (!is_defined()) {
            throw std::logic_error("EvalResult::value on Undefined");
        }
        return value_;
    }

    double value_or(double fallback) const noexcept { return is_defined() ? value_ : fallback; }

    friend bool operator==(EvalResult a, EvalResult b) noexcept
    {
        if (!a.is_defined() || !b.is_defined()) {
            return a.is_defined() == b.is_defined();
        }
        return a.value_ == b.value_;
    }

private:
    double value_ = std::numeric_limits<double>::quiet_NaN();
};

/// Postfix program compiled from an Expression.
///
/// Evaluation runs over a flat instruction array and a value stack sized at
/// compile time; it is the evaluator used by the grid sampling kernels.
class Program {
public:
    explicit Program(const Expression& e);

    EvalResult evaluate(double x, double y) const;

    /// Same as evaluate(x, y) with caller-provided stack storage of at least
    /// stack_depth() elements; the grid kernels reuse one buffer per thread.
    EvalResult evaluate(double x, double y, std::span<double> stack) const;

    std::size_t stack_depth() const noexcept { return depth_; }
    std::size_t size() const noexcept { return code_.size(); }

private:
    enum class Op : std::uint8_t {
        PushLiteral,
        PushX,
        PushY,
        Neg,
        Add,
        Sub,
        Mul,
        Div,
        Pow,
        Sin,
        Cos,
        Tan,
        Asin,
        Acos,
        Atan,
        Exp,
        Ln,
        Log,
        Sqrt,
        Abs,
    };

    struct Instruction {
        Op op;
        double literal;
    };

    void emit(const Expression& e, std::size_t depth);

    std::vector<Instruction> code_;
    std::size_t depth_ = 0;
};

EvalResult evaluate(const Expression& e, double x, double y);

} // namespace planebreaker::expr
