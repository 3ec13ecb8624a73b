#pragma once

#include <memory>
#include <string>

#include "awlift/jet.hpp"
#include "awlift/types.hpp"

namespace awlift {

enum class ExprKind { Constant, Variable, Unary, Binary, Call };

enum class FuncId { Exp, Log, Sqrt, Sin, Cos, Atanh };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// AST for analytic expressions in one complex variable z.
struct ExprNode {
  ExprKind kind;
  Cplx value{};    // Constant
  char op = 0;     // Unary ('-') and Binary ('+','-','*','/','^')
  FuncId func{};   // Call
  ExprPtr lhs;     // Binary left / Unary child / Call argument
  ExprPtr rhs;     // Binary right
};

ExprPtr make_constant(Cplx v);
ExprPtr make_variable();
ExprPtr make_unary(char op, ExprPtr child);
ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_call(FuncId f, ExprPtr arg);

/// Grammar: + - * / ^ (right-assoc ^), parentheses, decimal numbers,
/// constants i/pi/e, variable z, functions exp log sqrt sin cos atanh.
/// Conjugation tokens are rejected to keep expressions analytic.
ExprPtr parse(const std::string& src);

/// Deterministic normal form; parse(pretty_print(a)) reproduces a.
std::string pretty_print(const ExprPtr& ast);

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Order-3 jet of the expression at z0.
HoloJet eval_jet(const ExprPtr& ast, Cplx z0);

}  // namespace awlift
