#include "awlift/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace awlift {

ParseError::ParseError(const std::string& msg, std::size_t offset,
                       std::vector<std::string> expected)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << msg << " at offset " << offset;
        if (!expected.empty()) {
          os << " (expected ";
          for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) os << ", ";
            os << expected[i];
          }
          os << ")";
        }
        return os.str();
      }()),
      offset_(offset),
      expected_(std::move(expected)) {}

ExprPtr make_constant(Cplx v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Constant;
  n->value = v;
  return n;
}

ExprPtr make_variable() {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Variable;
  return n;
}

ExprPtr make_unary(char op, ExprPtr child) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Unary;
  n->op = op;
  n->lhs = std::move(child);
  return n;
}

ExprPtr make_binary(char op, ExprPtr lhs, ExprPtr rhs) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Binary;
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

ExprPtr make_call(FuncId f, ExprPtr arg) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Call;
  n->func = f;
  n->lhs = std::move(arg);
  return n;
}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  double number = 0.0;
  std::string ident;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    const char c = src_[pos_];
    switch (c) {
      case '+': tok_.kind = Tok::Plus; ++pos_; return;
      case '-': tok_.kind = Tok::Minus; ++pos_; return;
      case '*': tok_.kind = Tok::Star; ++pos_; return;
      case '/': tok_.kind = Tok::Slash; ++pos_; return;
      case '^': tok_.kind = Tok::Caret; ++pos_; return;
      case '(': tok_.kind = Tok::LParen; ++pos_; return;
      case ')': tok_.kind = Tok::RParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Tok::Ident;
      tok_.ident = src_.substr(start, pos_ - start);
      return;
    }
    if (c == '~') throw ParseError("conjugation is not allowed (expressions must be analytic)", pos_, {});
    throw ParseError(std::string("unexpected character '") + c + "'", pos_, {});
  }

  void lex_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    // Exponent only if 'e'/'E' is followed by an (optionally signed) digit;
    // otherwise it is the constant e.
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_ + 1;
      if (mark < src_.size() && (src_[mark] == '+' || src_[mark] == '-')) ++mark;
      if (mark < src_.size() && std::isdigit(static_cast<unsigned char>(src_[mark]))) {
        pos_ = mark;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    const std::string text = src_.substr(start, pos_ - start);
    if (text == ".") throw ParseError("malformed number", start, {"number"});
    tok_.kind = Tok::Number;
    tok_.number = std::strtod(text.c_str(), nullptr);
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  ExprPtr run() {
    ExprPtr e = expr();
    if (lex_.peek().kind != Tok::End)
      throw ParseError("trailing input", lex_.peek().offset, {"operator", "end of input"});
    return e;
  }

 private:
  ExprPtr expr() {
    ExprPtr lhs = term();
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      const char op = lex_.take().kind == Tok::Plus ? '+' : '-';
      lhs = make_binary(op, lhs, term());
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (lex_.peek().kind == Tok::Star || lex_.peek().kind == Tok::Slash) {
      const char op = lex_.take().kind == Tok::Star ? '*' : '/';
      lhs = make_binary(op, lhs, unary());
    }
    return lhs;
  }

  ExprPtr unary() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return make_unary('-', unary());
    }
    if (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      return unary();
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      return make_binary('^', base, unary());
    }
    return base;
  }

  ExprPtr atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Number: {
        Token n = lex_.take();
        return make_constant(Cplx(n.number, 0.0));
      }
      case Tok::LParen: {
        lex_.take();
        ExprPtr e = expr();
        if (lex_.peek().kind != Tok::RParen)
          throw ParseError("unbalanced parentheses", lex_.peek().offset, {"')'"});
        lex_.take();
        return e;
      }
      case Tok::Ident:
        return ident_atom();
      default:
        throw ParseError("syntax error", t.offset, {"number", "'z'", "constant", "function", "'('"});
    }
  }

  ExprPtr ident_atom() {
    Token t = lex_.take();
    const std::string& id = t.ident;
    if (id == "z") return make_variable();
    if (id == "i") return make_constant(Cplx(0.0, 1.0));
    if (id == "pi") return make_constant(Cplx(M_PI, 0.0));
    if (id == "e") return make_constant(Cplx(M_E, 0.0));
    if (id == "conj" || id == "bar" || id == "zbar" || id == "conjugate")
      throw ParseError("conjugation is not allowed (expressions must be analytic)", t.offset, {});

    FuncId f;
    if (id == "exp") f = FuncId::Exp;
    else if (id == "log") f = FuncId::Log;
    else if (id == "sqrt") f = FuncId::Sqrt;
    else if (id == "sin") f = FuncId::Sin;
    else if (id == "cos") f = FuncId::Cos;
    else if (id == "atanh") f = FuncId::Atanh;
    else throw ParseError("unknown identifier '" + id + "'", t.offset, {});

    if (lex_.peek().kind != Tok::LParen)
      throw ParseError("function '" + id + "' requires an argument list", lex_.peek().offset, {"'('"});
    lex_.take();
    ExprPtr arg = expr();
    if (lex_.peek().kind != Tok::RParen)
      throw ParseError("unbalanced parentheses", lex_.peek().offset, {"')'"});
    lex_.take();
    return make_call(f, arg);
  }

  Lexer lex_;
};

const char* func_name(FuncId f) {
  switch (f) {
    case FuncId::Exp: return "exp";
    case FuncId::Log: return "log";
    case FuncId::Sqrt: return "sqrt";
    case FuncId::Sin: return "sin";
    case FuncId::Cos: return "cos";
    case FuncId::Atanh: return "atanh";
  }
  return "?";
}

int node_prec(const ExprNode& n) {
  switch (n.kind) {
    case ExprKind::Binary:
      if (n.op == '+' || n.op == '-') return 1;
      if (n.op == '*' || n.op == '/') return 2;
      return 4;  // '^'
    case ExprKind::Unary:
      return 3;
    default:
      return 5;
  }
}

void emit(const ExprPtr& node, int min_prec, std::string& out) {
  const int p = node_prec(*node);
  const bool parens = p < min_prec;
  if (parens) out += '(';
  switch (node->kind) {
    case ExprKind::Constant: {
      const Cplx v = node->value;
      if (v == Cplx(0.0, 1.0)) {
        out += 'i';
      } else {
        out += format_double(v.real());
        if (v.imag() != 0.0) {
          out += '+';
          out += format_double(v.imag());
          out += "*i";
        }
      }
      break;
    }
    case ExprKind::Variable:
      out += 'z';
      break;
    case ExprKind::Unary:
      out += '-';
      emit(node->lhs, 3, out);
      break;
    case ExprKind::Binary:
      switch (node->op) {
        case '+': emit(node->lhs, 1, out); out += '+'; emit(node->rhs, 2, out); break;
        case '-': emit(node->lhs, 1, out); out += '-'; emit(node->rhs, 2, out); break;
        case '*': emit(node->lhs, 2, out); out += '*'; emit(node->rhs, 3, out); break;
        case '/': emit(node->lhs, 2, out); out += '/'; emit(node->rhs, 3, out); break;
        case '^': emit(node->lhs, 5, out); out += '^'; emit(node->rhs, 3, out); break;
        default: break;
      }
      break;
    case ExprKind::Call:
      out += func_name(node->func);
      out += '(';
      emit(node->lhs, 0, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

HoloJet eval_node(const ExprNode& node, Cplx z0) {
  switch (node.kind) {
    case ExprKind::Constant:
      return HoloJet::constant(z0, node.value);
    case ExprKind::Variable:
      return HoloJet::variable(z0);
    case ExprKind::Unary:
      return jet_neg(eval_node(*node.lhs, z0));
    case ExprKind::Binary: {
      HoloJet a = eval_node(*node.lhs, z0);
      HoloJet b = eval_node(*node.rhs, z0);
      switch (node.op) {
        case '+': return jet_add(a, b);
        case '-': return jet_sub(a, b);
        case '*': return jet_mul(a, b);
        case '/': return jet_div(a, b);
        case '^': return jet_pow(a, b);
        default: throw UsageError("bad binary operator");
      }
    }
    case ExprKind::Call: {
      HoloJet a = eval_node(*node.lhs, z0);
      switch (node.func) {
        case FuncId::Exp: return jet_exp(a);
        case FuncId::Log: return jet_log(a);
        case FuncId::Sqrt: return jet_sqrt(a);
        case FuncId::Sin: return jet_sin(a);
        case FuncId::Cos: return jet_cos(a);
        case FuncId::Atanh: return jet_atanh(a);
      }
      throw UsageError("bad function id");
    }
  }
  throw UsageError("bad node kind");
}

}  // namespace

ExprPtr parse(const std::string& src) {
  if (src.empty()) throw ParseError("empty expression", 0, {"expression"});
  return Parser(src).run();
}

std::string pretty_print(const ExprPtr& ast) {
  std::string out;
  emit(ast, 0, out);
  return out;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Constant: return a->value == b->value;
    case ExprKind::Variable: return true;
    case ExprKind::Unary: return a->op == b->op && expr_equal(a->lhs, b->lhs);
    case ExprKind::Binary:
      return a->op == b->op && expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
    case ExprKind::Call: return a->func == b->func && expr_equal(a->lhs, b->lhs);
  }
  return false;
}

HoloJet eval_jet(const ExprPtr& ast, Cplx z0) {
  if (!ast) throw UsageError("null expression");
  HoloJet j = eval_node(*ast, z0);
  if (!j.all_finite()) throw SingularPointError("non-finite expression value", z0);
  return j;
}

}  // namespace awlift
