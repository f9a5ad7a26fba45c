#include "rsl/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "rsl/errors.hpp"

namespace rsl {

namespace {

std::string expected_list(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& found)
    : Error("SyntaxError: at offset " + std::to_string(offset) + ": expected " +
            expected_list(expected) + ", found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

UnknownIdentifier::UnknownIdentifier(std::size_t offset, const std::string& name)
    : Error("UnknownIdentifier: '" + name + "' at offset " + std::to_string(offset)),
      offset_(offset),
      name_(name) {}

enum class Op { Number, X, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Abs, Min, Max };

struct Expr::Node {
  Op op;
  double value = 0.0;
  std::size_t offset = 0;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Op op, std::size_t offset, std::vector<NodePtr> args = {}, double value = 0.0) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->offset = offset;
  n->args = std::move(args);
  n->value = value;
  return n;
}

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    NodePtr root = sum();
    skip_space();
    if (pos_ < src_.size()) fail({"operator", "end of input"});
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
    throw SyntaxError(pos_, std::move(expected), found);
  }

  NodePtr sum() {
    NodePtr left = product();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+')) {
        left = make(Op::Add, at, {left, product()});
      } else if (accept('-')) {
        left = make(Op::Sub, at, {left, product()});
      } else {
        return left;
      }
    }
  }

  NodePtr product() {
    NodePtr left = unary();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) {
        left = make(Op::Mul, at, {left, unary()});
      } else if (accept('/')) {
        left = make(Op::Div, at, {left, unary()});
      } else {
        return left;
      }
    }
  }

  NodePtr unary() {
    skip_space();
    const std::size_t at = pos_;
    if (accept('-')) return make(Op::Neg, at, {unary()});
    return power();
  }

  NodePtr power() {
    NodePtr left = atom();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (!accept('^')) return left;
      left = make(Op::Pow, at, {left, atom()});
    }
  }

  NodePtr atom() {
    skip_space();
    if (pos_ >= src_.size()) fail({"number", "'x'", "'pi'", "function", "'('", "'-'"});
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (is_name_start(c)) return name();
    if (accept('(')) {
      NodePtr inner = sum();
      if (!accept(')')) fail({"')'"});
      return inner;
    }
    fail({"number", "'x'", "'pi'", "function", "'('"});
  }

  NodePtr number() {
    const std::size_t at = pos_;
    double value = 0.0;
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) fail({"number"});
    pos_ += static_cast<std::size_t>(ptr - begin);
    return make(Op::Number, at, {}, value);
  }

  NodePtr name() {
    const std::size_t at = pos_;
    while (pos_ < src_.size() && is_name_char(src_[pos_])) ++pos_;
    const std::string id(src_.substr(at, pos_ - at));
    if (id == "x") return make(Op::X, at);
    if (id == "pi") return make(Op::Number, at, {}, std::acos(-1.0));
    Op op;
    std::size_t min_args = 1, max_args = 1;
    if (id == "sin") {
      op = Op::Sin;
    } else if (id == "cos") {
      op = Op::Cos;
    } else if (id == "exp") {
      op = Op::Exp;
    } else if (id == "abs") {
      op = Op::Abs;
    } else if (id == "min" || id == "max") {
      op = id == "min" ? Op::Min : Op::Max;
      min_args = 2;
      max_args = static_cast<std::size_t>(-1);
    } else {
      throw UnknownIdentifier(at, id);
    }
    if (!accept('(')) fail({"'('"});
    std::vector<NodePtr> args{sum()};
    while (accept(',')) args.push_back(sum());
    if (args.size() > max_args) fail({"')'"});
    if (args.size() < min_args) fail({"','"});
    if (!accept(')')) fail(max_args > 1 ? std::vector<std::string>{"','", "')'"}
                                        : std::vector<std::string>{"')'"});
    return make(op, at, std::move(args));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

double eval(const Expr::Node& n, double x) {
  const auto arg = [&](std::size_t i) { return eval(*n.args[i], x); };
  switch (n.op) {
    case Op::Number: return n.value;
    case Op::X: return x;
    case Op::Neg: return -arg(0);
    case Op::Add: return arg(0) + arg(1);
    case Op::Sub: return arg(0) - arg(1);
    case Op::Mul: return arg(0) * arg(1);
    case Op::Div: {
      const double den = arg(1);
      if (den == 0.0) {
        std::ostringstream os;
        os.precision(17);
        os << "division by zero at offset " << n.offset << " (x = " << x << ")";
        throw DomainError(os.str());
      }
      return arg(0) / den;
    }
    case Op::Pow: {
      const double base = arg(0);
      const double e = arg(1);
      if (e != std::round(e) || std::abs(e) > 1024.0) {
        std::ostringstream os;
        os << "exponent " << e << " at offset " << n.offset << " is not a small integer";
        throw DomainError(os.str());
      }
      if (base == 0.0 && e < 0.0) {
        std::ostringstream os;
        os << "zero raised to a negative power at offset " << n.offset;
        throw DomainError(os.str());
      }
      return std::pow(base, static_cast<int>(e));
    }
    case Op::Sin: return std::sin(arg(0));
    case Op::Cos: return std::cos(arg(0));
    case Op::Exp: return std::exp(arg(0));
    case Op::Abs: return std::abs(arg(0));
    case Op::Min:
    case Op::Max: {
      double best = arg(0);
      for (std::size_t i = 1; i < n.args.size(); ++i) {
        best = n.op == Op::Min ? std::min(best, arg(i)) : std::max(best, arg(i));
      }
      return best;
    }
  }
  return 0.0;
}

void render(const Expr::Node& n, std::string& out) {
  static const char* kNames[] = {"", "", "", "+", "-", "*", "/", "^",
                                 "sin", "cos", "exp", "abs", "min", "max"};
  switch (n.op) {
    case Op::Number: {
      char buf[32];
      const auto r = std::to_chars(buf, buf + sizeof buf, n.value);
      out.append(buf, r.ptr);
      return;
    }
    case Op::X: out += 'x'; return;
    case Op::Neg:
      out += "(-";
      render(*n.args[0], out);
      out += ')';
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
    case Op::Pow:
      out += '(';
      render(*n.args[0], out);
      out += kNames[static_cast<int>(n.op)];
      render(*n.args[1], out);
      out += ')';
      return;
    default:
      out += kNames[static_cast<int>(n.op)];
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i > 0) out += ',';
        render(*n.args[i], out);
      }
      out += ')';
  }
}

}  // namespace

Expr Expr::parse(std::string_view source) {
  Parser parser(source);
  NodePtr root = parser.parse();
  return Expr(std::string(source), std::move(root));
}

double Expr::operator()(double x) const { return eval(*root_, x); }

std::string Expr::to_string() const {
  std::string out;
  render(*root_, out);
  return out;
}

}  // namespace rsl
