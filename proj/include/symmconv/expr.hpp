#pragma once

// Parser and evaluator for univariate real-valued function expressions.
//
// Grammar (EBNF):
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := ("-")? power
//   power  := atom ("^" factor)?
//   atom   := number | ident | ident "(" expr ("," expr)* ")" | "(" expr ")"
//
// "^" is right-associative and binds tighter than unary minus.  The variable
// is "x"; ln, exp, sin, cos, abs, sqrt, pow are reserved function names and
// every other identifier is a named parameter resolved at evaluation time.

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "detail/format.hpp"

namespace symmconv {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset,
               std::vector<std::string> expected = {})
        : std::runtime_error(message + " at offset " + std::to_string(offset) +
                             (expected.empty() ? "" : " (expected " + join(expected) + ")")),
          offset_(offset),
          expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string join(const std::vector<std::string>& items) {
        std::string out;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (i > 0) out += i + 1 == items.size() ? " or " : ", ";
            out += items[i];
        }
        return out;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& reason, double x, std::string subexpression)
        : std::runtime_error(reason + " in '" + subexpression + "' at x=" + std::to_string(x)),
          x_(x),
          subexpression_(std::move(subexpression)) {}

    double x() const noexcept { return x_; }
    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    double x_;
    std::string subexpression_;
};

// Parameter name -> value table.  Values must be finite.
class ParamBindings {
public:
    ParamBindings() = default;
    ParamBindings(std::initializer_list<std::pair<std::string, double>> init) {
        for (const auto& [name, value] : init) set(name, value);
    }

    ParamBindings& set(const std::string& name, double value) {
        if (!std::isfinite(value))
            throw std::invalid_argument("binding for '" + name + "' must be finite");
        values_[name] = value;
        return *this;
    }

    bool contains(const std::string& name) const { return values_.count(name) != 0; }

    const double* find(const std::string& name) const {
        auto it = values_.find(name);
        return it == values_.end() ? nullptr : &it->second;
    }

    const std::map<std::string, double>& values() const noexcept { return values_; }

private:
    std::map<std::string, double> values_;
};

enum class UnaryOp : std::uint8_t { neg, ln, exp, sin, cos, abs, sqrt };
enum class BinaryOp : std::uint8_t { add, sub, mul, div, pow };

struct ExprNode {
    enum class Kind : std::uint8_t { number, variable, parameter, unary, binary };

    Kind kind = Kind::number;
    UnaryOp un = UnaryOp::neg;
    BinaryOp bin = BinaryOp::add;
    double number = 0.0;
    std::uint32_t lhs = 0;
    std::uint32_t rhs = 0;
    std::string name;                 // parameter name
    std::uint32_t begin = 0, end = 0; // source byte span
};

// Immutable expression tree.  Nodes are stored child-before-parent in a flat
// vector, so evaluation is a single forward pass; instances may be shared and
// evaluated concurrently.
class FuncExpr {
public:
    static FuncExpr parse(std::string_view source);

    double evaluate(double x, const ParamBindings& bindings = {}) const;

    // Minimal-parenthesis rendering; parsing it back yields a structurally
    // identical tree.
    std::string to_string() const { return print(root()); }

    // Distinct parameter names referenced by the tree, sorted.
    std::vector<std::string> parameters() const {
        std::vector<std::string> out;
        for (const auto& n : nodes_)
            if (n.kind == ExprNode::Kind::parameter) out.push_back(n.name);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    std::vector<std::string> missing_parameters(const ParamBindings& bindings) const {
        std::vector<std::string> out;
        for (const auto& name : parameters())
            if (!bindings.contains(name)) out.push_back(name);
        return out;
    }

    const std::string& source() const noexcept { return source_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }

    // Structural equality: shapes, operators, names and literal values; source
    // spans are ignored.
    friend bool structurally_equal(const FuncExpr& a, const FuncExpr& b) {
        return a.equal_at(a.root(), b, b.root());
    }

private:
    friend class ExprParser;

    std::uint32_t root() const noexcept { return static_cast<std::uint32_t>(nodes_.size() - 1); }

    std::string subexpression(const ExprNode& n) const {
        return source_.substr(n.begin, n.end - n.begin);
    }

    double checked_pow(double u, double v, double x, const ExprNode& n) const;
    bool equal_at(std::uint32_t i, const FuncExpr& other, std::uint32_t j) const;
    std::string print(std::uint32_t i) const;
    std::string print_wrapped(std::uint32_t i, int min_prec) const;
    int precedence(std::uint32_t i) const;

    std::vector<ExprNode> nodes_;
    std::string source_;
};

namespace detail {

struct Token {
    enum class Kind : std::uint8_t {
        number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end
    };
    Kind kind = Kind::end;
    std::size_t begin = 0, end = 0;
    double value = 0.0;     // number
    std::string_view text;  // ident
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            Token t = next();
            out.push_back(t);
            if (t.kind == Token::Kind::end) return out;
        }
    }

private:
    Token next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        Token t;
        t.begin = pos_;
        if (pos_ >= src_.size()) {
            t.kind = Token::Kind::end;
            t.end = pos_;
            return t;
        }
        char c = src_[pos_];
        switch (c) {
            case '+': t.kind = Token::Kind::plus; break;
            case '-': t.kind = Token::Kind::minus; break;
            case '*': t.kind = Token::Kind::star; break;
            case '/': t.kind = Token::Kind::slash; break;
            case '^': t.kind = Token::Kind::caret; break;
            case '(': t.kind = Token::Kind::lparen; break;
            case ')': t.kind = Token::Kind::rparen; break;
            case ',': t.kind = Token::Kind::comma; break;
            default:
                if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
                if (std::isalpha(static_cast<unsigned char>(c))) return ident();
                throw ParseError(std::string("unexpected character '") + c + "'", pos_);
        }
        ++pos_;
        t.end = pos_;
        return t;
    }

    Token number() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ == start + 1 && src_[start] == '.')
            throw ParseError("malformed number", start, {"digit"});
        // Exponent only when at least one digit follows the sign.
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_ + 1;
            if (mark < src_.size() && (src_[mark] == '+' || src_[mark] == '-')) ++mark;
            if (mark < src_.size() && std::isdigit(static_cast<unsigned char>(src_[mark]))) {
                pos_ = mark;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            }
        }
        Token t;
        t.kind = Token::Kind::number;
        t.begin = start;
        t.end = pos_;
        const char* first = src_.data() + start;
        auto [ptr, ec] = std::from_chars(first, src_.data() + pos_, t.value);
        if (ec != std::errc() || ptr != src_.data() + pos_)
            throw ParseError("malformed number", start, {"number"});
        return t;
    }

    Token ident() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        Token t;
        t.kind = Token::Kind::ident;
        t.begin = start;
        t.end = pos_;
        t.text = src_.substr(start, pos_ - start);
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

} // namespace detail

class ExprParser {
public:
    explicit ExprParser(std::string_view source)
        : source_(source), tokens_(detail::Lexer(source).run()) {}

    FuncExpr run() {
        std::uint32_t root = expr();
        if (!at(detail::Token::Kind::end))
            throw ParseError("unexpected trailing input", peek().begin,
                             {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        FuncExpr out;
        out.source_ = std::string(source_);
        out.nodes_ = std::move(nodes_);
        if (root + 1 != out.nodes_.size())
            throw ParseError("internal parser error", 0); // root is always last
        return out;
    }

private:
    using Token = detail::Token;

    static constexpr struct FunctionEntry {
        std::string_view name;
        UnaryOp op;
    } kUnaryFunctions[] = {
        {"ln", UnaryOp::ln},   {"exp", UnaryOp::exp},   {"sin", UnaryOp::sin},
        {"cos", UnaryOp::cos}, {"abs", UnaryOp::abs},   {"sqrt", UnaryOp::sqrt},
    };

    const Token& peek() const { return tokens_[cursor_]; }
    bool at(Token::Kind k) const { return peek().kind == k; }
    Token take() { return tokens_[cursor_++]; }

    void expect(Token::Kind k, const char* what) {
        if (!at(k)) throw ParseError("syntax error", peek().begin, {what});
        take();
    }

    std::uint32_t push(ExprNode n) {
        nodes_.push_back(std::move(n));
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }

    std::uint32_t expr() {
        std::uint32_t lhs = term();
        while (at(Token::Kind::plus) || at(Token::Kind::minus)) {
            BinaryOp op = take().kind == Token::Kind::plus ? BinaryOp::add : BinaryOp::sub;
            std::uint32_t rhs = term();
            lhs = binary(op, lhs, rhs);
        }
        return lhs;
    }

    std::uint32_t term() {
        std::uint32_t lhs = factor();
        while (at(Token::Kind::star) || at(Token::Kind::slash)) {
            BinaryOp op = take().kind == Token::Kind::star ? BinaryOp::mul : BinaryOp::div;
            std::uint32_t rhs = factor();
            lhs = binary(op, lhs, rhs);
        }
        return lhs;
    }

    std::uint32_t factor() {
        if (at(Token::Kind::minus)) {
            Token minus = take();
            std::uint32_t operand = power();
            ExprNode n;
            n.kind = ExprNode::Kind::unary;
            n.un = UnaryOp::neg;
            n.lhs = operand;
            n.begin = static_cast<std::uint32_t>(minus.begin);
            n.end = nodes_[operand].end;
            return push(std::move(n));
        }
        return power();
    }

    std::uint32_t power() {
        std::uint32_t base = atom();
        if (at(Token::Kind::caret)) {
            take();
            std::uint32_t exponent = factor(); // right-associative
            return binary(BinaryOp::pow, base, exponent);
        }
        return base;
    }

    std::uint32_t atom() {
        if (at(Token::Kind::number)) {
            Token t = take();
            ExprNode n;
            n.kind = ExprNode::Kind::number;
            n.number = t.value;
            n.begin = static_cast<std::uint32_t>(t.begin);
            n.end = static_cast<std::uint32_t>(t.end);
            return push(std::move(n));
        }
        if (at(Token::Kind::ident)) {
            Token t = take();
            if (at(Token::Kind::lparen)) return call(t);
            ExprNode n;
            n.begin = static_cast<std::uint32_t>(t.begin);
            n.end = static_cast<std::uint32_t>(t.end);
            if (t.text == "x") {
                n.kind = ExprNode::Kind::variable;
            } else {
                n.kind = ExprNode::Kind::parameter;
                n.name = std::string(t.text);
            }
            return push(std::move(n));
        }
        if (at(Token::Kind::lparen)) {
            take();
            std::uint32_t inner = expr();
            expect(Token::Kind::rparen, "')'");
            return inner;
        }
        throw ParseError("syntax error", peek().begin, {"number", "identifier", "'('", "'-'"});
    }

    std::uint32_t call(const Token& name) {
        take(); // '('
        std::vector<std::uint32_t> args;
        args.push_back(expr());
        while (at(Token::Kind::comma)) {
            take();
            args.push_back(expr());
        }
        Token rparen = peek();
        expect(Token::Kind::rparen, "')' or ','");

        if (name.text == "pow") {
            if (args.size() != 2)
                throw ParseError("function 'pow' expects 2 arguments", name.begin);
            std::uint32_t node = binary(BinaryOp::pow, args[0], args[1]);
            nodes_[node].begin = static_cast<std::uint32_t>(name.begin);
            nodes_[node].end = static_cast<std::uint32_t>(rparen.end);
            return node;
        }
        for (const auto& fn : kUnaryFunctions) {
            if (fn.name != name.text) continue;
            if (args.size() != 1)
                throw ParseError("function '" + std::string(name.text) + "' expects 1 argument",
                                 name.begin);
            ExprNode n;
            n.kind = ExprNode::Kind::unary;
            n.un = fn.op;
            n.lhs = args[0];
            n.begin = static_cast<std::uint32_t>(name.begin);
            n.end = static_cast<std::uint32_t>(rparen.end);
            return push(std::move(n));
        }
        throw ParseError("unknown function '" + std::string(name.text) + "'", name.begin,
                         {"ln", "exp", "sin", "cos", "abs", "sqrt", "pow"});
    }

    std::uint32_t binary(BinaryOp op, std::uint32_t lhs, std::uint32_t rhs) {
        ExprNode n;
        n.kind = ExprNode::Kind::binary;
        n.bin = op;
        n.lhs = lhs;
        n.rhs = rhs;
        n.begin = nodes_[lhs].begin;
        n.end = nodes_[rhs].end;
        return push(std::move(n));
    }

    std::string_view source_;
    std::vector<Token> tokens_;
    std::size_t cursor_ = 0;
    std::vector<ExprNode> nodes_;
};

inline FuncExpr FuncExpr::parse(std::string_view source) {
    return ExprParser(source).run();
}

inline double FuncExpr::evaluate(double x, const ParamBindings& bindings) const {
    std::array<double, 64> stack_buf;
    std::vector<double> heap_buf;
    double* v = stack_buf.data();
    if (nodes_.size() > stack_buf.size()) {
        heap_buf.resize(nodes_.size());
        v = heap_buf.data();
    }

    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const ExprNode& n = nodes_[i];
        double r = 0.0;
        switch (n.kind) {
            case ExprNode::Kind::number: r = n.number; break;
            case ExprNode::Kind::variable: r = x; break;
            case ExprNode::Kind::parameter: {
                const double* p = bindings.find(n.name);
                if (!p) throw EvalError("unbound parameter '" + n.name + "'", x, subexpression(n));
                r = *p;
                break;
            }
            case ExprNode::Kind::unary: {
                double u = v[n.lhs];
                switch (n.un) {
                    case UnaryOp::neg: r = -u; break;
                    case UnaryOp::ln:
                        if (!(u > 0.0))
                            throw EvalError("ln of non-positive argument", x, subexpression(n));
                        r = std::log(u);
                        break;
                    case UnaryOp::exp: r = std::exp(u); break;
                    case UnaryOp::sin: r = std::sin(u); break;
                    case UnaryOp::cos: r = std::cos(u); break;
                    case UnaryOp::abs: r = std::fabs(u); break;
                    case UnaryOp::sqrt:
                        if (u < 0.0)
                            throw EvalError("sqrt of negative argument", x, subexpression(n));
                        r = std::sqrt(u);
                        break;
                }
                break;
            }
            case ExprNode::Kind::binary: {
                double l = v[n.lhs], rr = v[n.rhs];
                switch (n.bin) {
                    case BinaryOp::add: r = l + rr; break;
                    case BinaryOp::sub: r = l - rr; break;
                    case BinaryOp::mul: r = l * rr; break;
                    case BinaryOp::div:
                        if (rr == 0.0) throw EvalError("division by zero", x, subexpression(n));
                        r = l / rr;
                        break;
                    case BinaryOp::pow: r = checked_pow(l, rr, x, n); break;
                }
                break;
            }
        }
        if (!std::isfinite(r))
            throw EvalError("non-finite result", x, subexpression(n));
        v[i] = r;
    }
    return v[nodes_.size() - 1];
}

// u^v: an exponent integral within 1e-12 uses integer semantics (negative
// bases allowed); otherwise the base must be non-negative, and zero only with
// a positive exponent.
inline double FuncExpr::checked_pow(double u, double v, double x, const ExprNode& n) const {
    double rounded = std::round(v);
    bool integral = std::fabs(v - rounded) <= 1e-12;
    if (integral) {
        if (u == 0.0 && rounded < 0.0)
            throw EvalError("zero base with negative exponent", x, subexpression(n));
        return std::pow(u, rounded);
    }
    if (u < 0.0)
        throw EvalError("negative base with non-integer exponent", x, subexpression(n));
    if (u == 0.0) {
        if (v < 0.0) throw EvalError("zero base with negative exponent", x, subexpression(n));
        return 0.0;
    }
    return std::pow(u, v);
}

inline bool FuncExpr::equal_at(std::uint32_t i, const FuncExpr& other, std::uint32_t j) const {
    const ExprNode& a = nodes_[i];
    const ExprNode& b = other.nodes_[j];
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprNode::Kind::number: {
            // bitwise: round-trip printing must preserve the literal exactly
            std::uint64_t ba, bb;
            std::memcpy(&ba, &a.number, sizeof ba);
            std::memcpy(&bb, &b.number, sizeof bb);
            return ba == bb;
        }
        case ExprNode::Kind::variable: return true;
        case ExprNode::Kind::parameter: return a.name == b.name;
        case ExprNode::Kind::unary:
            return a.un == b.un && equal_at(a.lhs, other, b.lhs);
        case ExprNode::Kind::binary:
            return a.bin == b.bin && equal_at(a.lhs, other, b.lhs) &&
                   equal_at(a.rhs, other, b.rhs);
    }
    return false;
}

// Printing precedence levels: +,- = 1; *,/ = 2; unary - = 3; ^ = 4; atoms = 5.
inline int FuncExpr::precedence(std::uint32_t i) const {
    const ExprNode& n = nodes_[i];
    switch (n.kind) {
        case ExprNode::Kind::unary: return n.un == UnaryOp::neg ? 3 : 5;
        case ExprNode::Kind::binary:
            switch (n.bin) {
                case BinaryOp::add:
                case BinaryOp::sub: return 1;
                case BinaryOp::mul:
                case BinaryOp::div: return 2;
                case BinaryOp::pow: return 4;
            }
            return 5;
        default: return 5;
    }
}

inline std::string FuncExpr::print_wrapped(std::uint32_t i, int min_prec) const {
    std::string s = print(i);
    if (precedence(i) < min_prec) return "(" + s + ")";
    return s;
}

inline std::string FuncExpr::print(std::uint32_t i) const {
    const ExprNode& n = nodes_[i];
    switch (n.kind) {
        case ExprNode::Kind::number: return detail::format_shortest(n.number);
        case ExprNode::Kind::variable: return "x";
        case ExprNode::Kind::parameter: return n.name;
        case ExprNode::Kind::unary:
            switch (n.un) {
                case UnaryOp::neg: return "-" + print_wrapped(n.lhs, 3);
                case UnaryOp::ln: return "ln(" + print(n.lhs) + ")";
                case UnaryOp::exp: return "exp(" + print(n.lhs) + ")";
                case UnaryOp::sin: return "sin(" + print(n.lhs) + ")";
                case UnaryOp::cos: return "cos(" + print(n.lhs) + ")";
                case UnaryOp::abs: return "abs(" + print(n.lhs) + ")";
                case UnaryOp::sqrt: return "sqrt(" + print(n.lhs) + ")";
            }
            return {};
        case ExprNode::Kind::binary:
            switch (n.bin) {
                case BinaryOp::add: return print_wrapped(n.lhs, 1) + " + " + print_wrapped(n.rhs, 2);
                case BinaryOp::sub: return print_wrapped(n.lhs, 1) + " - " + print_wrapped(n.rhs, 2);
                case BinaryOp::mul: return print_wrapped(n.lhs, 2) + "*" + print_wrapped(n.rhs, 3);
                case BinaryOp::div: return print_wrapped(n.lhs, 2) + "/" + print_wrapped(n.rhs, 3);
                case BinaryOp::pow: return print_wrapped(n.lhs, 5) + "^" + print_wrapped(n.rhs, 3);
            }
            return {};
    }
    return {};
}

// Expression plus bindings as a plain double(double) callable.
class BoundExpr {
public:
    BoundExpr(FuncExpr expr, ParamBindings bindings)
        : expr_(std::move(expr)), bindings_(std::move(bindings)) {}

    double operator()(double x) const { return expr_.evaluate(x, bindings_); }

    const FuncExpr& expr() const noexcept { return expr_; }
    const ParamBindings& bindings() const noexcept { return bindings_; }

private:
    FuncExpr expr_;
    ParamBindings bindings_;
};

} // namespace symmconv
