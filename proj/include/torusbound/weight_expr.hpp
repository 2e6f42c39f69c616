#pragma once

#include <cctype>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "torusbound/core.hpp"
#include "torusbound/moduli.hpp"

namespace torusbound {

// ---------------------------------------------------------------------------
// Tiny expression language for conformal weights, evaluated at assembly time:
// numbers, + - * /, unary minus, cos/sin/exp, parentheses, and the variables
//   x, y           Cartesian torus coordinates
//   u, v           lattice coordinates (u = x - a y / b, v = y / b)
//   a, b, pi       torus parameters and the circle constant
// Example: "1 + 0.3*cos(2*pi*u)" or "exp(0.5*sin(2*pi*u)*sin(2*pi*v))".
// ---------------------------------------------------------------------------

struct WeightEnv {
    double x = 0.0, y = 0.0, u = 0.0, v = 0.0, a = 0.0, b = 1.0;
};

namespace expr_detail {

struct Node {
    virtual ~Node() = default;
    virtual double eval(const WeightEnv& env) const = 0;
};
using NodePtr = std::shared_ptr<const Node>;

struct Num : Node {
    double value;
    explicit Num(double v) : value(v) {}
    double eval(const WeightEnv&) const override { return value; }
};

struct Var : Node {
    char name;
    explicit Var(char n) : name(n) {}
    double eval(const WeightEnv& e) const override {
        switch (name) {
            case 'x': return e.x;
            case 'y': return e.y;
            case 'u': return e.u;
            case 'v': return e.v;
            case 'a': return e.a;
            case 'b': return e.b;
            default: return 0.0;
        }
    }
};

struct Binary : Node {
    char op;
    NodePtr lhs, rhs;
    Binary(char o, NodePtr l, NodePtr r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
    double eval(const WeightEnv& e) const override {
        const double l = lhs->eval(e), r = rhs->eval(e);
        switch (op) {
            case '+': return l + r;
            case '-': return l - r;
            case '*': return l * r;
            default: return l / r;
        }
    }
};

struct Call : Node {
    int fn;  // 0 cos, 1 sin, 2 exp
    NodePtr arg;
    Call(int f, NodePtr a) : fn(f), arg(std::move(a)) {}
    double eval(const WeightEnv& e) const override {
        const double v = arg->eval(e);
        return fn == 0 ? std::cos(v) : fn == 1 ? std::sin(v) : std::exp(v);
    }
};

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    NodePtr parse() {
        NodePtr root = expr();
        skip_ws();
        if (pos_ != src_.size())
            fail("unexpected trailing input");
        return root;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("weight expression: " + what + " at position " +
                                    std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr lhs = term();
        for (;;) {
            if (consume('+'))
                lhs = std::make_shared<Binary>('+', lhs, term());
            else if (consume('-'))
                lhs = std::make_shared<Binary>('-', lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = factor();
        for (;;) {
            if (consume('*'))
                lhs = std::make_shared<Binary>('*', lhs, factor());
            else if (consume('/'))
                lhs = std::make_shared<Binary>('/', lhs, factor());
            else
                return lhs;
        }
    }

    NodePtr factor() {
        skip_ws();
        if (consume('-')) return std::make_shared<Binary>('-', std::make_shared<Num>(0.0), factor());
        if (consume('+')) return factor();
        if (consume('(')) {
            NodePtr inner = expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return ident();
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        std::size_t end = pos_;
        while (end < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.' ||
                src_[end] == 'e' || src_[end] == 'E' ||
                ((src_[end] == '+' || src_[end] == '-') && end > pos_ &&
                 (src_[end - 1] == 'e' || src_[end - 1] == 'E'))))
            ++end;
        const std::string tok = src_.substr(pos_, end - pos_);
        try {
            const double v = std::stod(tok);
            pos_ = end;
            return std::make_shared<Num>(v);
        } catch (const std::exception&) {
            fail("bad number '" + tok + "'");
        }
    }

    NodePtr ident() {
        std::size_t end = pos_;
        while (end < src_.size() && std::isalpha(static_cast<unsigned char>(src_[end]))) ++end;
        const std::string name = src_.substr(pos_, end - pos_);
        pos_ = end;
        if (name == "pi") return std::make_shared<Num>(kPi);
        if (name == "cos" || name == "sin" || name == "exp") {
            if (!consume('(')) fail("expected '(' after " + name);
            NodePtr arg = expr();
            if (!consume(')')) fail("expected ')'");
            const int fn = name == "cos" ? 0 : name == "sin" ? 1 : 2;
            return std::make_shared<Call>(fn, arg);
        }
        if (name.size() == 1 && std::string("xyuvab").find(name[0]) != std::string::npos)
            return std::make_shared<Var>(name[0]);
        fail("unknown identifier '" + name + "'");
    }
};

}  // namespace expr_detail

/// Compiles a weight expression to a callable in Cartesian coordinates for
/// the given torus.
inline std::function<double(double, double)> parse_weight_expression(const std::string& src,
                                                                     const TorusParams& params) {
    const expr_detail::NodePtr root = expr_detail::Parser(src).parse();
    const double a = params.a, b = params.b;
    return [root, a, b](double x, double y) {
        WeightEnv env;
        env.x = x;
        env.y = y;
        env.v = y / b;
        env.u = x - a * env.v;
        env.a = a;
        env.b = b;
        return root->eval(env);
    };
}

}  // namespace torusbound
