#include "rt3d/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "rt3d/common.hpp"

namespace rt3d {

struct Expr::Node {
    enum class Kind { constant, variable, unary, binary, call } kind;
    double value = 0;
    char op = 0;
    int func = 0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

enum Func { kSin, kCos, kTan, kSqrt, kExp, kLog, kAbs };

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw config_error("expression error at position " + std::to_string(pos + 1) + ": " + msg);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    NodePtr make_const(double v) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::constant;
        n->value = v;
        return n;
    }

    NodePtr make_binary(char op, NodePtr a, NodePtr b) {
        auto n = std::make_shared<Expr::Node>();
        n->kind = Expr::Node::Kind::binary;
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            skip_ws();
            if (eat('+'))
                lhs = make_binary('+', lhs, parse_term());
            else if (eat('-'))
                lhs = make_binary('-', lhs, parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            skip_ws();
            if (eat('*'))
                lhs = make_binary('*', lhs, parse_unary());
            else if (eat('/'))
                lhs = make_binary('/', lhs, parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        skip_ws();
        if (eat('-')) {
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Node::Kind::unary;
            n->a = parse_unary();
            return n;
        }
        (void)eat('+');
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        skip_ws();
        if (eat('^')) return make_binary('^', base, parse_unary());  // right associative
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of expression");
        const char c = s[pos];
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expr();
            if (!eat(')')) fail("missing ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double v = std::strtod(s.c_str() + pos, &end);
            if (end == s.c_str() + pos) fail("bad number");
            pos = static_cast<size_t>(end - s.c_str());
            return make_const(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            const std::string name = s.substr(start, pos - start);
            if (name == "t") {
                auto n = std::make_shared<Expr::Node>();
                n->kind = Expr::Node::Kind::variable;
                return n;
            }
            if (name == "pi") return make_const(kPi);
            if (name == "e") return make_const(std::exp(1.0));
            if (name == "golden") return make_const(0.5 * (1.0 + std::sqrt(5.0)));
            int func = -1;
            if (name == "sin") func = kSin;
            else if (name == "cos") func = kCos;
            else if (name == "tan") func = kTan;
            else if (name == "sqrt") func = kSqrt;
            else if (name == "exp") func = kExp;
            else if (name == "log") func = kLog;
            else if (name == "abs") func = kAbs;
            if (func < 0) fail("unknown identifier '" + name + "'");
            if (!eat('(')) fail("expected '(' after '" + name + "'");
            NodePtr arg = parse_expr();
            if (!eat(')')) fail("missing ')'");
            auto n = std::make_shared<Expr::Node>();
            n->kind = Expr::Node::Kind::call;
            n->func = func;
            n->a = std::move(arg);
            return n;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

double eval_node(const Expr::Node& n, double t) {
    switch (n.kind) {
        case Expr::Node::Kind::constant: return n.value;
        case Expr::Node::Kind::variable: return t;
        case Expr::Node::Kind::unary: return -eval_node(*n.a, t);
        case Expr::Node::Kind::binary: {
            const double a = eval_node(*n.a, t);
            const double b = eval_node(*n.b, t);
            switch (n.op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            return 0;
        }
        case Expr::Node::Kind::call: {
            const double a = eval_node(*n.a, t);
            switch (n.func) {
                case kSin: return std::sin(a);
                case kCos: return std::cos(a);
                case kTan: return std::tan(a);
                case kSqrt: return std::sqrt(a);
                case kExp: return std::exp(a);
                case kLog: return std::log(a);
                case kAbs: return std::fabs(a);
            }
            return 0;
        }
    }
    return 0;
}

}  // namespace

Expr Expr::parse(const std::string& text) {
    Parser p(text);
    Expr e;
    e.root_ = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters");
    e.text_ = text;
    return e;
}

double Expr::operator()(double t) const { return eval_node(*root_, t); }

std::function<double(double)> Expr::fn() const {
    auto root = root_;
    return [root](double t) { return eval_node(*root, t); };
}

}  // namespace rt3d
