#pragma once

// Integer expressions used by the seiferter catalog for family parameters,
// linking numbers and validity predicates.
//
//   expr    := or
//   or      := and ("||" and)*
//   and     := cmp ("&&" cmp)*
//   cmp     := sum (("==" | "!=" | "<" | "<=" | ">" | ">=") sum)?
//   sum     := product (("+" | "-") product)*
//   product := unary (("*" | "%") unary)*
//   unary   := ("-" | "!") unary | primary
//   primary := integer | "true" | "false" | name | name "(" args ")" | "(" expr ")"
//
// Functions: abs(x), gcd(a, b), min(a, b), max(a, b), odd(x), even(x).
// Booleans are the integers 0 and 1.

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ssn/arith.hpp"
#include "ssn/errors.hpp"

namespace ssn {

class UnboundVariable : public Error {
public:
    using Error::Error;
};

using Bindings = std::map<std::string, Int, std::less<>>;

class Expr {
public:
    Expr() : text_("0"), root_(make(Node::Op::Const, {})) {}

    static Expr parse(const std::string& text) {
        Parser parser{text};
        Expr e(parser.parse_all());
        e.text_ = text;
        return e;
    }

    static Expr constant(Int v) { return parse(std::to_string(v)); }

    Int eval(const Bindings& vars) const { return eval_node(*root_, vars); }
    bool test(const Bindings& vars) const { return eval(vars) != 0; }

    const std::string& text() const { return text_; }

    std::set<std::string> variables() const {
        std::set<std::string> out;
        collect(*root_, out);
        return out;
    }

    bool is_constant() const { return variables().empty(); }

private:
    struct Node {
        enum class Op {
            Const, Var, Neg, Not, Add, Sub, Mul, Mod,
            Eq, Ne, Lt, Le, Gt, Ge, And, Or, Call
        };
        Op op = Op::Const;
        Int value = 0;
        std::string name;
        std::vector<std::shared_ptr<const Node>> args;
    };
    using NodePtr = std::shared_ptr<const Node>;

    explicit Expr(NodePtr root) : root_(std::move(root)) {}

    static NodePtr make(Node::Op op, std::vector<NodePtr> args, Int value = 0, std::string name = {}) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->value = value;
        n->name = std::move(name);
        n->args = std::move(args);
        return n;
    }

    struct Parser {
        const std::string& src;
        std::size_t pos = 0;

        [[noreturn]] void fail(const std::string& msg) const {
            throw ParseError("expression '" + src + "': " + msg + " at offset " + std::to_string(pos));
        }

        void skip() {
            while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        }

        bool accept(std::string_view tok) {
            skip();
            if (src.compare(pos, tok.size(), tok) == 0) {
                // "<" must not swallow the first char of "<=" and so on.
                if (tok.size() == 1 && pos + 1 < src.size() && src[pos + 1] == '=' &&
                    (tok == "<" || tok == ">" || tok == "!" || tok == "=")) {
                    return false;
                }
                pos += tok.size();
                return true;
            }
            return false;
        }

        NodePtr parse_all() {
            NodePtr n = parse_or();
            skip();
            if (pos != src.size()) fail("unexpected trailing input");
            return n;
        }

        NodePtr parse_or() {
            NodePtr lhs = parse_and();
            while (accept("||")) lhs = make(Node::Op::Or, {lhs, parse_and()});
            return lhs;
        }

        NodePtr parse_and() {
            NodePtr lhs = parse_cmp();
            while (accept("&&")) lhs = make(Node::Op::And, {lhs, parse_cmp()});
            return lhs;
        }

        NodePtr parse_cmp() {
            NodePtr lhs = parse_sum();
            static const std::pair<const char*, Node::Op> ops[] = {
                {"==", Node::Op::Eq}, {"!=", Node::Op::Ne}, {"<=", Node::Op::Le},
                {">=", Node::Op::Ge}, {"<", Node::Op::Lt},  {">", Node::Op::Gt}};
            for (const auto& [tok, op] : ops) {
                if (accept(tok)) return make(op, {lhs, parse_sum()});
            }
            return lhs;
        }

        NodePtr parse_sum() {
            NodePtr lhs = parse_product();
            for (;;) {
                if (accept("+")) {
                    lhs = make(Node::Op::Add, {lhs, parse_product()});
                } else if (accept("-")) {
                    lhs = make(Node::Op::Sub, {lhs, parse_product()});
                } else {
                    return lhs;
                }
            }
        }

        NodePtr parse_product() {
            NodePtr lhs = parse_unary();
            for (;;) {
                if (accept("*")) {
                    lhs = make(Node::Op::Mul, {lhs, parse_unary()});
                } else if (accept("%")) {
                    lhs = make(Node::Op::Mod, {lhs, parse_unary()});
                } else {
                    return lhs;
                }
            }
        }

        NodePtr parse_unary() {
            if (accept("-")) return make(Node::Op::Neg, {parse_unary()});
            if (accept("!")) return make(Node::Op::Not, {parse_unary()});
            return parse_primary();
        }

        NodePtr parse_primary() {
            skip();
            if (pos >= src.size()) fail("unexpected end of input");
            if (accept("(")) {
                NodePtr inner = parse_or();
                if (!accept(")")) fail("expected ')'");
                return inner;
            }
            char c = src[pos];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                Int v = 0;
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                    v = checked_add(checked_mul(v, 10), src[pos] - '0');
                    ++pos;
                }
                return make(Node::Op::Const, {}, v);
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos;
                while (pos < src.size() &&
                       (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
                    ++pos;
                }
                std::string name = src.substr(start, pos - start);
                if (name == "true") return make(Node::Op::Const, {}, 1);
                if (name == "false") return make(Node::Op::Const, {}, 0);
                if (accept("(")) {
                    std::vector<NodePtr> args;
                    if (!accept(")")) {
                        do {
                            args.push_back(parse_or());
                        } while (accept(","));
                        if (!accept(")")) fail("expected ')' after arguments");
                    }
                    check_call(name, args.size());
                    return make(Node::Op::Call, std::move(args), 0, std::move(name));
                }
                return make(Node::Op::Var, {}, 0, std::move(name));
            }
            fail(std::string("unexpected character '") + c + "'");
        }

        void check_call(const std::string& name, std::size_t arity) const {
            static const std::map<std::string, std::size_t, std::less<>> known = {
                {"abs", 1}, {"odd", 1}, {"even", 1}, {"gcd", 2}, {"min", 2}, {"max", 2}};
            auto it = known.find(name);
            if (it == known.end()) fail("unknown function '" + name + "'");
            if (it->second != arity) fail("wrong number of arguments to '" + name + "'");
        }
    };

    static Int eval_node(const Node& n, const Bindings& vars) {
        using Op = Node::Op;
        auto arg = [&](std::size_t i) { return eval_node(*n.args[i], vars); };
        switch (n.op) {
            case Op::Const: return n.value;
            case Op::Var: {
                auto it = vars.find(n.name);
                if (it == vars.end()) throw UnboundVariable("unbound variable '" + n.name + "'");
                return it->second;
            }
            case Op::Neg: return checked_neg(arg(0));
            case Op::Not: return arg(0) == 0;
            case Op::Add: return checked_add(arg(0), arg(1));
            case Op::Sub: return checked_sub(arg(0), arg(1));
            case Op::Mul: return checked_mul(arg(0), arg(1));
            case Op::Mod: {
                Int d = arg(1);
                if (d == 0) throw DomainError("modulo by zero in catalog expression");
                return mod_floor(arg(0), checked_abs(d));
            }
            case Op::Eq: return arg(0) == arg(1);
            case Op::Ne: return arg(0) != arg(1);
            case Op::Lt: return arg(0) < arg(1);
            case Op::Le: return arg(0) <= arg(1);
            case Op::Gt: return arg(0) > arg(1);
            case Op::Ge: return arg(0) >= arg(1);
            case Op::And: return arg(0) != 0 && arg(1) != 0;
            case Op::Or: return arg(0) != 0 || arg(1) != 0;
            case Op::Call: {
                if (n.name == "abs") return checked_abs(arg(0));
                if (n.name == "odd") return mod_floor(arg(0), 2) == 1;
                if (n.name == "even") return mod_floor(arg(0), 2) == 0;
                if (n.name == "gcd") return gcd(arg(0), arg(1));
                if (n.name == "min") return std::min(arg(0), arg(1));
                return std::max(arg(0), arg(1));
            }
        }
        return 0;
    }

    static void collect(const Node& n, std::set<std::string>& out) {
        if (n.op == Node::Op::Var) out.insert(n.name);
        for (const auto& a : n.args) collect(*a, out);
    }

    std::string text_;
    NodePtr root_;
};

}  // namespace ssn
