#include "mnv/cli/expr.hpp"

#include <cctype>

#include "mnv/errors.hpp"

namespace mnv {

namespace {

constexpr unsigned kMaxExponent = 1000;
constexpr int kMaxNesting = 200;

ExprPtr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

ExprPtr binary(ExprNode::Kind k, ExprPtr a, ExprPtr b) {
    ExprNode n;
    n.kind = k;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    return node(std::move(n));
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        if (text_.size() > kMaxExprBytes)
            throw ParseError(kMaxExprBytes, {}, "expression longer than 64 KiB");
        ExprPtr e = expr();
        skip_space();
        if (pos_ != text_.size()) fail({"operator", "end of input"});
        return e;
    }

private:
    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            skip_space();
            if (accept('+')) {
                lhs = binary(ExprNode::Kind::add, lhs, term());
            } else if (accept('-')) {
                lhs = binary(ExprNode::Kind::sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        for (;;) {
            skip_space();
            if (accept('*')) {
                lhs = binary(ExprNode::Kind::mul, lhs, unary());
            } else if (accept('/')) {
                lhs = binary(ExprNode::Kind::div, lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    ExprPtr unary() {
        skip_space();
        if (accept('-')) {
            Depth guard(*this);
            ExprNode n;
            n.kind = ExprNode::Kind::neg;
            n.lhs = unary();
            return node(std::move(n));
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        for (;;) {
            skip_space();
            if (!accept('^')) return base;
            skip_space();
            const std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail({"non-negative integer exponent"});
            const mpz_class e = integer();
            if (e > kMaxExponent) throw ParseError(at, {"exponent <= 1000"}, message(at, "exponent too large"));
            ExprNode n;
            n.kind = ExprNode::Kind::pow;
            n.lhs = base;
            n.exponent = static_cast<unsigned>(e.get_ui());
            base = node(std::move(n));
        }
    }

    ExprPtr primary() {
        skip_space();
        if (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                ExprNode n;
                n.kind = ExprNode::Kind::constant;
                n.value = integer();
                return node(std::move(n));
            }
            if (c == 'x' || c == 'y' || c == 's' || c == 'i') {
                ++pos_;
                ExprNode n;
                n.kind = ExprNode::Kind::variable;
                n.name = c;
                return node(std::move(n));
            }
            if (c == '(') {
                ++pos_;
                Depth guard(*this);
                ExprPtr inner = expr();
                skip_space();
                if (!accept(')')) fail({"')'", "operator"});
                return inner;
            }
        }
        fail({"integer", "variable", "'('", "'-'"});
    }

    mpz_class integer() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string message(std::size_t at, const std::string& what) const {
        return "parse error at position " + std::to_string(at) + ": " + what;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::string what = "expected ";
        for (std::size_t k = 0; k < expected.size(); ++k) {
            if (k) what += k + 1 == expected.size() ? " or " : ", ";
            what += expected[k];
        }
        what += pos_ < text_.size() ? ", found '" + std::string(1, text_[pos_]) + "'" : ", found end of input";
        throw ParseError(pos_, std::move(expected), message(pos_, what));
    }

    struct Depth {
        explicit Depth(Parser& p) : parser(p) {
            if (++parser.depth_ > kMaxNesting)
                throw ParseError(parser.pos_, {}, parser.message(parser.pos_, "nesting too deep"));
        }
        ~Depth() { --parser.depth_; }
        Parser& parser;
    };

    std::string_view text_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

int precedence(const ExprNode& e) {
    switch (e.kind) {
        case ExprNode::Kind::add:
        case ExprNode::Kind::sub: return 1;
        case ExprNode::Kind::mul:
        case ExprNode::Kind::div: return 2;
        case ExprNode::Kind::neg: return 3;
        case ExprNode::Kind::pow: return 4;
        default: return 5;
    }
}

std::string wrap(const ExprNode& e, int min_precedence) {
    std::string text = print_expr(e);
    return precedence(e) < min_precedence ? "(" + text + ")" : text;
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print_expr(const ExprNode& e) {
    switch (e.kind) {
        case ExprNode::Kind::constant: return e.value.get_str();
        case ExprNode::Kind::variable: return std::string(1, e.name);
        case ExprNode::Kind::neg: return "-" + wrap(*e.lhs, 3);
        case ExprNode::Kind::pow: return wrap(*e.lhs, 5) + "^" + std::to_string(e.exponent);
        case ExprNode::Kind::add: return wrap(*e.lhs, 1) + " + " + wrap(*e.rhs, 2);
        case ExprNode::Kind::sub: return wrap(*e.lhs, 1) + " - " + wrap(*e.rhs, 2);
        case ExprNode::Kind::mul: return wrap(*e.lhs, 2) + "*" + wrap(*e.rhs, 3);
        case ExprNode::Kind::div: return wrap(*e.lhs, 2) + "/" + wrap(*e.rhs, 3);
    }
    return {};
}

RationalFn lower_expr(const ExprNode& e) {
    switch (e.kind) {
        case ExprNode::Kind::constant: return RationalFn(SparsePoly(GaussRational(mpq_class(e.value))));
        case ExprNode::Kind::variable:
            switch (e.name) {
                case 'x': return RationalFn(SparsePoly::variable(Var::x));
                case 'y': return RationalFn(SparsePoly::variable(Var::y));
                case 's': return RationalFn(SparsePoly::variable(Var::s));
                default: return RationalFn(SparsePoly(GaussRational::i()));
            }
        case ExprNode::Kind::neg: return -lower_expr(*e.lhs);
        case ExprNode::Kind::pow: return lower_expr(*e.lhs).pow(e.exponent);
        case ExprNode::Kind::add: return lower_expr(*e.lhs) + lower_expr(*e.rhs);
        case ExprNode::Kind::sub: return lower_expr(*e.lhs) - lower_expr(*e.rhs);
        case ExprNode::Kind::mul: return lower_expr(*e.lhs) * lower_expr(*e.rhs);
        case ExprNode::Kind::div: return lower_expr(*e.lhs) / lower_expr(*e.rhs);
    }
    return {};
}

}  // namespace mnv
