#pragma once
#include <weilkit/pbw.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace weilkit {

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t p)
        : std::runtime_error("ParseError at position " + std::to_string(p) + ": " + msg), pos(p) {}
};

struct IndexOutOfRange : std::runtime_error {
    explicit IndexOutOfRange(const std::string& s) : std::runtime_error("IndexOutOfRange: " + s) {}
};

// Recursive-descent parser for the element expression language:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' nat)?
//   atom   := rational | generator | '(' expr ')'
//   rational  := nat ('/' nat)?
//   generator := ('v'|'y'|'u'|'x') index     (1-based)
// Generator letters must match the target algebra: v/y for the polynomial and
// exterior pictures, u/x for the enveloping and Clifford pictures.
class ExprParser {
public:
    ExprParser(std::string text, Tag tag, const LieAlgebra& alg)
        : s_(std::move(text)), tag_(tag), alg_(&alg) {}

    GradedElement parse() {
        GradedElement r = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
        return r;
    }

private:
    std::string s_;
    std::size_t pos_ = 0;
    Tag tag_;
    const LieAlgebra* alg_;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    GradedElement expr() {
        bool neg = eat('-');
        GradedElement r = term();
        if (neg) r = r * Rational(-1);
        for (;;) {
            if (eat('+'))
                r += term();
            else if (eat('-'))
                r = r - term();
            else
                return r;
        }
    }

    GradedElement term() {
        GradedElement r = factor();
        while (eat('*')) r = mul(r, factor());
        return r;
    }

    GradedElement factor() {
        GradedElement a = atom();
        if (eat('^')) {
            long long n = integer("exponent");
            if (n < 0) throw ParseError("negative exponent", pos_);
            GradedElement r = GradedElement::unit(tag_, alg_);
            for (long long i = 0; i < n; ++i) r = mul(r, a);
            return r;
        }
        return a;
    }

    GradedElement atom() {
        char c = peek();
        if (c == '(') {
            eat('(');
            GradedElement r = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long num = integer("numerator");
            Rational v(num);
            if (eat('/')) {
                long long den = integer("denominator");
                if (den <= 0) throw ParseError("denominator must be positive", pos_);
                v /= den;
            }
            return GradedElement::unit(tag_, alg_) * v;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return generator();
        throw ParseError("expected rational, generator or '('", pos_);
    }

    long long integer(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError(std::string("expected ") + what, pos_);
        return std::stoll(s_.substr(start, pos_ - start));
    }

    GradedElement generator() {
        skip_ws();
        std::size_t start = pos_;
        std::string name;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
            name += s_[pos_++];
        long long idx = integer("generator index");
        if (idx < 1 || idx > alg_->n)
            throw IndexOutOfRange(name + std::to_string(idx) + " for dimension " +
                                  std::to_string(alg_->n));
        int a = int(idx - 1);
        const bool env_like = tag_ == Tag::ENV || tag_ == Tag::NCW;
        const char* even_name = env_like ? "u" : "v";
        const char* odd_name = (tag_ == Tag::CL || env_like) ? "x" : "y";
        if (name == even_name) {
            if (tag_ == Tag::EXT || tag_ == Tag::CL)
                throw TagMismatch("no even generators in a purely exterior algebra");
            return GradedElement::even_gen(tag_, alg_, a);
        }
        if (name == odd_name) {
            if (tag_ == Tag::SYM || tag_ == Tag::ENV)
                throw TagMismatch("no odd generators in a purely even algebra");
            return GradedElement::odd_gen(tag_, alg_, a);
        }
        throw ParseError("unknown generator '" + name + "' for this algebra", start);
    }
};

inline GradedElement parse_expr(const std::string& text, Tag tag, const LieAlgebra& alg) {
    return ExprParser(text, tag, alg).parse();
}

} // namespace weilkit
