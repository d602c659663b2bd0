#ifndef ROOTCORR_PARSE_HPP
#define ROOTCORR_PARSE_HPP

#include <cctype>
#include <stdexcept>
#include <string>

#include "rootcorr/ratfunc.hpp"

namespace rootcorr {

// Syntax error with 0-based position into the input text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    size_t position() const { return pos_; }

private:
    size_t pos_;
};

namespace detail {

// Recursive-descent parser for
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' uint)?
//   base   := 'z' | 'i' | uint | '(' expr ')' | '-' factor
// Implicit multiplication is not accepted.
class ExprParser {
public:
    explicit ExprParser(const std::string& text) : s_(text) {}

    RatFunc parse() {
        RatFunc v = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected character", pos_);
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    RatFunc expr() {
        RatFunc v = term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                v = v + term();
            } else if (c == '-') {
                ++pos_;
                v = v - term();
            } else {
                return v;
            }
        }
    }

    RatFunc term() {
        RatFunc v = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                v = v * factor();
            } else if (c == '/') {
                size_t at = pos_;
                ++pos_;
                RatFunc d = factor();
                if (d.is_zero()) throw ParseError("division by zero polynomial", at);
                v = v / d;
            } else {
                return v;
            }
        }
    }

    RatFunc factor() {
        RatFunc v = base();
        if (peek() == '^') {
            ++pos_;
            v = v.pow(uint_literal());
        }
        return v;
    }

    RatFunc base() {
        char c = peek();
        if (c == 'z') {
            ++pos_;
            return RatFunc::x();
        }
        if (c == 'i') {
            ++pos_;
            return RatFunc(GaussianRational::i());
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RatFunc(GaussianRational(Rational(s_.substr(start, pos_ - start))));
        }
        if (c == '(') {
            ++pos_;
            RatFunc v = expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return v;
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        throw ParseError("expected 'z', 'i', number, '(' or '-'", pos_);
    }

    unsigned uint_literal() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected unsigned integer", pos_);
        unsigned long v = 0;
        try {
            v = std::stoul(s_.substr(start, pos_ - start));
        } catch (const std::out_of_range&) {
            throw ParseError("integer literal too large", start);
        }
        return static_cast<unsigned>(v);
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace detail

inline RatFunc parse_expression(const std::string& text) {
    return detail::ExprParser(text).parse();
}

}  // namespace rootcorr

#endif
