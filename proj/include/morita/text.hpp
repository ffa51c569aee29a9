#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "morita/error.hpp"
#include "morita/free_dga.hpp"

namespace morita {

/// Canonical rendering, e.g. `a*a - 1`: terms in descending canonical order,
/// factors joined by `*`, coefficient 1 omitted.
inline std::string render(const FreeDGA& a, const NCPoly& p) {
    if (p.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const Word& w = it->first;
        Scalar c = it->second;
        bool negative = false;
        if (c.field().is_rational() && c.rational() < 0) {
            negative = true;
            c = -c;
        }
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        std::string body;
        for (auto g : w) {
            if (!body.empty())
                body += "*";
            body += a.generator(g).name;
        }
        if (body.empty())
            out += c.str();
        else if (c.is_one())
            out += body;
        else
            out += c.str() + "*" + body;
    }
    return out;
}

namespace detail {

class PolyParser {
public:
    PolyParser(const FreeDGA& a, const std::string& text) : a_(a), s_(text) {}

    NCPoly parse() {
        NCPoly out(a_.field());
        skip();
        if (pos_ == s_.size())
            fail("empty expression");
        bool first = true;
        while (true) {
            skip();
            if (pos_ == s_.size())
                break;
            bool negative = false;
            if (s_[pos_] == '+' || s_[pos_] == '-') {
                negative = s_[pos_] == '-';
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto [w, c] = term();
            out.add(a_.reduce(w), negative ? -c : c);
        }
        return out;
    }

private:
    std::pair<Word, Scalar> term() {
        Word w;
        Scalar c = Scalar::one(a_.field());
        while (true) {
            skip();
            if (pos_ == s_.size())
                fail("expected a factor");
            if (std::isdigit(static_cast<unsigned char>(s_[pos_])))
                c *= number();
            else
                factor(w);
            skip();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        return {w, c};
    }

    Scalar number() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
            ++pos_;
        const std::string tok = s_.substr(start, pos_ - start);
        if (tok.back() == '/' || tok.front() == '/' || std::count(tok.begin(), tok.end(), '/') > 1)
            fail("malformed coefficient '" + tok + "'");
        const Rational q = parse_rational(tok);
        if (!a_.field().is_rational() && boost::multiprecision::denominator(q) % a_.field().characteristic() == 0)
            fail("coefficient '" + tok + "' is undefined over " + a_.field().name());
        return Scalar(a_.field(), q);
    }

    void factor(Word& w) {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
            ++pos_;
        if (pos_ == start)
            fail(std::string("unexpected character '") + s_[pos_] + "'");
        const std::string name = s_.substr(start, pos_ - start);
        auto g = a_.find(name);
        if (!g)
            fail("unknown generator '" + name + "'");
        long long power = 1;
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            bool neg = false;
            if (pos_ < s_.size() && s_[pos_] == '-') {
                neg = true;
                ++pos_;
            }
            const std::size_t ds = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (ds == pos_)
                fail("expected an exponent");
            power = std::stoll(s_.substr(ds, pos_ - ds));
            if (power == 0)
                fail("zero exponent");
            if (neg) {
                const auto& inv = a_.generator(*g).inverse_of;
                if (!inv)
                    fail("generator '" + name + "' has no inverse");
                g = *inv;
            }
        }
        for (long long i = 0; i < power; ++i)
            w.push_back(*g);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::parse_error, msg + " at column " + std::to_string(pos_ + 1) + " in '" + s_ + "'");
    }

    const FreeDGA& a_;
    std::string s_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the textual syntax produced by render(); `x^-1` names an inverse,
/// `x^k` (k >= 1) a power, coefficients are integers or p/q.
inline NCPoly parse_poly(const FreeDGA& a, const std::string& text) { return detail::PolyParser(a, text).parse(); }

} // namespace morita
