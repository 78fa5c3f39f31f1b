#include "residue/poly_text.hpp"

#include <cctype>

namespace residue {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : text_(text) {}

    std::vector<std::pair<Exponent, Rational>> terms(int& max_var) {
        std::vector<std::pair<Exponent, Rational>> out;
        skip();
        if (at_end()) fail("empty polynomial");
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                fail(std::string("expected '+' or '-', found '") + peek() + "'");
            }
            first = false;
            auto term = parse_term(max_var);
            term.second *= sign;
            out.push_back(std::move(term));
            skip();
        }
        return out;
    }

private:
    std::pair<Exponent, Rational> parse_term(int& max_var) {
        Rational coeff(1);
        std::vector<std::pair<int, int>> factors;
        bool need_factor = true;
        if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_coefficient();
            need_factor = false;
            skip();
            if (at_end() || peek() != '*') return {{}, coeff};
            ++pos_;
            skip();
            need_factor = true;
        }
        while (need_factor) {
            factors.push_back(parse_factor());
            max_var = std::max(max_var, factors.back().first);
            skip();
            need_factor = !at_end() && peek() == '*';
            if (need_factor) {
                ++pos_;
                skip();
            }
        }
        Exponent e;
        for (const auto& [var, pw] : factors) {
            if (static_cast<int>(e.size()) <= var) e.resize(var + 1, 0);
            e[var] += pw;
        }
        return {e, coeff};
    }

    Rational parse_coefficient() {
        const Integer num(digits());
        skip();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip();
            const std::size_t where = pos_;
            const Integer den(digits());
            if (den == 0) fail_at(where, "zero denominator");
            Rational q(num, den);
            q.canonicalize();
            return q;
        }
        return Rational(num);
    }

    int small_number() {
        const std::size_t where = pos_;
        const std::string s = digits();
        if (s.size() > 4) fail_at(where, "index or exponent too large");
        return std::stoi(s);
    }

    std::pair<int, int> parse_factor() {
        if (at_end()) fail("expected a variable");
        if (peek() != 'x') fail(std::string("expected a variable x<i>, found '") + peek() + "'");
        ++pos_;
        skip();
        const int var = small_number();
        skip();
        int pw = 1;
        if (!at_end() && peek() == '^') {
            ++pos_;
            skip();
            pw = small_number();
        }
        return {var, pw};
    }

    std::string digits() {
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail(at_end() ? "expected a number, found end of input" : std::string("expected a number, found '") + peek() + "'");
        std::string s;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) s += text_[pos_++];
        return s;
    }

    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const {
        const char c = text_[pos_];
        if (c == '(' || c == ')') fail_at(pos_, "parentheses are not accepted; expand the polynomial");
        return c;
    }
    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
    [[noreturn]] static void fail_at(std::size_t at, const std::string& what) { throw PolySyntaxError(at, what); }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

HomogPoly parse_poly(const std::string& text, int n_vars) {
    int max_var = -1;
    auto raw = Parser(text).terms(max_var);
    if (n_vars < 0) n_vars = std::max(1, max_var + 1);
    if (max_var >= n_vars)
        throw std::invalid_argument("variable x" + std::to_string(max_var) + " exceeds the " + std::to_string(n_vars) +
                                    " variables x0..x" + std::to_string(n_vars - 1));
    for (auto& [e, c] : raw) e.resize(n_vars, 0);
    HomogPoly p = HomogPoly::from_terms(n_vars, raw);
    if (p.is_zero()) throw std::invalid_argument("polynomial is zero");
    return p;
}

std::string render_poly(const HomogPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (!mono.empty()) mono += '*';
            mono += 'x' + std::to_string(i);
            if (e[i] > 1) mono += '^' + std::to_string(e[i]);
        }
        if (mono.empty())
            out += to_string(mag);
        else if (mag == 1)
            out += mono;
        else
            out += to_string(mag) + '*' + mono;
    }
    return out;
}

}  // namespace residue
