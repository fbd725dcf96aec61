#pragma once

#include "trigrad/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace trigrad {

/// Ordered variable names of a polynomial ring over Q. The variable named "a"
/// has bidegree (2,0); every other variable has bidegree (0,2).
class RingContext {
public:
    explicit RingContext(std::vector<std::string> names) : names_(std::move(names)) {
        for (size_t i = 0; i < names_.size(); ++i) {
            for (size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j])
                    throw std::invalid_argument("duplicate ring variable " + names_[i]);
            if (names_[i] == "a") a_index_ = static_cast<int>(i);
        }
    }

    size_t size() const { return names_.size(); }
    const std::string& name(size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    int a_index() const { return a_index_; }
    bool has_a() const { return a_index_ >= 0; }

    std::optional<size_t> index_of(const std::string& n) const {
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n) return i;
        return std::nullopt;
    }
    size_t require(const std::string& n) const {
        auto i = index_of(n);
        if (!i) throw std::invalid_argument("unknown variable " + n);
        return *i;
    }

    Bidegree weight(size_t i) const {
        return static_cast<int>(i) == a_index_ ? Bidegree{2, 0} : Bidegree{0, 2};
    }

    bool operator==(const RingContext& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    int a_index_ = -1;
};

using Ring = std::shared_ptr<const RingContext>;

inline Ring make_ring(std::vector<std::string> names) {
    return std::make_shared<const RingContext>(std::move(names));
}

inline bool same_ring(const Ring& x, const Ring& y) { return x == y || (x && y && *x == *y); }

/// Ring with variable i removed.
inline Ring ring_without(const Ring& r, size_t i) {
    auto names = r->names();
    names.erase(names.begin() + static_cast<long>(i));
    return make_ring(std::move(names));
}

/// Exponent vector, one entry per ring variable.
using Monomial = std::vector<int>;

inline Bidegree monomial_bidegree(const RingContext& ring, const Monomial& m) {
    Bidegree d;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0) throw std::invalid_argument("negative exponent");
        d += Bidegree{ring.weight(i).k * m[i], ring.weight(i).l * m[i]};
    }
    return d;
}

inline Monomial monomial_product(const Monomial& x, const Monomial& y) {
    Monomial r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

/// Sparse polynomial with rational coefficients, terms kept in lexicographic
/// exponent order. Zero coefficients are never stored.
class Polynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    Polynomial() = default;
    explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}

    static Polynomial constant(Ring ring, const Rational& c) {
        Polynomial p(ring);
        if (c != 0) p.terms_[Monomial(ring->size(), 0)] = c;
        return p;
    }
    static Polynomial variable(Ring ring, const std::string& name) {
        return variable(ring, ring->require(name));
    }
    static Polynomial variable(Ring ring, size_t idx) {
        Monomial m(ring->size(), 0);
        m.at(idx) = 1;
        Polynomial p(ring);
        p.terms_[m] = 1;
        return p;
    }
    static Polynomial monomial(Ring ring, Monomial m, const Rational& c = 1) {
        if (m.size() != ring->size()) throw std::invalid_argument("monomial length mismatch");
        Polynomial p(ring);
        if (c != 0) p.terms_[std::move(m)] = c;
        return p;
    }

    const Ring& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 &&
                std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                            [](int e) { return e == 0; }));
    }
    Rational constant_term() const {
        if (!ring_) return 0;
        auto it = terms_.find(Monomial(ring_->size(), 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) {
        adopt(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        adopt(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend Polynomial operator+(Polynomial x, const Polynomial& y) { return x += y; }
    friend Polynomial operator-(Polynomial x, const Polynomial& y) { return x -= y; }
    friend Polynomial operator*(Polynomial x, const Rational& s) { return x *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial x) { return x *= s; }
    friend Polynomial operator*(const Polynomial& x, const Polynomial& y) {
        if (x.is_zero() || y.is_zero()) return Polynomial(x.ring_ ? x.ring_ : y.ring_);
        check_rings(x, y);
        Polynomial r(x.ring_);
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) r.add_term(monomial_product(mx, my), cx * cy);
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    bool operator==(const Polynomial& o) const {
        if (terms_.empty() && o.terms_.empty()) return true;
        return same_ring(ring_, o.ring_) && terms_ == o.terms_;
    }

    Polynomial pow(int e) const {
        if (e < 0) throw std::invalid_argument("negative power");
        Polynomial r = constant(ring_, 1);
        for (int i = 0; i < e; ++i) r *= *this;
        return r;
    }

    int degree_in(size_t var) const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
        return d;
    }
    bool uses(size_t var) const { return degree_in(var) > 0; }

    /// Bidegree of a homogeneous nonzero polynomial; nullopt for zero or
    /// inhomogeneous input.
    std::optional<Bidegree> bidegree() const {
        if (terms_.empty()) return std::nullopt;
        auto d = monomial_bidegree(*ring_, terms_.begin()->first);
        for (const auto& [m, c] : terms_)
            if (monomial_bidegree(*ring_, m) != d) return std::nullopt;
        return d;
    }
    bool is_homogeneous() const { return terms_.empty() || bidegree().has_value(); }

    /// Every occurrence of variable `var` replaced by `r`.
    Polynomial substitute(size_t var, const Polynomial& r) const {
        if (!ring_) return *this;
        if (var >= ring_->size()) throw std::invalid_argument("substitution variable out of range");
        if (!r.is_zero()) check_rings(*this, r);
        Polynomial out(ring_);
        std::vector<Polynomial> powers{constant(ring_, 1)};
        for (const auto& [m, c] : terms_) {
            int e = m[var];
            while (static_cast<int>(powers.size()) <= e) powers.push_back(powers.back() * r);
            Monomial rest = m;
            rest[var] = 0;
            out += monomial(ring_, rest, c) * powers[e];
        }
        return out;
    }
    Polynomial substitute(const std::string& var, const Polynomial& r) const {
        return substitute(ring_->require(var), r);
    }

    /// Re-express over `target`, matching variables by name. Variables missing
    /// from `target` must not occur.
    Polynomial rebase(const Ring& target) const {
        Polynomial out(target);
        if (!ring_) return out;
        std::vector<int> map(ring_->size(), -1);
        for (size_t i = 0; i < ring_->size(); ++i) {
            auto j = target->index_of(ring_->name(i));
            if (j) map[i] = static_cast<int>(*j);
        }
        for (const auto& [m, c] : terms_) {
            Monomial t(target->size(), 0);
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (map[i] < 0)
                    throw std::invalid_argument("variable " + ring_->name(i) + " absent from target ring");
                t[map[i]] = m[i];
            }
            out.add_term(t, c);
        }
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rational mag = abs(c);
            bool is_one = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            first = false;
            bool wrote = false;
            if (mag != 1 || is_one) {
                os << mag.get_str();
                wrote = true;
            }
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (wrote) os << '*';
                os << ring_->name(i);
                if (m[i] > 1) os << '^' << m[i];
                wrote = true;
            }
        }
        return os.str();
    }

private:
    void adopt(const Polynomial& o) {
        if (!ring_) {
            ring_ = o.ring_;
            return;
        }
        if (!o.is_zero()) check_rings(*this, o);
    }
    static void check_rings(const Polynomial& x, const Polynomial& y) {
        if (!same_ring(x.ring_, y.ring_)) throw std::invalid_argument("polynomials over different rings");
    }

    Ring ring_;
    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

/// Parses expressions such as "x1*x2 - 3*x3^2 + 1/2" over `ring`. Supports
/// +, -, *, ^ (non-negative integer powers), parentheses and rational literals.
class PolynomialParser {
public:
    PolynomialParser(Ring ring, std::string text) : ring_(std::move(ring)), s_(std::move(text)) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("polynomial parse error (" + why + ") in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    Polynomial expr() {
        Polynomial p = Polynomial(ring_);
        bool neg = eat('-');
        if (!neg) eat('+');
        Polynomial t = term();
        p = neg ? -t : t;
        while (true) {
            if (eat('+'))
                p += term();
            else if (eat('-'))
                p -= term();
            else
                return p;
        }
    }
    Polynomial term() {
        Polynomial p = factor();
        while (eat('*')) p *= factor();
        return p;
    }
    Polynomial factor() {
        Polynomial b = atom();
        if (eat('^')) {
            skip();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("exponent");
            b = b.pow(std::stoi(s_.substr(start, pos_ - start)));
        }
        return b;
    }
    Polynomial atom() {
        skip();
        if (eat('(')) {
            Polynomial p = expr();
            if (!eat(')')) fail("missing )");
            return p;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
                ++pos_;
            return Polynomial::constant(ring_, parse_rational(s_.substr(start, pos_ - start)));
        }
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (start == pos_) fail("unexpected character");
        return Polynomial::variable(ring_, s_.substr(start, pos_ - start));
    }

    Ring ring_;
    std::string s_;
    size_t pos_ = 0;
};

inline Polynomial parse_polynomial(const Ring& ring, const std::string& text) {
    return PolynomialParser(ring, text).parse();
}

}  // namespace trigrad
