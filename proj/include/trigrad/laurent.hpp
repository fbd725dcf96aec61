#pragma once

#include "trigrad/rational.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace trigrad {

/// Laurent polynomial in q and t with rational coefficients. Keys are
/// (q-exponent, t-exponent); zero coefficients are never stored.
class LaurentQT {
public:
    using Key = std::pair<int, int>;
    using Terms = std::map<Key, Rational>;

    LaurentQT() = default;
    LaurentQT(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (c != 0) terms_[{0, 0}] = c;
    }
    LaurentQT(int c) : LaurentQT(Rational(c)) {}  // NOLINT(google-explicit-constructor)

    static LaurentQT monomial(int qe, int te, const Rational& c = 1) {
        LaurentQT r;
        if (c != 0) r.terms_[{qe, te}] = c;
        return r;
    }
    static LaurentQT q(int e = 1) { return monomial(e, 0); }
    static LaurentQT t(int e = 1) { return monomial(0, e); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }

    Rational coefficient(int qe, int te) const {
        auto it = terms_.find({qe, te});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(int qe, int te, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(Key{qe, te}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int min_q() const {
        if (terms_.empty()) throw std::domain_error("min_q of zero");
        return terms_.begin()->first.first;
    }
    int max_q() const {
        if (terms_.empty()) throw std::domain_error("max_q of zero");
        return terms_.rbegin()->first.first;
    }
    int min_t() const {
        if (terms_.empty()) throw std::domain_error("min_t of zero");
        int m = terms_.begin()->first.second;
        for (const auto& [k, c] : terms_) m = std::min(m, k.second);
        return m;
    }

    /// Coefficient of q^e as a Laurent polynomial in t alone.
    std::map<int, Rational> q_slice(int e) const {
        std::map<int, Rational> out;
        for (auto it = terms_.lower_bound({e, INT_MIN}); it != terms_.end() && it->first.first == e; ++it)
            out[it->first.second] = it->second;
        return out;
    }

    LaurentQT operator-() const {
        LaurentQT r = *this;
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }
    LaurentQT& operator+=(const LaurentQT& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }
    LaurentQT& operator-=(const LaurentQT& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
        return *this;
    }
    friend LaurentQT operator+(LaurentQT x, const LaurentQT& y) { return x += y; }
    friend LaurentQT operator-(LaurentQT x, const LaurentQT& y) { return x -= y; }
    friend LaurentQT operator*(const LaurentQT& x, const LaurentQT& y) {
        LaurentQT r;
        for (const auto& [kx, cx] : x.terms_)
            for (const auto& [ky, cy] : y.terms_) r.add_term(kx.first + ky.first, kx.second + ky.second, cx * cy);
        return r;
    }
    LaurentQT& operator*=(const LaurentQT& o) { return *this = *this * o; }

    /// Non-negative powers of anything; negative powers of monomials only.
    LaurentQT pow(int e) const {
        if (e < 0) {
            if (!is_monomial()) throw std::domain_error("negative power of a non-monomial");
            const auto& [k, c] = *terms_.begin();
            Rational inv = 1 / c;
            Rational v = 1;
            for (int i = 0; i < -e; ++i) v *= inv;
            return monomial(k.first * e, k.second * e, v);
        }
        LaurentQT r = 1;
        for (int i = 0; i < e; ++i) r *= *this;
        return r;
    }

    /// Substitute q := q^s (used for the bar-type involution q -> q^-1).
    LaurentQT scale_q(int s) const {
        LaurentQT r;
        for (const auto& [k, c] : terms_) r.add_term(k.first * s, k.second, c);
        return r;
    }

    bool operator==(const LaurentQT& o) const { return terms_ == o.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            Rational mag = abs(c);
            os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
            first = false;
            bool wrote = false;
            if (mag != 1 || (k.first == 0 && k.second == 0)) {
                os << mag.get_str();
                wrote = true;
            }
            auto var = [&](const char* n, int e) {
                if (e == 0) return;
                if (wrote) os << '*';
                os << n;
                if (e != 1) os << '^' << e;
                wrote = true;
            };
            var("q", k.first);
            var("t", k.second);
        }
        return os.str();
    }

private:
    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentQT& p) { return os << p.str(); }

/// Quotient of Laurent polynomials. The denominator is normalized so its
/// lowest q-exponent and lowest t-exponent are 0 and its first coefficient in
/// key order is positive. No polynomial gcd is taken.
class RationalQT {
public:
    RationalQT() : den_(1) {}
    RationalQT(LaurentQT num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
    RationalQT(const Rational& c) : RationalQT(LaurentQT(c)) {}    // NOLINT(google-explicit-constructor)
    RationalQT(int c) : RationalQT(LaurentQT(c)) {}                // NOLINT(google-explicit-constructor)
    RationalQT(LaurentQT num, LaurentQT den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("RationalQT with zero denominator");
        normalize();
    }

    const LaurentQT& numerator() const { return num_; }
    const LaurentQT& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalQT operator-() const { return RationalQT(-num_, den_); }
    friend RationalQT operator+(const RationalQT& x, const RationalQT& y) {
        if (x.den_ == y.den_) return RationalQT(x.num_ + y.num_, x.den_);
        return RationalQT(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend RationalQT operator-(const RationalQT& x, const RationalQT& y) { return x + (-y); }
    friend RationalQT operator*(const RationalQT& x, const RationalQT& y) {
        if (x.den_ == y.num_ && !x.den_.is_zero()) return RationalQT(x.num_, y.den_);
        if (y.den_ == x.num_ && !y.den_.is_zero()) return RationalQT(y.num_, x.den_);
        return RationalQT(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend RationalQT operator/(const RationalQT& x, const RationalQT& y) {
        if (y.is_zero()) throw std::domain_error("division by zero RationalQT");
        return x * RationalQT(y.den_, y.num_);
    }
    RationalQT& operator+=(const RationalQT& o) { return *this = *this + o; }
    RationalQT& operator-=(const RationalQT& o) { return *this = *this - o; }
    RationalQT& operator*=(const RationalQT& o) { return *this = *this * o; }

    RationalQT pow(int e) const {
        if (e < 0) return RationalQT(1) / pow(-e);
        return RationalQT(num_.pow(e), den_.pow(e));
    }

    /// Equality by cross-multiplication.
    bool operator==(const RationalQT& o) const { return num_ * o.den_ == o.num_ * den_; }

    std::string str() const {
        if (den_ == LaurentQT(1)) return "(" + num_.str() + ")";
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize() {
        int dq = den_.min_q();
        int dt = den_.min_t();
        Rational lead = den_.terms().begin()->second;
        LaurentQT shift = LaurentQT::monomial(-dq, -dt, lead < 0 ? Rational(-1) : Rational(1));
        num_ *= shift;
        den_ *= shift;
        if (num_.is_zero()) den_ = 1;
    }

    LaurentQT num_;
    LaurentQT den_;
};

inline std::ostream& operator<<(std::ostream& os, const RationalQT& r) { return os << r.str(); }

/// Laurent polynomial in t: t-exponent -> coefficient, zeros dropped.
using TPoly = std::map<int, Rational>;

/// Truncated power series in q with t-Laurent coefficients. Coefficients are
/// known exactly for every q-exponent <= qmax.
class QSeries {
public:
    explicit QSeries(int qmax = 0) : qmax_(qmax) {}

    int qmax() const { return qmax_; }
    const std::map<int, TPoly>& coefficients() const { return coeffs_; }

    void add(int qe, int te, const Rational& c) {
        if (qe > qmax_ || c == 0) return;
        auto& row = coeffs_[qe];
        auto [it, inserted] = row.try_emplace(te, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) row.erase(it);
        }
        if (row.empty()) coeffs_.erase(qe);
    }

    TPoly coefficient(int qe) const {
        auto it = coeffs_.find(qe);
        return it == coeffs_.end() ? TPoly{} : it->second;
    }

    bool is_zero() const { return coeffs_.empty(); }

    /// Same series viewed with a smaller cutoff.
    QSeries truncated(int qmax) const {
        QSeries r(std::min(qmax, qmax_));
        for (const auto& [qe, row] : coeffs_)
            for (const auto& [te, c] : row) r.add(qe, te, c);
        return r;
    }

    friend QSeries operator+(const QSeries& x, const QSeries& y) {
        QSeries r(std::min(x.qmax_, y.qmax_));
        for (const auto* s : {&x, &y})
            for (const auto& [qe, row] : s->coeffs_)
                for (const auto& [te, c] : row) r.add(qe, te, c);
        return r;
    }
    QSeries operator-() const {
        QSeries r(qmax_);
        for (const auto& [qe, row] : coeffs_)
            for (const auto& [te, c] : row) r.add(qe, te, -c);
        return r;
    }
    friend QSeries operator-(const QSeries& x, const QSeries& y) { return x + (-y); }

    /// Product with a Laurent polynomial. The cutoff drops by the spread below
    /// q^0 of the multiplier so every kept coefficient stays exact.
    friend QSeries operator*(const QSeries& s, const LaurentQT& p) {
        if (p.is_zero()) return QSeries(s.qmax_);
        QSeries r(s.qmax_ + p.min_q());
        for (const auto& [qe, row] : s.coeffs_)
            for (const auto& [te, c] : row)
                for (const auto& [k, pc] : p.terms()) r.add(qe + k.first, te + k.second, c * pc);
        return r;
    }

    /// Equality of coefficients up to the smaller of the two cutoffs.
    bool operator==(const QSeries& o) const {
        int m = std::min(qmax_, o.qmax_);
        return truncated(m).coeffs_ == o.truncated(m).coeffs_;
    }

    /// First q-exponent (<= common cutoff) where the two series differ.
    std::optional<int> first_difference(const QSeries& o) const {
        int m = std::min(qmax_, o.qmax_);
        auto a = truncated(m).coeffs_;
        auto b = o.truncated(m).coeffs_;
        std::set<int> keys;
        for (const auto& [k, v] : a) keys.insert(k);
        for (const auto& [k, v] : b) keys.insert(k);
        for (int k : keys) {
            auto ia = a.find(k);
            auto ib = b.find(k);
            TPoly pa = ia == a.end() ? TPoly{} : ia->second;
            TPoly pb = ib == b.end() ? TPoly{} : ib->second;
            if (pa != pb) return k;
        }
        return std::nullopt;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0 + O(q^" + std::to_string(qmax_ + 1) + ")";
        LaurentQT p;
        for (const auto& [qe, row] : coeffs_)
            for (const auto& [te, c] : row) p.add_term(qe, te, c);
        return p.str() + " + O(q^" + std::to_string(qmax_ + 1) + ")";
    }

private:
    int qmax_;
    std::map<int, TPoly> coeffs_;
};

inline std::string tpoly_str(const TPoly& p) {
    LaurentQT l;
    for (const auto& [te, c] : p) l.add_term(0, te, c);
    return l.str();
}

/// Expands f as a power series in q up to q^qmax. The lowest-q block of the
/// denominator must be a single t-monomial so it can be inverted.
inline QSeries qt_expand(const RationalQT& f, int qmax) {
    QSeries out(qmax);
    const LaurentQT& num = f.numerator();
    const LaurentQT& den = f.denominator();
    if (num.is_zero()) return out;
    int d0 = den.min_q();
    TPoly lead = den.q_slice(d0);
    if (lead.size() != 1)
        throw std::domain_error("qt_expand: lowest q-block of denominator (q^" + std::to_string(d0) + ": " +
                                tpoly_str(lead) + ") is not a single t-monomial");
    int lead_t = lead.begin()->first;
    Rational lead_inv = 1 / lead.begin()->second;
    int dmax = den.max_q();
    int start = num.min_q() - d0;
    std::map<int, TPoly> s;
    for (int m = start; m <= qmax; ++m) {
        TPoly acc = num.q_slice(m + d0);
        for (int i = 1; i <= dmax - d0; ++i) {
            auto it = s.find(m - i);
            if (it == s.end()) continue;
            TPoly di = den.q_slice(d0 + i);
            for (const auto& [te1, c1] : it->second)
                for (const auto& [te2, c2] : di) {
                    auto& slot = acc[te1 + te2];
                    slot -= c1 * c2;
                }
        }
        TPoly sm;
        for (const auto& [te, c] : acc)
            if (c != 0) sm[te - lead_t] = c * lead_inv;
        if (!sm.empty()) s[m] = sm;
    }
    for (const auto& [qe, row] : s)
        for (const auto& [te, c] : row) out.add(qe, te, c);
    return out;
}

}  // namespace trigrad
