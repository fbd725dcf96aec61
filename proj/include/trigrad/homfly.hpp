#pragma once

#include "trigrad/braid.hpp"
#include "trigrad/laurent.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <vector>

namespace trigrad {

/// One-line notation, 0-based: perm[i] is the image of i.
using Permutation = std::vector<int>;

inline Permutation identity_permutation(int n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

/// Element of the Hecke algebra of S_n in the basis g_w. Generators satisfy
/// g^2 = (1-q^2) g + q^2, so q^-1 g - q g^-1 = q^-1 - q.
struct HeckeElement {
    int n = 1;
    std::map<Permutation, LaurentQT> coeffs;

    static HeckeElement identity(int n) {
        HeckeElement h;
        h.n = n;
        h.coeffs[identity_permutation(n)] = 1;
        return h;
    }

    void add(const Permutation& w, const LaurentQT& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = coeffs.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }

    bool operator==(const HeckeElement& o) const { return n == o.n && coeffs == o.coeffs; }

    friend HeckeElement operator+(HeckeElement x, const HeckeElement& y) {
        for (const auto& [w, c] : y.coeffs) x.add(w, c);
        return x;
    }
    friend HeckeElement operator*(const LaurentQT& s, const HeckeElement& x) {
        HeckeElement r;
        r.n = x.n;
        for (const auto& [w, c] : x.coeffs) r.add(w, s * c);
        return r;
    }
};

/// Right multiplication by g_s (s 0-based, swapping positions s and s+1).
inline HeckeElement times_generator(const HeckeElement& h, int s) {
    const LaurentQT A = LaurentQT(1) - LaurentQT::q(2);
    const LaurentQT B = LaurentQT::q(2);
    HeckeElement r;
    r.n = h.n;
    for (const auto& [w, c] : h.coeffs) {
        Permutation ws = w;
        std::swap(ws[s], ws[s + 1]);
        if (w[s] < w[s + 1]) {
            r.add(ws, c);
        } else {
            r.add(w, c * A);
            r.add(ws, c * B);
        }
    }
    return r;
}

/// Right multiplication by g_s^{-1} = q^-2 g_s + (1 - q^-2).
inline HeckeElement times_inverse_generator(const HeckeElement& h, int s) {
    HeckeElement g = times_generator(h, s);
    return LaurentQT::q(-2) * g + (LaurentQT(1) - LaurentQT::q(-2)) * h;
}

inline HeckeElement hecke_of_braid(const BraidWord& b) {
    b.validate();
    HeckeElement h = HeckeElement::identity(b.strands);
    for (int l : b.letters) {
        int s = std::abs(l) - 1;
        h = l > 0 ? times_generator(h, s) : times_inverse_generator(h, s);
    }
    return h;
}

/// Polynomial in the Markov parameter z with Laurent coefficients; entry i
/// is the coefficient of z^i.
using ZPoly = std::vector<LaurentQT>;

inline void zpoly_add(ZPoly& acc, const ZPoly& x, const LaurentQT& s, int shift) {
    if (acc.size() < x.size() + shift) acc.resize(x.size() + shift);
    for (size_t i = 0; i < x.size(); ++i) acc[i + shift] += s * x[i];
}

/// Normalized Markov trace: tr(1) = 1, tr(x) = tr(x) on adding a strand,
/// tr(x g_{n-1} y) = z tr(x y) for x, y in the smaller algebra.
class OcneanuTrace {
public:
    ZPoly of_basis(const Permutation& w) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(w);
            if (it != memo_.end()) return it->second;
        }
        ZPoly result = compute(w);
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(w, result);
        return result;
    }

    ZPoly of(const HeckeElement& h) {
        ZPoly acc;
        for (const auto& [w, c] : h.coeffs) zpoly_add(acc, of_basis(w), c, 0);
        return acc;
    }

private:
    ZPoly compute(const Permutation& w) {
        const int n = static_cast<int>(w.size());
        if (n <= 1) return {LaurentQT(1)};
        int k = 0;
        while (w[k] != n - 1) ++k;
        Permutation u(w.begin(), w.end());
        u.erase(u.begin() + k);
        if (k == n - 1) return of_basis(u);
        // w = u s_{n-1} s_{n-2} ... s_k; tr = z tr(g_u g_{n-2} ... g_k) in S_{n-1}
        HeckeElement h;
        h.n = n - 1;
        h.coeffs[u] = 1;
        for (int s = n - 3; s >= k; --s) h = times_generator(h, s);
        ZPoly inner = of(h);
        ZPoly out;
        zpoly_add(out, inner, LaurentQT(1), 1);
        return out;
    }

    std::mutex mu_;
    std::map<Permutation, ZPoly> memo_;
};

inline OcneanuTrace& shared_trace() {
    static OcneanuTrace t;
    return t;
}

/// delta = (1 + t^-1 q)/(1 - q^2), z = 1/delta.
struct TraceParams {
    RationalQT delta;
    RationalQT z;
};

inline TraceParams solve_trace_params() {
    LaurentQT num = LaurentQT(1) + LaurentQT::monomial(1, -1);
    LaurentQT den = LaurentQT(1) - LaurentQT::q(2);
    return {RationalQT(num, den), RationalQT(den, num)};
}

inline RationalQT unknot_value() {
    return RationalQT(LaurentQT::t(-1), LaurentQT::q(-1) - LaurentQT::q(1));
}

/// tr as a rational function, substituting z.
inline RationalQT ocneanu_trace(const HeckeElement& h) {
    ZPoly p = shared_trace().of(h);
    RationalQT z = solve_trace_params().z;
    RationalQT acc;
    RationalQT zp = 1;
    for (const auto& c : p) {
        acc += RationalQT(c) * zp;
        zp *= z;
    }
    return acc;
}

/// F = F(unknot) delta^{n-1} tr, assembled over the common denominator
/// (q^-1 - q)(1 - q^2)^{n-1}.
inline RationalQT homfly_F(const BraidWord& b) {
    ZPoly p = shared_trace().of(hecke_of_braid(b));
    const int n = b.strands;
    LaurentQT plus = LaurentQT(1) + LaurentQT::monomial(1, -1);
    LaurentQT minus = LaurentQT(1) - LaurentQT::q(2);
    LaurentQT num;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero()) continue;
        if (static_cast<int>(i) > n - 1) throw std::logic_error("trace degree in z exceeds n-1");
        num += p[i] * plus.pow(n - 1 - static_cast<int>(i)) * minus.pow(static_cast<int>(i));
    }
    num *= LaurentQT::t(-1);
    LaurentQT den = (LaurentQT::q(-1) - LaurentQT::q(1)) * minus.pow(n - 1);
    return RationalQT(num, den);
}

/// Value times A^e where A^2 = alpha = -t^-1 q^-1; `odd` records whether a
/// single A remains.
struct HalfPowerQT {
    RationalQT value;
    bool odd = false;

    static RationalQT alpha() { return RationalQT(LaurentQT::monomial(-1, -1, -1)); }

    HalfPowerQT times_A(int e) const {
        HalfPowerQT r = *this;
        int total = e + (odd ? 1 : 0);
        int half = total >= 0 ? total / 2 : -((-total + 1) / 2);
        r.odd = total - 2 * half == 1;
        r.value = value * alpha().pow(half);
        return r;
    }

    friend HalfPowerQT operator+(const HalfPowerQT& x, const HalfPowerQT& y) {
        if (x.value.is_zero()) return y;
        if (y.value.is_zero()) return x;
        if (x.odd != y.odd) throw std::domain_error("adding terms of different A-parity");
        return {x.value + y.value, x.odd};
    }
    friend HalfPowerQT operator-(const HalfPowerQT& x, const HalfPowerQT& y) { return x + HalfPowerQT{-y.value, y.odd}; }
    friend HalfPowerQT operator*(const RationalQT& s, const HalfPowerQT& x) { return {s * x.value, x.odd}; }

    bool operator==(const HalfPowerQT& o) const {
        if (value.is_zero() && o.value.is_zero()) return true;
        return odd == o.odd && value == o.value;
    }

    std::string str() const { return odd ? "A*" + value.str() : value.str(); }
};

/// F~ = A^{|D|+ - |D|- - s + 1} F, invariant under all Markov moves.
inline HalfPowerQT homfly_F_tilde(const BraidWord& b) {
    int e = b.positive_crossings() - b.negative_crossings() - b.strands + 1;
    return HalfPowerQT{homfly_F(b), false}.times_A(e);
}

}  // namespace trigrad
