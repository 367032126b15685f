#pragma once

#include <map>
#include <utility>

#include "cendalg/dpoly.hpp"

namespace cendalg {

// Finite formal sum  sum_k p_k(D) * e_k  over an ordered key set, with
// D-polynomial coefficients and no stored zero terms.
template <class Key>
class FormalSum {
public:
    using TermMap = std::map<Key, DPoly>;

    FormalSum() = default;

    static FormalSum term(Key k, DPoly p) {
        FormalSum s;
        s.add_term(std::move(k), std::move(p));
        return s;
    }

    bool is_zero() const { return t_.empty(); }
    const TermMap& terms() const { return t_; }

    DPoly coeff(const Key& k) const {
        auto it = t_.find(k);
        return it == t_.end() ? DPoly() : it->second;
    }

    void add_term(Key k, DPoly p) {
        if (p.is_zero()) return;
        auto [it, fresh] = t_.try_emplace(std::move(k), std::move(p));
        if (!fresh) {
            it->second += p;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    FormalSum& operator+=(const FormalSum& o) {
        for (const auto& [k, p] : o.t_) add_term(k, p);
        return *this;
    }
    FormalSum& operator-=(const FormalSum& o) {
        for (const auto& [k, p] : o.t_) add_term(k, -p);
        return *this;
    }
    friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
    friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }
    friend FormalSum operator-(const FormalSum& a) { return a.scaled(Rat(-1)); }

    FormalSum scaled(const Rat& s) const {
        FormalSum r;
        if (s.is_zero()) return r;
        for (const auto& [k, p] : t_) r.t_.emplace(k, p.scaled(s));
        return r;
    }

    // Module action of h(D): multiply every coefficient polynomial by h.
    FormalSum dmul(const DPoly& h) const {
        FormalSum r;
        for (const auto& [k, p] : t_) r.add_term(k, h * p);
        return r;
    }

    FormalSum times_D() const {
        FormalSum r;
        for (const auto& [k, p] : t_) r.t_.emplace(k, p.times_D());
        return r;
    }

    int max_ddeg() const {
        int d = 0;
        for (const auto& [k, p] : t_)
            if (auto dg = p.degree()) d = std::max(d, *dg);
        return d;
    }

    friend bool operator==(const FormalSum& a, const FormalSum& b) { return a.t_ == b.t_; }

private:
    TermMap t_;
};

namespace detail {

// a *_m (D^beta b) reduced through  a *_m (D c) = D(a *_m c) + m (a *_{m-1} c).
template <class Out, class Base, class KA, class KB>
Out strip_second(const KA& a, const KB& b, int beta, int m, Base&& base) {
    if (m < 0) return Out{};
    if (beta == 0) return base(a, b, m);
    Out r = strip_second<Out>(a, b, beta - 1, m, base).times_D();
    if (m > 0) {
        Out lower = strip_second<Out>(a, b, beta - 1, m - 1, base);
        r += lower.scaled(Rat(m));
    }
    return r;
}

// (D^alpha a) *_n (D^beta b); the first slot reduces through
// (D a) *_n b = -n (a *_{n-1} b), which contributes (-1)^alpha n(n-1)...
template <class Out, class Base, class KA, class KB>
Out strip_both(const KA& a, const KB& b, int alpha, int beta, int n, Base&& base) {
    if (n < alpha) return Out{};
    Rat c(BigInt((alpha % 2 == 0) ? 1 : -1) * falling_factorial(n, alpha));
    Out r = strip_second<Out>(a, b, beta, n - alpha, base);
    return r.scaled(c);
}

}  // namespace detail

// Extends a bilinear family given on basis pairs,  base(a, b, m) with
// m >= 0, to D-polynomial coefficients on both slots.  The same two shift
// rules govern products, module actions, and 2-cochain coefficient families,
// so every such evaluation funnels through here.
template <class Out, class KA, class KB, class Base>
Out bilinear_conformal(const DPoly& p, const KA& a, const DPoly& q, const KB& b, int n,
                       Base&& base) {
    Out acc;
    for (const auto& [alpha, ca] : p.coeffs())
        for (const auto& [beta, cb] : q.coeffs()) {
            Out t = detail::strip_both<Out>(a, b, alpha, beta, n, base);
            acc += t.scaled(ca * cb);
        }
    return acc;
}

}  // namespace cendalg
