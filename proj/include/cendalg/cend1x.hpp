#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cendalg/formal_sum.hpp"

namespace cendalg {

// Element of the conformal endomorphism algebra generated by x: a finite sum
// sum_k p_k(D) x^k with k >= 1.  The lower bound on k is structural; the free
// generators are the powers x, x^2, ...
class AlgElem {
public:
    AlgElem() = default;

    static AlgElem basis(long k) { return monomial(DPoly::constant(1), k); }
    static AlgElem monomial(DPoly p, long k) {
        if (k < 1) throw Error("algebra basis index must be >= 1");
        AlgElem a;
        a.t_.add_term(k, std::move(p));
        return a;
    }

    bool is_zero() const { return t_.is_zero(); }
    const FormalSum<long>::TermMap& terms() const { return t_.terms(); }
    DPoly coeff(long k) const { return t_.coeff(k); }
    int max_ddeg() const { return t_.max_ddeg(); }
    long max_key() const { return t_.is_zero() ? 0 : t_.terms().rbegin()->first; }

    AlgElem& operator+=(const AlgElem& o) {
        t_ += o.t_;
        return *this;
    }
    AlgElem& operator-=(const AlgElem& o) {
        t_ -= o.t_;
        return *this;
    }
    friend AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
    friend AlgElem operator-(AlgElem a, const AlgElem& b) { return a -= b; }
    friend AlgElem operator-(const AlgElem& a) { return a.scaled(Rat(-1)); }

    AlgElem scaled(const Rat& s) const {
        AlgElem r;
        r.t_ = t_.scaled(s);
        return r;
    }
    AlgElem dmul(const DPoly& h) const {
        AlgElem r;
        r.t_ = t_.dmul(h);
        return r;
    }
    AlgElem times_D() const {
        AlgElem r;
        r.t_ = t_.times_D();
        return r;
    }

    friend bool operator==(const AlgElem& a, const AlgElem& b) { return a.t_ == b.t_; }

    std::string str() const {
        if (t_.is_zero()) return "0";
        std::string s;
        for (const auto& [k, p] : t_.terms()) {
            if (!s.empty()) s += " + ";
            s += "(" + p.str() + ")*x^" + std::to_string(k);
        }
        return s;
    }

private:
    FormalSum<long> t_;
};

inline AlgElem x_power(long k) { return AlgElem::basis(k); }
inline AlgElem x_gen() { return AlgElem::basis(1); }

// n-th product.  On basis powers the product acts like iterated
// differentiation of the right factor:
//   x^l o_m x^q = m! C(q, m) x^{l+q-m}   (zero for m > q),
// and D-laden inputs reduce through the two shift rules first.
inline AlgElem nproduct(const AlgElem& a, const AlgElem& b, int n) {
    if (n < 0) throw Error("product index must be >= 0");
    AlgElem acc;
    for (const auto& [k, pa] : a.terms())
        for (const auto& [l, pb] : b.terms())
            acc += bilinear_conformal<AlgElem>(
                pa, k, pb, l, n, [](long kk, long ll, int m) {
                    if (m > ll) return AlgElem();
                    Rat c(factorial(m) * binomial(ll, m));
                    return AlgElem::monomial(DPoly::constant(c), kk + ll - m);
                });
    return acc;
}

// Minimal N with a o_k b = 0 for all k >= N; zero arguments give 0.
inline int locality(const AlgElem& a, const AlgElem& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    // structural vanishing bound: q + (D-degrees on both slots) + 1
    int bound = static_cast<int>(b.max_key()) + a.max_ddeg() + b.max_ddeg() + 1;
    for (int k = bound - 1; k >= 0; --k)
        if (!nproduct(a, b, k).is_zero()) return k + 1;
    return 0;
}

// Both associativity identities at one index pair (n, m):
//   (a o_n b) o_m c = sum_s (-1)^s C(n,s) a o_{n-s} (b o_{m+s} c)
//   a o_n (b o_m c) = sum_t C(n,t) (a o_{n-t} b) o_{m+t} c
inline bool check_associativity(const AlgElem& a, const AlgElem& b, const AlgElem& c, int n,
                                int m) {
    AlgElem lhs1 = nproduct(nproduct(a, b, n), c, m);
    AlgElem rhs1;
    for (int s = 0; s <= n; ++s) {
        Rat coef(BigInt((s % 2 == 0) ? 1 : -1) * binomial(n, s));
        rhs1 += nproduct(a, nproduct(b, c, m + s), n - s).scaled(coef);
    }
    if (!(lhs1 == rhs1)) return false;

    AlgElem lhs2 = nproduct(a, nproduct(b, c, m), n);
    AlgElem rhs2;
    for (int t = 0; t <= n; ++t)
        rhs2 += nproduct(nproduct(a, b, n - t), c, m + t).scaled(Rat(BigInt(binomial(n, t))));
    return lhs2 == rhs2;
}

struct AlgebraCheckReport {
    struct Violation {
        std::string identity;
        std::vector<long> args;
    };
    long checked = 0;
    std::vector<Violation> violations;
    bool pass() const { return violations.empty(); }
};

// Regression sweep over the defining identities of the algebra: structure
// constants, locality, the two shift rules, and both associativity forms.
inline AlgebraCheckReport run_algebra_checks(int kmax, int nmax) {
    AlgebraCheckReport rep;
    auto fail = [&rep](std::string id, std::initializer_list<long> args) {
        rep.violations.push_back({std::move(id), std::vector<long>(args)});
    };

    for (long l = 1; l <= kmax; ++l)
        for (long q = 1; q <= kmax; ++q)
            for (int m = 0; m <= nmax; ++m) {
                ++rep.checked;
                AlgElem want;
                if (m <= q)
                    want = AlgElem::monomial(
                        DPoly::constant(Rat(factorial(m) * binomial(q, m))), l + q - m);
                if (!(nproduct(x_power(l), x_power(q), m) == want))
                    fail("structure_constants", {l, q, m});
                if (m > q && !nproduct(x_power(l), x_power(q), m).is_zero())
                    fail("locality", {l, q, m});
            }

    // shift rules on D-laden elements
    for (long k = 1; k <= kmax; ++k)
        for (long q = 1; q <= kmax; ++q)
            for (int n = 0; n <= nmax; ++n) {
                ++rep.checked;
                AlgElem a = AlgElem::monomial(DPoly::variable(), k);  // D*x^k
                AlgElem b = x_power(q);
                AlgElem lhs = nproduct(a, b, n);
                AlgElem rhs = (n == 0) ? AlgElem()
                                       : nproduct(x_power(k), b, n - 1).scaled(Rat(-n));
                if (!(lhs == rhs)) fail("left_shift_rule", {k, q, n});

                AlgElem db = AlgElem::monomial(DPoly::variable(), q);
                AlgElem lhs2 = nproduct(x_power(k), db, n);
                AlgElem rhs2 = nproduct(x_power(k), b, n).times_D();
                if (n > 0) rhs2 += nproduct(x_power(k), b, n - 1).scaled(Rat(n));
                if (!(lhs2 == rhs2)) fail("right_shift_rule", {k, q, n});
            }

    for (long k = 1; k <= kmax; ++k)
        for (long l = 1; l <= kmax; ++l)
            for (long q = 1; q <= kmax; ++q)
                for (int n = 0; n <= nmax; ++n)
                    for (int m = 0; m <= nmax; ++m) {
                        ++rep.checked;
                        if (!check_associativity(x_power(k), x_power(l), x_power(q), n, m))
                            fail("associativity", {k, l, q, n, m});
                    }
    return rep;
}

}  // namespace cendalg
