#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cendalg/cochain.hpp"

namespace cendalg {

// Element of a singular extension: an algebra part plus a module part.
struct ExtElem {
    AlgElem alg;
    ModElem mod;

    bool is_zero() const { return alg.is_zero() && mod.is_zero(); }

    ExtElem& operator+=(const ExtElem& o) {
        alg += o.alg;
        mod += o.mod;
        return *this;
    }
    ExtElem& operator-=(const ExtElem& o) {
        alg -= o.alg;
        mod -= o.mod;
        return *this;
    }
    friend ExtElem operator+(ExtElem a, const ExtElem& b) { return a += b; }
    friend ExtElem operator-(ExtElem a, const ExtElem& b) { return a -= b; }
    ExtElem scaled(const Rat& s) const { return {alg.scaled(s), mod.scaled(s)}; }
    ExtElem dmul(const DPoly& h) const { return {alg.dmul(h), mod.dmul(h)}; }

    friend bool operator==(const ExtElem&, const ExtElem&) = default;
};

// The algebra twisted by a 2-cochain on the direct sum with a bimodule:
//   (a1 + u1) o_n (a2 + u2) = a1 o_n a2 + a1 o_n u2 + u1 o_n a2 + phi_n(a1, a2),
// products of two module parts vanish.
class ExtensionAlgebra {
public:
    ExtensionAlgebra(BimodulePtr module, Cochain2 phi)
        : module_(std::move(module)), phi_(std::move(phi)) {}

    const BimodulePtr& module() const { return module_; }
    const Cochain2& phi() const { return phi_; }

    ExtElem product(const ExtElem& p, const ExtElem& q, int n) const {
        ExtElem r;
        r.alg = nproduct(p.alg, q.alg, n);
        r.mod = module_->act_left(p.alg, n, q.mod);
        r.mod += module_->act_right(p.mod, n, q.alg);
        r.mod += phi_.eval(n, p.alg, q.alg);
        return r;
    }

private:
    BimodulePtr module_;
    Cochain2 phi_;
};

inline ExtElem ext_product(const ExtElem& p, const ExtElem& q, int n,
                           const ExtensionAlgebra& b) {
    return b.product(p, q, n);
}

struct ExtAssocReport {
    struct Violation {
        // generator indices: positive value k means (x^k, 0), a key names (0, e).
        std::string a, b, c;
        long n, m;
        int form;  // 1 or 2
    };
    int kmax = 0, nmax = 0;
    long checked = 0;
    std::vector<Violation> violations;
    bool pass() const { return violations.empty(); }
};

// Both associativity forms over generators (x^k, 0) and (0, e) of the
// extension.  For a valid bimodule this passes exactly when the twisting
// cochain is a cocycle at matching bounds.
inline ExtAssocReport check_extension_associativity(const ExtensionAlgebra& B, int kmax,
                                                    int nmax) {
    ExtAssocReport rep;
    rep.kmax = kmax;
    rep.nmax = nmax;

    std::vector<std::pair<std::string, ExtElem>> gens;
    for (long k = 1; k <= kmax; ++k)
        gens.emplace_back("x^" + std::to_string(k), ExtElem{x_power(k), {}});
    for (const auto& e : B.module()->sample_basis(kmax))
        gens.emplace_back("[" + e + "]", ExtElem{{}, ModElem::term(e, DPoly::constant(1))});

    for (const auto& [na, a] : gens)
        for (const auto& [nb, b] : gens)
            for (const auto& [nc, c] : gens)
                for (int n = 0; n <= nmax; ++n)
                    for (int m = 0; m <= nmax; ++m) {
                        ++rep.checked;
                        ExtElem lhs1 = B.product(B.product(a, b, n), c, m);
                        ExtElem rhs1;
                        for (int s = 0; s <= n; ++s) {
                            Rat coef(BigInt((s % 2 == 0) ? 1 : -1) * binomial(n, s));
                            rhs1 += B.product(a, B.product(b, c, m + s), n - s).scaled(coef);
                        }
                        if (!(lhs1 == rhs1))
                            rep.violations.push_back({na, nb, nc, n, m, 1});

                        ++rep.checked;
                        ExtElem lhs2 = B.product(a, B.product(b, c, m), n);
                        ExtElem rhs2;
                        for (int t = 0; t <= n; ++t)
                            rhs2 += B.product(B.product(a, b, n - t), c, m + t)
                                        .scaled(Rat(BigInt(binomial(n, t))));
                        if (!(lhs2 == rhs2))
                            rep.violations.push_back({na, nb, nc, n, m, 2});
                    }
    return rep;
}

// Section of the quotient map induced by a splitting: a -> (a, -psi(a)).
// The module part of (a, -psi(a)) o_n (b, -psi(b)) is
//   -a o_n psi(b) - psi(a) o_n b + phi_n(a, b) = -psi(a o_n b) + (phi - delta psi)_n(a, b),
// so the image is closed under every product exactly when phi = delta psi;
// the minus sign is what turns closure into that identity.
class SplittingEmbedding {
public:
    explicit SplittingEmbedding(Cochain1 psi_total) : psi_(std::move(psi_total)) {}

    ExtElem operator()(const AlgElem& a) const { return {a, -psi_(a)}; }
    const Cochain1& section_cochain() const { return psi_; }

private:
    Cochain1 psi_;
};

struct EmbeddingClosureReport {
    struct Violation {
        long k, l;
        int n;
    };
    int kmax = 0, nmax = 0;
    long checked = 0;
    std::vector<Violation> violations;
    bool pass() const { return violations.empty(); }
};

inline EmbeddingClosureReport check_embedding_closure(const SplittingEmbedding& emb,
                                                      const ExtensionAlgebra& B, int kmax,
                                                      int nmax) {
    EmbeddingClosureReport rep;
    rep.kmax = kmax;
    rep.nmax = nmax;
    for (long k = 1; k <= kmax; ++k)
        for (long l = 1; l <= kmax; ++l)
            for (int n = 0; n <= nmax; ++n) {
                ++rep.checked;
                ExtElem prod = B.product(emb(x_power(k)), emb(x_power(l)), n);
                ExtElem want = emb(nproduct(x_power(k), x_power(l), n));
                if (!(prod == want)) rep.violations.push_back({k, l, n});
            }
    return rep;
}

// Builds the section for a verified splitting and checks its closure within
// the given bounds.
inline SplittingEmbedding splitting_embedding(const Cochain1& psi_total,
                                              const ExtensionAlgebra& B, int kmax, int nmax) {
    SplittingEmbedding emb(psi_total);
    auto rep = check_embedding_closure(emb, B, kmax, nmax);
    if (!rep.pass()) {
        const auto& v = rep.violations.front();
        throw NotClosed("section image not closed at (x^" + std::to_string(v.k) + ", x^" +
                        std::to_string(v.l) + ", n=" + std::to_string(v.n) + ")");
    }
    return emb;
}

}  // namespace cendalg
