#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cendalg/bimodule.hpp"

namespace cendalg {

// 1-cochain: a D-linear map from the algebra into a bimodule, stored sparsely
// by its values on the basis powers.  tau(p(D) x^l) = p(D) tau(x^l) holds by
// construction.
class Cochain1 {
public:
    Cochain1() = default;
    explicit Cochain1(BimodulePtr module) : module_(std::move(module)) {}

    static Cochain1 zero(BimodulePtr module) { return Cochain1(std::move(module)); }

    const BimodulePtr& module() const { return module_; }
    const std::map<long, ModElem>& values() const { return values_; }
    bool is_zero() const { return values_.empty(); }

    void set(long l, ModElem v) {
        if (l < 1) throw Error("1-cochain index must be >= 1");
        if (v.is_zero())
            values_.erase(l);
        else
            values_[l] = std::move(v);
    }

    ModElem value(long l) const {
        auto it = values_.find(l);
        return it == values_.end() ? ModElem() : it->second;
    }

    ModElem operator()(const AlgElem& a) const {
        ModElem acc;
        for (const auto& [k, p] : a.terms()) {
            auto it = values_.find(k);
            if (it != values_.end()) acc += it->second.dmul(p);
        }
        return acc;
    }

    friend Cochain1 operator+(const Cochain1& a, const Cochain1& b) {
        Cochain1 r(a.module_ ? a.module_ : b.module_);
        r.values_ = a.values_;
        for (const auto& [l, v] : b.values_) {
            auto it = r.values_.find(l);
            if (it == r.values_.end()) {
                r.values_.emplace(l, v);
            } else {
                it->second += v;
                if (it->second.is_zero()) r.values_.erase(it);
            }
        }
        return r;
    }

    friend bool operator==(const Cochain1& a, const Cochain1& b) {
        return a.values_ == b.values_;
    }

private:
    BimodulePtr module_;
    std::map<long, ModElem> values_;
};

inline ModElem eval1(const Cochain1& tau, const AlgElem& a) { return tau(a); }

// The data that determines a 2-cocycle: the diagonal values phi_t(x, x) for
// t >= 1 and the first row phi_0(x, x^l) for l >= 1, both finitely supported.
struct SeedData {
    std::map<long, ModElem> diag;
    std::map<long, ModElem> row0;

    void canonicalize() {
        for (auto it = diag.begin(); it != diag.end();)
            it = it->second.is_zero() ? diag.erase(it) : std::next(it);
        for (auto it = row0.begin(); it != row0.end();)
            it = it->second.is_zero() ? row0.erase(it) : std::next(it);
    }

    ModElem diag_at(long t) const {
        auto it = diag.find(t);
        return it == diag.end() ? ModElem() : it->second;
    }
    ModElem row0_at(long l) const {
        auto it = row0.find(l);
        return it == row0.end() ? ModElem() : it->second;
    }

    friend bool operator==(const SeedData&, const SeedData&) = default;
};

// 2-cochain as a lazy evaluator of the coefficient family phi_s(x^k, x^l);
// general arguments reduce through the two shift rules
//   phi_s(D a, b) = -s phi_{s-1}(a, b)
//   phi_s(a, D b) = D phi_s(a, b) + s phi_{s-1}(a, b).
// Basis values are memoized behind a mutex, shared across copies.
class Cochain2 {
public:
    // delta tau, evaluated as tau(a) o_n b - tau(a o_n b) + a o_n tau(b).
    static Cochain2 coboundary(Cochain1 tau) {
        auto st = std::make_shared<State>();
        st->module = tau.module();
        st->tau = std::move(tau);
        st->kind = Kind::Coboundary;
        return Cochain2(std::move(st));
    }

    // The unique candidate determined by seed data through the two raising
    // recurrences (second argument first, then the first argument).
    static Cochain2 from_seeds(SeedData seeds, BimodulePtr module) {
        auto st = std::make_shared<State>();
        st->module = std::move(module);
        seeds.canonicalize();
        st->seeds = std::move(seeds);
        st->kind = Kind::Seeds;
        return Cochain2(std::move(st));
    }

    static Cochain2 difference(Cochain2 a, Cochain2 b) {
        auto st = std::make_shared<State>();
        st->module = a.module();
        st->kind = Kind::Difference;
        st->lhs = std::make_shared<Cochain2>(std::move(a));
        st->rhs = std::make_shared<Cochain2>(std::move(b));
        return Cochain2(std::move(st));
    }

    static Cochain2 zero(BimodulePtr module) {
        return from_seeds(SeedData{}, std::move(module));
    }

    const BimodulePtr& module() const { return st_->module; }

    // phi_s(x^k, x^l)
    ModElem basis_value(int s, long k, long l) const {
        if (s < 0 || k < 1 || l < 1) throw Error("bad 2-cochain index");
        auto key = std::make_tuple(s, k, l);
        {
            std::lock_guard lock(st_->mutex);
            auto it = st_->memo.find(key);
            if (it != st_->memo.end()) return it->second;
        }
        ModElem r = compute(s, k, l);
        std::lock_guard lock(st_->mutex);
        return st_->memo.try_emplace(key, std::move(r)).first->second;
    }

    // phi_s(a, b) for arbitrary elements.
    ModElem eval(int s, const AlgElem& a, const AlgElem& b) const {
        if (s < 0) throw Error("bad 2-cochain index");
        ModElem acc;
        for (const auto& [k, pa] : a.terms())
            for (const auto& [l, pb] : b.terms())
                acc += bilinear_conformal<ModElem>(
                    pa, k, pb, l, s,
                    [this](long kk, long ll, int t) { return basis_value(t, kk, ll); });
        return acc;
    }

    // Certified N with phi_s(x, x) = 0 for all s >= N.
    int locality_bound() const {
        int upper = structural_diag_bound();
        for (int s = upper - 1; s >= 0; --s)
            if (!basis_value(s, 1, 1).is_zero()) return s + 1;
        return 0;
    }

private:
    enum class Kind { Coboundary, Seeds, Difference };

    struct State {
        Kind kind;
        BimodulePtr module;
        Cochain1 tau;    // Coboundary
        SeedData seeds;  // Seeds
        std::shared_ptr<Cochain2> lhs, rhs;  // Difference
        mutable std::mutex mutex;
        mutable std::map<std::tuple<int, long, long>, ModElem> memo;
    };

    explicit Cochain2(std::shared_ptr<State> st) : st_(std::move(st)) {}

    const Bimodule& mod() const { return *st_->module; }

    ModElem compute(int s, long k, long l) const {
        switch (st_->kind) {
            case Kind::Coboundary: {
                const Cochain1& tau = st_->tau;
                ModElem r = mod().act_right(tau(x_power(k)), s, x_power(l));
                r -= tau(nproduct(x_power(k), x_power(l), s));
                r += mod().act_left(x_power(k), s, tau(x_power(l)));
                return r;
            }
            case Kind::Difference:
                return st_->lhs->basis_value(s, k, l) - st_->rhs->basis_value(s, k, l);
            case Kind::Seeds:
                return reconstruct(s, k, l);
        }
        return {};
    }

    // Seed reconstruction.  Raising the second argument (k = 1):
    //   phi_n(x, x^{q+1}) = x o_0 phi_n(x, x^q) + n! C(q,n) phi_0(x, x^{q+1-n})
    //                     + n phi_{n-1}(x, x^q)
    //                     + sum_{j=0}^{n-1} C(n,j) phi_{n-j}(x,x) o_j x^q
    //                     - x o_n phi_0(x, x^q),
    // then raising the first argument:
    //   phi_m(x^{l+1}, x^q) = x o_0 phi_m(x^l, x^q) + m! C(q,m) phi_0(x, x^{l+q-m})
    //                       - phi_0(x, x^l) o_m x^q.
    ModElem reconstruct(int s, long k, long l) const {
        const SeedData& sd = st_->seeds;
        if (k == 1) {
            if (l == 1) return s == 0 ? sd.row0_at(1) : sd.diag_at(s);
            if (s == 0) return sd.row0_at(l);
            long q = l - 1;
            ModElem r = mod().act_left(x_gen(), 0, basis_value(s, 1, q));
            if (s <= q) {
                Rat c(factorial(s) * binomial(q, s));
                r += sd.row0_at(q + 1 - s).scaled(c);
            }
            r += basis_value(s - 1, 1, q).scaled(Rat(s));
            for (int j = 0; j + 1 <= s; ++j)
                r += mod()
                         .act_right(sd.diag_at(s - j), j, x_power(q))
                         .scaled(Rat(BigInt(binomial(s, j))));
            r -= mod().act_left(x_gen(), s, sd.row0_at(q));
            return r;
        }
        ModElem r = mod().act_left(x_gen(), 0, basis_value(s, k - 1, l));
        if (s <= l) {
            Rat c(factorial(s) * binomial(l, s));
            r += sd.row0_at(k - 1 + l - s).scaled(c);
        }
        r -= mod().act_right(sd.row0_at(k - 1), s, x_power(l));
        return r;
    }

    int structural_diag_bound() const {
        switch (st_->kind) {
            case Kind::Coboundary: {
                ModElem tx = st_->tau(x_gen());
                int b = std::max(mod().right_elem_bound(tx), mod().left_elem_bound(tx));
                return std::max(b, locality(x_gen(), x_gen()));
            }
            case Kind::Seeds:
                return st_->seeds.diag.empty() ? 0 : static_cast<int>(
                    st_->seeds.diag.rbegin()->first) + 1;
            case Kind::Difference:
                return std::max(st_->lhs->structural_diag_bound(),
                                st_->rhs->structural_diag_bound());
        }
        return 0;
    }

    std::shared_ptr<State> st_;
};

inline Cochain2 d1(const Cochain1& tau) { return Cochain2::coboundary(tau); }

inline ModElem eval2(const Cochain2& phi, int s, const AlgElem& a, const AlgElem& b) {
    return phi.eval(s, a, b);
}

// Component (m, n) of the degree-2 differential:
//   a o_m phi_n(b, c) + phi_m(a, b o_n c)
//     - sum_s C(m,s) [ phi_{n+s}(a o_{m-s} b, c) + phi_{m-s}(a, b) o_{n+s} c ].
inline ModElem d2_eval(const Cochain2& phi, int m, int n, const AlgElem& a, const AlgElem& b,
                       const AlgElem& c) {
    if (m < 0 || n < 0) throw Error("bad differential index");
    const Bimodule& M = *phi.module();
    ModElem r = M.act_left(a, m, phi.eval(n, b, c));
    r += phi.eval(m, a, nproduct(b, c, n));
    for (int s = 0; s <= m; ++s) {
        Rat c0(BigInt(binomial(m, s)));
        r -= phi.eval(n + s, nproduct(a, b, m - s), c).scaled(c0);
        r -= M.act_right(phi.eval(m - s, a, b), n + s, c).scaled(c0);
    }
    return r;
}

struct CocycleReport {
    struct Violation {
        long m, n, k, l, q;
    };
    int kmax = 0, nmax = 0;
    long checked = 0;
    std::vector<Violation> violations;
    bool pass() const { return violations.empty(); }
};

// d2 phi = 0 on all basis triples with powers <= kmax and indices <= nmax.
inline CocycleReport is_cocycle(const Cochain2& phi, int kmax, int nmax) {
    CocycleReport rep;
    rep.kmax = kmax;
    rep.nmax = nmax;
    for (long k = 1; k <= kmax; ++k)
        for (long l = 1; l <= kmax; ++l)
            for (long q = 1; q <= kmax; ++q)
                for (int m = 0; m <= nmax; ++m)
                    for (int n = 0; n <= nmax; ++n) {
                        ++rep.checked;
                        if (!d2_eval(phi, m, n, x_power(k), x_power(l), x_power(q)).is_zero())
                            rep.violations.push_back({m, n, k, l, q});
                    }
    return rep;
}

// Extracts the determining data of phi: the nonzero diagonal up to the
// certified bound and the first row up to l_cutoff.
inline SeedData seeds_of(const Cochain2& phi, long l_cutoff) {
    SeedData sd;
    int bound = phi.locality_bound();
    for (int t = 1; t < bound; ++t) sd.diag[t] = phi.basis_value(t, 1, 1);
    for (long l = 1; l <= l_cutoff; ++l) sd.row0[l] = phi.basis_value(0, 1, l);
    sd.canonicalize();
    return sd;
}

inline int locality_bound(const Cochain2& phi) { return phi.locality_bound(); }

}  // namespace cendalg
