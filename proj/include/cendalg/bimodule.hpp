#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cendalg/cend1x.hpp"

namespace cendalg {

using ModKey = std::string;
using ModElem = FormalSum<ModKey>;

// Conformal bimodule presented by the action of the generator x on basis keys,
// both sides, below per-key locality bounds.  Actions of higher powers and of
// D-laden arguments are derived:
//   x^k o_n v           = x o_0 (x^{k-1} o_n v)
//   v o_n x^k           = sum_t C(n,t) (v o_{n-t} x) o_t x^{k-1}
// plus the two D shift rules on each slot.  Derived basis actions are
// memoized; instances are immutable and safe to share across threads.
class Bimodule {
public:
    virtual ~Bimodule() = default;

    // x o_n e, for n < left_bound(e).
    virtual ModElem left_gen(const ModKey& e, int n) const = 0;
    // e o_n x, for n < right_bound(e).
    virtual ModElem right_gen(const ModKey& e, int n) const = 0;
    virtual int left_bound(const ModKey& e) const = 0;
    virtual int right_bound(const ModKey& e) const = 0;
    // A finite window of basis keys for checks and fuzzing.
    virtual std::vector<ModKey> sample_basis(int count) const = 0;
    virtual std::string name() const = 0;

    ModElem act_left(const AlgElem& a, int n, const ModElem& v) const {
        if (n < 0) throw Error("action index must be >= 0");
        ModElem acc;
        for (const auto& [k, pa] : a.terms())
            for (const auto& [e, pv] : v.terms())
                acc += bilinear_conformal<ModElem>(
                    pa, k, pv, e, n,
                    [this](long kk, const ModKey& ee, int m) { return basis_left(kk, m, ee); });
        return acc;
    }

    ModElem act_right(const ModElem& v, int n, const AlgElem& a) const {
        if (n < 0) throw Error("action index must be >= 0");
        ModElem acc;
        for (const auto& [e, pv] : v.terms())
            for (const auto& [k, pa] : a.terms())
                acc += bilinear_conformal<ModElem>(
                    pv, e, pa, k, n,
                    [this](const ModKey& ee, long kk, int m) { return basis_right(ee, m, kk); });
        return acc;
    }

    // N with x^k o_n v = 0 for every k >= 1 and n >= N.
    int left_elem_bound(const ModElem& v) const {
        int b = 0;
        for (const auto& [e, p] : v.terms())
            b = std::max(b, left_bound(e) + p.degree().value_or(0));
        return b;
    }

    // N with v o_n x^k = 0 for n >= N.
    int right_elem_bound(const ModElem& v, long k = 1) const {
        if (v.is_zero()) return 0;
        int b1 = 0;
        for (const auto& [e, p] : v.terms())
            b1 = std::max(b1, right_bound(e) + p.degree().value_or(0));
        if (k == 1) return b1;
        int inner = 0;
        for (int j = 0; j < b1; ++j)
            inner = std::max(inner, right_elem_bound(act_right(v, j, x_gen()), k - 1));
        return b1 + inner;
    }

private:
    ModElem basis_left(long k, int n, const ModKey& e) const {
        if (k == 1) {
            if (n >= left_bound(e)) return {};
            return left_gen(e, n);
        }
        auto key = std::make_tuple(k, n, e);
        {
            std::lock_guard lock(memo_mutex_);
            auto it = left_memo_.find(key);
            if (it != left_memo_.end()) return it->second;
        }
        ModElem r = act_left(x_gen(), 0, basis_left(k - 1, n, e));
        std::lock_guard lock(memo_mutex_);
        return left_memo_.try_emplace(std::move(key), std::move(r)).first->second;
    }

    ModElem basis_right(const ModKey& e, int n, long k) const {
        if (k == 1) {
            if (n >= right_bound(e)) return {};
            return right_gen(e, n);
        }
        auto key = std::make_tuple(e, n, k);
        {
            std::lock_guard lock(memo_mutex_);
            auto it = right_memo_.find(key);
            if (it != right_memo_.end()) return it->second;
        }
        ModElem r;
        for (int t = 0; t <= n; ++t) {
            ModElem w = basis_right(e, n - t, 1);
            if (w.is_zero()) continue;
            r += act_right(w, t, x_power(k - 1)).scaled(Rat(BigInt(binomial(n, t))));
        }
        std::lock_guard lock(memo_mutex_);
        return right_memo_.try_emplace(std::move(key), std::move(r)).first->second;
    }

    mutable std::mutex memo_mutex_;
    mutable std::map<std::tuple<long, int, ModKey>, ModElem> left_memo_;
    mutable std::map<std::tuple<ModKey, int, long>, ModElem> right_memo_;
};

using BimodulePtr = std::shared_ptr<const Bimodule>;

inline ModElem act_left(const AlgElem& a, int n, const ModElem& v, const Bimodule& m) {
    return m.act_left(a, n, v);
}
inline ModElem act_right(const ModElem& v, int n, const AlgElem& a, const Bimodule& m) {
    return m.act_right(v, n, a);
}

// Left/right multiplication by the generator at one index.
struct LROp {
    enum class Side { L, R };
    Side side;
    int n;
};

inline LROp L_op(int n) { return {LROp::Side::L, n}; }
inline LROp R_op(int n) { return {LROp::Side::R, n}; }

// Operator words compose like products: the rightmost factor acts first, so
// apply_op({L_0, L_2}, v) = L_0(L_2(v)).
inline ModElem apply_op(const std::vector<LROp>& word, ModElem v, const Bimodule& m) {
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        v = it->side == LROp::Side::L ? m.act_left(x_gen(), it->n, v)
                                      : m.act_right(v, it->n, x_gen());
    return v;
}

inline ModElem apply_op(const LROp& op, const ModElem& v, const Bimodule& m) {
    return apply_op(std::vector<LROp>{op}, v, m);
}

// ---- regular bimodule keys -------------------------------------------------

inline ModKey regular_key(long k) { return "x^" + std::to_string(k); }

inline long parse_regular_key(const ModKey& e) {
    if (e.size() < 3 || e[0] != 'x' || e[1] != '^')
        throw ParseError("bad regular basis key: '" + e + "'");
    long k = 0;
    for (std::size_t i = 2; i < e.size(); ++i) {
        if (e[i] < '0' || e[i] > '9') throw ParseError("bad regular basis key: '" + e + "'");
        k = k * 10 + (e[i] - '0');
    }
    if (k < 1) throw ParseError("bad regular basis key: '" + e + "'");
    return k;
}

inline ModElem to_regular(const AlgElem& a) {
    ModElem v;
    for (const auto& [k, p] : a.terms()) v.add_term(regular_key(k), p);
    return v;
}

inline AlgElem from_regular(const ModElem& v) {
    AlgElem a;
    for (const auto& [e, p] : v.terms()) a += AlgElem::monomial(p, parse_regular_key(e));
    return a;
}

// ---- builtin bimodules ------------------------------------------------------

// The algebra acting on itself; basis keys x^k mirror the algebra basis.
class RegularBimodule : public Bimodule {
public:
    ModElem left_gen(const ModKey& e, int n) const override {
        return to_regular(nproduct(x_gen(), x_power(parse_regular_key(e)), n));
    }
    ModElem right_gen(const ModKey& e, int n) const override {
        return to_regular(nproduct(x_power(parse_regular_key(e)), x_gen(), n));
    }
    int left_bound(const ModKey& e) const override {
        return static_cast<int>(parse_regular_key(e)) + 1;
    }
    int right_bound(const ModKey&) const override { return 2; }
    std::vector<ModKey> sample_basis(int count) const override {
        std::vector<ModKey> keys;
        for (long k = 1; k <= count; ++k) keys.push_back(regular_key(k));
        return keys;
    }
    std::string name() const override { return "regular"; }
};

// Left action regular, right action identically zero.
class RegularZeroRightBimodule : public RegularBimodule {
public:
    ModElem right_gen(const ModKey&, int) const override { return {}; }
    int right_bound(const ModKey&) const override { return 0; }
    std::string name() const override { return "regular_zero_right"; }
};

// Nonzero space with all actions zero.
class ZeroActionBimodule : public Bimodule {
public:
    ModElem left_gen(const ModKey&, int) const override { return {}; }
    ModElem right_gen(const ModKey&, int) const override { return {}; }
    int left_bound(const ModKey&) const override { return 0; }
    int right_bound(const ModKey&) const override { return 0; }
    std::vector<ModKey> sample_basis(int count) const override {
        std::vector<ModKey> keys = {"e1", "e2", "e3"};
        if (count < static_cast<int>(keys.size()))
            keys.resize(static_cast<std::size_t>(std::max(count, 0)));
        return keys;
    }
    std::string name() const override { return "zero"; }
};

// Componentwise direct sum; keys are tagged "<part>:<inner key>".
class DirectSumBimodule : public Bimodule {
public:
    explicit DirectSumBimodule(std::vector<BimodulePtr> parts) : parts_(std::move(parts)) {}

    ModElem left_gen(const ModKey& e, int n) const override {
        auto [i, inner] = split(e);
        return tag(parts_[i]->left_gen(inner, n), i);
    }
    ModElem right_gen(const ModKey& e, int n) const override {
        auto [i, inner] = split(e);
        return tag(parts_[i]->right_gen(inner, n), i);
    }
    int left_bound(const ModKey& e) const override {
        auto [i, inner] = split(e);
        return parts_[i]->left_bound(inner);
    }
    int right_bound(const ModKey& e) const override {
        auto [i, inner] = split(e);
        return parts_[i]->right_bound(inner);
    }
    std::vector<ModKey> sample_basis(int count) const override {
        std::vector<ModKey> keys;
        for (std::size_t i = 0; i < parts_.size(); ++i)
            for (const auto& inner : parts_[i]->sample_basis(count))
                keys.push_back(std::to_string(i) + ":" + inner);
        return keys;
    }
    std::string name() const override {
        std::string s;
        for (const auto& p : parts_) {
            if (!s.empty()) s += "+";
            s += p->name();
        }
        return s;
    }

private:
    std::pair<std::size_t, ModKey> split(const ModKey& e) const {
        auto pos = e.find(':');
        if (pos == ModKey::npos) throw ParseError("bad direct-sum key: '" + e + "'");
        std::size_t i = std::stoul(e.substr(0, pos));
        if (i >= parts_.size()) throw ParseError("direct-sum part out of range: '" + e + "'");
        return {i, e.substr(pos + 1)};
    }
    static ModElem tag(const ModElem& v, std::size_t i) {
        ModElem r;
        for (const auto& [e, p] : v.terms()) r.add_term(std::to_string(i) + ":" + e, p);
        return r;
    }

    std::vector<BimodulePtr> parts_;
};

// Finite bimodule given by explicit tables, e.g. loaded from a file.
struct BimoduleTables {
    std::string name = "table";
    std::vector<ModKey> basis;
    std::map<ModKey, int> left_bounds, right_bounds;
    std::map<std::pair<ModKey, int>, ModElem> left, right;
};

class TableBimodule : public Bimodule {
public:
    explicit TableBimodule(BimoduleTables t) : t_(std::move(t)) {
        for (const auto& e : t_.basis) known_.insert(e);
        auto check_values = [this](const auto& table, const char* side) {
            for (const auto& [key, val] : table) {
                if (!known_.count(key.first))
                    throw ParseError(std::string(side) + " table names unknown key '" +
                                     key.first + "'");
                for (const auto& [e, p] : val.terms())
                    if (!known_.count(e))
                        throw ParseError(std::string(side) + " table value names unknown key '" +
                                         e + "'");
            }
        };
        check_values(t_.left, "left");
        check_values(t_.right, "right");
    }

    ModElem left_gen(const ModKey& e, int n) const override {
        return lookup(t_.left, e, n, "left");
    }
    ModElem right_gen(const ModKey& e, int n) const override {
        return lookup(t_.right, e, n, "right");
    }
    int left_bound(const ModKey& e) const override { return bound(t_.left_bounds, e); }
    int right_bound(const ModKey& e) const override { return bound(t_.right_bounds, e); }
    std::vector<ModKey> sample_basis(int count) const override {
        std::vector<ModKey> keys = t_.basis;
        if (count >= 0 && static_cast<int>(keys.size()) > count)
            keys.resize(static_cast<std::size_t>(count));
        return keys;
    }
    std::string name() const override { return t_.name; }
    const BimoduleTables& tables() const { return t_; }

private:
    int bound(const std::map<ModKey, int>& m, const ModKey& e) const {
        auto it = m.find(e);
        if (it == m.end()) {
            if (!known_.count(e)) throw MissingTableEntry("unknown basis key '" + e + "'");
            return 0;  // no declared bound means the generator acts as zero
        }
        return it->second;
    }
    ModElem lookup(const std::map<std::pair<ModKey, int>, ModElem>& table, const ModKey& e,
                   int n, const char* side) const {
        auto it = table.find({e, n});
        if (it == table.end())
            throw MissingTableEntry(std::string(side) + " table has no entry for ('" + e +
                                    "', " + std::to_string(n) + ") below its bound");
        return it->second;
    }

    BimoduleTables t_;
    std::set<ModKey> known_;
};

// Negative-control fixture: one generator table entry shifted by a fixed
// element.  The perturbed index must lie below the base bound.
class PerturbedBimodule : public Bimodule {
public:
    PerturbedBimodule(BimodulePtr base, LROp::Side side, ModKey key, int n, ModElem delta)
        : base_(std::move(base)), side_(side), key_(std::move(key)), n_(n),
          delta_(std::move(delta)) {
        int bound = side_ == LROp::Side::L ? base_->left_bound(key_) : base_->right_bound(key_);
        if (n_ >= bound) throw Error("perturbation index outside the table range");
    }

    ModElem left_gen(const ModKey& e, int n) const override {
        ModElem v = base_->left_gen(e, n);
        if (side_ == LROp::Side::L && e == key_ && n == n_) v += delta_;
        return v;
    }
    ModElem right_gen(const ModKey& e, int n) const override {
        ModElem v = base_->right_gen(e, n);
        if (side_ == LROp::Side::R && e == key_ && n == n_) v += delta_;
        return v;
    }
    int left_bound(const ModKey& e) const override { return base_->left_bound(e); }
    int right_bound(const ModKey& e) const override { return base_->right_bound(e); }
    std::vector<ModKey> sample_basis(int count) const override {
        return base_->sample_basis(count);
    }
    std::string name() const override { return base_->name() + "_perturbed"; }

private:
    BimodulePtr base_;
    LROp::Side side_;
    ModKey key_;
    int n_;
    ModElem delta_;
};

inline BimodulePtr direct_sum(std::vector<BimodulePtr> parts) {
    return std::make_shared<DirectSumBimodule>(std::move(parts));
}

// Builtin fixtures by name; "a+b" builds the direct sum of builtins a and b.
inline BimodulePtr builtin_bimodule(const std::string& name) {
    if (name.find('+') != std::string::npos) {
        std::vector<BimodulePtr> parts;
        std::size_t start = 0;
        while (start <= name.size()) {
            std::size_t pos = name.find('+', start);
            std::string part =
                name.substr(start, pos == std::string::npos ? pos : pos - start);
            parts.push_back(builtin_bimodule(part));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return direct_sum(std::move(parts));
    }
    if (name == "regular") return std::make_shared<RegularBimodule>();
    if (name == "regular_zero_right") return std::make_shared<RegularZeroRightBimodule>();
    if (name == "zero") return std::make_shared<ZeroActionBimodule>();
    throw ParseError("unknown builtin bimodule '" + name + "'");
}

// ---- axiom checker -----------------------------------------------------------

struct BimoduleAxiomReport {
    struct Violation {
        std::string axiom;
        ModKey key;
        std::vector<long> args;  // k, j, n, m as applicable
    };
    int kmax = 0, nmax = 0;
    long checked = 0;
    std::vector<Violation> violations;
    bool pass() const { return violations.empty(); }
};

// Verifies the module and compatibility identities on derived actions over
// basis keys and generator powers up to the given bounds.  Violations are
// returned as data.
inline BimoduleAxiomReport check_bimodule_axioms(const Bimodule& M, int kmax, int nmax) {
    BimoduleAxiomReport rep;
    rep.kmax = kmax;
    rep.nmax = nmax;
    auto fail = [&rep](std::string axiom, const ModKey& e, std::initializer_list<long> args) {
        rep.violations.push_back({std::move(axiom), e, std::vector<long>(args)});
    };

    for (const auto& e : M.sample_basis(kmax)) {
        ModElem ue = ModElem::term(e, DPoly::constant(1));

        // locality of derived actions just beyond the certified bounds
        for (long k = 1; k <= kmax; ++k) {
            int lb = M.left_elem_bound(ue);
            for (int n = lb; n <= lb + 2; ++n) {
                ++rep.checked;
                if (!M.act_left(x_power(k), n, ue).is_zero()) fail("left_locality", e, {k, n});
            }
            int rb = M.right_elem_bound(ue, k);
            for (int n = rb; n <= rb + 2; ++n) {
                ++rep.checked;
                if (!M.act_right(ue, n, x_power(k)).is_zero()) fail("right_locality", e, {k, n});
            }
        }

        // D shift rules on both slots of both actions
        for (long k = 1; k <= std::min(kmax, 2); ++k) {
            AlgElem xk = x_power(k);
            AlgElem dxk = AlgElem::monomial(DPoly::variable(), k);
            ModElem due = ue.times_D();
            for (int n = 0; n <= std::min(nmax, 3); ++n) {
                ++rep.checked;
                ModElem lhs = M.act_left(dxk, n, ue);
                ModElem rhs = n == 0 ? ModElem() : M.act_left(xk, n - 1, ue).scaled(Rat(-n));
                if (!(lhs == rhs)) fail("left_shift_rule", e, {k, n});

                lhs = M.act_left(xk, n, due);
                rhs = M.act_left(xk, n, ue).times_D();
                if (n > 0) rhs += M.act_left(xk, n - 1, ue).scaled(Rat(n));
                if (!(lhs == rhs)) fail("left_d_rule", e, {k, n});

                lhs = M.act_right(due, n, xk);
                rhs = n == 0 ? ModElem() : M.act_right(ue, n - 1, xk).scaled(Rat(-n));
                if (!(lhs == rhs)) fail("right_shift_rule", e, {k, n});

                lhs = M.act_right(ue, n, dxk);
                rhs = M.act_right(ue, n, xk).times_D();
                if (n > 0) rhs += M.act_right(ue, n - 1, xk).scaled(Rat(n));
                if (!(lhs == rhs)) fail("right_d_rule", e, {k, n});
            }
        }

        for (long k = 1; k <= kmax; ++k)
            for (long j = 1; j <= kmax; ++j)
                for (int n = 0; n <= nmax; ++n)
                    for (int m = 0; m <= nmax; ++m) {
                        AlgElem xk = x_power(k), xj = x_power(j);

                        // (a o_m b) o_n v = sum_s (-1)^s C(m,s) a o_{m-s} (b o_{n+s} v)
                        ++rep.checked;
                        ModElem lhs = M.act_left(nproduct(xk, xj, m), n, ue);
                        ModElem rhs;
                        for (int s = 0; s <= m; ++s) {
                            Rat c(BigInt((s % 2 == 0) ? 1 : -1) * binomial(m, s));
                            rhs += M.act_left(xk, m - s, M.act_left(xj, n + s, ue)).scaled(c);
                        }
                        if (!(lhs == rhs)) fail("left_assoc", e, {k, j, n, m});

                        // v o_n (a o_m b) = sum_t C(n,t) (v o_{n-t} a) o_{m+t} b
                        ++rep.checked;
                        lhs = M.act_right(ue, n, nproduct(xk, xj, m));
                        rhs = ModElem();
                        for (int t = 0; t <= n; ++t)
                            rhs += M.act_right(M.act_right(ue, n - t, xk), m + t, xj)
                                       .scaled(Rat(BigInt(binomial(n, t))));
                        if (!(lhs == rhs)) fail("right_assoc", e, {k, j, n, m});

                        // (a o_m v) o_n b = sum_s (-1)^s C(m,s) a o_{m-s} (v o_{n+s} b)
                        ++rep.checked;
                        lhs = M.act_right(M.act_left(xk, m, ue), n, xj);
                        rhs = ModElem();
                        for (int s = 0; s <= m; ++s) {
                            Rat c(BigInt((s % 2 == 0) ? 1 : -1) * binomial(m, s));
                            rhs += M.act_left(xk, m - s, M.act_right(ue, n + s, xj)).scaled(c);
                        }
                        if (!(lhs == rhs)) fail("compatibility", e, {k, j, n, m});
                    }
    }
    return rep;
}

}  // namespace cendalg
