#pragma once

#include <cstdint>
#include <random>

#include "cendalg/cochain.hpp"

namespace cendalg {

// Seeded generator for fuzz corpora.  Draws reduce raw engine output
// modulo the range so that a seed reproduces the same corpus everywhere.
class FuzzRng {
public:
    explicit FuzzRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    long range(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(raw() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool chance(int percent) { return range(0, 99) < percent; }

    // Small nonzero rational; occasional denominator 2 keeps reduction honest.
    Rat small_rat() {
        long n = range(1, 3) * (chance(50) ? 1 : -1);
        return chance(25) ? Rat(BigInt(n), BigInt(2)) : Rat(n);
    }

    DPoly dpoly(int max_ddeg) {
        DPoly p = DPoly::monomial(static_cast<int>(range(0, max_ddeg)), small_rat());
        if (chance(40)) p.add(static_cast<int>(range(0, max_ddeg)), small_rat());
        return p;
    }

    ModElem mod_elem(const Bimodule& m, int max_terms, int max_ddeg, int key_window) {
        auto keys = m.sample_basis(key_window);
        ModElem v;
        long terms = range(1, max_terms);
        for (long i = 0; i < terms; ++i)
            v.add_term(keys[static_cast<std::size_t>(range(0, static_cast<long>(keys.size()) - 1))],
                       dpoly(max_ddeg));
        return v;
    }

    // Sparse 1-cochain: at most max_support values on x^1..x^{l_max}, each a
    // small module element.
    Cochain1 cochain1(const BimodulePtr& module, int max_support, int l_max, int max_terms,
                      int max_ddeg, int key_window) {
        Cochain1 tau(module);
        long support = range(1, max_support);
        for (long i = 0; i < support; ++i)
            tau.set(range(1, l_max), mod_elem(*module, max_terms, max_ddeg, key_window));
        return tau;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace cendalg
