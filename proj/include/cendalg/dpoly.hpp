#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "cendalg/rational.hpp"

namespace cendalg {

// Polynomial in the formal variable D with rational coefficients, stored as a
// sparse degree -> coefficient map with no zero entries.
class DPoly {
public:
    DPoly() = default;

    static DPoly constant(Rat c) {
        DPoly p;
        p.add(0, std::move(c));
        return p;
    }
    static DPoly variable() { return monomial(1, 1); }
    static DPoly monomial(int deg, Rat c) {
        DPoly p;
        p.add(deg, std::move(c));
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is "none".
    std::optional<int> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.rbegin()->first;
    }
    const std::map<int, Rat>& coeffs() const { return c_; }
    Rat coeff(int deg) const {
        auto it = c_.find(deg);
        return it == c_.end() ? Rat(0) : it->second;
    }

    void add(int deg, Rat c) {
        if (c.is_zero()) return;
        auto [it, fresh] = c_.try_emplace(deg, std::move(c));
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    DPoly& operator+=(const DPoly& o) {
        for (const auto& [d, c] : o.c_) add(d, c);
        return *this;
    }
    DPoly& operator-=(const DPoly& o) {
        for (const auto& [d, c] : o.c_) add(d, -c);
        return *this;
    }
    friend DPoly operator+(DPoly a, const DPoly& b) { return a += b; }
    friend DPoly operator-(DPoly a, const DPoly& b) { return a -= b; }
    friend DPoly operator-(const DPoly& a) { return a.scaled(Rat(-1)); }

    friend DPoly operator*(const DPoly& a, const DPoly& b) {
        DPoly r;
        for (const auto& [da, ca] : a.c_)
            for (const auto& [db, cb] : b.c_) r.add(da + db, ca * cb);
        return r;
    }

    DPoly scaled(const Rat& s) const {
        DPoly r;
        if (s.is_zero()) return r;
        for (const auto& [d, c] : c_) r.c_.emplace(d, c * s);
        return r;
    }

    // Multiplication by D (every degree shifts up by one).
    DPoly times_D() const {
        DPoly r;
        for (const auto& [d, c] : c_) r.c_.emplace(d + 1, c);
        return r;
    }

    friend bool operator==(const DPoly& a, const DPoly& b) { return a.c_ == b.c_; }

    // Display form, e.g. "2*D^2 - 1/3*D + 4".
    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            std::string cs = it->second.str();
            if (!s.empty()) {
                if (cs.front() == '-') {
                    s += " - ";
                    cs.erase(cs.begin());
                } else {
                    s += " + ";
                }
            }
            if (it->first == 0) {
                s += cs;
            } else {
                if (cs != "1") {
                    if (cs == "-1")
                        s += '-';
                    else
                        s += cs + "*";
                }
                s += "D";
                if (it->first > 1) s += "^" + std::to_string(it->first);
            }
        }
        return s;
    }

private:
    std::map<int, Rat> c_;
};

}  // namespace cendalg
