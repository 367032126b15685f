#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cendalg/errors.hpp"

namespace cendalg {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number.  Canonical form: denominator > 0,
// gcd(|numerator|, denominator) = 1, zero stored as 0/1.
class Rat {
public:
    Rat() = default;
    Rat(long long n) : num_(n) {}  // NOLINT: implicit on purpose
    Rat(BigInt n) : num_(std::move(n)) {}
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rat& operator+=(const Rat& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rat& operator-=(const Rat& o) {
        num_ = num_ * o.den_ - o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rat& operator*=(const Rat& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rat& operator/=(const Rat& o) {
        if (o.num_ == 0) throw Error("division by zero rational");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(Rat a) {
        a.num_ = -a.num_;
        return a;
    }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rat& a, const Rat& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }

    // "p" when integral, otherwise "p/q".
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) {
            s += '/';
            s += den_.str();
        }
        return s;
    }

    // Accepts "p" and "p/q" with optional leading sign on p.
    static Rat parse(std::string_view text) {
        auto bad = [&] { throw ParseError("bad rational: '" + std::string(text) + "'"); };
        auto slash = text.find('/');
        std::string_view np = text.substr(0, slash);
        if (!is_int_literal(np)) bad();
        BigInt n{std::string(np)};
        if (slash == std::string_view::npos) return Rat(std::move(n));
        std::string_view dp = text.substr(slash + 1);
        if (!is_int_literal(dp) || dp.front() == '-') bad();
        BigInt d{std::string(dp)};
        if (d == 0) bad();
        return Rat(std::move(n), std::move(d));
    }

private:
    static bool is_int_literal(std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    }

    void normalize() {
        if (den_ == 0) throw Error("zero denominator");
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    BigInt num_ = 0;
    BigInt den_ = 1;
};

// Binomial coefficients through the additive (Pascal) recurrence, cached per
// thread.  C(n, k) = 0 outside 0 <= k <= n.
inline const BigInt& binomial(long n, long k) {
    static const BigInt zero = 0;
    if (n < 0 || k < 0 || k > n) return zero;
    thread_local std::vector<std::vector<BigInt>> rows = {{BigInt(1)}};
    while (static_cast<long>(rows.size()) <= n) {
        const auto& prev = rows.back();
        std::vector<BigInt> row(prev.size() + 1, BigInt(1));
        for (std::size_t j = 1; j + 1 < row.size(); ++j) row[j] = prev[j - 1] + prev[j];
        rows.push_back(std::move(row));
    }
    return rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

inline BigInt factorial(long n) {
    BigInt f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

// n(n-1)...(n-k+1) with k factors; 1 for k = 0.
inline BigInt falling_factorial(long n, long k) {
    BigInt f = 1;
    for (long i = 0; i < k; ++i) f *= (n - i);
    return f;
}

}  // namespace cendalg
