#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cendalg/rational.hpp"

namespace cendalg {

using Vec = std::vector<Rat>;

inline bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    Rat trace() const {
        Rat t;
        for (std::size_t i = 0; i < r_ && i < c_; ++i) t += at(i, i);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    Matrix scaled(const Rat& s) const {
        Matrix m(r_, c_);
        for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const Rat& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.c_; ++j) m.at(i, j) += aik * b.at(k, j);
            }
        return m;
    }

    friend Vec operator*(const Matrix& a, const Vec& v) {
        Vec r(a.r_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t j = 0; j < a.c_; ++j)
                if (!a.at(i, j).is_zero()) r[i] += a.at(i, j) * v[j];
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Rat> a_;
};

// Row space in reduced row-echelon form over a fixed-width ambient space.
// Rows keep unit pivots with zeros above and below, ordered by pivot column.
class CoordSpace {
public:
    CoordSpace() = default;
    explicit CoordSpace(int ambient) : ambient_(ambient) {}

    int ambient() const { return ambient_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<Vec>& basis() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    void extend_ambient(int ambient) {
        if (ambient <= ambient_) return;
        ambient_ = ambient;
        for (auto& r : rows_) r.resize(static_cast<std::size_t>(ambient_));
    }

    // Reduces v against the basis and inserts the residual if independent.
    // Returns true when the rank grew.
    bool insert(Vec v) {
        v.resize(static_cast<std::size_t>(ambient_));
        reduce(v);
        int p = first_nonzero(v);
        if (p < 0) return false;
        Rat inv = Rat(1) / v[static_cast<std::size_t>(p)];
        for (auto& x : v) x *= inv;
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
        // clear the new pivot column in every other row
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == pos) continue;
            const Rat& c = rows_[i][static_cast<std::size_t>(p)];
            if (c.is_zero()) continue;
            Rat f = c;
            for (int j = 0; j < ambient_; ++j)
                rows_[i][static_cast<std::size_t>(j)] -=
                    f * rows_[pos][static_cast<std::size_t>(j)];
        }
        return true;
    }

    bool contains(Vec v) const {
        v.resize(static_cast<std::size_t>(ambient_));
        reduce(v);
        return first_nonzero(v) < 0;
    }

    // Coefficients of v in the stored basis, if v lies in the span.
    std::optional<Vec> coefficients(Vec v) const {
        v.resize(static_cast<std::size_t>(ambient_));
        Vec coeff(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rat& c = v[static_cast<std::size_t>(pivots_[i])];
            if (c.is_zero()) continue;
            coeff[i] = c;
            for (int j = 0; j < ambient_; ++j)
                v[static_cast<std::size_t>(j)] -= coeff[i] * rows_[i][static_cast<std::size_t>(j)];
        }
        if (first_nonzero(v) >= 0) return std::nullopt;
        return coeff;
    }

private:
    void reduce(Vec& v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Rat& c = v[static_cast<std::size_t>(pivots_[i])];
            if (c.is_zero()) continue;
            Rat f = c;
            for (int j = 0; j < ambient_; ++j)
                v[static_cast<std::size_t>(j)] -= f * rows_[i][static_cast<std::size_t>(j)];
        }
    }

    static int first_nonzero(const Vec& v) {
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) return static_cast<int>(j);
        return -1;
    }

    int ambient_ = 0;
    std::vector<Vec> rows_;
    std::vector<int> pivots_;
};

// Reduced row-echelon basis of the span of the given vectors.  All vectors
// must share one length (the ambient dimension); the empty family is allowed
// with ambient 0.
inline CoordSpace rref(const std::vector<Vec>& vectors, int ambient = -1) {
    if (ambient < 0) ambient = vectors.empty() ? 0 : static_cast<int>(vectors.front().size());
    CoordSpace s(ambient);
    for (const auto& v : vectors) s.insert(v);
    return s;
}

// Exact solve of A x = b.  Returns nullopt when inconsistent.  When the
// system is underdetermined, free variables (in elimination order) are zero.
inline std::optional<Vec> solve_linear(Matrix a, Vec b) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t sel = row;
        while (sel < m && a.at(sel, col).is_zero()) ++sel;
        if (sel == m) continue;
        if (sel != row) {
            for (std::size_t j = col; j < n; ++j) std::swap(a.at(sel, j), a.at(row, j));
            std::swap(b[sel], b[row]);
        }
        Rat inv = Rat(1) / a.at(row, col);
        for (std::size_t j = col; j < n; ++j) a.at(row, j) *= inv;
        b[row] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            Rat f = a.at(i, col);
            if (f.is_zero()) continue;
            for (std::size_t j = col; j < n; ++j) a.at(i, j) -= f * a.at(row, j);
            b[i] -= f * b[row];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    Vec x(n);
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
        x[static_cast<std::size_t>(pivot_col[i])] = b[i];
    return x;
}

// Basis of the kernel of A, one vector per free column of the rref.
inline std::vector<Vec> nullspace(const Matrix& a) {
    const std::size_t n = a.cols();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Vec r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = a.at(i, j);
        rows.push_back(std::move(r));
    }
    CoordSpace s = rref(rows, static_cast<int>(n));
    std::vector<bool> is_pivot(n, false);
    for (int p : s.pivots()) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<Vec> kernel;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        Vec v(n);
        v[j] = 1;
        for (int i = 0; i < s.rank(); ++i)
            v[static_cast<std::size_t>(s.pivots()[static_cast<std::size_t>(i)])] =
                -s.basis()[static_cast<std::size_t>(i)][j];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

}  // namespace cendalg
