#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "field.hpp"

namespace vidinli {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

inline Vec unit_vec(const Field& f, std::size_t n, std::size_t i) {
    Vec v = zero_vec(f, n);
    v.at(i) = Scalar::one(f);
    return v;
}

inline bool vec_is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw input_error("vector length mismatch");
    Vec r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw input_error("vector length mismatch");
    Vec r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec vec_scale(const Scalar& c, const Vec& a) {
    Vec r(a);
    for (auto& x : r) x = c * x;
    return r;
}

/// Dense row-major matrix over one field. All arithmetic is exact.
class Matrix {
public:
    Matrix(const Field& f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

    static Matrix identity(const Field& f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    static Matrix from_rows(const Field& f, const std::vector<Vec>& rows, std::size_t cols) {
        Matrix m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw input_error("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t i, std::size_t j) { return a_.at(i * cols_ + j); }
    const Scalar& at(std::size_t i, std::size_t j) const { return a_.at(i * cols_ + j); }

    Vec row(std::size_t i) const {
        Vec r(begin_row(i), begin_row(i) + cols_);
        return r;
    }

    Vec col(std::size_t j) const {
        Vec c = zero_vec(field_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    Matrix operator+(const Matrix& o) const {
        check_shape(o);
        Matrix r(*this);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        check_shape(o);
        Matrix r(*this);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw input_error("matrix product shape mismatch");
        Matrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Scalar& aik = at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
            }
        return r;
    }

    Matrix scaled(const Scalar& c) const {
        Matrix r(*this);
        for (auto& x : r.a_) x = c * x;
        return r;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Scalar trace() const {
        if (rows_ != cols_) throw input_error("trace of a non-square matrix");
        Scalar t = Scalar::zero(field_);
        for (std::size_t i = 0; i < rows_; ++i) t = t + at(i, i);
        return t;
    }

    Vec apply(const Vec& x) const {
        if (x.size() != cols_) throw input_error("matrix-vector shape mismatch");
        Vec y = zero_vec(field_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] = y[i] + at(i, j) * x[j];
        return y;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    /// Row-major flattening, the coordinate convention for operator spaces.
    Vec vectorize() const { return a_; }

    static Matrix from_vectorized(const Field& f, std::size_t rows, std::size_t cols, const Vec& v) {
        if (v.size() != rows * cols) throw input_error("vectorized length mismatch");
        Matrix m(f, rows, cols);
        m.a_ = v;
        return m;
    }

private:
    std::vector<Scalar>::const_iterator begin_row(std::size_t i) const {
        if (i >= rows_) throw input_error("row index out of range");
        return a_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
    }

    void check_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw input_error("matrix shape mismatch");
    }

    Field field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> a_;
};

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw input_error("hstack row mismatch");
    Matrix r(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw input_error("vstack column mismatch");
    Matrix r(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

struct RrefResult {
    Matrix mat;
    std::vector<std::size_t> pivots; // pivot column of each nonzero row, increasing
};

/// Reduced row echelon form with first-nonzero pivoting. Deterministic:
/// equal row spaces always produce identical output.
inline RrefResult rref(const Matrix& input) {
    Matrix m = input;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pivot = m.rows();
        for (std::size_t i = r; i < m.rows(); ++i)
            if (!m.at(i, c).is_zero()) { pivot = i; break; }
        if (pivot == m.rows()) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(r, j));
        Scalar inv = m.at(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) = inv * m.at(r, j);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar f = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {m, pivots};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// One solution of A x = b, or nullopt when inconsistent.
inline std::optional<Vec> solve_linear(const Matrix& a, const Vec& b) {
    if (b.size() != a.rows()) throw input_error("solve shape mismatch");
    Matrix rhs(a.field(), a.rows(), 1);
    for (std::size_t i = 0; i < a.rows(); ++i) rhs.at(i, 0) = b[i];
    RrefResult rr = rref(hstack(a, rhs));
    for (const auto& p : rr.pivots)
        if (p == a.cols()) return std::nullopt;
    Vec x = zero_vec(a.field(), a.cols());
    for (std::size_t r = 0; r < rr.pivots.size(); ++r) x[rr.pivots[r]] = rr.mat.at(r, a.cols());
    return x;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw input_error("inverse of a non-square matrix");
    std::size_t n = a.rows();
    RrefResult rr = rref(hstack(a, Matrix::identity(a.field(), n)));
    if (rr.pivots.size() != n || (n > 0 && rr.pivots.back() >= n)) return std::nullopt;
    Matrix inv(a.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rr.mat.at(i, n + j);
    return inv;
}

/// Linear subspace of F^n, stored as an rref basis. Equal subspaces compare
/// equal because the rref basis is canonical.
class Subspace {
public:
    static Subspace zero(const Field& f, std::size_t ambient) {
        return Subspace(f, ambient, Matrix(f, 0, ambient), {});
    }

    static Subspace full(const Field& f, std::size_t ambient) {
        return span(f, ambient, Matrix::identity(f, ambient));
    }

    static Subspace span(const Field& f, std::size_t ambient, const std::vector<Vec>& gens) {
        return span(f, ambient, Matrix::from_rows(f, gens, ambient));
    }

    static Subspace span(const Field& f, std::size_t ambient, const Matrix& rows) {
        if (rows.cols() != ambient) throw input_error("span generator length mismatch");
        RrefResult rr = rref(rows);
        Matrix basis(f, rr.pivots.size(), ambient);
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            for (std::size_t j = 0; j < ambient; ++j) basis.at(i, j) = rr.mat.at(i, j);
        return Subspace(f, ambient, basis, rr.pivots);
    }

    const Field& field() const { return field_; }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis_matrix() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    std::vector<Vec> basis() const {
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < basis_.rows(); ++i) rows.push_back(basis_.row(i));
        return rows;
    }

    /// Coordinates of v in the rref basis, or nullopt when v is outside.
    std::optional<Vec> coordinates(const Vec& v) const {
        if (v.size() != ambient_) throw input_error("ambient dimension mismatch");
        Vec rem = v;
        Vec coords = zero_vec(field_, dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            coords[i] = rem[pivots_[i]];
            if (!coords[i].is_zero()) rem = vec_sub(rem, vec_scale(coords[i], basis_.row(i)));
        }
        if (!vec_is_zero(rem)) return std::nullopt;
        return coords;
    }

    bool contains(const Vec& v) const { return coordinates(v).has_value(); }

    bool contains(const Subspace& other) const {
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_matrix().row(i))) return false;
        return true;
    }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && field_ == o.field_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    /// Standard basis vectors at non-pivot coordinates; together with this
    /// subspace they span the ambient space.
    std::vector<Vec> std_complement() const {
        std::vector<bool> is_pivot(ambient_, false);
        for (auto p : pivots_) is_pivot[p] = true;
        std::vector<Vec> out;
        for (std::size_t j = 0; j < ambient_; ++j)
            if (!is_pivot[j]) out.push_back(unit_vec(field_, ambient_, j));
        return out;
    }

private:
    Subspace(const Field& f, std::size_t ambient, Matrix basis, std::vector<std::size_t> pivots)
        : field_(f), ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

    Field field_;
    std::size_t ambient_;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw input_error("subspace ambient mismatch");
    return Subspace::span(a.field(), a.ambient_dim(), vstack(a.basis_matrix(), b.basis_matrix()));
}

/// Null space of A, as a canonical subspace of F^cols.
inline Subspace kernel(const Matrix& a) {
    RrefResult rr = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (is_pivot[j]) continue;
        Vec v = zero_vec(a.field(), a.cols());
        v[j] = Scalar::one(a.field());
        for (std::size_t r = 0; r < rr.pivots.size(); ++r)
            v[rr.pivots[r]] = -rr.mat.at(r, j);
        gens.push_back(v);
    }
    return Subspace::span(a.field(), a.cols(), gens);
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw input_error("subspace ambient mismatch");
    std::size_t k = a.dim(), l = b.dim();
    if (k == 0 || l == 0) return Subspace::zero(a.field(), a.ambient_dim());
    // columns (x | y) with x·basis(a) = y·basis(b)
    Matrix m = hstack(a.basis_matrix().transpose(),
                      b.basis_matrix().transpose().scaled(-Scalar::one(a.field())));
    Subspace ker = kernel(m);
    std::vector<Vec> gens;
    for (const auto& w : ker.basis()) {
        Vec x = zero_vec(a.field(), a.ambient_dim());
        for (std::size_t i = 0; i < k; ++i)
            x = vec_add(x, vec_scale(w[i], a.basis_matrix().row(i)));
        gens.push_back(x);
    }
    return Subspace::span(a.field(), a.ambient_dim(), gens);
}

/// Basis vectors from `whole` extending `part` to all of `whole`; their span
/// is a complement of `part` inside `whole`. Deterministic via rref order.
inline std::vector<Vec> complement_in(const Subspace& whole, const Subspace& part) {
    if (!whole.contains(part)) throw input_error("complement_in: part is not inside whole");
    std::vector<Vec> out;
    Subspace cur = part;
    for (const auto& row : whole.basis()) {
        if (cur.contains(row)) continue;
        out.push_back(row);
        cur = sum(cur, Subspace::span(whole.field(), whole.ambient_dim(), std::vector<Vec>{row}));
    }
    if (cur != whole) throw theorem_violation("complement_in failed to exhaust the space");
    return out;
}

} // namespace vidinli
