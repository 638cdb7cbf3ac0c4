#ifndef BLF_LINALG_HPP
#define BLF_LINALG_HPP

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

#include <Eigen/Core>

#include "blf/errors.hpp"
#include "blf/rational.hpp"

namespace blf {

using Index = Eigen::Index;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatZ = Mat<std::int64_t>;
using VecZ = Vec<std::int64_t>;
using MatQ = Mat<Rational>;
using VecQ = Vec<Rational>;

inline MatQ to_rational(const MatZ& a) {
    MatQ q(a.rows(), a.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) q(i, j) = Rational(a(i, j));
    return q;
}

inline VecQ to_rational(const VecZ& a) {
    VecQ q(a.size());
    for (Index i = 0; i < a.size(); ++i) q(i) = Rational(a(i));
    return q;
}

// --- Smith normal form -----------------------------------------------------

// u * input * v = d with u, v unimodular and d diagonal, nonnegative,
// d(0,0) | d(1,1) | ...  All arithmetic is overflow-checked.
struct SmithForm {
    MatZ u, d, v;
};

inline SmithForm smith_normal_form(MatZ a) {
    using detail::checked_mul;
    using detail::checked_sub;
    const Index m = a.rows(), n = a.cols();
    MatZ u = MatZ::Identity(m, m);
    MatZ v = MatZ::Identity(n, n);

    auto row_axpy = [&](Index dst, Index src, std::int64_t q) {
        if (q == 0) return;
        for (Index j = 0; j < n; ++j) a(dst, j) = checked_sub(a(dst, j), checked_mul(q, a(src, j)));
        for (Index j = 0; j < m; ++j) u(dst, j) = checked_sub(u(dst, j), checked_mul(q, u(src, j)));
    };
    auto col_axpy = [&](Index dst, Index src, std::int64_t q) {
        if (q == 0) return;
        for (Index i = 0; i < m; ++i) a(i, dst) = checked_sub(a(i, dst), checked_mul(q, a(i, src)));
        for (Index i = 0; i < n; ++i) v(i, dst) = checked_sub(v(i, dst), checked_mul(q, v(i, src)));
    };
    auto row_add = [&](Index dst, Index src) {
        for (Index j = 0; j < n; ++j) a(dst, j) = detail::checked_add(a(dst, j), a(src, j));
        for (Index j = 0; j < m; ++j) u(dst, j) = detail::checked_add(u(dst, j), u(src, j));
    };

    const Index steps = std::min(m, n);
    for (Index t = 0; t < steps; ++t) {
        for (;;) {
            // Pull the smallest-magnitude nonzero entry of the trailing block
            // into position (t, t); an empty block finishes the reduction.
            Index pi = -1, pj = -1;
            for (Index i = t; i < m; ++i)
                for (Index j = t; j < n; ++j) {
                    if (a(i, j) == 0) continue;
                    if (pi < 0 || std::abs(a(i, j)) < std::abs(a(pi, pj))) { pi = i; pj = j; }
                }
            if (pi < 0) return {u, a, v};
            if (pi != t) { a.row(pi).swap(a.row(t)); u.row(pi).swap(u.row(t)); }
            if (pj != t) { a.col(pj).swap(a.col(t)); v.col(pj).swap(v.col(t)); }

            bool dirty = false;
            for (Index i = t + 1; i < m; ++i) {
                row_axpy(i, t, a(i, t) / a(t, t));
                if (a(i, t) != 0) dirty = true;
            }
            for (Index j = t + 1; j < n; ++j) {
                col_axpy(j, t, a(t, j) / a(t, t));
                if (a(t, j) != 0) dirty = true;
            }
            if (dirty) continue;  // a strictly smaller pivot appeared

            // Pivot must divide the whole trailing block for the chain
            // d(t) | d(t+1); folding an offending row in forces another pass.
            Index bi = -1;
            for (Index i = t + 1; i < m && bi < 0; ++i)
                for (Index j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) { bi = i; break; }
            if (bi < 0) break;
            row_add(t, bi);
        }
        if (a(t, t) < 0) {
            a.row(t) = -a.row(t);
            u.row(t) = -u.row(t);
        }
    }
    return {u, a, v};
}

// Nonzero diagonal of the Smith form: d1 | d2 | ..., all positive.
inline std::vector<std::int64_t> invariant_factors(const MatZ& a) {
    SmithForm f = smith_normal_form(a);
    std::vector<std::int64_t> out;
    const Index steps = std::min(f.d.rows(), f.d.cols());
    for (Index t = 0; t < steps && f.d(t, t) != 0; ++t) out.push_back(f.d(t, t));
    return out;
}

// Z^generators modulo the row span of `relations`.
struct CokernelSummary {
    Index free_rank = 0;
    std::vector<std::int64_t> torsion;  // invariant factors > 1
};

inline CokernelSummary cokernel_of_relations(const MatZ& relations, Index generators) {
    if (relations.rows() > 0 && relations.cols() != generators)
        throw PreconditionError("relation matrix has wrong number of columns");
    CokernelSummary s;
    std::vector<std::int64_t> f = invariant_factors(relations);
    s.free_rank = generators - static_cast<Index>(f.size());
    for (std::int64_t d : f)
        if (d > 1) s.torsion.push_back(d);
    return s;
}

// Basis (as columns) of the integer kernel lattice of a.
inline MatZ integer_kernel(const MatZ& a) {
    SmithForm f = smith_normal_form(a);
    const Index n = a.cols();
    Index rank = 0;
    const Index steps = std::min(f.d.rows(), f.d.cols());
    while (rank < steps && f.d(rank, rank) != 0) ++rank;
    return f.v.rightCols(n - rank);
}

// Exact inverse of a unimodular integer matrix (u a v = I gives a^-1 = v u).
inline MatZ integer_inverse(const MatZ& a) {
    if (a.rows() != a.cols()) throw PreconditionError("inverting a non-square matrix");
    SmithForm f = smith_normal_form(a);
    for (Index i = 0; i < a.rows(); ++i)
        if (f.d(i, i) != 1 && f.d(i, i) != -1)
            throw PreconditionError("matrix is not unimodular");
    MatZ dinv = MatZ::Identity(a.rows(), a.rows());
    for (Index i = 0; i < a.rows(); ++i) dinv(i, i) = f.d(i, i);
    const MatZ inv = f.v * dinv * f.u;
    if (a * inv != MatZ::Identity(a.rows(), a.rows()))
        throw std::logic_error("integer inverse failed");
    return inv;
}

// --- Exact elimination over a field ----------------------------------------

template <class S>
struct Rref {
    Mat<S> mat;
    std::vector<Index> pivot_cols;
};

template <class Derived>
Rref<typename Derived::Scalar> reduced_row_echelon(const Eigen::MatrixBase<Derived>& input) {
    using S = typename Derived::Scalar;
    Mat<S> a = input;
    const Index m = a.rows(), n = a.cols();
    std::vector<Index> pivots;
    Index row = 0;
    for (Index col = 0; col < n && row < m; ++col) {
        Index p = -1;
        for (Index i = row; i < m; ++i)
            if (!(a(i, col) == S(0))) { p = i; break; }
        if (p < 0) continue;
        if (p != row) a.row(p).swap(a.row(row));
        a.row(row) /= a(row, col);
        for (Index i = 0; i < m; ++i) {
            if (i == row || a(i, col) == S(0)) continue;
            a.row(i) -= a(i, col) * a.row(row);
        }
        pivots.push_back(col);
        ++row;
    }
    return {a, pivots};
}

// Any exact solution of a x = b; returns false when inconsistent.
template <class Derived, class VDerived>
bool solve_exact(const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<VDerived>& b,
                 Vec<typename Derived::Scalar>& x) {
    using S = typename Derived::Scalar;
    const Index m = a.rows(), n = a.cols();
    Mat<S> aug(m, n + 1);
    aug.leftCols(n) = a;
    aug.col(n) = b;
    Rref<S> r = reduced_row_echelon(aug);
    for (Index c : r.pivot_cols)
        if (c == n) return false;
    x = Vec<S>::Constant(n, S(0));
    for (Index k = 0; k < static_cast<Index>(r.pivot_cols.size()); ++k)
        x(r.pivot_cols[k]) = r.mat(k, n);
    return true;
}

// Basis (as columns) of the null space of a over its scalar field.
template <class Derived>
Mat<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& a) {
    using S = typename Derived::Scalar;
    Rref<S> r = reduced_row_echelon(a);
    const Index n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (Index c : r.pivot_cols) is_pivot[c] = true;
    const Index dim = n - static_cast<Index>(r.pivot_cols.size());
    Mat<S> basis = Mat<S>::Constant(n, dim, S(0));
    Index k = 0;
    for (Index f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        basis(f, k) = S(1);
        for (Index p = 0; p < static_cast<Index>(r.pivot_cols.size()); ++p)
            basis(r.pivot_cols[p], k) = -r.mat(p, f);
        ++k;
    }
    return basis;
}

// --- Signature of a symmetric form ------------------------------------------

// Sylvester's law via congruence diagonalization; scalar must be an ordered
// field, so pass rational matrices (use to_rational for integer forms).
template <class Derived>
int sylvester_signature(const Eigen::MatrixBase<Derived>& input) {
    using S = typename Derived::Scalar;
    Mat<S> a = input;
    const Index n = a.rows();
    if (a.cols() != n) throw PreconditionError("signature of a non-square matrix");
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j)
            if (!(a(i, j) == a(j, i))) throw PreconditionError("signature of a non-symmetric matrix");

    int pos = 0, neg = 0;
    for (Index t = 0; t < n; ++t) {
        if (a(t, t) == S(0)) {
            Index di = -1;
            for (Index i = t + 1; i < n; ++i)
                if (!(a(i, i) == S(0))) { di = i; break; }
            if (di >= 0) {
                a.row(t).swap(a.row(di));
                a.col(t).swap(a.col(di));
            } else {
                Index j = -1;
                for (Index jj = t + 1; jj < n; ++jj)
                    if (!(a(t, jj) == S(0))) { j = jj; break; }
                if (j < 0) continue;  // row lies in the radical
                // hyperbolic corner: fold row/col j in to expose 2*a(t,j)
                a.row(t) += a.row(j);
                a.col(t) += a.col(j);
            }
        }
        const S p = a(t, t);
        if (p > S(0)) ++pos; else ++neg;
        for (Index i = t + 1; i < n; ++i) {
            if (a(i, t) == S(0)) continue;
            const S f = a(i, t) / p;
            a.row(i) -= f * a.row(t);
            a.col(i) -= f * a.col(t);
        }
    }
    return pos - neg;
}

}  // namespace blf

#endif
