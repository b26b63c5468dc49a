#pragma once

#include <vector>

#include "riesz/band.hpp"
#include "riesz/element.hpp"
#include "riesz/errors.hpp"
#include "riesz/rational.hpp"

namespace riesz {

// Finite probability space: one strictly positive weight per atom, summing
// to 1 exactly.
class ProbSpace {
public:
    explicit ProbSpace(std::vector<Rational> weights) : weights_(std::move(weights)) {
        if (weights_.empty()) throw PreconditionViolated("empty probability space");
        Rational total(0);
        for (const auto& w : weights_) {
            if (w <= 0) throw PreconditionViolated("weights must be positive");
            total += w;
        }
        if (total != 1) throw PreconditionViolated("weights must sum to 1");
    }

    static ProbSpace uniform(std::size_t n) {
        return ProbSpace(std::vector<Rational>(n, Rational(1) / Rational(BigInt(n))));
    }

    std::size_t dim() const { return weights_.size(); }
    const Rational& weight(std::size_t i) const { return weights_[i]; }
    const std::vector<Rational>& weights() const { return weights_; }

    Rational measure(const BandProjection& B) const {
        if (B.dim() != dim()) throw DimensionMismatch(B.dim(), dim());
        Rational total(0);
        for (std::size_t i = 0; i < dim(); ++i)
            if (B.contains(i)) total += weights_[i];
        return total;
    }

private:
    std::vector<Rational> weights_;
};

// Conditional expectation on a finite probability space: blockwise weighted
// averaging over a partition of the atoms. T is linear, positive, idempotent
// and strictly positive with T e = e; its range is the block-constant
// elements.
class CondExp {
public:
    CondExp(ProbSpace space, std::vector<std::vector<std::size_t>> partition)
        : space_(std::move(space)), partition_(std::move(partition)),
          block_of_(space_.dim(), SIZE_MAX) {
        for (std::size_t b = 0; b < partition_.size(); ++b) {
            if (partition_[b].empty()) throw PreconditionViolated("empty partition block");
            Rational wsum(0);
            for (auto atom : partition_[b]) {
                if (atom >= space_.dim()) throw IndexError("partition atom out of range");
                if (block_of_[atom] != SIZE_MAX)
                    throw PreconditionViolated("partition blocks overlap");
                block_of_[atom] = b;
                wsum += space_.weight(atom);
            }
            block_weight_.push_back(wsum);
        }
        for (auto b : block_of_)
            if (b == SIZE_MAX) throw PreconditionViolated("partition does not cover all atoms");
    }

    static CondExp trivial(ProbSpace space) {
        std::vector<std::size_t> all(space.dim());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return CondExp(std::move(space), {all});
    }

    const ProbSpace& space() const { return space_; }
    std::size_t dim() const { return space_.dim(); }
    const std::vector<std::vector<std::size_t>>& partition() const { return partition_; }
    std::size_t block_of(std::size_t atom) const { return block_of_[atom]; }

    bool is_block_constant(const Element& x) const {
        if (x.dim() != dim()) throw DimensionMismatch(x.dim(), dim());
        for (const auto& block : partition_)
            for (std::size_t k = 1; k < block.size(); ++k)
                if (x[block[k]] != x[block[0]]) return false;
        return true;
    }

    // T commutes with P_B exactly when B is a union of partition blocks.
    bool is_measurable(const BandProjection& B) const {
        if (B.dim() != dim()) throw DimensionMismatch(B.dim(), dim());
        for (const auto& block : partition_) {
            bool first = B.contains(block[0]);
            for (std::size_t k = 1; k < block.size(); ++k)
                if (B.contains(block[k]) != first) return false;
        }
        return true;
    }

private:
    ProbSpace space_;
    std::vector<std::vector<std::size_t>> partition_;
    std::vector<std::size_t> block_of_;
    std::vector<Rational> block_weight_;

    friend Element apply_T(const CondExp&, const Element&);
};

// T x: on each block the weighted average of x. A block containing an inf
// coordinate maps to inf on the whole block (T is order continuous and the
// tops of measurable bands lie in R(T)^s).
inline Element apply_T(const CondExp& T, const Element& x) {
    if (x.dim() != T.dim()) throw DimensionMismatch(x.dim(), T.dim());
    std::vector<ExtValue> out(x.dim());
    for (std::size_t b = 0; b < T.partition_.size(); ++b) {
        bool infinite = false;
        Rational acc(0);
        for (auto atom : T.partition_[b]) {
            if (x[atom].is_infinite())
                infinite = true;
            else
                acc += T.space_.weight(atom) * x[atom].rational();
        }
        ExtValue value = infinite ? ExtValue::infinity() : ExtValue(acc / T.block_weight_[b]);
        for (auto atom : T.partition_[b]) out[atom] = value;
    }
    return Element(std::move(out));
}

// Finite-only mode: rejects inf coordinates instead of absorbing them.
inline Element apply_T_strict(const CondExp& T, const Element& x) {
    if (!x.is_finite()) throw PreconditionViolated("apply_T_strict requires a finite element");
    return apply_T(T, x);
}

// T-independence of two band projections: T(Pe.Qe) = T(Pe).T(Qe) exactly.
inline bool is_T_independent(const CondExp& T, const BandProjection& P,
                             const BandProjection& Q) {
    Element pe = unit_component(P);
    Element qe = unit_component(Q);
    return apply_T(T, mul(pe, qe)) == mul(apply_T(T, pe), apply_T(T, qe));
}

// Matrix with finite Element entries, row-major.
class XMatrix {
public:
    XMatrix(std::size_t rows, std::size_t cols, std::vector<Element> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_ || entries_.empty())
            throw ShapeMismatch("entry count does not match matrix shape");
        for (const auto& e : entries_) {
            if (e.dim() != entries_[0].dim()) throw DimensionMismatch(e.dim(), entries_[0].dim());
            if (!e.is_finite()) throw PreconditionViolated("XMatrix entries must be finite");
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t dim() const { return entries_[0].dim(); }
    const Element& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    XMatrix submatrix(const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) const {
        std::vector<Element> out;
        out.reserve(rows.size() * cols.size());
        for (auto i : rows)
            for (auto j : cols) out.push_back(at(i, j));
        return XMatrix(rows.size(), cols.size(), std::move(out));
    }

private:
    std::size_t rows_, cols_;
    std::vector<Element> entries_;
};

// Gamma(M): the sum of all entries.
inline Element gamma(const XMatrix& M) {
    Element acc = Element::zero(M.dim());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) acc = add(acc, M.at(i, j));
    return acc;
}

// Determinant of a rational matrix by Gaussian elimination.
inline Rational rational_det(std::vector<std::vector<Rational>> a) {
    std::size_t n = a.size();
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rational factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

namespace detail {
inline std::vector<std::vector<Rational>> atom_matrix(const XMatrix& M, std::size_t atom) {
    std::vector<std::vector<Rational>> a(M.rows(), std::vector<Rational>(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) a[i][j] = M.at(i, j)[atom].rational();
    return a;
}
}  // namespace detail

// Coordinatewise determinant: per atom the determinant of the rational
// matrix of that atom's entries.
inline Element det(const XMatrix& M) {
    if (M.rows() != M.cols()) throw ShapeMismatch("determinant of a non-square matrix");
    std::vector<ExtValue> out;
    out.reserve(M.dim());
    for (std::size_t atom = 0; atom < M.dim(); ++atom)
        out.push_back(ExtValue(rational_det(detail::atom_matrix(M, atom))));
    return Element(std::move(out));
}

// Positive semi-definiteness, decided exactly: M must be symmetric, and at
// every atom the rational matrix must have all principal minors >= 0.
inline bool is_psd(const XMatrix& M) {
    if (!M.is_symmetric()) return false;
    std::size_t n = M.rows();
    for (std::size_t atom = 0; atom < M.dim(); ++atom) {
        auto a = detail::atom_matrix(M, atom);
        for (std::size_t subset = 1; subset < (std::size_t(1) << n); ++subset) {
            std::vector<std::size_t> idx;
            for (std::size_t i = 0; i < n; ++i)
                if (subset & (std::size_t(1) << i)) idx.push_back(i);
            std::vector<std::vector<Rational>> sub(idx.size(), std::vector<Rational>(idx.size()));
            for (std::size_t i = 0; i < idx.size(); ++i)
                for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = a[idx[i]][idx[j]];
            if (rational_det(std::move(sub)) < 0) return false;
        }
    }
    return true;
}

// For M = [[A, C], [C^t, B]] with A of size m: whether Gamma(C)^2 <= Gamma(A) Gamma(B).
inline bool block_gamma_check(const XMatrix& M, std::size_t split) {
    if (M.rows() != M.cols()) throw ShapeMismatch("block_gamma_check needs a square matrix");
    if (split == 0 || split >= M.rows())
        throw ShapeMismatch("block split must leave both blocks nonempty");
    std::vector<std::size_t> top, bottom;
    for (std::size_t i = 0; i < split; ++i) top.push_back(i);
    for (std::size_t i = split; i < M.rows(); ++i) bottom.push_back(i);
    Element ga = gamma(M.submatrix(top, top));
    Element gb = gamma(M.submatrix(bottom, bottom));
    Element gc = gamma(M.submatrix(top, bottom));
    return leq(mul(gc, gc), mul(ga, gb));
}

// Gram matrix of band projections under T: entry (i, j) is T(Q_i e . Q_j e).
inline XMatrix gram_matrix(const CondExp& T, const std::vector<BandProjection>& Qs) {
    std::vector<Element> entries;
    entries.reserve(Qs.size() * Qs.size());
    for (const auto& Qi : Qs)
        for (const auto& Qj : Qs)
            entries.push_back(apply_T(T, mul(unit_component(Qi), unit_component(Qj))));
    return XMatrix(Qs.size(), Qs.size(), std::move(entries));
}

// Atom evaluations are exactly the Riesz/algebra homomorphisms of the
// finite-atom model.
inline ExtValue hom_evaluate(std::size_t atom, const Element& x) { return x[atom]; }

}  // namespace riesz
