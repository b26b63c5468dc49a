#pragma once

#include <cstdint>
#include <vector>

#include "riesz/element.hpp"
#include "riesz/errors.hpp"

namespace riesz {

// A projection band in the atomic model: a subset of atom indices. The
// Boolean algebra operations are plain set operations on the mask. The mask
// is a dynamic bitset so that product-space models (thousands of atoms) fit
// alongside the small lemma-test universes.
class BandProjection {
public:
    explicit BandProjection(std::size_t dim) : dim_(dim), bits_(words(dim), 0) {}

    BandProjection(std::size_t dim, const std::vector<std::size_t>& atoms) : BandProjection(dim) {
        for (auto a : atoms) insert(a);
    }

    static BandProjection empty(std::size_t dim) { return BandProjection(dim); }

    static BandProjection full(std::size_t dim) {
        BandProjection b(dim);
        for (std::size_t i = 0; i < dim; ++i) b.insert(i);
        return b;
    }

    std::size_t dim() const { return dim_; }

    bool contains(std::size_t atom) const {
        if (atom >= dim_) throw IndexError("atom index out of range");
        return (bits_[atom >> 6] >> (atom & 63)) & 1u;
    }

    void insert(std::size_t atom) {
        if (atom >= dim_) throw IndexError("atom index out of range");
        bits_[atom >> 6] |= std::uint64_t(1) << (atom & 63);
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : bits_) n += static_cast<std::size_t>(__builtin_popcountll(w));
        return n;
    }

    bool is_empty() const {
        for (auto w : bits_)
            if (w) return false;
        return true;
    }

    bool is_full() const { return count() == dim_; }

    std::vector<std::size_t> atoms() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < dim_; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    friend BandProjection meet(const BandProjection& a, const BandProjection& b) {
        a.check(b);
        BandProjection r(a.dim_);
        for (std::size_t w = 0; w < a.bits_.size(); ++w) r.bits_[w] = a.bits_[w] & b.bits_[w];
        return r;
    }

    friend BandProjection join(const BandProjection& a, const BandProjection& b) {
        a.check(b);
        BandProjection r(a.dim_);
        for (std::size_t w = 0; w < a.bits_.size(); ++w) r.bits_[w] = a.bits_[w] | b.bits_[w];
        return r;
    }

    // P^d = I - P.
    BandProjection complement() const {
        BandProjection r(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            if (!contains(i)) r.insert(i);
        return r;
    }

    friend bool leq(const BandProjection& a, const BandProjection& b) {
        a.check(b);
        for (std::size_t w = 0; w < a.bits_.size(); ++w)
            if (a.bits_[w] & ~b.bits_[w]) return false;
        return true;
    }

    friend bool operator==(const BandProjection& a, const BandProjection& b) {
        return a.dim_ == b.dim_ && a.bits_ == b.bits_;
    }
    friend bool operator!=(const BandProjection& a, const BandProjection& b) { return !(a == b); }

private:
    static std::size_t words(std::size_t dim) { return dim / 64 + 1; }
    void check(const BandProjection& o) const {
        if (dim_ != o.dim_) throw DimensionMismatch(dim_, o.dim_);
    }

    std::size_t dim_;
    std::vector<std::uint64_t> bits_;
};

// P_B x: keep coordinates on the band, zero everywhere else (an infinite
// coordinate outside the band is zeroed like any other).
inline Element apply(const BandProjection& P, const Element& x) {
    if (P.dim() != x.dim()) throw DimensionMismatch(P.dim(), x.dim());
    std::vector<ExtValue> out;
    out.reserve(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        out.push_back(P.contains(i) ? x[i] : ExtValue(Rational(0)));
    return Element(std::move(out));
}

// Principal band generated by x: the support set. Signed elements generate
// the same band as their absolute value.
inline BandProjection band_of(const Element& x) {
    BandProjection b(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i)
        if (!x[i].is_zero()) b.insert(i);
    return b;
}

// The greatest element of B^s: inf on the band's atoms, 0 elsewhere.
inline Element infinity_of(const BandProjection& B) {
    std::vector<ExtValue> out;
    out.reserve(B.dim());
    for (std::size_t i = 0; i < B.dim(); ++i)
        out.push_back(B.contains(i) ? ExtValue::infinity() : ExtValue(Rational(0)));
    return Element(std::move(out));
}

// pi_x(a), the band projection associated with x applied to a. Computed in
// closed form as the projection onto the support of x; the defining
// sup_n (a /\ n x) is kept as a test oracle.
inline Element pi(const Element& x, const Element& a) {
    if (!x.is_cone() || !a.is_cone()) throw PreconditionViolated("pi requires cone inputs");
    return apply(band_of(x), a);
}

// Component of the unit on the band: P_B e.
inline Element unit_component(const BandProjection& B) {
    return apply(B, Element::unit(B.dim()));
}

}  // namespace riesz
