#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "riesz/errors.hpp"
#include "riesz/ext_value.hpp"

namespace riesz {

enum class AddMode {
    absorbing,    // (-r) + inf = inf everywhere
    strict_cone,  // reject a negative finite coordinate paired with inf
};

// Atom-indexed vector of extended values. Finite elements model members of
// the underlying space, elements with +inf coordinates model the rest of the
// positive sup-completion. All values are immutable after construction and
// every operation is a pure function.
class Element {
public:
    explicit Element(std::size_t dim) : coords_(dim) {}
    explicit Element(std::vector<ExtValue> coords) : coords_(std::move(coords)) {}
    Element(std::initializer_list<ExtValue> coords) : coords_(coords) {}

    static Element zero(std::size_t dim) { return Element(dim); }

    static Element unit(std::size_t dim) {
        Element e(dim);
        for (auto& c : e.coords_) c = ExtValue(Rational(1));
        return e;
    }

    static Element constant(std::size_t dim, const ExtValue& v) {
        Element e(dim);
        for (auto& c : e.coords_) c = v;
        return e;
    }

    std::size_t dim() const { return coords_.size(); }
    const ExtValue& operator[](std::size_t i) const {
        if (i >= coords_.size()) throw IndexError("atom index out of range");
        return coords_[i];
    }
    const std::vector<ExtValue>& coords() const { return coords_; }

    bool is_finite() const {
        for (const auto& c : coords_)
            if (c.is_infinite()) return false;
        return true;
    }

    // Member of the positive cone.
    bool is_cone() const {
        for (const auto& c : coords_)
            if (c.is_negative()) return false;
        return true;
    }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Element& a, const Element& b) {
        return a.coords_ == b.coords_;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
    std::vector<ExtValue> coords_;
};

inline void require_same_dim(const Element& a, const Element& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}

namespace detail {
template <typename F>
Element zip(const Element& a, const Element& b, F&& f) {
    require_same_dim(a, b);
    std::vector<ExtValue> out;
    out.reserve(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(f(a[i], b[i]));
    return Element(std::move(out));
}

template <typename F>
Element map(const Element& a, F&& f) {
    std::vector<ExtValue> out;
    out.reserve(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(f(a[i]));
    return Element(std::move(out));
}
}  // namespace detail

// Coordinatewise sum with the absorbing rule a + inf = inf. With
// AddMode::strict_cone a pairing of a negative finite coordinate with inf
// is rejected instead, matching addition restricted to the cone plus the
// finite part of the space.
inline Element add(const Element& x, const Element& y, AddMode mode = AddMode::absorbing) {
    return detail::zip(x, y, [&](const ExtValue& a, const ExtValue& b) {
        if (mode == AddMode::strict_cone &&
            ((a.is_negative() && b.is_infinite()) || (b.is_negative() && a.is_infinite())))
            throw UndefinedSum("negative coordinate plus infinity in strict-cone mode");
        return a + b;
    });
}

inline Element scale(const Rational& lambda, const Element& x) {
    return detail::map(x, [&](const ExtValue& c) {
        if (c.is_infinite()) {
            if (lambda < 0)
                throw NegativeScaleOnInfinite("negative scalar on infinite coordinate");
            if (lambda == 0) return ExtValue(Rational(0));
            return ExtValue::infinity();
        }
        return ExtValue(Rational(lambda * c.rational()));
    });
}

// f-algebra product. Defined on pairs that are both in the cone or both
// finite; 0 * inf = 0 and r * inf = inf for r > 0.
inline Element mul(const Element& x, const Element& y) {
    require_same_dim(x, y);
    if (!(x.is_finite() && y.is_finite()) && !(x.is_cone() && y.is_cone()))
        throw UndefinedProduct("product requires both cone or both finite operands");
    return detail::zip(x, y, [](const ExtValue& a, const ExtValue& b) { return a * b; });
}

inline Element join(const Element& x, const Element& y) {
    return detail::zip(x, y, [](const ExtValue& a, const ExtValue& b) { return join(a, b); });
}

inline Element meet(const Element& x, const Element& y) {
    return detail::zip(x, y, [](const ExtValue& a, const ExtValue& b) { return meet(a, b); });
}

inline bool leq(const Element& x, const Element& y) {
    require_same_dim(x, y);
    for (std::size_t i = 0; i < x.dim(); ++i)
        if (!(x[i] <= y[i])) return false;
    return true;
}

inline Element pos_part(const Element& x) {
    return detail::map(x, [](const ExtValue& c) { return join(c, ExtValue(Rational(0))); });
}

// x^- = -(x /\ 0); always finite since coordinates exceed -inf.
inline Element neg_part(const Element& x) {
    return detail::map(x, [](const ExtValue& c) {
        ExtValue m = meet(c, ExtValue(Rational(0)));
        return ExtValue(Rational(-m.rational()));
    });
}

inline Element abs(const Element& x) {
    return detail::map(x, [](const ExtValue& c) {
        if (c.is_negative()) return ExtValue(Rational(-c.rational()));
        return c;
    });
}

inline Element int_power(const Element& x, unsigned p) {
    if (p < 1) throw PreconditionViolated("int_power requires p >= 1");
    if (!x.is_cone()) throw PreconditionViolated("int_power requires a cone element");
    return detail::map(x, [&](const ExtValue& c) {
        if (c.is_infinite()) return ExtValue::infinity();
        return ExtValue(pow_rational(c.rational(), p));
    });
}

}  // namespace riesz
