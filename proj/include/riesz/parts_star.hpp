#pragma once

#include <utility>

#include "riesz/band.hpp"
#include "riesz/element.hpp"

namespace riesz {

struct Decomposition {
    Element finite_part;
    Element infinite_part;
};

// x = x^f + x^inf: the infinite part carries inf exactly where x does and is
// the top of the band it generates; the finite part is x on the remaining
// coordinates. On signed input the negative part is finite, so the infinite
// part comes from x^+ alone and the rule is still coordinatewise.
inline Decomposition decompose(const Element& x) {
    std::vector<ExtValue> fin, inf;
    fin.reserve(x.dim());
    inf.reserve(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (x[i].is_infinite()) {
            fin.push_back(ExtValue(Rational(0)));
            inf.push_back(ExtValue::infinity());
        } else {
            fin.push_back(x[i]);
            inf.push_back(ExtValue(Rational(0)));
        }
    }
    return {Element(std::move(fin)), Element(std::move(inf))};
}

inline Element finite_part(const Element& x) { return decompose(x).finite_part; }
inline Element infinite_part(const Element& x) { return decompose(x).infinite_part; }

// The partial inverse: the inverse of x^f inside the band it generates,
// extended to signed input by the signed reciprocal. Coordinates where x is
// 0 or inf map to 0; the result is always finite and x x* = P_{x^f} e for
// cone x.
inline Element star(const Element& x) {
    std::vector<ExtValue> out;
    out.reserve(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) out.push_back(x[i].reciprocal_or_zero());
    return Element(std::move(out));
}

// Multiplicative decomposition: given cone x <= y z, produce (a, b) with
// a b = x, 0 <= a <= y, 0 <= b <= z. Deterministic construction: split by
// P = P_{y^f}; on the finite-y band take (y, y* x); on the rest take
// (x (z* + e_{z^inf}), z^f + e_{z^inf}).
inline std::pair<Element, Element> mul_decompose(const Element& x, const Element& y,
                                                 const Element& z) {
    if (!x.is_cone() || !y.is_cone() || !z.is_cone())
        throw PreconditionViolated("mul_decompose requires cone elements");
    if (!leq(x, mul(y, z))) throw PreconditionViolated("mul_decompose requires x <= y z");

    BandProjection P = band_of(finite_part(y));
    BandProjection Pd = P.complement();

    Element a1 = apply(P, y);
    Element b1 = apply(P, mul(star(y), x));

    Element ez_inf = unit_component(band_of(infinite_part(z)));
    Element a2 = apply(Pd, mul(x, add(star(z), ez_inf)));
    Element b2 = apply(Pd, add(finite_part(z), ez_inf));

    return {add(a1, a2), add(b1, b2)};
}

}  // namespace riesz
