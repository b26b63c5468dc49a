#include <catch2/catch_amalgamated.hpp>

#include "riesz/cond_exp.hpp"
#include "riesz/parts_star.hpp"
#include "riesz/rng.hpp"

using namespace riesz;

namespace {
ExtValue inf() { return ExtValue::infinity(); }
ExtValue q(long long n, long long d = 1) { return ExtValue(Rational(n, d)); }

// Independent PSD oracle: symmetric rational Gaussian elimination. A
// symmetric matrix is PSD iff elimination never needs a nonzero pivot whose
// diagonal entry is zero and all pivots are nonnegative.
bool psd_by_elimination(std::vector<std::vector<Rational>> a) {
    std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] < 0) return false;
        if (a[k][k] == 0) {
            for (std::size_t j = k + 1; j < n; ++j)
                if (a[k][j] != 0) return false;  // zero diagonal forces a zero row
            continue;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
        for (std::size_t j = k + 1; j < n; ++j) a[k][j] = 0;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) a[j][i] = a[i][j];
    }
    return true;
}
}  // namespace

TEST_CASE("probability spaces") {
    CHECK_THROWS_AS(ProbSpace({Rational(1, 2)}), PreconditionViolated);
    CHECK_THROWS_AS(ProbSpace({Rational(1, 2), Rational(0), Rational(1, 2)}),
                    PreconditionViolated);
    ProbSpace u = ProbSpace::uniform(4);
    CHECK(u.measure(BandProjection(4, {0, 1, 2})) == Rational(3, 4));
}

TEST_CASE("conditional expectation averages blockwise") {
    CondExp T(ProbSpace::uniform(4), {{0, 1}, {2, 3}});
    CHECK(apply_T(T, Element{q(1), q(0), q(1), q(1)}) ==
          Element{q(1, 2), q(1, 2), q(1), q(1)});

    Rng rng(101);
    for (int t = 0; t < 200; ++t) {
        std::size_t d = 1 + rng.uniform(6);
        CondExp Tr = gen::cond_exp(rng, d);
        CHECK(apply_T(Tr, Element::unit(d)) == Element::unit(d));  // T e = e

        Element x = gen::finite_signed_element(rng, d);
        Element tx = apply_T(Tr, x);
        CHECK(Tr.is_block_constant(tx));
        CHECK(apply_T(Tr, tx) == tx);  // idempotent

        // Averaging: T(u x) = u T(x) for block-constant u.
        Element u = gen::block_constant(rng, Tr);
        CHECK(apply_T(Tr, mul(u, x)) == mul(u, apply_T(Tr, x)));

        // Linearity and positivity.
        Element y = gen::finite_signed_element(rng, d);
        CHECK(apply_T(Tr, add(x, y)) == add(apply_T(Tr, x), apply_T(Tr, y)));
        Element c = gen::finite_cone_element(rng, d);
        CHECK(apply_T(Tr, c).is_cone());
        // Strict positivity: a nonzero cone element has a nonzero image.
        if (!c.is_zero()) CHECK(!apply_T(Tr, c).is_zero());
    }
}

TEST_CASE("T commutes exactly with measurable band projections") {
    Rng rng(103);
    for (int t = 0; t < 200; ++t) {
        std::size_t d = 2 + rng.uniform(5);
        CondExp T = gen::cond_exp(rng, d);
        BandProjection B = gen::band(rng, d);
        Element x = gen::finite_signed_element(rng, d);
        bool commutes = apply_T(T, apply(B, x)) == apply(B, apply_T(T, x));
        if (T.is_measurable(B)) CHECK(commutes);
    }
    // A block-splitting projection fails to commute on a witness.
    CondExp T(ProbSpace::uniform(2), {{0, 1}});
    BandProjection half(2, {0});
    CHECK(!T.is_measurable(half));
    Element x{q(1), q(0)};
    CHECK(apply_T(T, apply(half, x)) != apply(half, apply_T(T, x)));
}

TEST_CASE("conditional expectation of infinite elements is blockwise absorbing") {
    CondExp T(ProbSpace::uniform(4), {{0, 1}, {2, 3}});
    CHECK(apply_T(T, Element{inf(), q(0), q(1), q(1)}) == Element{inf(), inf(), q(1), q(1)});
    CHECK_THROWS_AS(apply_T_strict(T, Element{inf(), q(0), q(1), q(1)}), PreconditionViolated);

    // Block-constant elements keep block-constant parts (range-of-T model).
    Rng rng(107);
    for (int t = 0; t < 100; ++t) {
        std::size_t d = 1 + rng.uniform(6);
        CondExp Tr = gen::cond_exp(rng, d);
        std::vector<ExtValue> coords(d);
        for (const auto& block : Tr.partition()) {
            ExtValue v = gen::cone_value(rng);
            for (auto atom : block) coords[atom] = v;
        }
        Element x(std::move(coords));
        CHECK(Tr.is_block_constant(finite_part(x)));
        CHECK(Tr.is_block_constant(infinite_part(x)));
    }
}

TEST_CASE("T-independence") {
    CondExp T = CondExp::trivial(ProbSpace::uniform(4));
    CHECK(is_T_independent(T, BandProjection(4, {0, 1}), BandProjection(4, {0, 2})));
    CHECK(!is_T_independent(T, BandProjection(4, {0, 1}), BandProjection(4, {0, 1})));

    Rng rng(109);
    for (int t = 0; t < 100; ++t) {
        std::size_t d = 1 + rng.uniform(6);
        CondExp Tr = gen::cond_exp(rng, d);
        CHECK(is_T_independent(Tr, BandProjection::full(d), gen::band(rng, d)));
    }
}

TEST_CASE("gamma sums all entries") {
    XMatrix single(1, 1, {Element{q(5), q(7)}});
    CHECK(gamma(single) == Element{q(5), q(7)});

    Element a{q(1)}, b{q(2)}, c{q(3)}, d{q(4)};
    XMatrix m(2, 2, {a, b, c, d});
    CHECK(gamma(m) == Element{q(10)});
}

TEST_CASE("positive semi-definiteness via principal minors") {
    CondExp T = CondExp::trivial(ProbSpace::uniform(3));
    XMatrix gram = gram_matrix(T, {BandProjection(3, {0, 1}), BandProjection(3, {1, 2})});
    CHECK(gram.at(0, 0) == Element::constant(3, q(2, 3)));
    CHECK(gram.at(0, 1) == Element::constant(3, q(1, 3)));
    CHECK(is_psd(gram));

    XMatrix offdiag(2, 2, {Element{q(0)}, Element{q(1)}, Element{q(1)}, Element{q(0)}});
    CHECK(!is_psd(offdiag));

    XMatrix asym(2, 2, {Element{q(1)}, Element{q(1)}, Element{q(0)}, Element{q(1)}});
    CHECK(!is_psd(asym));

    Rng rng(113);
    for (int t = 0; t < 200; ++t) {
        std::size_t d = 1 + rng.uniform(4);
        CondExp Tr = gen::cond_exp(rng, d);
        std::size_t n = 1 + rng.uniform(4);
        std::vector<BandProjection> qs;
        for (std::size_t i = 0; i < n; ++i) qs.push_back(gen::band(rng, d));
        CHECK(is_psd(gram_matrix(Tr, qs)));

        // Single projection: the gram matrix collapses to [T Q e].
        XMatrix single = gram_matrix(Tr, {qs[0]});
        CHECK(single.at(0, 0) == apply_T(Tr, unit_component(qs[0])));
    }
}

TEST_CASE("is_psd agrees with an elimination oracle on random symmetric matrices") {
    Rng rng(127);
    int positives = 0, negatives = 0;
    for (int t = 0; t < 300; ++t) {
        std::size_t n = 1 + rng.uniform(4);
        std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a[i][j] = a[j][i] = gen::grid_rational(rng);

        std::vector<Element> entries;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) entries.push_back(Element{ExtValue(a[i][j])});
        bool expected = psd_by_elimination(a);
        (expected ? positives : negatives)++;
        CHECK(is_psd(XMatrix(n, n, entries)) == expected);
    }
    CHECK(positives > 10);
    CHECK(negatives > 10);
}

TEST_CASE("determinants") {
    Element e2 = Element::unit(2);
    XMatrix id(2, 2, {e2, Element::zero(2), Element::zero(2), e2});
    CHECK(det(id) == e2);

    Rng rng(131);
    for (int t = 0; t < 200; ++t) {
        std::size_t dim = 1 + rng.uniform(4);
        Element a = gen::finite_signed_element(rng, dim);
        Element b = gen::finite_signed_element(rng, dim);
        Element c = gen::finite_signed_element(rng, dim);
        XMatrix m(2, 2, {a, b, b, c});
        CHECK(det(m) == add(mul(a, c), scale(Rational(-1), mul(b, b))));
    }

    for (int t = 0; t < 100; ++t) {
        std::size_t d = 1 + rng.uniform(4);
        CondExp Tr = gen::cond_exp(rng, d);
        std::size_t n = 1 + rng.uniform(3);
        std::vector<BandProjection> qs;
        for (std::size_t i = 0; i < n; ++i) qs.push_back(gen::band(rng, d));
        CHECK(det(gram_matrix(Tr, qs)).is_cone());
    }
}

TEST_CASE("block gamma comparison") {
    Element e1 = Element::unit(1);
    XMatrix m(2, 2, {e1, e1, e1, e1});
    CHECK(block_gamma_check(m, 1));

    CondExp T = CondExp::trivial(ProbSpace::uniform(3));
    XMatrix gram = gram_matrix(T, {BandProjection(3, {0, 1}), BandProjection(3, {1, 2})});
    CHECK(block_gamma_check(gram, 1));  // (1/3)^2 <= (2/3)(2/3)

    CHECK_THROWS_AS(block_gamma_check(m, 0), ShapeMismatch);
    CHECK_THROWS_AS(block_gamma_check(m, 2), ShapeMismatch);
    CHECK_THROWS_AS(block_gamma_check(XMatrix(1, 2, {e1, e1}), 1), ShapeMismatch);
}

TEST_CASE("atom evaluations are algebra homomorphisms") {
    CHECK(hom_evaluate(0, Element::unit(3)) == q(1));
    CHECK_THROWS_AS(hom_evaluate(3, Element::unit(3)), IndexError);

    Rng rng(137);
    for (int t = 0; t < 200; ++t) {
        std::size_t d = 1 + rng.uniform(6);
        Element x = gen::finite_signed_element(rng, d);
        Element y = gen::finite_signed_element(rng, d);
        std::size_t w = rng.uniform(d);
        CHECK(hom_evaluate(w, mul(x, y)) == hom_evaluate(w, x) * hom_evaluate(w, y));
        CHECK(hom_evaluate(w, add(x, y)) == hom_evaluate(w, x) + hom_evaluate(w, y));

        bool all_nonneg = true;
        for (std::size_t i = 0; i < d; ++i)
            if (hom_evaluate(i, x).is_negative()) all_nonneg = false;
        CHECK(all_nonneg == x.is_cone());
    }
}

TEST_CASE("invalid partitions are rejected") {
    CHECK_THROWS_AS(CondExp(ProbSpace::uniform(3), {{0, 1}}), PreconditionViolated);
    CHECK_THROWS_AS(CondExp(ProbSpace::uniform(3), {{0, 1}, {1, 2}}), PreconditionViolated);
    CHECK_THROWS_AS(CondExp(ProbSpace::uniform(3), {{0, 1, 2}, {}}), PreconditionViolated);
    CHECK_THROWS_AS(CondExp(ProbSpace::uniform(3), {{0, 1, 5}}), IndexError);
}
