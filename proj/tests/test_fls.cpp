#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "riesz/fls.hpp"
#include "riesz/rng.hpp"

using namespace riesz;

namespace {
ExtValue inf() { return ExtValue::infinity(); }
ExtValue q(long long n, long long d = 1) { return ExtValue(Rational(n, d)); }

FlsCalc uniform4_calc() {
    CondExp T = CondExp::trivial(ProbSpace::uniform(4));
    PeriodicSeq<BandProjection> qs({}, {BandProjection(4, {0, 1}), BandProjection(4, {0, 2})});
    PeriodicSeq<Element> vs({}, {Element::unit(4)});
    return FlsCalc(WeightedEventSeq(T, vs, qs));
}
}  // namespace

TEST_CASE("K sums the weighted event expectations") {
    CondExp T = CondExp::trivial(ProbSpace::uniform(2));
    PeriodicSeq<BandProjection> qs({}, {BandProjection::full(2)});
    PeriodicSeq<Element> vs({}, {Element::unit(2)});
    FlsCalc calc(WeightedEventSeq(T, vs, qs));
    CHECK(calc.K(1, 3) == Element{q(3), q(3)});
    CHECK(calc.K_inf(1) == Element{inf(), inf()});

    Rng rng(139);
    for (int t = 0; t < 100; ++t) {
        std::size_t d = 1 + rng.uniform(4);
        FlsCalc c(gen::weighted_event_seq(rng, gen::cond_exp(rng, d)));
        std::size_t k = 1 + rng.uniform(6);
        CHECK(c.K(k, k) ==
              mul(c.seq().vs.term(k - 1),
                  apply_T(c.seq().T, unit_component(c.seq().qs.term(k - 1)))));
        CHECK(c.S(k, k) ==
              mul(mul(c.seq().vs.term(k - 1), c.seq().vs.term(k - 1)),
                  apply_T(c.seq().T, unit_component(c.seq().qs.term(k - 1)))));
        CHECK_THROWS_AS(c.K(3, 2), IndexError);
        CHECK_THROWS_AS(c.K(0, 2), IndexError);
    }
}

TEST_CASE("S with unit weights under the trivial expectation is the gram total") {
    Rng rng(149);
    for (int t = 0; t < 50; ++t) {
        std::size_t d = 1 + rng.uniform(4);
        CondExp T = CondExp::trivial(ProbSpace::uniform(d));
        std::size_t n = 1 + rng.uniform(4);
        std::vector<BandProjection> qs;
        for (std::size_t i = 0; i < n; ++i) qs.push_back(gen::band(rng, d));

        PeriodicSeq<BandProjection> qseq(qs, {BandProjection::empty(d)});
        PeriodicSeq<Element> vs({}, {Element::unit(d)});
        FlsCalc calc(WeightedEventSeq(T, vs, qseq));
        CHECK(calc.S(1, n) == gamma(gram_matrix(T, qs)));
    }
}

TEST_CASE("S splitting identity") {
    Rng rng(151);
    for (int t = 0; t < 200; ++t) {
        std::size_t d = 1 + rng.uniform(4);
        FlsCalc calc(gen::weighted_event_seq(rng, gen::cond_exp(rng, d)));
        std::size_t p = 1 + rng.uniform(3);
        std::size_t k = p + 1 + rng.uniform(3);
        std::size_t n = k + rng.uniform(4);
        Element rhs = add(calc.S(p, k - 1), calc.S(k, n));
        for (std::size_t j = p; j <= k - 1; ++j)
            rhs = add(rhs, scale(Rational(2), calc.R_j(k, n, j)));
        CHECK(calc.S(p, n) == rhs);
    }
}

TEST_CASE("series values of S stabilize as analyzed") {
    Rng rng(157);
    for (int t = 0; t < 100; ++t) {
        std::size_t d = 1 + rng.uniform(4);
        FlsCalc calc(gen::weighted_event_seq(rng, gen::cond_exp(rng, d)));
        std::size_t qi = 1 + rng.uniform(3);
        Element sinf = calc.S_inf(qi);
        Element kinf = calc.K_inf(qi);
        std::size_t stable = std::max(qi, calc.joint_prefix_len() + calc.joint_cycle_len());
        // Where K converges the partial sums of S are already exact at the
        // stabilization point; pushing further must not change them.
        Element more = calc.S(qi, stable + 2 * calc.joint_cycle_len());
        for (std::size_t w = 0; w < d; ++w) {
            if (kinf[w].is_finite()) {
                CHECK(sinf[w] == more[w]);
            } else {
                CHECK(sinf[w].is_infinite());
            }
        }
        CHECK(calc.R_inf(qi, 1) == calc.R_inf(qi, 1));
    }
}

TEST_CASE("theorem bound report: all-zero weights") {
    CondExp T = CondExp::trivial(ProbSpace::uniform(3));
    PeriodicSeq<Element> vs({}, {Element::zero(3)});
    PeriodicSeq<BandProjection> qs({}, {BandProjection::full(3)});
    BoundReport r = theorem_m7(WeightedEventSeq(T, vs, qs), {1, 2, 5});
    CHECK(r.lhs.is_zero());
    for (const auto& [n, value] : r.rhs_samples) CHECK(value.is_zero());
    CHECK(r.verdict);
}

TEST_CASE("theorem bound report: dependent uniform example") {
    FlsCalc calc = uniform4_calc();
    BoundReport r = theorem_m7(calc, {1, 3, 7, 25, 200});

    CHECK(r.band == BandProjection::full(4));
    CHECK(r.finite_part_zero);
    CHECK(r.lhs == Element::constant(4, q(3, 4)));

    // Odd checkpoints give 2 n^2 / (3 n^2 + 1); even ones hit 2/3 exactly.
    auto expect = [](std::size_t n) {
        if (n % 2 == 0) return Rational(2, 3);
        BigInt nn(n);
        return Rational(2 * nn * nn, 3 * nn * nn + 1);
    };
    for (const auto& [n, value] : r.rhs_samples)
        CHECK(value == Element::constant(4, ExtValue(expect(n))));
    for (const auto& c : r.certificates) CHECK(c.holds);
    CHECK(r.verdict);
}

TEST_CASE("theorem bound reproduces the scalar weighted bound") {
    // With the trivial conditional expectation every quantity is the scalar
    // formula (sum w P(A))^2 / sum sum w w P(A A') times the unit.
    Rng rng(163);
    for (int t = 0; t < 50; ++t) {
        std::size_t d = 2 + rng.uniform(4);
        CondExp T = CondExp::trivial(ProbSpace::uniform(d));
        FlsCalc calc(gen::weighted_event_seq(rng, T));
        std::size_t n = 1 + rng.uniform(8);

        Rational num(0);
        for (std::size_t i = 1; i <= n; ++i)
            num += calc.seq().vs.term(i - 1)[0].rational() *
                   T.space().measure(calc.seq().qs.term(i - 1));
        Rational den(0);
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j)
                den += calc.seq().vs.term(i - 1)[0].rational() *
                       calc.seq().vs.term(j - 1)[0].rational() *
                       T.space().measure(
                           meet(calc.seq().qs.term(i - 1), calc.seq().qs.term(j - 1)));
        Rational expected = den == 0 ? Rational(0) : num * num / den;
        CHECK(mul(star(calc.S(1, n)), int_power(calc.K(1, n), 2)) ==
              Element::constant(d, ExtValue(expected)));
    }
}

TEST_CASE("corollary form of the bound") {
    // Constant single event with everywhere-positive expectation: the n = 1
    // sample is T q_1 itself and the bound is tight.
    CondExp T = CondExp::trivial(ProbSpace::uniform(2));
    PeriodicSeq<BandProjection> qs({}, {BandProjection(2, {0})});
    BoundReport r = corollary_m10(T, qs, {1, 4, 9});
    CHECK(r.display_form_agrees);
    CHECK(r.lhs == Element::constant(2, q(1, 2)));
    for (const auto& [n, value] : r.rhs_samples)
        CHECK(value == Element::constant(2, q(1, 2)));  // = T q_1
    CHECK(r.verdict);

    // Full events: everything is the unit.
    PeriodicSeq<BandProjection> full({}, {BandProjection::full(2)});
    BoundReport rf = corollary_m10(T, full, {1, 3});
    CHECK(rf.lhs == Element::unit(2));
    for (const auto& [n, value] : rf.rhs_samples) CHECK(value == Element::unit(2));
    CHECK(rf.verdict);

    // Agreement with the generic bound under the substituted weights.
    Rng rng(167);
    for (int t = 0; t < 30; ++t) {
        std::size_t d = 1 + rng.uniform(4);
        CondExp Tr = gen::cond_exp(rng, d);
        auto qseq = gen::periodic(rng, [&] { return gen::band(rng, d); });
        auto vs = qseq.map([&](const BandProjection& Q) {
            return star(apply_T(Tr, unit_component(Q)));
        });
        BoundReport a = corollary_m10(Tr, qseq, {2, 5});
        BoundReport b = theorem_m7(WeightedEventSeq(Tr, vs, qseq), {2, 5});
        CHECK(a.display_form_agrees);
        CHECK(a.lhs == b.lhs);
        for (std::size_t i = 0; i < a.rhs_samples.size(); ++i)
            CHECK(a.rhs_samples[i].second == b.rhs_samples[i].second);
    }
}

TEST_CASE("borel-cantelli truncated product") {
    BCReport one = borel_cantelli({Rational(1, 2)}, 1);
    CHECK(one.fls_ratio == Rational(1, 2));
    CHECK(one.union_value == Rational(1, 2));
    CHECK(one.certificate_holds);

    BCReport r = borel_cantelli({Rational(1, 2)}, 6);
    CHECK(r.fls_ratio == Rational(6, 7));
    CHECK(r.union_value == Rational(63, 64));
    CHECK(r.certificate_holds);
    CHECK(r.k2_leq_s);
    CHECK(r.pairwise_independent);
    for (std::size_t i = 1; i < r.levels.size(); ++i)
        CHECK(r.levels[i - 1].fls_ratio <= r.levels[i].fls_ratio);

    CHECK_THROWS_AS(borel_cantelli({Rational(1, 2)}, 15), DepthTooLarge);
    CHECK_THROWS_AS(borel_cantelli({Rational(3, 2)}, 3), PreconditionViolated);
}

TEST_CASE("limit diagnostics for S* S") {
    // Divergent uniform example: the claim is the unit and every coordinate
    // is consistent.
    FlsCalc calc = uniform4_calc();
    auto report = m5_limit_check(calc, 1, 1, 40);
    CHECK(report.claim == Element::unit(4));
    CHECK(!report.any_violation());
    for (auto v : report.coords) CHECK(v == CoordVerdict::consistent);

    auto report2 = m5_limit_check(calc, 2, 1, 60);
    CHECK(report2.claim == Element::unit(4));
    CHECK(!report2.any_violation());

    // Convergent case: events stop after a prefix, so the ratio stabilizes
    // at the claimed value exactly.
    CondExp T = CondExp::trivial(ProbSpace::uniform(2));
    PeriodicSeq<BandProjection> qs({BandProjection::full(2), BandProjection(2, {0})},
                                   {BandProjection::empty(2)});
    PeriodicSeq<Element> vs({}, {Element::unit(2)});
    FlsCalc conv(WeightedEventSeq(T, vs, qs));
    auto report3 = m5_limit_check(conv, 2, 1, 30);
    CHECK(report3.all_stabilized());
    // S_{1,inf} = S_{1,2}, S_{2,inf} = S_{2,2}; the limit is their exact ratio.
    CHECK(report3.claim == mul(star(conv.S_inf(2)), conv.S(1, 30)));
}

TEST_CASE("float diagnostics track the exact ratio") {
    FlsCalc calc = uniform4_calc();
    Element exact = mul(star(calc.S(1, 30)), calc.S(1, 30));
    auto approx = fls_float_ratio(calc, 1, 1, 30);
    for (std::size_t w = 0; w < 4; ++w)
        CHECK(std::abs(approx[w] - exact[w].to_double()) < 1e-9);
}
