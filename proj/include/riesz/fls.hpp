#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "riesz/cond_exp.hpp"
#include "riesz/parts_star.hpp"
#include "riesz/periodic_seq.hpp"

namespace riesz {

// A weight sequence in R(T)+ together with an event sequence in B(X), both
// eventually periodic. All derived quantities below use 1-based indices to
// match the usual summation ranges sum_{i=q}^{n}.
struct WeightedEventSeq {
    CondExp T;
    PeriodicSeq<Element> vs;
    PeriodicSeq<BandProjection> qs;

    WeightedEventSeq(CondExp t, PeriodicSeq<Element> v, PeriodicSeq<BandProjection> q)
        : T(std::move(t)), vs(std::move(v)), qs(std::move(q)) {
        std::size_t terms = std::max(vs.prefix_len() + vs.cycle_len(),
                                     qs.prefix_len() + qs.cycle_len());
        for (std::size_t n = 0; n < terms; ++n) {
            const Element& v0 = vs.term(n);
            if (v0.dim() != T.dim()) throw DimensionMismatch(v0.dim(), T.dim());
            if (qs.term(n).dim() != T.dim()) throw DimensionMismatch(qs.term(n).dim(), T.dim());
            if (!v0.is_finite() || !v0.is_cone() || !T.is_block_constant(v0))
                throw PreconditionViolated("weights must be finite nonnegative members of R(T)");
        }
    }
};

// Evaluates K, S, R and their n = infinity values for a WeightedEventSeq.
// Indices are grouped into finitely many classes (prefix positions plus
// cycle residues), so per-class terms are computed once; series values are
// exact, never truncated.
class FlsCalc {
public:
    explicit FlsCalc(WeightedEventSeq seq)
        : seq_(std::move(seq)),
          prefix_(std::max(seq_.vs.prefix_len(), seq_.qs.prefix_len())),
          cycle_(std::lcm(seq_.vs.cycle_len(), seq_.qs.cycle_len())),
          kterm_(prefix_ + cycle_), qv_(prefix_ + cycle_),
          pair_(num_classes() * num_classes()) {}

    const WeightedEventSeq& seq() const { return seq_; }
    std::size_t dim() const { return seq_.T.dim(); }
    std::size_t num_classes() const { return prefix_ + cycle_; }
    std::size_t joint_prefix_len() const { return prefix_; }
    std::size_t joint_cycle_len() const { return cycle_; }

    // Class of the 1-based sequence index.
    std::size_t cls(std::size_t i) const {
        std::size_t n = i - 1;
        if (n < prefix_) return n;
        return prefix_ + (n - prefix_) % cycle_;
    }

    // v_i T Q_i e, the K summand.
    const Element& kterm(std::size_t i) const {
        std::size_t c = cls(i);
        if (!kterm_[c]) {
            std::size_t n = i - 1;
            kterm_[c] = mul(seq_.vs.term(n),
                            apply_T(seq_.T, unit_component(seq_.qs.term(n))));
        }
        return *kterm_[c];
    }

    // v_i v_j T(Q_i Q_j e), the S summand.
    const Element& pair_term(std::size_t i, std::size_t j) const {
        std::size_t c = cls(i) * num_classes() + cls(j);
        if (!pair_[c]) {
            Element qq = mul(unit_component(seq_.qs.term(i - 1)),
                             unit_component(seq_.qs.term(j - 1)));
            pair_[c] = mul(mul(seq_.vs.term(i - 1), seq_.vs.term(j - 1)),
                           apply_T(seq_.T, qq));
        }
        return *pair_[c];
    }

    // Q_{v_i} = Q_i composed with P_{v_i}.
    const BandProjection& qv(std::size_t i) const {
        std::size_t c = cls(i);
        if (!qv_[c])
            qv_[c] = meet(seq_.qs.term(i - 1), band_of(seq_.vs.term(i - 1)));
        return *qv_[c];
    }

    Element K(std::size_t q, std::size_t n) const {
        check_range(q, n);
        Element acc = Element::zero(dim());
        for (std::size_t i = q; i <= n; ++i) acc = add(acc, kterm(i));
        return acc;
    }

    Element S(std::size_t q, std::size_t n) const {
        check_range(q, n);
        auto& cache = s_cache_[q];
        if (cache.empty()) cache.push_back(pair_term(q, q));  // S(q, q)
        while (cache.size() < n - q + 1) {
            std::size_t m = q + cache.size();  // extend to S(q, m)
            Element row = pair_term(m, m);
            for (std::size_t i = q; i < m; ++i)
                row = add(row, scale(Rational(2), pair_term(i, m)));
            cache.push_back(add(cache.back(), row));
        }
        return cache[n - q];
    }

    // R_{q,n}(j) = sum_{i=q}^{n} v_j v_i T(Q_i Q_j e).
    Element R_j(std::size_t q, std::size_t n, std::size_t j) const {
        check_range(q, n);
        if (j < 1) throw IndexError("R_j needs j >= 1");
        Element acc = Element::zero(dim());
        for (std::size_t i = q; i <= n; ++i) acc = add(acc, pair_term(i, j));
        return acc;
    }

    // R_{q,n} fixes the first event: R_{q,n}(1).
    Element R(std::size_t q, std::size_t n) const { return R_j(q, n, 1); }

    // Series values (n = infinity), exact.
    Element K_inf(std::size_t q) const {
        if (q < 1) throw IndexError("index ranges start at 1");
        return series_sum(kterm_seq(), q - 1);
    }

    Element R_inf(std::size_t q, std::size_t j) const {
        if (q < 1 || j < 1) throw IndexError("index ranges start at 1");
        std::vector<Element> p, c;
        for (std::size_t i = 1; i <= prefix_; ++i) p.push_back(pair_term(i, j));
        for (std::size_t i = prefix_ + 1; i <= prefix_ + cycle_; ++i)
            c.push_back(pair_term(i, j));
        return series_sum(PeriodicSeq<Element>(std::move(p), std::move(c)), q - 1);
    }

    // S(q, infinity). A coordinate diverges exactly where K(q, infinity)
    // does (K^2 <= S <= (sum v_i) K); on the remaining coordinates every
    // summand with an index class outside the prefix vanishes, so the sum
    // stabilizes at the end of the prefix.
    Element S_inf(std::size_t q) const {
        Element kinf = K_inf(q);
        std::size_t stable = std::max(q, prefix_ + cycle_);
        Element s_stable = S(q, stable);
        std::vector<ExtValue> out;
        out.reserve(dim());
        for (std::size_t w = 0; w < dim(); ++w)
            out.push_back(kinf[w].is_infinite() ? ExtValue::infinity() : s_stable[w]);
        return Element(std::move(out));
    }

    BandProjection qv_union(std::size_t q, std::size_t n) const {
        check_range(q, n);
        BandProjection acc = BandProjection::empty(dim());
        for (std::size_t i = q; i <= n; ++i) acc = join(acc, qv(i));
        return acc;
    }

    // limsup_n Q_{v_n} e as an element: the indicator of the limsup band.
    Element limsup_qv_e() const {
        std::vector<Element> p, c;
        for (std::size_t i = 1; i <= prefix_; ++i) p.push_back(unit_component(qv(i)));
        for (std::size_t i = prefix_ + 1; i <= prefix_ + cycle_; ++i)
            c.push_back(unit_component(qv(i)));
        return limsup(PeriodicSeq<Element>(std::move(p), std::move(c)));
    }

private:
    PeriodicSeq<Element> kterm_seq() const {
        std::vector<Element> p, c;
        for (std::size_t i = 1; i <= prefix_; ++i) p.push_back(kterm(i));
        for (std::size_t i = prefix_ + 1; i <= prefix_ + cycle_; ++i) c.push_back(kterm(i));
        return PeriodicSeq<Element>(std::move(p), std::move(c));
    }

    static void check_range(std::size_t q, std::size_t n) {
        if (q < 1 || n < q) throw IndexError("need 1 <= q <= n");
    }

    WeightedEventSeq seq_;
    std::size_t prefix_;
    std::size_t cycle_;
    mutable std::vector<std::optional<Element>> kterm_;
    mutable std::vector<std::optional<BandProjection>> qv_;
    mutable std::vector<std::optional<Element>> pair_;
    mutable std::map<std::size_t, std::vector<Element>> s_cache_;
};

struct Certificate {
    std::size_t q, n;
    Element lhs;  // T(P join_{i=q}^{n} Q_{v_i} e)
    Element rhs;  // P(S*_{q,n} K^2_{q,n})
    bool holds;
};

struct BoundReport {
    std::size_t dimension;
    BandProjection band;  // band of the infinite part of sum v_i T Q_i e
    bool finite_part_zero;
    Element lhs;  // T P limsup Q_{v_n} e
    std::vector<std::pair<std::size_t, Element>> rhs_samples;  // (n, P(S*_{1,n} K^2_{1,n}))
    std::vector<Certificate> certificates;
    bool display_form_agrees;  // corollary mode: displayed rhs form matches
    bool verdict;              // lhs dominates every sample and every certificate holds
};

namespace detail {
inline std::vector<std::size_t> normalize_checkpoints(std::vector<std::size_t> cks) {
    if (cks.empty()) throw EmptyCheckpoints("at least one checkpoint required");
    for (auto n : cks)
        if (n < 1) throw IndexError("checkpoints are 1-based");
    std::sort(cks.begin(), cks.end());
    cks.erase(std::unique(cks.begin(), cks.end()), cks.end());
    return cks;
}
}  // namespace detail

// The lower-bound report: exact left-hand side, exact finite-stage samples
// of S*_{1,n} K^2_{1,n} under the band projection P, and the per-(q,n)
// certificates T(P c) >= P(S*_{q,n} K^2_{q,n}) behind the bound, which hold
// at every finite stage. The limsup of the sample sequence is not claimed; the
// certificates are the exact finite artifact.
inline BoundReport theorem_m7(const FlsCalc& calc, std::vector<std::size_t> checkpoints,
                              bool check_display_form = false) {
    auto cks = detail::normalize_checkpoints(std::move(checkpoints));
    const CondExp& T = calc.seq().T;

    Element kinf = calc.K_inf(1);
    BandProjection B = band_of(infinite_part(kinf));
    bool finite_zero = finite_part(kinf).is_zero();

    BoundReport report{calc.dim(), B, finite_zero, Element::zero(calc.dim()), {}, {}, true, true};
    report.lhs = apply_T(T, apply(B, calc.limsup_qv_e()));

    for (auto n : cks) {
        Element sample =
            apply(B, mul(star(calc.S(1, n)), int_power(calc.K(1, n), 2)));
        if (finite_zero) {
            // Off the band everything vanishes, so P changes nothing here.
            Element raw = mul(star(calc.S(1, n)), int_power(calc.K(1, n), 2));
            if (raw != sample) report.verdict = false;
        }
        if (check_display_form) {
            // Corollary form: (sum (Tq_i Tq_j)* T(q_i q_j))* (sum e_{Tq_i})^2.
            Element s_display = Element::zero(calc.dim());
            Element k_display = Element::zero(calc.dim());
            for (std::size_t i = 1; i <= n; ++i) {
                Element qi = unit_component(calc.seq().qs.term(i - 1));
                Element tqi = apply_T(T, qi);
                k_display = add(k_display, unit_component(band_of(tqi)));
                for (std::size_t j = 1; j <= n; ++j) {
                    Element qj = unit_component(calc.seq().qs.term(j - 1));
                    Element tqj = apply_T(T, qj);
                    s_display = add(s_display, mul(star(mul(tqi, tqj)),
                                                   apply_T(T, mul(qi, qj))));
                }
            }
            Element display = mul(star(s_display), int_power(k_display, 2));
            if (display != mul(star(calc.S(1, n)), int_power(calc.K(1, n), 2)))
                report.display_form_agrees = false;
        }
        if (!leq(sample, report.lhs)) report.verdict = false;
        report.rhs_samples.emplace_back(n, std::move(sample));
    }

    std::vector<std::size_t> qs = cks;
    if (qs.front() != 1) qs.insert(qs.begin(), 1);
    for (auto q : qs)
        for (auto n : cks) {
            if (n < q) continue;
            Element cert_lhs = apply_T(T, apply(B, unit_component(calc.qv_union(q, n))));
            Element cert_rhs =
                apply(B, mul(star(calc.S(q, n)), int_power(calc.K(q, n), 2)));
            // Proof step P K^2 <= T(Pc) P(S), checked alongside the
            // projected-ratio form.
            bool step = leq(apply(B, int_power(calc.K(q, n), 2)),
                            mul(cert_lhs, apply(B, calc.S(q, n))));
            bool holds = step && leq(cert_rhs, cert_lhs);
            if (!holds) report.verdict = false;
            report.certificates.push_back({q, n, cert_lhs, cert_rhs, holds});
        }
    if (!report.display_form_agrees) report.verdict = false;
    return report;
}

inline BoundReport theorem_m7(const WeightedEventSeq& seq, std::vector<std::size_t> checkpoints) {
    FlsCalc calc(seq);
    return theorem_m7(calc, std::move(checkpoints));
}

// Specializes the bound to v_n = (T q_n)* with q_n = Q_n e and additionally
// verifies that the displayed form of the right-hand side matches the
// generic one.
inline BoundReport corollary_m10(const CondExp& T, const PeriodicSeq<BandProjection>& qs,
                                 std::vector<std::size_t> checkpoints) {
    PeriodicSeq<Element> vs = qs.map([&](const BandProjection& Q) {
        return star(apply_T(T, unit_component(Q)));
    });
    FlsCalc calc(WeightedEventSeq(T, std::move(vs), qs));
    return theorem_m7(calc, std::move(checkpoints), /*check_display_form=*/true);
}

// ---------------------------------------------------------------------------
// Truncated-product Borel-Cantelli experiment.

struct BCLevel {
    std::size_t depth;
    Rational union_value;  // T(join_{n<=depth} P_n e) as a scalar
    Rational fls_ratio;    // S*_{1,depth} K^2_{1,depth} as a scalar
};

struct BCReport {
    std::size_t depth = 0;
    std::vector<Rational> ps;
    Rational union_value;
    Rational fls_ratio;
    bool certificate_holds = false;  // fls_ratio <= union_value
    bool k2_leq_s = false;           // K^2 <= S at full depth
    Rational gap_to_one;             // 1 - union_value
    bool pairwise_independent = false;
    std::vector<BCLevel> levels;  // truncations 1..depth
};

// Builds the product space {0,1}^depth with level probabilities p_n, the
// coordinate events P_n, the trivial conditional expectation, and evaluates
// the FLS certificate against the exact union value. A fixed finite atom
// space cannot carry infinitely many nontrivial pairwise independent
// projections, so the infinite statement is demonstrated through the
// truncation: when sum p_n diverges, both the union value and the ratio
// approach 1 as the depth grows.
inline BCReport borel_cantelli(const std::vector<Rational>& ps, std::size_t depth) {
    if (depth < 1) throw PreconditionViolated("depth must be at least 1");
    if (depth > 14) throw DepthTooLarge("depth capped at 14 (atom count 2^depth)");
    if (ps.empty()) throw PreconditionViolated("need at least one level probability");
    for (const auto& p : ps)
        if (p <= 0 || p >= 1)
            throw PreconditionViolated("level probabilities must lie in (0, 1)");

    auto level_p = [&](std::size_t n) { return ps[n % ps.size()]; };

    std::size_t atoms = std::size_t(1) << depth;
    std::vector<Rational> weights(atoms);
    for (std::size_t a = 0; a < atoms; ++a) {
        Rational w(1);
        for (std::size_t n = 0; n < depth; ++n)
            w *= (a >> n) & 1 ? level_p(n) : Rational(1 - level_p(n));
        weights[a] = w;
    }
    CondExp T = CondExp::trivial(ProbSpace(std::move(weights)));

    std::vector<BandProjection> events;
    for (std::size_t n = 0; n < depth; ++n) {
        BandProjection P(atoms);
        for (std::size_t a = 0; a < atoms; ++a)
            if ((a >> n) & 1) P.insert(a);
        events.push_back(std::move(P));
    }

    // Finite family as a sequence: the events form the prefix, the cycle is
    // the zero event with zero weight.
    PeriodicSeq<BandProjection> qs(events, {BandProjection::empty(atoms)});
    PeriodicSeq<Element> vs({}, {Element::unit(atoms)});
    FlsCalc calc(WeightedEventSeq(T, vs, qs));

    auto scalar = [](const Element& x) {
        for (std::size_t i = 1; i < x.dim(); ++i)
            if (x[i] != x[0]) throw Error("expected a constant element");
        return x[0].rational();
    };

    BCReport report;
    report.depth = depth;
    report.ps.reserve(depth);
    for (std::size_t n = 0; n < depth; ++n) report.ps.push_back(level_p(n));

    for (std::size_t d = 1; d <= depth; ++d) {
        BandProjection uni = calc.qv_union(1, d);
        Rational union_value = T.space().measure(uni);
        Element K = calc.K(1, d);
        Element S = calc.S(1, d);
        Rational ratio = scalar(mul(star(S), int_power(K, 2)));
        report.levels.push_back({d, union_value, ratio});
        if (d == depth) {
            report.union_value = union_value;
            report.fls_ratio = ratio;
            report.certificate_holds = ratio <= union_value;
            report.k2_leq_s = leq(int_power(K, 2), S);
            report.gap_to_one = 1 - union_value;
        }
    }

    report.pairwise_independent = true;
    for (std::size_t i = 0; i < depth; ++i)
        for (std::size_t j = i + 1; j < depth; ++j)
            if (!is_T_independent(T, events[i], events[j])) report.pairwise_independent = false;

    return report;
}

// ---------------------------------------------------------------------------
// Exact limit diagnostics for S*_{q,n} S_{p,n}.

enum class CoordVerdict {
    stabilized,    // provably stabilized and equal to the claimed limit
    consistent,    // monotone approach toward the claimed limit, per phase
    inconclusive,  // bracket reported, no conclusion at this window
    violated,      // provably stabilized but different from the claim
};

struct M5LimitReport {
    std::size_t q, p, n_max;
    Element claim;  // e_{S_{q,inf}} + S*_{q,inf}(S_{p,q-1} + 2 sum R^f_{q,inf}(j))
    std::vector<std::pair<std::size_t, Element>> samples;
    std::vector<CoordVerdict> coords;
    // Window bracket per coordinate: [min, max] over the analysis tail.
    std::vector<std::pair<Rational, Rational>> brackets;
    // Float-mode diagnostics for very large n; never feeds any verdict.
    std::vector<std::pair<std::size_t, std::vector<double>>> float_samples;

    bool any_violation() const {
        for (auto c : coords)
            if (c == CoordVerdict::violated) return true;
        return false;
    }
    bool all_stabilized() const {
        for (auto c : coords)
            if (c != CoordVerdict::stabilized) return false;
        return true;
    }
};

// Float evaluation of S*_{q,n} S_{p,n}; diagnostics only.
inline std::vector<double> fls_float_ratio(const FlsCalc& calc, std::size_t q, std::size_t p,
                                           std::size_t n) {
    std::vector<double> s_q(calc.dim(), 0.0), s_p(calc.dim(), 0.0);
    for (std::size_t i = p; i <= n; ++i)
        for (std::size_t j = p; j <= n; ++j) {
            const Element& t = calc.pair_term(i, j);
            for (std::size_t w = 0; w < calc.dim(); ++w) {
                double x = t[w].to_double();
                s_p[w] += x;
                if (i >= q && j >= q) s_q[w] += x;
            }
        }
    std::vector<double> out(calc.dim());
    for (std::size_t w = 0; w < calc.dim(); ++w)
        out[w] = s_q[w] == 0.0 ? 0.0 : s_p[w] / s_q[w];
    return out;
}

inline M5LimitReport m5_limit_check(const FlsCalc& calc, std::size_t q, std::size_t p,
                                    std::size_t n_max) {
    if (p < 1 || q < p) throw IndexError("need 1 <= p <= q");
    std::size_t exact_max = std::min<std::size_t>(n_max, 1000);
    if (exact_max < q) throw IndexError("n_max must be at least q");

    Element s_inf = calc.S_inf(q);
    Element claim_tail = p <= q - 1 && q >= 2 ? calc.S(p, q - 1) : Element::zero(calc.dim());
    for (std::size_t j = p; j + 1 <= q; ++j)
        claim_tail = add(claim_tail, scale(Rational(2), finite_part(calc.R_inf(q, j))));
    Element claim = add(unit_component(band_of(s_inf)), mul(star(s_inf), claim_tail));

    M5LimitReport report{q, p, n_max, claim, {}, {}, {}, {}};
    std::vector<Element> window;
    for (std::size_t n = q; n <= exact_max; ++n) {
        Element w = mul(star(calc.S(q, n)), calc.S(p, n));
        if (n == exact_max || (n - q) % std::max<std::size_t>(1, (exact_max - q) / 8) == 0)
            report.samples.emplace_back(n, w);
        window.push_back(std::move(w));
    }

    Element kinf = calc.K_inf(q);
    std::size_t L = calc.joint_cycle_len();
    std::size_t stable = std::max(q, calc.joint_prefix_len() + calc.joint_cycle_len());

    for (std::size_t w = 0; w < calc.dim(); ++w) {
        Rational lo = window.back()[w].rational(), hi = lo;
        std::size_t tail_start = stable > q ? stable - q : 0;
        for (std::size_t k = tail_start; k < window.size(); ++k) {
            const Rational& v = window[k][w].rational();
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
        report.brackets.emplace_back(lo, hi);

        const Rational& c = claim[w].rational();
        if (kinf[w].is_finite()) {
            if (window.size() <= tail_start) {
                report.coords.push_back(CoordVerdict::inconclusive);
                continue;
            }
            // Increments of both sums vanish past the prefix here, so the
            // value is exactly the limit from `stable` onward.
            bool ok = true;
            for (std::size_t k = tail_start; k < window.size(); ++k)
                if (window[k][w].rational() != c) ok = false;
            report.coords.push_back(ok ? CoordVerdict::stabilized : CoordVerdict::violated);
            continue;
        }
        // Divergent coordinate: analyze each cycle phase separately. S(q, n)
        // is nondecreasing, so the ratio is zero only until event mass first
        // reaches this coordinate; the transient is skipped.
        std::size_t first_pos = window.size();
        for (std::size_t k = 0; k < window.size(); ++k)
            if (window[k][w].rational() != 0) {
                first_pos = k;
                break;
            }
        std::size_t from = std::max(tail_start, first_pos);
        bool all_ok = true, any_data = false;
        for (std::size_t phase = 0; phase < L && all_ok; ++phase) {
            std::vector<Rational> sub;
            for (std::size_t k = from + phase; k < window.size(); k += L)
                sub.push_back(window[k][w].rational());
            if (sub.size() < 2) continue;
            any_data = true;
            bool nonincreasing = true, nondecreasing = true;
            for (std::size_t k = 1; k < sub.size(); ++k) {
                if (sub[k] > sub[k - 1]) nonincreasing = false;
                if (sub[k] < sub[k - 1]) nondecreasing = false;
            }
            if (nonincreasing && nondecreasing)
                all_ok = sub.back() == c;
            else if (nonincreasing)
                all_ok = sub.back() >= c;
            else if (nondecreasing)
                all_ok = sub.back() <= c;
            else
                all_ok = false;
        }
        report.coords.push_back(any_data && all_ok ? CoordVerdict::consistent
                                                   : CoordVerdict::inconclusive);
    }

    if (n_max > exact_max)
        report.float_samples.emplace_back(n_max, fls_float_ratio(calc, q, p, n_max));
    return report;
}

}  // namespace riesz
