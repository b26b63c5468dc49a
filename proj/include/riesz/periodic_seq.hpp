#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "riesz/band.hpp"
#include "riesz/element.hpp"
#include "riesz/parts_star.hpp"

namespace riesz {

// Eventually periodic sequence: a finite prefix followed by a repeating,
// nonempty cycle. Every tail has finitely many distinct terms, so tail
// suprema/infima and hence limsup/liminf are exactly computable. Works for
// any term type with join/meet (Elements, band projections).
template <typename T>
class PeriodicSeq {
public:
    PeriodicSeq(std::vector<T> prefix, std::vector<T> cycle)
        : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
        if (cycle_.empty()) throw PreconditionViolated("PeriodicSeq cycle must be nonempty");
    }

    static PeriodicSeq constant(T value) { return PeriodicSeq({}, {std::move(value)}); }

    const std::vector<T>& prefix() const { return prefix_; }
    const std::vector<T>& cycle() const { return cycle_; }
    std::size_t prefix_len() const { return prefix_.size(); }
    std::size_t cycle_len() const { return cycle_.size(); }

    // 0-based.
    const T& term(std::size_t n) const {
        if (n < prefix_.size()) return prefix_[n];
        return cycle_[(n - prefix_.size()) % cycle_.size()];
    }

    template <typename F>
    auto map(F&& f) const -> PeriodicSeq<std::decay_t<decltype(f(std::declval<const T&>()))>> {
        using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
        std::vector<U> p, c;
        p.reserve(prefix_.size());
        c.reserve(cycle_.size());
        for (const auto& t : prefix_) p.push_back(f(t));
        for (const auto& t : cycle_) c.push_back(f(t));
        return PeriodicSeq<U>(std::move(p), std::move(c));
    }

private:
    std::vector<T> prefix_;
    std::vector<T> cycle_;
};

// Pointwise combination; the result's prefix covers both prefixes and its
// cycle has the lcm length.
template <typename A, typename B, typename F>
auto zip_with(const PeriodicSeq<A>& a, const PeriodicSeq<B>& b, F&& f)
    -> PeriodicSeq<std::decay_t<decltype(f(a.term(0), b.term(0)))>> {
    using U = std::decay_t<decltype(f(a.term(0), b.term(0)))>;
    std::size_t p = std::max(a.prefix_len(), b.prefix_len());
    std::size_t l = std::lcm(a.cycle_len(), b.cycle_len());
    std::vector<U> prefix, cycle;
    prefix.reserve(p);
    cycle.reserve(l);
    for (std::size_t n = 0; n < p; ++n) prefix.push_back(f(a.term(n), b.term(n)));
    for (std::size_t n = p; n < p + l; ++n) cycle.push_back(f(a.term(n), b.term(n)));
    return PeriodicSeq<U>(std::move(prefix), std::move(cycle));
}

// Exact supremum over {term(n) : n >= beta}. The infinite tail always walks
// the whole cycle, so the fold is finite.
template <typename T>
T tail_sup(const PeriodicSeq<T>& s, std::size_t beta) {
    T acc = s.term(beta);
    for (std::size_t n = beta + 1; n < s.prefix_len(); ++n) acc = join(acc, s.term(n));
    for (const auto& c : s.cycle()) acc = join(acc, c);
    return acc;
}

template <typename T>
T tail_inf(const PeriodicSeq<T>& s, std::size_t beta) {
    T acc = s.term(beta);
    for (std::size_t n = beta + 1; n < s.prefix_len(); ++n) acc = meet(acc, s.term(n));
    for (const auto& c : s.cycle()) acc = meet(acc, c);
    return acc;
}

// limsup = inf_beta tail_sup(beta); for an eventually periodic sequence this
// is the join over the cycle, and dually for liminf.
template <typename T>
T limsup(const PeriodicSeq<T>& s) {
    T acc = s.cycle()[0];
    for (std::size_t i = 1; i < s.cycle_len(); ++i) acc = join(acc, s.cycle()[i]);
    return acc;
}

template <typename T>
T liminf(const PeriodicSeq<T>& s) {
    T acc = s.cycle()[0];
    for (std::size_t i = 1; i < s.cycle_len(); ++i) acc = meet(acc, s.cycle()[i]);
    return acc;
}

// The order limit exists iff limsup and liminf agree.
template <typename T>
std::optional<T> order_limit(const PeriodicSeq<T>& s) {
    T hi = limsup(s);
    if (hi != liminf(s)) return std::nullopt;
    return hi;
}

// Sum of the tail starting at `from` (0-based) for a sequence of cone
// Elements. A coordinate sums to inf iff some cycle term is positive there
// or an inf appears in the remaining prefix; otherwise the finite sum is
// exact. No truncation is involved.
inline Element series_sum(const PeriodicSeq<Element>& s, std::size_t from = 0) {
    std::size_t d = s.term(0).dim();
    for (std::size_t n = 0; n < s.prefix_len() + s.cycle_len(); ++n)
        if (!s.term(n).is_cone())
            throw PreconditionViolated("series_sum requires cone terms");

    std::vector<ExtValue> out;
    out.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        bool diverges = false;
        for (const auto& c : s.cycle())
            if (c[i].is_positive()) diverges = true;
        Rational acc(0);
        for (std::size_t n = from; n < s.prefix_len() && !diverges; ++n) {
            if (s.term(n)[i].is_infinite())
                diverges = true;
            else
                acc += s.term(n)[i].rational();
        }
        out.push_back(diverges ? ExtValue::infinity() : ExtValue(acc));
    }
    return Element(std::move(out));
}

}  // namespace riesz
