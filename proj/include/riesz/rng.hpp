#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "riesz/band.hpp"
#include "riesz/cond_exp.hpp"
#include "riesz/directed_grid.hpp"
#include "riesz/element.hpp"
#include "riesz/fls.hpp"
#include "riesz/periodic_seq.hpp"

namespace riesz {

// Deterministic random source. Draws come straight off mt19937_64 (whose
// output sequence the standard pins down), so identical seeds reproduce
// identical instances on any platform and under any thread count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    std::size_t uniform(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    // true with probability num/den
    bool chance(std::size_t num, std::size_t den) { return uniform(den) < num; }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
    return splitmix64(splitmix64(splitmix64(a) ^ b) ^ c);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Instance generators over the test grid {0, +-1/3, +-1/2, +-1, +-2, 3};
// infinite coordinates appear with probability 1/5 where allowed.
namespace gen {

inline Rational grid_rational(Rng& rng) {
    static const int nums[] = {0, 1, -1, 1, -1, 1, -1, 2, -2, 3};
    static const int dens[] = {1, 3, 3, 2, 2, 1, 1, 1, 1, 1};
    std::size_t k = rng.uniform(10);
    return Rational(nums[k], dens[k]);
}

inline Rational nonneg_grid_rational(Rng& rng) {
    static const int nums[] = {0, 1, 1, 1, 2, 3};
    static const int dens[] = {1, 3, 2, 1, 1, 1};
    std::size_t k = rng.uniform(6);
    return Rational(nums[k], dens[k]);
}

inline Rational positive_grid_rational(Rng& rng) {
    static const int nums[] = {1, 1, 1, 2, 3};
    static const int dens[] = {3, 2, 1, 1, 1};
    std::size_t k = rng.uniform(5);
    return Rational(nums[k], dens[k]);
}

inline ExtValue cone_value(Rng& rng) {
    if (rng.chance(1, 5)) return ExtValue::infinity();
    return ExtValue(nonneg_grid_rational(rng));
}

// General member of the model: signed finite coordinates or +inf.
inline ExtValue signed_value(Rng& rng) {
    if (rng.chance(1, 5)) return ExtValue::infinity();
    return ExtValue(grid_rational(rng));
}

inline Element cone_element(Rng& rng, std::size_t d) {
    std::vector<ExtValue> c;
    c.reserve(d);
    for (std::size_t i = 0; i < d; ++i) c.push_back(cone_value(rng));
    return Element(std::move(c));
}

inline Element finite_cone_element(Rng& rng, std::size_t d) {
    std::vector<ExtValue> c;
    c.reserve(d);
    for (std::size_t i = 0; i < d; ++i) c.push_back(ExtValue(nonneg_grid_rational(rng)));
    return Element(std::move(c));
}

inline Element finite_signed_element(Rng& rng, std::size_t d) {
    std::vector<ExtValue> c;
    c.reserve(d);
    for (std::size_t i = 0; i < d; ++i) c.push_back(ExtValue(grid_rational(rng)));
    return Element(std::move(c));
}

inline Element signed_element(Rng& rng, std::size_t d) {
    std::vector<ExtValue> c;
    c.reserve(d);
    for (std::size_t i = 0; i < d; ++i) c.push_back(signed_value(rng));
    return Element(std::move(c));
}

inline BandProjection band(Rng& rng, std::size_t d) {
    BandProjection B(d);
    for (std::size_t i = 0; i < d; ++i)
        if (rng.chance(1, 2)) B.insert(i);
    return B;
}

template <typename F>
PeriodicSeq<std::decay_t<decltype(std::declval<F&>()())>> periodic(Rng& rng, F&& make_term,
                                                                   std::size_t max_prefix = 3,
                                                                   std::size_t max_cycle = 3) {
    using T = std::decay_t<decltype(make_term())>;
    std::size_t np = rng.uniform(max_prefix + 1);
    std::size_t nc = 1 + rng.uniform(max_cycle);
    std::vector<T> prefix, cycle;
    for (std::size_t i = 0; i < np; ++i) prefix.push_back(make_term());
    for (std::size_t i = 0; i < nc; ++i) cycle.push_back(make_term());
    return PeriodicSeq<T>(std::move(prefix), std::move(cycle));
}

inline PeriodicSeq<Element> cone_seq(Rng& rng, std::size_t d) {
    return periodic(rng, [&] { return cone_element(rng, d); });
}

inline PeriodicSeq<Element> finite_cone_seq(Rng& rng, std::size_t d) {
    return periodic(rng, [&] { return finite_cone_element(rng, d); });
}

inline PeriodicSeq<Element> signed_seq(Rng& rng, std::size_t d) {
    return periodic(rng, [&] { return signed_element(rng, d); });
}

inline PeriodicSeq<BandProjection> band_seq(Rng& rng, std::size_t d) {
    return periodic(rng, [&] { return band(rng, d); });
}

// Decreasing eventually periodic sequence: running meets of random draws,
// then a constant cycle.
inline PeriodicSeq<Element> decreasing_cone_seq(Rng& rng, std::size_t d) {
    std::size_t np = 1 + rng.uniform(3);
    std::vector<Element> prefix;
    Element acc = cone_element(rng, d);
    for (std::size_t i = 0; i < np; ++i) {
        acc = meet(acc, cone_element(rng, d));
        prefix.push_back(acc);
    }
    Element last = meet(acc, cone_element(rng, d));
    return PeriodicSeq<Element>(std::move(prefix), {last});
}

inline DirectedGrid<Element> cone_grid(Rng& rng, std::size_t d, std::size_t m) {
    std::vector<Element> values;
    for (std::size_t k = 0; k < (m + 1) * (m + 1); ++k) values.push_back(cone_element(rng, d));
    return DirectedGrid<Element>(m, std::move(values));
}

// Decreasing in the product order: each value is the meet of all draws at
// smaller-or-equal indices.
inline DirectedGrid<Element> decreasing_cone_grid(Rng& rng, std::size_t d, std::size_t m) {
    std::vector<Element> values((m + 1) * (m + 1), Element::zero(d));
    for (std::size_t i = 0; i <= m; ++i)
        for (std::size_t j = 0; j <= m; ++j) {
            Element v = cone_element(rng, d);
            if (i > 0) v = meet(v, values[(i - 1) * (m + 1) + j]);
            if (j > 0) v = meet(v, values[i * (m + 1) + j - 1]);
            values[i * (m + 1) + j] = v;
        }
    return DirectedGrid<Element>(m, std::move(values));
}

inline CondExp cond_exp(Rng& rng, std::size_t d) {
    std::vector<Rational> raw;
    Rational total(0);
    for (std::size_t i = 0; i < d; ++i) {
        raw.push_back(positive_grid_rational(rng));
        total += raw.back();
    }
    for (auto& w : raw) w /= total;
    // Random partition: walk the atoms, open a new block with probability 1/2.
    std::vector<std::vector<std::size_t>> partition;
    for (std::size_t i = 0; i < d; ++i) {
        if (partition.empty() || rng.chance(1, 2))
            partition.push_back({i});
        else
            partition[rng.uniform(partition.size())].push_back(i);
    }
    return CondExp(ProbSpace(std::move(raw)), std::move(partition));
}

// Block-constant nonnegative finite element in R(T).
inline Element block_constant(Rng& rng, const CondExp& T) {
    std::vector<ExtValue> coords(T.dim());
    for (const auto& block : T.partition()) {
        ExtValue v(nonneg_grid_rational(rng));
        for (auto atom : block) coords[atom] = v;
    }
    return Element(std::move(coords));
}

inline WeightedEventSeq weighted_event_seq(Rng& rng, CondExp T, std::size_t max_prefix = 2,
                                           std::size_t max_cycle = 3) {
    std::size_t d = T.dim();
    auto vs = periodic(rng, [&] { return block_constant(rng, T); }, max_prefix, max_cycle);
    auto qs = periodic(rng, [&] { return band(rng, d); }, max_prefix, max_cycle);
    return WeightedEventSeq(std::move(T), std::move(vs), std::move(qs));
}

}  // namespace gen
}  // namespace riesz
