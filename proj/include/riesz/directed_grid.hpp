#pragma once

#include <vector>

#include "riesz/element.hpp"
#include "riesz/errors.hpp"

namespace riesz {

// A net over the directed index set {0..m} x {0..m} with the product order.
// Any two indices have an upper bound, and the set has a greatest element,
// so net limits are exact folds.
template <typename T>
class DirectedGrid {
public:
    DirectedGrid(std::size_t m, std::vector<T> values) : m_(m), values_(std::move(values)) {
        if (values_.size() != (m + 1) * (m + 1))
            throw ShapeMismatch("grid needs (m+1)^2 values");
    }

    std::size_t side() const { return m_ + 1; }
    const T& at(std::size_t i, std::size_t j) const { return values_[i * (m_ + 1) + j]; }

    template <typename F>
    auto map(F&& f) const -> DirectedGrid<std::decay_t<decltype(f(std::declval<const T&>()))>> {
        using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
        std::vector<U> out;
        out.reserve(values_.size());
        for (const auto& v : values_) out.push_back(f(v));
        return DirectedGrid<U>(m_, std::move(out));
    }

    template <typename G, typename F>
    friend auto zip_with(const DirectedGrid& a, const DirectedGrid<G>& b, F&& f)
        -> DirectedGrid<std::decay_t<decltype(f(a.at(0, 0), b.at(0, 0)))>> {
        using U = std::decay_t<decltype(f(a.at(0, 0), b.at(0, 0)))>;
        if (a.side() != b.side()) throw ShapeMismatch("grid sizes differ");
        std::vector<U> out;
        out.reserve(a.values_.size());
        for (std::size_t i = 0; i < a.side(); ++i)
            for (std::size_t j = 0; j < a.side(); ++j) out.push_back(f(a.at(i, j), b.at(i, j)));
        return DirectedGrid<U>(a.m_, std::move(out));
    }

    T net_sup() const {
        T acc = values_[0];
        for (std::size_t k = 1; k < values_.size(); ++k) acc = join(acc, values_[k]);
        return acc;
    }

    T net_inf() const {
        T acc = values_[0];
        for (std::size_t k = 1; k < values_.size(); ++k) acc = meet(acc, values_[k]);
        return acc;
    }

    // inf over beta of the tail sup {alpha >= beta}; computed literally.
    T net_limsup() const {
        bool first = true;
        T acc = values_[0];
        for (std::size_t a = 0; a <= m_; ++a)
            for (std::size_t b = 0; b <= m_; ++b) {
                T tail = at(a, b);
                for (std::size_t i = a; i <= m_; ++i)
                    for (std::size_t j = b; j <= m_; ++j) tail = join(tail, at(i, j));
                acc = first ? tail : meet(acc, tail);
                first = false;
            }
        return acc;
    }

    T net_liminf() const {
        bool first = true;
        T acc = values_[0];
        for (std::size_t a = 0; a <= m_; ++a)
            for (std::size_t b = 0; b <= m_; ++b) {
                T tail = at(a, b);
                for (std::size_t i = a; i <= m_; ++i)
                    for (std::size_t j = b; j <= m_; ++j) tail = meet(tail, at(i, j));
                acc = first ? tail : join(acc, tail);
                first = false;
            }
        return acc;
    }

private:
    std::size_t m_;
    std::vector<T> values_;
};

}  // namespace riesz
