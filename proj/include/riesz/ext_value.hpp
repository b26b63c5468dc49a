#pragma once

#include <limits>
#include <string>

#include "riesz/errors.hpp"
#include "riesz/rational.hpp"

namespace riesz {

// One coordinate of a sup-completion element: an exact rational or +infinity.
// There is no -infinity; coordinates live in (-inf, +inf].
class ExtValue {
public:
    ExtValue() : value_(0), infinite_(false) {}
    ExtValue(Rational v) : value_(std::move(v)), infinite_(false) {}
    ExtValue(long long v) : value_(v), infinite_(false) {}

    static ExtValue infinity() {
        ExtValue v;
        v.infinite_ = true;
        return v;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    // Only valid on finite values.
    const Rational& rational() const {
        if (infinite_) throw Error("rational() on infinite value");
        return value_;
    }

    bool is_zero() const { return !infinite_ && value_ == 0; }
    bool is_positive() const { return infinite_ || value_ > 0; }
    bool is_negative() const { return !infinite_ && value_ < 0; }

    friend bool operator==(const ExtValue& a, const ExtValue& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const ExtValue& a, const ExtValue& b) { return !(a == b); }

    friend bool operator<(const ExtValue& a, const ExtValue& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const ExtValue& a, const ExtValue& b) { return a < b || a == b; }
    friend bool operator>(const ExtValue& a, const ExtValue& b) { return b < a; }
    friend bool operator>=(const ExtValue& a, const ExtValue& b) { return b <= a; }

    // a + inf = inf, for any finite a. Never produces -inf.
    friend ExtValue operator+(const ExtValue& a, const ExtValue& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return ExtValue(Rational(a.value_ + b.value_));
    }

    // Subtraction is only used where the result is known finite.
    friend ExtValue operator-(const ExtValue& a, const ExtValue& b) {
        if (b.infinite_) throw UndefinedSum("cannot subtract infinity");
        if (a.infinite_) return infinity();
        return ExtValue(Rational(a.value_ - b.value_));
    }

    // 0 * inf = 0, r * inf = inf for r > 0; a negative factor against
    // infinity has no value in (-inf, inf] and is rejected.
    friend ExtValue operator*(const ExtValue& a, const ExtValue& b) {
        if (a.infinite_ || b.infinite_) {
            const ExtValue& fin = a.infinite_ ? b : a;
            if (fin.is_negative())
                throw UndefinedProduct("negative value times infinity");
            if (fin.is_zero() && fin.is_finite()) return ExtValue(Rational(0));
            return infinity();
        }
        return ExtValue(Rational(a.value_ * b.value_));
    }

    ExtValue& operator+=(const ExtValue& o) { return *this = *this + o; }

    friend ExtValue join(const ExtValue& a, const ExtValue& b) { return a < b ? b : a; }
    friend ExtValue meet(const ExtValue& a, const ExtValue& b) { return a < b ? a : b; }

    // Signed coordinatewise reciprocal: 1/v on finite nonzero values, 0 on 0 and inf.
    ExtValue reciprocal_or_zero() const {
        if (infinite_ || value_ == 0) return ExtValue(Rational(0));
        return ExtValue(Rational(1) / value_);
    }

    std::string str() const { return infinite_ ? "inf" : format_rational(value_); }

    double to_double() const {
        if (infinite_) return std::numeric_limits<double>::infinity();
        return value_.convert_to<double>();
    }

private:
    Rational value_;
    bool infinite_;
};

inline ExtValue parse_ext_value(const std::string& text) {
    if (text == "inf") return ExtValue::infinity();
    return ExtValue(parse_rational(text));
}

}  // namespace riesz
