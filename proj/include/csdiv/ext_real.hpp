#pragma once

#include <cmath>
#include <limits>
#include <ostream>

#include "csdiv/errors.hpp"

namespace csdiv {

/// Extended real: a finite value or +infinity.  Divergence values live in
/// [0, +inf]; generator boundary limits f(0+) and lim f(u)/u may be any
/// finite real or +inf, so finiteness is the only structural invariant here
/// and nonnegativity of divergences is checked where they are produced.
/// Arithmetic saturates: x + inf = inf, c * inf = inf for c > 0.
class ExtReal {
public:
    constexpr ExtReal() = default;
    constexpr ExtReal(double v) : value_(v), infinite_(false) {}

    static constexpr ExtReal infinity() {
        ExtReal r;
        r.infinite_ = true;
        return r;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    /// Finite value; throws on +inf.
    double value() const {
        if (infinite_) throw DomainError("ExtReal: value() on +inf");
        return value_;
    }

    /// Finite value, or HUGE_VAL for +inf.
    constexpr double as_double() const {
        return infinite_ ? std::numeric_limits<double>::infinity() : value_;
    }

    ExtReal& operator+=(const ExtReal& o) {
        if (o.infinite_) infinite_ = true;
        if (!infinite_) value_ += o.value_;
        return *this;
    }

    friend ExtReal operator+(ExtReal a, const ExtReal& b) { return a += b; }

    /// Scale by a positive factor (c * inf stays inf).  c == 0 gives 0 even
    /// against +inf only when the caller handles that case; scaling an
    /// infinite value by 0 is a domain error to keep 0 * inf explicit.
    friend ExtReal operator*(double c, const ExtReal& x) {
        if (x.infinite_) {
            if (c > 0.0) return ExtReal::infinity();
            if (c == 0.0) throw DomainError("ExtReal: 0 * inf");
            throw DomainError("ExtReal: negative scale on +inf");
        }
        return ExtReal(c * x.value_);
    }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

    /// Total order with +inf as the top element.
    friend bool operator<(const ExtReal& a, const ExtReal& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
    friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
    friend bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const ExtReal& x) {
        if (x.infinite_) return os << "inf";
        return os << x.value_;
    }

private:
    double value_ = 0.0;
    bool infinite_ = false;
};

}  // namespace csdiv
