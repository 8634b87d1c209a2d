#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace mobi {

// Exact rational with 64-bit numerator and denominator.  den == 0 encodes the
// projective point +inf (written "1/0"); every other value is kept in lowest
// terms with the sign on the numerator.  Intermediates run in 128 bits and
// anything that will not fit back into 64 bits throws instead of wrapping.

namespace detail {

using i128 = __int128;

inline std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw overflow_error("rational out of 64-bit range");
    return static_cast<std::int64_t>(v);
}

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace detail

class Rat {
public:
    constexpr Rat() = default;
    Rat(std::int64_t n) : num_(n), den_(1) {}
    Rat(std::int64_t n, std::int64_t d) { assign(n, d); }

    static Rat inf() {
        Rat r;
        r.num_ = 1;
        r.den_ = 0;
        return r;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_inf() const { return den_ == 0; }
    bool is_zero() const { return den_ != 0 && num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        a.want_finite("+"); b.want_finite("+");
        detail::i128 n = detail::i128(a.num_) * b.den_ + detail::i128(b.num_) * a.den_;
        detail::i128 d = detail::i128(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        a.want_finite("-"); b.want_finite("-");
        detail::i128 n = detail::i128(a.num_) * b.den_ - detail::i128(b.num_) * a.den_;
        detail::i128 d = detail::i128(a.den_) * b.den_;
        return make(n, d);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        a.want_finite("*"); b.want_finite("*");
        return make(detail::i128(a.num_) * b.num_, detail::i128(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        a.want_finite("/"); b.want_finite("/");
        if (b.num_ == 0)
            throw eval_error("division by zero");
        return make(detail::i128(a.num_) * b.den_, detail::i128(a.den_) * b.num_);
    }
    Rat operator-() const {
        want_finite("negate");
        Rat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        if (a.is_inf() || b.is_inf()) {
            // +inf compares above every finite value.
            int ai = a.is_inf() ? 1 : 0, bi = b.is_inf() ? 1 : 0;
            return ai <=> bi;
        }
        detail::i128 l = detail::i128(a.num_) * b.den_;
        detail::i128 r = detail::i128(b.num_) * a.den_;
        return l < r ? std::strong_ordering::less
             : l > r ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    // "p/q" with q > 0 and gcd(p,q) = 1, except "1/0" for +inf.
    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rat parse(std::string_view text) {
        auto slash = text.find('/');
        if (slash == std::string_view::npos || slash == 0 || slash + 1 >= text.size())
            throw parse_error("rational must look like p/q: '" + std::string(text) + "'");
        std::int64_t n = parse_int(text.substr(0, slash));
        std::int64_t d = parse_int(text.substr(slash + 1));
        if (d == 0) {
            if (n != 1)
                throw parse_error("only 1/0 denotes the point at infinity");
            return inf();
        }
        return Rat(n, d);
    }

private:
    std::int64_t num_{0};
    std::int64_t den_{1};

    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0)
            throw eval_error("zero denominator");
        if (d < 0) { n = detail::narrow(-detail::i128(n)); d = detail::narrow(-detail::i128(d)); }
        std::int64_t g = std::gcd(n, d);
        if (g > 1) { n /= g; d /= g; }
        num_ = n;
        den_ = d;
    }

    static Rat make(detail::i128 n, detail::i128 d) {
        if (d == 0)
            throw eval_error("zero denominator");
        if (d < 0) { n = -n; d = -d; }
        detail::i128 g = detail::gcd128(n, d);
        if (g > 1) { n /= g; d /= g; }
        Rat r;
        r.num_ = detail::narrow(n);
        r.den_ = detail::narrow(d);
        return r;
    }

    void want_finite(const char* op) const {
        if (is_inf())
            throw eval_error(std::string("arithmetic on infinity: ") + op);
    }

    static std::int64_t parse_int(std::string_view s) {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw parse_error("bad integer in rational: '" + std::string(s) + "'");
        return v;
    }
};

inline Rat half() { return Rat(1, 2); }

} // namespace mobi
