#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elem.hpp"

namespace mobi {

// Rational domains a structure can live on.  RayOneInf is the closed ray
// [1,+inf] and is the only domain where the projective point is a member.
enum class Domain {
    Q,            // all rationals
    UnitInterval, // [0,1]
    SymInterval,  // [-1,1]
    RayOneInf,    // [1,+inf]
    DyadicUnit,   // [0,1] with power-of-two denominator
    Q2,           // rational plane
    PlanarRegion, // sqrt(K)|y| <= x <= 1 - sqrt(K)|y|, parameter k >= 0
};

inline const char* domain_name(Domain d) {
    switch (d) {
        case Domain::Q: return "q";
        case Domain::UnitInterval: return "unit-interval";
        case Domain::SymInterval: return "sym-interval";
        case Domain::RayOneInf: return "ray-one-inf";
        case Domain::DyadicUnit: return "dyadic-unit";
        case Domain::Q2: return "q2";
        case Domain::PlanarRegion: return "planar-region";
    }
    return "?";
}

inline std::optional<Domain> domain_from_name(const std::string& name) {
    for (Domain d : {Domain::Q, Domain::UnitInterval, Domain::SymInterval,
                     Domain::RayOneInf, Domain::DyadicUnit, Domain::Q2,
                     Domain::PlanarRegion})
        if (name == domain_name(d)) return d;
    return std::nullopt;
}

namespace detail {

// Little-endian limbs of v^2 * m.  v may use all 128 bits, so the square is
// built from 64-bit halves; the result needs at most 320 bits.
inline std::array<std::uint64_t, 5> square_times(unsigned __int128 v, std::uint64_t m) {
    using u128 = unsigned __int128;
    std::uint64_t a0 = static_cast<std::uint64_t>(v);
    std::uint64_t a1 = static_cast<std::uint64_t>(v >> 64);
    u128 p00 = u128(a0) * a0, p01 = u128(a0) * a1, p11 = u128(a1) * a1;
    std::array<std::uint64_t, 4> sq{};
    sq[0] = static_cast<std::uint64_t>(p00);
    u128 t = (p00 >> 64) + static_cast<std::uint64_t>(p01);
    t += static_cast<std::uint64_t>(p01);
    sq[1] = static_cast<std::uint64_t>(t);
    t = (t >> 64) + (p01 >> 64) + (p01 >> 64) + static_cast<std::uint64_t>(p11);
    sq[2] = static_cast<std::uint64_t>(t);
    sq[3] = static_cast<std::uint64_t>((t >> 64) + (p11 >> 64));
    std::array<std::uint64_t, 5> out{};
    u128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 w = u128(sq[i]) * m + carry;
        out[i] = static_cast<std::uint64_t>(w);
        carry = w >> 64;
    }
    out[4] = static_cast<std::uint64_t>(carry);
    return out;
}

} // namespace detail

class Carrier {
public:
    static Carrier finite(std::vector<std::string> labels) {
        Carrier c;
        c.labels_ = std::move(labels);
        return c;
    }
    static Carrier rational(Domain d, std::map<std::string, Rat> params = {}) {
        Carrier c;
        c.domain_ = d;
        c.params_ = std::move(params);
        if (d == Domain::PlanarRegion && c.param("k") < Rat(0))
            throw parse_error("planar region needs k >= 0");
        return c;
    }

    bool is_finite() const { return !domain_.has_value(); }
    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    Domain domain() const { return *domain_; }
    const std::map<std::string, Rat>& params() const { return params_; }
    Rat param(const std::string& key) const {
        auto it = params_.find(key);
        if (it == params_.end()) throw parse_error("missing carrier parameter " + key);
        return it->second;
    }

    int dim() const {
        if (is_finite()) return 0;
        return (*domain_ == Domain::Q2 || *domain_ == Domain::PlanarRegion) ? 2 : 1;
    }

    std::optional<std::uint32_t> index_of(const std::string& label) const {
        for (std::uint32_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        return std::nullopt;
    }

    bool contains(const Elem& e) const {
        if (is_finite())
            return e.is_pos() && e.pos() < labels_.size();
        if (dim() == 2) {
            if (!e.is_pair()) return false;
            const Pair& p = e.pair();
            if (p[0].is_inf() || p[1].is_inf()) return false;
            if (*domain_ == Domain::Q2) return true;
            return in_region(p[0], p[1], param("k"));
        }
        if (!e.is_rat()) return false;
        const Rat& x = e.rat();
        switch (*domain_) {
            case Domain::Q: return !x.is_inf();
            case Domain::UnitInterval: return !x.is_inf() && Rat(0) <= x && x <= Rat(1);
            case Domain::SymInterval: return !x.is_inf() && Rat(-1) <= x && x <= Rat(1);
            case Domain::RayOneInf: return x.is_inf() || x >= Rat(1);
            case Domain::DyadicUnit:
                return !x.is_inf() && Rat(0) <= x && x <= Rat(1) && power_of_two(x.den());
            default: return false;
        }
    }

    friend bool operator==(const Carrier&, const Carrier&) = default;

    // Region membership is decided exactly on squares: K y^2 <= x^2 and
    // K y^2 <= (1-x)^2 with 0 <= x <= 1.
    static bool in_region(const Rat& x, const Rat& y, const Rat& k) {
        if (x < Rat(0) || x > Rat(1)) return false;
        return scaled_square_le(k, y, x) && scaled_square_le(k, y, Rat(1) - x);
    }

    // k y^2 <= x^2, compared as k.num (y.num x.den)^2 <= k.den (x.num y.den)^2
    // in limbs so coordinate squares never have to fit a 64-bit rational.
    static bool scaled_square_le(const Rat& k, const Rat& y, const Rat& x) {
        using u128 = unsigned __int128;
        auto mag = [](std::int64_t v) {
            return v < 0 ? 0 - static_cast<std::uint64_t>(v)
                         : static_cast<std::uint64_t>(v);
        };
        auto lhs = detail::square_times(u128(mag(y.num())) * mag(x.den()), mag(k.num()));
        auto rhs = detail::square_times(u128(mag(x.num())) * mag(y.den()), mag(k.den()));
        for (int i = 4; i >= 0; --i)
            if (lhs[i] != rhs[i]) return lhs[i] < rhs[i];
        return true;
    }

    static bool power_of_two(std::int64_t d) {
        return d > 0 && (d & (d - 1)) == 0;
    }

private:
    std::vector<std::string> labels_;
    std::optional<Domain> domain_;
    std::map<std::string, Rat> params_;
};

} // namespace mobi
