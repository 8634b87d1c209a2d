#pragma once

#include <array>
#include <cstdint>
#include <variant>

#include "rational.hpp"

namespace mobi {

using Pair = std::array<Rat, 2>;

// One element of some structure: a position into a finite carrier's label
// list, a rational, or a rational pair for the planar domains.  Which
// alternative is legal is the carrier's business; Elem itself is just a value.
class Elem {
public:
    Elem() : v_(std::uint32_t{0}) {}

    static Elem pos(std::uint32_t i) { return Elem(i); }
    static Elem rat(Rat r) { return Elem(r); }
    static Elem pair(Rat x, Rat y) { return Elem(Pair{x, y}); }

    bool is_pos() const { return std::holds_alternative<std::uint32_t>(v_); }
    bool is_rat() const { return std::holds_alternative<Rat>(v_); }
    bool is_pair() const { return std::holds_alternative<Pair>(v_); }

    std::uint32_t pos() const {
        if (!is_pos()) throw eval_error("element is not a finite position");
        return std::get<std::uint32_t>(v_);
    }
    const Rat& rat() const {
        if (!is_rat()) throw eval_error("element is not a rational");
        return std::get<Rat>(v_);
    }
    const Pair& pair() const {
        if (!is_pair()) throw eval_error("element is not a rational pair");
        return std::get<Pair>(v_);
    }

    friend bool operator==(const Elem&, const Elem&) = default;
    friend bool operator<(const Elem& a, const Elem& b) {
        if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index();
        if (a.is_pos()) return a.pos() < b.pos();
        if (a.is_rat()) return a.rat() < b.rat();
        const Pair &p = a.pair(), &q = b.pair();
        if (p[0] != q[0]) return p[0] < q[0];
        return p[1] < q[1];
    }

private:
    explicit Elem(std::uint32_t i) : v_(i) {}
    explicit Elem(Rat r) : v_(r) {}
    explicit Elem(Pair p) : v_(p) {}

    std::variant<std::uint32_t, Rat, Pair> v_;
};

} // namespace mobi
