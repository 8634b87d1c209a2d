#pragma once

#include <cstdint>

#include "carrier.hpp"

namespace mobi {

inline constexpr std::uint64_t kDefaultSeed = 0x6d6f6269; // "mobi"

struct SampleSpec {
    std::uint64_t seed = kDefaultSeed;
    int count = 1000;
    std::int64_t den_limit = 64;

    friend bool operator==(const SampleSpec&, const SampleSpec&) = default;
};

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

// Rejection sampler: proposals are p/q with |p|, q <= den_limit drawn from a
// domain-shaped box, kept only if the carrier accepts them.  The ray draws
// the projective point with probability 1/16.  Identical (seed, carrier,
// limit) give identical streams.
class Sampler {
public:
    Sampler(const Carrier& carrier, const SampleSpec& spec)
        : rng_{spec.seed}, carrier_(&carrier), lim_(spec.den_limit) {}

    Elem next() {
        for (int tries = 0; tries < 100000; ++tries) {
            Elem e = propose();
            if (carrier_->contains(e)) return e;
        }
        throw eval_error("sampler kept rejecting; carrier too thin for its box");
    }

private:
    SplitMix64 rng_;
    const Carrier* carrier_;
    std::int64_t lim_;

    std::int64_t ranged(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(rng_.next() %
                   static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rat draw_rat(bool signed_box) {
        std::int64_t q = ranged(1, lim_);
        std::int64_t p = signed_box ? ranged(-lim_, lim_) : ranged(0, lim_);
        return Rat(p, q);
    }

    Elem propose() {
        if (carrier_->is_finite())
            return Elem::pos(static_cast<std::uint32_t>(
                rng_.next() % carrier_->size()));
        switch (carrier_->domain()) {
            case Domain::Q:
            case Domain::SymInterval:
                return Elem::rat(draw_rat(true));
            case Domain::UnitInterval:
            case Domain::DyadicUnit:
                return Elem::rat(draw_rat(false));
            case Domain::RayOneInf:
                if (rng_.next() % 16 == 0) return Elem::rat(Rat::inf());
                return Elem::rat(draw_rat(false));
            case Domain::Q2:
            case Domain::PlanarRegion: {
                Rat x = draw_rat(carrier_->domain() == Domain::Q2);
                Rat y = draw_rat(true);
                return Elem::pair(x, y);
            }
        }
        throw eval_error("unhandled domain in sampler");
    }
};

} // namespace mobi
