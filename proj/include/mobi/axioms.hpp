#pragma once

#include <functional>

#include "report.hpp"

namespace mobi {

inline constexpr std::uint64_t kEvalCap = 1'000'000'000;

struct Law {
    std::string id;
    int arity;
    std::function<bool(std::span<const Elem>)> holds;
};

namespace detail {

// Exhaustive row-major sweep on finite carriers, seeded sampling otherwise.
// The first failing tuple is the witness; evaluation errors (closure, arity,
// overflow) fail the law at the offending tuple with a note.
inline LawResult run_law(const Structure& s, const Law& law,
                         const SampleSpec& sample, std::uint64_t cap) {
    LawResult res;
    res.axiom = law.id;
    std::vector<Elem> args(law.arity);

    auto attempt = [&]() -> bool {
        ++res.checked;
        if (res.checked > cap)
            throw cap_exceeded_error("exhaustiveness cap exceeded in " + law.id);
        try {
            if (law.holds(args)) return true;
            res.status = Status::Fail;
        } catch (const cap_exceeded_error&) {
            throw;
        } catch (const std::runtime_error& e) {
            res.status = Status::Fail;
            res.note = e.what();
        }
        res.witness = json::array();
        for (const Elem& a : args) res.witness.push_back(elem_to_json(s.carrier, a));
        return false;
    };

    if (law.arity == 0) {
        attempt();
        return res;
    }

    if (s.carrier.is_finite()) {
        std::size_t n = s.carrier.size();
        std::vector<std::uint32_t> digits(law.arity, 0);
        for (;;) {
            for (int i = 0; i < law.arity; ++i) args[i] = Elem::pos(digits[i]);
            if (!attempt()) return res;
            int i = law.arity - 1;
            while (i >= 0 && ++digits[i] == n) digits[i--] = 0;
            if (i < 0) break;
        }
        return res;
    }

    Sampler gen(s.carrier, sample);
    for (int t = 0; t < sample.count; ++t) {
        for (int i = 0; i < law.arity; ++i) args[i] = gen.next();
        if (!attempt()) return res;
    }
    return res;
}

} // namespace detail

inline Report run_laws(const Structure& s, std::string profile, std::string id,
                       const std::vector<Law>& laws,
                       const SampleSpec& sample = {},
                       std::uint64_t cap = kEvalCap) {
    Report rep;
    rep.structure_id = std::move(id);
    rep.profile = std::move(profile);
    for (const Law& law : laws)
        rep.results.push_back(detail::run_law(s, law, sample, cap));
    return rep;
}

// ---- law sets ----

inline std::vector<Law> mobi_laws(const Structure& s, bool with_cancellation) {
    MobiView m(s);
    Elem z = m.zero(), h = m.half(), o = m.one();
    std::vector<Law> laws = {
        {"A1", 0, [m, z, h, o](std::span<const Elem>) { return m.p(o, h, z) == h; }},
        {"A2", 1, [m, z, o](std::span<const Elem> v) { return m.p(z, v[0], o) == v[0]; }},
        {"A3", 2, [m](std::span<const Elem> v) { return m.p(v[0], v[1], v[0]) == v[0]; }},
        {"A4", 2, [m, z](std::span<const Elem> v) { return m.p(v[0], z, v[1]) == v[0]; }},
        {"A5", 2, [m, o](std::span<const Elem> v) { return m.p(v[0], o, v[1]) == v[1]; }},
        {"A7", 5, [m](std::span<const Elem> v) {
             // v = a, b, c1, c2, c3
             return m.p(v[0], m.p(v[2], v[3], v[4]), v[1]) ==
                    m.p(m.p(v[0], v[2], v[1]), v[3], m.p(v[0], v[4], v[1]));
         }},
        {"A8", 5, [m, h](std::span<const Elem> v) {
             // v = a1, b1, a2, b2, c
             return m.p(m.p(v[0], v[4], v[1]), h, m.p(v[2], v[4], v[3])) ==
                    m.p(m.p(v[0], h, v[2]), v[4], m.p(v[1], h, v[3]));
         }},
    };
    if (with_cancellation) {
        Law a6{"A6", 3, [m, h](std::span<const Elem> v) {
                   // contrapositive: distinct first arguments keep distinct values
                   if (v[0] == v[1]) return true;
                   return m.p(v[0], h, v[2]) != m.p(v[1], h, v[2]);
               }};
        laws.insert(laws.begin() + 5, a6);
    }
    return laws;
}

inline std::vector<Law> imm_laws(const Structure& s) {
    ImmView b(s);
    Elem o = b.one(), bo = b.bar_one(), hf = b.oplus(bo, o);
    return {
        {"B1", 1, [b](std::span<const Elem> v) { return b.oplus(v[0], v[0]) == v[0]; }},
        {"B2", 2, [b](std::span<const Elem> v) { return b.oplus(v[0], v[1]) == b.oplus(v[1], v[0]); }},
        {"B3", 4, [b](std::span<const Elem> v) {
             return b.oplus(b.oplus(v[0], v[1]), b.oplus(v[2], v[3])) ==
                    b.oplus(b.oplus(v[0], v[2]), b.oplus(v[1], v[3]));
         }},
        {"B4", 3, [b](std::span<const Elem> v) {
             return b.dot(b.dot(v[0], v[1]), v[2]) == b.dot(v[0], b.dot(v[1], v[2]));
         }},
        {"B5", 1, [b, o](std::span<const Elem> v) {
             return b.dot(v[0], o) == v[0] && b.dot(o, v[0]) == v[0];
         }},
        {"B6", 3, [b](std::span<const Elem> v) {
             return b.dot(v[0], b.oplus(v[1], v[2])) == b.oplus(b.dot(v[0], v[1]), b.dot(v[0], v[2])) &&
                    b.dot(b.oplus(v[0], v[1]), v[2]) == b.oplus(b.dot(v[0], v[2]), b.dot(v[1], v[2]));
         }},
        {"B7", 1, [b](std::span<const Elem> v) { return b.inv(b.inv(v[0])) == v[0]; }},
        {"B8", 2, [b](std::span<const Elem> v) {
             return b.inv(b.oplus(v[0], v[1])) == b.oplus(b.inv(v[0]), b.inv(v[1]));
         }},
        {"B9", 1, [b, bo](std::span<const Elem> v) {
             return b.dot(v[0], bo) == bo && b.dot(bo, v[0]) == bo;
         }},
        {"B10", 1, [b, hf](std::span<const Elem> v) {
             return b.oplus(b.inv(v[0]), v[0]) == hf;
         }},
    };
}

inline std::vector<Law> imm_star_laws(const Structure& s) {
    ImmView b(s);
    Elem o = b.one(), bo = b.bar_one(), hf = b.oplus(bo, o);
    return {
        {"C1", 1, [b](std::span<const Elem> v) { return b.oplus(v[0], v[0]) == v[0]; }},
        {"C2", 2, [b](std::span<const Elem> v) { return b.oplus(v[0], v[1]) == b.oplus(v[1], v[0]); }},
        {"C3", 3, [b](std::span<const Elem> v) {
             if (v[0] == v[1]) return true;
             return b.oplus(v[0], v[2]) != b.oplus(v[1], v[2]);
         }},
        {"C4", 4, [b](std::span<const Elem> v) {
             return b.oplus(b.oplus(v[0], v[1]), b.oplus(v[2], v[3])) ==
                    b.oplus(b.oplus(v[0], v[2]), b.oplus(v[1], v[3]));
         }},
        {"C5", 3, [b](std::span<const Elem> v) {
             return b.dot(b.dot(v[0], v[1]), v[2]) == b.dot(v[0], b.dot(v[1], v[2]));
         }},
        {"C6", 1, [b, o](std::span<const Elem> v) {
             return b.dot(v[0], o) == v[0] && b.dot(o, v[0]) == v[0];
         }},
        {"C7", 3, [b](std::span<const Elem> v) {
             return b.dot(v[0], b.oplus(v[1], v[2])) == b.oplus(b.dot(v[0], v[1]), b.dot(v[0], v[2])) &&
                    b.dot(b.oplus(v[0], v[1]), v[2]) == b.oplus(b.dot(v[0], v[2]), b.dot(v[1], v[2]));
         }},
        {"C8", 1, [b, bo](std::span<const Elem> v) {
             return b.dot(v[0], bo) == bo && b.dot(bo, v[0]) == bo;
         }},
        {"C9", 1, [b, hf](std::span<const Elem> v) {
             return b.oplus(b.inv(v[0]), v[0]) == hf;
         }},
    };
}

inline std::vector<Law> ring_laws(const Structure& s) {
    RingView r(s);
    Elem z = r.zero(), o = r.one();
    return {
        {"R1", 3, [r](std::span<const Elem> v) {
             return r.add(r.add(v[0], v[1]), v[2]) == r.add(v[0], r.add(v[1], v[2]));
         }},
        {"R2", 2, [r](std::span<const Elem> v) { return r.add(v[0], v[1]) == r.add(v[1], v[0]); }},
        {"R3", 1, [r, z](std::span<const Elem> v) { return r.add(v[0], z) == v[0]; }},
        {"R4", 1, [r, z](std::span<const Elem> v) { return r.add(r.neg(v[0]), v[0]) == z; }},
        {"R5", 3, [r](std::span<const Elem> v) {
             return r.mul(r.mul(v[0], v[1]), v[2]) == r.mul(v[0], r.mul(v[1], v[2]));
         }},
        {"R6", 1, [r, o](std::span<const Elem> v) {
             return r.mul(v[0], o) == v[0] && r.mul(o, v[0]) == v[0];
         }},
        {"R7", 3, [r](std::span<const Elem> v) {
             return r.mul(v[0], r.add(v[1], v[2])) == r.add(r.mul(v[0], v[1]), r.mul(v[0], v[2])) &&
                    r.mul(r.add(v[0], v[1]), v[2]) == r.add(r.mul(v[0], v[2]), r.mul(v[1], v[2]));
         }},
        // consequences, reported alongside the axioms
        {"absorb", 1, [r, z](std::span<const Elem> v) {
             return r.mul(v[0], z) == z && r.mul(z, v[0]) == z;
         }},
        {"add-cancel", 3, [r](std::span<const Elem> v) {
             if (v[0] == v[1]) return true;
             return r.add(v[0], v[2]) != r.add(v[1], v[2]);
         }},
    };
}

inline std::vector<Law> derived_mobi_laws(const Structure& s) {
    MobiView m(s);
    Elem z = m.zero(), h = m.half(), o = m.one();
    return {
        {"P11", 4, [m, z](std::span<const Elem> v) {
             return m.p(v[0], m.p(z, v[2], v[3]), v[1]) ==
                    m.p(v[0], v[2], m.p(v[0], v[3], v[1]));
         }},
        {"P12", 4, [m, o](std::span<const Elem> v) {
             return m.p(v[0], m.p(o, v[2], v[3]), v[1]) ==
                    m.p(v[1], v[2], m.p(v[0], v[3], v[1]));
         }},
        {"P13", 4, [m, z](std::span<const Elem> v) {
             return m.p(v[0], m.p(v[2], v[3], z), v[1]) ==
                    m.p(m.p(v[0], v[2], v[1]), v[3], v[0]);
         }},
        {"P14", 4, [m, o](std::span<const Elem> v) {
             return m.p(v[0], m.p(v[2], v[3], o), v[1]) ==
                    m.p(m.p(v[0], v[2], v[1]), v[3], v[1]);
         }},
        {"P21", 3, [m, z, o](std::span<const Elem> v) {
             return m.p(v[0], m.p(o, v[2], z), v[1]) == m.p(v[1], v[2], v[0]);
         }},
        {"P22", 2, [m, h](std::span<const Elem> v) {
             return m.p(v[0], h, v[1]) == m.p(v[1], h, v[0]);
         }},
        {"P23", 1, [m, z, o](std::span<const Elem> v) {
             return m.p(o, m.p(o, v[0], z), z) == v[0];
         }},
        {"P41", 5, [m, h](std::span<const Elem> v) {
             // v = a1, b1, a2, b2, c
             return m.p(m.p(v[0], v[4], v[1]), h, m.p(v[2], v[4], v[3])) ==
                    m.p(m.p(v[2], v[4], v[1]), h, m.p(v[0], v[4], v[3]));
         }},
        {"P42", 3, [m, h](std::span<const Elem> v) {
             return m.p(m.p(v[0], v[2], v[1]), h, m.p(v[1], v[2], v[0])) ==
                    m.p(v[0], h, v[1]);
         }},
        {"P43", 4, [m, z, h, o](std::span<const Elem> v) {
             return m.p(m.p(v[0], m.p(o, v[2], z), v[1]), h, m.p(v[0], v[2], v[3])) ==
                    m.p(v[0], h, m.p(v[1], v[2], v[3]));
         }},
        {"swap-inv", 3, [m](std::span<const Elem> v) {
             return m.p(v[1], v[2], v[0]) == m.p(v[0], m.inv(v[2]), v[1]);
         }},
        {"half-dot-p", 3, [m](std::span<const Elem> v) {
             return m.dot(m.half(), m.p(v[0], v[1], v[2])) ==
                    m.oplus(m.dot(m.inv(v[1]), v[0]), m.dot(v[1], v[2]));
         }},
    };
}

inline std::vector<Law> derived_imm_laws(const Structure& s) {
    ImmView b(s);
    Elem o = b.one(), bo = b.bar_one(), hf = b.oplus(bo, o);
    return {
        {"IMMP1", 3, [b](std::span<const Elem> v) {
             return b.oplus(v[0], b.oplus(v[1], v[2])) ==
                    b.oplus(b.oplus(v[0], v[1]), b.oplus(v[0], v[2]));
         }},
        {"IMMP2", 0, [b, hf](std::span<const Elem>) { return b.inv(hf) == hf; }},
        {"IMMP3", 1, [b, hf](std::span<const Elem> v) {
             if (b.inv(v[0]) != v[0]) return true;
             return v[0] == hf;
         }},
        {"IMMP4", 1, [b, bo, hf](std::span<const Elem> v) {
             return b.dot(hf, v[0]) == b.oplus(bo, v[0]);
         }},
        {"IMMP5", 1, [b, hf](std::span<const Elem> v) {
             return b.dot(hf, v[0]) == b.dot(v[0], hf);
         }},
    };
}

inline std::vector<Law> derived_imm_star_laws(const Structure& s) {
    ImmView b(s);
    Elem o = b.one(), bo = b.bar_one(), hf = b.oplus(bo, o);
    return {
        {"IMMP*1", 1, [b](std::span<const Elem> v) { return b.inv(b.inv(v[0])) == v[0]; }},
        {"IMMP*2", 2, [b](std::span<const Elem> v) {
             return b.inv(b.oplus(v[0], v[1])) == b.oplus(b.inv(v[0]), b.inv(v[1]));
         }},
        {"IMMP*3", 2, [b, hf](std::span<const Elem> v) {
             if (b.oplus(v[1], v[0]) != hf) return true;
             return v[1] == b.inv(v[0]);
         }},
        {"IMMP*4", 4, [b, bo](std::span<const Elem> v) {
             // v = a, b, c, x
             Elem rhs = b.oplus(b.dot(b.inv(v[1]), v[0]), b.dot(v[1], v[2]));
             if (b.oplus(bo, v[3]) != rhs) return true;
             Elem rhs_bar = b.oplus(b.dot(b.inv(v[1]), b.inv(v[0])),
                                    b.dot(v[1], b.inv(v[2])));
             return b.oplus(bo, b.inv(v[3])) == rhs_bar;
         }},
    };
}

inline std::vector<Law> full_medial_laws(const Structure& s) {
    MobiView m(s);
    return {
        {"full-medial", 6, [m](std::span<const Elem> v) {
             // v = a1, b1, a2, b2, c, d
             return m.p(m.p(v[0], v[4], v[1]), v[5], m.p(v[2], v[4], v[3])) ==
                    m.p(m.p(v[0], v[5], v[2]), v[4], m.p(v[1], v[5], v[3]));
         }},
    };
}

// ---- profile entry points ----

inline Report check_mobi(const Structure& s, bool with_cancellation = true,
                         const SampleSpec& sample = {}, std::string id = "") {
    return run_laws(s, with_cancellation ? "mobi-full" : "mobi-dagger", std::move(id),
                    mobi_laws(s, with_cancellation), sample);
}

inline Report check_imm(const Structure& s, const SampleSpec& sample = {},
                        std::string id = "") {
    return run_laws(s, "imm", std::move(id), imm_laws(s), sample);
}

inline Report check_imm_star(const Structure& s, const SampleSpec& sample = {},
                             std::string id = "") {
    return run_laws(s, "imm-star", std::move(id), imm_star_laws(s), sample);
}

inline Report check_ring(const Structure& s, const SampleSpec& sample = {},
                         std::string id = "") {
    return run_laws(s, "ring", std::move(id), ring_laws(s), sample);
}

inline Report check_full_medial(const Structure& s, const SampleSpec& sample = {},
                                std::string id = "") {
    return run_laws(s, "full-medial", std::move(id), full_medial_laws(s), sample);
}

inline Report check_derived_properties(const Structure& s, const SampleSpec& sample = {},
                                       std::string id = "") {
    switch (s.kind) {
        case Kind::Mobi:
            return run_laws(s, "derived-mobi-props", std::move(id),
                            derived_mobi_laws(s), sample);
        case Kind::Imm:
            return run_laws(s, "derived-imm-props", std::move(id),
                            derived_imm_laws(s), sample);
        case Kind::ImmStar:
            return run_laws(s, "derived-immstar-props", std::move(id),
                            derived_imm_star_laws(s), sample);
        case Kind::Ring:
            return run_laws(s, "ring", std::move(id), ring_laws(s), sample);
    }
    throw eval_error("unreachable");
}

inline Report run_profile(const Structure& s, const std::string& profile,
                          const SampleSpec& sample = {}, std::string id = "") {
    if (profile == "mobi-full") return check_mobi(s, true, sample, std::move(id));
    if (profile == "mobi-dagger") return check_mobi(s, false, sample, std::move(id));
    if (profile == "imm") return check_imm(s, sample, std::move(id));
    if (profile == "imm-star") return check_imm_star(s, sample, std::move(id));
    if (profile == "ring") return check_ring(s, sample, std::move(id));
    if (profile == "full-medial") return check_full_medial(s, sample, std::move(id));
    if (profile == "derived-mobi-props")
        return run_laws(s, profile, std::move(id), derived_mobi_laws(s), sample);
    if (profile == "derived-imm-props")
        return run_laws(s, profile, std::move(id), derived_imm_laws(s), sample);
    if (profile == "derived-immstar-props")
        return run_laws(s, profile, std::move(id), derived_imm_star_laws(s), sample);
    throw parse_error("unknown profile '" + profile + "'");
}

inline std::string default_profile(Kind k) {
    switch (k) {
        case Kind::Mobi: return "mobi-full";
        case Kind::Imm: return "imm";
        case Kind::ImmStar: return "imm-star";
        case Kind::Ring: return "ring";
    }
    return "mobi-full";
}

} // namespace mobi
