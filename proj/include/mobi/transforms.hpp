#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "psearch.hpp"
#include "report.hpp"
#include "structure.hpp"

namespace mobi {

namespace detail {

template <class F>
OpImpl tabulate(const Carrier& car, int arity, F&& f) {
    std::size_t n = car.size(), total = 1;
    for (int i = 0; i < arity; ++i) total *= n;
    std::vector<std::uint32_t> entries;
    entries.reserve(total);
    std::vector<Elem> args(static_cast<std::size_t>(arity));
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (int i = arity - 1; i >= 0; --i) {
            args[static_cast<std::size_t>(i)] = Elem::pos(static_cast<std::uint32_t>(rest % n));
            rest /= n;
        }
        entries.push_back(f(args).pos());
    }
    return OpImpl::make_table(arity, std::move(entries));
}

inline std::string elem_label(const Structure& s, const Elem& e) {
    if (s.carrier.is_finite() && e.is_pos()) return s.carrier.labels()[e.pos()];
    if (e.is_rat()) return e.rat().str();
    if (e.is_pair()) return "(" + e.pair()[0].str() + "," + e.pair()[1].str() + ")";
    return "?";
}

// Two-sided inverse of x in the monoid (op, one).  Finite carriers are
// scanned in carrier order; rational carriers certify the hint, falling back
// to the scalar reciprocal as candidate.
inline std::optional<Elem> two_sided_inverse(const Structure& s, const std::string& op,
                                             const Elem& x, const Elem& one,
                                             const std::optional<Elem>& hint) {
    auto mul = [&](const Elem& a, const Elem& b) { return eval_op(s, op, {a, b}); };
    if (s.carrier.is_finite()) {
        std::optional<Elem> found;
        for (std::size_t i = 0; i < s.carrier.size(); ++i) {
            Elem y = Elem::pos(static_cast<std::uint32_t>(i));
            if (mul(x, y) == one && mul(y, x) == one) {
                if (found)
                    throw precondition_error("two distinct inverses under '" + op + "'");
                found = y;
            }
        }
        return found;
    }
    std::optional<Elem> cand = hint;
    if (!cand && x.is_rat() && !x.rat().is_inf() && x.rat() != Rat(0))
        cand = Elem::rat(Rat(1) / x.rat());
    if (!cand || !s.carrier.contains(*cand)) return std::nullopt;
    if (mul(x, *cand) != one || mul(*cand, x) != one) return std::nullopt;
    return cand;
}

inline std::uint64_t table_cells(const Structure& s, const char* name) {
    const OpImpl& op = s.op(name);
    return op.is_table() ? op.table().entries.size() : 0;
}

} // namespace detail

struct InverseWitness {
    Elem inverse;
    std::uint64_t checked = 0;
};

// Inverse of x in the dot monoid of an involutive medial monoid.
inline InverseWitness monoid_inverse(const Structure& imm, const Elem& x,
                                     const std::optional<Elem>& hint = {}) {
    ImmView v(imm);
    auto r = detail::two_sided_inverse(imm, "dot", x, v.one(), hint);
    if (!r)
        throw no_inverse_error("no dot inverse for " + detail::elem_label(imm, x));
    std::uint64_t checked = imm.carrier.is_finite() ? imm.carrier.size() : 2;
    return {*r, checked};
}

// The three operations every mobi induces: complement, product, and midpoint.
inline Structure derive_imm_from_mobi(const Structure& m) {
    MobiView v(m);
    Structure out;
    out.kind = Kind::Imm;
    out.carrier = m.carrier;
    if (m.carrier.is_finite()) {
        out.ops["inv"] = detail::tabulate(m.carrier, 1, [&](const std::vector<Elem>& a) {
            return v.inv(a[0]);
        });
        out.ops["oplus"] = detail::tabulate(m.carrier, 2, [&](const std::vector<Elem>& a) {
            return v.oplus(a[0], a[1]);
        });
        out.ops["dot"] = detail::tabulate(m.carrier, 2, [&](const std::vector<Elem>& a) {
            return v.dot(a[0], a[1]);
        });
        out.constants["one"] = v.one();
    } else {
        out.ops["p_base"] = m.op("p");
        out.ops["inv"] = OpImpl::make_formula(1, "derived-inv");
        out.ops["oplus"] = OpImpl::make_formula(2, "derived-oplus");
        out.ops["dot"] = OpImpl::make_formula(2, "derived-dot");
        out.constants = m.constants;
    }
    validate_shape(out);
    return out;
}

// Adds the circle operation a∘b = (inv b · inv a)¯.
inline Structure add_circ(Structure imm) {
    ImmView v(imm);
    if (imm.carrier.is_finite()) {
        imm.ops["circ"] = detail::tabulate(imm.carrier, 2, [&](const std::vector<Elem>& a) {
            return v.inv(v.dot(v.inv(a[1]), v.inv(a[0])));
        });
    } else {
        imm.ops["circ"] = OpImpl::make_formula(2, "imm-circ");
    }
    return imm;
}

// Ring from an involutive medial monoid whose element inv(one)+one, written
// here as oplus(bar_one, one), is dot-invertible.  Addition is
// two·(a oplus b), negation is inv(two)·a, multiplication is dot itself.
inline Structure imm_to_ring(const Structure& imm, const std::optional<Elem>& two_hint = {}) {
    ImmView v(imm);
    Elem bar_one = v.bar_one();
    Elem hf = v.half();
    Elem two = monoid_inverse(imm, hf, two_hint).inverse;
    Elem two_bar = v.inv(two);

    Structure out;
    out.kind = Kind::Ring;
    out.carrier = imm.carrier;
    if (imm.carrier.is_finite()) {
        out.ops["add"] = detail::tabulate(imm.carrier, 2, [&](const std::vector<Elem>& a) {
            return v.dot(two, v.oplus(a[0], a[1]));
        });
        out.ops["neg"] = detail::tabulate(imm.carrier, 1, [&](const std::vector<Elem>& a) {
            return v.dot(two_bar, a[0]);
        });
        out.ops["mul"] = detail::tabulate(imm.carrier, 2, [&](const std::vector<Elem>& a) {
            return v.dot(a[0], a[1]);
        });
    } else {
        out.ops = imm.ops;
        out.ops["mul"] = imm.op("dot");
        out.ops["add"] = OpImpl::make_formula(2, "imm-derived-add");
        out.ops["neg"] = OpImpl::make_formula(1, "imm-derived-neg");
        out.constants = imm.constants;
        out.constants["two"] = two;
        out.constants["two-bar"] = two_bar;
    }
    out.constants["zero"] = bar_one;
    out.constants["one"] = v.one();
    validate_shape(out);
    return out;
}

// Involutive medial monoid from a unitary ring where one+one is invertible:
// inv a = one - a, a oplus b = half·(a+b), dot = mul.
inline Structure ring_to_imm(const Structure& ring, const std::optional<Elem>& half_hint = {}) {
    RingView v(ring);
    Elem t = v.add(v.one(), v.one());
    auto hf = detail::two_sided_inverse(ring, "mul", t, v.one(), half_hint);
    if (!hf)
        throw no_inverse_error("one+one has no mul inverse");

    Structure out;
    out.kind = Kind::Imm;
    out.carrier = ring.carrier;
    if (ring.carrier.is_finite()) {
        out.ops["inv"] = detail::tabulate(ring.carrier, 1, [&](const std::vector<Elem>& a) {
            return v.add(v.one(), v.neg(a[0]));
        });
        out.ops["oplus"] = detail::tabulate(ring.carrier, 2, [&](const std::vector<Elem>& a) {
            return v.mul(*hf, v.add(a[0], a[1]));
        });
        out.ops["dot"] = detail::tabulate(ring.carrier, 2, [&](const std::vector<Elem>& a) {
            return v.mul(a[0], a[1]);
        });
    } else {
        out.ops = ring.ops;
        out.ops["dot"] = ring.op("mul");
        out.ops["inv"] = OpImpl::make_formula(1, "ring-derived-inv");
        out.ops["oplus"] = OpImpl::make_formula(2, "ring-derived-oplus");
        out.constants = ring.constants;
    }
    out.constants["half"] = *hf;
    out.constants["one"] = v.one();
    validate_shape(out);
    return out;
}

// The defining relation ties a candidate p to the monoid operations:
//   Oplus form:    inv(one) oplus x = (inv(b)·a) oplus (b·c)
//   HalfDot form:  (inv(one) oplus one)·x = (inv(b)·a) oplus (b·c)
// Both agree on a full involutive medial monoid; they can differ once the
// monoid axioms are weakened, so the solver takes the form explicitly.
enum class PForm { Oplus, HalfDot };

inline std::vector<std::uint32_t> solve_p_equation(const Structure& imm, std::uint32_t a,
                                                   std::uint32_t b, std::uint32_t c,
                                                   PForm form) {
    if (!imm.carrier.is_finite())
        throw precondition_error("equation solving needs a finite carrier");
    ImmView v(imm);
    Elem bar_one = v.bar_one();
    Elem hf = v.half();
    Elem ea = Elem::pos(a), eb = Elem::pos(b), ec = Elem::pos(c);
    Elem rhs = v.oplus(v.dot(v.inv(eb), ea), v.dot(eb, ec));
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < imm.carrier.size(); ++i) {
        Elem x = Elem::pos(static_cast<std::uint32_t>(i));
        Elem lhs = form == PForm::Oplus ? v.oplus(bar_one, x) : v.dot(hf, x);
        if (lhs == rhs) out.push_back(static_cast<std::uint32_t>(i));
    }
    return out;
}

struct PEquationScan {
    std::vector<std::vector<std::uint32_t>> solutions; // n^3, row-major (a,b,c)
    std::vector<std::array<std::uint32_t, 3>> unsolvable;
    std::vector<std::array<std::uint32_t, 3>> ambiguous;
};

inline PEquationScan scan_p_equation(const Structure& imm, PForm form) {
    std::size_t n = imm.carrier.size();
    PEquationScan scan;
    scan.solutions.reserve(n * n * n);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            for (std::uint32_t c = 0; c < n; ++c) {
                auto sols = solve_p_equation(imm, a, b, c, form);
                if (sols.empty()) scan.unsolvable.push_back({a, b, c});
                else if (sols.size() > 1) scan.ambiguous.push_back({a, b, c});
                scan.solutions.push_back(std::move(sols));
            }
    return scan;
}

// Mobi whose p solves the defining relation at every triple.  Requires the
// solution to exist and be unique throughout; the first offending triple is
// reported otherwise.
inline Structure imm_star_to_mobi(const Structure& imm, PForm form = PForm::Oplus) {
    if (!imm.carrier.is_finite())
        throw precondition_error("equation method needs a finite carrier; use the inverse method");
    ImmView v(imm);
    auto scan = scan_p_equation(imm, form);
    auto name = [&](std::uint32_t i) { return imm.carrier.labels()[i]; };
    if (!scan.unsolvable.empty()) {
        auto [a, b, c] = scan.unsolvable.front();
        throw unsolvable_error("defining relation unsolvable at (" + name(a) + ", " +
                               name(b) + ", " + name(c) + ")");
    }
    if (!scan.ambiguous.empty()) {
        auto [a, b, c] = scan.ambiguous.front();
        throw precondition_error("defining relation ambiguous at (" + name(a) + ", " +
                                 name(b) + ", " + name(c) + ")");
    }
    std::vector<std::uint32_t> entries;
    entries.reserve(scan.solutions.size());
    for (const auto& s : scan.solutions) entries.push_back(s.front());

    Structure out;
    out.kind = Kind::Mobi;
    out.carrier = imm.carrier;
    out.ops["p"] = OpImpl::make_table(3, std::move(entries));
    out.constants["zero"] = v.bar_one();
    out.constants["half"] = v.half();
    out.constants["one"] = v.one();
    validate_shape(out);
    return out;
}

// Search for a cancellation-free mobi table compatible with the monoid: each
// cell ranges over the HalfDot solution set of its triple, the table filler
// enforces everything except cancellation.
struct DaggerResult {
    enum class Status { Found, None, CapExceeded };
    Status status = Status::None;
    std::optional<Structure> model;
    std::uint64_t nodes = 0;
};

inline DaggerResult mobi_dagger_search(const Structure& imm,
                                       std::uint64_t node_cap = 10'000'000) {
    if (!imm.carrier.is_finite())
        throw precondition_error("table search needs a finite carrier");
    std::size_t n = imm.carrier.size();
    if (n > 16) throw precondition_error("table search capped at 16 elements");
    ImmView v(imm);
    auto scan = scan_p_equation(imm, PForm::HalfDot);

    PTableSearch::Config cfg;
    cfg.n = n;
    cfg.zero = v.bar_one().pos();
    cfg.half = v.half().pos();
    cfg.one = v.one().pos();
    cfg.cancellation = false;
    cfg.node_cap = node_cap;
    cfg.choice_masks.reserve(n * n * n);
    for (const auto& sols : scan.solutions) {
        std::uint32_t m = 0;
        for (std::uint32_t x : sols) m |= 1u << x;
        cfg.choice_masks.push_back(m);
    }

    DaggerResult res;
    std::vector<std::int8_t> found;
    PTableSearch search(std::move(cfg));
    auto outcome = search.run([&](const std::vector<std::int8_t>& t) {
        found = t;
        return false;
    });
    res.nodes = search.nodes();
    if (outcome == PTableSearch::Outcome::CapExceeded) {
        res.status = DaggerResult::Status::CapExceeded;
        return res;
    }
    if (found.empty()) {
        res.status = DaggerResult::Status::None;
        return res;
    }
    Structure out;
    out.kind = Kind::Mobi;
    out.carrier = imm.carrier;
    std::vector<std::uint32_t> entries(found.begin(), found.end());
    out.ops["p"] = OpImpl::make_table(3, std::move(entries));
    out.constants["zero"] = v.bar_one();
    out.constants["half"] = v.half();
    out.constants["one"] = v.one();
    validate_shape(out);
    res.status = DaggerResult::Status::Found;
    res.model = std::move(out);
    return res;
}

// Mobi from a monoid with an invertible half: p(a,b,c) = two·((inv(b)·a) oplus (b·c)).
inline Structure imm_to_mobi_via_half_inverse(const Structure& imm,
                                              const std::optional<Elem>& two_hint = {}) {
    ImmView v(imm);
    Elem two = monoid_inverse(imm, v.half(), two_hint).inverse;

    Structure out;
    out.kind = Kind::Mobi;
    out.carrier = imm.carrier;
    if (imm.carrier.is_finite()) {
        out.ops["p"] = detail::tabulate(imm.carrier, 3, [&](const std::vector<Elem>& a) {
            return v.dot(two, v.oplus(v.dot(v.inv(a[1]), a[0]), v.dot(a[1], a[2])));
        });
    } else {
        out.ops = imm.ops;
        out.ops["p"] = OpImpl::make_formula(3, "imm-p");
        out.constants = imm.constants;
        out.constants["two"] = two;
    }
    out.constants["zero"] = v.bar_one();
    out.constants["half"] = v.half();
    out.constants["one"] = v.one();
    validate_shape(out);
    return out;
}

// On a finite mobi, x -> p(zero, half, x) is a bijection; its preimage of one
// is the half inverse.  Independent of the scan in monoid_inverse.
inline std::optional<Elem> half_inverse_by_bijection(const Structure& m) {
    if (!m.carrier.is_finite()) return std::nullopt;
    MobiView v(m);
    std::size_t n = m.carrier.size();
    std::vector<std::uint8_t> seen(n, 0);
    std::optional<Elem> pre;
    for (std::size_t i = 0; i < n; ++i) {
        Elem x = Elem::pos(static_cast<std::uint32_t>(i));
        Elem h = v.p(v.zero(), v.half(), x);
        if (seen[h.pos()]) return std::nullopt;
        seen[h.pos()] = 1;
        if (h == v.one()) pre = x;
    }
    return pre;
}

// Ring from a mobi with an element two satisfying p(0,half,two)=1=p(0,two,half):
// a+b = two·(a oplus b), -a = inv(two)·a, a·b follows the derived product.
inline Structure mobi_to_ring(const Structure& m, const std::optional<Elem>& two_hint = {}) {
    MobiView v(m);
    std::optional<Elem> two;
    if (m.carrier.is_finite()) {
        for (std::size_t i = 0; i < m.carrier.size(); ++i) {
            Elem x = Elem::pos(static_cast<std::uint32_t>(i));
            if (v.p(v.zero(), v.half(), x) == v.one() && v.p(v.zero(), x, v.half()) == v.one()) {
                if (two) throw precondition_error("two distinct half inverses");
                two = x;
            }
        }
    } else {
        std::optional<Elem> cand = two_hint;
        if (!cand && v.half().is_rat() && !v.half().rat().is_inf() && v.half().rat() != Rat(0))
            cand = Elem::rat(Rat(1) / v.half().rat());
        if (cand && m.carrier.contains(*cand) &&
            v.p(v.zero(), v.half(), *cand) == v.one() &&
            v.p(v.zero(), *cand, v.half()) == v.one())
            two = cand;
    }
    if (!two) throw no_inverse_error("half has no inverse in the derived product");
    Elem two_bar = v.inv(*two);

    Structure out;
    out.kind = Kind::Ring;
    out.carrier = m.carrier;
    if (m.carrier.is_finite()) {
        out.ops["add"] = detail::tabulate(m.carrier, 2, [&](const std::vector<Elem>& a) {
            return v.dot(*two, v.oplus(a[0], a[1]));
        });
        out.ops["neg"] = detail::tabulate(m.carrier, 1, [&](const std::vector<Elem>& a) {
            return v.dot(two_bar, a[0]);
        });
        out.ops["mul"] = detail::tabulate(m.carrier, 2, [&](const std::vector<Elem>& a) {
            return v.dot(a[0], a[1]);
        });
    } else {
        out.ops["p_base"] = m.op("p");
        out.ops["add"] = OpImpl::make_formula(2, "mobi-add");
        out.ops["neg"] = OpImpl::make_formula(1, "mobi-neg");
        out.ops["mul"] = OpImpl::make_formula(2, "derived-dot");
        out.constants["half"] = v.half();
        out.constants["two"] = *two;
        out.constants["two-bar"] = two_bar;
    }
    out.constants["zero"] = v.zero();
    out.constants["one"] = v.one();
    validate_shape(out);
    return out;
}

// Mobi from a unitary ring with an invertible one+one: p(a,b,c) = a + bc - ba.
inline Structure ring_to_mobi(const Structure& ring, const std::optional<Elem>& half_hint = {}) {
    RingView v(ring);
    Elem t = v.add(v.one(), v.one());
    std::optional<Elem> hint = half_hint;
    if (!hint && !ring.carrier.is_finite()) hint = Elem::rat(Rat(1, 2));
    auto hf = detail::two_sided_inverse(ring, "mul", t, v.one(), hint);
    if (!hf) throw no_inverse_error("one+one has no mul inverse");

    Structure out;
    out.kind = Kind::Mobi;
    out.carrier = ring.carrier;
    if (ring.carrier.is_finite()) {
        out.ops["p"] = detail::tabulate(ring.carrier, 3, [&](const std::vector<Elem>& a) {
            return v.add(a[0], v.add(v.mul(a[1], a[2]), v.neg(v.mul(a[1], a[0]))));
        });
    } else {
        out.ops = ring.ops;
        out.ops["p"] = OpImpl::make_formula(3, "ring-p");
        out.constants = ring.constants;
    }
    out.constants["zero"] = v.zero();
    out.constants["half"] = *hf;
    out.constants["one"] = v.one();
    validate_shape(out);
    return out;
}

namespace detail {

// First differing cell of two same-shape tables, as a witness object.
inline std::optional<nlohmann::json> table_diff(const Structure& s1, const Structure& s2,
                                                const char* op) {
    const auto& t1 = s1.op(op).table().entries;
    const auto& t2 = s2.op(op).table().entries;
    if (t1.size() != t2.size())
        return nlohmann::json{{"op", op}, {"note", "size mismatch"}};
    for (std::size_t i = 0; i < t1.size(); ++i)
        if (t1[i] != t2[i])
            return nlohmann::json{{"op", op},
                                  {"index", i},
                                  {"left", s1.carrier.labels()[t1[i]]},
                                  {"right", s2.carrier.labels()[t2[i]]}};
    return std::nullopt;
}

inline void compare_leg(Report& rep, const std::string& leg, const Structure& s1,
                        const Structure& s2, const std::vector<const char*>& ops,
                        const std::vector<const char*>& consts) {
    LawResult r;
    r.axiom = leg;
    r.status = Status::Pass;
    for (const char* op : ops) {
        r.checked += table_cells(s1, op);
        if (auto d = table_diff(s1, s2, op)) {
            r.status = Status::Fail;
            r.witness = *d;
            break;
        }
    }
    if (r.status == Status::Pass)
        for (const char* c : consts) {
            ++r.checked;
            if (s1.constant(c) != s2.constant(c)) {
                r.status = Status::Fail;
                r.witness = nlohmann::json{{"constant", c}};
                break;
            }
        }
    rep.results.push_back(std::move(r));
}

inline void skip_leg(Report& rep, const std::string& leg, const std::string& why) {
    LawResult r;
    r.axiom = leg;
    r.status = Status::Skipped;
    r.note = why;
    rep.results.push_back(std::move(r));
}

} // namespace detail

// Conversion consistency on a finite structure.  Each leg converts out and
// back (or out along two routes) and compares the resulting tables cell by
// cell; legs whose preconditions fail are reported as skipped.
inline Report roundtrip_check(const Structure& s, const std::string& id) {
    if (!s.carrier.is_finite())
        throw precondition_error("roundtrip checking needs a finite carrier");
    Report rep;
    rep.structure_id = id;
    rep.profile = "roundtrip";
    const std::vector<const char*> mobi_ops{"p"}, mobi_consts{"zero", "half", "one"};
    const std::vector<const char*> imm_ops{"inv", "oplus", "dot"}, imm_consts{"one"};
    const std::vector<const char*> ring_ops{"add", "mul", "neg"}, ring_consts{"zero", "one"};

    switch (s.kind) {
        case Kind::Mobi: {
            Structure i = derive_imm_from_mobi(s);
            Structure m_eq = imm_star_to_mobi(i);
            detail::compare_leg(rep, "mobi->monoid->mobi (equation)", s, m_eq, mobi_ops,
                                mobi_consts);
            try {
                Structure r = mobi_to_ring(s);
                Structure m_r = ring_to_mobi(r);
                detail::compare_leg(rep, "mobi->ring->mobi", s, m_r, mobi_ops, mobi_consts);
                Structure r2 = imm_to_ring(i);
                detail::compare_leg(rep, "mobi->ring vs mobi->monoid->ring", r, r2, ring_ops,
                                    ring_consts);
            } catch (const no_inverse_error& e) {
                detail::skip_leg(rep, "mobi->ring->mobi", e.what());
            }
            break;
        }
        case Kind::Imm:
        case Kind::ImmStar: {
            try {
                Structure m = imm_to_mobi_via_half_inverse(s);
                Structure i2 = derive_imm_from_mobi(m);
                detail::compare_leg(rep, "monoid->mobi->monoid (inverse)", s, i2, imm_ops,
                                    imm_consts);
                Structure m_eq = imm_star_to_mobi(s);
                detail::compare_leg(rep, "monoid->mobi: inverse vs equation", m, m_eq,
                                    mobi_ops, mobi_consts);
                Structure r = imm_to_ring(s);
                Structure i3 = ring_to_imm(r);
                detail::compare_leg(rep, "monoid->ring->monoid", s, i3, imm_ops, imm_consts);
            } catch (const no_inverse_error& e) {
                detail::skip_leg(rep, "monoid->mobi->monoid (inverse)", e.what());
            }
            break;
        }
        case Kind::Ring: {
            try {
                Structure m = ring_to_mobi(s);
                Structure r2 = mobi_to_ring(m);
                detail::compare_leg(rep, "ring->mobi->ring", s, r2, ring_ops, ring_consts);
                Structure i = ring_to_imm(s);
                Structure m2 = imm_to_mobi_via_half_inverse(i);
                detail::compare_leg(rep, "ring->mobi: direct vs monoid", m, m2, mobi_ops,
                                    mobi_consts);
            } catch (const no_inverse_error& e) {
                detail::skip_leg(rep, "ring->mobi->ring", e.what());
            }
            break;
        }
    }
    return rep;
}

} // namespace mobi
