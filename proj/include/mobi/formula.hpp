#pragma once

#include "structure.hpp"

namespace mobi {

namespace formulas {

using Params = std::map<std::string, Rat>;
using Args = std::span<const Elem>;

inline Rat param(const Params& ps, const std::string& key) {
    auto it = ps.find(key);
    if (it == ps.end()) throw eval_error("formula parameter '" + key + "' missing");
    return it->second;
}

inline Elem cst(const Structure& s, const char* role) { return s.constant(role); }

// ---- ternary p laws on rational carriers ----

inline Elem interval_p(const Structure&, const Params&, Args a, int) {
    const Rat &x = a[0].rat(), &y = a[1].rat(), &z = a[2].rat();
    return Elem::rat((Rat(1) - y) * x + y * z);
}

inline Elem interval_third_p(const Structure&, const Params&, Args v, int) {
    const Rat &a = v[0].rat(), &b = v[1].rat(), &c = v[2].rat();
    Rat num = a - a * b + a * c + Rat(2) * b * c + a * b * c;
    Rat den = Rat(1) + b + c + Rat(2) * a * b - b * c;
    return Elem::rat(num / den);
}

inline Elem alpha_family_p(const Structure&, const Params& ps, Args v, int) {
    Rat al = param(ps, "alpha");
    const Rat &a = v[0].rat(), &b = v[1].rat(), &c = v[2].rat();
    Rat a2 = al - Rat(2), a1 = al - Rat(1);
    Rat num = a - a * b + a2 * a * c + a1 * b * c + a2 * a2 * a * b * c;
    Rat den = Rat(1) + a2 * (b + c - b * c) + a1 * a2 * a * b;
    return Elem::rat(num / den);
}

inline Elem symmetric_p(const Structure&, const Params&, Args v, int) {
    const Rat &a = v[0].rat(), &b = v[1].rat(), &c = v[2].rat();
    return Elem::rat((a * (Rat(1) - b) + c * (Rat(1) + b)) / Rat(2));
}

// a b c / (a - c + b c) on [1,+inf], extended to the projective point by its
// limits: p(inf,b,c) = b c, p(a,inf,c) = a, p(a,b,inf) = a b/(b-1) (inf at b=1).
inline Elem reciprocal_p(const Structure&, const Params&, Args v, int) {
    const Rat &a = v[0].rat(), &b = v[1].rat(), &c = v[2].rat();
    if (a.is_inf()) {
        if (b.is_inf() || c.is_inf()) return Elem::rat(Rat::inf());
        return Elem::rat(b * c);
    }
    if (b.is_inf()) return Elem::rat(a);
    if (c.is_inf()) {
        if (b == Rat(1)) return Elem::rat(Rat::inf());
        return Elem::rat(a * b / (b - Rat(1)));
    }
    return Elem::rat(a * b * c / (a - c + b * c));
}

inline Elem planar_k_p(const Structure&, const Params& ps, Args v, int) {
    Rat k = param(ps, "k");
    const Pair &a = v[0].pair(), &b = v[1].pair(), &c = v[2].pair();
    Rat u = (Rat(1) - b[0]) * a[0] + b[0] * c[0] + k * b[1] * (c[1] - a[1]);
    Rat w = (Rat(1) - b[0]) * a[1] + b[0] * c[1] + b[1] * (c[0] - a[0]);
    return Elem::pair(u, w);
}

// ---- rational field as a ring carrier ----

inline Elem q_add(const Structure&, const Params&, Args v, int) {
    return Elem::rat(v[0].rat() + v[1].rat());
}
inline Elem q_mul(const Structure&, const Params&, Args v, int) {
    return Elem::rat(v[0].rat() * v[1].rat());
}
inline Elem q_neg(const Structure&, const Params&, Args v, int) {
    return Elem::rat(-v[0].rat());
}

// ---- composites that read sibling operations ----
// A structure carrying one of these keeps the operations it references (and
// any constants such as "two") in its own maps, so the document stays
// self-contained.

inline Elem derived_inv(const Structure& s, const Params&, Args v, int d) {
    return eval_op(s, "p_base", {cst(s, "one"), v[0], cst(s, "zero")}, d + 1);
}
inline Elem derived_dot(const Structure& s, const Params&, Args v, int d) {
    return eval_op(s, "p_base", {cst(s, "zero"), v[0], v[1]}, d + 1);
}
inline Elem derived_oplus(const Structure& s, const Params&, Args v, int d) {
    return eval_op(s, "p_base", {v[0], cst(s, "half"), v[1]}, d + 1);
}
inline Elem imm_circ(const Structure& s, const Params&, Args v, int d) {
    Elem bb = eval_op(s, "inv", {v[1]}, d + 1);
    Elem ba = eval_op(s, "inv", {v[0]}, d + 1);
    return eval_op(s, "inv", {eval_op(s, "dot", {bb, ba}, d + 1)}, d + 1);
}
inline Elem ring_p(const Structure& s, const Params&, Args v, int d) {
    Elem bc = eval_op(s, "mul", {v[1], v[2]}, d + 1);
    Elem ba = eval_op(s, "mul", {v[1], v[0]}, d + 1);
    Elem t = eval_op(s, "add", {bc, eval_op(s, "neg", {ba}, d + 1)}, d + 1);
    return eval_op(s, "add", {v[0], t}, d + 1);
}
inline Elem imm_p(const Structure& s, const Params&, Args v, int d) {
    Elem lb = eval_op(s, "dot", {eval_op(s, "inv", {v[1]}, d + 1), v[0]}, d + 1);
    Elem rb = eval_op(s, "dot", {v[1], v[2]}, d + 1);
    Elem sum = eval_op(s, "oplus", {lb, rb}, d + 1);
    return eval_op(s, "dot", {cst(s, "two"), sum}, d + 1);
}
inline Elem ring_derived_inv(const Structure& s, const Params&, Args v, int d) {
    return eval_op(s, "add", {cst(s, "one"), eval_op(s, "neg", {v[0]}, d + 1)}, d + 1);
}
inline Elem ring_derived_oplus(const Structure& s, const Params&, Args v, int d) {
    return eval_op(s, "mul", {cst(s, "half"), eval_op(s, "add", {v[0], v[1]}, d + 1)}, d + 1);
}
inline Elem mobi_add(const Structure& s, const Params&, Args v, int d) {
    Elem mid = eval_op(s, "p_base", {v[0], cst(s, "half"), v[1]}, d + 1);
    return eval_op(s, "p_base", {cst(s, "zero"), cst(s, "two"), mid}, d + 1);
}
inline Elem mobi_neg(const Structure& s, const Params&, Args v, int d) {
    return eval_op(s, "p_base", {cst(s, "zero"), cst(s, "two-bar"), v[0]}, d + 1);
}
inline Elem imm_derived_add(const Structure& s, const Params&, Args v, int d) {
    return eval_op(s, "dot",
                   {cst(s, "two"), eval_op(s, "oplus", {v[0], v[1]}, d + 1)}, d + 1);
}
inline Elem imm_derived_neg(const Structure& s, const Params&, Args v, int d) {
    return eval_op(s, "dot", {cst(s, "two-bar"), v[0]}, d + 1);
}

struct Info {
    int arity;
    Elem (*fn)(const Structure&, const Params&, Args, int);
};

inline const std::map<std::string, Info>& registry() {
    static const std::map<std::string, Info> reg = {
        {"interval", {3, interval_p}},
        {"interval-third", {3, interval_third_p}},
        {"alpha-family", {3, alpha_family_p}},
        {"symmetric", {3, symmetric_p}},
        {"reciprocal", {3, reciprocal_p}},
        {"planar-k", {3, planar_k_p}},
        {"q-add", {2, q_add}},
        {"q-mul", {2, q_mul}},
        {"q-neg", {1, q_neg}},
        {"derived-inv", {1, derived_inv}},
        {"derived-dot", {2, derived_dot}},
        {"derived-oplus", {2, derived_oplus}},
        {"imm-circ", {2, imm_circ}},
        {"ring-p", {3, ring_p}},
        {"imm-p", {3, imm_p}},
        {"ring-derived-inv", {1, ring_derived_inv}},
        {"ring-derived-oplus", {2, ring_derived_oplus}},
        {"mobi-add", {2, mobi_add}},
        {"mobi-neg", {1, mobi_neg}},
        {"imm-derived-add", {2, imm_derived_add}},
        {"imm-derived-neg", {1, imm_derived_neg}},
    };
    return reg;
}

inline bool known(const std::string& name) { return registry().count(name) > 0; }

} // namespace formulas

inline Elem eval_formula(const Structure& s, const OpImpl::Formula& f,
                         std::span<const Elem> args, int depth) {
    if (depth > 16)
        throw eval_error("formula recursion too deep");
    auto it = formulas::registry().find(f.name);
    if (it == formulas::registry().end())
        throw parse_error("unknown formula '" + f.name + "'");
    if (static_cast<int>(args.size()) != it->second.arity)
        throw eval_error("formula '" + f.name + "' arity mismatch");
    return it->second.fn(s, f.params, args, depth);
}

} // namespace mobi
