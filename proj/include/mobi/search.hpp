#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "psearch.hpp"
#include "report.hpp"
#include "sample.hpp"
#include "structure.hpp"
#include "transforms.hpp"

namespace mobi {

namespace detail {

struct KindShape {
    std::vector<const char*> ops;
    std::vector<const char*> consts;
};

inline KindShape kind_shape(Kind k) {
    switch (k) {
        case Kind::Mobi: return {{"p"}, {"zero", "half", "one"}};
        case Kind::Imm:
        case Kind::ImmStar: return {{"inv", "oplus", "dot"}, {"one"}};
        case Kind::Ring: return {{"add", "mul", "neg"}, {"zero", "one"}};
    }
    return {};
}

// Key of one structure under one relabeling: kind, order, constant slots in
// role order, then each required table with both indices and values mapped.
inline std::string permuted_key(const Structure& s, const KindShape& shape,
                                const std::vector<std::uint32_t>& perm) {
    std::size_t n = s.carrier.size();
    std::string key;
    key.push_back(static_cast<char>(s.kind));
    key.push_back(static_cast<char>(n));
    for (const char* role : shape.consts)
        key.push_back(static_cast<char>(perm[s.constant(role).pos()]));
    for (const char* opname : shape.ops) {
        const OpImpl& op = s.op(opname);
        const auto& t = op.table().entries;
        std::size_t total = t.size();
        std::vector<std::uint32_t> inv(n);
        for (std::uint32_t i = 0; i < n; ++i) inv[perm[i]] = i;
        std::array<std::size_t, 3> coord{};
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t rest = idx, old = 0;
            for (int i = op.arity - 1; i >= 0; --i) {
                coord[static_cast<std::size_t>(i)] = rest % n;
                rest /= n;
            }
            for (int i = 0; i < op.arity; ++i)
                old = old * n + inv[coord[static_cast<std::size_t>(i)]];
            key.push_back(static_cast<char>(perm[t[old]]));
        }
    }
    return key;
}

// All relabelings that put the distinct constants at the low slots in role
// order; the remaining positions range over every arrangement.
template <class F>
void for_each_constant_perm(const Structure& s, const KindShape& shape, F&& f) {
    std::size_t n = s.carrier.size();
    std::vector<std::uint32_t> distinct;
    for (const char* role : shape.consts) {
        std::uint32_t p = s.constant(role).pos();
        if (std::find(distinct.begin(), distinct.end(), p) == distinct.end())
            distinct.push_back(p);
    }
    std::vector<std::uint32_t> rest;
    for (std::uint32_t i = 0; i < n; ++i)
        if (std::find(distinct.begin(), distinct.end(), i) == distinct.end())
            rest.push_back(i);
    std::vector<std::uint32_t> slots(rest.size());
    std::iota(slots.begin(), slots.end(), static_cast<std::uint32_t>(distinct.size()));
    std::vector<std::uint32_t> perm(n);
    do {
        for (std::size_t i = 0; i < distinct.size(); ++i)
            perm[distinct[i]] = static_cast<std::uint32_t>(i);
        for (std::size_t i = 0; i < rest.size(); ++i) perm[rest[i]] = slots[i];
        f(perm);
    } while (std::next_permutation(slots.begin(), slots.end()));
}

inline std::string canonical_key(const Structure& s) {
    if (!s.carrier.is_finite())
        throw precondition_error("canonical forms need a finite carrier");
    if (s.carrier.size() > 9)
        throw precondition_error("canonical forms capped at 9 elements");
    KindShape shape = kind_shape(s.kind);
    std::optional<std::string> best;
    for_each_constant_perm(s, shape, [&](const std::vector<std::uint32_t>& perm) {
        std::string key = permuted_key(s, shape, perm);
        if (!best || key < *best) best = std::move(key);
    });
    return *best;
}

inline Structure apply_perm(const Structure& s, const KindShape& shape,
                            const std::vector<std::uint32_t>& perm) {
    std::size_t n = s.carrier.size();
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = "e" + std::to_string(i);
    Structure out;
    out.kind = s.kind;
    out.carrier = Carrier::finite(std::move(labels));
    for (const char* role : shape.consts)
        out.constants[role] = Elem::pos(perm[s.constant(role).pos()]);
    for (const char* opname : shape.ops) {
        const OpImpl& op = s.op(opname);
        const auto& t = op.table().entries;
        std::vector<std::uint32_t> inv(n);
        for (std::uint32_t i = 0; i < n; ++i) inv[perm[i]] = i;
        std::vector<std::uint32_t> entries(t.size());
        std::array<std::size_t, 3> coord{};
        for (std::size_t idx = 0; idx < t.size(); ++idx) {
            std::size_t rest = idx, old = 0;
            for (int i = op.arity - 1; i >= 0; --i) {
                coord[static_cast<std::size_t>(i)] = rest % n;
                rest /= n;
            }
            for (int i = 0; i < op.arity; ++i)
                old = old * n + inv[coord[static_cast<std::size_t>(i)]];
            entries[idx] = perm[t[old]];
        }
        out.ops[opname] = OpImpl::make_table(op.arity, std::move(entries));
    }
    validate_shape(out);
    return out;
}

} // namespace detail

// Least relabeling of a finite structure: constants first in role order,
// remaining elements arranged to minimize the flattened tables.
inline Structure canonical_form(const Structure& s) {
    if (!s.carrier.is_finite())
        throw precondition_error("canonical forms need a finite carrier");
    if (s.carrier.size() > 9)
        throw precondition_error("canonical forms capped at 9 elements");
    detail::KindShape shape = detail::kind_shape(s.kind);
    std::optional<std::string> best;
    std::vector<std::uint32_t> best_perm;
    detail::for_each_constant_perm(s, shape, [&](const std::vector<std::uint32_t>& perm) {
        std::string key = detail::permuted_key(s, shape, perm);
        if (!best || key < *best) {
            best = std::move(key);
            best_perm = perm;
        }
    });
    return detail::apply_perm(s, shape, best_perm);
}

// Whether the position permutation carries s1 onto s2: constants correspond
// role by role and the required operations commute with the relabeling.
inline bool perm_is_isomorphism(const Structure& s1, const Structure& s2,
                                const std::vector<std::uint32_t>& perm) {
    if (!s1.carrier.is_finite() || !s2.carrier.is_finite()) return false;
    if (s1.kind != s2.kind || s1.carrier.size() != s2.carrier.size()) return false;
    std::size_t n = s1.carrier.size();
    if (perm.size() != n) return false;
    std::vector<bool> hit(n, false);
    for (std::uint32_t v : perm) {
        if (v >= n || hit[v]) return false;
        hit[v] = true;
    }
    detail::KindShape shape = detail::kind_shape(s1.kind);
    for (const char* role : shape.consts)
        if (perm[s1.constant(role).pos()] != s2.constant(role).pos()) return false;
    for (const char* opname : shape.ops) {
        const auto& t1 = s1.op(opname).table().entries;
        const auto& t2 = s2.op(opname).table().entries;
        int arity = s1.op(opname).arity;
        std::array<std::size_t, 3> coord{};
        for (std::size_t idx = 0; idx < t1.size(); ++idx) {
            std::size_t rest = idx, mapped = 0;
            for (int i = arity - 1; i >= 0; --i) {
                coord[static_cast<std::size_t>(i)] = rest % n;
                rest /= n;
            }
            for (int i = 0; i < arity; ++i)
                mapped = mapped * n + perm[coord[static_cast<std::size_t>(i)]];
            if (perm[t1[idx]] != t2[mapped]) return false;
        }
    }
    return true;
}

// Position permutation realizing s2 = perm(s1), if one exists.
inline std::optional<std::vector<std::uint32_t>> find_isomorphism(const Structure& s1,
                                                                  const Structure& s2) {
    if (!s1.carrier.is_finite() || !s2.carrier.is_finite()) return std::nullopt;
    if (s1.kind != s2.kind || s1.carrier.size() != s2.carrier.size()) return std::nullopt;
    std::size_t n = s1.carrier.size();
    if (n > 9) throw precondition_error("isomorphism search capped at 9 elements");
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    do {
        if (perm_is_isomorphism(s1, s2, perm)) return perm;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

// Exhaustive search for mobi tables of a given order.  Constants sit at
// positions 0, 1, 2 (order three and up); with two or more elements the
// collapse identities make the three constants pairwise distinct, so order
// two admits no model at all.
struct EnumerationTask {
    std::size_t order = 3;
    bool up_to_iso = true;
    std::uint64_t node_cap = 100'000'000;
};

struct EnumerationResult {
    std::vector<Structure> models; // canonical representatives when up_to_iso
    std::uint64_t raw_count = 0;
    std::uint64_t nodes = 0;
};

inline EnumerationResult enumerate_mobi(const EnumerationTask& task,
                                        const std::function<void(const Structure&)>& on_model = {}) {
    std::size_t n = task.order;
    if (n == 0) throw precondition_error("order must be positive");
    if (n > 9) throw precondition_error("enumeration capped at 9 elements");
    EnumerationResult res;

    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = "e" + std::to_string(i);
    Carrier car = Carrier::finite(labels);

    auto emit = [&](Structure s) {
        ++res.raw_count;
        if (on_model) on_model(s);
        res.models.push_back(std::move(s));
    };

    if (n == 1) {
        Structure s;
        s.kind = Kind::Mobi;
        s.carrier = car;
        s.ops["p"] = OpImpl::make_table(3, {0});
        s.constants["zero"] = Elem::pos(0);
        s.constants["half"] = Elem::pos(0);
        s.constants["one"] = Elem::pos(0);
        emit(std::move(s));
        return res;
    }
    if (n == 2) return res;

    PTableSearch::Config cfg;
    cfg.n = n;
    cfg.zero = 0;
    cfg.half = 1;
    cfg.one = 2;
    cfg.cancellation = true;
    cfg.node_cap = task.node_cap;
    cfg.choice_masks.assign(n * n * n, (1u << n) - 1u);

    PTableSearch search(std::move(cfg));
    auto outcome = search.run([&](const std::vector<std::int8_t>& t) {
        Structure s;
        s.kind = Kind::Mobi;
        s.carrier = car;
        std::vector<std::uint32_t> entries(t.begin(), t.end());
        s.ops["p"] = OpImpl::make_table(3, std::move(entries));
        s.constants["zero"] = Elem::pos(0);
        s.constants["half"] = Elem::pos(1);
        s.constants["one"] = Elem::pos(2);
        emit(std::move(s));
        return true;
    });
    res.nodes = search.nodes();
    if (outcome == PTableSearch::Outcome::CapExceeded)
        throw cap_exceeded_error("enumeration node cap exceeded at order " +
                                 std::to_string(n));

    if (task.up_to_iso) {
        std::vector<Structure> reps;
        std::vector<std::string> keys;
        for (const Structure& s : res.models) {
            std::string k = detail::canonical_key(s);
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
                keys.push_back(k);
                reps.push_back(canonical_form(s));
            }
        }
        res.models = std::move(reps);
    }
    return res;
}

// Unitary rings of a given order in which one+one is invertible, up to
// isomorphism.  The additive group runs over invariant factor chains; since
// doubling must be a bijection every factor is odd.  Multiplication is fixed
// by its values on the generators, extended bilinearly; associativity on
// generator triples then gives full associativity.
inline std::vector<Structure> enumerate_rings_with_half(std::size_t n) {
    if (n == 0) throw precondition_error("order must be positive");
    if (n > 9) throw precondition_error("ring enumeration capped at 9 elements");
    std::vector<Structure> out;
    std::vector<std::string> keys;

    // Invariant factor chains d1 | d2 | ... with product n, all odd.
    std::vector<std::vector<std::uint32_t>> chains;
    std::vector<std::uint32_t> cur;
    std::function<void(std::uint32_t, std::uint32_t)> grow = [&](std::uint32_t rem,
                                                                 std::uint32_t minf) {
        if (rem == 1) {
            if (!cur.empty()) chains.push_back(cur);
            return;
        }
        for (std::uint32_t d = minf; d <= rem; ++d) {
            if (rem % d || d % 2 == 0) continue;
            bool divides_up = true;
            if (!cur.empty() && d % cur.back() != 0) divides_up = false;
            if (d == 1 || !divides_up) continue;
            cur.push_back(d);
            grow(rem / d, d);
            cur.pop_back();
        }
    };
    if (n == 1) {
        // Trivial ring: one element, zero equals one.
        Structure s;
        s.kind = Kind::Ring;
        s.carrier = Carrier::finite({"e0"});
        s.ops["add"] = OpImpl::make_table(2, {0});
        s.ops["mul"] = OpImpl::make_table(2, {0});
        s.ops["neg"] = OpImpl::make_table(1, {0});
        s.constants["zero"] = Elem::pos(0);
        s.constants["one"] = Elem::pos(0);
        out.push_back(std::move(s));
        return out;
    }
    grow(static_cast<std::uint32_t>(n), 3);

    for (const auto& d : chains) {
        std::size_t k = d.size();
        // Mixed radix decomposition, first factor most significant.
        auto decode = [&](std::uint32_t x) {
            std::vector<std::uint32_t> v(k);
            for (std::size_t i = k; i-- > 0;) {
                v[i] = x % d[i];
                x /= d[i];
            }
            return v;
        };
        auto encode = [&](const std::vector<std::uint32_t>& v) {
            std::uint32_t x = 0;
            for (std::size_t i = 0; i < k; ++i) x = x * d[i] + v[i];
            return x;
        };
        auto gadd = [&](std::uint32_t a, std::uint32_t b) {
            auto va = decode(a), vb = decode(b);
            for (std::size_t i = 0; i < k; ++i) va[i] = (va[i] + vb[i]) % d[i];
            return encode(va);
        };
        auto gscale = [&](std::uint32_t c, std::uint32_t a) {
            auto va = decode(a);
            for (std::size_t i = 0; i < k; ++i)
                va[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(va[i]) * c) % d[i]);
            return encode(va);
        };
        std::vector<std::uint32_t> gens(k);
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<std::uint32_t> v(k, 0);
            v[i] = 1;
            gens[i] = encode(v);
        }

        // Candidate generator products: order of gi*gj divides gcd(di, dj).
        std::vector<std::vector<std::uint32_t>> cand(k * k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                std::uint32_t g = std::gcd(d[i], d[j]);
                for (std::uint32_t x = 0; x < n; ++x)
                    if (gscale(g, x) == 0) cand[i * k + j].push_back(x);
            }

        std::vector<std::uint32_t> prod(k * k, 0);
        auto mul = [&](std::uint32_t a, std::uint32_t b) {
            auto va = decode(a), vb = decode(b);
            std::uint32_t acc = 0;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) {
                    std::uint32_t coef =
                        static_cast<std::uint32_t>((static_cast<std::uint64_t>(va[i]) * vb[j]) %
                                                   d[std::max(i, j)]);
                    acc = gadd(acc, gscale(coef, prod[i * k + j]));
                }
            return acc;
        };

        std::function<void(std::size_t)> fill = [&](std::size_t slot) {
            if (slot == k * k) {
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j)
                        for (std::size_t l = 0; l < k; ++l)
                            if (mul(mul(gens[i], gens[j]), gens[l]) !=
                                mul(gens[i], mul(gens[j], gens[l])))
                                return;
                std::optional<std::uint32_t> unit;
                for (std::uint32_t u = 0; u < n && !unit; ++u) {
                    bool ok = true;
                    for (std::size_t i = 0; i < k && ok; ++i)
                        if (mul(u, gens[i]) != gens[i] || mul(gens[i], u) != gens[i])
                            ok = false;
                    if (ok) unit = u;
                }
                if (!unit) return;
                std::uint32_t twou = gadd(*unit, *unit);
                bool has_half = false;
                for (std::uint32_t v = 0; v < n && !has_half; ++v)
                    if (mul(twou, v) == *unit && mul(v, twou) == *unit) has_half = true;
                if (!has_half) return;

                std::vector<std::string> labels(n);
                for (std::size_t i = 0; i < n; ++i) labels[i] = "e" + std::to_string(i);
                Structure s;
                s.kind = Kind::Ring;
                s.carrier = Carrier::finite(labels);
                std::vector<std::uint32_t> addt(n * n), mult(n * n), negt(n);
                for (std::uint32_t a = 0; a < n; ++a) {
                    auto va = decode(a);
                    for (std::size_t i = 0; i < k; ++i) va[i] = (d[i] - va[i]) % d[i];
                    negt[a] = encode(va);
                    for (std::uint32_t b = 0; b < n; ++b) {
                        addt[a * n + b] = gadd(a, b);
                        mult[a * n + b] = mul(a, b);
                    }
                }
                s.ops["add"] = OpImpl::make_table(2, std::move(addt));
                s.ops["mul"] = OpImpl::make_table(2, std::move(mult));
                s.ops["neg"] = OpImpl::make_table(1, std::move(negt));
                s.constants["zero"] = Elem::pos(0);
                s.constants["one"] = Elem::pos(*unit);
                std::string key = detail::canonical_key(s);
                if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
                    keys.push_back(key);
                    out.push_back(canonical_form(s));
                }
                return;
            }
            for (std::uint32_t c : cand[slot]) {
                prod[slot] = c;
                fill(slot + 1);
            }
        };
        fill(0);
    }
    return out;
}

// Rational carrier isomorphism candidate x -> (a x + b) / (c x + d), applied
// projectively so the point at infinity needs no special casing.
struct Homography {
    Rat a, b, c, d;
};

inline Homography inverse_map(const Homography& h) {
    return {h.d, Rat(0) - h.b, Rat(0) - h.c, h.a};
}

inline Elem apply_map(const Homography& h, const Elem& x) {
    if (!x.is_rat()) throw eval_error("map applies to scalar carriers only");
    Rat p(x.rat().num()), q(x.rat().den());
    Rat num = h.a * p + h.b * q;
    Rat den = h.c * p + h.d * q;
    if (den == Rat(0)) {
        if (num == Rat(0)) throw eval_error("map degenerate at " + x.rat().str());
        return Elem::rat(Rat::inf());
    }
    return Elem::rat(num / den);
}

// Sampled certification that the map is a structure isomorphism between two
// scalar mobis: image containment, p preservation, constants, and the
// inverse map both ways.
inline Report certify_isomorphism(const Structure& s1, const Structure& s2,
                                  const Homography& h, const SampleSpec& spec) {
    if (h.a * h.d - h.b * h.c == Rat(0))
        throw precondition_error("map determinant is zero");
    MobiView v1(s1), v2(s2);
    Homography g = inverse_map(h);
    Report rep;
    rep.structure_id = "map";
    rep.profile = "isomorphism";

    auto leg = [&](const std::string& name, int arity, auto&& body) {
        LawResult r;
        r.axiom = name;
        r.status = Status::Pass;
        Sampler sampler(s1.carrier, spec);
        Sampler sampler2(s2.carrier, spec);
        std::vector<Elem> args(static_cast<std::size_t>(arity));
        for (int i = 0; i < spec.count; ++i) {
            for (auto& a : args)
                a = (name == "inverse-map") ? sampler2.next() : sampler.next();
            ++r.checked;
            if (!body(args)) {
                r.status = Status::Fail;
                nlohmann::json w = nlohmann::json::array();
                for (const auto& a : args) w.push_back(a.rat().str());
                r.witness = w;
                break;
            }
        }
        rep.results.push_back(std::move(r));
    };

    leg("maps-into", 1, [&](const std::vector<Elem>& a) {
        return s2.carrier.contains(apply_map(h, a[0]));
    });
    leg("preserves-p", 3, [&](const std::vector<Elem>& a) {
        Elem lhs = apply_map(h, v1.p(a[0], a[1], a[2]));
        Elem rhs = v2.p(apply_map(h, a[0]), apply_map(h, a[1]), apply_map(h, a[2]));
        return lhs == rhs;
    });
    leg("inverse-map", 1, [&](const std::vector<Elem>& a) {
        Elem back = apply_map(g, a[0]);
        return s1.carrier.contains(back) && apply_map(h, back) == a[0];
    });

    LawResult r;
    r.axiom = "constants";
    r.status = Status::Pass;
    for (const char* role : {"zero", "half", "one"}) {
        ++r.checked;
        if (apply_map(h, s1.constant(role)) != s2.constant(role)) {
            r.status = Status::Fail;
            r.witness = nlohmann::json{{"constant", role}};
            break;
        }
    }
    rep.results.push_back(std::move(r));
    return rep;
}

} // namespace mobi
