#pragma once

#include <algorithm>
#include <set>

#include "transforms.hpp"

namespace mobi {

// Largest table a parametric fixture may materialize, in cells.  Keeps
// CLI-supplied moduli from allocating unbounded n^3 tables.
inline constexpr std::uint64_t kTableCellCap = 20'000'000;

// ---- direct builders ----

inline Structure finite_mobi(std::vector<std::string> labels,
                             std::vector<std::uint32_t> p,
                             std::uint32_t zero, std::uint32_t half,
                             std::uint32_t one) {
    Structure s;
    s.kind = Kind::Mobi;
    s.carrier = Carrier::finite(std::move(labels));
    s.constants = {{"zero", Elem::pos(zero)},
                   {"half", Elem::pos(half)},
                   {"one", Elem::pos(one)}};
    s.ops["p"] = OpImpl::make_table(3, std::move(p));
    validate_shape(s);
    return s;
}

inline Structure finite_imm(std::vector<std::string> labels,
                            std::vector<std::uint32_t> inv,
                            std::vector<std::uint32_t> oplus,
                            std::vector<std::uint32_t> dot, std::uint32_t one) {
    Structure s;
    s.kind = Kind::Imm;
    s.carrier = Carrier::finite(std::move(labels));
    s.constants = {{"one", Elem::pos(one)}};
    s.ops["inv"] = OpImpl::make_table(1, std::move(inv));
    s.ops["oplus"] = OpImpl::make_table(2, std::move(oplus));
    s.ops["dot"] = OpImpl::make_table(2, std::move(dot));
    validate_shape(s);
    return s;
}

// ---- stock rings ----

inline Structure ring_zn(std::int64_t n) {
    if (n < 1) throw parse_error("ring modulus must be >= 1");
    if (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) > kTableCellCap)
        throw cap_exceeded_error("ring tables over the cell cap");
    std::size_t m = static_cast<std::size_t>(n);
    std::vector<std::string> labels(m);
    for (std::size_t i = 0; i < m; ++i) labels[i] = std::to_string(i);
    std::vector<std::uint32_t> add(m * m), mul(m * m), neg(m);
    for (std::size_t i = 0; i < m; ++i) {
        neg[i] = static_cast<std::uint32_t>((m - i) % m);
        for (std::size_t j = 0; j < m; ++j) {
            add[i * m + j] = static_cast<std::uint32_t>((i + j) % m);
            mul[i * m + j] = static_cast<std::uint32_t>((i * j) % m);
        }
    }
    Structure s;
    s.kind = Kind::Ring;
    s.carrier = Carrier::finite(std::move(labels));
    s.constants = {{"zero", Elem::pos(0)},
                   {"one", Elem::pos(m > 1 ? 1 : 0)}};
    s.ops["add"] = OpImpl::make_table(2, std::move(add));
    s.ops["mul"] = OpImpl::make_table(2, std::move(mul));
    s.ops["neg"] = OpImpl::make_table(1, std::move(neg));
    return s;
}

// 2x2 matrices over Z_q, q <= 10 so entries read off as label digits.
// Labels are "abcd" for [[a,b],[c,d]].
inline Structure ring_mat2_zq(std::int64_t q) {
    if (q < 2 || q > 10) throw parse_error("matrix entry modulus must be in 2..10");
    std::size_t b = static_cast<std::size_t>(q), n = b * b * b * b;
    auto enc = [b](std::size_t e11, std::size_t e12, std::size_t e21, std::size_t e22) {
        return ((e11 * b + e12) * b + e21) * b + e22;
    };
    std::vector<std::array<std::size_t, 4>> cells(n);
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = i;
        std::array<std::size_t, 4>& c = cells[i];
        c[3] = r % b; r /= b;
        c[2] = r % b; r /= b;
        c[1] = r % b; r /= b;
        c[0] = r;
        labels[i] = std::to_string(c[0]) + std::to_string(c[1]) +
                    std::to_string(c[2]) + std::to_string(c[3]);
    }
    std::vector<std::uint32_t> add(n * n), mul(n * n), neg(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& x = cells[i];
        neg[i] = static_cast<std::uint32_t>(
            enc((b - x[0]) % b, (b - x[1]) % b, (b - x[2]) % b, (b - x[3]) % b));
        for (std::size_t j = 0; j < n; ++j) {
            const auto& y = cells[j];
            add[i * n + j] = static_cast<std::uint32_t>(
                enc((x[0] + y[0]) % b, (x[1] + y[1]) % b,
                    (x[2] + y[2]) % b, (x[3] + y[3]) % b));
            mul[i * n + j] = static_cast<std::uint32_t>(
                enc((x[0] * y[0] + x[1] * y[2]) % b, (x[0] * y[1] + x[1] * y[3]) % b,
                    (x[2] * y[0] + x[3] * y[2]) % b, (x[2] * y[1] + x[3] * y[3]) % b));
        }
    }
    Structure s;
    s.kind = Kind::Ring;
    s.carrier = Carrier::finite(std::move(labels));
    s.constants = {{"zero", Elem::pos(0)},
                   {"one", Elem::pos(static_cast<std::uint32_t>(enc(1, 0, 0, 1)))}};
    s.ops["add"] = OpImpl::make_table(2, std::move(add));
    s.ops["mul"] = OpImpl::make_table(2, std::move(mul));
    s.ops["neg"] = OpImpl::make_table(1, std::move(neg));
    return s;
}

inline Structure ring_q() {
    Structure s;
    s.kind = Kind::Ring;
    s.carrier = Carrier::rational(Domain::Q);
    s.constants = {{"zero", Elem::rat(Rat(0))}, {"one", Elem::rat(Rat(1))}};
    s.ops["add"] = OpImpl::make_formula(2, "q-add");
    s.ops["mul"] = OpImpl::make_formula(2, "q-mul");
    s.ops["neg"] = OpImpl::make_formula(1, "q-neg");
    return s;
}

// ---- subset closure under p(x,y,z) = x + y z - y x ----

struct ClosureTask {
    Structure ring;
    std::vector<Elem> generators;
    std::size_t element_cap = 100'000;
};

struct ClosureResult {
    bool complete = false;
    std::vector<Elem> elements; // discovery order, generators first
    std::optional<Structure> sub_mobi;
};

// Fixpoint iteration: each round scans only triples that touch an element
// discovered in the previous round, appending unseen values in scan order.
// The generators must already contain 0, the inverse of 1+1, and 1, so a
// completed closure is a structure with all three constants on board.
inline ClosureResult closure_generate(const ClosureTask& task) {
    const Structure& ring = task.ring;
    if (ring.kind != Kind::Ring)
        throw precondition_error("closure ambient must be a ring");
    RingView r(ring);
    Elem two = r.add(r.one(), r.one());
    auto half = detail::two_sided_inverse(ring, "mul", two, r.one(), {});
    if (!half) throw no_inverse_error("ambient ring has no inverse for 1+1");

    for (const Elem& g : task.generators)
        if (!ring.carrier.contains(g))
            throw precondition_error("generator outside the ambient carrier");
    auto require = [&](const Elem& e, const char* what) {
        if (std::find(task.generators.begin(), task.generators.end(), e) ==
            task.generators.end())
            throw precondition_error(std::string("generators must contain ") + what);
    };
    require(r.zero(), "0");
    require(*half, "the inverse of 1+1");
    require(r.one(), "1");

    auto p = [&](const Elem& x, const Elem& y, const Elem& z) {
        return r.add(x, r.add(r.mul(y, z), r.neg(r.mul(y, x))));
    };

    ClosureResult out;
    std::set<Elem> seen;
    for (const Elem& g : task.generators)
        if (seen.insert(g).second) out.elements.push_back(g);

    std::vector<Elem>& elems = out.elements;
    std::size_t frontier = 0;
    bool capped = elems.size() > task.element_cap;
    while (!capped) {
        std::size_t cur = elems.size();
        for (std::size_t i = 0; i < cur && !capped; ++i)
            for (std::size_t j = 0; j < cur && !capped; ++j)
                for (std::size_t k = 0; k < cur && !capped; ++k) {
                    if (i < frontier && j < frontier && k < frontier) continue;
                    Elem v = p(elems[i], elems[j], elems[k]);
                    if (seen.insert(v).second) {
                        elems.push_back(v);
                        capped = elems.size() > task.element_cap;
                    }
                }
        if (capped) break;
        if (elems.size() == cur) {
            out.complete = true;
            break;
        }
        frontier = cur;
    }
    if (!out.complete) return out;

    std::size_t n = elems.size();
    if (static_cast<std::uint64_t>(n) * n * n > kTableCellCap)
        throw cap_exceeded_error("closure table over the cell cap");
    std::map<Elem, std::uint32_t> pos;
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        pos[elems[i]] = static_cast<std::uint32_t>(i);
        labels[i] = detail::elem_label(ring, elems[i]);
    }
    std::vector<std::uint32_t> tab(n * n * n);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                tab[idx++] = pos.at(p(elems[i], elems[j], elems[k]));
    out.sub_mobi = finite_mobi(std::move(labels), std::move(tab),
                               pos.at(r.zero()), pos.at(*half), pos.at(r.one()));
    return out;
}

// ---- plane points as 2x2 matrices ----

// (x,y) becomes [[x, k1 y], [k2 y, x]], row-major, with K = k1 k2.
inline std::array<Rat, 4> planar_matrix_embedding(const Rat& K, const Pair& pt,
                                                  std::optional<Rat> k1 = {},
                                                  std::optional<Rat> k2 = {}) {
    Rat f1 = k1.value_or(K), f2 = k2.value_or(Rat(1));
    if (f1 * f2 != K) throw precondition_error("factorization must satisfy k1 k2 = K");
    return {pt[0], f1 * pt[1], f2 * pt[1], pt[0]};
}

inline std::array<Rat, 4> mat2_mul(const std::array<Rat, 4>& x,
                                   const std::array<Rat, 4>& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

// ---- example catalogue ----

using ExampleParams = std::map<std::string, Rat>;

inline const std::vector<std::string>& example_names() {
    static const std::vector<std::string> names = {
        "interval",       "interval-third",  "interval-alpha",
        "symmetric-interval", "reciprocal-interval", "three-element",
        "mod-odd",        "dyadic",          "field-line",
        "planar",         "planar-K",        "ring-generic",
        "subset-closure", "semiring-note",   "finite-general",
        "imm1",           "imm2",            "imm3",
        "section4-imm",
    };
    return names;
}

// Names that deliberately construct nothing.  make_example throws for them;
// the text explains what to do instead.
inline std::optional<std::string> example_stub(const std::string& name) {
    if (name == "finite-general")
        return "finite-general names a construction, not a fixture: on a finite "
               "structure with cancellation the map h(x) = p(0,1/2,x) is a "
               "bijection, so the preimage of 1 inverts 1/2 and the ring "
               "construction applies to every finite input. See "
               "half_inverse_by_bijection, or convert --to ring.";
    return std::nullopt;
}

namespace detail {

inline Rat example_param(const ExampleParams& ps, const std::string& key,
                         const Rat& fallback) {
    auto it = ps.find(key);
    return it == ps.end() ? fallback : it->second;
}

inline std::int64_t example_int(const ExampleParams& ps, const std::string& key,
                                std::int64_t fallback) {
    auto it = ps.find(key);
    if (it == ps.end()) return fallback;
    if (it->second.is_inf() || it->second.den() != 1)
        throw parse_error("parameter '" + key + "' must be an integer");
    return it->second.num();
}

inline void reject_unknown(const ExampleParams& ps,
                           std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : ps) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw parse_error("example does not take parameter '" + key + "'");
    }
}

inline Structure rational_mobi(Domain d, std::map<std::string, Rat> cparams,
                               const char* formula,
                               std::map<std::string, Rat> fparams, Elem zero,
                               Elem half, Elem one) {
    Structure s;
    s.kind = Kind::Mobi;
    s.carrier = Carrier::rational(d, std::move(cparams));
    s.constants = {{"zero", std::move(zero)},
                   {"half", std::move(half)},
                   {"one", std::move(one)}};
    s.ops["p"] = OpImpl::make_formula(3, formula, std::move(fparams));
    validate_shape(s);
    return s;
}

inline Structure mod_odd_mobi(std::int64_t n) {
    if (n < 1) throw parse_error("mod-odd needs n >= 1");
    std::int64_t m = 2 * n + 1;
    if (static_cast<std::uint64_t>(m) * m * m > kTableCellCap)
        throw cap_exceeded_error("mod-odd table over the cell cap");
    std::vector<std::string> labels(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i)
        labels[static_cast<std::size_t>(i)] = std::to_string(i);
    std::vector<std::uint32_t> tab;
    tab.reserve(static_cast<std::size_t>(m * m * m));
    for (std::int64_t a = 0; a < m; ++a)
        for (std::int64_t y = 0; y < m; ++y)
            for (std::int64_t b = 0; b < m; ++b) {
                std::int64_t v = (a + y * (b - a)) % m;
                tab.push_back(static_cast<std::uint32_t>((v + m) % m));
            }
    return finite_mobi(std::move(labels), std::move(tab), 0,
                       static_cast<std::uint32_t>(n + 1), 1);
}

} // namespace detail

inline Structure make_example(const std::string& name,
                              const ExampleParams& params = {}) {
    using detail::example_int;
    using detail::example_param;
    using detail::rational_mobi;
    using detail::reject_unknown;
    auto rat = [](std::int64_t n, std::int64_t d = 1) { return Elem::rat(Rat(n, d)); };

    if (name == "interval") {
        reject_unknown(params, {});
        return rational_mobi(Domain::UnitInterval, {}, "interval", {}, rat(0),
                             rat(1, 2), rat(1));
    }
    if (name == "interval-third") {
        reject_unknown(params, {});
        return rational_mobi(Domain::UnitInterval, {}, "interval-third", {}, rat(0),
                             rat(1, 3), rat(1));
    }
    if (name == "interval-alpha") {
        reject_unknown(params, {"alpha"});
        Rat alpha = example_param(params, "alpha", Rat(4));
        if (alpha.is_inf() || alpha <= Rat(1))
            throw parse_error("alpha must be a rational greater than 1");
        return rational_mobi(Domain::UnitInterval, {}, "alpha-family",
                             {{"alpha", alpha}}, rat(0), Elem::rat(Rat(1) / alpha),
                             rat(1));
    }
    if (name == "symmetric-interval") {
        reject_unknown(params, {});
        return rational_mobi(Domain::SymInterval, {}, "symmetric", {}, rat(-1),
                             rat(0), rat(1));
    }
    if (name == "reciprocal-interval") {
        reject_unknown(params, {});
        return rational_mobi(Domain::RayOneInf, {}, "reciprocal", {},
                             Elem::rat(Rat::inf()), rat(2), rat(1));
    }
    if (name == "three-element") {
        reject_unknown(params, {});
        // Slices p(-,y,-) for y = 0, 1/2, 1 over carrier order (0, 1/2, 1).
        return finite_mobi({"0", "1/2", "1"},
                           {0, 0, 0, 0, 2, 1, 0, 1, 2,
                            1, 1, 1, 2, 1, 0, 0, 1, 2,
                            2, 2, 2, 1, 0, 2, 0, 1, 2},
                           0, 1, 2);
    }
    if (name == "mod-odd") {
        reject_unknown(params, {"n"});
        return detail::mod_odd_mobi(example_int(params, "n", 2));
    }
    if (name == "dyadic") {
        reject_unknown(params, {});
        return rational_mobi(Domain::DyadicUnit, {}, "interval", {}, rat(0),
                             rat(1, 2), rat(1));
    }
    if (name == "field-line") {
        reject_unknown(params, {});
        return rational_mobi(Domain::Q, {}, "interval", {}, rat(0), rat(1, 2),
                             rat(1));
    }
    if (name == "planar") {
        reject_unknown(params, {});
        return rational_mobi(Domain::PlanarRegion, {{"k", Rat(1)}}, "planar-k",
                             {{"k", Rat(1)}}, Elem::pair(Rat(0), Rat(0)),
                             Elem::pair(Rat(1, 2), Rat(0)),
                             Elem::pair(Rat(1), Rat(0)));
    }
    if (name == "planar-K") {
        reject_unknown(params, {"k", "plane"});
        Rat k = example_param(params, "k", Rat(2));
        if (k.is_inf()) throw parse_error("k must be a finite rational");
        std::int64_t plane = example_int(params, "plane", 0);
        if (plane != 0 && plane != 1) throw parse_error("plane must be 0 or 1");
        bool region = k >= Rat(0) && plane == 0;
        Domain d = region ? Domain::PlanarRegion : Domain::Q2;
        std::map<std::string, Rat> cparams;
        if (region) cparams["k"] = k;
        return rational_mobi(d, std::move(cparams), "planar-k", {{"k", k}},
                             Elem::pair(Rat(0), Rat(0)),
                             Elem::pair(Rat(1, 2), Rat(0)),
                             Elem::pair(Rat(1), Rat(0)));
    }
    if (name == "ring-generic") {
        reject_unknown(params, {"mod"});
        std::int64_t mod = example_int(params, "mod", 5);
        if (static_cast<std::uint64_t>(std::max<std::int64_t>(mod, 1)) *
                std::max<std::int64_t>(mod, 1) * std::max<std::int64_t>(mod, 1) >
            kTableCellCap)
            throw cap_exceeded_error("ring-generic table over the cell cap");
        return ring_to_mobi(ring_zn(mod));
    }
    if (name == "subset-closure") {
        reject_unknown(params, {"mod"});
        std::int64_t mod = example_int(params, "mod", 5);
        Structure ambient = ring_zn(mod);
        RingView r(ambient);
        Elem two = r.add(r.one(), r.one());
        auto half = detail::two_sided_inverse(ambient, "mul", two, r.one(), {});
        if (!half) throw no_inverse_error("no inverse for 1+1 in the ambient ring");
        ClosureTask task{std::move(ambient), {r.zero(), *half, r.one()}};
        ClosureResult res = closure_generate(task);
        if (!res.complete)
            throw cap_exceeded_error("subset closure did not stabilize");
        return *res.sub_mobi;
    }
    if (name == "semiring-note") {
        throw precondition_error(
            "the semiring variant defines p implicitly, as the unique solution "
            "of p + b*a = a + b*c inside a chosen subset; this workbench only "
            "builds structures whose operations are closed formulas or finite "
            "tables, so no structure is emitted. Use the ring-based examples.");
    }
    if (name == "finite-general") {
        throw precondition_error(*example_stub("finite-general"));
    }
    if (name == "imm1") {
        reject_unknown(params, {});
        return finite_imm({"alpha", "0", "1/2", "1", "beta"}, {4, 3, 2, 1, 0},
                          {0, 4, 3, 1, 2,
                           4, 1, 0, 2, 3,
                           3, 0, 2, 4, 1,
                           1, 2, 4, 3, 0,
                           2, 3, 1, 0, 4},
                          {3, 1, 4, 0, 2,
                           1, 1, 1, 1, 1,
                           4, 1, 0, 2, 3,
                           0, 1, 2, 3, 4,
                           2, 1, 3, 4, 0},
                          3);
    }
    if (name == "imm2") {
        reject_unknown(params, {});
        return finite_imm({"alpha", "0", "1/2", "1", "beta"}, {4, 3, 2, 1, 0},
                          {0, 2, 2, 0, 2,
                           2, 1, 2, 2, 4,
                           2, 2, 2, 2, 2,
                           0, 2, 2, 3, 2,
                           2, 4, 2, 2, 4},
                          {0, 1, 2, 0, 4,
                           1, 1, 1, 1, 1,
                           2, 1, 2, 2, 4,
                           0, 1, 2, 3, 4,
                           4, 1, 4, 4, 1},
                          3);
    }
    if (name == "imm3") {
        reject_unknown(params, {});
        return finite_imm({"alpha", "0", "1/2", "1", "beta"}, {4, 3, 2, 1, 0},
                          {0, 2, 2, 2, 2,
                           2, 1, 2, 2, 2,
                           2, 2, 2, 2, 2,
                           2, 2, 2, 3, 2,
                           2, 2, 2, 2, 4},
                          {4, 1, 2, 0, 3,
                           1, 1, 1, 1, 1,
                           2, 1, 2, 2, 2,
                           0, 1, 2, 3, 4,
                           3, 1, 2, 4, 0},
                          3);
    }
    if (name == "section4-imm") {
        reject_unknown(params, {});
        return finite_imm({"0", "1/2", "1"}, {2, 1, 0},
                          {0, 1, 1,
                           1, 1, 1,
                           1, 1, 2},
                          {0, 0, 0,
                           0, 1, 1,
                           0, 1, 2},
                          2);
    }
    throw parse_error("unknown example '" + name + "'");
}

} // namespace mobi
