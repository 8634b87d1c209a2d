#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <mobi/mobi.hpp>

// Helpers shared by the unit suite and the acceptance runner.  Everything in
// here recomputes from first principles; expected values frozen in the tests
// themselves never route through these.
namespace support {

inline mobi::Elem at(const mobi::Structure& s, const std::string& label) {
    auto idx = s.carrier.index_of(label);
    if (!idx) throw std::runtime_error("no element labeled '" + label + "'");
    return mobi::Elem::pos(*idx);
}

inline const std::vector<std::uint32_t>& table_of(const mobi::Structure& s,
                                                  const char* op) {
    return s.op(op).table().entries;
}

// Derived product read straight off the p table, checked for symmetry.
inline bool dot_commutes(const mobi::Structure& m) {
    mobi::MobiView v(m);
    std::size_t n = m.carrier.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            mobi::Elem ea = mobi::Elem::pos(static_cast<std::uint32_t>(a));
            mobi::Elem eb = mobi::Elem::pos(static_cast<std::uint32_t>(b));
            if (v.dot(ea, eb) != v.dot(eb, ea)) return false;
        }
    return true;
}

// One deterministic single-entry table mutation.  Ops rotate with the step
// index; cell and offset come from the generator, so a (fixture, seed, step)
// triple always lands on the same change.
struct Mutation {
    std::string op;
    std::size_t cell = 0;
    std::uint32_t from = 0, to = 0;
};

inline std::vector<const char*> mutable_ops(mobi::Kind k) {
    switch (k) {
        case mobi::Kind::Mobi: return {"p"};
        case mobi::Kind::Imm:
        case mobi::Kind::ImmStar: return {"inv", "oplus", "dot"};
        case mobi::Kind::Ring: return {"add", "mul", "neg"};
    }
    return {};
}

inline Mutation mutate_entry(mobi::Structure& s, mobi::SplitMix64& rng, int step) {
    auto ops = mutable_ops(s.kind);
    Mutation m;
    m.op = ops[static_cast<std::size_t>(step) % ops.size()];
    auto& entries = s.ops.at(m.op).table().entries;
    std::size_t n = s.carrier.size();
    m.cell = rng.next() % entries.size();
    m.from = entries[m.cell];
    std::uint32_t delta = 1 + static_cast<std::uint32_t>(rng.next() % (n - 1));
    m.to = (m.from + delta) % static_cast<std::uint32_t>(n);
    entries[m.cell] = m.to;
    return m;
}

// Raw order-five table search is the slowest single computation in the suite;
// share one run per binary.
inline const mobi::EnumerationResult& order5_raw() {
    static const mobi::EnumerationResult res = [] {
        mobi::EnumerationTask task;
        task.order = 5;
        task.up_to_iso = false;
        return mobi::enumerate_mobi(task);
    }();
    return res;
}

inline const std::vector<mobi::Structure>& order5_reps() {
    static const std::vector<mobi::Structure> reps = [] {
        std::vector<mobi::Structure> out;
        std::vector<std::string> keys;
        for (const mobi::Structure& s : order5_raw().models) {
            std::string k = mobi::detail::canonical_key(s);
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
                keys.push_back(k);
                out.push_back(mobi::canonical_form(s));
            }
        }
        return out;
    }();
    return reps;
}

} // namespace support
