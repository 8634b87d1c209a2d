#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "carrier.hpp"

namespace mobi {

enum class Kind { Mobi, Imm, ImmStar, Ring };

inline const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Mobi: return "mobi";
        case Kind::Imm: return "imm";
        case Kind::ImmStar: return "imm_star";
        case Kind::Ring: return "ring";
    }
    return "?";
}

inline std::optional<Kind> kind_from_name(const std::string& s) {
    for (Kind k : {Kind::Mobi, Kind::Imm, Kind::ImmStar, Kind::Ring})
        if (s == kind_name(k)) return k;
    return std::nullopt;
}

// An operation is either a materialized table over carrier positions or a
// named formula with rational parameters.  Finite carriers always carry
// tables; formulas are for the rational domains.
struct OpImpl {
    struct Table {
        std::vector<std::uint32_t> entries; // row-major, size n^arity
        friend bool operator==(const Table&, const Table&) = default;
    };
    struct Formula {
        std::string name;
        std::map<std::string, Rat> params;
        friend bool operator==(const Formula&, const Formula&) = default;
    };

    int arity = 0;
    std::variant<Table, Formula> impl;

    bool is_table() const { return std::holds_alternative<Table>(impl); }
    const Table& table() const { return std::get<Table>(impl); }
    Table& table() { return std::get<Table>(impl); }
    const Formula& formula() const { return std::get<Formula>(impl); }

    static OpImpl make_table(int arity, std::vector<std::uint32_t> entries) {
        OpImpl op;
        op.arity = arity;
        op.impl = Table{std::move(entries)};
        return op;
    }
    static OpImpl make_formula(int arity, std::string name,
                               std::map<std::string, Rat> params = {}) {
        OpImpl op;
        op.arity = arity;
        op.impl = Formula{std::move(name), std::move(params)};
        return op;
    }

    friend bool operator==(const OpImpl&, const OpImpl&) = default;
};

// Immutable algebraic structure.  The constants map holds at least the roles
// its kind requires (mobi: zero/half/one, imm: one, ring: zero/one); derived
// or transform-produced structures may stash extras ("two", "half", ...) that
// their composite formulas read back.
struct Structure {
    Kind kind = Kind::Mobi;
    Carrier carrier;
    std::map<std::string, Elem> constants;
    std::map<std::string, OpImpl> ops;

    const Elem& constant(const std::string& role) const {
        auto it = constants.find(role);
        if (it == constants.end())
            throw parse_error("missing constant '" + role + "'");
        return it->second;
    }
    const OpImpl& op(const std::string& name) const {
        auto it = ops.find(name);
        if (it == ops.end())
            throw parse_error("missing operation '" + name + "'");
        return it->second;
    }

    friend bool operator==(const Structure&, const Structure&) = default;
};

Elem eval_formula(const Structure& s, const OpImpl::Formula& f,
                  std::span<const Elem> args, int depth);

inline Elem eval_op(const Structure& s, const std::string& name,
                    std::span<const Elem> args, int depth = 0) {
    const OpImpl& op = s.op(name);
    if (static_cast<int>(args.size()) != op.arity)
        throw eval_error("operation '" + name + "' expects " +
                         std::to_string(op.arity) + " arguments");
    for (const Elem& a : args)
        if (!s.carrier.contains(a))
            throw eval_error("argument outside carrier for '" + name + "'");
    if (op.is_table()) {
        std::size_t n = s.carrier.size(), idx = 0;
        for (const Elem& a : args) idx = idx * n + a.pos();
        return Elem::pos(op.table().entries[idx]);
    }
    Elem out = eval_formula(s, op.formula(), args, depth);
    if (!s.carrier.contains(out))
        throw closure_error("result of '" + name + "' left the carrier");
    return out;
}

inline Elem eval_op(const Structure& s, const std::string& name,
                    std::initializer_list<Elem> args, int depth = 0) {
    return eval_op(s, name, std::span<const Elem>(args.begin(), args.size()), depth);
}

// Required signature per kind; extra constants and ops are allowed.
inline void validate_shape(const Structure& s) {
    struct Req { const char* name; int arity; };
    std::vector<Req> ops;
    std::vector<std::string> consts;
    switch (s.kind) {
        case Kind::Mobi:
            ops = {{"p", 3}};
            consts = {"zero", "half", "one"};
            break;
        case Kind::Imm:
        case Kind::ImmStar:
            ops = {{"inv", 1}, {"oplus", 2}, {"dot", 2}};
            consts = {"one"};
            break;
        case Kind::Ring:
            ops = {{"add", 2}, {"mul", 2}, {"neg", 1}};
            consts = {"zero", "one"};
            break;
    }
    for (const auto& role : consts)
        if (!s.carrier.contains(s.constant(role)))
            throw parse_error("constant '" + role + "' is not a carrier member");
    for (const auto& [role, e] : s.constants)
        if (!s.carrier.contains(e))
            throw parse_error("constant '" + role + "' is not a carrier member");
    for (const auto& r : ops) {
        const OpImpl& op = s.op(r.name);
        if (op.arity != r.arity)
            throw parse_error(std::string("operation '") + r.name + "' has wrong arity");
    }
    for (const auto& [name, op] : s.ops) {
        if (op.is_table()) {
            if (!s.carrier.is_finite())
                throw parse_error("table operation '" + name + "' on a rational carrier");
            std::size_t want = 1;
            for (int i = 0; i < op.arity; ++i) want *= s.carrier.size();
            if (op.table().entries.size() != want)
                throw parse_error("table for '" + name + "' has wrong size");
            for (std::uint32_t e : op.table().entries)
                if (e >= s.carrier.size())
                    throw parse_error("table entry out of range in '" + name + "'");
        } else if (s.carrier.is_finite()) {
            throw parse_error("finite carriers require table operations ('" + name + "')");
        }
    }
}

// Thin accessors so call sites read like the algebra.

class MobiView {
public:
    explicit MobiView(const Structure& s)
        : s_(&s), zero_(s.constant("zero")), half_(s.constant("half")),
          one_(s.constant("one")) {}

    const Structure& structure() const { return *s_; }
    const Elem& zero() const { return zero_; }
    const Elem& half() const { return half_; }
    const Elem& one() const { return one_; }

    Elem p(const Elem& a, const Elem& b, const Elem& c) const {
        return eval_op(*s_, "p", {a, b, c});
    }
    // Definitional derived operations.
    Elem inv(const Elem& a) const { return p(one_, a, zero_); }
    Elem dot(const Elem& a, const Elem& b) const { return p(zero_, a, b); }
    Elem oplus(const Elem& a, const Elem& b) const { return p(a, half_, b); }
    Elem circ(const Elem& a, const Elem& b) const { return p(a, b, one_); }

private:
    const Structure* s_;
    Elem zero_, half_, one_;
};

class ImmView {
public:
    explicit ImmView(const Structure& s) : s_(&s), one_(s.constant("one")) {}

    const Structure& structure() const { return *s_; }
    const Elem& one() const { return one_; }

    Elem inv(const Elem& a) const { return eval_op(*s_, "inv", {a}); }
    Elem oplus(const Elem& a, const Elem& b) const { return eval_op(*s_, "oplus", {a, b}); }
    Elem dot(const Elem& a, const Elem& b) const { return eval_op(*s_, "dot", {a, b}); }

    Elem bar_one() const { return inv(one_); }
    Elem half() const { return oplus(bar_one(), one_); }

private:
    const Structure* s_;
    Elem one_;
};

class RingView {
public:
    explicit RingView(const Structure& s)
        : s_(&s), zero_(s.constant("zero")), one_(s.constant("one")) {}

    const Structure& structure() const { return *s_; }
    const Elem& zero() const { return zero_; }
    const Elem& one() const { return one_; }

    Elem add(const Elem& a, const Elem& b) const { return eval_op(*s_, "add", {a, b}); }
    Elem mul(const Elem& a, const Elem& b) const { return eval_op(*s_, "mul", {a, b}); }
    Elem neg(const Elem& a) const { return eval_op(*s_, "neg", {a}); }

private:
    const Structure* s_;
    Elem zero_, one_;
};

} // namespace mobi

#include "formula.hpp"
