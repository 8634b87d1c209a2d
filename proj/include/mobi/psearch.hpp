#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "errors.hpp"

namespace mobi {

// Backtracking filler for ternary p tables over a small finite carrier with
// designated zero/half/one positions.  Cells are (a, y, b) row-major; value
// branches follow carrier order, so the first table found is the
// lexicographically least valid one.
//
// Built-in constraints:
//   pins      p(a,0,b)=a, p(a,1,b)=b, p(a,y,a)=a, p(0,y,1)=y, p(1,h,0)=h
//   symmetry  p(a,h,b)=p(b,h,a), which needs no cancellation to hold
//   masks     caller-supplied per-cell candidate sets
//   balance   every determined instance of the two five-variable laws
//             (inner-composition and half-interchange) must agree; an
//             instance with exactly one undetermined outer lookup forces it
//   columns   with cancellation on, each b-column of the half slice is
//             kept injective
class PTableSearch {
public:
    struct Config {
        std::size_t n = 0;
        std::uint32_t zero = 0, half = 1, one = 2;
        std::vector<std::uint32_t> choice_masks; // n^3, bit v = value allowed
        bool cancellation = false;
        std::uint64_t node_cap = 10'000'000;
    };

    enum class Outcome { Complete, Stopped, CapExceeded };

    // Callback gets a fully assigned table (n^3 values); return false to stop.
    using Callback = std::function<bool(const std::vector<std::int8_t>&)>;

    explicit PTableSearch(Config cfg) : cfg_(std::move(cfg)), n_(cfg_.n) {
        std::size_t cells = n_ * n_ * n_;
        table_.assign(cells, -1);
        masks_ = cfg_.choice_masks;
        if (masks_.size() != cells)
            throw precondition_error("choice mask list has wrong size");
        std::size_t insts = 1;
        for (int i = 0; i < 5; ++i) insts *= n_;
        verified_.assign(2 * insts, 0);
        inst_count_ = insts;
    }

    Outcome run(const Callback& cb) {
        nodes_ = 0;
        solutions_ = 0;
        if (!apply_pins()) return Outcome::Complete;
        try {
            bool keep_going = dfs(cb);
            return keep_going ? Outcome::Complete : Outcome::Stopped;
        } catch (const cap_exceeded_error&) {
            return Outcome::CapExceeded;
        }
    }

    std::uint64_t nodes() const { return nodes_; }
    std::uint64_t solutions() const { return solutions_; }

private:
    Config cfg_;
    std::size_t n_;
    std::vector<std::int8_t> table_;
    std::vector<std::uint32_t> masks_;
    std::vector<std::uint8_t> verified_;
    std::size_t inst_count_ = 0;
    std::uint64_t nodes_ = 0, solutions_ = 0;

    struct TrailRec {
        enum Kind : std::uint8_t { Assign, Mask, Verify } kind;
        std::uint32_t idx;
        std::uint32_t prev;
    };
    std::vector<TrailRec> trail_;
    std::vector<std::uint32_t> queue_; // cells assigned, pending consequences

    std::size_t cell(std::size_t a, std::size_t y, std::size_t b) const {
        return (a * n_ + y) * n_ + b;
    }
    int val(std::size_t a, std::size_t y, std::size_t b) const {
        return table_[cell(a, y, b)];
    }

    bool assign(std::size_t id, std::uint32_t v) {
        if (table_[id] >= 0) return static_cast<std::uint32_t>(table_[id]) == v;
        if (!(masks_[id] >> v & 1u)) return false;
        table_[id] = static_cast<std::int8_t>(v);
        trail_.push_back({TrailRec::Assign, static_cast<std::uint32_t>(id), 0});
        queue_.push_back(static_cast<std::uint32_t>(id));
        return true;
    }

    bool remove_choice(std::size_t id, std::uint32_t v) {
        if (table_[id] >= 0) return static_cast<std::uint32_t>(table_[id]) != v;
        std::uint32_t m = masks_[id];
        if (!(m >> v & 1u)) return true;
        trail_.push_back({TrailRec::Mask, static_cast<std::uint32_t>(id), m});
        masks_[id] = m & ~(1u << v);
        if (masks_[id] == 0) return false;
        if ((masks_[id] & (masks_[id] - 1)) == 0) {
            std::uint32_t only = 0;
            while (!(masks_[id] >> only & 1u)) ++only;
            return assign(id, only);
        }
        return true;
    }

    // Consequences of one assignment that do not involve the balance laws.
    bool local_consequences(std::size_t id) {
        std::uint32_t v = static_cast<std::uint32_t>(table_[id]);
        std::size_t b = id % n_, y = (id / n_) % n_, a = id / (n_ * n_);
        if (y == cfg_.half) {
            if (!assign(cell(b, y, a), v)) return false;
            if (cfg_.cancellation) {
                for (std::size_t a2 = 0; a2 < n_; ++a2)
                    if (a2 != a && !remove_choice(cell(a2, y, b), v)) return false;
            }
        }
        return true;
    }

    bool drain_queue() {
        while (!queue_.empty()) {
            std::size_t id = queue_.back();
            queue_.pop_back();
            if (!local_consequences(id)) return false;
        }
        return true;
    }

    // Tri-valued check of one balance instance.  Returns false on conflict,
    // sets *forced when it assigned a cell.
    bool check_inner_comp(std::size_t idx, bool* forced) {
        // idx decodes (a, b, c1, c2, c3)
        std::size_t c3 = idx % n_, c2 = (idx / n_) % n_, c1 = (idx / (n_ * n_)) % n_;
        std::size_t b = (idx / (n_ * n_ * n_)) % n_, a = idx / (n_ * n_ * n_ * n_);
        int x = val(c1, c2, c3);
        if (x < 0) return true;
        int r1 = val(a, c1, b), r3 = val(a, c3, b);
        if (r1 < 0 || r3 < 0) return true;
        std::size_t lc = cell(a, static_cast<std::size_t>(x), b);
        std::size_t rc = cell(static_cast<std::size_t>(r1), c2, static_cast<std::size_t>(r3));
        return settle(idx, lc, rc, forced);
    }

    bool check_half_interchange(std::size_t idx, bool* forced) {
        // idx decodes (a1, b1, a2, b2, c)
        std::size_t c = idx % n_, b2 = (idx / n_) % n_, a2 = (idx / (n_ * n_)) % n_;
        std::size_t b1 = (idx / (n_ * n_ * n_)) % n_, a1 = idx / (n_ * n_ * n_ * n_);
        std::size_t h = cfg_.half;
        int l1 = val(a1, c, b1), l2 = val(a2, c, b2);
        int r1 = val(a1, h, a2), r2 = val(b1, h, b2);
        if (l1 < 0 || l2 < 0 || r1 < 0 || r2 < 0) return true;
        std::size_t lc = cell(static_cast<std::size_t>(l1), h, static_cast<std::size_t>(l2));
        std::size_t rc = cell(static_cast<std::size_t>(r1), c, static_cast<std::size_t>(r2));
        return settle(inst_count_ + idx, lc, rc, forced);
    }

    bool settle(std::size_t inst, std::size_t lc, std::size_t rc, bool* forced) {
        int lv = table_[lc], rv = table_[rc];
        if (lv < 0 && rv < 0) return true;
        if (lv < 0) {
            *forced = true;
            return assign(lc, static_cast<std::uint32_t>(rv));
        }
        if (rv < 0) {
            *forced = true;
            return assign(rc, static_cast<std::uint32_t>(lv));
        }
        if (lv != rv) return false;
        verified_[inst] = 1;
        trail_.push_back({TrailRec::Verify, static_cast<std::uint32_t>(inst), 0});
        return true;
    }

    bool propagate() {
        for (;;) {
            if (!drain_queue()) return false;
            bool forced = false;
            for (std::size_t i = 0; i < inst_count_; ++i)
                if (!verified_[i] && !check_inner_comp(i, &forced)) return false;
            for (std::size_t i = 0; i < inst_count_; ++i)
                if (!verified_[inst_count_ + i] && !check_half_interchange(i, &forced))
                    return false;
            if (!forced && queue_.empty()) return true;
        }
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            TrailRec r = trail_.back();
            trail_.pop_back();
            switch (r.kind) {
                case TrailRec::Assign: table_[r.idx] = -1; break;
                case TrailRec::Mask: masks_[r.idx] = r.prev; break;
                case TrailRec::Verify: verified_[r.idx] = 0; break;
            }
        }
        queue_.clear();
    }

    bool apply_pins() {
        auto pin = [&](std::size_t a, std::size_t y, std::size_t b, std::uint32_t v) {
            return assign(cell(a, y, b), v);
        };
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t y = 0; y < n_; ++y)
                if (!pin(a, y, a, static_cast<std::uint32_t>(a))) return false;
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b) {
                if (!pin(a, cfg_.zero, b, static_cast<std::uint32_t>(a))) return false;
                if (!pin(a, cfg_.one, b, static_cast<std::uint32_t>(b))) return false;
            }
        for (std::size_t y = 0; y < n_; ++y)
            if (!pin(cfg_.zero, y, cfg_.one, static_cast<std::uint32_t>(y))) return false;
        if (!pin(cfg_.one, cfg_.half, cfg_.zero, cfg_.half)) return false;
        return propagate();
    }

    bool dfs(const Callback& cb) {
        std::size_t id = 0, cells = table_.size();
        while (id < cells && table_[id] >= 0) ++id;
        if (id == cells) {
            ++solutions_;
            return cb(table_);
        }
        std::uint32_t mask = masks_[id];
        for (std::uint32_t v = 0; v < n_; ++v) {
            if (!(mask >> v & 1u)) continue;
            if (++nodes_ > cfg_.node_cap)
                throw cap_exceeded_error("search node cap exceeded");
            std::size_t mark = trail_.size();
            if (assign(id, v) && propagate()) {
                if (!dfs(cb)) return false;
            }
            undo(mark);
        }
        return true;
    }
};

} // namespace mobi
