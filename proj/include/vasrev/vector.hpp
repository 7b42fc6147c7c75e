#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace vasrev {

using Int = long;  // 64-bit on the supported targets; GMP interops with long
using IntVec = std::vector<Int>;   // plain integer vector: actions, displacements
using IndexSet = std::set<int>;    // slot indices, 0-based internally
using Slot = std::optional<Int>;   // nullopt encodes a projected slot
using Word = std::vector<IntVec>;  // sequence of actions

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer addition overflow");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer multiplication overflow");
    return r;
}

// Vector over the integers extended with a projected marker per slot.
// Arithmetic is defined only between vectors whose projected slots coincide
// and acts slot-wise on the remaining slots.
class ProjVec {
  public:
    ProjVec() = default;
    explicit ProjVec(std::vector<Slot> slots) : slots_(std::move(slots)) {}

    static ProjVec from_ints(const IntVec& v) {
        std::vector<Slot> s(v.begin(), v.end());
        return ProjVec(std::move(s));
    }

    static ProjVec zero(int dim) { return from_ints(IntVec(static_cast<std::size_t>(dim), 0)); }

    int dim() const { return static_cast<int>(slots_.size()); }
    const Slot& slot(int i) const { return slots_.at(static_cast<std::size_t>(i)); }
    bool is_star(int i) const { return !slots_.at(static_cast<std::size_t>(i)).has_value(); }
    const std::vector<Slot>& slots() const { return slots_; }

    IndexSet star_set() const {
        IndexSet s;
        for (int i = 0; i < dim(); ++i)
            if (is_star(i)) s.insert(i);
        return s;
    }

    bool standard() const {
        return std::all_of(slots_.begin(), slots_.end(), [](const Slot& s) { return s.has_value(); });
    }

    // A configuration has every non-projected slot >= 0.
    bool is_config() const {
        return std::all_of(slots_.begin(), slots_.end(),
                           [](const Slot& s) { return !s.has_value() || *s >= 0; });
    }

    // 0 when every slot is projected, max |slot| otherwise.
    Int norm_inf() const {
        Int m = 0;
        for (const Slot& s : slots_)
            if (s.has_value()) m = std::max(m, *s < 0 ? -*s : *s);
        return m;
    }

    IntVec to_ints() const {
        if (!standard()) throw PreconditionFailed("vector has projected slots");
        IntVec v;
        v.reserve(slots_.size());
        for (const Slot& s : slots_) v.push_back(*s);
        return v;
    }

    friend bool operator==(const ProjVec&, const ProjVec&) = default;

    ProjVec operator+(const ProjVec& o) const { return combine(o, +1); }
    ProjVec operator-(const ProjVec& o) const { return combine(o, -1); }

    // k*v keeps the projected slots, including k = 0.
    ProjVec scale(Int k) const {
        std::vector<Slot> out(slots_.size());
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (slots_[i].has_value()) out[i] = checked_mul(k, *slots_[i]);
        return ProjVec(std::move(out));
    }

    // v + a for a plain action vector, acting on the non-projected slots.
    ProjVec plus_action(const IntVec& a) const {
        if (static_cast<int>(a.size()) != dim())
            throw DimensionMismatch("action dimension does not match vector");
        std::vector<Slot> out(slots_.size());
        for (std::size_t i = 0; i < slots_.size(); ++i)
            if (slots_[i].has_value()) out[i] = checked_add(*slots_[i], a[i]);
        return ProjVec(std::move(out));
    }

    std::string str() const {
        std::string out = "(";
        for (int i = 0; i < dim(); ++i) {
            if (i) out += ",";
            out += is_star(i) ? "*" : std::to_string(*slot(i));
        }
        return out + ")";
    }

  private:
    ProjVec combine(const ProjVec& o, Int sign) const {
        if (o.dim() != dim()) throw DimensionMismatch("vector dimensions differ");
        std::vector<Slot> out(slots_.size());
        for (std::size_t i = 0; i < slots_.size(); ++i) {
            if (slots_[i].has_value() != o.slots_[i].has_value())
                throw SlotSetMismatch("arithmetic between vectors with different projected slots");
            if (slots_[i].has_value()) out[i] = checked_add(*slots_[i], checked_mul(sign, *o.slots_[i]));
        }
        return ProjVec(std::move(out));
    }

    std::vector<Slot> slots_;
};

using Config = ProjVec;

// Projection by eliminating the slots indexed by L (0-based).
inline ProjVec project(const ProjVec& v, const IndexSet& L) {
    std::vector<Slot> out(v.slots());
    for (int i : L) {
        if (i < 0 || i >= v.dim()) throw IndexOutOfRange("projection index out of range");
        out[static_cast<std::size_t>(i)] = std::nullopt;
    }
    return ProjVec(std::move(out));
}

inline ProjVec project_vec(const IntVec& v, const IndexSet& L) {
    return project(ProjVec::from_ints(v), L);
}

// Slot-wise order with the projected marker as the greatest element.
inline bool slot_leq(const Slot& a, const Slot& b) {
    if (!b.has_value()) return true;
    if (!a.has_value()) return false;
    return *a <= *b;
}

inline bool leq(const ProjVec& u, const ProjVec& v) {
    if (u.dim() != v.dim()) throw DimensionMismatch("vector dimensions differ");
    for (int i = 0; i < u.dim(); ++i)
        if (!slot_leq(u.slot(i), v.slot(i))) return false;
    return true;
}

// Canonical total order: lexicographic with the projected marker greatest.
inline bool canon_less(const ProjVec& u, const ProjVec& v) {
    if (u.dim() != v.dim()) throw DimensionMismatch("vector dimensions differ");
    for (int i = 0; i < u.dim(); ++i) {
        const Slot &a = u.slot(i), &b = v.slot(i);
        if (a == b) continue;
        if (!b.has_value()) return true;
        if (!a.has_value()) return false;
        return *a < *b;
    }
    return false;
}

struct CanonLess {
    bool operator()(const ProjVec& u, const ProjVec& v) const { return canon_less(u, v); }
};

// Finite duplicate-free set of actions in Z^d.
class Vas {
  public:
    Vas(int dim, std::vector<IntVec> actions) : dim_(dim), actions_(std::move(actions)) {
        if (dim_ < 1) throw PreconditionFailed("dimension must be at least 1");
        for (const IntVec& a : actions_) {
            if (static_cast<int>(a.size()) != dim_)
                throw DimensionMismatch("action arity does not match dimension");
        }
        for (std::size_t i = 0; i < actions_.size(); ++i)
            for (std::size_t j = i + 1; j < actions_.size(); ++j)
                if (actions_[i] == actions_[j]) throw PreconditionFailed("duplicate action");
    }

    int dim() const { return dim_; }
    const std::vector<IntVec>& actions() const { return actions_; }
    const IntVec& action(std::size_t i) const { return actions_.at(i); }
    std::size_t size() const { return actions_.size(); }

    Int norm_inf() const {
        Int m = 0;
        for (const IntVec& a : actions_)
            for (Int v : a) m = std::max(m, v < 0 ? -v : v);
        return m;
    }

    std::optional<std::size_t> action_index(const IntVec& a) const {
        for (std::size_t i = 0; i < actions_.size(); ++i)
            if (actions_[i] == a) return i;
        return std::nullopt;
    }

    friend bool operator==(const Vas&, const Vas&) = default;

  private:
    int dim_;
    std::vector<IntVec> actions_;
};

inline Int word_norm_inf(const Word& w) {
    Int m = 0;
    for (const IntVec& a : w)
        for (Int v : a) m = std::max(m, v < 0 ? -v : v);
    return m;
}

// Sum of the actions of a word; the empty word sums to zero.
inline IntVec displacement(int dim, const Word& w) {
    IntVec d(static_cast<std::size_t>(dim), 0);
    for (const IntVec& a : w) {
        if (static_cast<int>(a.size()) != dim) throw DimensionMismatch("action arity in word");
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = checked_add(d[i], a[i]);
    }
    return d;
}

// Displacement projected onto the non-projected slots of I.
inline ProjVec displacement_proj(int dim, const Word& w, const IndexSet& I) {
    return project_vec(displacement(dim, w), I);
}

// Maximal-information execution trace: configurations plus the word stepping
// through them.
struct Run {
    std::vector<Config> configs;  // size |word| + 1
    Word word;

    const Config& first() const { return configs.front(); }
    const Config& last() const { return configs.back(); }
    std::size_t length() const { return word.size(); }
};

// Endpoint of the unique candidate run, without storing intermediates.
inline std::optional<Config> replay(const Config& start, const Word& word) {
    if (!start.is_config()) throw PreconditionFailed("start is not a configuration");
    Config c = start;
    for (const IntVec& a : word) {
        c = c.plus_action(a);
        if (!c.is_config()) return std::nullopt;
    }
    return c;
}

// The unique run from start labelled by word, when all intermediate
// configurations stay non-negative.
inline std::optional<Run> run(const Config& start, const Word& word) {
    if (!start.is_config()) throw PreconditionFailed("start is not a configuration");
    Run r;
    r.configs.reserve(word.size() + 1);
    r.configs.push_back(start);
    for (const IntVec& a : word) {
        Config c = r.configs.back().plus_action(a);
        if (!c.is_config()) return std::nullopt;
        r.configs.push_back(std::move(c));
    }
    r.word = word;
    return r;
}

inline bool run_valid(const Run& r) {
    if (r.configs.size() != r.word.size() + 1) return false;
    auto replayed = run(r.configs.front(), r.word);
    return replayed.has_value() && replayed->configs == r.configs;
}

// Run-lifting: if a run exists from project(c, L) labelled by word and every
// slot of c in L carries at least |word| * max-action-norm, the run from c
// itself exists and projects onto the given one.
inline Run lift_run(const Config& c, const IndexSet& L, const Word& word) {
    Config base = project(c, L);
    if (!run(base, word).has_value())
        throw PreconditionFailed("lift_run: no run from the projected configuration");
    Int needed = checked_mul(static_cast<Int>(word.size()), word_norm_inf(word));
    for (int i : L) {
        if (c.is_star(i)) continue;  // already projected in c
        if (*c.slot(i) < needed)
            throw PreconditionFailed("lift_run: slot " + std::to_string(i + 1) +
                                     " below the |word|*norm threshold");
    }
    auto lifted = run(c, word);
    if (!lifted.has_value()) throw Error("lift_run: lifted run infeasible");  // unreachable by the lemma
    return *lifted;
}

}  // namespace vasrev
