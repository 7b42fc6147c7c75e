#pragma once

#include <cstdint>
#include <vector>

#include "bounds.hpp"
#include "decide.hpp"

namespace vasrev {

struct DomainOptions {
    std::uint64_t max_nodes_per_query = 500'000;
    std::uint64_t max_grid = 2'000'000;
};

// Minimal elements of the reversibility domain of one action inside a box,
// each with a replayable return word.
struct DomainResult {
    IntVec action;
    struct MinElem {
        Config c;
        Word alpha;  // c ->action c+action ->alpha c
    };
    std::vector<MinElem> minima;
    Int box = 0;
    // True only when every membership query in the box was conclusive and no
    // minimal element touches the box boundary; a statement about the box,
    // not about the theoretical completeness radius.
    bool complete = false;
    BigPower bound;  // theoretical norm bound on true minimal elements
};

namespace detail {

struct DomainQuery {
    enum class Out { yes, no, unknown } out = Out::unknown;
    Word alpha;
};

// c is in the domain when the action applies and a run returns from c+a to c;
// searched inside the box padded by the action norm, since the return run may
// overshoot the candidate box by one action's magnitude.
inline DomainQuery domain_member(const Vas& vas, const IntVec& c, const IntVec& a, Int inner_box,
                                 std::uint64_t max_nodes) {
    IntVec ca(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        ca[i] = checked_add(c[i], a[i]);
        if (ca[i] < 0) return {DomainQuery::Out::no, {}};
    }
    auto r = find_run_bidir(vas, ca, c, inner_box, max_nodes);
    switch (r.out) {
        case RunSearch::Out::found:
            return {DomainQuery::Out::yes, std::move(r.word)};
        case RunSearch::Out::absent:
            return {DomainQuery::Out::no, {}};
        default:
            return {DomainQuery::Out::unknown, {}};
    }
}

inline bool grid_next(IntVec& c, Int box) {
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] < box) {
            ++c[i];
            std::fill(c.begin() + static_cast<std::ptrdiff_t>(i) + 1, c.end(), 0);
            return true;
        }
    }
    return false;
}

inline bool vec_leq(const IntVec& u, const IntVec& v) {
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] > v[i]) return false;
    return true;
}

struct DomainGrid {
    std::vector<IntVec> configs;
    std::vector<DomainQuery> queries;
    bool all_conclusive = true;
};

inline DomainGrid domain_grid(const Vas& vas, const IntVec& a, Int box, const DomainOptions& opt) {
    if (static_cast<int>(a.size()) != vas.dim()) throw DimensionMismatch("action dimension");
    if (!vas.action_index(a)) throw PreconditionFailed("action is not in the system");
    if (box < 0) throw PreconditionFailed("box must be non-negative");
    double cells = 1;
    for (int i = 0; i < vas.dim(); ++i) cells *= static_cast<double>(box) + 1;
    if (cells > static_cast<double>(opt.max_grid)) throw BudgetExceeded("domain grid too large");

    DomainGrid grid;
    Int inner = checked_add(box, vas.norm_inf());
    IntVec c(static_cast<std::size_t>(vas.dim()), 0);
    do {
        grid.configs.push_back(c);
        grid.queries.push_back(domain_member(vas, c, a, inner, opt.max_nodes_per_query));
        if (grid.queries.back().out == DomainQuery::Out::unknown) grid.all_conclusive = false;
    } while (grid_next(c, box));
    return grid;
}

}  // namespace detail

inline DomainResult reversibility_domain_min(const Vas& vas, const IntVec& a, Int box,
                                             DomainOptions opt = {}) {
    auto grid = detail::domain_grid(vas, a, box, opt);

    DomainResult out;
    out.action = a;
    out.box = box;
    out.bound = domain_bound_form(vas.dim(), vas.norm_inf());

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < grid.configs.size(); ++i)
        if (grid.queries[i].out == detail::DomainQuery::Out::yes) members.push_back(i);
    bool boundary_clear = true;
    for (std::size_t i : members) {
        bool minimal = true;
        for (std::size_t j : members)
            if (j != i && detail::vec_leq(grid.configs[j], grid.configs[i])) {
                minimal = false;
                break;
            }
        if (!minimal) continue;
        for (Int v : grid.configs[i])
            if (v == box) boundary_clear = false;
        out.minima.push_back(
            DomainResult::MinElem{Config::from_ints(grid.configs[i]), grid.queries[i].alpha});
    }
    out.complete = grid.all_conclusive && boundary_clear;

    // Certificates and invariants are re-checked on every call.
    for (std::size_t i = 0; i < out.minima.size(); ++i) {
        for (std::size_t j = i + 1; j < out.minima.size(); ++j)
            if (leq(out.minima[i].c, out.minima[j].c) || leq(out.minima[j].c, out.minima[i].c))
                throw Error("minimal elements are not an antichain");
        Word full{a};
        full.insert(full.end(), out.minima[i].alpha.begin(), out.minima[i].alpha.end());
        auto end = replay(out.minima[i].c, full);
        if (!end.has_value() || !(*end == out.minima[i].c))
            throw Error("domain certificate does not replay");
        IntVec disp = displacement(vas.dim(), full);
        if (std::any_of(disp.begin(), disp.end(), [](Int e) { return e != 0; }))
            throw Error("domain certificate displacement is not zero");
        if (!out.bound.at_least(BigInt(out.minima[i].c.norm_inf())))
            throw Error("minimal element exceeds the theoretical bound");
    }
    return out;
}

// Membership restricted to the box never loses upward closure: whenever
// c <= c' and both queries are conclusive, c in D_a implies c' in D_a.
inline bool is_upward_closed_in_box(const Vas& vas, const IntVec& a, Int box,
                                    DomainOptions opt = {}) {
    auto grid = detail::domain_grid(vas, a, box, opt);
    for (std::size_t i = 0; i < grid.configs.size(); ++i) {
        if (grid.queries[i].out != detail::DomainQuery::Out::yes) continue;
        for (std::size_t j = 0; j < grid.configs.size(); ++j) {
            if (grid.queries[j].out != detail::DomainQuery::Out::no) continue;
            if (detail::vec_leq(grid.configs[i], grid.configs[j])) return false;
        }
    }
    return true;
}

}  // namespace vasrev
