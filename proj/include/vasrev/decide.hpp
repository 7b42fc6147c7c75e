#pragma once

#include <map>
#include <optional>
#include <queue>
#include <string>

#include "bounds.hpp"
#include "vector.hpp"

namespace vasrev {

// Paired runs witnessing that two configurations reach each other with
// cancelling displacements.
struct Certificate {
    Run forward;   // x -> y
    Run backward;  // y -> x
};

inline bool certificate_valid(const Certificate& c) {
    if (!run_valid(c.forward) || !run_valid(c.backward)) return false;
    if (!(c.forward.last() == c.backward.first())) return false;
    if (!(c.backward.last() == c.forward.first())) return false;
    int d = c.forward.first().dim();
    IntVec fd = displacement(d, c.forward.word);
    IntVec bd = displacement(d, c.backward.word);
    for (int i = 0; i < d; ++i)
        if (checked_add(fd[static_cast<std::size_t>(i)], bd[static_cast<std::size_t>(i)]) != 0)
            return false;
    return true;
}

enum class Verdict { yes, no, unknown };

struct DecideResult {
    Verdict verdict = Verdict::unknown;
    std::optional<Certificate> certificate;      // on yes
    std::string reason;                          // on unknown
    std::optional<BigPower> completeness_bound;  // run length at which the search is complete
};

namespace detail {

// Forward reachability restricted to the box [0, box]^d, with parent
// pointers. clipped records whether any legal step left the box.
struct BoxExplore {
    std::map<IntVec, std::pair<IntVec, int>> parent;  // config -> (predecessor, action idx)
    bool clipped = false;
    bool contains(const IntVec& c) const { return parent.count(c) != 0; }
};

inline BoxExplore explore_box(const Vas& vas, const IntVec& start, Int box) {
    BoxExplore ex;
    std::queue<IntVec> q;
    ex.parent.emplace(start, std::make_pair(start, -1));
    q.push(start);
    while (!q.empty()) {
        IntVec c = q.front();
        q.pop();
        for (std::size_t ai = 0; ai < vas.size(); ++ai) {
            const IntVec& a = vas.action(ai);
            IntVec n(c.size());
            bool neg = false, over = false;
            for (std::size_t i = 0; i < c.size(); ++i) {
                n[i] = checked_add(c[i], a[i]);
                neg |= n[i] < 0;
                over |= n[i] > box;
            }
            if (neg) continue;
            if (over) {
                ex.clipped = true;
                continue;
            }
            if (ex.parent.emplace(n, std::make_pair(c, static_cast<int>(ai))).second) q.push(n);
        }
    }
    return ex;
}

inline Word trace_word(const Vas& vas, const BoxExplore& ex, const IntVec& root, const IntVec& to) {
    Word w;
    IntVec cur = to;
    while (cur != root) {
        const auto& [pred, ai] = ex.parent.at(cur);
        w.push_back(vas.action(static_cast<std::size_t>(ai)));
        cur = pred;
    }
    std::reverse(w.begin(), w.end());
    return w;
}

}  // namespace detail

// Brute-force oracle for the reversible reachability relation inside a box.
// YES when runs both ways exist within the box; NO only when a direction
// conclusively fails with exploration never clipped by the box.
inline DecideResult oracle_reversible(const Vas& vas, const Config& x, const Config& y, Int box) {
    if (x.dim() != vas.dim() || y.dim() != vas.dim())
        throw DimensionMismatch("configuration dimension vs system");
    if (!x.standard() || !y.standard())
        throw PreconditionFailed("standard configurations required");
    IntVec xs = x.to_ints(), ys = y.to_ints();
    auto from_x = detail::explore_box(vas, xs, box);
    auto from_y = detail::explore_box(vas, ys, box);
    bool fwd = from_x.contains(ys), bwd = from_y.contains(xs);
    DecideResult r;
    if (fwd && bwd) {
        Certificate cert{*run(x, detail::trace_word(vas, from_x, xs, ys)),
                         *run(y, detail::trace_word(vas, from_y, ys, xs))};
        if (!certificate_valid(cert)) throw Error("oracle produced an invalid certificate");
        r.verdict = Verdict::yes;
        r.certificate = std::move(cert);
    } else if ((!fwd && !from_x.clipped) || (!bwd && !from_y.clipped)) {
        r.verdict = Verdict::no;
    } else {
        r.verdict = Verdict::unknown;
        r.reason = "box clipped the exploration";
    }
    return r;
}

struct SearchBudget {
    Int max_box = 64;
    std::uint64_t max_nodes = 4'000'000;
};

namespace detail {

struct RunSearch {
    enum class Out { found, absent, exhausted } out = Out::exhausted;
    Word word;
};

// Bidirectional BFS for a run s -> t inside the box: forward frontier steps
// by actions, backward frontier by reversed actions. Levels expand smallest
// frontier first; the canonically least meeting configuration keeps the
// result deterministic. absent requires one side exhausted without clipping
// or hitting the node budget.
inline RunSearch find_run_bidir(const Vas& vas, const IntVec& s, const IntVec& t, Int box,
                                std::uint64_t max_nodes) {
    if (s == t) return {RunSearch::Out::found, {}};
    using Parent = std::map<IntVec, std::pair<IntVec, int>>;
    Parent fpar, bpar;
    std::vector<IntVec> ffront{s}, bfront{t};
    fpar.emplace(s, std::make_pair(s, -1));
    bpar.emplace(t, std::make_pair(t, -1));
    bool fclipped = false, bclipped = false, capped = false;
    std::uint64_t nodes = 0;

    auto build_word = [&](const IntVec& meet) {
        Word w = trace_word(vas, fpar, s, meet);
        IntVec cur = meet;
        while (cur != t) {
            const auto& [succ, ai] = bpar.at(cur);
            w.push_back(vas.action(static_cast<std::size_t>(ai)));
            cur = succ;
        }
        return w;
    };

    while ((!ffront.empty() || !bfront.empty()) && !capped) {
        bool fwd = !ffront.empty() && (bfront.empty() || ffront.size() <= bfront.size());
        auto& front = fwd ? ffront : bfront;
        auto& par = fwd ? fpar : bpar;
        auto& other = fwd ? bpar : fpar;
        bool& clipped = fwd ? fclipped : bclipped;

        std::vector<IntVec> next;
        std::vector<IntVec> meets;
        for (const IntVec& c : front) {
            for (std::size_t ai = 0; ai < vas.size(); ++ai) {
                const IntVec& a = vas.action(ai);
                IntVec n(c.size());
                bool neg = false, over = false;
                for (std::size_t i = 0; i < c.size(); ++i) {
                    n[i] = fwd ? checked_add(c[i], a[i]) : checked_add(c[i], -a[i]);
                    neg |= n[i] < 0;
                    over |= n[i] > box;
                }
                if (neg) continue;
                if (over) {
                    clipped = true;
                    continue;
                }
                if (++nodes > max_nodes) {
                    capped = true;
                    break;
                }
                if (!par.emplace(n, std::make_pair(c, static_cast<int>(ai))).second) continue;
                if (other.count(n)) meets.push_back(n);
                next.push_back(std::move(n));
            }
            if (capped) break;
        }
        if (!meets.empty()) {
            const IntVec& meet = *std::min_element(meets.begin(), meets.end());
            return {RunSearch::Out::found, build_word(meet)};
        }
        front = std::move(next);
    }
    if (!capped && ffront.empty() && !fclipped) return {RunSearch::Out::absent, {}};
    if (!capped && bfront.empty() && !bclipped) return {RunSearch::Out::absent, {}};
    return {RunSearch::Out::exhausted, {}};
}

}  // namespace detail

// Iterative-deepening decision of the reversible reachability relation. NO
// verdicts come only from complete explorations; UNKNOWN carries the run
// length at which the search would be complete.
inline DecideResult decide_reversible(const Vas& vas, const Config& x, const Config& y,
                                      SearchBudget budget = {}) {
    if (x.dim() != vas.dim() || y.dim() != vas.dim())
        throw DimensionMismatch("configuration dimension vs system");
    if (!x.standard() || !y.standard())
        throw PreconditionFailed("standard configurations required");
    IntVec xs = x.to_ints(), ys = y.to_ints();
    Int max_norm = std::max(x.norm_inf(), y.norm_inf());
    BigPower complete_at = corollary_bound(vas.dim(), vas.norm_inf(), max_norm);

    std::vector<Int> schedule;
    for (Int b = max_norm + 1; b <= budget.max_box; b = checked_mul(b, 2)) schedule.push_back(b);
    if (schedule.empty()) schedule.push_back(budget.max_box);
    // The completeness budget is only attemptable in degenerate systems; when
    // the box it implies fits the configured budget, run it last.
    if (vas.norm_inf() == 0) schedule.push_back(std::max(budget.max_box, max_norm));

    for (Int box : schedule) {
        auto fwd = detail::find_run_bidir(vas, xs, ys, box, budget.max_nodes);
        auto bwd = detail::find_run_bidir(vas, ys, xs, box, budget.max_nodes);
        if (fwd.out == detail::RunSearch::Out::absent || bwd.out == detail::RunSearch::Out::absent) {
            DecideResult r;
            r.verdict = Verdict::no;
            return r;
        }
        if (fwd.out == detail::RunSearch::Out::found && bwd.out == detail::RunSearch::Out::found) {
            auto fr = run(x, fwd.word);
            auto br = run(y, bwd.word);
            if (!fr || !br) throw Error("search produced an unreplayable word");
            Certificate cert{*fr, *br};
            if (!certificate_valid(cert)) throw Error("search produced an invalid certificate");
            DecideResult r;
            r.verdict = Verdict::yes;
            r.certificate = std::move(cert);
            return r;
        }
    }
    DecideResult r;
    r.verdict = Verdict::unknown;
    r.reason = "search budget exhausted before a conclusive verdict";
    r.completeness_bound = complete_at;
    return r;
}

// The coverability instance (A, x, y) as a reversible reachability instance
// two dimensions up: unit decrements on the original slots come first, then
// the embedded actions, then the two counter-swap actions.
struct CoverReduction {
    Vas vas;
    Config source;
    Config target;
};

inline CoverReduction reduce_coverability(const Vas& a_sys, const Config& x, const Config& y) {
    if (x.dim() != a_sys.dim() || y.dim() != a_sys.dim())
        throw DimensionMismatch("configuration dimension vs system");
    if (!x.standard() || !y.standard())
        throw PreconditionFailed("standard configurations required");
    int d = a_sys.dim();
    IntVec xs = x.to_ints(), ys = y.to_ints();

    std::vector<IntVec> actions;
    auto push_unique = [&actions](IntVec v) {
        if (std::find(actions.begin(), actions.end(), v) == actions.end())
            actions.push_back(std::move(v));
    };
    for (int i = 0; i < d; ++i) {
        IntVec dec(static_cast<std::size_t>(d + 2), 0);
        dec[static_cast<std::size_t>(2 + i)] = -1;
        push_unique(std::move(dec));
    }
    for (const IntVec& a : a_sys.actions()) {
        IntVec e(static_cast<std::size_t>(d + 2), 0);
        std::copy(a.begin(), a.end(), e.begin() + 2);
        push_unique(std::move(e));
    }
    IntVec swap_down(static_cast<std::size_t>(d + 2), 0);
    swap_down[0] = -1;
    swap_down[1] = 1;
    for (int i = 0; i < d; ++i) swap_down[static_cast<std::size_t>(2 + i)] = -ys[static_cast<std::size_t>(i)];
    push_unique(std::move(swap_down));
    IntVec swap_up(static_cast<std::size_t>(d + 2), 0);
    swap_up[0] = 1;
    swap_up[1] = -1;
    for (int i = 0; i < d; ++i) swap_up[static_cast<std::size_t>(2 + i)] = xs[static_cast<std::size_t>(i)];
    push_unique(std::move(swap_up));

    IntVec src(static_cast<std::size_t>(d + 2), 0);
    src[0] = 1;
    std::copy(xs.begin(), xs.end(), src.begin() + 2);
    IntVec tgt(static_cast<std::size_t>(d + 2), 0);
    tgt[1] = 1;
    return CoverReduction{Vas(d + 2, std::move(actions)), Config::from_ints(src),
                          Config::from_ints(tgt)};
}

}  // namespace vasrev
