#pragma once

#include <optional>
#include <queue>
#include <utility>

#include "extractor.hpp"
#include "graph.hpp"

namespace vasrev {

// Forward limit: when the run of word from c exists and only grows, the slots
// that grew are projected away. Absent when the word is not forward iterable.
inline std::optional<Config> forward_limit(const Word& w, const Config& c) {
    auto end = replay(c, w);
    if (!end.has_value() || !leq(c, *end)) return std::nullopt;
    IndexSet grown;
    for (int i = 0; i < c.dim(); ++i)
        if (c.slot(i) != end->slot(i)) grown.insert(i);
    return project(c, grown);
}

// Backward limit: the unique candidate start is c - displacement(word); the
// run from it must exist, land on c, and dominate c.
inline std::optional<Config> backward_limit(const Word& w, const Config& c) {
    IntVec delta = displacement(c.dim(), w);
    for (Int& v : delta) v = -v;
    Config start = c.plus_action(delta);
    if (!start.is_config()) return std::nullopt;
    auto end = replay(start, w);
    if (!end.has_value() || !(*end == c) || !leq(c, start)) return std::nullopt;
    IndexSet shrunk;
    for (int i = 0; i < c.dim(); ++i)
        if (c.slot(i) != start.slot(i)) shrunk.insert(i);
    return project(c, shrunk);
}

enum class Direction { forward, backward };

// Whether c is pumpable by the given cycle: the directional limit of the
// cycle's label from c exists and equals the cycle's anchor state.
inline bool is_pumpable(const Graph& g, const GraphPath& cycle, const Config& c, Direction dir) {
    if (!is_cycle(g, cycle)) throw PreconditionFailed("pumping requires a cycle");
    if (c.dim() != g.dim()) throw DimensionMismatch("configuration dimension vs graph");
    const Config& anchor = g.state(cycle.source);
    if (!(project(c, g.proj()) == anchor))
        throw AnchorMismatch("cycle anchor is not the projection of the configuration");
    Word label = path_label(g, cycle);
    auto lim = dir == Direction::forward ? forward_limit(label, c) : backward_limit(label, c);
    return lim.has_value() && *lim == anchor;
}

inline Graph reverse_graph(const Graph& g) {
    std::vector<Graph::TransTriple> ts;
    ts.reserve(g.num_trans());
    for (const Graph::Trans& t : g.transitions()) {
        IntVec neg(t.action.size());
        for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -t.action[i];
        ts.emplace_back(g.state(t.dst), std::move(neg), g.state(t.src));
    }
    return Graph(g.states(), ts);
}

namespace detail {

inline bool state_normalized(const Extractor& lambda, const Config& x) {
    int stars = static_cast<int>(x.star_set().size());
    if (stars == x.dim()) return true;
    const BigInt& thr = lambda.level(stars + 1);
    for (int i = 0; i < x.dim(); ++i)
        if (!x.is_star(i) && BigInt(*x.slot(i)) >= thr) return false;
    return true;
}

// Recursive reach-a-large-state step: from state q of h, a run word whose
// pi_J-projection is a path of pi_J(h) and whose endpoint carries at least
// lambda_{|J|} on every slot of J (J = minimal excluding set of h's states).
// Recurses on the graph projected by the excluding set of the nearest
// non-normalized state, then lifts the recursive run back.
inline std::pair<Word, Config> forward_reach_large(const Graph& h, const Extractor& lambda,
                                                   int q_idx) {
    IndexSet j_set = min_excluding_set(lambda, h.states());
    if (j_set == h.proj()) return {Word{}, h.state(q_idx)};

    // BFS to the nearest non-normalized state; canonical state order breaks
    // distance ties (states are sorted, so lowest index wins).
    std::vector<int> dist(h.num_states(), -1), via(h.num_states(), -1);
    std::queue<int> bfs;
    bfs.push(q_idx);
    dist[static_cast<std::size_t>(q_idx)] = 0;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        for (int t : h.out(v)) {
            int w = h.trans(t).dst;
            if (dist[static_cast<std::size_t>(w)] >= 0) continue;
            dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
            via[static_cast<std::size_t>(w)] = t;
            bfs.push(w);
        }
    }
    int p_idx = -1;
    for (int s = 0; s < static_cast<int>(h.num_states()); ++s) {
        if (dist[static_cast<std::size_t>(s)] < 0 || state_normalized(lambda, h.state(s))) continue;
        if (p_idx < 0 || dist[static_cast<std::size_t>(s)] < dist[static_cast<std::size_t>(p_idx)])
            p_idx = s;
    }
    if (p_idx < 0) throw Error("excluding set disagrees with normalization");

    Word sigma;
    for (int cur = p_idx; cur != q_idx;) {
        int t = via[static_cast<std::size_t>(cur)];
        sigma.push_back(h.trans(t).action);
        cur = h.trans(t).src;
    }
    std::reverse(sigma.begin(), sigma.end());

    const Config& p = h.state(p_idx);
    IndexSet k_set = min_excluding_set(lambda, {p});
    Graph hk = project_graph(h, k_set);
    int pk_idx = static_cast<int>(*hk.state_index(project(p, k_set)));
    auto [u_word, y_hat] = forward_reach_large(hk, lambda, pk_idx);
    Run lifted = lift_run(p, k_set, u_word);
    (void)y_hat;

    Word combined = std::move(sigma);
    combined.insert(combined.end(), u_word.begin(), u_word.end());
    Config z = lifted.last();
    for (int j : j_set)
        if (!z.is_star(j) && BigInt(*z.slot(j)) < lambda.level(static_cast<int>(j_set.size())))
            throw Error("reached state misses the extraction floor");
    return {std::move(combined), std::move(z)};
}

// Resolve a run word from a state of g into the transition ids of the
// projected graph pg, step by step.
inline GraphPath resolve_projected(const Graph& g, const Graph& pg, const IndexSet& j_set,
                                   int state_idx, const Word& w) {
    Config cur = project(g.state(state_idx), j_set);
    GraphPath path;
    auto start = pg.state_index(cur);
    if (!start) throw Error("projected state missing from the projected graph");
    path.source = static_cast<int>(*start);
    for (const IntVec& a : w) {
        Config nxt = cur.plus_action(a);
        auto si = pg.state_index(cur);
        auto di = pg.state_index(nxt);
        if (!si || !di) throw Error("projected run leaves the projected graph");
        auto t = pg.trans_index(static_cast<int>(*si), a, static_cast<int>(*di));
        if (!t) throw Error("projected step is not a transition");
        path.transitions.push_back(*t);
        cur = std::move(nxt);
    }
    return path;
}

// Pumping cycle at state q_idx of h: reach a large state, then return to the
// anchor along a shortest path of the projected graph, lifted by the slack
// the large slots provide.
inline GraphPath pump_cycle(const Graph& h, const Graph& ph, const Extractor& lambda,
                            const IndexSet& j_set, int q_idx) {
    auto [grow, y] = forward_reach_large(h, lambda, q_idx);
    GraphPath out = resolve_projected(h, ph, j_set, q_idx, grow);
    int y_proj = path_target(ph, out);
    int q_proj = out.source;
    GraphPath back = find_path(ph, y_proj, q_proj);
    Word back_word = path_label(ph, back);
    lift_run(y, j_set, back_word);  // feasibility of the return leg from y itself
    out.transitions.insert(out.transitions.end(), back.transitions.begin(), back.transitions.end());
    return out;
}

inline GraphPath flip_cycle(const Graph& rev_pg, const Graph& pg, const GraphPath& cycle) {
    GraphPath out;
    out.source = cycle.source;  // both graphs hold the same sorted state set
    for (auto it = cycle.transitions.rbegin(); it != cycle.transitions.rend(); ++it) {
        const Graph::Trans& t = rev_pg.trans(*it);
        IntVec a(t.action.size());
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = -t.action[i];
        auto id = pg.trans_index(t.dst, a, t.src);
        if (!id) throw Error("reverse transition missing from the projected graph");
        out.transitions.push_back(*id);
    }
    return out;
}

}  // namespace detail

struct PumpEntry {
    Config state;
    GraphPath forward;   // cycle of the projected graph
    GraphPath backward;  // cycle of the projected graph
};

struct PumpCertificate {
    IndexSet J;
    Int s = 0;
    BigInt x;  // parameter of the asserted bounds
    Graph projected;
    std::vector<PumpEntry> entries;
};

// States below s in norm are forward and backward pumpable by cycles of the
// graph projected by the minimal excluding set of the adapted extractor.
// Asserted on every call: |states(pi_J(G))| <= x^{d^d}, cycle lengths
// <= d*x^{d^d}, and pumpability of every entry. x defaults to (1+a)s and may
// only be overridden upward.
inline PumpCertificate pump_witness(const Graph& g, Int s, std::optional<BigInt> x_override = {}) {
    if (!is_witness(g)) throw PreconditionFailed("witness graph required");
    if (s < 1) throw PreconditionFailed("s must be positive");
    Int a = g.action_norm_inf();
    BigInt x_default = BigInt(1 + a) * BigInt(s);
    BigInt x = x_override.value_or(x_default);
    if (x < x_default) throw PreconditionFailed("x override below (1+a)s");

    Extractor lambda = build_adapted(g.dim(), s, a);
    IndexSet j_set = min_excluding_set(lambda, g.states());
    Graph pg = project_graph(g, j_set);
    Graph rg = reverse_graph(g);
    Graph prg = project_graph(rg, j_set);
    if (prg.states() != pg.states()) throw Error("reversal changed the state set");

    BigInt states_cap = big_pow(x, big_pow(BigInt(g.dim()), static_cast<unsigned long>(g.dim())));
    if (BigInt(static_cast<unsigned long>(pg.num_states())) > states_cap)
        throw Error("projected state count exceeds x^(d^d)");
    BigInt len_cap = BigInt(g.dim()) * states_cap;

    PumpCertificate cert{j_set, s, x, pg, {}};
    for (int qi = 0; qi < static_cast<int>(g.num_states()); ++qi) {
        const Config& q = g.state(qi);
        if (q.norm_inf() >= s) continue;
        GraphPath fwd = detail::pump_cycle(g, pg, lambda, j_set, qi);
        int rqi = static_cast<int>(*rg.state_index(q));
        GraphPath bwd = detail::flip_cycle(prg, pg, detail::pump_cycle(rg, prg, lambda, j_set, rqi));
        if (BigInt(static_cast<unsigned long>(fwd.length())) > len_cap ||
            BigInt(static_cast<unsigned long>(bwd.length())) > len_cap)
            throw Error("pumping cycle exceeds the length bound");
        if (!is_pumpable(pg, fwd, q, Direction::forward))
            throw Error("forward pumping certificate failed its own check");
        if (!is_pumpable(pg, bwd, q, Direction::backward))
            throw Error("backward pumping certificate failed its own check");
        cert.entries.push_back(PumpEntry{q, std::move(fwd), std::move(bwd)});
    }
    return cert;
}

}  // namespace vasrev
