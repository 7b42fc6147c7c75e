#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <tuple>
#include <vector>

#include "vector.hpp"

namespace vasrev {

// Finite graph of configurations sharing one set of projected slots, with
// transitions (x, a, y) satisfying y = x + a on the non-projected slots.
// States and transitions are kept canonically sorted and duplicate-free, so
// equal graphs compare equal and every enumeration is deterministic.
class Graph {
  public:
    struct Trans {
        int src;
        IntVec action;
        int dst;
        friend bool operator==(const Trans&, const Trans&) = default;
        friend auto operator<=>(const Trans&, const Trans&) = default;
    };

    using TransTriple = std::tuple<Config, IntVec, Config>;

    Graph(std::vector<Config> states, const std::vector<TransTriple>& transitions) {
        if (states.empty()) throw PreconditionFailed("graph needs at least one state");
        dim_ = states.front().dim();
        proj_ = states.front().star_set();
        for (const Config& s : states) {
            if (s.dim() != dim_) throw DimensionMismatch("state dimensions differ");
            if (!s.is_config()) throw PreconditionFailed("state is not a configuration");
            if (s.star_set() != proj_)
                throw PreconditionFailed("states do not share one set of projected slots");
        }
        std::sort(states.begin(), states.end(), CanonLess{});
        states.erase(std::unique(states.begin(), states.end()), states.end());
        states_ = std::move(states);

        for (const auto& [x, a, y] : transitions) {
            auto si = state_index(x);
            auto ti = state_index(y);
            if (!si || !ti) throw PreconditionFailed("transition endpoint is not a state");
            if (x.plus_action(a) != y) throw PreconditionFailed("transition is not a single step");
            transitions_.push_back(Trans{static_cast<int>(*si), a, static_cast<int>(*ti)});
        }
        std::sort(transitions_.begin(), transitions_.end());
        transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
        out_.assign(states_.size(), {});
        in_.assign(states_.size(), {});
        for (int t = 0; t < static_cast<int>(transitions_.size()); ++t) {
            out_[static_cast<std::size_t>(transitions_[t].src)].push_back(t);
            in_[static_cast<std::size_t>(transitions_[t].dst)].push_back(t);
        }
    }

    static Graph from_run(const Run& r) {
        if (!run_valid(r)) throw PreconditionFailed("invalid run");
        std::vector<TransTriple> ts;
        for (std::size_t j = 0; j < r.word.size(); ++j)
            ts.emplace_back(r.configs[j], r.word[j], r.configs[j + 1]);
        return Graph(r.configs, ts);
    }

    int dim() const { return dim_; }
    const IndexSet& proj() const { return proj_; }
    const std::vector<Config>& states() const { return states_; }
    const Config& state(int i) const { return states_.at(static_cast<std::size_t>(i)); }
    const std::vector<Trans>& transitions() const { return transitions_; }
    const Trans& trans(int t) const { return transitions_.at(static_cast<std::size_t>(t)); }
    std::size_t num_states() const { return states_.size(); }
    std::size_t num_trans() const { return transitions_.size(); }
    const std::vector<int>& out(int state) const { return out_.at(static_cast<std::size_t>(state)); }
    const std::vector<int>& in(int state) const { return in_.at(static_cast<std::size_t>(state)); }

    std::optional<std::size_t> state_index(const Config& c) const {
        auto it = std::lower_bound(states_.begin(), states_.end(), c, CanonLess{});
        if (it == states_.end() || !(*it == c)) return std::nullopt;
        return static_cast<std::size_t>(it - states_.begin());
    }

    std::optional<int> trans_index(int src, const IntVec& a, int dst) const {
        Trans key{src, a, dst};
        auto it = std::lower_bound(transitions_.begin(), transitions_.end(), key);
        if (it == transitions_.end() || !(*it == key)) return std::nullopt;
        return static_cast<int>(it - transitions_.begin());
    }

    // Max |entry| over the actions appearing on transitions.
    Int action_norm_inf() const {
        Int m = 0;
        for (const Trans& t : transitions_)
            for (Int v : t.action) m = std::max(m, v < 0 ? -v : v);
        return m;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.states_ == b.states_ && a.transitions_ == b.transitions_;
    }

  private:
    int dim_ = 0;
    IndexSet proj_;
    std::vector<Config> states_;
    std::vector<Trans> transitions_;
    std::vector<std::vector<int>> out_, in_;
};

// Path as a transition-index sequence; label, endpoints and Parikh image are
// derived against the owning graph.
struct GraphPath {
    int source = 0;
    std::vector<int> transitions;

    std::size_t length() const { return transitions.size(); }
    friend bool operator==(const GraphPath&, const GraphPath&) = default;
};

inline bool path_valid(const Graph& g, const GraphPath& p) {
    if (p.source < 0 || p.source >= static_cast<int>(g.num_states())) return false;
    int cur = p.source;
    for (int t : p.transitions) {
        if (t < 0 || t >= static_cast<int>(g.num_trans())) return false;
        if (g.trans(t).src != cur) return false;
        cur = g.trans(t).dst;
    }
    return true;
}

inline int path_target(const Graph& g, const GraphPath& p) {
    return p.transitions.empty() ? p.source : g.trans(p.transitions.back()).dst;
}

inline Word path_label(const Graph& g, const GraphPath& p) {
    Word w;
    w.reserve(p.transitions.size());
    for (int t : p.transitions) w.push_back(g.trans(t).action);
    return w;
}

inline IntVec path_displacement(const Graph& g, const GraphPath& p) {
    return displacement(g.dim(), path_label(g, p));
}

// Occurrence counts per transition index.
using ParikhImage = std::vector<Int>;

inline ParikhImage parikh(const Graph& g, const GraphPath& p) {
    ParikhImage mu(g.num_trans(), 0);
    for (int t : p.transitions) mu[static_cast<std::size_t>(t)] += 1;
    return mu;
}

// The configuration sequence a path induces; always a run.
inline Run path_run(const Graph& g, const GraphPath& p) {
    auto r = run(g.state(p.source), path_label(g, p));
    if (!r.has_value()) throw Error("path does not replay");  // graphs only hold valid steps
    return *r;
}

inline bool is_cycle(const Graph& g, const GraphPath& p) {
    return path_valid(g, p) && path_target(g, p) == p.source;
}

// Strong connectivity; a single state with no transitions counts.
inline bool is_witness(const Graph& g) {
    std::size_t n = g.num_states();
    auto sweep = [&](bool forward) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        std::size_t cnt = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int t : forward ? g.out(v) : g.in(v)) {
                int w = forward ? g.trans(t).dst : g.trans(t).src;
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    ++cnt;
                    stack.push_back(w);
                }
            }
        }
        return cnt == n;
    };
    return sweep(true) && sweep(false);
}

// Slot-wise projection of states and transitions; merged duplicates collapse.
inline Graph project_graph(const Graph& g, const IndexSet& L) {
    std::vector<Config> states;
    states.reserve(g.num_states());
    for (const Config& s : g.states()) states.push_back(project(s, L));
    std::vector<Graph::TransTriple> ts;
    ts.reserve(g.num_trans());
    for (const Graph::Trans& t : g.transitions())
        ts.emplace_back(project(g.state(t.src), L), t.action, project(g.state(t.dst), L));
    return Graph(std::move(states), ts);
}

// Image of a path of g under projection by L, resolved in the projected graph.
inline GraphPath project_path(const Graph& g, const GraphPath& p, const Graph& pg, const IndexSet& L) {
    GraphPath out;
    out.source = static_cast<int>(*pg.state_index(project(g.state(p.source), L)));
    for (int t : p.transitions) {
        const Graph::Trans& tr = g.trans(t);
        auto src = pg.state_index(project(g.state(tr.src), L));
        auto dst = pg.state_index(project(g.state(tr.dst), L));
        auto id = pg.trans_index(static_cast<int>(*src), tr.action, static_cast<int>(*dst));
        if (!id) throw Error("projected transition missing");
        out.transitions.push_back(*id);
    }
    return out;
}

// Shortest path between two states of a strongly connected graph, by BFS in
// transition order; the empty path when from == to.
inline GraphPath find_path(const Graph& g, int from, int to) {
    if (from == to) return GraphPath{from, {}};
    std::vector<int> parent_trans(g.num_states(), -1);
    std::vector<char> seen(g.num_states(), 0);
    std::queue<int> q;
    q.push(from);
    seen[static_cast<std::size_t>(from)] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int t : g.out(v)) {
            int w = g.trans(t).dst;
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = 1;
            parent_trans[static_cast<std::size_t>(w)] = t;
            if (w == to) {
                std::vector<int> rev;
                int cur = to;
                while (cur != from) {
                    int pt = parent_trans[static_cast<std::size_t>(cur)];
                    rev.push_back(pt);
                    cur = g.trans(pt).src;
                }
                std::reverse(rev.begin(), rev.end());
                return GraphPath{from, std::move(rev)};
            }
            q.push(w);
        }
    }
    throw NoPath("no path between the given states");
}

// All simple cycles, one canonical representative each, anchored at the
// canonically least state they visit. DFS restricted to states at or above
// the anchor yields every vertex-simple cycle exactly once.
inline std::vector<GraphPath> simple_cycles(const Graph& g, std::size_t cap = 1'000'000) {
    std::vector<GraphPath> out;
    std::vector<char> on_path(g.num_states(), 0);
    std::vector<int> trail;

    for (int anchor = 0; anchor < static_cast<int>(g.num_states()); ++anchor) {
        auto dfs = [&](auto&& self, int v) -> void {
            for (int t : g.out(v)) {
                int w = g.trans(t).dst;
                if (w < anchor) continue;
                if (w == anchor) {
                    trail.push_back(t);
                    if (out.size() >= cap) throw CycleCapExceeded("simple cycle cap exceeded");
                    out.push_back(GraphPath{anchor, trail});
                    trail.pop_back();
                } else if (!on_path[static_cast<std::size_t>(w)]) {
                    on_path[static_cast<std::size_t>(w)] = 1;
                    trail.push_back(t);
                    self(self, w);
                    trail.pop_back();
                    on_path[static_cast<std::size_t>(w)] = 0;
                }
            }
        };
        dfs(dfs, anchor);
    }
    return out;
}

}  // namespace vasrev
