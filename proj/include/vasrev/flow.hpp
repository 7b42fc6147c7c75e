#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "bigint.hpp"
#include "graph.hpp"

namespace vasrev {

// Transition-count assignment over a host graph.
struct Kirchhoff {
    std::vector<Int> counts;

    bool total() const {
        return std::all_of(counts.begin(), counts.end(), [](Int c) { return c >= 1; });
    }
    Int norm_inf() const {
        Int m = 0;
        for (Int c : counts) m = std::max(m, c);
        return m;
    }
};

// Balanced in/out flow at every state.
inline bool is_kirchhoff(const Graph& g, const std::vector<Int>& counts) {
    if (counts.size() != g.num_trans())
        throw PreconditionFailed("counts must assign exactly the transitions of the graph");
    for (Int c : counts)
        if (c < 0) throw PreconditionFailed("counts must be natural numbers");
    for (int s = 0; s < static_cast<int>(g.num_states()); ++s) {
        Int in = 0, out = 0;
        for (int t : g.in(s)) in = checked_add(in, counts[static_cast<std::size_t>(t)]);
        for (int t : g.out(s)) out = checked_add(out, counts[static_cast<std::size_t>(t)]);
        if (in != out) return false;
    }
    return true;
}

inline IntVec counts_displacement(const Graph& g, const std::vector<Int>& counts) {
    IntVec z(static_cast<std::size_t>(g.dim()), 0);
    for (std::size_t t = 0; t < counts.size(); ++t) {
        const IntVec& a = g.trans(static_cast<int>(t)).action;
        for (std::size_t i = 0; i < z.size(); ++i)
            z[i] = checked_add(z[i], checked_mul(counts[t], a[i]));
    }
    return z;
}

namespace detail {

// Eulerian circuit (Hierholzer) over the multigraph with counts[e] copies of
// each edge. Returns edge indices; the caller guarantees balance and that the
// support plus start is connected.
inline std::vector<int> eulerian_circuit(std::size_t num_states,
                                         const std::vector<std::pair<int, int>>& edges,
                                         std::vector<Int> counts, int start) {
    Int total = std::accumulate(counts.begin(), counts.end(), Int{0});
    std::vector<int> circuit;
    if (total == 0) return circuit;
    if (total > 100'000'000) throw BudgetExceeded("eulerian circuit too long to materialize");
    circuit.reserve(static_cast<std::size_t>(total));

    std::vector<std::vector<int>> out(num_states);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        if (counts[static_cast<std::size_t>(e)] > 0)
            out[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].first)].push_back(e);
    std::vector<std::size_t> cursor(num_states, 0);

    std::vector<std::pair<int, int>> stack;  // (state, edge taken to get here)
    stack.emplace_back(start, -1);
    while (!stack.empty()) {
        auto [v, via] = stack.back();
        auto& cur = cursor[static_cast<std::size_t>(v)];
        const auto& adj = out[static_cast<std::size_t>(v)];
        while (cur < adj.size() && counts[static_cast<std::size_t>(adj[cur])] == 0) ++cur;
        if (cur < adj.size()) {
            int e = adj[cur];
            --counts[static_cast<std::size_t>(e)];
            stack.emplace_back(edges[static_cast<std::size_t>(e)].second, e);
        } else {
            stack.pop_back();
            if (via >= 0) circuit.push_back(via);
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    if (static_cast<Int>(circuit.size()) != total)
        throw NotKirchhoff("count support is not connected to the start state");
    return circuit;
}

}  // namespace detail

// Decomposition of a Kirchhoff function into cycles whose Parikh images sum
// to it exactly. Cycles repeat according to their multiplicity.
inline std::vector<GraphPath> euler_decompose(const Graph& g, const std::vector<Int>& mu) {
    if (!is_kirchhoff(g, mu)) throw NotKirchhoff("counts are not flow-balanced");
    std::vector<Int> rem = mu;
    std::vector<GraphPath> out;
    std::size_t emitted = 0;
    for (;;) {
        int seed = -1;
        for (std::size_t t = 0; t < rem.size(); ++t)
            if (rem[t] > 0) {
                seed = static_cast<int>(t);
                break;
            }
        if (seed < 0) break;

        // Walk the remaining support until a state repeats; balance keeps the
        // walk extendable from any entered state.
        std::vector<int> walk;
        std::vector<int> pos_of_state(g.num_states(), -1);
        int cur = g.trans(seed).src;
        pos_of_state[static_cast<std::size_t>(cur)] = 0;
        for (;;) {
            int step = -1;
            for (int t : g.out(cur))
                if (rem[static_cast<std::size_t>(t)] > 0) {
                    step = t;
                    break;
                }
            if (step < 0) throw Error("flow balance violated during decomposition");
            walk.push_back(step);
            cur = g.trans(step).dst;
            int& seen_at = pos_of_state[static_cast<std::size_t>(cur)];
            if (seen_at >= 0) {
                std::vector<int> cyc(walk.begin() + seen_at, walk.end());
                Int k = rem[static_cast<std::size_t>(cyc.front())];
                for (int t : cyc) k = std::min(k, rem[static_cast<std::size_t>(t)]);
                for (int t : cyc) rem[static_cast<std::size_t>(t)] -= k;
                emitted += static_cast<std::size_t>(k);
                if (emitted > 1'000'000) throw BudgetExceeded("decomposition expansion too large");
                for (Int i = 0; i < k; ++i) out.push_back(GraphPath{cur, cyc});
                break;
            }
            seen_at = static_cast<int>(walk.size());
        }
    }
    return out;
}

// A total cycle through start whose Parikh image equals the given total
// Kirchhoff function; the graph must be strongly connected.
inline GraphPath euler_total_cycle(const Graph& g, const std::vector<Int>& mu, int start) {
    if (!is_kirchhoff(g, mu)) throw NotKirchhoff("counts are not flow-balanced");
    Kirchhoff k{mu};
    if (!k.total()) throw PreconditionFailed("counts are not total");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.num_trans());
    for (const Graph::Trans& t : g.transitions()) edges.emplace_back(t.src, t.dst);
    return GraphPath{start, detail::eulerian_circuit(g.num_states(), edges, mu, start)};
}

// Homogeneous linear Diophantine system H v = 0, solved over the naturals.
struct DioSystem {
    std::vector<IntVec> rows;  // d rows of n entries each

    DioSystem() = default;
    explicit DioSystem(std::vector<IntVec> r) : rows(std::move(r)) {
        for (const IntVec& row : rows)
            if (row.size() != rows.front().size())
                throw PreconditionFailed("matrix rows have different lengths");
    }

    std::size_t num_rows() const { return rows.size(); }
    std::size_t num_cols() const { return rows.empty() ? 0 : rows.front().size(); }

    Int norm_1_inf() const {
        Int m = 0;
        for (const IntVec& row : rows) {
            Int s = 0;
            for (Int v : row) s = checked_add(s, v < 0 ? -v : v);
            m = std::max(m, s);
        }
        return m;
    }

    // Exact rank by fraction-free Gaussian elimination.
    int rank() const {
        std::vector<std::vector<BigInt>> m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            m[i].assign(rows[i].begin(), rows[i].end());
        std::size_t r = 0;
        for (std::size_t c = 0; c < num_cols() && r < m.size(); ++c) {
            std::size_t pivot = r;
            while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
            if (pivot == m.size()) continue;
            std::swap(m[r], m[pivot]);
            for (std::size_t i = r + 1; i < m.size(); ++i) {
                if (m[i][c] == 0) continue;
                BigInt f = m[i][c], p = m[r][c];
                for (std::size_t j = c; j < num_cols(); ++j) m[i][j] = m[i][j] * p - m[r][j] * f;
            }
            ++r;
        }
        return static_cast<int>(r);
    }
};

// (1 + ||H||_{1,inf})^rank: every minimal solution v satisfies ||v||_1 below it.
inline BigInt pottier_bound(const DioSystem& h) {
    return big_pow(BigInt(1) + BigInt(h.norm_1_inf()), static_cast<unsigned long>(h.rank()));
}

struct MinSolveOptions {
    std::uint64_t max_nodes = 2'000'000;
};

// Minimal non-zero natural solutions of H v = 0 (Contejean-Devie frontier
// completion). A frontier vector v is extended by e_j only when
// <Hv, He_j> < 0, which preserves completeness; candidates dominated by a
// found solution are pruned, and levels beyond the Pottier bound cannot hold
// minimal solutions.
inline std::vector<IntVec> min_solutions(const DioSystem& h, MinSolveOptions opt = {}) {
    std::size_t n = h.num_cols();
    std::size_t d = h.num_rows();
    std::vector<IntVec> basis;
    if (n == 0) return basis;

    std::vector<IntVec> cols(n, IntVec(d, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) cols[j][i] = h.rows[i][j];

    BigInt level_cap = pottier_bound(h);
    auto dominated = [&](const IntVec& v) {
        for (const IntVec& b : basis) {
            bool le = true;
            for (std::size_t j = 0; j < n; ++j)
                if (b[j] > v[j]) {
                    le = false;
                    break;
                }
            if (le) return true;
        }
        return false;
    };

    std::map<IntVec, IntVec> frontier;  // v -> Hv
    for (std::size_t j = 0; j < n; ++j) {
        IntVec v(n, 0);
        v[j] = 1;
        frontier.emplace(std::move(v), cols[j]);
    }

    std::uint64_t nodes = 0;
    for (BigInt level = 1; !frontier.empty() && level <= level_cap; ++level) {
        std::map<IntVec, IntVec> next;
        for (const auto& [v, hv] : frontier) {
            if (++nodes > opt.max_nodes)
                throw BudgetExceeded("min_solutions: work budget exceeded after " +
                                     std::to_string(nodes) + " nodes");
            bool zero = std::all_of(hv.begin(), hv.end(), [](Int x) { return x == 0; });
            if (zero) {
                if (!dominated(v)) basis.push_back(v);
                continue;
            }
            if (dominated(v)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                Int dot = 0;
                for (std::size_t i = 0; i < d; ++i)
                    dot = checked_add(dot, checked_mul(hv[i], cols[j][i]));
                if (dot >= 0) continue;
                IntVec v2 = v;
                ++v2[j];
                if (dominated(v2)) continue;
                if (next.count(v2)) continue;
                IntVec hv2 = hv;
                for (std::size_t i = 0; i < d; ++i) hv2[i] = checked_add(hv2[i], cols[j][i]);
                next.emplace(std::move(v2), std::move(hv2));
            }
        }
        frontier = std::move(next);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

// The distinct non-zero displacements of simple cycles, each with one
// realizing cycle (first in canonical cycle order).
struct CycleBasis {
    std::vector<GraphPath> cycles;
    std::vector<IntVec> displacements;
};

inline CycleBasis cycle_basis(const Graph& g, std::size_t cycle_cap = 1'000'000) {
    CycleBasis b;
    for (const GraphPath& c : simple_cycles(g, cycle_cap)) {
        IntVec z = path_displacement(g, c);
        if (std::all_of(z.begin(), z.end(), [](Int x) { return x == 0; })) continue;
        if (std::find(b.displacements.begin(), b.displacements.end(), z) != b.displacements.end())
            continue;
        b.cycles.push_back(c);
        b.displacements.push_back(z);
    }
    return b;
}

namespace detail {

// Minimal solutions of [z_1 ... z_k | -z] v = 0 restricted to v(n) = 1; empty
// when z is not a finite sum of the z_j.
inline std::vector<IntVec> monoid_solutions(const std::vector<IntVec>& zs, const IntVec& z,
                                            MinSolveOptions opt) {
    std::size_t d = z.size();
    std::size_t k = zs.size();
    std::vector<IntVec> rows(d, IntVec(k + 1, 0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < k; ++j) rows[i][j] = zs[j][i];
        rows[i][k] = -z[i];
    }
    std::vector<IntVec> picked;
    for (const IntVec& v : min_solutions(DioSystem(std::move(rows)), opt))
        if (v[k] == 1) picked.push_back(v);
    return picked;
}

}  // namespace detail

// Membership in the displacement monoid Z_G: z is a finite sum of
// simple-cycle displacements, equivalently the displacement of a Kirchhoff
// function.
inline bool monoid_member(const Graph& g, const IntVec& z, MinSolveOptions opt = {},
                          std::size_t cycle_cap = 1'000'000) {
    if (static_cast<int>(z.size()) != g.dim()) throw DimensionMismatch("vector dimension");
    if (std::all_of(z.begin(), z.end(), [](Int x) { return x == 0; })) return true;
    CycleBasis b = cycle_basis(g, cycle_cap);
    return !detail::monoid_solutions(b.displacements, z, opt).empty();
}

// (q^{d+1} a (1+2a)^d + m)^d with q = |states|, a = action norm, m = ||z||.
inline BigInt kirchhoff_count_bound(std::size_t q, int d, Int a, Int m) {
    BigInt inner = big_pow(BigInt(static_cast<unsigned long>(q)), static_cast<unsigned long>(d + 1));
    inner *= a;
    inner *= big_pow(BigInt(1 + 2 * a), static_cast<unsigned long>(d));
    inner += m;
    return big_pow(inner, static_cast<unsigned long>(d));
}

// A Kirchhoff function with displacement z whose max count respects the
// kirchhoff_count_bound. Built from the simple-cycle displacement system: the
// lexicographically least minimal solution with unit last coordinate is
// expanded back through the realizing cycles.
inline Kirchhoff bounded_kirchhoff_for(const Graph& g, const IntVec& z, MinSolveOptions opt = {},
                                       std::size_t cycle_cap = 1'000'000) {
    if (static_cast<int>(z.size()) != g.dim()) throw DimensionMismatch("vector dimension");
    Kirchhoff mu{std::vector<Int>(g.num_trans(), 0)};
    bool zero = std::all_of(z.begin(), z.end(), [](Int x) { return x == 0; });
    if (!zero) {
        CycleBasis b = cycle_basis(g, cycle_cap);
        auto sols = detail::monoid_solutions(b.displacements, z, opt);
        if (sols.empty()) throw NotInMonoid("vector is not a displacement of the graph");
        const IntVec& v = *std::min_element(sols.begin(), sols.end());
        for (std::size_t j = 0; j < b.cycles.size(); ++j) {
            if (v[j] == 0) continue;
            for (int t : b.cycles[j].transitions)
                mu.counts[static_cast<std::size_t>(t)] =
                    checked_add(mu.counts[static_cast<std::size_t>(t)], v[j]);
        }
    }
    if (counts_displacement(g, mu.counts) != z) throw Error("kirchhoff displacement mismatch");
    Int m = 0;
    for (Int x : z) m = std::max(m, x < 0 ? -x : x);
    BigInt bound = kirchhoff_count_bound(g.num_states(), g.dim(), g.action_norm_inf(), m);
    if (BigInt(mu.norm_inf()) > bound) throw Error("kirchhoff count bound violated");
    return mu;
}

}  // namespace vasrev
