#pragma once

#include <optional>
#include <random>

#include <vasrev/vasrev.hpp>

namespace testutil {

using namespace vasrev;

inline Config cfg(const std::string& s) { return io::parse_config(s); }

// The four-state standard witness graph used across the suite and its
// projection by the last two slots.
inline Graph demo_graph() {
    Config a = cfg("1 1 0"), b = cfg("0 2 1"), c = cfg("1 0 1"), d = cfg("0 1 2");
    IntVec up{-1, 1, 1}, down{1, -1, -1}, shift{0, -1, 1}, unshift{0, 1, -1};
    std::vector<Graph::TransTriple> ts{
        {a, up, b}, {b, down, a}, {d, down, c}, {b, shift, d}, {c, unshift, a}};
    return Graph({a, b, c, d}, ts);
}

inline Graph demo_projected() { return project_graph(demo_graph(), IndexSet{1, 2}); }

inline Vas random_vas(std::mt19937& rng, int d, int max_actions, Int a_max,
                      bool with_inverses = false) {
    std::vector<IntVec> actions;
    int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_actions));
    for (int k = 0; k < n; ++k) {
        IntVec a(static_cast<std::size_t>(d));
        bool zero = true;
        for (auto& v : a) {
            v = static_cast<Int>(rng() % static_cast<unsigned>(2 * a_max + 1)) - a_max;
            zero &= v == 0;
        }
        if (zero) continue;
        if (std::find(actions.begin(), actions.end(), a) == actions.end())
            actions.push_back(std::move(a));
    }
    if (with_inverses) {
        std::vector<IntVec> inv;
        for (const IntVec& a : actions) {
            IntVec b(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) b[i] = -a[i];
            if (std::find(actions.begin(), actions.end(), b) == actions.end() &&
                std::find(inv.begin(), inv.end(), b) == inv.end())
                inv.push_back(std::move(b));
        }
        actions.insert(actions.end(), inv.begin(), inv.end());
    }
    if (actions.empty()) {
        IntVec a(static_cast<std::size_t>(d), 0);
        a[0] = 1;
        actions.push_back(std::move(a));
    }
    return Vas(d, std::move(actions));
}

inline Config random_config(std::mt19937& rng, int d, Int max_slot) {
    IntVec v(static_cast<std::size_t>(d));
    for (auto& x : v) x = static_cast<Int>(rng() % static_cast<unsigned>(max_slot + 1));
    return Config::from_ints(v);
}

// Random feasible walk followed by a searched route back to the start; the
// looped run spans a witness graph.
inline std::optional<Run> random_cycle_run(std::mt19937& rng, const Vas& vas, Int max_slot,
                                           int walk_len, Int search_box) {
    Config start = random_config(rng, vas.dim(), max_slot);
    Word walk;
    Config cur = start;
    for (int i = 0; i < walk_len; ++i) {
        std::vector<std::size_t> feasible;
        for (std::size_t a = 0; a < vas.size(); ++a)
            if (cur.plus_action(vas.action(a)).is_config()) feasible.push_back(a);
        if (feasible.empty()) break;
        std::size_t pick = feasible[rng() % feasible.size()];
        walk.push_back(vas.action(pick));
        cur = cur.plus_action(vas.action(pick));
    }
    auto back = vasrev::detail::find_run_bidir(vas, cur.to_ints(), start.to_ints(), search_box,
                                               200'000);
    if (back.out != vasrev::detail::RunSearch::Out::found) return std::nullopt;
    walk.insert(walk.end(), back.word.begin(), back.word.end());
    return run(start, walk);
}

// Witness graph from a random cycle run, optionally projected by a random
// slot subset.
inline std::optional<Graph> random_witness(std::mt19937& rng, int d, Int a_max, Int max_slot,
                                           int walk_len, bool allow_projection) {
    Vas vas = random_vas(rng, d, 4, a_max, true);
    auto cyc = random_cycle_run(rng, vas, max_slot, walk_len, max_slot + 4 * a_max + 4);
    if (!cyc.has_value()) return std::nullopt;
    Graph g = Graph::from_run(*cyc);
    if (allow_projection && rng() % 2 == 0) {
        IndexSet l;
        for (int i = 0; i < d; ++i)
            if (rng() % 3 == 0) l.insert(i);
        g = project_graph(g, l);
    }
    if (!is_witness(g)) return std::nullopt;
    return g;
}

}  // namespace testutil
