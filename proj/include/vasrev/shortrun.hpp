#pragma once

#include <cstdint>
#include <optional>

#include "bounds.hpp"
#include "decide.hpp"
#include "flow.hpp"
#include "pumping.hpp"
#include "reversibility.hpp"

namespace vasrev {

// Compact word representation: indices into the action table of a Vas.
using IndexWord = std::vector<std::uint32_t>;

inline Word expand_word(const Vas& vas, const IndexWord& w) {
    Word out;
    out.reserve(w.size());
    for (auto i : w) out.push_back(vas.action(i));
    return out;
}

inline std::optional<Config> replay_indexed(const Vas& vas, const Config& start, const IndexWord& w) {
    if (!start.is_config()) throw PreconditionFailed("start is not a configuration");
    Config c = start;
    for (auto i : w) {
        c = c.plus_action(vas.action(i));
        if (!c.is_config()) return std::nullopt;
    }
    return c;
}

struct ShortRunOptions {
    MinSolveOptions solver;
    std::size_t cycle_cap = 1'000'000;
    std::uint64_t max_length = 20'000'000;  // materialization guard for the result word
};

struct ShortRunResult {
    IndexWord alpha_prime;
    IndexSet J;
    Word v, w, u, alpha_tilde;
    long long n = 0;          // pump repetition count: a * max(|alpha_tilde|, |u|)
    Int multiplier = 0;       // least m with m*mu - mu_v - mu_w total
    BigInt paper_multiplier;  // the proof's fixed multiplier 1 + 2 d x^{d^d}
    Int s = 0;
    BigInt x;  // (1 + 2a) s
    BigPower length_bound;
};

namespace detail {

inline IndexWord to_indices(const Vas& vas, const Word& w, const char* stage) {
    IndexWord out;
    out.reserve(w.size());
    for (const IntVec& a : w) {
        auto i = vas.action_index(a);
        if (!i) throw PipelineError(stage, "word uses an action outside the system");
        out.push_back(static_cast<std::uint32_t>(*i));
    }
    return out;
}

}  // namespace detail

// Rebuilds a reversible word with the same displacement from the proof
// pipeline, using actually computed quantities throughout: witness graph of
// the looped run, pumping cycles v/w, a balancing total cycle u with
// displacement -(v+w), a displacement-matching path alpha~, then the
// composition v^n alpha~ u^n w^n with n = a*max(|alpha~|, |u|). Every stage
// re-checks its own postcondition and the final word is replay-verified and
// measured against the exact length bound.
inline ShortRunResult synthesize_short_run(const Vas& vas, const Certificate& witness,
                                           ShortRunOptions opt = {}) {
    // witness
    if (!certificate_valid(witness)) throw PipelineError("witness", "certificate does not replay");
    const Config& p = witness.forward.first();
    const Config& q = witness.forward.last();
    if (p.dim() != vas.dim()) throw PipelineError("witness", "dimension mismatch");
    detail::to_indices(vas, witness.forward.word, "witness");
    detail::to_indices(vas, witness.backward.word, "witness");
    IntVec alpha_disp = displacement(vas.dim(), witness.forward.word);

    // graph: the looped run spans a reversible witness graph with a total cycle
    Run loop;
    loop.configs = witness.forward.configs;
    loop.configs.insert(loop.configs.end(), witness.backward.configs.begin() + 1,
                        witness.backward.configs.end());
    loop.word = witness.forward.word;
    loop.word.insert(loop.word.end(), witness.backward.word.begin(), witness.backward.word.end());
    Graph g = Graph::from_run(loop);
    if (!is_witness(g)) throw PipelineError("graph", "looped run is not strongly connected");

    // pump
    Int a = vas.norm_inf();
    Int delta_norm = 0;
    for (Int e : alpha_disp) delta_norm = std::max(delta_norm, e < 0 ? -e : e);
    Int s = checked_add(checked_add(1, p.norm_inf()), delta_norm);
    BigInt x = BigInt(1 + 2 * a) * BigInt(s);
    PumpCertificate pump = pump_witness(g, s, x);
    const Graph& pg = pump.projected;
    const PumpEntry* entry_p = nullptr;
    const PumpEntry* entry_q = nullptr;
    for (const PumpEntry& e : pump.entries) {
        if (e.state == p) entry_p = &e;
        if (e.state == q) entry_q = &e;
    }
    if (!entry_p || !entry_q) throw PipelineError("pump", "endpoint not covered by the certificate");
    Word v_word = path_label(pg, entry_p->forward);
    Word w_word = path_label(pg, entry_q->backward);

    // kirchhoff: zero-displacement total Kirchhoff function of the projected graph
    Kirchhoff mu = zero_total_kirchhoff(pg, opt.solver, opt.cycle_cap);
    BigPower mu_cap{BigInt(1), x, BigInt(4) * dim_tower(g.dim())};
    if (!mu_cap.at_least(BigInt(mu.norm_inf())))
        throw PipelineError("kirchhoff", "x^{4d^{d+2}} count bound violated");

    // ucycle: total cycle at pi_J(q) cancelling v and w
    auto proj_idx = [&](const Config& c) {
        auto i = pg.state_index(project(c, pump.J));
        if (!i) throw PipelineError("ucycle", "projected endpoint is not a state");
        return static_cast<int>(*i);
    };
    int pq_idx = proj_idx(q);
    int pp_idx = proj_idx(p);
    ParikhImage mu_v = parikh(pg, entry_p->forward);
    ParikhImage mu_w = parikh(pg, entry_q->backward);
    Int m = 1;
    for (std::size_t t = 0; t < pg.num_trans(); ++t) {
        Int need = checked_add(checked_add(mu_v[t], mu_w[t]), 1);
        Int quot = (need + mu.counts[t] - 1) / mu.counts[t];  // mu is total, counts >= 1
        m = std::max(m, quot);
    }
    BigInt paper_multiplier =
        BigInt(1) + BigInt(2) * g.dim() * big_pow(x, big_pow(BigInt(g.dim()), static_cast<unsigned long>(g.dim())));
    std::vector<Int> lambda_u(pg.num_trans());
    for (std::size_t t = 0; t < pg.num_trans(); ++t) {
        lambda_u[t] = checked_mul(m, mu.counts[t]) - mu_v[t] - mu_w[t];
        if (lambda_u[t] < 1) throw PipelineError("ucycle", "balancing counts not total");
    }
    GraphPath u_cycle{pq_idx, {}};
    if (pg.num_trans() > 0) u_cycle = euler_total_cycle(pg, lambda_u, pq_idx);
    Word u_word = path_label(pg, u_cycle);
    IntVec vuw = displacement(g.dim(), v_word);
    for (const Word* piece : {&u_word, &w_word})
        for (const IntVec& act : *piece)
            for (std::size_t i = 0; i < vuw.size(); ++i)
                vuw[i] = checked_add(vuw[i], act[i]);
    if (std::any_of(vuw.begin(), vuw.end(), [](Int e) { return e != 0; }))
        throw PipelineError("ucycle", "v, u, w displacements do not cancel");
    if (!ucycle_bound(g.dim(), x).at_least(BigInt(static_cast<long>(u_word.size()))))
        throw PipelineError("ucycle", "length bound violated");

    // alphatilde: displacement-matching path pi_J(p) -> pi_J(q) from the
    // extra-transition construction
    GraphPath beta_tilde = find_path(pg, pq_idx, pp_idx);
    GraphPath alpha_in_pg = detail::resolve_projected(g, pg, pump.J,
                                                      static_cast<int>(*g.state_index(p)),
                                                      witness.forward.word);
    if (path_target(pg, alpha_in_pg) != pq_idx)
        throw PipelineError("alphatilde", "projected witness word misses its endpoint");
    IntVec z = path_displacement(pg, alpha_in_pg);
    {
        IntVec bd = path_displacement(pg, beta_tilde);
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = checked_add(z[i], bd[i]);
    }
    Kirchhoff theta = bounded_kirchhoff_for(pg, z, opt.solver, opt.cycle_cap);
    if (!mu_cap.at_least(BigInt(theta.norm_inf())))
        throw PipelineError("alphatilde", "x^{4d^{d+2}} count bound violated");
    ParikhImage f = parikh(pg, beta_tilde);
    Int big_m = 0;
    for (std::size_t t = 0; t < pg.num_trans(); ++t) {
        Int deficit = checked_add(f[t] - theta.counts[t], 1);
        if (deficit > 0) big_m = std::max(big_m, (deficit + mu.counts[t] - 1) / mu.counts[t]);
    }
    std::vector<std::pair<int, int>> edges;
    std::vector<Int> counts;
    for (std::size_t t = 0; t < pg.num_trans(); ++t) {
        edges.emplace_back(pg.trans(static_cast<int>(t)).src, pg.trans(static_cast<int>(t)).dst);
        counts.push_back(checked_add(theta.counts[t], checked_mul(big_m, mu.counts[t])) - f[t]);
        if (counts.back() < 1) throw PipelineError("alphatilde", "augmented counts not total");
    }
    int bullet = static_cast<int>(edges.size());
    edges.emplace_back(pq_idx, pp_idx);
    counts.push_back(1);
    std::vector<int> circuit = detail::eulerian_circuit(pg.num_states(), edges, counts, pq_idx);
    auto bullet_at = std::find(circuit.begin(), circuit.end(), bullet);
    if (bullet_at == circuit.end()) throw PipelineError("alphatilde", "extra transition unused");
    std::vector<int> rotated(bullet_at + 1, circuit.end());
    rotated.insert(rotated.end(), circuit.begin(), bullet_at);
    GraphPath alpha_tilde{pp_idx, std::move(rotated)};
    if (!path_valid(pg, alpha_tilde) || path_target(pg, alpha_tilde) != pq_idx)
        throw PipelineError("alphatilde", "rotated circuit is not a path to the endpoint");
    if (path_displacement(pg, alpha_tilde) != alpha_disp)
        throw PipelineError("alphatilde", "displacement mismatch");
    Word alpha_tilde_word = path_label(pg, alpha_tilde);
    if (!alpha_tilde_bound(g.dim(), x).at_least(BigInt(static_cast<long>(alpha_tilde_word.size()))))
        throw PipelineError("alphatilde", "length bound violated");

    // compose: alpha' = v^n alpha~ u^n w^n
    long long n = checked_mul(a, static_cast<Int>(std::max(alpha_tilde_word.size(), u_word.size())));
    std::uint64_t predicted =
        static_cast<std::uint64_t>(n) * (v_word.size() + u_word.size() + w_word.size()) +
        alpha_tilde_word.size();
    if (predicted > opt.max_length)
        throw BudgetExceeded("short run of length " + std::to_string(predicted) +
                             " exceeds the materialization guard");
    ShortRunResult out;
    out.J = pump.J;
    out.v = std::move(v_word);
    out.w = std::move(w_word);
    out.u = std::move(u_word);
    out.alpha_tilde = std::move(alpha_tilde_word);
    out.n = n;
    out.multiplier = m;
    out.paper_multiplier = std::move(paper_multiplier);
    out.s = s;
    out.x = x;
    out.length_bound = revbound_main(g.dim(), x);

    IndexWord vi = detail::to_indices(vas, out.v, "compose");
    IndexWord ui = detail::to_indices(vas, out.u, "compose");
    IndexWord wi = detail::to_indices(vas, out.w, "compose");
    IndexWord ti = detail::to_indices(vas, out.alpha_tilde, "compose");
    out.alpha_prime.reserve(predicted);
    for (long long i = 0; i < n; ++i) out.alpha_prime.insert(out.alpha_prime.end(), vi.begin(), vi.end());
    out.alpha_prime.insert(out.alpha_prime.end(), ti.begin(), ti.end());
    for (long long i = 0; i < n; ++i) out.alpha_prime.insert(out.alpha_prime.end(), ui.begin(), ui.end());
    for (long long i = 0; i < n; ++i) out.alpha_prime.insert(out.alpha_prime.end(), wi.begin(), wi.end());

    auto end = replay_indexed(vas, p, out.alpha_prime);
    if (!end.has_value() || !(*end == q)) throw PipelineError("compose", "composed word does not replay to the endpoint");
    IntVec final_disp(static_cast<std::size_t>(vas.dim()), 0);
    for (auto i : out.alpha_prime) {
        const IntVec& act = vas.action(i);
        for (std::size_t k = 0; k < final_disp.size(); ++k)
            final_disp[k] = checked_add(final_disp[k], act[k]);
    }
    if (final_disp != alpha_disp) throw PipelineError("compose", "displacement mismatch");
    if (!out.length_bound.at_least(BigInt(static_cast<unsigned long>(out.alpha_prime.size()))))
        throw PipelineError("compose", "length bound violated");
    return out;
}

}  // namespace vasrev
