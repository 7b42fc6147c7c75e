#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "bounds.hpp"
#include "domains.hpp"
#include "io.hpp"
#include "pumping.hpp"
#include "reversibility.hpp"
#include "shortrun.hpp"

namespace vasrev {
namespace cli {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string word_str(const Word& w) {
    std::string out;
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (j) out += " ";
        out += "(";
        for (std::size_t i = 0; i < w[j].size(); ++i) {
            if (i) out += ",";
            out += std::to_string(w[j][i]);
        }
        out += ")";
    }
    return out;
}

inline std::string index_set_str(const IndexSet& s) {
    std::string out;
    for (int i : s) {
        if (!out.empty()) out += " ";
        out += std::to_string(i + 1);
    }
    return out;
}

inline std::uint64_t default_budget() {
    if (const char* env = std::getenv("VASREV_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 4'000'000;
}

}  // namespace detail

// Exit codes: 0 conclusive, 2 unknown/budget, 1 usage or parse error.
inline int cli_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reversible reachability analysis for vector addition systems"};
    app.name("vasrev");
    app.require_subcommand(1);

    std::string vas_path, graph_path, from_text, to_text, cover_text, target_text, which;
    Int box = 20, s_param = 1, action_index = 1;
    std::uint64_t budget = detail::default_budget();
    Int bd = 1, ba = 0, bp = 0, bdelta = 0, bq = 1, bm = 0;

    auto* check = app.add_subcommand("check", "decide reversible reachability of two configurations");
    check->add_option("--vas", vas_path, "system file")->required();
    check->add_option("--from", from_text, "first configuration")->required();
    check->add_option("--to", to_text, "second configuration")->required();
    check->add_option("--box", box, "largest slot value the search may visit");
    check->add_option("--budget", budget, "node budget for the search");

    auto* kirchhoff = app.add_subcommand("kirchhoff", "bounded Kirchhoff function for a displacement");
    kirchhoff->add_option("--vas", vas_path, "system file")->required();
    kirchhoff->add_option("--graph", graph_path, "graph file")->required();
    kirchhoff->add_option("--target", target_text, "displacement vector")->required();

    auto* reversible = app.add_subcommand("reversible", "reversibility of a witness graph");
    reversible->add_option("--graph", graph_path, "graph file")->required();

    auto* pump = app.add_subcommand("pump", "pumping certificate for small states");
    pump->add_option("--graph", graph_path, "graph file")->required();
    pump->add_option("--s", s_param, "size threshold")->required();

    auto* reduce = app.add_subcommand("reduce", "coverability as reversible reachability");
    reduce->add_option("--vas", vas_path, "system file")->required();
    reduce->add_option("--from", from_text, "start configuration")->required();
    reduce->add_option("--cover", cover_text, "configuration to cover")->required();

    auto* domain = app.add_subcommand("domain", "minimal elements of a reversibility domain");
    domain->add_option("--vas", vas_path, "system file")->required();
    domain->add_option("--action", action_index, "1-based action index")->required();
    domain->add_option("--box", box, "candidate box")->required();

    auto* bound = app.add_subcommand("bound", "exact theoretical bounds");
    bound->add_option("--which", which, "revbound|corollary|domain|kirchhoff")->required();
    bound->add_option("--d", bd, "dimension");
    bound->add_option("--a", ba, "action norm");
    bound->add_option("--p", bp, "configuration norm");
    bound->add_option("--delta", bdelta, "displacement norm");
    bound->add_option("--q", bq, "state count");
    bound->add_option("--m", bm, "target norm");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (check->parsed()) {
            Vas vas = io::parse_vas(detail::read_file(vas_path));
            Config x = io::parse_config(from_text, vas.dim());
            Config y = io::parse_config(to_text, vas.dim());
            SearchBudget sb{box, budget};
            DecideResult r = decide_reversible(vas, x, y, sb);
            switch (r.verdict) {
                case Verdict::yes:
                    out << "verdict: YES\n";
                    out << "forward-length: " << r.certificate->forward.length() << "\n";
                    out << "backward-length: " << r.certificate->backward.length() << "\n";
                    out << io::emit_certificate(*r.certificate);
                    return 0;
                case Verdict::no:
                    out << "verdict: NO\n";
                    return 0;
                case Verdict::unknown:
                    out << "verdict: UNKNOWN\n";
                    out << "reason: " << r.reason << "\n";
                    out << "complete-at: " << r.completeness_bound->str() << "\n";
                    return 2;
            }
        }
        if (kirchhoff->parsed()) {
            Vas vas = io::parse_vas(detail::read_file(vas_path));
            Graph g = io::parse_graph(detail::read_file(graph_path));
            for (const Graph::Trans& t : g.transitions())
                if (!vas.action_index(t.action)) throw Error("graph action missing from the system");
            IntVec z = io::parse_int_vec(target_text, g.dim());
            try {
                Kirchhoff mu = bounded_kirchhoff_for(g, z);
                out << "member: true\n";
                out << "transitions: " << g.num_trans() << "\n";
                for (std::size_t t = 0; t < mu.counts.size(); ++t)
                    out << "mu " << t + 1 << ": " << mu.counts[t] << "\n";
                out << "norm: " << mu.norm_inf() << "\n";
            } catch (const NotInMonoid&) {
                out << "member: false\n";
            }
            Int m = 0;
            for (Int v : z) m = std::max(m, v < 0 ? -v : v);
            out << "bound: "
                << kirchhoff_count_bound(g.num_states(), g.dim(), g.action_norm_inf(), m).get_str()
                << "\n";
            return 0;
        }
        if (reversible->parsed()) {
            Graph g = io::parse_graph(detail::read_file(graph_path));
            if (!is_witness(g)) throw Error("graph is not strongly connected");
            bool rev = is_reversible(g);
            out << "reversible: " << (rev ? "true" : "false") << "\n";
            if (rev) {
                Kirchhoff mu = zero_total_kirchhoff(g);
                out << "transitions: " << g.num_trans() << "\n";
                for (std::size_t t = 0; t < mu.counts.size(); ++t)
                    out << "mu " << t + 1 << ": " << mu.counts[t] << "\n";
                out << "norm: " << mu.norm_inf() << "\n";
                out << "bound: "
                    << reversible_count_bound(g.num_states(), g.dim(), g.action_norm_inf()).get_str()
                    << "\n";
            }
            return 0;
        }
        if (pump->parsed()) {
            Graph g = io::parse_graph(detail::read_file(graph_path));
            PumpCertificate cert = pump_witness(g, s_param);
            out << "J: " << detail::index_set_str(cert.J) << "\n";
            out << "x: " << cert.x.get_str() << "\n";
            out << "projected-states: " << cert.projected.num_states() << "\n";
            out << "entries: " << cert.entries.size() << "\n";
            for (std::size_t i = 0; i < cert.entries.size(); ++i) {
                out << "state " << i + 1 << ": " << io::emit_config(cert.entries[i].state) << "\n";
                out << "forward " << i + 1 << ": "
                    << detail::word_str(path_label(cert.projected, cert.entries[i].forward)) << "\n";
                out << "backward " << i + 1 << ": "
                    << detail::word_str(path_label(cert.projected, cert.entries[i].backward)) << "\n";
            }
            return 0;
        }
        if (reduce->parsed()) {
            Vas vas = io::parse_vas(detail::read_file(vas_path));
            Config x = io::parse_config(from_text, vas.dim());
            Config y = io::parse_config(cover_text, vas.dim());
            CoverReduction red = reduce_coverability(vas, x, y);
            out << io::emit_vas(red.vas);
            out << "source: " << io::emit_config(red.source) << "\n";
            out << "target: " << io::emit_config(red.target) << "\n";
            return 0;
        }
        if (domain->parsed()) {
            Vas vas = io::parse_vas(detail::read_file(vas_path));
            if (action_index < 1 || action_index > static_cast<Int>(vas.size()))
                throw Error("action index out of range");
            const IntVec& a = vas.action(static_cast<std::size_t>(action_index - 1));
            DomainResult r = reversibility_domain_min(vas, a, box);
            out << "action:";
            for (Int v : a) out << " " << v;
            out << "\n";
            out << "box: " << r.box << "\n";
            out << "complete: " << (r.complete ? "true" : "false") << "\n";
            out << "minima: " << r.minima.size() << "\n";
            for (std::size_t i = 0; i < r.minima.size(); ++i) {
                out << "min " << i + 1 << ": " << io::emit_config(r.minima[i].c) << "\n";
                out << "alpha " << i + 1 << ": " << detail::word_str(r.minima[i].alpha) << "\n";
            }
            out << "bound: " << r.bound.str() << "\n";
            return r.complete ? 0 : 2;
        }
        if (bound->parsed()) {
            out << "which: " << which << "\n";
            if (which == "revbound") {
                BoundReport r = bound_report(static_cast<int>(bd), ba, bp, bdelta);
                out << "x: " << r.x.get_str() << "\n";
                out << "bound: " << r.main.str() << "\n";
                out << "u-cycle: " << r.u_cycle.str() << "\n";
                out << "alpha-tilde: " << r.alpha_tilde.str() << "\n";
            } else if (which == "corollary") {
                out << "x: " << corollary_x(ba, bp).get_str() << "\n";
                out << "bound: " << corollary_bound(static_cast<int>(bd), ba, bp).str() << "\n";
            } else if (which == "domain") {
                out << "bound: " << domain_bound_form(static_cast<int>(bd), ba).str() << "\n";
            } else if (which == "kirchhoff") {
                out << "bound: "
                    << kirchhoff_count_bound(static_cast<std::size_t>(bq), static_cast<int>(bd), ba, bm)
                           .get_str()
                    << "\n";
            } else {
                err << "error: unknown bound '" << which << "'\n";
                return 1;
            }
            return 0;
        }
    } catch (const BudgetExceeded& e) {
        err << "unknown: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

}  // namespace cli
}  // namespace vasrev
