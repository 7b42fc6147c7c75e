#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "decide.hpp"
#include "graph.hpp"

namespace vasrev {
namespace io {

namespace detail {

struct Token {
    std::string text;
    int column;  // 1-based
};

struct Line {
    int number;  // 1-based
    std::vector<Token> tokens;
};

// Blank lines and '#' comments are skipped.
inline std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    int number = 0;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++number;
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            if (raw[i] == '#') break;
            std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            line.tokens.push_back(Token{raw.substr(start, i - start), static_cast<int>(start) + 1});
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

inline Int parse_int(const Token& tok, int line) {
    const std::string& s = tok.text;
    std::size_t pos = 0;
    Int value = 0;
    try {
        value = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw ParseError(line, tok.column, "expected an integer, got '" + s + "'");
    }
    if (pos != s.size()) throw ParseError(line, tok.column, "trailing characters in '" + s + "'");
    return value;
}

}  // namespace detail

inline Vas parse_vas(const std::string& text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "expected 'dim <d>'");
    const auto& head = lines.front();
    if (head.tokens[0].text != "dim" || head.tokens.size() != 2)
        throw ParseError(head.number, head.tokens[0].column, "expected 'dim <d>'");
    Int d = detail::parse_int(head.tokens[1], head.number);
    if (d < 1) throw ParseError(head.number, head.tokens[1].column, "dimension must be at least 1");

    std::vector<IntVec> actions;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        if (line.tokens[0].text != "action")
            throw ParseError(line.number, line.tokens[0].column, "expected 'action <z1> ... <zd>'");
        if (line.tokens.size() != static_cast<std::size_t>(d) + 1)
            throw ParseError(line.number, line.tokens[0].column,
                             "action needs exactly " + std::to_string(d) + " entries");
        IntVec a;
        for (std::size_t t = 1; t < line.tokens.size(); ++t)
            a.push_back(detail::parse_int(line.tokens[t], line.number));
        for (const IntVec& prev : actions)
            if (prev == a) throw ParseError(line.number, line.tokens[0].column, "duplicate action");
        actions.push_back(std::move(a));
    }
    return Vas(static_cast<int>(d), std::move(actions));
}

inline std::string emit_vas(const Vas& vas) {
    std::ostringstream out;
    out << "dim " << vas.dim() << "\n";
    for (const IntVec& a : vas.actions()) {
        out << "action";
        for (Int v : a) out << " " << v;
        out << "\n";
    }
    return out.str();
}

// d space-separated tokens, each a natural number or '*'.
inline Config parse_config(const std::string& text, int dim = -1) {
    auto lines = detail::tokenize(text);
    if (lines.size() != 1) throw ParseError(1, 1, "expected one configuration line");
    const auto& line = lines.front();
    std::vector<Slot> slots;
    for (const auto& tok : line.tokens) {
        if (tok.text == "*") {
            slots.emplace_back(std::nullopt);
        } else {
            Int v = detail::parse_int(tok, line.number);
            if (v < 0) throw ParseError(line.number, tok.column, "configuration slots are natural numbers");
            slots.emplace_back(v);
        }
    }
    if (dim >= 0 && static_cast<int>(slots.size()) != dim)
        throw ParseError(line.number, 1,
                         "expected " + std::to_string(dim) + " slots, got " + std::to_string(slots.size()));
    return Config(std::move(slots));
}

inline std::string emit_config(const Config& c) {
    std::string out;
    for (int i = 0; i < c.dim(); ++i) {
        if (i) out += " ";
        out += c.is_star(i) ? "*" : std::to_string(*c.slot(i));
    }
    return out;
}

inline IntVec parse_int_vec(const std::string& text, int dim = -1) {
    auto lines = detail::tokenize(text);
    if (lines.size() != 1) throw ParseError(1, 1, "expected one vector line");
    const auto& line = lines.front();
    IntVec v;
    for (const auto& tok : line.tokens) v.push_back(detail::parse_int(tok, line.number));
    if (dim >= 0 && static_cast<int>(v.size()) != dim)
        throw ParseError(line.number, 1, "expected " + std::to_string(dim) + " entries");
    return v;
}

// Graph files carry their own action table; states and transitions reference
// it by 1-based indices, so configurations are parsed once.
inline Graph parse_graph(const std::string& text) {
    auto lines = detail::tokenize(text);
    if (lines.empty()) throw ParseError(1, 1, "expected 'dim <d>'");
    const auto& head = lines.front();
    if (head.tokens[0].text != "dim" || head.tokens.size() != 2)
        throw ParseError(head.number, head.tokens[0].column, "expected 'dim <d>'");
    Int d = detail::parse_int(head.tokens[1], head.number);
    if (d < 1) throw ParseError(head.number, head.tokens[1].column, "dimension must be at least 1");

    std::vector<IntVec> actions;
    std::vector<Config> states;
    std::vector<Graph::TransTriple> triples;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        const std::string& kind = line.tokens[0].text;
        if (kind == "action") {
            if (line.tokens.size() != static_cast<std::size_t>(d) + 1)
                throw ParseError(line.number, line.tokens[0].column,
                                 "action needs exactly " + std::to_string(d) + " entries");
            IntVec a;
            for (std::size_t t = 1; t < line.tokens.size(); ++t)
                a.push_back(detail::parse_int(line.tokens[t], line.number));
            actions.push_back(std::move(a));
        } else if (kind == "state") {
            if (line.tokens.size() != static_cast<std::size_t>(d) + 1)
                throw ParseError(line.number, line.tokens[0].column,
                                 "state needs exactly " + std::to_string(d) + " slots");
            std::vector<Slot> slots;
            for (std::size_t t = 1; t < line.tokens.size(); ++t) {
                if (line.tokens[t].text == "*") {
                    slots.emplace_back(std::nullopt);
                } else {
                    Int v = detail::parse_int(line.tokens[t], line.number);
                    if (v < 0)
                        throw ParseError(line.number, line.tokens[t].column,
                                         "state slots are natural numbers");
                    slots.emplace_back(v);
                }
            }
            states.emplace_back(std::move(slots));
        } else if (kind == "trans") {
            if (line.tokens.size() != 4)
                throw ParseError(line.number, line.tokens[0].column,
                                 "expected 'trans <src> <action> <dst>'");
            Int si = detail::parse_int(line.tokens[1], line.number);
            Int ai = detail::parse_int(line.tokens[2], line.number);
            Int di = detail::parse_int(line.tokens[3], line.number);
            if (si < 1 || si > static_cast<Int>(states.size()))
                throw ParseError(line.number, line.tokens[1].column, "state index out of range");
            if (ai < 1 || ai > static_cast<Int>(actions.size()))
                throw ParseError(line.number, line.tokens[2].column, "action index out of range");
            if (di < 1 || di > static_cast<Int>(states.size()))
                throw ParseError(line.number, line.tokens[3].column, "state index out of range");
            triples.emplace_back(states[static_cast<std::size_t>(si - 1)],
                                 actions[static_cast<std::size_t>(ai - 1)],
                                 states[static_cast<std::size_t>(di - 1)]);
            for (std::size_t k = 0; k + 1 < triples.size(); ++k)
                if (triples[k] == triples.back())
                    throw ParseError(line.number, line.tokens[0].column, "duplicate transition");
        } else {
            throw ParseError(line.number, line.tokens[0].column,
                             "expected 'action', 'state' or 'trans'");
        }
    }
    if (states.empty()) throw ParseError(lines.back().number, 1, "graph needs at least one state");
    try {
        return Graph(std::move(states), triples);
    } catch (const Error& e) {
        throw ParseError(lines.back().number, 1, e.what());
    }
}

inline std::string emit_graph(const Graph& g) {
    std::vector<IntVec> actions;
    for (const Graph::Trans& t : g.transitions())
        if (std::find(actions.begin(), actions.end(), t.action) == actions.end())
            actions.push_back(t.action);
    std::sort(actions.begin(), actions.end());

    std::ostringstream out;
    out << "dim " << g.dim() << "\n";
    for (const IntVec& a : actions) {
        out << "action";
        for (Int v : a) out << " " << v;
        out << "\n";
    }
    for (const Config& s : g.states()) out << "state " << emit_config(s) << "\n";
    for (const Graph::Trans& t : g.transitions()) {
        auto ai = std::find(actions.begin(), actions.end(), t.action) - actions.begin();
        out << "trans " << t.src + 1 << " " << ai + 1 << " " << t.dst + 1 << "\n";
    }
    return out.str();
}

// Certificates interleave configuration lines with '>'-prefixed action lines,
// under FORWARD / BACKWARD section headers.
inline std::string emit_certificate(const Certificate& cert) {
    std::ostringstream out;
    auto section = [&](const char* name, const Run& r) {
        out << name << "\n";
        out << emit_config(r.configs[0]) << "\n";
        for (std::size_t j = 0; j < r.word.size(); ++j) {
            out << ">";
            for (Int v : r.word[j]) out << " " << v;
            out << "\n" << emit_config(r.configs[j + 1]) << "\n";
        }
    };
    section("FORWARD", cert.forward);
    section("BACKWARD", cert.backward);
    return out.str();
}

inline Certificate parse_certificate(const std::string& text) {
    auto lines = detail::tokenize(text);
    std::vector<Run> runs;
    int section_line = 1;
    std::size_t li = 0;
    auto parse_slot_line = [&](const detail::Line& line) {
        std::vector<Slot> slots;
        for (const auto& tok : line.tokens) {
            if (tok.text == "*") {
                slots.emplace_back(std::nullopt);
            } else {
                Int v = detail::parse_int(tok, line.number);
                if (v < 0) throw ParseError(line.number, tok.column, "slots are natural numbers");
                slots.emplace_back(v);
            }
        }
        return Config(std::move(slots));
    };
    for (const char* name : {"FORWARD", "BACKWARD"}) {
        if (li >= lines.size() || lines[li].tokens[0].text != name)
            throw ParseError(li < lines.size() ? lines[li].number : section_line, 1,
                             std::string("expected section ") + name);
        section_line = lines[li].number;
        ++li;
        if (li >= lines.size() || lines[li].tokens[0].text == ">")
            throw ParseError(section_line, 1, "section needs an initial configuration");
        Run r;
        r.configs.push_back(parse_slot_line(lines[li]));
        ++li;
        while (li < lines.size() && lines[li].tokens[0].text == ">") {
            const auto& aline = lines[li];
            IntVec a;
            for (std::size_t t = 1; t < aline.tokens.size(); ++t)
                a.push_back(detail::parse_int(aline.tokens[t], aline.number));
            ++li;
            if (li >= lines.size() || lines[li].tokens[0].text == ">" ||
                lines[li].tokens[0].text == "BACKWARD")
                throw ParseError(aline.number, 1, "action line must be followed by a configuration");
            r.word.push_back(std::move(a));
            r.configs.push_back(parse_slot_line(lines[li]));
            ++li;
        }
        if (!run_valid(r)) throw ParseError(section_line, 1, "section does not replay as a run");
        runs.push_back(std::move(r));
    }
    if (li != lines.size()) throw ParseError(lines[li].number, 1, "trailing content after BACKWARD");
    Certificate cert{std::move(runs[0]), std::move(runs[1])};
    if (!certificate_valid(cert))
        throw ParseError(section_line, 1, "certificate runs do not close a zero-displacement loop");
    return cert;
}

}  // namespace io
}  // namespace vasrev
