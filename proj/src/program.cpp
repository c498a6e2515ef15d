#include "guicheck/program.hpp"

#include <algorithm>
#include <sstream>

namespace guicheck {

LoopProgram build_message_loop(const AppSpec& app, const Eefg& g) {
    for (const EventId& e : g.alphabet)
        if (!app.has_event(e))
            throw Error("alphabet mismatch: event " + e + " has no handler in the application");

    LoopProgram p;
    p.blocks.push_back({"START", "", "", {}});
    p.blocks.push_back({"EXIT", "", "", {}});

    for (const auto& [loc, event] : g.locations) {
        if (loc == "START" || loc == "EXIT")
            throw Error("location id " + loc + " is reserved");
        p.block_of_loc.emplace(loc, p.blocks.size());
        p.blocks.push_back({loc, loc, event, {}});
    }

    for (const LocationId& l : g.initial)
        p.blocks[LoopProgram::kStart].successors.push_back(p.block_of_loc.at(l));
    std::sort(p.blocks[LoopProgram::kStart].successors.begin(),
              p.blocks[LoopProgram::kStart].successors.end());

    for (const auto& [a, b] : g.edges)
        p.blocks[p.block_of_loc.at(a)].successors.push_back(p.block_of_loc.at(b));
    for (std::size_t i = LoopProgram::kExit + 1; i < p.blocks.size(); ++i) {
        auto& succ = p.blocks[i].successors;
        succ.push_back(LoopProgram::kExit);
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    }
    return p;
}

std::optional<ProgramTrace> trace_of_sequence(const LoopProgram& p, const AppSpec& app,
                                              const EventSequence& s) {
    for (const EventId& e : s)
        if (!app.has_event(e)) throw Error("unknown event " + e);

    const std::size_t n = s.size();
    // feasible[i]: location blocks usable at position i (right label, and a
    // successor usable at position i+1)
    std::vector<std::vector<std::size_t>> feasible(n);
    for (std::size_t ri = n; ri-- > 0;) {
        for (std::size_t b = LoopProgram::kExit + 1; b < p.blocks.size(); ++b) {
            if (p.blocks[b].event != s[ri]) continue;
            if (ri + 1 < n) {
                bool ok = false;
                for (std::size_t succ : p.blocks[b].successors)
                    ok = ok || std::binary_search(feasible[ri + 1].begin(),
                                                  feasible[ri + 1].end(), succ);
                if (!ok) continue;
            }
            feasible[ri].push_back(b); // ascending since b ascends
        }
    }

    // greedy least block index = lexicographically least location-id path
    std::vector<std::size_t> path;
    std::size_t current = LoopProgram::kStart;
    for (std::size_t i = 0; i < n; ++i) {
        bool found = false;
        for (std::size_t succ : p.blocks[current].successors) {
            if (succ == LoopProgram::kExit) continue;
            if (std::binary_search(feasible[i].begin(), feasible[i].end(), succ)) {
                path.push_back(succ);
                current = succ;
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }

    ProgramTrace t;
    ConcreteState st = initial_state(app);
    t.states.push_back({LoopProgram::kStart, st.valuation});
    for (std::size_t b : path) {
        exec_handler_inplace(app, p.blocks[b].event, st, GuiEffects::Off);
        t.states.push_back({b, st.valuation});
    }
    t.states.push_back({LoopProgram::kExit, st.valuation});
    return t;
}

std::set<EventSequence> program_sequences(const LoopProgram& p, std::size_t k) {
    std::set<EventSequence> out;
    out.insert(EventSequence{}); // START -> (nothing): the empty interaction
    if (k == 0) return out;

    std::vector<std::pair<EventSequence, std::vector<std::size_t>>> frontier;
    frontier.emplace_back(EventSequence{}, std::vector<std::size_t>{LoopProgram::kStart});
    for (std::size_t len = 1; len <= k && !frontier.empty(); ++len) {
        std::vector<std::pair<EventSequence, std::vector<std::size_t>>> next;
        for (const auto& [word, blocks] : frontier) {
            std::map<EventId, std::set<std::size_t>> by_event;
            for (std::size_t b : blocks)
                for (std::size_t succ : p.blocks[b].successors)
                    if (succ != LoopProgram::kExit) by_event[p.blocks[succ].event].insert(succ);
            for (const auto& [e, targets] : by_event) {
                EventSequence w = word;
                w.push_back(e);
                out.insert(w); // every location block reaches EXIT
                next.emplace_back(std::move(w),
                                  std::vector<std::size_t>(targets.begin(), targets.end()));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

namespace {

void print_expr(std::ostringstream& os, const Expr& e) {
    switch (e.op) {
    case Expr::Op::Const: os << e.value; return;
    case Expr::Op::Var: os << e.var; return;
    case Expr::Op::Neg:
        os << "-(";
        print_expr(os, e.args[0]);
        os << ")";
        return;
    case Expr::Op::Not:
        os << "!(";
        print_expr(os, e.args[0]);
        os << ")";
        return;
    default: break;
    }
    const char* sym = "?";
    switch (e.op) {
    case Expr::Op::Add: sym = "+"; break;
    case Expr::Op::Sub: sym = "-"; break;
    case Expr::Op::Mul: sym = "*"; break;
    case Expr::Op::Lt: sym = "<"; break;
    case Expr::Op::Le: sym = "<="; break;
    case Expr::Op::Gt: sym = ">"; break;
    case Expr::Op::Ge: sym = ">="; break;
    case Expr::Op::Eq: sym = "=="; break;
    case Expr::Op::Ne: sym = "!="; break;
    case Expr::Op::And: sym = "&&"; break;
    case Expr::Op::Or: sym = "||"; break;
    default: break;
    }
    os << "(";
    print_expr(os, e.args[0]);
    os << " " << sym << " ";
    print_expr(os, e.args[1]);
    os << ")";
}

void print_stmts(std::ostringstream& os, const std::vector<Stmt>& body, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    for (const Stmt& s : body) {
        switch (s.kind) {
        case Stmt::Kind::Assign:
            os << pad << s.var << " := ";
            print_expr(os, s.expr);
            os << ";\n";
            break;
        case Stmt::Kind::IfElse:
            os << pad << "if ";
            print_expr(os, s.expr);
            os << " {\n";
            print_stmts(os, s.then_body, indent + 1);
            if (!s.else_body.empty()) {
                os << pad << "} else {\n";
                print_stmts(os, s.else_body, indent + 1);
            }
            os << pad << "}\n";
            break;
        case Stmt::Kind::SetEnabled:
            os << pad << "set_enabled(" << s.target << ", " << (s.flag ? "true" : "false")
               << ");\n";
            break;
        case Stmt::Kind::SetVisible:
            os << pad << "set_visible(" << s.target << ", " << (s.flag ? "true" : "false")
               << ");\n";
            break;
        }
    }
}

void print_goto(std::ostringstream& os, const LoopProgram& p, const LoopProgram::Block& b) {
    os << "    goto ";
    bool first = true;
    // location targets first, EXIT last
    for (std::size_t succ : b.successors) {
        if (succ == LoopProgram::kExit) continue;
        os << (first ? "" : ", ") << p.blocks[succ].id;
        first = false;
    }
    for (std::size_t succ : b.successors)
        if (succ == LoopProgram::kExit) os << (first ? "" : ", ") << "EXIT";
    os << ";\n";
}

} // namespace

std::string dump_program(const LoopProgram& p, const AppSpec& app) {
    std::ostringstream os;
    os << "procedure message_loop() {\n";
    os << "  START:\n";
    for (const VarDecl& v : app.variables)
        os << "    " << v.name << " := " << v.init << ";\n";
    if (p.blocks[LoopProgram::kStart].successors.empty())
        os << "    return;\n";
    else
        print_goto(os, p, p.blocks[LoopProgram::kStart]);

    for (std::size_t i = LoopProgram::kExit + 1; i < p.blocks.size(); ++i) {
        const auto& b = p.blocks[i];
        os << "\n  " << b.id << ":  // handler of " << b.event << "\n";
        std::ostringstream body;
        print_stmts(body, app.handlers.at(b.event), 2);
        os << body.str();
        print_goto(os, p, b);
    }

    os << "\n  EXIT:\n";
    for (const Assertion& a : app.assertions) {
        os << "    assert ";
        std::ostringstream ex;
        print_expr(ex, a.expr);
        os << ex.str() << ";  // " << a.id << "\n";
    }
    os << "    return;\n";
    os << "}\n";
    return os.str();
}

std::string export_dot(const LoopProgram& p) {
    std::ostringstream os;
    os << "digraph program {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=box];\n";
    for (const auto& b : p.blocks) {
        std::string label = b.loc.empty() ? b.id
                            : b.id == b.event ? b.id
                                              : b.id + " : " + b.event;
        os << "  \"" << b.id << "\" [label=\"" << label << "\"];\n";
    }
    for (const auto& b : p.blocks)
        for (std::size_t succ : b.successors)
            os << "  \"" << b.id << "\" -> \"" << p.blocks[succ].id << "\""
               << (succ == LoopProgram::kExit ? " [style=dashed]" : "") << ";\n";
    os << "}\n";
    return os.str();
}

} // namespace guicheck
