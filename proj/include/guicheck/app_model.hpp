#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "guicheck/errors.hpp"

namespace guicheck {

using EventId = std::string;
using WidgetId = std::string;
using WindowId = std::string;
using VarName = std::string;
using EventSequence = std::vector<EventId>;

// Expressions are statically typed (integer or boolean); typing is validated
// once when an AppSpec is finalized, evaluation assumes a well-typed tree.
struct Expr {
    enum class Op {
        Const, Var,
        Neg, Add, Sub, Mul,
        Lt, Le, Gt, Ge, Eq, Ne,
        And, Or, Not,
    };

    Op op = Op::Const;
    std::int64_t value = 0; // Const
    VarName var;            // Var
    std::vector<Expr> args;

    static Expr constant(std::int64_t v);
    static Expr variable(VarName name);
    static Expr unary(Op op, Expr arg);
    static Expr binary(Op op, Expr lhs, Expr rhs);
};

struct Stmt {
    enum class Kind { Assign, IfElse, SetEnabled, SetVisible };

    Kind kind = Kind::Assign;
    VarName var;                 // Assign target
    Expr expr;                   // Assign rhs / IfElse condition
    std::vector<Stmt> then_body; // IfElse
    std::vector<Stmt> else_body; // IfElse
    std::string target;          // SetEnabled: widget id, SetVisible: window id
    bool flag = false;           // SetEnabled / SetVisible value

    static Stmt assign(VarName var, Expr rhs);
    static Stmt if_else(Expr cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body);
    static Stmt set_enabled(WidgetId widget, bool enabled);
    static Stmt set_visible(WindowId window, bool visible);
};

struct WidgetSpec {
    WidgetId id;
    EventId event;
    bool initially_enabled = true;
};

struct WindowSpec {
    WindowId id;
    bool modal = false;
    bool initially_visible = true;
    std::vector<WidgetSpec> widgets;
};

struct VarDecl {
    VarName name;
    std::int64_t init = 0;
    std::int64_t lo = 0; // closed domain [lo, hi]; assignments saturate into it
    std::int64_t hi = 0;
};

struct Assertion {
    std::string id;
    Expr expr; // boolean, checked after every completed handler
};

// The declarative application model: windows/widgets, integer variables,
// one handler per event, global assertions.
struct AppSpec {
    std::vector<WindowSpec> windows;
    std::vector<VarDecl> variables;
    std::map<EventId, std::vector<Stmt>> handlers;
    std::vector<Assertion> assertions;

    // Derived by finalize().
    std::vector<EventId> alphabet; // sorted widget events

    struct WidgetEntry {
        WidgetId id;
        EventId event;
        bool initially_enabled;
        std::size_t window; // index into windows
    };
    std::vector<WidgetEntry> widget_list; // declaration order across windows
    std::map<VarName, std::size_t> var_index;
    std::map<WidgetId, std::size_t> widget_index;
    std::map<WindowId, std::size_t> window_index;
    std::map<EventId, std::size_t> event_widget; // event -> widget_list index

    // Validates every invariant (distinct ids, declared references, typing,
    // domain bounds) and rebuilds the derived tables. Throws Error.
    void finalize();

    bool has_event(const EventId& e) const { return event_widget.count(e) != 0; }
};

// Variable valuation plus GUI flags, indexed by the AppSpec's tables:
// valuation by var_index, enabled by widget_index, visible by window_index.
struct ConcreteState {
    std::vector<std::int64_t> valuation;
    std::vector<char> enabled;
    std::vector<char> visible;

    auto operator<=>(const ConcreteState&) const = default;
};

enum class GuiEffects { Off, On };

AppSpec parse_app_spec(const std::string& text);
AppSpec load_app_spec(const std::string& path);

ConcreteState initial_state(const AppSpec& app);

// Runs the event's handler. Assignments saturate into the target variable's
// declared domain; with GuiEffects::Off the gui statements are no-ops.
void exec_handler_inplace(const AppSpec& app, const EventId& event, ConcreteState& state,
                          GuiEffects effects);
ConcreteState exec_handler(const AppSpec& app, const EventId& event, ConcreteState state,
                           GuiEffects effects);

// Ids of assertions whose expression evaluates to false, in declaration order.
std::vector<std::string> check_assertions(const AppSpec& app, const ConcreteState& state);

// Copy of app restricted to the named assertions. Unknown id is an error.
AppSpec with_assertions(const AppSpec& app, const std::vector<std::string>& ids);

std::int64_t eval_int(const AppSpec& app, const Expr& e, const std::vector<std::int64_t>& valuation);
bool eval_bool(const AppSpec& app, const Expr& e, const std::vector<std::int64_t>& valuation);

} // namespace guicheck
