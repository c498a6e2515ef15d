#include "guicheck/app_model.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace guicheck {

using nlohmann::json;

Expr Expr::constant(std::int64_t v) {
    Expr e;
    e.op = Op::Const;
    e.value = v;
    return e;
}

Expr Expr::variable(VarName name) {
    Expr e;
    e.op = Op::Var;
    e.var = std::move(name);
    return e;
}

Expr Expr::unary(Op op, Expr arg) {
    Expr e;
    e.op = op;
    e.args.push_back(std::move(arg));
    return e;
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
    Expr e;
    e.op = op;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
}

Stmt Stmt::assign(VarName var, Expr rhs) {
    Stmt s;
    s.kind = Kind::Assign;
    s.var = std::move(var);
    s.expr = std::move(rhs);
    return s;
}

Stmt Stmt::if_else(Expr cond, std::vector<Stmt> then_body, std::vector<Stmt> else_body) {
    Stmt s;
    s.kind = Kind::IfElse;
    s.expr = std::move(cond);
    s.then_body = std::move(then_body);
    s.else_body = std::move(else_body);
    return s;
}

Stmt Stmt::set_enabled(WidgetId widget, bool enabled) {
    Stmt s;
    s.kind = Kind::SetEnabled;
    s.target = std::move(widget);
    s.flag = enabled;
    return s;
}

Stmt Stmt::set_visible(WindowId window, bool visible) {
    Stmt s;
    s.kind = Kind::SetVisible;
    s.target = std::move(window);
    s.flag = visible;
    return s;
}

namespace {

enum class Type { Int, Bool };

const char* op_name(Expr::Op op) {
    switch (op) {
    case Expr::Op::Const: return "const";
    case Expr::Op::Var: return "var";
    case Expr::Op::Neg: return "neg";
    case Expr::Op::Add: return "+";
    case Expr::Op::Sub: return "-";
    case Expr::Op::Mul: return "*";
    case Expr::Op::Lt: return "<";
    case Expr::Op::Le: return "<=";
    case Expr::Op::Gt: return ">";
    case Expr::Op::Ge: return ">=";
    case Expr::Op::Eq: return "==";
    case Expr::Op::Ne: return "!=";
    case Expr::Op::And: return "and";
    case Expr::Op::Or: return "or";
    case Expr::Op::Not: return "not";
    }
    return "?";
}

void require_arity(const Expr& e, std::size_t n) {
    if (e.args.size() != n)
        throw Error(std::string("operator '") + op_name(e.op) + "' expects " +
                    std::to_string(n) + (n == 1 ? " operand" : " operands"));
}

Type check_expr(const Expr& e, const AppSpec& app) {
    auto int_arg = [&](const Expr& a) {
        if (check_expr(a, app) != Type::Int)
            throw Error(std::string("operator '") + op_name(e.op) + "' expects integer operands");
    };
    auto bool_arg = [&](const Expr& a) {
        if (check_expr(a, app) != Type::Bool)
            throw Error(std::string("operator '") + op_name(e.op) + "' expects boolean operands");
    };

    switch (e.op) {
    case Expr::Op::Const:
        return Type::Int;
    case Expr::Op::Var:
        if (!app.var_index.count(e.var)) throw Error("undeclared variable " + e.var);
        return Type::Int;
    case Expr::Op::Neg:
        require_arity(e, 1);
        int_arg(e.args[0]);
        return Type::Int;
    case Expr::Op::Add:
    case Expr::Op::Sub:
    case Expr::Op::Mul:
        require_arity(e, 2);
        int_arg(e.args[0]);
        int_arg(e.args[1]);
        return Type::Int;
    case Expr::Op::Lt:
    case Expr::Op::Le:
    case Expr::Op::Gt:
    case Expr::Op::Ge:
    case Expr::Op::Eq:
    case Expr::Op::Ne:
        require_arity(e, 2);
        int_arg(e.args[0]);
        int_arg(e.args[1]);
        return Type::Bool;
    case Expr::Op::And:
    case Expr::Op::Or:
        require_arity(e, 2);
        bool_arg(e.args[0]);
        bool_arg(e.args[1]);
        return Type::Bool;
    case Expr::Op::Not:
        require_arity(e, 1);
        bool_arg(e.args[0]);
        return Type::Bool;
    }
    throw Error("corrupt expression");
}

void check_stmts(const std::vector<Stmt>& body, const AppSpec& app) {
    for (const Stmt& s : body) {
        switch (s.kind) {
        case Stmt::Kind::Assign:
            if (!app.var_index.count(s.var)) throw Error("undeclared variable " + s.var);
            if (check_expr(s.expr, app) != Type::Int)
                throw Error("assignment to " + s.var + " must have an integer right side");
            break;
        case Stmt::Kind::IfElse:
            if (check_expr(s.expr, app) != Type::Bool)
                throw Error("if condition must be boolean");
            check_stmts(s.then_body, app);
            check_stmts(s.else_body, app);
            break;
        case Stmt::Kind::SetEnabled:
            if (!app.widget_index.count(s.target)) throw Error("undeclared widget " + s.target);
            break;
        case Stmt::Kind::SetVisible:
            if (!app.window_index.count(s.target)) throw Error("undeclared window " + s.target);
            break;
        }
    }
}

} // namespace

void AppSpec::finalize() {
    alphabet.clear();
    widget_list.clear();
    var_index.clear();
    widget_index.clear();
    window_index.clear();
    event_widget.clear();

    for (std::size_t wi = 0; wi < windows.size(); ++wi) {
        const WindowSpec& win = windows[wi];
        if (!window_index.emplace(win.id, wi).second)
            throw Error("duplicate window id " + win.id);
        for (const WidgetSpec& w : win.widgets) {
            if (widget_index.count(w.id)) throw Error("duplicate widget id " + w.id);
            if (event_widget.count(w.event)) throw Error("duplicate event id " + w.event);
            widget_index.emplace(w.id, widget_list.size());
            event_widget.emplace(w.event, widget_list.size());
            widget_list.push_back({w.id, w.event, w.initially_enabled, wi});
        }
    }

    for (std::size_t vi = 0; vi < variables.size(); ++vi) {
        const VarDecl& v = variables[vi];
        if (!var_index.emplace(v.name, vi).second)
            throw Error("duplicate variable " + v.name);
        if (v.lo > v.hi)
            throw Error("empty domain [" + std::to_string(v.lo) + "," + std::to_string(v.hi) +
                        "] for variable " + v.name);
        if (v.init < v.lo || v.init > v.hi)
            throw Error("initial value of variable " + v.name + " outside its domain");
    }

    std::set<std::string> assertion_ids;
    for (const Assertion& a : assertions) {
        if (!assertion_ids.insert(a.id).second) throw Error("duplicate assertion id " + a.id);
        if (check_expr(a.expr, *this) != Type::Bool)
            throw Error("assertion " + a.id + " must be boolean");
    }

    for (const auto& [event, body] : handlers) {
        if (!event_widget.count(event)) throw Error("handler for unknown event " + event);
        check_stmts(body, *this);
    }
    // every widget event gets a handler entry, possibly empty
    for (const auto& w : widget_list) handlers.try_emplace(w.event);

    for (const auto& [e, idx] : event_widget) alphabet.push_back(e);
}

namespace {

Expr parse_expr_json(const json& j);

Expr::Op lookup_op(const std::string& name) {
    static const std::map<std::string, Expr::Op> ops = {
        {"neg", Expr::Op::Neg}, {"+", Expr::Op::Add},  {"-", Expr::Op::Sub},
        {"*", Expr::Op::Mul},   {"<", Expr::Op::Lt},   {"<=", Expr::Op::Le},
        {">", Expr::Op::Gt},    {">=", Expr::Op::Ge},  {"==", Expr::Op::Eq},
        {"!=", Expr::Op::Ne},   {"and", Expr::Op::And}, {"or", Expr::Op::Or},
        {"not", Expr::Op::Not}};
    auto it = ops.find(name);
    if (it == ops.end()) throw Error("unknown operator '" + name + "'");
    return it->second;
}

Expr parse_expr_json(const json& j) {
    if (!j.is_object()) throw Error("expression must be an object: " + j.dump());
    if (j.contains("const")) {
        if (!j["const"].is_number_integer()) throw Error("const expects an integer");
        return Expr::constant(j["const"].get<std::int64_t>());
    }
    if (j.contains("var")) {
        if (!j["var"].is_string()) throw Error("var expects a name");
        return Expr::variable(j["var"].get<std::string>());
    }
    if (j.contains("op")) {
        Expr e;
        e.op = lookup_op(j.at("op").get<std::string>());
        const json& args = j.at("args");
        if (!args.is_array()) throw Error("args must be an array");
        for (const json& a : args) e.args.push_back(parse_expr_json(a));
        return e;
    }
    throw Error("unrecognized expression: " + j.dump());
}

Stmt parse_stmt_json(const json& j);

std::vector<Stmt> parse_body_json(const json& j) {
    if (!j.is_array()) throw Error("statement list must be an array");
    std::vector<Stmt> body;
    for (const json& s : j) body.push_back(parse_stmt_json(s));
    return body;
}

Stmt parse_stmt_json(const json& j) {
    if (!j.is_object()) throw Error("statement must be an object: " + j.dump());
    if (j.contains("assign")) {
        const json& a = j["assign"];
        return Stmt::assign(a.at("var").get<std::string>(), parse_expr_json(a.at("expr")));
    }
    if (j.contains("if")) {
        const json& f = j["if"];
        std::vector<Stmt> else_body;
        if (f.contains("else")) else_body = parse_body_json(f["else"]);
        return Stmt::if_else(parse_expr_json(f.at("cond")), parse_body_json(f.at("then")),
                             std::move(else_body));
    }
    if (j.contains("gui")) {
        const json& g = j["gui"];
        const std::string op = g.at("op").get<std::string>();
        const std::string target = g.at("target").get<std::string>();
        const bool value = g.at("value").get<bool>();
        if (op == "set_enabled") return Stmt::set_enabled(target, value);
        if (op == "set_visible") return Stmt::set_visible(target, value);
        throw Error("unknown gui op '" + op + "'");
    }
    throw Error("unrecognized statement: " + j.dump());
}

} // namespace

AppSpec parse_app_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("syntax error: ") + e.what());
    }

    AppSpec app;
    try {
        if (!j.is_object()) throw Error("app spec must be a JSON object");
        for (const json& jw : j.value("windows", json::array())) {
            WindowSpec win;
            win.id = jw.at("id").get<std::string>();
            win.modal = jw.value("modal", false);
            win.initially_visible = jw.value("initially_visible", true);
            for (const json& jb : jw.value("widgets", json::array())) {
                WidgetSpec w;
                w.id = jb.at("id").get<std::string>();
                w.event = jb.at("event").get<std::string>();
                w.initially_enabled = jb.value("initially_enabled", true);
                win.widgets.push_back(std::move(w));
            }
            app.windows.push_back(std::move(win));
        }
        for (const json& jv : j.value("variables", json::array())) {
            VarDecl v;
            v.name = jv.at("name").get<std::string>();
            v.init = jv.at("init").get<std::int64_t>();
            const json& dom = jv.at("domain");
            if (!dom.is_array() || dom.size() != 2)
                throw Error("domain of variable " + v.name + " must be [lo, hi]");
            v.lo = dom[0].get<std::int64_t>();
            v.hi = dom[1].get<std::int64_t>();
            app.variables.push_back(std::move(v));
        }
        if (j.contains("handlers")) {
            const json& hs = j["handlers"];
            if (!hs.is_object()) throw Error("handlers must map event ids to statement lists");
            for (auto it = hs.begin(); it != hs.end(); ++it)
                app.handlers[it.key()] = parse_body_json(it.value());
        }
        for (const json& ja : j.value("assertions", json::array())) {
            Assertion a;
            a.id = ja.at("id").get<std::string>();
            a.expr = parse_expr_json(ja.at("expr"));
            app.assertions.push_back(std::move(a));
        }
    } catch (const json::exception& e) {
        throw Error(std::string("malformed app spec: ") + e.what());
    }

    app.finalize();
    return app;
}

AppSpec load_app_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_app_spec(buf.str());
}

ConcreteState initial_state(const AppSpec& app) {
    ConcreteState s;
    s.valuation.reserve(app.variables.size());
    for (const VarDecl& v : app.variables) s.valuation.push_back(v.init);
    s.enabled.reserve(app.widget_list.size());
    for (const auto& w : app.widget_list) s.enabled.push_back(w.initially_enabled ? 1 : 0);
    s.visible.reserve(app.windows.size());
    for (const WindowSpec& w : app.windows) s.visible.push_back(w.initially_visible ? 1 : 0);
    return s;
}

namespace {

std::int64_t eval(const AppSpec& app, const Expr& e, const std::vector<std::int64_t>& v) {
    switch (e.op) {
    case Expr::Op::Const: return e.value;
    case Expr::Op::Var: {
        auto it = app.var_index.find(e.var);
        if (it == app.var_index.end()) throw Error("undeclared variable " + e.var);
        return v[it->second];
    }
    case Expr::Op::Neg: return -eval(app, e.args[0], v);
    case Expr::Op::Add: return eval(app, e.args[0], v) + eval(app, e.args[1], v);
    case Expr::Op::Sub: return eval(app, e.args[0], v) - eval(app, e.args[1], v);
    case Expr::Op::Mul: return eval(app, e.args[0], v) * eval(app, e.args[1], v);
    case Expr::Op::Lt: return eval(app, e.args[0], v) < eval(app, e.args[1], v);
    case Expr::Op::Le: return eval(app, e.args[0], v) <= eval(app, e.args[1], v);
    case Expr::Op::Gt: return eval(app, e.args[0], v) > eval(app, e.args[1], v);
    case Expr::Op::Ge: return eval(app, e.args[0], v) >= eval(app, e.args[1], v);
    case Expr::Op::Eq: return eval(app, e.args[0], v) == eval(app, e.args[1], v);
    case Expr::Op::Ne: return eval(app, e.args[0], v) != eval(app, e.args[1], v);
    case Expr::Op::And: return eval(app, e.args[0], v) && eval(app, e.args[1], v);
    case Expr::Op::Or: return eval(app, e.args[0], v) || eval(app, e.args[1], v);
    case Expr::Op::Not: return !eval(app, e.args[0], v);
    }
    throw Error("corrupt expression");
}

void exec_stmts(const AppSpec& app, const std::vector<Stmt>& body, ConcreteState& st,
                GuiEffects effects) {
    for (const Stmt& s : body) {
        switch (s.kind) {
        case Stmt::Kind::Assign: {
            const std::size_t idx = app.var_index.at(s.var);
            const VarDecl& d = app.variables[idx];
            st.valuation[idx] = std::clamp(eval(app, s.expr, st.valuation), d.lo, d.hi);
            break;
        }
        case Stmt::Kind::IfElse:
            exec_stmts(app, eval(app, s.expr, st.valuation) ? s.then_body : s.else_body, st,
                       effects);
            break;
        case Stmt::Kind::SetEnabled:
            if (effects == GuiEffects::On)
                st.enabled[app.widget_index.at(s.target)] = s.flag ? 1 : 0;
            break;
        case Stmt::Kind::SetVisible:
            if (effects == GuiEffects::On)
                st.visible[app.window_index.at(s.target)] = s.flag ? 1 : 0;
            break;
        }
    }
}

} // namespace

std::int64_t eval_int(const AppSpec& app, const Expr& e, const std::vector<std::int64_t>& valuation) {
    return eval(app, e, valuation);
}

bool eval_bool(const AppSpec& app, const Expr& e, const std::vector<std::int64_t>& valuation) {
    return eval(app, e, valuation) != 0;
}

void exec_handler_inplace(const AppSpec& app, const EventId& event, ConcreteState& state,
                          GuiEffects effects) {
    auto it = app.handlers.find(event);
    if (it == app.handlers.end()) throw Error("unknown event " + event);
    exec_stmts(app, it->second, state, effects);
}

ConcreteState exec_handler(const AppSpec& app, const EventId& event, ConcreteState state,
                           GuiEffects effects) {
    exec_handler_inplace(app, event, state, effects);
    return state;
}

std::vector<std::string> check_assertions(const AppSpec& app, const ConcreteState& state) {
    std::vector<std::string> violated;
    for (const Assertion& a : app.assertions)
        if (!eval_bool(app, a.expr, state.valuation)) violated.push_back(a.id);
    return violated;
}

AppSpec with_assertions(const AppSpec& app, const std::vector<std::string>& ids) {
    std::set<std::string> keep(ids.begin(), ids.end());
    for (const std::string& id : keep) {
        bool known = false;
        for (const Assertion& a : app.assertions) known = known || a.id == id;
        if (!known) throw Error("unknown assertion id " + id);
    }
    AppSpec out = app;
    out.assertions.clear();
    for (const Assertion& a : app.assertions)
        if (keep.count(a.id)) out.assertions.push_back(a);
    out.finalize();
    return out;
}

} // namespace guicheck
