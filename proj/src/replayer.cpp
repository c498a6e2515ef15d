#include "guicheck/replayer.hpp"

namespace guicheck {

bool is_executable(const ConcreteState& state, const AppSpec& app, const EventId& event) {
    auto it = app.event_widget.find(event);
    if (it == app.event_widget.end()) throw Error("unknown event " + event);
    const AppSpec::WidgetEntry& w = app.widget_list[it->second];
    if (!state.enabled[it->second]) return false;
    if (!state.visible[w.window]) return false;
    for (std::size_t i = 0; i < app.windows.size(); ++i)
        if (i != w.window && app.windows[i].modal && state.visible[i]) return false;
    return true;
}

ReplayResult replay(const AppSpec& app, const EventSequence& s) {
    ReplayResult r;
    ConcreteState st = initial_state(app);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_executable(st, app, s[i])) {
            r.executable = false;
            r.infeasible_prefix = EventSequence(s.begin(), s.begin() + i + 1);
            break;
        }
        exec_handler_inplace(app, s[i], st, GuiEffects::On);

        std::size_t visible_modals = 0;
        for (std::size_t wi = 0; wi < app.windows.size(); ++wi)
            if (app.windows[wi].modal && st.visible[wi]) ++visible_modals;
        if (visible_modals > 1)
            throw Error("modal stacking: event " + s[i] +
                        " left more than one modal window visible");

        std::vector<std::string> violated = check_assertions(app, st);
        if (!violated.empty()) r.violations.emplace_back(i + 1, std::move(violated));
    }
    r.final_state = std::move(st);
    return r;
}

} // namespace guicheck
