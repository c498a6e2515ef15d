#pragma once

#include <json.hpp>

#include "guicheck/analyzer.hpp"
#include "guicheck/eefg.hpp"
#include "guicheck/replayer.hpp"
#include "guicheck/verify.hpp"

namespace guicheck {

nlohmann::json eefg_to_json(const Eefg& g);
Eefg eefg_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const AppSpec& app, const ConcreteState& s);
nlohmann::json replay_result_to_json(const AppSpec& app, const ReplayResult& r);
nlohmann::json trace_to_json(const LoopProgram& p, const AppSpec& app, const ProgramTrace& t);
nlohmann::json analysis_to_json(const LoopProgram& p, const AppSpec& app, const AnalysisResult& r);
nlohmann::json report_to_json(const VerifyReport& rep);

} // namespace guicheck
