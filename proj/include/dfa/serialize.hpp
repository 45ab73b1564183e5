// JSON renderings of traces, analysis results, check reports, rewrite logs and
// suite reports. Object keys are sorted, so output is byte-stable.
#pragma once

#include "dfa/analyses.hpp"
#include "dfa/augmented.hpp"
#include "dfa/fuzz.hpp"
#include "dfa/interp.hpp"
#include "dfa/optimizer.hpp"

#include <string>

namespace dfa {

/// indent < 0 gives compact single-line output.
std::string traceToJson(const Trace& trace, int indent = 2);
std::string analysisToJson(const std::string& programName, AnalysisKind kind, const AnalysisResult& result,
                           int indent = 2);
std::string checkReportToJson(const CheckReport& report, int indent = 2);
std::string rewriteLogToJson(const RewriteLog& log, const Program& transformed, int indent = 2);
std::string suiteReportToJson(const SuiteReport& report, int indent = 2);

} // namespace dfa
