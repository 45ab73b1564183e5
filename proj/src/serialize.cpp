#include "dfa/serialize.hpp"

#include "dfa/parser.hpp"

#include <json.hpp>

namespace dfa {

using nlohmann::json;

namespace {

json stateJson(const State& state)
{
    json out = json::object();
    for (const auto& [k, v] : state)
        out[k] = v;
    return out;
}

json factJson(const Fact& fact)
{
    if (fact.universe()->kind() != Universe::Kind::Definitions)
        return fact.atoms();
    json out = json::object();
    for (const auto& [v, labels] : fact.definitions()) {
        json names = json::array();
        for (const auto& l : labels)
            names.push_back(l.name);
        out[v] = std::move(names);
    }
    return out;
}

std::string dump(const json& j, int indent) { return j.dump(indent) + "\n"; }

} // namespace

std::string traceToJson(const Trace& trace, int indent)
{
    json steps = json::array();
    for (const auto& c : trace.configs)
        steps.push_back({{"label", c.label.name}, {"state", stateJson(c.state)}});
    json out = {{"outcome", toString(trace.outcome)}, {"steps", std::move(steps)}};
    if (trace.fault)
        out["fault"] = {{"label", trace.faultLabel->name}, {"cause", trace.fault->describe()}};
    return dump(out, indent);
}

std::string analysisToJson(const std::string& programName, AnalysisKind kind, const AnalysisResult& result,
                           int indent)
{
    json before = json::object();
    json after = json::object();
    for (std::size_t i = 0; i < result.labels.size(); ++i) {
        before[result.labels[i].name] = factJson(result.before[i]);
        after[result.labels[i].name] = factJson(result.after[i]);
    }
    json out = {{"program", programName},
                {"analysis", shortName(kind)},
                {"before", std::move(before)},
                {"after", std::move(after)}};
    return dump(out, indent);
}

namespace {

json reportJson(const CheckReport& report)
{
    json failures = json::array();
    for (const auto& f : report.failures)
        failures.push_back({{"step", f.step},
                            {"label", f.label.name},
                            {"rule", f.rule},
                            {"detail", f.detail},
                            {"expected", f.expected},
                            {"actual", f.actual}});
    return {{"outcome", report.passed() ? "pass" : "fail"}, {"failures", std::move(failures)}};
}

} // namespace

std::string checkReportToJson(const CheckReport& report, int indent) { return dump(reportJson(report), indent); }

std::string rewriteLogToJson(const RewriteLog& log, const Program& transformed, int indent)
{
    json rewrites = json::array();
    for (const auto& e : log.entries)
        rewrites.push_back({{"label", e.label.name},
                            {"kind", e.kind},
                            {"before", e.before},
                            {"after", e.after},
                            {"justification", e.justification}});
    json out = {{"rewrites", std::move(rewrites)}, {"program", print(transformed)}};
    return dump(out, indent);
}

std::string suiteReportToJson(const SuiteReport& report, int indent)
{
    static const char* const statusNames[] = {"pass", "fail", "skip"};
    json summary = json::object();
    for (const auto& name : report.checkNames)
        summary[name] = {{"pass", 0}, {"fail", 0}, {"skip", 0}};
    json programs = json::array();
    for (const auto& p : report.programs) {
        json failures = json::array();
        for (const auto& c : p.checks) {
            summary[c.name][statusNames[static_cast<int>(c.status)]] =
                summary[c.name][statusNames[static_cast<int>(c.status)]].get<int>() + 1;
            if (c.status == CheckOutcome::Status::Fail)
                failures.push_back({{"check", c.name}, {"detail", c.detail}});
        }
        json entry = {{"index", p.index}, {"passed", p.passed()}, {"failures", std::move(failures)}};
        if (!p.passed()) {
            entry["source"] = p.source;
            if (p.shrunk)
                entry["shrunk"] = *p.shrunk;
        }
        programs.push_back(std::move(entry));
    }
    json out = {{"programs", std::move(programs)},
                {"summary", std::move(summary)},
                {"failing", report.failingPrograms()},
                {"count", report.programs.size()}};
    return dump(out, indent);
}

} // namespace dfa
