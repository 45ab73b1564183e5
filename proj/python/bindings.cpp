// Python bindings for the workbench. Programs cross the boundary as source
// text; results come back as plain dicts and lists.
#include "dfa/analyses.hpp"
#include "dfa/augmented.hpp"
#include "dfa/fuzz.hpp"
#include "dfa/interp.hpp"
#include "dfa/optimizer.hpp"
#include "dfa/parser.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dfa;

namespace {

Program load(const std::string& source) { return parseProgram(source); }

AnalysisKind kindOf(const std::string& name)
{
    auto kind = parseAnalysisKind(name);
    if (!kind)
        throw py::value_error("unknown analysis '" + name + "'");
    return *kind;
}

py::object factObject(const Fact& fact)
{
    if (fact.universe()->kind() != Universe::Kind::Definitions)
        return py::cast(fact.atoms());
    py::dict out;
    for (const auto& [v, labels] : fact.definitions()) {
        py::list names;
        for (const auto& l : labels)
            names.append(l.name);
        out[py::str(v)] = names;
    }
    return out;
}

py::dict stateDict(const State& state)
{
    py::dict out;
    for (const auto& [k, v] : state)
        out[py::str(k)] = v;
    return out;
}

py::dict runSource(const std::string& source, std::size_t maxSteps)
{
    const Trace t = run(load(source), maxSteps);
    py::dict out;
    out["outcome"] = toString(t.outcome);
    out["message"] = outcomeMessage(t);
    out["steps"] = t.transitions();
    out["labels"] = [&] {
        py::list labels;
        for (const auto& c : t.configs)
            labels.append(c.label.name);
        return labels;
    }();
    out["final_state"] = stateDict(t.finalState());
    return out;
}

py::dict analyzeSource(const std::string& source, const std::string& analysis, const std::set<std::string>& observe)
{
    const Program p = load(source);
    const auto result = analyze(kindOf(analysis), p, observe);
    py::dict before, after;
    for (std::size_t i = 0; i < p.size(); ++i) {
        before[py::str(p.label(i).name)] = factObject(result.before[i]);
        after[py::str(p.label(i).name)] = factObject(result.after[i]);
    }
    py::dict out;
    out["analysis"] = shortName(kindOf(analysis));
    out["before"] = before;
    out["after"] = after;
    return out;
}

py::dict checkSource(const std::string& source, const std::string& analysis, bool metarule, std::size_t maxSteps)
{
    const Program p = load(source);
    const AnalysisKind kind = kindOf(analysis);
    const auto spec = makeSpec(kind, p);
    const auto result = solve(p, spec);
    CheckReport report;
    for (const auto& v : audit(p, spec, result))
        report.failures.push_back({0, v.label, "equation", v.describe(), {}, {}});
    const Trace trace = run(p, maxSteps);
    report.merge(checkProgress(kind, p, result, trace, metarule));
    report.merge(checkTraceTheorems(kind, p, result, trace));
    py::list failures;
    for (const auto& f : report.failures) {
        py::dict d;
        d["step"] = f.step;
        d["label"] = f.label.name;
        d["rule"] = f.rule;
        d["detail"] = f.detail;
        failures.append(d);
    }
    py::dict out;
    out["passed"] = report.passed();
    out["failures"] = failures;
    out["steps_checked"] = report.stepsChecked;
    out["notes"] = report.notes;
    return out;
}

py::dict optimizationDict(const OptimizationResult& r)
{
    py::list log;
    for (const auto& e : r.log.entries) {
        py::dict d;
        d["label"] = e.label.name;
        d["kind"] = e.kind;
        d["before"] = e.before;
        d["after"] = e.after;
        d["justification"] = e.justification;
        log.append(d);
    }
    py::dict out;
    out["program"] = print(r.program);
    out["rewrites"] = log;
    return out;
}

py::dict fuzzSuite(std::uint64_t seed, std::size_t count, int maxCommands, std::size_t maxSteps)
{
    GenConfig config;
    config.seed = seed;
    config.maxCommands = maxCommands;
    SuiteOptions options;
    options.maxSteps = maxSteps;
    const auto report = runSuite(generateCorpus(config, count), options);
    py::dict out;
    out["count"] = report.programs.size();
    out["failing"] = report.failingPrograms();
    out["passed"] = report.passed();
    out["table"] = report.toTable();
    return out;
}

} // namespace

PYBIND11_MODULE(_dfa, m)
{
    m.doc() = "Dataflow analysis workbench for a small imperative language";

    py::register_exception<Error>(m, "DfaError", PyExc_ValueError);

    m.def("canonical", [](const std::string& source) { return print(load(source)); }, py::arg("source"),
          "Parse, validate and print a program in canonical form.");
    m.def(
        "parse_errors",
        [](const std::string& source) {
            std::vector<std::string> out;
            for (const auto& e : parse(source).errors)
                out.push_back(formatError(e));
            return out;
        },
        py::arg("source"));
    m.def("run", &runSource, py::arg("source"), py::arg("max_steps") = defaultMaxSteps);
    m.def("analyze", &analyzeSource, py::arg("source"), py::arg("analysis"),
          py::arg("observe") = std::set<std::string>{});
    m.def("check", &checkSource, py::arg("source"), py::arg("analysis"), py::arg("metarule") = false,
          py::arg("max_steps") = defaultMaxSteps);
    m.def(
        "dead_store_elim",
        [](const std::string& source, const std::set<std::string>& observe) {
            return optimizationDict(deadStoreElim(load(source), observe));
        },
        py::arg("source"), py::arg("observe") = std::set<std::string>{});
    m.def(
        "const_prop", [](const std::string& source) { return optimizationDict(constProp(load(source))); },
        py::arg("source"));
    m.def(
        "generate",
        [](std::uint64_t seed, int maxCommands) {
            GenConfig config;
            config.seed = seed;
            config.maxCommands = maxCommands;
            return print(generate(config));
        },
        py::arg("seed") = 0, py::arg("max_commands") = 20);
    m.def("fuzz", &fuzzSuite, py::arg("seed") = 0, py::arg("count") = 100, py::arg("max_commands") = 20,
          py::arg("max_steps") = 10000);
}
