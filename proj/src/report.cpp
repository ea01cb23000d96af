#include "entwine/report.hpp"

#include <sstream>

#include "json.hpp"

namespace entwine {

using nlohmann::json;

std::string report_json(const BundleReport& rep) {
    json j;
    j["schema"] = kReportSchema;
    j["tool_version"] = kToolVersion;
    j["bundle"] = rep.bundle;
    j["config"] = {{"window", rep.window}, {"degree", rep.degree_bound}, {"seed", rep.seed}};
    j["notes"] = rep.notes;
    json stages = json::array();
    for (const auto& st : rep.stages) {
        json s;
        s["name"] = st.name;
        s["pass"] = st.pass;
        s["error"] = st.error;
        json clauses = json::array();
        for (const auto& cl : st.clauses) {
            json c;
            c["name"] = cl.name;
            c["pass"] = cl.pass;
            json cxs = json::array();
            for (const auto& cx : cl.counterexamples)
                cxs.push_back({{"input", cx.input}, {"lhs", cx.lhs}, {"rhs", cx.rhs}});
            c["counterexamples"] = cxs;
            clauses.push_back(c);
        }
        s["clauses"] = clauses;
        stages.push_back(s);
    }
    j["stages"] = stages;
    j["pass"] = rep.pass();
    return j.dump(2) + "\n";
}

std::string report_summary(const BundleReport& rep) {
    std::ostringstream os;
    os << "bundle " << rep.bundle << " (window " << rep.window << ", degree "
       << rep.degree_bound << ", seed " << rep.seed << ")\n";
    for (const auto& note : rep.notes) os << "  note: " << note << "\n";
    for (const auto& st : rep.stages) {
        os << "  " << (st.pass ? "PASS" : "FAIL") << "  " << st.name;
        if (!st.error.empty()) os << "  [" << st.error << "]";
        os << "\n";
        for (const auto& cl : st.clauses) {
            if (cl.pass) continue;
            os << "        clause " << cl.name << " failed";
            if (!cl.counterexamples.empty()) {
                const auto& cx = cl.counterexamples.front();
                os << ": at " << cx.input << "\n          lhs = " << cx.lhs
                   << "\n          rhs = " << cx.rhs;
            }
            os << "\n";
        }
    }
    os << (rep.pass() ? "RESULT: all stages passed" : "RESULT: failures detected") << "\n";
    return os.str();
}

}  // namespace entwine
