#include "vizlocal/engine.hpp"

#include <json.hpp>

namespace vizlocal {

std::string report_to_json(const RunReport& r) {
    nlohmann::ordered_json j;
    j["algorithm"] = r.algorithm;
    j["n"] = r.n;
    j["m"] = r.m;
    j["delta"] = r.delta;
    j["strategy"] = r.strategy;
    j["T"] = r.T;
    j["T_mode"] = r.T_mode;
    j["lambda"] = r.lambda;
    j["delta_param"] = r.delta_param;
    j["seed"] = r.seed;
    j["colors_used"] = r.colors_used;
    j["ell_G"] = r.ell_G;
    j["iterations"] = nlohmann::ordered_json::array();
    for (const IterationStat& it : r.iterations) {
        nlohmann::ordered_json entry;
        entry["uncolored_before"] = it.uncolored_before;
        entry["uncolored_after"] = it.uncolored_after;
        j["iterations"].push_back(entry);
    }
    j["repair_executions"] = r.repair_executions;
    if (!r.phi_trace.empty()) j["phi_trace"] = r.phi_trace;
    j["ledger"] = nlohmann::ordered_json::array();
    for (const RoundLedger::Phase& p : r.ledger.phases()) {
        nlohmann::ordered_json entry;
        entry["phase"] = p.name;
        entry["formula"] = p.formula;
        entry["charge"] = p.total;
        j["ledger"].push_back(entry);
    }
    j["failed"] = r.failed;
    return j.dump(2) + "\n";
}

}  // namespace vizlocal
