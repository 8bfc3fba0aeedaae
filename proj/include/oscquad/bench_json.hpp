#pragma once

// JSON mirror of the sweep CSV output. Kept in its own header so only the
// translation units that ask for JSON pay for the library include.

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oscquad/bench.hpp"

namespace oscquad {

inline void write_sweep_json(const std::vector<SweepRecord>& records,
                             std::ostream& os) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        arr.push_back({{"rule", r.rule_id},
                       {"omega", r.omega},
                       {"abs_error", r.abs_error},
                       {"norm_error", r.norm_error},
                       {"n_fev", r.n_fev}});
    }
    os << arr.dump(2) << "\n";
}

inline void write_sweep_json(const std::vector<SweepRecord>& records,
                             const std::string& path) {
    std::ofstream os(path);
    require(bool(os), "cannot open output file: " + path);
    write_sweep_json(records, os);
}

}  // namespace oscquad
