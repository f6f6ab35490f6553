#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gm/states.hpp"

namespace gm {

/// Any state the CLI and the Python module accept.
using StateDescriptor = std::variant<PureState, SymmetricDickeState, SymThreeQubitCanonical, RankTwoCanonical>;

/// "pure", "dicke", "sym3q" or "rank2".
std::string_view kind_of(const StateDescriptor& state);

/*
 * State files:
 *   {"kind": "pure",  "n_qubits": n, "amplitudes": [[re, im], ...]}   (n_qubits optional)
 *   {"kind": "dicke", "N": N,        "amplitudes": [[re, im], ...]}   (N optional, N + 1 entries)
 *   {"kind": "sym3q", "g": g, "t": t, "h": h, "gamma": gamma}
 *   {"kind": "rank2", "gamma1": g1, "gamma2": g2, "x": [x1, x2, x3]}
 * A bare number is accepted in place of [re, im]. Angles are radians.
 */
nlohmann::json state_to_json(const StateDescriptor& state);
StateDescriptor state_from_json(const nlohmann::json& j);
StateDescriptor read_state_file(const std::filesystem::path& path);

nlohmann::json to_json(const BlochVector& s);
nlohmann::json to_json(const CandidateRecord& c);
nlohmann::json to_json(const GmResult& r);
CandidateRecord candidate_from_json(const nlohmann::json& j);
GmResult result_from_json(const nlohmann::json& j);

/// One CLI answer: the parsed input, the result, and how long it took.
struct OutputRecord {
    StateDescriptor input;
    GmResult result;
    double wall_time_ms = 0.0;
};

/**
 * {"input": ..., "result": {G, G_squared, E_G, method, warning, closest_product},
 *  "wall_time_ms": ..., "solver_diagnostics": {"candidates": [...], "stats": {...}}}
 * The candidate trail and diagnostics map live under solver_diagnostics.
 */
nlohmann::json to_json(const OutputRecord& rec);
OutputRecord output_record_from_json(const nlohmann::json& j);

/// %.12g
std::string format_number(double v);

/// Header row plus one line per row, ',' separated, LF endings, %.12g values.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

} // namespace gm
