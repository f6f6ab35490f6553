#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gm/oracle.hpp"
#include "gm/state_io.hpp"

namespace gm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitWarning = 3;
inline constexpr int kExitUsage = 64;

/// Entry point of the `gm` tool. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Default oracle settings, with the seed taken from GM_SEED when it is set.
OracleConfig oracle_config_from_env();

/// Dicke amplitudes of a dense state that is invariant under qubit permutations (within 1e-12).
std::optional<SymmetricDickeState> as_symmetric(const PureState& psi);

struct CrosscheckEntry {
    std::string solver;
    double G_squared;
    bool warning;
};

/**
 * Every solver that applies to the state, each reporting G^2 (g for rank-two
 * states). Dense states get the pure oracle plus, when symmetric, the Dicke
 * solvers; three-qubit states also get the two-qubit reduction with each party
 * traced out.
 */
std::vector<CrosscheckEntry> crosscheck(const StateDescriptor& state, const OracleConfig& cfg);

/// Largest |a - b| over all pairs of crosscheck entries.
double max_pairwise_delta(const std::vector<CrosscheckEntry>& entries);

} // namespace gm::cli
