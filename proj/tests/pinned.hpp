#pragma once

// Reference values produced by tests/oracles/pins.py (mpmath at 50 digits,
// numpy for the grid scans). Regenerate there, never by running the library.
namespace pinned {

// inf_j prod_{l != j} rho(z_j, z_l), radial a = 1/2.
inline constexpr double kCarlesonRadial20 = 0.014829531235271082;
inline constexpr int kCarlesonRadial20Argmin = 10;
inline constexpr double kCarlesonRadial30 = 0.014676895346655965;
inline constexpr int kCarlesonRadial30Argmin = 16;
inline constexpr double kCarlesonRadial40 = 0.014671273143427699;
inline constexpr int kCarlesonRadial40Argmin = 21;
// spiral a = 1/4, b = 1/2, J = 30
inline constexpr double kCarlesonSpiral30 = 0.68735463487198321;
inline constexpr int kCarlesonSpiral30Argmin = 1;

// m! (prod_{l != j} rho(z_j, z_l) / (1 + |z_j|))^m over j = 5..35, radial(1/2, 40).
inline constexpr double kBandMin[4] = {0, 0.0073356374461899777, 0.00010762315348388924, 2.3684533043204077e-6};
inline constexpr double kBandMax[4] = {0, 0.0096010309489103432, 0.00018435959056386849, 5.3101264041964219e-6};

// Closure of radial(1/2, 30): dyadic arc scan at depth 6, 64 samples per arc,
// and the log-distance integral.
inline constexpr double kArcRadial30 = 0.23866850304984685;
inline constexpr double kEntropyRadial30 = -1.15862952851206;

// Sublevel covering for the odd/even split of radial(1/2, 20), eps = 0.1,
// S = 8, M0 = 16.
inline constexpr double kCoveringLambdaQ11 = 0.5851371143513167;
inline constexpr double kCoveringCoarseQ11 = 0.5849951103655059;
inline constexpr int kCoveringSamplesQ11 = 509;
inline constexpr double kCoveringLambdaQ12 = 0.5852080402999277;
inline constexpr double kCoveringCoarseQ12 = 0.5851371143513167;
inline constexpr int kCoveringSamplesQ12 = 563;

}  // namespace pinned
