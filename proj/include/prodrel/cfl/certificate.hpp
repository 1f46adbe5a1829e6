#pragma once

#include "prodrel/cfl/core.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace prodrel::cfl {

struct Check {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct PairOptions {
    unsigned jobs = 1;
    bool lp_check = true; // also run the generic LP test on a small window
    ShortfallSplit split = ShortfallSplit::Total;
};

// Conflict certificate for {z_{k,l}, z_{k,l'}}: the midpoint of the pair
// equals (z*_{k,l} + z*_{k,l'})/2, a mixture of feasible outcome vectors.
struct PairCertificate {
    FacilitySet l = 0, l2 = 0;
    std::size_t window_keys = 0;
    std::size_t witness_outcomes = 0; // classes with positive weight
    std::vector<Check> checks;

    bool ok() const;
};

PairCertificate certify_pair(const CflInstance& inst, FacilitySet l, FacilitySet l2, const std::vector<CflKey>& window,
                             const PairOptions& opt = {});

// The generic LP conflict test restricted to the keys (F-l) u T, T <= l (plain
// and tagged with one assignment of l'-l) and the same for l', against the
// outcome vectors of D*_{k,l} and D*_{k,l'}.
Check lp_conflict_check(const CflInstance& inst, FacilitySet l, FacilitySet l2, ShortfallSplit split);

// z_{k,l} against the inequality, valid for every feasible point,
//   sum_{T <= l} (-1)^|T| [ sum_{i in R, j} z((F-l) u T, x_ij) - 2^(-n^2) z((F-l) u T) ] >= 0,
// R = F - k - l: when exactly F - l is open, k holds at most nU = m - 2^(-n^2).
struct SeparationCertificate {
    FacilitySet l = 0;
    Rational value;     // left side minus right side at z_{k,l}
    bool violated = false;
    bool degenerate = false; // case 1 has probability 0 (n = 4)
    std::size_t outcomes_checked = 0;
    bool holds_on_outcomes = true;
    std::string detail;
};

SeparationCertificate core_separation(const CflInstance& inst, FacilitySet l,
                                      std::span<const FacilitySet> partners = {});

// Pairs (l, l') up to relabeling the pool: one class per overlap |l & l'|.
struct PairOrbit {
    int overlap = 0;
    FacilitySet l = 0, l2 = 0;
    BigInt unordered_pairs;
};

std::vector<PairOrbit> pair_orbits(const CflInstance& inst);
std::vector<std::pair<FacilitySet, FacilitySet>> sample_pairs(const CflInstance& inst, std::size_t count,
                                                              std::uint64_t seed);

} // namespace prodrel::cfl
