#pragma once

#include "prodrel/cfl/certificate.hpp"
#include "prodrel/corelab.hpp"

#include <cstdint>
#include <vector>

namespace prodrel::cfl {

struct CoreRunOptions {
    WindowConfig window;
    std::size_t sampled_pairs = 40;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    bool lp_check = true;
    Rational rho = 1;
};

// The windowed core {z_{k,l} : l legal} with its conflict graph. One pair per
// overlap class is certified, plus a seeded sample; the remaining edges
// follow because relabeling the pool is a symmetry of the instance that acts
// transitively on pairs of equal overlap.
struct CoreRun {
    int n = 0;
    std::vector<FacilitySet> core;
    SeparationCertificate validity;
    std::vector<PairOrbit> orbits;
    std::vector<PairCertificate> representatives; // one per orbit
    std::vector<PairCertificate> sampled;
    BigInt counted_pairs; // sum over orbits
    bool orbits_cover = false;
    ConflictHypergraph graph;
    std::vector<std::optional<GapTag>> tags;
    BoundReport report;
};

CoreRun run_core(const CflInstance& inst, const CoreRunOptions& opt);

} // namespace prodrel::cfl
