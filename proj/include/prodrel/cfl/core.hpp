#pragma once

#include "prodrel/cfl/experiment.hpp"
#include "prodrel/cfl/instance.hpp"

#include <cstdint>
#include <vector>

namespace prodrel::cfl {

inline constexpr int max_enumeration_n = 10;

// Counting: closed-form subset counts. Enumeration: walks every outcome
// (2^(2n) choices of q), n <= 10.
enum class Backend { Counting, Enumeration };

// Per facility: expected opening y and per-client assignment x.
struct ExpectedVector {
    std::vector<Rational> y;
    std::vector<Rational> x;
};

// Closed forms for the expected vector of D_{k,l}.
ExpectedVector expected_vector(const CflInstance& inst, FacilitySet l);

// z_{k,l}(key) = E_{D_{k,l}}[key].
Rational core_coord(const CflInstance& inst, FacilitySet l, const CflKey& key, Backend backend = Backend::Counting);
// E_{D_{k,l}}[key, case 1].
Rational case1_coord(const CflInstance& inst, FacilitySet l, const CflKey& key);
// z*_{k,l}(key) built from z_{k,l} and the case 1 terms of D_{k,l} and D_{k,l'}.
Rational star_vector_coord(const CflInstance& inst, FacilitySet l, FacilitySet l2, const CflKey& key);

struct WindowConfig {
    int max_set = 3;       // all pure keys with |E| <= max_set
    int max_mixed_set = 1; // E x_ij with |E| <= this, every i, sampled clients
    int sampled_clients = 2;
    int random_keys = 200; // larger E, always with an x_ij tag
    std::uint64_t seed = 1;
};

std::vector<CflKey> make_window(const CflInstance& inst, const WindowConfig& cfg);
// Keys aimed at the case split of one pair: F-l, F-l', their unions with
// parts of l and l', with and without assignment tags.
std::vector<CflKey> pair_keys(const CflInstance& inst, FacilitySet l, FacilitySet l2);

struct KeyMismatch {
    CflKey key;
    Rational lhs;
    Rational rhs;
};

struct IdentityReport {
    bool ok = true;
    std::size_t keys_checked = 0;
    std::vector<KeyMismatch> mismatches; // first few only
};

// z*_{k,l}(key) == E_{D*_{k,l}}[key] for every key.
IdentityReport verify_star_expectation(const CflInstance& inst, FacilitySet l, FacilitySet l2,
                                       const std::vector<CflKey>& keys, ShortfallSplit split = ShortfallSplit::Total,
                                       unsigned jobs = 1);
// z*_{k,l} + z*_{k,l'} == z_{k,l} + z_{k,l'} for every key.
IdentityReport midpoint_identity(const CflInstance& inst, FacilitySet l, FacilitySet l2,
                                 const std::vector<CflKey>& keys, unsigned jobs = 1);
// Counting against enumeration backend.
IdentityReport compare_backends(const CflInstance& inst, FacilitySet l, const std::vector<CflKey>& keys,
                                unsigned jobs = 1);

} // namespace prodrel::cfl
