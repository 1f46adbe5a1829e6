#pragma once

#include "prodrel/product_key.hpp"
#include "prodrel/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace prodrel::cfl {

// Facility sets as bit masks over 0..3n-1.
using FacilitySet = std::uint64_t;

inline constexpr int min_n = 4;
inline constexpr int max_n = 21; // 3n facilities must fit a mask

// I(3n, n^4+1, U, 1). Facilities 0..n-1 form k; l is any n-subset of the
// pool n..3n-1.
struct CflInstance {
    int n = 0;
    long m = 0;        // clients
    Rational capacity; // U, with m - nU = 2^(-n^2)
    Rational eps;      // 2^(-n^2)
    Rational p_case1;  // 1 - 20/(n^2 (1 + 1/n))
    Rational p_case2;  // 20/(n^2 (1 + 1/n))
    Rational y_l;      // expected opening of a facility of l
    Rational load_l;   // demand taken by an opened facility of l in case 2
    BigInt case2_subsets; // 2^(2n) - 2^n choices of q
    FacilitySet k = 0;
    FacilitySet pool = 0;

    int facilities() const { return 3 * n; }
    FacilitySet all() const { return k | pool; }
};

// Throws ValidityError for n < 4 (case 2 probability above 1) and
// CapacityError for n > 21.
CflInstance make_instance(int n);

bool is_legal_l(const CflInstance& inst, FacilitySet l);
void require_legal_l(const CflInstance& inst, FacilitySet l);
void require_pair(const CflInstance& inst, FacilitySet l, FacilitySet l2);
FacilitySet default_l(const CflInstance& inst);
// All legal l in lexicographic order of their facility lists.
std::vector<FacilitySet> all_l_sets(const CflInstance& inst);
BigInt core_size(int n);

// Parses "5,6,7,8,9" (0-based facility indices).
FacilitySet parse_facility_set(const std::string& text);
std::string format_facility_set(FacilitySet s);
std::vector<int> facility_list(FacilitySet s);

// A product coordinate of the core: prod_{i in set} y_i, optionally times x_ij.
struct CflKey {
    FacilitySet set = 0;
    std::optional<std::pair<int, long>> x; // (facility, client)

    bool operator==(const CflKey&) const = default;
};

// y_i is integer variable i; x_ij is fractional variable i*m + j.
ProductKey to_product_key(const CflInstance& inst, const CflKey& key);
CflKey from_product_key(const CflInstance& inst, const ProductKey& key);
// "{y1,y7}x[3,12]" with 1-based indices.
std::string key_label(const CflKey& key);

inline int popcount(FacilitySet s) { return __builtin_popcountll(s); }
inline bool contains_facility(FacilitySet s, int i) { return (s >> i) & 1ULL; }

} // namespace prodrel::cfl
