#pragma once

#include "prodrel/cfl/instance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace prodrel::cfl {

// Materialized specs have 1 + 2^(2n) - 2^n classes.
inline constexpr int max_materialized_n = 8;

enum class OutcomeKind { Case1, Case2, Case1Star, Case2aStar, Case2bStar };

// One class of outcomes: facilities `open`, facility i carrying load[i]
// units spread evenly over the clients (x_ij = load[i] / m).
struct OutcomeClass {
    OutcomeKind kind;
    FacilitySet q = 0; // case 2 choice, 0 for case 1
    Rational probability;
    FacilitySet open = 0;
    std::vector<Rational> load;
};

struct ExperimentSpec {
    std::string name;
    std::vector<OutcomeClass> classes;
};

std::string outcome_label(const OutcomeClass& c);

// How case 2.b* removes the case 1* surplus 2^(-n^2) P[1*]/P[2.b*]:
// Total spreads it over l - l', PerFacility takes it from each facility.
enum class ShortfallSplit { Total, PerFacility };

ExperimentSpec d_spec(const CflInstance& inst, FacilitySet l);
ExperimentSpec dstar_spec(const CflInstance& inst, FacilitySet l, FacilitySet l2,
                          ShortfallSplit split = ShortfallSplit::Total);

// E[prod_{i in set} y_i (x_ij)] over the experiment.
Rational expectation(const ExperimentSpec& spec, const CflInstance& inst, const CflKey& key);
// Same, restricted to the classes of one kind.
Rational expectation_on(const ExperimentSpec& spec, const CflInstance& inst, const CflKey& key, OutcomeKind kind);

struct SpecReport {
    bool ok = true;
    std::size_t classes_checked = 0;
    std::optional<std::size_t> bad_class;
    std::string detail;
};

// Probabilities in [0,1] summing to 1; every class's loads sum to m.
SpecReport check_distribution(const ExperimentSpec& spec, const CflInstance& inst);
// Every class (zero-probability ones included) is a feasible CFL point:
// loads >= 0, only on open facilities, at most U, summing to m.
SpecReport verify_outcome_feasibility(const ExperimentSpec& spec, const CflInstance& inst);

} // namespace prodrel::cfl
