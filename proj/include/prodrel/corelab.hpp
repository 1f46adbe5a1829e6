#pragma once

#include "prodrel/hull.hpp"
#include "prodrel/lp.hpp"
#include "prodrel/product_key.hpp"
#include "prodrel/vpolytope.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace prodrel {

// Objective w with its value at a core point and the integer optimum.
// Minimization: gap-inducing when value < optimum / rho. Maximization:
// value > rho * optimum.
struct GapTag {
    std::vector<Rational> objective; // over the core labels; may be empty when the value comes from a closed form
    Rational value;
    Rational optimum;
    Sense sense = Sense::Minimize;
    std::string source;

    bool holds(const Rational& rho) const;
};

struct Core {
    std::string label;
    std::vector<std::string> labels; // coordinates, matching the D-hat labels
    std::vector<std::vector<Rational>> points;
    std::vector<std::string> names; // optional, one per point
    std::vector<std::optional<GapTag>> tags; // empty or one per point

    std::size_t size() const { return points.size(); }
    std::string name(std::size_t i) const;
};

// w over the original variables (the `int_vars` 0/1 ones first, then the
// fractional ones) placed on the singleton keys; every other key gets 0.
std::vector<Rational> embed_objective(std::span<const Rational> w, int int_vars, std::span<const ProductKey> keys);

struct Hyperedge {
    std::vector<std::size_t> vertices; // sorted
    std::optional<ConflictWitness> witness;
    std::string certificate; // how the edge was established when there is no LP witness
};

struct ConflictHypergraph {
    std::size_t vertex_count = 0;
    std::vector<Hyperedge> edges;
    std::size_t subsets_tested = 0;
    std::size_t subsets_implied = 0; // supersets of an edge, conflicting without a test

    std::size_t pair_edges() const;
};

inline constexpr std::size_t max_conflict_subsets = 2'000'000;

// Tests every subset of size 2..max_arity that does not already contain an
// edge. Throws CertificateError if a core point lies in D-hat.
ConflictHypergraph build_conflicts(const Core& core, const VPolytope& dhat, int max_arity = 2, unsigned jobs = 1);

// Re-checks every stored witness exactly.
bool verify_hypergraph(const Core& core, const VPolytope& dhat, const ConflictHypergraph& h,
                       std::string* why = nullptr);

inline constexpr std::size_t max_exact_coloring_vertices = 20;

struct ChromaticBound {
    std::size_t lower = 0;              // certified
    std::vector<std::size_t> clique;    // pairwise conflicting vertices
    std::optional<std::size_t> exact;   // exhaustive search, small hypergraphs only
    std::size_t greedy_upper = 0;       // an upper bound, not a certificate
    std::string method;                 // "clique" or "exhaustive"
};

ChromaticBound chromatic_lower_bound(const ConflictHypergraph& h);

struct BoundReport {
    std::string label;
    std::size_t core_size = 0;
    bool core_valid = false;
    std::string core_detail;
    std::size_t edges_tested = 0;
    std::size_t edges_found = 0;
    std::vector<std::size_t> clique_certificate;
    std::size_t bound = 0;
    std::size_t greedy_upper = 0;
    Rational rho = 1;
    bool gap_tags_present = false;
    bool gap_tags_hold = false;
    bool exact_only = true;
    std::string conclusion;
    std::vector<std::string> notes;
};

// Core validity against dhat, gap tags at rho and the chromatic bound.
BoundReport separation_bound_report(const Core& core, const VPolytope& dhat, const ConflictHypergraph& h,
                                    const Rational& rho);

// Shared tail for cores whose validity was certified elsewhere.
BoundReport assemble_bound_report(std::string label, std::size_t core_size, bool core_valid, std::string core_detail,
                                  std::span<const std::optional<GapTag>> tags, const ConflictHypergraph& h,
                                  const Rational& rho);

} // namespace prodrel
