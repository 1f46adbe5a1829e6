#include "prodrel/corelab.hpp"

#include "prodrel/errors.hpp"
#include "prodrel/parallel.hpp"

#include <algorithm>
#include <functional>

namespace prodrel {

bool GapTag::holds(const Rational& rho) const {
    if (sense == Sense::Minimize)
        return value * rho < optimum;
    return value > rho * optimum;
}

std::string Core::name(std::size_t i) const {
    if (i < names.size() && !names[i].empty())
        return names[i];
    return "#" + std::to_string(i);
}

std::vector<Rational> embed_objective(std::span<const Rational> w, int int_vars, std::span<const ProductKey> keys) {
    std::vector<Rational> out(keys.size(), Rational(0));
    for (std::size_t k = 0; k < keys.size(); ++k) {
        const ProductKey& key = keys[k];
        if (!key.is_singleton())
            continue;
        std::size_t idx = key.frac ? static_cast<std::size_t>(int_vars + *key.frac)
                                   : static_cast<std::size_t>(key.set[0]);
        if (idx < w.size())
            out[k] = w[idx];
    }
    return out;
}

std::size_t ConflictHypergraph::pair_edges() const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [](const Hyperedge& e) { return e.vertices.size() == 2; }));
}

namespace {

void check_core_shape(const Core& core, const VPolytope& dhat) {
    if (core.labels != dhat.labels())
        throw InputError("core coordinates do not match the polytope labels");
    for (std::size_t i = 0; i < core.size(); ++i)
        if (core.points[i].size() != core.labels.size())
            throw InputError("core point " + core.name(i) + " has the wrong dimension");
}

bool contains_edge(const std::vector<std::size_t>& subset, const std::vector<Hyperedge>& edges) {
    for (const auto& e : edges)
        if (std::includes(subset.begin(), subset.end(), e.vertices.begin(), e.vertices.end()))
            return true;
    return false;
}

// Lexicographic k-subsets of {0..n-1}.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j)
                c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

ConflictHypergraph build_conflicts(const Core& core, const VPolytope& dhat, int max_arity, unsigned jobs) {
    if (max_arity < 2)
        throw InputError("max arity must be at least 2");
    check_core_shape(core, dhat);
    ConflictHypergraph h;
    h.vertex_count = core.size();
    for (std::size_t i = 0; i < core.size(); ++i)
        if (in_hull(core.points[i], dhat))
            throw CertificateError("core point " + core.name(i) + " lies in the canonical relaxation");
    const std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(max_arity), core.size());
    for (std::size_t k = 2; k <= top; ++k) {
        if (binomial(core.size(), k) > max_conflict_subsets)
            throw CapacityError("too many subsets of size " + std::to_string(k));
        std::vector<std::vector<std::size_t>> todo;
        std::vector<std::size_t> c(k);
        for (std::size_t i = 0; i < k; ++i)
            c[i] = i;
        do {
            if (contains_edge(c, h.edges))
                ++h.subsets_implied;
            else
                todo.push_back(c);
        } while (next_combination(c, core.size()));
        std::vector<std::optional<ConflictWitness>> found(todo.size());
        parallel_for(todo.size(), jobs, [&](std::size_t t) {
            std::vector<std::vector<Rational>> s;
            for (std::size_t v : todo[t])
                s.push_back(core.points[v]);
            found[t] = is_conflicting(s, dhat);
        });
        h.subsets_tested += todo.size();
        for (std::size_t t = 0; t < todo.size(); ++t)
            if (found[t])
                h.edges.push_back({todo[t], std::move(found[t]), "lp"});
    }
    return h;
}

bool verify_hypergraph(const Core& core, const VPolytope& dhat, const ConflictHypergraph& h, std::string* why) {
    for (const auto& e : h.edges) {
        if (!e.witness) {
            if (why)
                *why = "edge without witness";
            return false;
        }
        std::vector<std::vector<Rational>> s;
        for (std::size_t v : e.vertices) {
            if (v >= core.size()) {
                if (why)
                    *why = "edge vertex out of range";
                return false;
            }
            s.push_back(core.points[v]);
        }
        if (!verify_conflict_witness(s, dhat, *e.witness, why))
            return false;
    }
    return true;
}

namespace {

using Adjacency = std::vector<std::vector<char>>;

Adjacency pair_adjacency(const ConflictHypergraph& h) {
    Adjacency adj(h.vertex_count, std::vector<char>(h.vertex_count, 0));
    for (const auto& e : h.edges)
        if (e.vertices.size() == 2) {
            adj[e.vertices[0]][e.vertices[1]] = 1;
            adj[e.vertices[1]][e.vertices[0]] = 1;
        }
    return adj;
}

// Bron-Kerbosch with pivoting, keeping the largest clique seen.
void max_clique(const Adjacency& adj, std::vector<std::size_t>& r, std::vector<std::size_t> p,
                std::vector<std::size_t> x, std::vector<std::size_t>& best) {
    if (r.size() + p.size() <= best.size())
        return;
    if (p.empty()) {
        if (x.empty() && r.size() > best.size())
            best = r;
        return;
    }
    std::size_t pivot = p[0], most = 0;
    for (const auto* side : {&p, &x})
        for (std::size_t u : *side) {
            std::size_t cnt = 0;
            for (std::size_t v : p)
                cnt += adj[u][v];
            if (cnt > most || (cnt == most && u < pivot)) {
                most = cnt;
                pivot = u;
            }
        }
    std::vector<std::size_t> cand;
    for (std::size_t v : p)
        if (!adj[pivot][v])
            cand.push_back(v);
    for (std::size_t v : cand) {
        std::vector<std::size_t> np, nx;
        for (std::size_t u : p)
            if (adj[v][u])
                np.push_back(u);
        for (std::size_t u : x)
            if (adj[v][u])
                nx.push_back(u);
        r.push_back(v);
        max_clique(adj, r, std::move(np), std::move(nx), best);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

// Edges grouped by their largest vertex: they become fully colored there.
std::vector<std::vector<const Hyperedge*>> edges_by_last(const ConflictHypergraph& h) {
    std::vector<std::vector<const Hyperedge*>> out(h.vertex_count);
    for (const auto& e : h.edges)
        if (!e.vertices.empty())
            out[e.vertices.back()].push_back(&e);
    return out;
}

bool monochromatic(const Hyperedge& e, const std::vector<std::size_t>& color) {
    for (std::size_t v : e.vertices)
        if (color[v] != color[e.vertices[0]])
            return false;
    return true;
}

std::size_t greedy_colors(const ConflictHypergraph& h) {
    auto by_last = edges_by_last(h);
    std::vector<std::size_t> color(h.vertex_count, 0);
    std::size_t used = 0;
    for (std::size_t v = 0; v < h.vertex_count; ++v) {
        for (std::size_t c = 0;; ++c) {
            color[v] = c;
            bool ok = true;
            for (const auto* e : by_last[v])
                ok = ok && !monochromatic(*e, color);
            if (ok)
                break;
        }
        used = std::max(used, color[v] + 1);
    }
    return used;
}

constexpr std::size_t coloring_budget = 5'000'000;

// 1 colorable, 0 not, -1 budget exhausted.
int colorable(const ConflictHypergraph& h, std::size_t k) {
    auto by_last = edges_by_last(h);
    std::vector<std::size_t> color(h.vertex_count, 0);
    std::size_t nodes = 0;
    bool out_of_budget = false;
    std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t v, std::size_t used) {
        if (v == h.vertex_count)
            return true;
        if (++nodes > coloring_budget) {
            out_of_budget = true;
            return false;
        }
        for (std::size_t c = 0; c < std::min(k, used + 1); ++c) {
            color[v] = c;
            bool ok = true;
            for (const auto* e : by_last[v])
                ok = ok && !monochromatic(*e, color);
            if (ok && go(v + 1, std::max(used, c + 1)))
                return true;
            if (out_of_budget)
                return false;
        }
        return false;
    };
    bool r = go(0, 0);
    if (out_of_budget)
        return -1;
    return r ? 1 : 0;
}

} // namespace

ChromaticBound chromatic_lower_bound(const ConflictHypergraph& h) {
    ChromaticBound b;
    if (h.vertex_count == 0)
        return b;
    auto adj = pair_adjacency(h);
    std::vector<std::size_t> r, p(h.vertex_count);
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = i;
    max_clique(adj, r, p, {}, b.clique);
    std::sort(b.clique.begin(), b.clique.end());
    b.lower = b.clique.size();
    b.method = "clique";
    b.greedy_upper = greedy_colors(h);
    if (b.greedy_upper == b.lower) {
        b.exact = b.lower;
    } else if (h.vertex_count <= max_exact_coloring_vertices) {
        for (std::size_t k = b.lower; k < b.greedy_upper; ++k) {
            int c = colorable(h, k);
            if (c < 0)
                break;
            if (c == 1) {
                b.exact = k;
                break;
            }
        }
        if (!b.exact && colorable(h, b.greedy_upper - 1) == 0)
            b.exact = b.greedy_upper;
        if (b.exact && *b.exact > b.lower) {
            b.lower = *b.exact;
            b.method = "exhaustive";
        }
    }
    return b;
}

BoundReport assemble_bound_report(std::string label, std::size_t core_size, bool core_valid, std::string core_detail,
                                  std::span<const std::optional<GapTag>> tags, const ConflictHypergraph& h,
                                  const Rational& rho) {
    if (rho < 1)
        throw InputError("rho must be at least 1");
    BoundReport rep;
    rep.label = std::move(label);
    rep.core_size = core_size;
    rep.core_valid = core_valid;
    rep.core_detail = std::move(core_detail);
    rep.edges_tested = h.subsets_tested;
    rep.edges_found = h.edges.size();
    rep.rho = rho;
    rep.gap_tags_present = core_size > 0 && tags.size() == core_size &&
                           std::all_of(tags.begin(), tags.end(), [](const auto& t) { return t.has_value(); });
    rep.gap_tags_hold = rep.gap_tags_present &&
                        std::all_of(tags.begin(), tags.end(), [&](const auto& t) { return t->holds(rho); });
    auto cb = chromatic_lower_bound(h);
    rep.clique_certificate = cb.clique;
    rep.greedy_upper = cb.greedy_upper;
    rep.bound = core_valid ? cb.lower : 0;
    if (cb.method == "exhaustive")
        rep.notes.push_back("bound " + std::to_string(cb.lower) + " from exhaustive coloring; clique certificate has " +
                            std::to_string(cb.clique.size()));
    rep.notes.push_back("greedy coloring uses " + std::to_string(cb.greedy_upper) +
                        " colors; this is an upper bound on the chromatic number of the tested hypergraph only");
    rep.notes.push_back("finite cores certify lower bounds only, never matching upper bounds");
    if (!core_valid) {
        rep.exact_only = true;
        rep.conclusion = "no bound: the core is not valid (" + rep.core_detail + ")";
        return rep;
    }
    rep.exact_only = !rep.gap_tags_hold;
    const std::string n = std::to_string(rep.bound);
    if (rep.gap_tags_hold)
        rep.conclusion = "every rho-approximate product relaxation, and every rho-approximate extended formulation "
                         "of the class, has at least " + n + " inequalities (rho = " + format_rational(rho) + ")";
    else
        rep.conclusion = "every exact product relaxation has at least " + n +
                         " inequalities; gap tags " + (rep.gap_tags_present ? "fail at this rho" : "missing") +
                         ", so nothing follows for approximate relaxations";
    return rep;
}

BoundReport separation_bound_report(const Core& core, const VPolytope& dhat, const ConflictHypergraph& h,
                                    const Rational& rho) {
    check_core_shape(core, dhat);
    bool valid = true;
    std::string detail = "every core point lies outside the canonical relaxation";
    for (std::size_t i = 0; i < core.size() && valid; ++i)
        if (in_hull(core.points[i], dhat)) {
            valid = false;
            detail = "core point " + core.name(i) + " lies in the canonical relaxation";
        }
    if (valid) {
        std::string why;
        if (!verify_hypergraph(core, dhat, h, &why)) {
            valid = false;
            detail = "hyperedge witness rejected: " + why;
        }
    }
    if (!core.tags.empty() && core.tags.size() != core.size())
        throw InputError("gap tags must cover every core point");
    for (std::size_t i = 0; i < core.tags.size(); ++i) {
        const auto& t = core.tags[i];
        if (t && !t->objective.empty() && dot(t->objective, core.points[i]) != t->value)
            throw CertificateError("gap tag of " + core.name(i) + " does not match its objective");
    }
    return assemble_bound_report(core.label, core.size(), valid, detail, core.tags, h, rho);
}

} // namespace prodrel
