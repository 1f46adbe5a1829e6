#include "prodrel/cfl/pipeline.hpp"

#include "prodrel/cfl/gap.hpp"
#include "prodrel/parallel.hpp"

#include <algorithm>
#include <map>

namespace prodrel::cfl {

CoreRun run_core(const CflInstance& inst, const CoreRunOptions& opt) {
    CoreRun run;
    run.n = inst.n;
    run.core = all_l_sets(inst);
    run.orbits = pair_orbits(inst);
    const auto window = make_window(inst, opt.window);

    std::vector<FacilitySet> partners;
    for (const auto& o : run.orbits)
        partners.push_back(o.l2);
    run.validity = core_separation(inst, default_l(inst), partners);

    PairOptions po;
    po.lp_check = opt.lp_check;
    auto pairs = sample_pairs(inst, opt.sampled_pairs, opt.seed);
    run.representatives.resize(run.orbits.size());
    run.sampled.resize(pairs.size());
    // Outer parallelism over pairs; each certificate runs single-threaded.
    const std::size_t reps = run.orbits.size();
    parallel_for(reps + pairs.size(), opt.jobs, [&](std::size_t i) {
        if (i < reps)
            run.representatives[i] = certify_pair(inst, run.orbits[i].l, run.orbits[i].l2, window, po);
        else
            run.sampled[i - reps] = certify_pair(inst, pairs[i - reps].first, pairs[i - reps].second, window, po);
    });

    run.counted_pairs = 0;
    for (const auto& o : run.orbits)
        run.counted_pairs += o.unordered_pairs;
    const BigInt c = core_size(inst.n);
    run.orbits_cover = run.counted_pairs == c * (c - 1) / 2;

    std::map<std::pair<FacilitySet, FacilitySet>, bool> direct;
    for (const auto& p : run.sampled)
        direct[{std::min(p.l, p.l2), std::max(p.l, p.l2)}] = p.ok();
    std::map<int, bool> orbit_ok;
    for (const auto& p : run.representatives)
        orbit_ok[popcount(p.l & p.l2)] = p.ok();

    run.graph.vertex_count = run.core.size();
    for (std::size_t a = 0; a < run.core.size(); ++a)
        for (std::size_t b = a + 1; b < run.core.size(); ++b) {
            FacilitySet la = run.core[a], lb = run.core[b];
            auto it = direct.find({std::min(la, lb), std::max(la, lb)});
            int t = popcount(la & lb);
            if (it != direct.end()) {
                ++run.graph.subsets_tested;
                if (it->second)
                    run.graph.edges.push_back({{a, b}, std::nullopt, "certified: midpoint is a mixture of D* outcomes"});
            } else if (run.orbits_cover && orbit_ok[t]) {
                ++run.graph.subsets_implied;
                run.graph.edges.push_back(
                    {{a, b}, std::nullopt, "overlap " + std::to_string(t) + ": image of the certified representative"});
            }
        }
    run.graph.subsets_tested += reps;

    run.tags.reserve(run.core.size());
    for (FacilitySet l : run.core) {
        auto g = gap_certificate(inst, l);
        GapTag t;
        t.value = g.frac_cost;
        t.optimum = g.int_lb;
        t.sense = Sense::Minimize;
        t.source = "gap objective: l costs 1 to open, the rest of the pool is far";
        run.tags.emplace_back(std::move(t));
    }

    bool valid = run.validity.violated && run.validity.holds_on_outcomes;
    std::string detail = valid ? "z_{k,l} violates an inequality valid for all feasible points (checked for the "
                                 "default l; the other core points are its images)"
                               : run.validity.detail;
    run.report = assemble_bound_report("cfl n=" + std::to_string(inst.n), run.core.size(), valid, detail, run.tags,
                                       run.graph, opt.rho);
    return run;
}

} // namespace prodrel::cfl
