#include "prodrel/cfl/certificate.hpp"

#include "prodrel/errors.hpp"
#include "prodrel/hull.hpp"
#include "prodrel/parallel.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace prodrel::cfl {

bool PairCertificate::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

namespace {

std::string mismatch_text(const IdentityReport& r) {
    if (r.ok)
        return std::to_string(r.keys_checked) + " keys equal";
    const auto& m = r.mismatches.front();
    return "key " + key_label(m.key) + ": " + format_rational(m.lhs) + " != " + format_rational(m.rhs);
}

Check spec_check(const std::string& name, const SpecReport& r) {
    return {name, r.ok, r.ok ? std::to_string(r.classes_checked) + " classes" : r.detail};
}

// f(o)(key) for one outcome class, without the probability.
Rational outcome_value(const OutcomeClass& c, const CflInstance& inst, const CflKey& key) {
    if ((key.set & ~c.open) != 0)
        return 0;
    return key.x ? c.load[key.x->first] / inst.m : Rational(1);
}

} // namespace

PairCertificate certify_pair(const CflInstance& inst, FacilitySet l, FacilitySet l2, const std::vector<CflKey>& window,
                             const PairOptions& opt) {
    require_pair(inst, l, l2);
    PairCertificate cert;
    cert.l = l;
    cert.l2 = l2;
    std::vector<CflKey> keys = window;
    for (const auto& k : pair_keys(inst, l, l2))
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            keys.push_back(k);
    cert.window_keys = keys.size();

    ExperimentSpec s1 = dstar_spec(inst, l, l2, opt.split), s2 = dstar_spec(inst, l2, l, opt.split);
    cert.checks.push_back(spec_check("dstar_distribution_l", check_distribution(s1, inst)));
    cert.checks.push_back(spec_check("dstar_distribution_l2", check_distribution(s2, inst)));
    cert.checks.push_back(spec_check("dstar_feasible_l", verify_outcome_feasibility(s1, inst)));
    cert.checks.push_back(spec_check("dstar_feasible_l2", verify_outcome_feasibility(s2, inst)));

    auto r1 = verify_star_expectation(inst, l, l2, keys, opt.split, opt.jobs);
    auto r2 = verify_star_expectation(inst, l2, l, keys, opt.split, opt.jobs);
    cert.checks.push_back({"star_expectation_l", r1.ok, mismatch_text(r1)});
    cert.checks.push_back({"star_expectation_l2", r2.ok, mismatch_text(r2)});
    auto mid = midpoint_identity(inst, l, l2, keys, opt.jobs);
    cert.checks.push_back({"midpoint_identity", mid.ok, mismatch_text(mid)});

    // lambda = (1/2, 1/2) on the pair, mu = prob/2 on every outcome class.
    std::vector<Rational> lhs(keys.size()), rhs(keys.size());
    parallel_for(keys.size(), opt.jobs, [&](std::size_t t) {
        Rational mix = 0;
        for (const auto* s : {&s1, &s2})
            for (const auto& c : s->classes)
                if (sgn(c.probability) != 0)
                    mix += c.probability / 2 * outcome_value(c, inst, keys[t]);
        lhs[t] = mix;
        rhs[t] = (core_coord(inst, l, keys[t]) + core_coord(inst, l2, keys[t])) / 2;
    });
    IdentityReport w;
    w.keys_checked = keys.size();
    for (std::size_t t = 0; t < keys.size(); ++t)
        if (lhs[t] != rhs[t] && w.mismatches.empty()) {
            w.ok = false;
            w.mismatches.push_back({keys[t], lhs[t], rhs[t]});
        }
    for (const auto* s : {&s1, &s2})
        for (const auto& c : s->classes)
            cert.witness_outcomes += sgn(c.probability) != 0;
    cert.checks.push_back({"mixture_witness", w.ok, mismatch_text(w)});

    if (opt.lp_check)
        cert.checks.push_back(lp_conflict_check(inst, l, l2, opt.split));
    return cert;
}

Check lp_conflict_check(const CflInstance& inst, FacilitySet l, FacilitySet l2, ShortfallSplit split) {
    require_pair(inst, l, l2);
    std::vector<CflKey> keys;
    for (auto [a, b] : {std::make_pair(l, l2), std::make_pair(l2, l)}) {
        const FacilitySet base = inst.all() & ~a;
        const int tag = facility_list(b & ~a).front();
        for (FacilitySet t = 0;; t = (t - a) & a) {
            keys.push_back(CflKey{base | t, std::nullopt});
            keys.push_back(CflKey{base | t, std::make_pair(tag, 0L)});
            if (t == a)
                break;
        }
    }
    std::vector<std::string> labels;
    for (const auto& k : keys)
        labels.push_back(key_label(k));
    VPolytope vp(labels);
    for (const auto& spec : {dstar_spec(inst, l, l2, split), dstar_spec(inst, l2, l, split)})
        for (const auto& c : spec.classes) {
            if (sgn(c.probability) == 0)
                continue;
            std::vector<Rational> v;
            for (const auto& k : keys)
                v.push_back(outcome_value(c, inst, k));
            vp.add_vertex(std::move(v));
        }
    std::vector<std::vector<Rational>> s(2);
    for (const auto& k : keys) {
        s[0].push_back(core_coord(inst, l, k));
        s[1].push_back(core_coord(inst, l2, k));
    }
    std::string info = std::to_string(keys.size()) + " keys, " + std::to_string(vp.size()) + " outcome vertices";
    try {
        auto w = is_conflicting(s, vp);
        if (!w)
            return {"lp_conflict", false, "no common point on " + info};
        std::string why;
        if (!verify_conflict_witness(s, vp, *w, &why))
            return {"lp_conflict", false, "witness does not re-verify: " + why};
        return {"lp_conflict", true,
                info + ", lambda = (" + format_rational(w->lambda[0]) + ", " + format_rational(w->lambda[1]) + ")"};
    } catch (const PreconditionError& e) {
        return {"lp_conflict", false, std::string("core point inside the outcome hull: ") + e.what()};
    }
}

SeparationCertificate core_separation(const CflInstance& inst, FacilitySet l, std::span<const FacilitySet> partners) {
    require_legal_l(inst, l);
    SeparationCertificate c;
    c.l = l;
    const FacilitySet base = inst.all() & ~l;
    const std::vector<int> rest = facility_list(inst.pool & ~l);
    // g(v) for a point given by its coordinate function (client symmetric).
    auto g = [&](auto&& coord) {
        Rational total = 0;
        for (FacilitySet t = 0;; t = (t - l) & l) {
            const FacilitySet s = base | t;
            Rational term = -inst.eps * coord(CflKey{s, std::nullopt});
            for (int i : rest)
                term += inst.m * coord(CflKey{s, std::make_pair(i, 0L)});
            total += (popcount(t) % 2 ? -term : term);
            if (t == l)
                break;
        }
        return total;
    };
    c.value = g([&](const CflKey& k) { return core_coord(inst, l, k); });
    c.violated = sgn(c.value) < 0;
    c.degenerate = sgn(inst.p_case1) == 0;
    for (FacilitySet l2 : partners) {
        for (const auto& spec : {dstar_spec(inst, l, l2), dstar_spec(inst, l2, l)})
            for (const auto& cls : spec.classes) {
                ++c.outcomes_checked;
                Rational v = g([&](const CflKey& k) { return outcome_value(cls, inst, k); });
                if (sgn(v) < 0 && c.holds_on_outcomes) {
                    c.holds_on_outcomes = false;
                    c.detail = outcome_label(cls) + " of " + spec.name + " gives " + format_rational(v);
                }
            }
    }
    if (c.detail.empty())
        c.detail = c.violated ? "violated by " + format_rational(-c.value)
                              : (c.degenerate ? "case 1 has probability 0, z_{k,l} is not separated"
                                              : "not violated");
    return c;
}

std::vector<PairOrbit> pair_orbits(const CflInstance& inst) {
    const int n = inst.n;
    const FacilitySet l = default_l(inst);
    const std::vector<int> lf = facility_list(l), rf = facility_list(inst.pool & ~l);
    std::vector<PairOrbit> out;
    for (int t = 0; t < n; ++t) {
        FacilitySet l2 = 0;
        for (int i = 0; i < t; ++i)
            l2 |= FacilitySet{1} << lf[i];
        for (int i = 0; i < n - t; ++i)
            l2 |= FacilitySet{1} << rf[i];
        BigInt count = core_size(n) * binomial(n, t) * binomial(n, n - t) / 2;
        out.push_back({t, l, l2, count});
    }
    return out;
}

std::vector<std::pair<FacilitySet, FacilitySet>> sample_pairs(const CflInstance& inst, std::size_t count,
                                                              std::uint64_t seed) {
    std::vector<FacilitySet> ls = all_l_sets(inst);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, ls.size() - 1);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<std::pair<FacilitySet, FacilitySet>> out;
    const std::size_t total = ls.size() * (ls.size() - 1) / 2;
    while (out.size() < std::min(count, total)) {
        std::size_t a = pick(rng), b = pick(rng);
        if (a == b)
            continue;
        if (a > b)
            std::swap(a, b);
        if (seen.insert({a, b}).second)
            out.emplace_back(ls[a], ls[b]);
    }
    return out;
}

} // namespace prodrel::cfl
