#include "prodrel/cfl/experiment.hpp"

#include "prodrel/errors.hpp"

namespace prodrel::cfl {

namespace {

void require_materializable(const CflInstance& inst) {
    if (inst.n > max_materialized_n)
        throw CapacityError("outcome classes are materialized only up to n = " + std::to_string(max_materialized_n));
}

Rational case2_probability(const CflInstance& inst) { return inst.p_case2 / Rational(inst.case2_subsets); }

// Opened facilities of l in q take load_l each, k splits the rest.
OutcomeClass case2_class(const CflInstance& inst, FacilitySet l, FacilitySet q, OutcomeKind kind) {
    OutcomeClass c{kind, q, case2_probability(inst), inst.k | q, std::vector<Rational>(inst.facilities())};
    Rational rest = inst.m;
    for (int i : facility_list(q & l)) {
        c.load[i] = inst.load_l;
        rest -= inst.load_l;
    }
    for (int i : facility_list(inst.k))
        c.load[i] = rest / inst.n;
    return c;
}

template <class Fn>
void for_each_case2_q(const CflInstance& inst, FacilitySet l, Fn&& fn) {
    // Submasks of the pool in increasing order.
    for (FacilitySet q = 0;; q = (q - inst.pool) & inst.pool) {
        if (q & l)
            fn(q);
        if (q == inst.pool)
            break;
    }
}

} // namespace

std::string outcome_label(const OutcomeClass& c) {
    switch (c.kind) {
    case OutcomeKind::Case1:
        return "case 1";
    case OutcomeKind::Case1Star:
        return "case 1*";
    case OutcomeKind::Case2:
        return "case 2 q={" + format_facility_set(c.q) + "}";
    case OutcomeKind::Case2aStar:
        return "case 2.a* q={" + format_facility_set(c.q) + "}";
    case OutcomeKind::Case2bStar:
        return "case 2.b* q={" + format_facility_set(c.q) + "}";
    }
    return "?";
}

ExperimentSpec d_spec(const CflInstance& inst, FacilitySet l) {
    require_legal_l(inst, l);
    require_materializable(inst);
    ExperimentSpec s{"D_{k,l} l={" + format_facility_set(l) + "}", {}};
    OutcomeClass c1{OutcomeKind::Case1, 0, inst.p_case1, inst.all() & ~l, std::vector<Rational>(inst.facilities())};
    for (int i : facility_list(inst.k))
        c1.load[i] = ratio(inst.m, inst.n);
    s.classes.push_back(std::move(c1));
    for_each_case2_q(inst, l, [&](FacilitySet q) { s.classes.push_back(case2_class(inst, l, q, OutcomeKind::Case2)); });
    return s;
}

ExperimentSpec dstar_spec(const CflInstance& inst, FacilitySet l, FacilitySet l2, ShortfallSplit split) {
    require_pair(inst, l, l2);
    require_materializable(inst);
    ExperimentSpec s{"D*_{k,l} l={" + format_facility_set(l) + "} l'={" + format_facility_set(l2) + "}", {}};
    const FacilitySet only_l = l & ~l2;
    const int gap = popcount(only_l);

    OutcomeClass c1{OutcomeKind::Case1Star, 0, inst.p_case1, inst.all() & ~l2, std::vector<Rational>(inst.facilities())};
    for (int i : facility_list(inst.k))
        c1.load[i] = inst.capacity;
    for (int i : facility_list(only_l))
        c1.load[i] = inst.eps / gap;
    s.classes.push_back(std::move(c1));

    const FacilitySet q_b = inst.pool & ~l2;
    const Rational p_b = case2_probability(inst);
    const Rational surplus = inst.eps * inst.p_case1 / p_b;
    for_each_case2_q(inst, l, [&](FacilitySet q) {
        if (q != q_b) {
            s.classes.push_back(case2_class(inst, l, q, OutcomeKind::Case2aStar));
            return;
        }
        OutcomeClass c{OutcomeKind::Case2bStar, q, p_b, inst.k | q, std::vector<Rational>(inst.facilities())};
        Rational each = inst.load_l - (split == ShortfallSplit::Total ? surplus / gap : surplus);
        Rational rest = inst.m;
        for (int i : facility_list(only_l)) {
            c.load[i] = each;
            rest -= each;
        }
        for (int i : facility_list(inst.k))
            c.load[i] = rest / inst.n;
        s.classes.push_back(std::move(c));
    });
    return s;
}

namespace {

Rational class_value(const OutcomeClass& c, const CflInstance& inst, const CflKey& key) {
    if ((key.set & ~c.open) != 0)
        return 0;
    if (!key.x)
        return c.probability;
    return c.probability * c.load[key.x->first] / inst.m;
}

void check_key(const CflInstance& inst, const CflKey& key) {
    if ((key.set & ~inst.all()) != 0)
        throw InputError("key " + key_label(key) + " names a facility outside the instance");
    if (key.x && (key.x->first < 0 || key.x->first >= inst.facilities() || key.x->second < 0 ||
                  key.x->second >= inst.m))
        throw InputError("key " + key_label(key) + " names an assignment outside the instance");
}

} // namespace

Rational expectation(const ExperimentSpec& spec, const CflInstance& inst, const CflKey& key) {
    check_key(inst, key);
    Rational e = 0;
    for (const auto& c : spec.classes)
        e += class_value(c, inst, key);
    return e;
}

Rational expectation_on(const ExperimentSpec& spec, const CflInstance& inst, const CflKey& key, OutcomeKind kind) {
    check_key(inst, key);
    Rational e = 0;
    for (const auto& c : spec.classes)
        if (c.kind == kind)
            e += class_value(c, inst, key);
    return e;
}

SpecReport check_distribution(const ExperimentSpec& spec, const CflInstance& inst) {
    SpecReport r;
    Rational total = 0;
    for (std::size_t ci = 0; ci < spec.classes.size(); ++ci) {
        const auto& c = spec.classes[ci];
        ++r.classes_checked;
        if (c.probability < 0 || c.probability > 1) {
            r = {false, r.classes_checked, ci, outcome_label(c) + ": probability " + format_rational(c.probability)};
            return r;
        }
        total += c.probability;
        Rational sum = 0;
        for (const auto& v : c.load)
            sum += v;
        if (sum != inst.m) {
            r = {false, r.classes_checked, ci, outcome_label(c) + ": loads sum to " + format_rational(sum)};
            return r;
        }
    }
    if (total != 1) {
        r.ok = false;
        r.detail = "probabilities sum to " + format_rational(total);
    }
    return r;
}

SpecReport verify_outcome_feasibility(const ExperimentSpec& spec, const CflInstance& inst) {
    SpecReport r;
    for (std::size_t ci = 0; ci < spec.classes.size(); ++ci) {
        const auto& c = spec.classes[ci];
        ++r.classes_checked;
        Rational sum = 0;
        auto fail = [&](const std::string& what) {
            r.ok = false;
            r.bad_class = ci;
            r.detail = outcome_label(c) + ": " + what;
        };
        for (int i = 0; i < inst.facilities(); ++i) {
            const Rational& v = c.load[i];
            std::string fac = "facility " + std::to_string(i + 1);
            if (v < 0)
                fail(fac + " load " + format_rational(v) + " < 0");
            else if (!contains_facility(c.open, i) && v != 0)
                fail(fac + " is closed but carries " + format_rational(v));
            else if (v > inst.capacity)
                fail(fac + " load " + format_rational(v) + " > U = " + format_rational(inst.capacity));
            if (!r.ok)
                return r;
            sum += v;
        }
        if (sum != inst.m) {
            fail("total load " + format_rational(sum) + " != m = " + std::to_string(inst.m));
            return r;
        }
    }
    return r;
}

} // namespace prodrel::cfl
