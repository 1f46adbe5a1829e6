#include "prodrel/cfl/gap.hpp"

#include "prodrel/cfl/core.hpp"
#include "prodrel/cfl/general.hpp"
#include "prodrel/errors.hpp"

namespace prodrel::cfl {

Rational frac_cost_closed_form(int n) {
    if (n < 1)
        throw InputError("n must be positive");
    return 20 * pow2(n - 1) / (n * (1 + ratio(1, n)) * (pow2(n) - 1));
}

GapCertificate gap_certificate(const CflInstance& inst, FacilitySet l) {
    require_legal_l(inst, l);
    const int n = inst.n, f = inst.facilities();
    const Rational far = pow2(static_cast<long>(n) * n);
    GapCertificate g;
    g.n = n;
    g.l = l;
    g.opening.assign(f, Rational(0));
    g.distance.assign(f, Rational(0));
    for (int i = 0; i < f; ++i) {
        if (contains_facility(l, i))
            g.opening[i] = 1;
        else if (!contains_facility(inst.k, i))
            g.distance[i] = far;
    }
    // Objective on the singleton coordinates of z_{k,l}; clients are
    // exchangeable, so sum_j z(x_ij) = m z(x_i1).
    g.frac_cost = 0;
    for (int i = 0; i < f; ++i) {
        if (sgn(g.opening[i]) != 0)
            g.frac_cost += g.opening[i] * core_coord(inst, l, CflKey{FacilitySet{1} << i, std::nullopt});
        if (sgn(g.distance[i]) != 0)
            g.frac_cost += g.distance[i] * inst.m * core_coord(inst, l, CflKey{0, std::make_pair(i, 0L)});
    }
    g.closed_form = frac_cost_closed_form(n);

    // Opening a of l, b of k and c of the far facilities; near demand is free.
    bool first = true;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
            for (int c = 0; c <= n; ++c) {
                if ((a + b + c) * inst.capacity < inst.m)
                    continue;
                Rational spill = inst.m - (a + b) * inst.capacity;
                Rational cost = a + (sgn(spill) > 0 ? far * spill : Rational(0));
                if (first || cost < g.int_opt) {
                    g.int_opt = cost;
                    first = false;
                }
            }
    g.int_lb = 1;
    g.ratio = g.int_lb / g.frac_cost;
    g.lower_bound_argument =
        "an integral solution either opens a facility of l (cost >= 1) or keeps l closed, when k holds at most "
        "nU = m - 2^(-n^2) and at least 2^(-n^2) demand travels 2^(n^2)";

    // One facility per class and two clients carry every distinct distance.
    CflObjective rep;
    for (FacilitySet cls : {inst.k, l, inst.pool & ~l}) {
        int i = facility_list(cls).front();
        rep.opening.push_back(g.opening[i]);
        rep.connection.push_back({g.distance[i], g.distance[i]});
    }
    g.metric_ok = metric_ok(rep);
    return g;
}

std::vector<GapRow> gap_table(int lo, int hi) {
    std::vector<GapRow> rows;
    for (int n = lo; n <= hi; ++n) {
        GapRow r;
        r.n = n;
        r.frac_cost = frac_cost_closed_form(n);
        r.ratio = 1 / r.frac_cost;
        r.scaled = r.ratio * 10 / (n + 1);
        rows.push_back(r);
    }
    return rows;
}

std::optional<int> first_ratio_above_one(const std::vector<GapRow>& rows) {
    for (const auto& r : rows)
        if (r.ratio > 1)
            return r.n;
    return std::nullopt;
}

} // namespace prodrel::cfl
