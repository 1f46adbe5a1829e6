#pragma once

#include "prodrel/cfl/instance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace prodrel::cfl {

// Cost of z_{k,l} under the gap objective: n * ybar_l.
Rational frac_cost_closed_form(int n);

// Facilities of l cost 1 to open, the rest 0; k, l and every client share a
// point, the rest of the pool sits at distance 2^(n^2).
struct GapCertificate {
    int n = 0;
    FacilitySet l = 0;
    std::vector<Rational> opening;  // per facility
    std::vector<Rational> distance; // per facility, the same for every client
    Rational frac_cost;             // w . z_{k,l}
    Rational closed_form;
    Rational int_opt;               // exact, by counting open facilities per class
    Rational int_lb;                // 1
    Rational ratio;                 // int_lb / frac_cost
    bool metric_ok = false;
    std::string lower_bound_argument;

    // w.z < Opt / rho.
    bool gap_inducing(const Rational& rho) const { return frac_cost * rho < int_lb; }
};

GapCertificate gap_certificate(const CflInstance& inst, FacilitySet l);

struct GapRow {
    int n = 0;
    Rational frac_cost;
    Rational ratio;  // 1 / frac_cost
    Rational scaled; // ratio * 10 / (n + 1)
};

std::vector<GapRow> gap_table(int lo, int hi);
std::optional<int> first_ratio_above_one(const std::vector<GapRow>& rows);

} // namespace prodrel::cfl
