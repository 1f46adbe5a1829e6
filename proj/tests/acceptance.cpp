// Acceptance suite: one PASS/FAIL line per criterion. Run all, or one with
// --only N.

#include "cfl_oracle.hpp"
#include "fixtures.hpp"

#include "json.hpp"

#include "prodrel/cfl/certificate.hpp"
#include "prodrel/cfl/gap.hpp"
#include "prodrel/cfl/general.hpp"
#include "prodrel/cfl/pipeline.hpp"
#include "prodrel/errors.hpp"
#include "prodrel/fourier_motzkin.hpp"
#include "prodrel/hull.hpp"
#include "prodrel/io.hpp"
#include "prodrel/product.hpp"
#include "prodrel/sherali_adams.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace prodrel;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok)
            detail = why;
        ok = false;
    }
    void require(bool cond, const std::string& why) {
        if (!cond)
            fail(why);
    }
};

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::vector<std::vector<int>> all_points(int d) {
    std::vector<std::vector<int>> out;
    for (int bits = 0; bits < (1 << d); ++bits) {
        std::vector<int> p(d);
        for (int i = 0; i < d; ++i)
            p[i] = (bits >> (d - 1 - i)) & 1;
        out.push_back(p);
    }
    return out;
}

// 1. -------------------------------------------------------------------
Outcome sa_exactness() {
    Outcome o;
    std::vector<std::pair<std::string, HPolyhedron>> fx{{"toy_half", fixtures::toy_half()},
                                                       {"knapsack3", fixtures::knapsack3()},
                                                       {"cover4", fixtures::cover4()},
                                                       {"cycle4", fixtures::cycle4()}};
    std::string done;
    for (auto& [name, p] : fx) {
        const auto& vars = p.variables();
        auto top = sa_project(sa_lift(p, vars, static_cast<int>(vars.size())));
        auto hull = fixtures::integer_hull(p);
        o.require(contains(top, hull) && contains(hull, top), name + ": top level differs from the integer hull");
        done += (done.empty() ? "" : ", ") + name + " (d=" + std::to_string(vars.size()) + ")";
    }
    if (o.ok)
        o.detail = "top level equals the hull on " + done;
    return o;
}

// 2. -------------------------------------------------------------------
Outcome sa_level_two() {
    Outcome o;
    HPolyhedron p = fixtures::toy_half();
    LiftedSystem l = sa_lift(p, p.variables(), 2);
    // Level 2 over two variables: each row times each of the four atoms
    // z, x1 - z, x2 - z, 1 - x1 - x2 + z, read off at the atom's point.
    // x1 + x2 <= 3/2 at (1,1) gives -z/2 >= 0; the box rows give atoms >= 0.
    HPolyhedron hand = parse_polyhedron("vars: x1 x2 z{1,2}\n"
                                        "0 0 1/2 <= 0\n"
                                        "0 0 -1 <= 0\n"
                                        "-1 0 1 <= 0\n"
                                        "0 -1 1 <= 0\n"
                                        "1 1 -1 <= 1\n");
    o.require(l.system.variables() == hand.variables(), "lifted variables are not x1 x2 z{1,2}");
    if (!o.ok)
        return o;
    o.require(contains(l.system, hand) && contains(hand, l.system), "lifted system differs from the hand-built one");
    HPolyhedron target = parse_polyhedron("vars: x1 x2\n1 1 <= 1\n-1 0 <= 0\n0 -1 <= 0\n");
    HPolyhedron proj = sa_project(l);
    o.require(same_set(proj, target), "projection is not {x1 + x2 <= 1} with the box");
    o.require(same_set(project_onto(hand, p.variables()), target), "hand system projects elsewhere");
    if (o.ok)
        o.detail = "lifted system matches the hand-built one; projection is {x1+x2<=1, x>=0}";
    return o;
}

// 3. -------------------------------------------------------------------
Outcome indicator_completeness() {
    Outcome o;
    std::size_t checked = 0;
    for (int d = 1; d <= 4; ++d)
        for (const auto& s : all_points(d)) {
            auto ex = indicator_coefficients(s);
            for (const auto& t : all_points(d)) {
                Rational v = ex.constant;
                for (const auto& [key, a] : ex.coefficients) {
                    bool on = true;
                    for (int i : key.set)
                        on = on && t[i] == 1;
                    if (on)
                        v += a;
                }
                o.require(v == (s == t ? 1 : 0), "d=" + std::to_string(d) + " s=(" + join(s) + ") s'=(" + join(t) +
                                                     "): sum is " + format_rational(v));
                ++checked;
            }
        }
    if (o.ok)
        o.detail = std::to_string(checked) + " (s, s') pairs for d = 1..4";
    return o;
}

// 4. -------------------------------------------------------------------
Outcome translation_sandwich() {
    Outcome o;
    std::string done;
    for (const auto& f : {fixtures::duplicate_ef(), fixtures::disjunctive_ef(), fixtures::sa_lifted_ef()}) {
        auto t = translate_ef(f.q, f.section);
        const auto& x = f.section.x_vars;
        auto proj_q = project_onto(f.q, x);
        auto proj_t = project_onto(t.system, x);
        o.require(t.system.row_count() == f.q.row_count(), f.name + ": row count changed");
        o.require(contains(proj_q, proj_t), f.name + ": proj T[Q] leaves proj Q");
        o.require(contains(proj_t, f.p_hull), f.name + ": conv(X) leaves proj T[Q]");
        done += f.name + "; ";
    }
    auto m = fixtures::sa_mixed_ef();
    auto t = translate_mixed_ef(m.q, m.section, m.p);
    auto proj_q = project_onto(m.q, m.p.variables());
    auto proj_t = project_onto(t.system, m.p.variables());
    o.require(t.system.row_count() == m.q.row_count(), m.name + ": row count changed");
    o.require(contains(proj_q, proj_t), m.name + ": proj T[Q] leaves proj Q");
    o.require(contains(proj_t, fixtures::mixed_hull(m.p, m.ints)), m.name + ": mixed hull leaves proj T[Q]");
    done += m.name;
    if (o.ok)
        o.detail = "both inclusions and row counts on: " + done;
    return o;
}

// 5. -------------------------------------------------------------------
Outcome expected_vector_forms() {
    Outcome o;
    std::size_t coords = 0;
    for (int n : {4, 5, 6}) {
        auto inst = cfl::make_instance(n);
        for (auto l : {cfl::default_l(inst), cfl::all_l_sets(inst).back()}) {
            auto s = oracle::setup(n, cfl::facility_list(l));
            auto d = oracle::experiment_d(s);
            auto v = cfl::expected_vector(inst, l);
            Rational sum = 0;
            for (int i = 0; i < 3 * n; ++i) {
                o.require(v.y[i] == oracle::expect(s, d, {i}, std::nullopt),
                          "n=" + std::to_string(n) + " y" + std::to_string(i + 1));
                o.require(v.x[i] == oracle::expect(s, d, {}, i), "n=" + std::to_string(n) + " x" + std::to_string(i + 1));
                sum += v.x[i];
                coords += 2;
            }
            o.require(sum == 1, "n=" + std::to_string(n) + ": sum_i xbar_ij = " + format_rational(sum));
        }
    }
    if (o.ok)
        o.detail = std::to_string(coords) + " coordinates match enumerated outcomes; sum_i xbar_ij = 1";
    return o;
}

// 6. -------------------------------------------------------------------
// Capacity and coverage checked directly on the simulated outcomes.
std::string outcome_violation(const oracle::Setup& s, const std::vector<oracle::Outcome>& d) {
    for (std::size_t c = 0; c < d.size(); ++c) {
        Rational total = 0;
        for (int i = 0; i < 3 * s.n; ++i) {
            const Rational& load = d[c].load[i];
            if (load < 0)
                return "outcome " + std::to_string(c) + ": negative load";
            if (load > 0 && !d[c].open[i])
                return "outcome " + std::to_string(c) + ": closed facility " + std::to_string(i) + " serves";
            if (load > s.U)
                return "outcome " + std::to_string(c) + ": facility " + std::to_string(i) + " above U";
            total += load;
        }
        if (total != s.m)
            return "outcome " + std::to_string(c) + ": serves " + format_rational(total);
    }
    return "";
}

Outcome outcome_feasibility() {
    Outcome o;
    std::size_t pairs = 0, classes = 0;
    for (int n : {4, 5}) {
        auto inst = cfl::make_instance(n);
        std::vector<std::pair<cfl::FacilitySet, cfl::FacilitySet>> ps;
        for (const auto& orb : cfl::pair_orbits(inst))
            ps.emplace_back(orb.l, orb.l2);
        for (auto p : cfl::sample_pairs(inst, 3, 11))
            ps.push_back(p);
        for (auto [a, b] : ps)
            for (auto [l, l2] : {std::make_pair(a, b), std::make_pair(b, a)}) {
                auto spec = cfl::dstar_spec(inst, l, l2);
                auto r = cfl::verify_outcome_feasibility(spec, inst);
                o.require(r.ok, "n=" + std::to_string(n) + " l=" + cfl::format_facility_set(l) + ": " + r.detail);
                auto s = oracle::setup(n, cfl::facility_list(l));
                auto bad = outcome_violation(s, oracle::experiment_dstar(s, cfl::facility_list(l2)));
                o.require(bad.empty(), "simulator, n=" + std::to_string(n) + ": " + bad);
                classes += r.classes_checked;
                ++pairs;
            }
        auto dr = cfl::verify_outcome_feasibility(cfl::d_spec(inst, cfl::default_l(inst)), inst);
        o.require(!dr.ok && dr.bad_class && *dr.bad_class == 0, "case 1 of D not flagged at n=" + std::to_string(n));
        auto s = oracle::setup(n, cfl::facility_list(cfl::default_l(inst)));
        o.require(!outcome_violation(s, oracle::experiment_d(s)).empty(), "simulated D passes at n=" + std::to_string(n));
    }
    if (o.ok)
        o.detail = std::to_string(pairs) + " ordered pairs, " + std::to_string(classes) +
                   " outcome classes feasible; case 1 of D flagged at n = 4, 5";
    return o;
}

// 7. -------------------------------------------------------------------
Outcome star_and_midpoint() {
    Outcome o;
    auto inst = cfl::make_instance(5);
    auto window = cfl::make_window(inst, {});
    std::size_t pure = 0;
    for (const auto& k : window)
        pure += !k.x;
    o.require(pure == 15 + 105 + 455, "window misses pure keys of size <= 3");
    std::vector<std::pair<cfl::FacilitySet, cfl::FacilitySet>> ps;
    for (const auto& orb : cfl::pair_orbits(inst))
        ps.emplace_back(orb.l, orb.l2);
    for (auto p : cfl::sample_pairs(inst, 2, 5))
        ps.push_back(p);
    for (auto [l, l2] : ps) {
        std::string tag = cfl::format_facility_set(l) + " / " + cfl::format_facility_set(l2);
        for (auto [a, b] : {std::make_pair(l, l2), std::make_pair(l2, l)}) {
            auto r = cfl::verify_star_expectation(inst, a, b, window);
            o.require(r.ok, "star expectation " + tag);
        }
        auto mid = cfl::midpoint_identity(inst, l, l2, window);
        o.require(mid.ok && mid.keys_checked == window.size(), "midpoint identity " + tag);
        // Spot check against the simulator.
        auto s = oracle::setup(5, cfl::facility_list(l));
        auto d = oracle::experiment_dstar(s, cfl::facility_list(l2));
        for (std::size_t t = 0; t < window.size(); t += 97) {
            std::optional<int> xi;
            if (window[t].x)
                xi = window[t].x->first;
            o.require(cfl::star_vector_coord(inst, l, l2, window[t]) ==
                          oracle::expect(s, d, cfl::facility_list(window[t].set), xi),
                      "simulator disagrees at " + cfl::key_label(window[t]));
        }
    }
    if (o.ok)
        o.detail = std::to_string(ps.size()) + " pairs, " + std::to_string(window.size()) +
                   " window keys each, exact equality";
    return o;
}

// 8. -------------------------------------------------------------------
Outcome conflict_and_counting(unsigned jobs) {
    Outcome o;
    auto inst = cfl::make_instance(5);
    cfl::CoreRunOptions opt;
    opt.sampled_pairs = 40;
    opt.jobs = jobs;
    auto run = cfl::run_core(inst, opt);
    o.require(run.core.size() == 252 && cfl::core_size(5) == 252, "core size is not C(10,5) = 252");
    o.require(run.orbits_cover, "overlap classes do not cover all pairs");
    for (const auto& p : run.representatives)
        o.require(p.ok(), "orbit representative fails");
    std::size_t ok = 0;
    for (const auto& p : run.sampled) {
        o.require(p.ok(), "sampled pair " + cfl::format_facility_set(p.l) + " / " + cfl::format_facility_set(p.l2));
        ok += p.ok();
    }
    o.require(run.report.core_valid, "core not valid: " + run.report.core_detail);
    o.require(run.report.bound == 252, "clique bound " + std::to_string(run.report.bound));
    if (o.ok)
        o.detail = std::to_string(ok) + " sampled pairs + " + std::to_string(run.representatives.size()) +
                   " orbit representatives conflicting; core 252; clique bound 252";
    return o;
}

// 9. -------------------------------------------------------------------
Outcome gap_trend() {
    Outcome o;
    auto rows = cfl::gap_table(4, 32);
    std::optional<int> first;
    Rational last_scaled;
    for (const auto& r : rows) {
        const int n = r.n;
        Rational p = oracle::pw2(n - 1), q = oracle::pw2(n) - 1;
        Rational frac = 20 * p / (n * (1 + Rational(1, n)) * q);
        frac.canonicalize();
        o.require(r.frac_cost == frac, "n=" + std::to_string(n) + ": table frac " + format_rational(r.frac_cost));
        Rational ratio = 1 / frac;
        if (!first && ratio > 1)
            first = n;
        if (n == 32)
            last_scaled = ratio * 10 / (n + 1);
    }
    o.require(last_scaled >= Rational(99, 100) && last_scaled <= Rational(101, 100),
              "scaled ratio at n=32 is " + format_rational(last_scaled));
    std::string where = first ? std::to_string(*first) : std::string("none");
    o.require(first && *first == 11, "ratio 1/frac first exceeds 1 at n = " + where + ", expected n = 11");
    if (o.ok)
        o.detail = "first ratio above 1 at n = 11; scaled ratio at n = 32 is " + format_rational(last_scaled);
    else
        o.detail += " (scaled ratio at n = 32: " + std::to_string(last_scaled.get_d()) + ")";
    return o;
}

// 10. ------------------------------------------------------------------
std::string run_cli(const std::string& args, int* code) {
    std::string out;
    FILE* p = popen((std::string(PRODREL_CLI) + " " + args).c_str(), "r");
    if (!p)
        return out;
    std::array<char, 4096> buf;
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;)
        out.append(buf.data(), n);
    *code = pclose(p);
    return out;
}

BigInt naive_binomial(unsigned long n, unsigned long k) {
    BigInt r = 1;
    for (unsigned long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

Outcome sa_size() {
    Outcome o;
    struct Spot {
        unsigned long n, t;
        const char* r;
    };
    for (auto s : {Spot{3, 1, "1"}, Spot{10, 3, "7"}, Spot{40, 5, "12"}, Spot{100, 20, "123456789"},
                   Spot{200, 100, "1"}}) {
        BigInt r(s.r, 10);
        BigInt expect = naive_binomial(s.n, s.t) * (BigInt(1) << s.t) * r;
        o.require(sa_size_bound(r, s.n, s.t) == expect, "bound at n=" + std::to_string(s.n));
    }
    // Largest t with C(n,t) 2^t <= 2^(delta n), by direct search.
    auto direct = [](unsigned long n, unsigned long p, unsigned long q) {
        long best = -1;
        for (unsigned long t = 0; t <= n / 2; ++t) {
            BigInt lhs = naive_binomial(n, t) * (BigInt(1) << t);
            BigInt l_q = 1, rhs = BigInt(1) << (p * n);
            for (unsigned long i = 0; i < q; ++i)
                l_q *= lhs;
            if (l_q <= rhs)
                best = static_cast<long>(t);
        }
        return best;
    };
    std::vector<long> shape;
    for (auto [p, qd] : {std::pair{1ul, 4ul}, std::pair{1ul, 2ul}, std::pair{3ul, 4ul}, std::pair{1ul, 1ul}}) {
        const unsigned long n = 60;
        int code = -1;
        std::string out = run_cli("sa-bound --n 60 --r 5 --delta " + std::to_string(p) + "/" + std::to_string(qd), &code);
        long got = -2;
        try {
            auto j = nlohmann::json::parse(out);
            got = j["max_t_within"].get<long>();
        } catch (...) {
            o.fail("CLI output is not JSON");
        }
        o.require(code == 0, "CLI exit code");
        o.require(got == direct(n, p, qd), "max t for delta " + std::to_string(p) + "/" + std::to_string(qd));
        shape.push_back(got);
    }
    o.require(std::is_sorted(shape.begin(), shape.end()) && shape.front() < shape.back(),
              "max t does not grow with delta");
    if (o.ok) {
        o.detail = "5 spot values exact; CLI max t at n=60 for delta 1/4,1/2,3/4,1:";
        for (long t : shape)
            o.detail += " " + std::to_string(t);
    }
    return o;
}

// 11. ------------------------------------------------------------------
Outcome exact_ef_projection() {
    Outcome o;
    for (int m : {1, 2}) {
        cfl::CflData d{{Rational(1), Rational(1)}, m};
        auto ef = cfl::exact_ef(d);
        auto lp = cfl::classic_lp(d);
        std::vector<std::string> aux;
        for (const auto& v : ef.variables())
            if (std::find(lp.variables().begin(), lp.variables().end(), v) == lp.variables().end())
                aux.push_back(v);
        auto proj = reorder_variables(fm_eliminate_all(ef, aux), lp.variables());
        auto hull = mixed_integer_hull(lp, cfl::classic_integer_vars(d));
        o.require(contains(proj, hull) && contains(hull, proj), "m=" + std::to_string(m) + ": projection differs from hull");
        for (const auto& v : enumerate_vertices(proj))
            for (int i = 0; i < 2; ++i)
                o.require(v[i] == 0 || v[i] == 1, "m=" + std::to_string(m) + ": fractional y at a vertex");
    }
    if (o.ok)
        o.detail = "N=2, m=1,2: projection equals the mixed-integer hull; all vertices have integral y";
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    unsigned jobs = 1;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--only" && i + 1 < argc)
            only = std::stoi(argv[++i]);
        else if (a == "--jobs" && i + 1 < argc)
            jobs = static_cast<unsigned>(std::stoul(argv[++i]));
        else {
            std::cerr << "usage: acceptance [--only N] [--jobs J]\n";
            return 2;
        }
    }
    std::vector<Criterion> all{
        {1, "SA exactness", 60, sa_exactness},
        {2, "SA level-2 fixture", 10, sa_level_two},
        {3, "indicator completeness", 10, indicator_completeness},
        {4, "translation sandwich", 120, translation_sandwich},
        {5, "expected vector closed forms", 120, expected_vector_forms},
        {6, "outcome feasibility", 300, outcome_feasibility},
        {7, "star expectation and midpoint", 600, star_and_midpoint},
        {8, "conflicts and counting", 600, [jobs] { return conflict_and_counting(jobs); }},
        {9, "gap trend", 1, gap_trend},
        {10, "SA size bound", 1, sa_size},
        {11, "exact formulation projection", 120, exact_ef_projection},
    };
    bool all_ok = true, any = false;
    for (const auto& c : all) {
        if (only && c.id != only)
            continue;
        any = true;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s)
            o.fail("took " + std::to_string(secs) + " s, budget " + std::to_string(c.budget_s) + " s");
        char id[8];
        std::snprintf(id, sizeof id, "c%02d", c.id);
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (o.ok ? "PASS " : "FAIL ") << id << " " << c.name << ": " << o.detail << " [" << secs << " s]";
        std::cout << line.str() << std::endl;
        all_ok = all_ok && o.ok;
    }
    if (!any) {
        std::cerr << "no criterion " << only << "\n";
        return 2;
    }
    return all_ok ? 0 : 1;
}
