// prodrel: command-line driver for the lift-and-project, translation and
// facility location suites. Exit codes: 0 pass, 1 check failure, 2 bad input.

#include "CLI11.hpp"
#include "json.hpp"

#include "prodrel/cfl/certificate.hpp"
#include "prodrel/cfl/gap.hpp"
#include "prodrel/cfl/general.hpp"
#include "prodrel/cfl/pipeline.hpp"
#include "prodrel/corelab.hpp"
#include "prodrel/errors.hpp"
#include "prodrel/fourier_motzkin.hpp"
#include "prodrel/hull.hpp"
#include "prodrel/io.hpp"
#include "prodrel/product.hpp"
#include "prodrel/sherali_adams.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace prodrel;

namespace {

constexpr int exit_pass = 0, exit_fail = 1, exit_input = 2;

struct Common {
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

std::string q(const Rational& r) { return format_rational(r); }

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::string csv_cell(const json& v) {
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string r = "\"";
    for (char c : s)
        r += c == '"' ? std::string("\"\"") : std::string(1, c);
    return r + "\"";
}

// Tables ("rows" or "checks") become one CSV line per entry; anything else
// becomes key,value lines.
std::string to_csv(const json& report) {
    std::ostringstream os;
    for (const char* table : {"rows", "checks"}) {
        if (!report.contains(table) || !report[table].is_array() || report[table].empty())
            continue;
        const json& rows = report[table];
        std::vector<std::string> cols;
        for (const auto& row : rows)
            for (const auto& [k, v] : row.items())
                if (std::find(cols.begin(), cols.end(), k) == cols.end())
                    cols.push_back(k);
        for (std::size_t i = 0; i < cols.size(); ++i)
            os << (i ? "," : "") << cols[i];
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < cols.size(); ++i)
                os << (i ? "," : "") << (row.contains(cols[i]) ? csv_cell(row[cols[i]]) : "");
            os << "\n";
        }
        return os.str();
    }
    os << "key,value\n";
    for (const auto& [k, v] : report.items())
        os << k << "," << csv_cell(v) << "\n";
    return os.str();
}

void emit(const Common& c, const json& report) {
    std::string text = c.format == "csv" ? to_csv(report) : report.dump(2) + "\n";
    if (c.out.empty())
        std::cout << text;
    else
        write_file(c.out, text);
}

json check_json(const std::string& name, bool ok, const std::string& witness) {
    json j{{"name", name}, {"status", ok ? "PASS" : "FAIL"}};
    if (!ok)
        j["witness"] = witness;
    return j;
}

// sa -------------------------------------------------------------------

struct SaArgs {
    std::string input;
    int level = 1;
    bool project = false;
    std::string ints;
    std::string report;
};

int run_sa(const Common& c, const SaArgs& a) {
    HPolyhedron p = parse_polyhedron(read_file(a.input));
    std::vector<std::string> ints = a.ints.empty() ? p.variables() : split_list(a.ints);
    LiftedSystem lifted = sa_lift(p, ints, a.level);
    int code = exit_pass;
    std::string text;
    json rep{{"command", "sa"},
             {"input", a.input},
             {"level", a.level},
             {"integer_vars", ints},
             {"lifted_vars", lifted.lifted_vars.size()},
             {"lifted_rows", lifted.system.row_count()}};
    if (!a.project) {
        text = format_polyhedron(lifted.system);
    } else {
        HPolyhedron proj = sa_project(lifted);
        text = format_polyhedron(proj);
        rep["projected_rows"] = proj.row_count();
        if (a.level > 0) {
            HPolyhedron prev = sa_project(sa_lift(p, ints, a.level - 1));
            bool inside = contains(prev, proj);
            rep["checks"] = json::array({check_json("contained_in_level_" + std::to_string(a.level - 1), inside,
                                                    "the level " + std::to_string(a.level) +
                                                        " projection leaves the previous level")});
            if (!inside)
                code = exit_fail;
        }
        if (ints.size() == p.variables().size() && static_cast<std::size_t>(a.level) >= ints.size())
            rep["equals_integer_hull"] = same_set(proj, mixed_integer_hull(p, ints));
    }
    if (c.out.empty())
        std::cout << text;
    else
        write_file(c.out, text);
    if (!a.report.empty())
        write_file(a.report, rep.dump(2) + "\n");
    return code;
}

// translate ------------------------------------------------------------

int run_translate(const Common& c, const std::string& qfile, const std::string& sfile, const std::string& tout) {
    HPolyhedron qpoly = parse_polyhedron(read_file(qfile));
    SectionTable g = parse_section_table(read_file(sfile), qpoly);
    json rep{{"command", "translate"}, {"q", qfile}, {"section", sfile}};
    Translation t;
    try {
        t = translate_ef(qpoly, g);
    } catch (const CertificateError& e) {
        rep["checks"] = json::array({check_json("section_valid", false, e.what())});
        rep["status"] = "FAIL";
        emit(c, rep);
        return exit_fail;
    }
    const auto& x = g.x_vars;
    HPolyhedron proj_q = project_onto(qpoly, x);
    HPolyhedron proj_t = project_onto(t.system, x);
    HPolyhedron hull = mixed_integer_hull(proj_q, x);
    json checks = json::array();
    bool all = true;
    auto add = [&](const std::string& name, bool ok, const std::string& witness) {
        checks.push_back(check_json(name, ok, witness));
        all = all && ok;
    };
    add("section_valid", true, "");
    add("rows_preserved", t.system.row_count() == qpoly.row_count(),
        std::to_string(t.system.row_count()) + " rows vs " + std::to_string(qpoly.row_count()));
    add("translation_inside_q", contains(proj_q, proj_t), "proj T[Q] is not contained in proj Q");
    add("hull_inside_translation", contains(proj_t, hull), "conv(X) is not contained in proj T[Q]");
    std::string bad;
    for (const auto& [pt, v] : g.entries) {
        auto fx = product_section(pt);
        std::vector<Rational> point(t.system.dimension(), Rational(0));
        for (std::size_t col = 0; col < t.system.dimension(); ++col)
            for (const auto& [k, val] : fx)
                if (key_variable_name(k, x, {}) == t.system.variables()[col])
                    point[col] = val;
        if (!t.system.satisfies(point) && bad.empty()) {
            bad = "f(";
            for (std::size_t i = 0; i < pt.size(); ++i)
                bad += (i ? "," : "") + std::to_string(pt[i]);
            bad += ") violates T[Q]";
        }
    }
    add("section_images_feasible", bad.empty(), bad);
    rep["variables"] = t.system.variables();
    rep["rows"] = t.system.row_count();
    rep["checks"] = checks;
    rep["status"] = all ? "PASS" : "FAIL";
    if (!tout.empty())
        write_file(tout, format_polyhedron(t.system));
    emit(c, rep);
    return all ? exit_pass : exit_fail;
}

// cfl ------------------------------------------------------------------

struct CflArgs {
    int n = 5;
    std::string l, l2;
    int window = 200;
    std::size_t samples = 40;
    bool no_lp = false;
    std::string rho = "1";
    int from = 4, to = 32;
    std::string capacity = "1,1";
    int clients = 1;
    std::string emit_ef;
};

json instance_json(const cfl::CflInstance& inst) {
    return json{{"n", inst.n}, {"m", inst.m}, {"U", q(inst.capacity)}};
}

json formulas() {
    return json{{"m", "n^4 + 1"},
                {"U", "(m - 2^(-n^2)) / n"},
                {"p_case2", "20 / (n^2 (1 + 1/n))"},
                {"ybar_l", "p_case2 2^(n-1) / (2^n - 1)"},
                {"frac_cost", "20 2^(n-1) / (n (1 + 1/n) (2^n - 1))"},
                {"core_size", "C(2n, n)"}};
}

cfl::WindowConfig window_config(const Common& c, const CflArgs& a) {
    cfl::WindowConfig w;
    w.random_keys = a.window;
    w.seed = c.seed;
    return w;
}

int run_verify_pair(const Common& c, const CflArgs& a) {
    auto inst = cfl::make_instance(a.n);
    cfl::FacilitySet l = a.l.empty() ? cfl::default_l(inst) : cfl::parse_facility_set(a.l);
    cfl::FacilitySet l2 = 0;
    if (a.l2.empty()) {
        // Default partner: swap the last facility of l for the first outside it.
        auto lf = cfl::facility_list(l);
        auto rest = cfl::facility_list(inst.pool & ~l);
        if (rest.empty())
            throw InputError("l leaves no room for a partner");
        l2 = (l & ~(cfl::FacilitySet{1} << lf.back())) | (cfl::FacilitySet{1} << rest.front());
    } else {
        l2 = cfl::parse_facility_set(a.l2);
    }
    cfl::require_pair(inst, l, l2);
    auto window = cfl::make_window(inst, window_config(c, a));
    cfl::PairOptions po;
    po.jobs = c.jobs;
    po.lp_check = !a.no_lp;
    auto cert = cfl::certify_pair(inst, l, l2, window, po);
    json checks = json::array();
    for (const auto& ch : cert.checks)
        checks.push_back(check_json(ch.name, ch.ok, ch.detail));
    auto g = cfl::gap_certificate(inst, l);
    json rep{{"instance", instance_json(inst)},
             {"pair", {{"l", cfl::format_facility_set(l)}, {"l'", cfl::format_facility_set(l2)},
                       {"overlap", cfl::popcount(l & l2)}}},
             {"window_keys", cert.window_keys},
             {"witness_outcomes", cert.witness_outcomes},
             {"checks", checks},
             {"gap", {{"frac_cost", q(g.frac_cost)}, {"int_lb", q(g.int_lb)}, {"ratio", q(g.ratio)}}},
             {"formulas", formulas()},
             {"status", cert.ok() ? "PASS" : "FAIL"}};
    emit(c, rep);
    return cert.ok() ? exit_pass : exit_fail;
}

int run_core(const Common& c, const CflArgs& a) {
    auto inst = cfl::make_instance(a.n);
    cfl::CoreRunOptions opt;
    opt.window = window_config(c, a);
    opt.sampled_pairs = a.samples;
    opt.seed = c.seed;
    opt.jobs = c.jobs;
    opt.lp_check = !a.no_lp;
    opt.rho = parse_rational(a.rho);
    auto run = cfl::run_core(inst, opt);
    const auto& r = run.report;

    json checks = json::array();
    bool all = true;
    auto add = [&](const std::string& name, bool ok, const std::string& witness) {
        checks.push_back(check_json(name, ok, witness));
        all = all && ok;
    };
    add("core_valid", r.core_valid, r.core_detail);
    add("core_size", BigInt(run.core.size()) == cfl::core_size(inst.n),
        std::to_string(run.core.size()) + " != " + cfl::core_size(inst.n).get_str());
    add("orbits_cover_all_pairs", run.orbits_cover, "orbit sizes sum to " + run.counted_pairs.get_str());
    for (const auto& p : run.representatives) {
        std::string failed;
        for (const auto& ch : p.checks)
            if (!ch.ok)
                failed += ch.name + ": " + ch.detail + "; ";
        add("orbit_overlap_" + std::to_string(cfl::popcount(p.l & p.l2)), p.ok(), failed);
    }
    std::size_t sampled_ok = 0;
    std::string first_bad;
    for (const auto& p : run.sampled) {
        sampled_ok += p.ok();
        if (!p.ok() && first_bad.empty())
            first_bad = cfl::format_facility_set(p.l) + " / " + cfl::format_facility_set(p.l2);
    }
    add("sampled_pairs_conflicting", sampled_ok == run.sampled.size(), "first failing pair " + first_bad);
    add("clique_bound", r.bound == run.core.size(),
        "bound " + std::to_string(r.bound) + " on " + std::to_string(run.core.size()) + " points");

    json orbits = json::array();
    for (const auto& o : run.orbits)
        orbits.push_back({{"overlap", o.overlap}, {"unordered_pairs", o.unordered_pairs.get_str()}});
    json rep{{"instance", instance_json(inst)},
             {"core_size", r.core_size},
             {"edges_tested", r.edges_tested},
             {"edges_implied", run.graph.subsets_implied},
             {"edges_found", r.edges_found},
             {"clique_certificate", r.clique_certificate},
             {"bound", r.bound},
             {"rho", q(r.rho)},
             {"gap_tags_present", r.gap_tags_present},
             {"gap_tags_hold", r.gap_tags_hold},
             {"exact_only", r.exact_only},
             {"separation", {{"value", q(run.validity.value)}, {"violated", run.validity.violated},
                             {"degenerate", run.validity.degenerate},
                             {"outcomes_checked", run.validity.outcomes_checked}}},
             {"orbits", orbits},
             {"sampled_pairs", run.sampled.size()},
             {"checks", checks},
             {"conclusion", r.conclusion},
             {"notes", r.notes},
             {"formulas", formulas()},
             {"status", all ? "PASS" : "FAIL"}};
    emit(c, rep);
    return all ? exit_pass : exit_fail;
}

int run_gap_table(const Common& c, const CflArgs& a) {
    if (a.from < cfl::min_n || a.to < a.from)
        throw InputError("need 4 <= from <= to");
    auto rows = cfl::gap_table(a.from, a.to);
    json out = json::array();
    for (const auto& r : rows)
        out.push_back({{"n", r.n},
                       {"frac_cost", q(r.frac_cost)},
                       {"ratio", q(r.ratio)},
                       {"ratio_decimal", r.ratio.get_d()},
                       {"scaled", q(r.scaled)},
                       {"scaled_decimal", r.scaled.get_d()}});
    auto first = cfl::first_ratio_above_one(rows);
    json rep{{"rows", out},
             {"first_ratio_above_one", first ? json(*first) : json(nullptr)},
             {"formulas", {{"frac_cost", "20 2^(n-1) / (n (1 + 1/n) (2^n - 1))"},
                           {"ratio", "1 / frac_cost"},
                           {"scaled", "ratio 10 / (n + 1)"}}}};
    emit(c, rep);
    return exit_pass;
}

int run_exact_ef(const Common& c, const CflArgs& a) {
    cfl::CflData d;
    for (const auto& s : split_list(a.capacity))
        d.capacity.push_back(parse_rational(s));
    d.clients = a.clients;
    if (d.capacity.empty() || d.clients < 1)
        throw InputError("need at least one facility and one client");
    HPolyhedron ef = cfl::exact_ef(d);
    if (!a.emit_ef.empty())
        write_file(a.emit_ef, format_polyhedron(ef));
    HPolyhedron lp = cfl::classic_lp(d);
    auto ints = cfl::classic_integer_vars(d);
    HPolyhedron proj = project_onto(ef, lp.variables());
    HPolyhedron hull = mixed_integer_hull(lp, ints);
    json checks = json::array();
    bool all = true;
    auto add = [&](const std::string& name, bool ok, const std::string& witness) {
        checks.push_back(check_json(name, ok, witness));
        all = all && ok;
    };
    add("row_count", ef.row_count() == cfl::exact_ef_row_count(d),
        std::to_string(ef.row_count()) + " rows, formula gives " + std::to_string(cfl::exact_ef_row_count(d)));
    add("projection_inside_hull", contains(hull, proj), "a point of the projection leaves the hull");
    add("hull_inside_projection", contains(proj, hull), "a hull point is cut by the projection");
    std::string frac;
    for (const auto& v : enumerate_vertices(proj))
        for (std::size_t i = 0; i < d.capacity.size(); ++i)
            if (v[i] != 0 && v[i] != 1 && frac.empty())
                frac = "vertex with y" + std::to_string(i + 1) + " = " + q(v[i]);
    add("integral_y_vertices", frac.empty(), frac);
    json rep{{"facilities", d.capacity.size()},
             {"clients", d.clients},
             {"rows", ef.row_count()},
             {"variables", ef.dimension()},
             {"checks", checks},
             {"formulas", {{"rows", "1 + N + N m + 2^N (1 + m + 3 N m + 2 N)"}}},
             {"status", all ? "PASS" : "FAIL"}};
    emit(c, rep);
    return all ? exit_pass : exit_fail;
}

// sa-bound -------------------------------------------------------------

int run_sa_bound(const Common& c, unsigned long n, long t, const std::string& r, const std::string& delta) {
    BigInt rr(r, 10);
    if (rr < 1)
        throw InputError("r must be positive");
    Rational dl = parse_rational(delta);
    json rows = json::array();
    for (unsigned long k = 0; k <= n / 2; ++k)
        rows.push_back({{"t", k}, {"bound", sa_size_bound(rr, n, k).get_str()}});
    long best = sa_max_level_within(n, dl);
    json rep{{"n", n},
             {"r", rr.get_str()},
             {"delta", q(dl)},
             {"max_t_within", best},
             {"formulas", {{"bound", "r C(n, t) 2^t"}, {"budget", "r 2^(delta n)"}}},
             {"rows", rows}};
    if (t >= 0)
        rep["bound_at_t"] = sa_size_bound(rr, n, static_cast<unsigned long>(t)).get_str();
    emit(c, rep);
    return exit_pass;
}

// corelab --------------------------------------------------------------

int run_corelab(const Common& c, const std::string& core_file, const std::string& dhat_file, int arity,
                const std::string& rho) {
    VPolytope pts = parse_vpolytope(read_file(core_file));
    VPolytope dhat = parse_vpolytope(read_file(dhat_file));
    Core core;
    core.label = core_file;
    core.labels = pts.labels();
    core.points = pts.vertices();
    auto h = build_conflicts(core, dhat, arity, c.jobs);
    auto r = separation_bound_report(core, dhat, h, parse_rational(rho));
    json edges = json::array();
    for (const auto& e : h.edges) {
        json j{{"vertices", e.vertices}};
        if (e.witness) {
            json p = json::array();
            for (const auto& v : e.witness->point)
                p.push_back(q(v));
            j["point"] = p;
        }
        edges.push_back(j);
    }
    json rep{{"core_size", r.core_size},
             {"edges_tested", r.edges_tested},
             {"edges_found", r.edges_found},
             {"clique_certificate", r.clique_certificate},
             {"bound", r.bound},
             {"rho", q(r.rho)},
             {"gap_tags_present", r.gap_tags_present},
             {"core_valid", r.core_valid},
             {"greedy_upper", r.greedy_upper},
             {"edges", edges},
             {"conclusion", r.conclusion},
             {"notes", r.notes}};
    emit(c, rep);
    return r.core_valid ? exit_pass : exit_fail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"prodrel: product relaxations, Sherali-Adams and facility location certificates"};
    app.require_subcommand(1);
    Common c;
    auto add_common = [&](CLI::App* s) {
        s->add_option("--out", c.out, "Output path (default stdout)");
        s->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--seed", c.seed, "Seed for sampled keys and pairs");
        s->add_option("--jobs", c.jobs, "Worker threads (0 = all cores)");
    };

    SaArgs sa;
    auto* sa_cmd = app.add_subcommand("sa", "Sherali-Adams lift (and projection) of a polyhedron file");
    sa_cmd->add_option("input", sa.input, "Polyhedron file")->required();
    sa_cmd->add_option("--level", sa.level, "Level k")->required();
    sa_cmd->add_flag("--project", sa.project, "Project back onto the original variables");
    sa_cmd->add_option("--int", sa.ints, "Comma-separated 0/1 variables (default: all)");
    sa_cmd->add_option("--report", sa.report, "Write a JSON report here");
    add_common(sa_cmd);

    std::string qfile, sfile, tout;
    auto* tr = app.add_subcommand("translate", "Translate an extended formulation into a product relaxation");
    tr->add_option("q", qfile, "Extended formulation file")->required();
    tr->add_option("section", sfile, "Section table file")->required();
    tr->add_option("--emit", tout, "Write T[Q] here");
    add_common(tr);

    CflArgs cf;
    auto* cfl_cmd = app.add_subcommand("cfl", "Facility location core suites");
    cfl_cmd->require_subcommand(1);
    auto add_n = [&](CLI::App* s) { s->add_option("--n", cf.n, "Instance size (n >= 4)"); };
    auto add_window = [&](CLI::App* s) {
        s->add_option("--window", cf.window, "Seeded large keys in the evaluation window");
        s->add_flag("--no-lp", cf.no_lp, "Skip the LP conflict test");
    };
    auto* core_cmd = cfl_cmd->add_subcommand("core", "Core, conflict graph and clique bound");
    add_n(core_cmd);
    add_window(core_cmd);
    core_cmd->add_option("--samples", cf.samples, "Pairs certified directly");
    core_cmd->add_option("--rho", cf.rho, "Approximation factor");
    add_common(core_cmd);
    auto* vp_cmd = cfl_cmd->add_subcommand("verify-pair", "Certify one pair of core points");
    add_n(vp_cmd);
    add_window(vp_cmd);
    vp_cmd->add_option("--l", cf.l, "l as 0-based facility indices, e.g. 5,6,7,8,9");
    vp_cmd->add_option("--l2", cf.l2, "l'");
    add_common(vp_cmd);
    auto* gt_cmd = cfl_cmd->add_subcommand("gap-table", "Exact fractional costs and ratios");
    gt_cmd->add_option("--from", cf.from);
    gt_cmd->add_option("--to", cf.to);
    add_common(gt_cmd);
    auto* ef_cmd = cfl_cmd->add_subcommand("exact-ef", "Disjunctive formulation and its projection");
    ef_cmd->add_option("--capacity", cf.capacity, "Comma-separated capacities, one per facility");
    ef_cmd->add_option("--clients", cf.clients, "Number of unit-demand clients");
    ef_cmd->add_option("--emit", cf.emit_ef, "Write the formulation here");
    add_common(ef_cmd);

    unsigned long bn = 0;
    long bt = -1;
    std::string br = "1", bdelta = "1/2";
    auto* sb = app.add_subcommand("sa-bound", "Size of level-t Sherali-Adams: r C(n,t) 2^t");
    sb->add_option("--n", bn, "Number of 0/1 variables")->required();
    sb->add_option("--level", bt, "Report the bound at this level");
    sb->add_option("--r", br, "Rows of the starting relaxation");
    sb->add_option("--delta", bdelta, "Budget exponent: bound <= r 2^(delta n)");
    add_common(sb);

    std::string core_file, dhat_file, crho = "1";
    int arity = 2;
    auto* cl = app.add_subcommand("corelab", "Conflict hypergraph and chromatic bound for a core file");
    cl->add_option("core", core_file, "Core points (dims: line, then one point per line)")->required();
    cl->add_option("dhat", dhat_file, "Vertices of the canonical relaxation, same format")->required();
    cl->add_option("--max-arity", arity, "Largest subset size tested");
    cl->add_option("--rho", crho, "Approximation factor");
    add_common(cl);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_pass : exit_input;
    }

    try {
        if (*sa_cmd)
            return run_sa(c, sa);
        if (*tr)
            return run_translate(c, qfile, sfile, tout);
        if (*core_cmd)
            return run_core(c, cf);
        if (*vp_cmd)
            return run_verify_pair(c, cf);
        if (*gt_cmd)
            return run_gap_table(c, cf);
        if (*ef_cmd)
            return run_exact_ef(c, cf);
        if (*sb)
            return run_sa_bound(c, bn, bt, br, bdelta);
        if (*cl)
            return run_corelab(c, core_file, dhat_file, arity, crho);
    } catch (const CertificateError& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return exit_fail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
