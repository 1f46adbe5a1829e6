#include "prodrel/io.hpp"

#include "prodrel/errors.hpp"

#include <fstream>
#include <sstream>

namespace prodrel {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
            ++j;
        if (j > i)
            out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

namespace {

template <class Fn>
void for_each_line(std::string_view text, Fn fn) {
    std::size_t lineno = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++lineno;
        std::string_view line = text.substr(pos, end - pos);
        auto toks = split_ws(line);
        if (!toks.empty() && toks[0][0] != '#')
            fn(lineno, toks);
        pos = end + 1;
    }
}

[[noreturn]] void fail_at(std::size_t line, const std::string& msg) {
    throw InputError("line " + std::to_string(line) + ": " + msg);
}

Rational parse_at(std::size_t line, const std::string& tok) {
    try {
        return parse_rational(tok);
    } catch (const InputError& e) {
        fail_at(line, e.what());
    }
}

} // namespace

HPolyhedron parse_polyhedron(std::string_view text) {
    std::optional<HPolyhedron> poly;
    for_each_line(text, [&](std::size_t ln, const std::vector<std::string>& toks) {
        if (!poly) {
            if (toks[0] != "vars:")
                fail_at(ln, "expected header 'vars: ...'");
            try {
                poly.emplace(std::vector<std::string>(toks.begin() + 1, toks.end()));
            } catch (const InputError& e) {
                fail_at(ln, e.what());
            }
            return;
        }
        const std::size_t n = poly->dimension();
        if (toks.size() != n + 2)
            fail_at(ln, "expected " + std::to_string(n) + " coefficients, a relation and a right-hand side");
        Row r;
        for (std::size_t j = 0; j < n; ++j)
            r.coeffs.push_back(parse_at(ln, toks[j]));
        const std::string& rel = toks[n];
        r.rhs = parse_at(ln, toks[n + 1]);
        if (rel == "<=") {
            r.rel = Relation::LessEqual;
        } else if (rel == "==") {
            r.rel = Relation::Equal;
        } else if (rel == ">=") {
            r.rel = Relation::LessEqual;
            for (auto& c : r.coeffs)
                c = -c;
            r.rhs = -r.rhs;
        } else {
            fail_at(ln, "unknown relation '" + rel + "'");
        }
        poly->add_row(std::move(r));
    });
    if (!poly)
        throw InputError("missing 'vars:' header");
    return *poly;
}

std::string format_polyhedron(const HPolyhedron& poly) {
    std::ostringstream os;
    os << "vars:";
    for (const auto& v : poly.variables())
        os << ' ' << v;
    os << '\n';
    for (const auto& r : poly.rows()) {
        for (const auto& c : r.coeffs)
            os << format_rational(c) << ' ';
        os << (r.rel == Relation::Equal ? "==" : "<=") << ' ' << format_rational(r.rhs) << '\n';
    }
    return os.str();
}

VPolytope parse_vpolytope(std::string_view text) {
    std::optional<VPolytope> vp;
    for_each_line(text, [&](std::size_t ln, const std::vector<std::string>& toks) {
        if (!vp) {
            if (toks[0] != "dims:")
                fail_at(ln, "expected header 'dims: ...'");
            vp.emplace(std::vector<std::string>(toks.begin() + 1, toks.end()));
            return;
        }
        if (toks.size() != vp->dimension())
            fail_at(ln, "expected " + std::to_string(vp->dimension()) + " coordinates");
        std::vector<Rational> v;
        for (const auto& t : toks)
            v.push_back(parse_at(ln, t));
        vp->add_vertex(std::move(v));
    });
    if (!vp)
        throw InputError("missing 'dims:' header");
    return *vp;
}

std::string format_vpolytope(const VPolytope& vp) {
    std::ostringstream os;
    os << "dims:";
    for (const auto& l : vp.labels())
        os << ' ' << l;
    os << '\n';
    for (const auto& v : vp.vertices()) {
        for (std::size_t j = 0; j < v.size(); ++j)
            os << (j ? " " : "") << format_rational(v[j]);
        os << '\n';
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write '" + path + "'");
    out << content;
}

} // namespace prodrel
