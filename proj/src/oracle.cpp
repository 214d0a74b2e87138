#include "hallpair/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace hallpair {

std::string PairClass::str() const {
    return "(" + std::to_string(degree) + "L, " + sheaf_chi.str() + ", " + std::to_string(rank) + ")";
}

PairClass Geometry::degenerate_class() const { return PairClass{0, zero(), 1}; }

Poly Geometry::sheaf_chi_of_degree(int degree) const {
    if (degree == 0) return zero();
    for (const auto& e : classes)
        if (e.cls.degree == degree) return e.cls.sheaf_chi;
    throw CalcError(name + ": no declared class of degree " + std::to_string(degree));
}

PairClass Geometry::pair_class(int degree, int rank) const {
    return PairClass{degree, sheaf_chi_of_degree(degree), rank};
}

const RankOneEntry& Geometry::rank1(const PairClass& c) const {
    for (const auto& e : classes)
        if (e.cls.degree == c.degree && e.cls.rank == c.rank) return e;
    throw CalcError(name + ": no moduli entry for class " + c.str());
}

bool Geometry::has_rank1(int degree, int rank) const {
    for (const auto& e : classes)
        if (e.cls.degree == degree && e.cls.rank == rank) return true;
    return false;
}

std::pair<Space, Group> Geometry::moduli_descriptor(const PairClass& c) const {
    const RankOneEntry& e = rank1(c);
    return {e.moduli, e.stabilizer};
}

Poly Geometry::hom_dim(const PairClass& from, const PairClass& to, bool diagonal) const {
    auto it = hom_table.find({from.degree, to.degree, diagonal});
    if (it == hom_table.end())
        throw CalcError(name + ": missing hom entry " + from.str() + " -> " + to.str() +
                        (diagonal ? " (diagonal)" : ""));
    return it->second;
}

const ExtEntry& Geometry::ext1(const PairClass& quot, const PairClass& sub, bool diagonal) const {
    auto it = ext1_table.find({quot.degree, sub.degree, diagonal});
    if (it == ext1_table.end())
        throw CalcError(name + ": missing ext1 entry for extensions of " + quot.str() + " by " +
                        sub.str() + (diagonal ? " (diagonal)" : ""));
    return it->second;
}

Poly Geometry::ext1_dim(const PairClass& quot, const PairClass& sub, bool diagonal) const {
    return ext1(quot, sub, diagonal).dim;
}

Poly Geometry::euler_pairing(const PairClass& a, const PairClass& b) const {
    // the sheaf classes must be declared (or zero)
    sheaf_chi_of_degree(a.degree);
    sheaf_chi_of_degree(b.degree);
    Poly nsym = Poly::var(params, twist);
    Poly pair_b = nsym * Rat(b.degree) + b.sheaf_chi;
    Poly pair_a = nsym * Rat(a.degree) + a.sheaf_chi;
    return pair_b * Rat(-a.rank) + pair_a * Rat(b.rank);
}

Rat Geometry::dt_value(int sheaf_degree) const {
    auto it = dt_table.find(sheaf_degree);
    if (it == dt_table.end())
        throw CalcError(name + ": no DT entry for sheaf degree " + std::to_string(sheaf_degree));
    return it->second;
}

Poly Geometry::ambient_dim(const PairClass& rank2) const {
    auto it = ambient_table.find(rank2.degree);
    if (it == ambient_table.end())
        throw CalcError(name + ": no ambient dimension for " + rank2.str());
    return it->second;
}

const std::vector<Stratum>& Geometry::strata(const PairClass& rank2) const {
    auto it = strata_table.find(rank2.degree);
    if (it == strata_table.end())
        throw CalcError(name + ": no stratum table for " + rank2.str());
    return it->second;
}

const StratumIntegrals* Geometry::integrals(const PairClass& rank2) const {
    auto it = integrals_table.find(rank2.degree);
    return it == integrals_table.end() ? nullptr : &it->second;
}

std::vector<std::pair<PairClass, PairClass>> Geometry::ordered_decompositions(
    const PairClass& rank2) const {
    if (rank2.rank != 2) throw CalcError("decompositions are defined for rank-2 classes");
    std::vector<std::pair<PairClass, PairClass>> out;
    for (int dk = 0; dk <= rank2.degree; ++dk) {
        int dl = rank2.degree - dk;
        if (!has_rank1(dk, 1) || !has_rank1(dl, 1)) continue;
        out.emplace_back(pair_class(dk, 1), pair_class(dl, 1));
    }
    return out;
}

// ---- builtin conifold ----------------------------------------------------

Geometry make_conifold(int max_degree, const std::string& chi_unit) {
    Geometry g;
    g.name = "conifold";
    g.params = std::make_shared<ParamSpace>(std::vector<std::string>{"n", chi_unit, "t"});
    g.twist = "n";
    const Poly u = Poly::var(g.params, chi_unit);
    const Poly n = Poly::var(g.params, "n");
    const Poly one = g.constant(1);
    const Poly m = n + u;  // chi of the degree-1 section space H^0(O(n+u-1))

    const Group gm = Group::torus(1);

    g.classes.push_back({PairClass{0, g.zero(), 1}, Space::point(g.params), gm,
                         ClassStatus::Stable, "degenerate pair (0,C,0)"});
    g.classes.push_back({PairClass{1, u, 1}, Space::projective(m - one), gm, ClassStatus::Stable,
                         "sections of O(n+" + chi_unit + "-1) up to scale"});
    g.classes.push_back({PairClass{1, u, 0}, Space::point(g.params), gm, ClassStatus::Stable,
                         "unique stable sheaf O(" + chi_unit + "-1)"});

    // Hom(E_from -> E_to); the degenerate object receives a line from every
    // honest pair and maps nowhere
    g.hom_table[{0, 0, true}] = one;
    g.hom_table[{1, 1, true}] = one;
    g.hom_table[{1, 1, false}] = g.zero();
    g.hom_table[{1, 0, false}] = one;
    g.hom_table[{0, 1, false}] = g.zero();

    // Ext^1(E_quot, E_sub): extending the degenerate object by a pair is a
    // second-section choice; the reversed order only splits
    g.ext1_table[{0, 1, false}] =
        ExtEntry{m, Space::flag12(m),
                 "second-section space H^0(O(n+" + chi_unit +
                     "-1)); nonsplit classes mod the first section form the flag bundle"};
    g.ext1_table[{1, 0, false}] = ExtEntry{g.zero(), std::nullopt, "split extensions only"};
    g.ext1_table[{1, 1, true}] = ExtEntry{m - one, std::nullopt, "H^0 mod the section line"};
    g.ext1_table[{1, 1, false}] =
        ExtEntry{m - g.constant(2), std::nullopt, "H^0 mod the two section lines"};

    g.dt_table[1] = 1;

    g.ambient_table[1] = m * 2 - g.constant(5);
    g.strata_table[1] = {
        {Space::projective(m - one), Group::semidirect(1, 2), "split stratum"},
        {Space::grassmannian(2, m), gm, "nonsplit stratum"},
    };
    g.assumption_ok[1] = true;

    StratumIntegrals deg1;
    deg1.i1.push_back({1, 0, m, m * 2 - g.constant(5),
                       "degenerate-pair sector net: chi of the moduli product"});
    deg1.i1.push_back({0, 1, g.zero(), m * 2 - g.constant(5), "split extensions only"});
    g.integrals_table[1] = std::move(deg1);

    if (max_degree >= 2) {
        g.classes.push_back({PairClass{2, u * 2, 1}, Space::grassmannian(2, m), gm,
                             ClassStatus::Stable,
                             "section pencils of O(" + chi_unit + "-1)^2 of full rank"});
        g.classes.push_back({PairClass{2, u * 2, 0}, Space::point(g.params), Group::gl2(),
                             ClassStatus::StrictlySemistable,
                             "polystable sheaf O(" + chi_unit + "-1)^2"});

        g.hom_table[{2, 2, true}] = one;
        g.hom_table[{2, 2, false}] = g.zero();
        g.hom_table[{2, 0, false}] = one;
        g.hom_table[{0, 2, false}] = g.zero();
        g.hom_table[{1, 2, false}] = g.zero();
        g.hom_table[{2, 1, false}] = g.zero();

        g.ext1_table[{0, 2, false}] =
            ExtEntry{m * 2 - one, std::nullopt, "(H^0)^2 mod the pencil line"};
        g.ext1_table[{2, 0, false}] = ExtEntry{g.zero(), std::nullopt, "split extensions only"};

        g.dt_table[2] = rat(1, 4);

        const Poly amb2 = m * 4 - g.constant(8);
        g.ambient_table[2] = amb2;
        const Poly chiP = m;                             // chi P^{m-1}
        const Poly chiPP = m * m - m;                    // chi (P x P minus diagonal)
        const Poly chiSym = (m * m - m) * rat(1, 2);     // unordered off-diagonal pairs
        const Poly chiSelf = m * (m - one);              // P(Ext^1(E,E)) bundle over P
        const Poly chiOff = (m * m - m) * (m - g.constant(2));  // off-diagonal ext bundle
        g.strata_table[2] = {
            {Space::grassmannian(2, m), Group::semidirect(1, 2),
             "split pencil + degenerate summand"},
            {Space::opaque(g.params, "pencils_without_section_line", g.zero()), gm,
             "rank-2 pencils whose rank-1 locus is empty; chi from the pencil-bundle count"},
            {Space::opaque(g.params, "selfext_bundle_over_halfclass", chiSelf),
             Group::semidirect(1, 1), "nonsplit self-extensions of half-class pairs"},
            {Space::opaque(g.params, "ext_bundle_offdiagonal", chiOff), gm,
             "nonsplit extensions of distinct half-class pairs"},
            {Space::opaque(g.params, "unordered_pairs_offdiagonal", chiSym), Group::torus(2),
             "split sums of distinct half-class pairs"},
            {Space::projective(m - one), Group::gl2(), "split doubles of one half-class pair"},
        };
        g.assumption_ok[2] = true;

        StratumIntegrals deg2;
        deg2.i1.push_back({2, 0, m * m * (m - one), amb2,
                           "degenerate-pair sector net over the pencil moduli"});
        deg2.i1.push_back({0, 2, g.zero(), amb2, "split extensions only"});
        deg2.i1.push_back({1, 1, chiOff, amb2 - one, "off-diagonal extension integral"});
        deg2.i2 = chiSelf * rat(1, 3);
        deg2.i2_dim = amb2 - one;
        deg2.chi_half = chiP;
        deg2.chi_half_dim = amb2 - one;
        g.integrals_table[2] = std::move(deg2);
    }

    return g;
}

// ---- config format --------------------------------------------------------

namespace {

std::vector<std::string> split_fields(const std::string& line, size_t from) {
    std::vector<std::string> out;
    std::string cur;
    for (size_t i = from; i < line.size(); ++i) {
        if (line[i] == ';') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += line[i];
        }
    }
    out.push_back(cur);
    for (auto& f : out) {
        size_t a = f.find_first_not_of(" \t");
        size_t b = f.find_last_not_of(" \t");
        f = (a == std::string::npos) ? "" : f.substr(a, b - a + 1);
    }
    return out;
}

[[noreturn]] void fail_at(int line, int col, const std::string& what) {
    throw CalcError("config error at line " + std::to_string(line) + ", col " +
                    std::to_string(col) + ": " + what);
}

int to_int(const std::string& s, int line) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        fail_at(line, 1, "expected an integer, got '" + s + "'");
    }
}

struct CallSpec {
    std::string head;
    std::vector<std::string> args;
};

CallSpec parse_call(const std::string& s, int line) {
    CallSpec c;
    size_t p = s.find('(');
    if (p == std::string::npos) {
        c.head = s;
        return c;
    }
    if (s.back() != ')') fail_at(line, static_cast<int>(s.size()), "expected ')'");
    c.head = s.substr(0, p);
    std::string inner = s.substr(p + 1, s.size() - p - 2);
    std::string cur;
    int depth = 0;
    for (char ch : inner) {
        if (ch == '(') depth++;
        if (ch == ')') depth--;
        if (ch == ',' && depth == 0) {
            c.args.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    c.args.push_back(cur);
    for (auto& a : c.args) {
        size_t x = a.find_first_not_of(" \t");
        size_t y = a.find_last_not_of(" \t");
        a = (x == std::string::npos) ? "" : a.substr(x, y - x + 1);
    }
    return c;
}

Space parse_space(const std::string& s, const Geometry& g, int line) {
    CallSpec c = parse_call(s, line);
    auto expr = [&](const std::string& e) { return parse_poly(e, g.params, {line, 1}); };
    if (c.head == "point") return Space::point(g.params);
    if (c.head == "empty") return Space::empty(g.params);
    if (c.head == "affine") return Space::affine(expr(c.args.at(0)));
    if (c.head == "projective") return Space::projective(expr(c.args.at(0)));
    if (c.head == "grassmannian")
        return Space::grassmannian(to_int(c.args.at(0), line), expr(c.args.at(1)));
    if (c.head == "flag") {
        if (c.args.size() != 3 || c.args[0] != "1" || c.args[1] != "2")
            fail_at(line, 1, "only flag(1,2,m) is supported");
        return Space::flag12(expr(c.args.at(2)));
    }
    if (c.head == "opaque") return Space::opaque(g.params, c.args.at(0), expr(c.args.at(1)));
    fail_at(line, 1, "unknown space '" + c.head + "'");
}

Group parse_group(const std::string& s, int line) {
    CallSpec c = parse_call(s, line);
    if (c.head == "torus") return Group::torus(to_int(c.args.at(0), line));
    if (c.head == "gl2") return Group::gl2();
    if (c.head == "semidirect")
        return Group::semidirect(to_int(c.args.at(0), line), to_int(c.args.at(1), line));
    if (c.head == "torusunion") return Group::torus_union();
    fail_at(line, 1, "unknown group '" + c.head + "'");
}

ClassStatus parse_status(const std::string& s, int line) {
    if (s == "stable") return ClassStatus::Stable;
    if (s == "strictly-semistable") return ClassStatus::StrictlySemistable;
    if (s == "empty") return ClassStatus::Empty;
    fail_at(line, 1, "unknown status '" + s + "'");
}

bool parse_diag(const std::string& s, int line) {
    if (s == "diagonal" || s == "yes") return true;
    if (s == "off" || s == "no") return false;
    fail_at(line, 1, "expected diagonal|off, got '" + s + "'");
}

}  // namespace

Geometry parse_geometry(const std::string& text, const std::string& name) {
    Geometry g;
    g.name = name;
    bool have_params = false;

    auto handle = [&](int ln, const std::string& raw) {
        size_t close = raw.find(']');
        if (raw[0] != '[' || close == std::string::npos) fail_at(ln, 1, "expected a [section] tag");
        std::string section = raw.substr(1, close - 1);
        std::vector<std::string> f = split_fields(raw, close + 1);
        auto expr = [&](const std::string& e) { return parse_poly(e, g.params, {ln, 1}); };
        if (section == "params") {
            std::vector<std::string> names;
            std::istringstream ws(f.at(0));
            std::string w;
            while (ws >> w) names.push_back(w);
            if (std::find(names.begin(), names.end(), "t") == names.end()) names.push_back("t");
            g.params = std::make_shared<ParamSpace>(names);
            have_params = true;
        } else if (section == "pairing") {
            g.twist = f.at(0);
            g.params->index_of(g.twist);
        } else if (section == "class") {
            if (f.size() < 5) fail_at(ln, 1, "class needs degree; chi; rank; moduli; stabilizer");
            RankOneEntry e{PairClass{to_int(f[0], ln), expr(f[1]), to_int(f[2], ln)},
                           parse_space(f[3], g, ln), parse_group(f[4], ln),
                           ClassStatus::Stable, ""};
            if (f.size() > 5 && !f[5].empty()) e.status = parse_status(f[5], ln);
            if (f.size() > 6) e.note = f[6];
            g.classes.push_back(std::move(e));
        } else if (section == "hom") {
            if (f.size() < 4) fail_at(ln, 1, "hom needs from; to; diagonal?; dim");
            g.hom_table[{to_int(f[0], ln), to_int(f[1], ln), parse_diag(f[2], ln)}] = expr(f[3]);
        } else if (section == "ext1") {
            if (f.size() < 4) fail_at(ln, 1, "ext1 needs quot; sub; diagonal?; dim");
            ExtEntry e{expr(f[3]), std::nullopt, ""};
            if (f.size() > 4 && !f[4].empty()) e.total_space = parse_space(f[4], g, ln);
            if (f.size() > 5) e.note = f[5];
            g.ext1_table[{to_int(f[0], ln), to_int(f[1], ln), parse_diag(f[2], ln)}] = std::move(e);
        } else if (section == "dt") {
            g.dt_table[to_int(f.at(0), ln)] = parse_rat(f.at(1));
        } else if (section == "ambient") {
            if (to_int(f.at(1), ln) != 2) fail_at(ln, 1, "ambient entries are for rank-2 classes");
            g.ambient_table[to_int(f.at(0), ln)] = expr(f.at(2));
        } else if (section == "strata") {
            if (to_int(f.at(1), ln) != 2) fail_at(ln, 1, "strata entries are for rank-2 classes");
            Stratum s{parse_space(f.at(2), g, ln), parse_group(f.at(3), ln),
                      f.size() > 4 ? f[4] : ""};
            g.strata_table[to_int(f.at(0), ln)].push_back(std::move(s));
        } else if (section == "integrals") {
            if (to_int(f.at(1), ln) != 2) fail_at(ln, 1, "integrals entries are for rank-2 classes");
            auto& rec = g.integrals_table[to_int(f.at(0), ln)];
            const std::string& kind = f.at(2);
            if (kind == "i1") {
                rec.i1.push_back({to_int(f.at(3), ln), to_int(f.at(4), ln), expr(f.at(5)),
                                  expr(f.at(6)), f.size() > 7 ? f[7] : ""});
            } else if (kind == "i2") {
                rec.i2 = expr(f.at(3));
                rec.i2_dim = expr(f.at(4));
            } else if (kind == "chihalf") {
                rec.chi_half = expr(f.at(3));
                rec.chi_half_dim = expr(f.at(4));
            } else {
                fail_at(ln, 1, "unknown integrals kind '" + kind + "'");
            }
        } else if (section == "assume") {
            g.assumption_ok[to_int(f.at(0), ln)] = (f.at(2) == "ok");
        } else {
            fail_at(ln, 1, "unknown section [" + section + "]");
        }
    };

    // the [params] line is handled first so every other section can parse
    // expressions against the declared symbols
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<std::pair<int, std::string>> body_lines;
    for (; std::getline(in, line); ) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        body_lines.emplace_back(lineno, line.substr(start));
    }
    for (const auto& [ln, b] : body_lines)
        if (b.rfind("[params]", 0) == 0) handle(ln, b);
    if (!have_params) throw CalcError(name + ": config has no [params] section");
    for (const auto& [ln, b] : body_lines)
        if (b.rfind("[params]", 0) != 0) handle(ln, b);
    return g;
}

Geometry load_geometry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CalcError("cannot open geometry file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_geometry(buf.str(), path);
}

Geometry resolve_geometry(const std::string& name_or_path, int degree,
                          const std::string& chi_binding) {
    if (name_or_path == "conifold") {
        std::string unit = "r";
        if (!chi_binding.empty()) {
            size_t i = 0;
            std::string mult;
            while (i < chi_binding.size() && std::isdigit(static_cast<unsigned char>(chi_binding[i])))
                mult += chi_binding[i++];
            unit = chi_binding.substr(i);
            if (unit.empty()) throw CalcError("chi binding '" + chi_binding + "' has no symbol");
            if (!mult.empty() && std::stoi(mult) != degree)
                throw CalcError("chi binding '" + chi_binding + "' does not match degree " +
                                std::to_string(degree));
        }
        return make_conifold(degree, unit);
    }
    return load_geometry(name_or_path);
}

}  // namespace hallpair
