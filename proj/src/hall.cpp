#include "hallpair/hall.hpp"

namespace hallpair {

int weak_stability(const PairClass& c) {
    bool in_cone = (c.degree > 0 && c.rank >= 0) || (c.degree == 0 && c.rank > 0);
    if (!in_cone) throw CalcError("class " + c.str() + " is outside the positive cone");
    return c.rank == 0 ? 0 : 1;
}

HallElement delta_rank1(const PairClass& c, const Geometry& g) {
    const RankOneEntry& e = g.rank1(c);
    if (e.status == ClassStatus::Empty) return {c, StackFn::zero()};
    Term t{g.constant(1), e.moduli, e.stabilizer, g.zero(), "delta " + c.str()};
    return {c, StackFn::single(std::move(t))};
}

namespace {

Group split_group(const Poly& hom_dim) {
    if (hom_dim.is_zero()) return Group::torus(2);
    if (!hom_dim.is_constant())
        throw CalcError("symbolic Hom dimension " + hom_dim.str() + " has no stabilizer model");
    return Group::semidirect(static_cast<int>(hom_dim.constant_term().get_num().get_si()), 2);
}

Group nonsplit_group(const Poly& hom_dim) {
    if (hom_dim.is_zero()) return Group::torus(1);
    if (!hom_dim.is_constant())
        throw CalcError("symbolic Hom dimension " + hom_dim.str() + " has no stabilizer model");
    return Group::semidirect(static_cast<int>(hom_dim.constant_term().get_num().get_si()), 1);
}

// nonsplit stratum over a base: a named total space when the oracle carries
// one, otherwise the fiber Euler characteristic times the base
StackFn nonsplit_part(const Space& base, const ExtEntry& ext, const Group& grp, const Poly& coeff,
                      const Poly& reldim, const std::string& origin) {
    if (ext.total_space) {
        if (ext.dim.is_zero()) throw CalcError("total space recorded for a zero Ext table entry");
        return StackFn::single(Term{coeff, *ext.total_space, grp, reldim, origin});
    }
    if (ext.dim.is_zero()) return StackFn::zero();
    Poly fiber_chi = ext.dim;  // chi P(Ext^1) = dim Ext^1
    return motivic_integrate(base, grp, fiber_chi, coeff, reldim, origin);
}

}  // namespace

StackFn hall_product(const HallElement& a, const HallElement& b, const Geometry& g,
                     const Poly& reldim, Trace* trace) {
    if (a.cls.rank != 1 || b.cls.rank != 1)
        throw CalcError("the Hall product is computed for rank-1 stable classes");
    if (a.sf.is_zero() || b.sf.is_zero()) return StackFn::zero();

    const auto [ma, ga] = g.moduli_descriptor(a.cls);
    const auto [mb, gb] = g.moduli_descriptor(b.cls);
    if (!(ga.is_torus() && ga.torus_rank() == 1 && gb.is_torus() && gb.torus_rank() == 1))
        throw CalcError("rank-1 factors must have Gm stabilizers");

    const std::string label = "delta" + a.cls.str() + " * delta" + b.cls.str();
    const Poly one = g.constant(1);
    StackFn out;

    if (a.cls.degree == b.cls.degree) {
        // diagonal: E1 iso E3, stabilizers twisted by Hom(E,E)
        Poly hom_d = g.hom_dim(b.cls, a.cls, true);
        StackFn split_diag = StackFn::single(
            Term{one, ma, split_group(hom_d), reldim, label + " split diagonal"});
        const ExtEntry& ext_d = g.ext1(b.cls, a.cls, true);
        StackFn nsp_diag = nonsplit_part(ma, ext_d, nonsplit_group(hom_d), one, reldim,
                                         label + " nonsplit diagonal");
        // off-diagonal: distinct objects of the same class
        Poly hom_o = g.hom_dim(b.cls, a.cls, false);
        Space off = Space::complement(Space::product(ma, mb), ma);
        StackFn split_off =
            StackFn::single(Term{one, off, split_group(hom_o), reldim, label + " split offdiag"});
        const ExtEntry& ext_o = g.ext1(b.cls, a.cls, false);
        StackFn nsp_off = nonsplit_part(off, ext_o, nonsplit_group(hom_o), one, reldim,
                                        label + " nonsplit offdiag");
        out = split_diag + nsp_diag + split_off + nsp_off;
    } else {
        Poly hom = g.hom_dim(b.cls, a.cls, false);
        Space base = Space::product(ma, mb);
        StackFn split =
            StackFn::single(Term{one, base, split_group(hom), reldim, label + " split"});
        const ExtEntry& ext = g.ext1(b.cls, a.cls, false);
        StackFn nsp =
            nonsplit_part(base, ext, nonsplit_group(hom), one, reldim, label + " nonsplit");
        out = split + nsp;
    }

    if (trace)
        trace->step("hall-product", label, out.str(),
                    "extension strata integrated over the moduli product");
    return out;
}

HallElement delta_ss_rank2(const PairClass& beta2, const Geometry& g, Trace* trace) {
    if (beta2.rank != 2) throw CalcError("delta_ss_rank2 expects a rank-2 class");
    auto ok = g.assumption_ok.find(beta2.degree);
    if (ok != g.assumption_ok.end() && !ok->second)
        throw CalcError(g.name + ": class " + beta2.str() +
                        " violates the stable-decomposition assumption");
    auto it = g.strata_table.find(beta2.degree);
    if (it == g.strata_table.end() || it->second.empty()) {
        // every rank-2 object is an extension of rank-1 stables, so the
        // class is empty exactly when every decomposition has an empty factor
        for (const auto& [ck, cl] : g.ordered_decompositions(beta2)) {
            if (g.rank1(ck).status != ClassStatus::Empty &&
                g.rank1(cl).status != ClassStatus::Empty)
                throw CalcError(g.name + ": missing stratum table for the nonempty class " +
                                beta2.str());
        }
        if (trace) trace->step("semistable-strata", beta2.str(), "0", "empty moduli");
        return {beta2, StackFn::zero()};
    }
    Poly reldim = g.constant(-1) - g.ambient_dim(beta2);
    std::vector<Term> terms;
    for (const auto& s : it->second)
        terms.push_back(Term{g.constant(1), s.space, s.group, reldim, "stratum: " + s.note});
    StackFn sf{std::move(terms)};
    if (trace)
        trace->step("semistable-strata", beta2.str(), sf.str(),
                    "stabilizer-constant stratification of the semistable stack");
    return {beta2, sf};
}

HallElement epsilon_rank2(const PairClass& beta2, const Geometry& g, Trace* trace) {
    HallElement dss = delta_ss_rank2(beta2, g, trace);
    Poly reldim = g.constant(-1) - g.ambient_dim(beta2);
    StackFn acc = dss.sf;
    for (const auto& [ck, cl] : g.ordered_decompositions(beta2)) {
        HallElement da = delta_rank1(ck, g);
        HallElement db = delta_rank1(cl, g);
        StackFn prod = hall_product(da, db, g, reldim, trace);
        acc = acc - prod.scaled(rat(1, 2));
        if (trace)
            trace->step("ordered-decomposition", ck.str() + " + " + cl.str(),
                        prod.scaled(rat(-1, 2)).str(), "weight -1/2 per ordered two-step filtration");
    }
    if (trace) trace->step("epsilon-element", beta2.str(), acc.str());
    return {beta2, acc};
}

Invariant lie_morphism_psi(const HallElement& e, Trace* trace) {
    if (!is_virtually_indecomposable(e.sf))
        throw CalcError("psi applied to an element not supported on virtual indecomposables: " +
                        e.sf.str());
    Poly value(e.cls.sheaf_chi.space());
    for (const Term& t : e.sf.terms()) {
        if (!t.space.is_point())
            throw CalcError("psi needs a normalized element, found [" + t.space.str() + "/...]");
        Parity p = parity_of(t.reldim);
        if (p == Parity::Undecidable)
            throw CalcError("undecidable relative-dimension parity: " + t.reldim.str());
        int sign = (p == Parity::Even ? 1 : -1) * (t.group.dim() % 2 == 0 ? 1 : -1);
        Poly contrib = t.coeff * Rat(sign);
        value += contrib;
        if (trace)
            trace->step("behrend-evaluation", t.str(),
                        contrib.str(),
                        "stacky point weight (-1)^dim(G), stratum sign (-1)^" + t.reldim.str());
    }
    return {value, e.cls};
}

std::vector<std::pair<std::string, Invariant>> epsilon_strata_psi(const PairClass& beta2,
                                                                  const Geometry& g) {
    const StratumIntegrals* rec = g.integrals(beta2);
    if (!rec) throw CalcError(g.name + ": no stratum integrals recorded for " + beta2.str());
    std::vector<std::pair<std::string, Invariant>> out;
    auto sign_from = [&](const Poly& dim, const char* what) {
        Parity p = parity_of(dim);
        if (p == Parity::Undecidable)
            throw CalcError(std::string(what) + ": undecidable dimension parity " + dim.str());
        return p == Parity::Even ? -1 : 1;  // (-1)^(d+1)
    };
    for (const auto& e : rec->i1) {
        // (-1)^(d1+1) * 1/2 * I1(k,l)
        int s = sign_from(e.dim, "offdiagonal pair stratum");
        Poly v = e.value * rat(s, 2);
        out.push_back({"pair(" + std::to_string(e.k_degree) + "," + std::to_string(e.l_degree) + ")",
                       Invariant{v, beta2}});
    }
    if (rec->i2) {
        int s = sign_from(*rec->i2_dim, "self-extension stratum");
        out.push_back({"selfext(half,half)", Invariant{*rec->i2 * rat(3 * s, 2), beta2}});
    }
    out.push_back({"split-offdiag(half,half)", Invariant{g.zero(), beta2}});
    out.push_back({"split-offdiag(k,l)", Invariant{g.zero(), beta2}});
    if (rec->chi_half) {
        // (-1)^1 * (-1)^(d4) * (-1/4) * chi(M half)
        Parity p = parity_of(*rec->chi_half_dim);
        if (p == Parity::Undecidable)
            throw CalcError("split diagonal stratum: undecidable dimension parity");
        int d4sign = (p == Parity::Even) ? 1 : -1;
        out.push_back(
            {"split-diag(half,half)", Invariant{*rec->chi_half * rat(d4sign, 4), beta2}});
    }
    return out;
}

}  // namespace hallpair
