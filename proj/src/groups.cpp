#include "hallpair/groups.hpp"

namespace hallpair {

int Group::torus_rank() const {
    switch (kind_) {
        case Kind::TorusPow: return rank_;
        case Kind::GL2: return 2;
        case Kind::SemiDirect: return rank_;
        case Kind::TorusUnion: return 2;
    }
    return 0;
}

int Group::dim() const {
    switch (kind_) {
        case Kind::TorusPow: return rank_;
        case Kind::GL2: return 4;
        case Kind::SemiDirect: return unip_ + rank_;
        case Kind::TorusUnion: return 2;
    }
    return 0;
}

std::string Group::str() const {
    switch (kind_) {
        case Kind::TorusPow: return rank_ == 1 ? "Gm" : "Gm^" + std::to_string(rank_);
        case Kind::GL2: return "GL2";
        case Kind::SemiDirect:
            return "Gm^" + std::to_string(rank_) + "|xA^" + std::to_string(unip_);
        case Kind::TorusUnion: return "Gm^2 u (Gm^2)*";
    }
    return "?";
}

std::string Group::latex() const {
    switch (kind_) {
        case Kind::TorusPow:
            return rank_ == 1 ? "\\mathbb{G}_m" : "\\mathbb{G}_m^{" + std::to_string(rank_) + "}";
        case Kind::GL2: return "\\mathrm{GL}_2(\\mathbb{C})";
        case Kind::SemiDirect:
            return "\\mathbb{G}_m^{" + std::to_string(rank_) + "}\\ltimes\\mathbb{A}^{" +
                   std::to_string(unip_) + "}";
        case Kind::TorusUnion:
            return "\\mathbb{G}_m^2\\cup(\\mathbb{G}_m^2)^*";
    }
    return "?";
}

Poly group_poincare(const Group& g, const ParamSpacePtr& ps) {
    Poly one = Poly::constant(ps, 1);
    auto tpow = [&](int k) { return Poly::var(ps, "t", k); };
    Poly gm = tpow(2) - one;  // P_t(Gm) = t^2 - 1
    switch (g.kind()) {
        case Group::Kind::TorusPow: {
            Poly acc = one;
            for (int i = 0; i < g.torus_rank(); ++i) acc *= gm;
            return acc;
        }
        case Group::Kind::GL2: return (tpow(4) - one) * gm * tpow(2);
        case Group::Kind::SemiDirect: {
            Poly acc = tpow(2 * g.unipotent_dim());
            for (int i = 0; i < g.torus_rank(); ++i) acc *= gm;
            return acc;
        }
        case Group::Kind::TorusUnion: return (gm * gm) * Rat(2);
    }
    throw CalcError("unreachable");
}

FTable::FTable() {
    const Group t1 = Group::torus(1), t2 = Group::torus(2);
    // GL2 against its maximal torus
    entries_.emplace_back(Group::gl2(), t2, rat(1, 2));
    entries_.emplace_back(Group::gl2(), t1, rat(-3, 4));
    // unipotent-extended rank-2 tori; the coefficient does not see the
    // unipotent dimension, so a few small d are tabulated
    for (int d = 1; d <= 4; ++d) {
        entries_.emplace_back(Group::semidirect(d, 2), t2, 1);
        entries_.emplace_back(Group::semidirect(d, 2), t1, -1);
        entries_.emplace_back(Group::semidirect(d, 1), t1, 1);
    }
}

bool FTable::has(const Group& g, const Group& q) const {
    if (g.is_torus() && g == q) return true;
    for (const auto& [eg, eq, v] : entries_)
        if (eg == g && eq == q) return true;
    return false;
}

Rat FTable::coefficient(const Group& g, const Group& q) const {
    if (g.is_torus() && g == q) return 1;  // identity decomposition
    for (const auto& [eg, eq, v] : entries_)
        if (eg == g && eq == q) return v;
    throw CalcError("no F(" + g.str() + ", " + q.str() + ") entry in the decomposition table");
}

void FTable::set(const Group& g, const Group& q, const Rat& value) {
    for (auto& [eg, eq, v] : entries_) {
        if (eg == g && eq == q) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(g, q, value);
}

std::vector<std::pair<Group, Rat>> FTable::decomposition_targets(const Group& g) const {
    if (g.is_torus()) return {{g, Rat(1)}};
    if (g.kind() != Group::Kind::GL2 && g.kind() != Group::Kind::SemiDirect)
        throw CalcError("no torus decomposition for " + g.str());
    std::vector<std::pair<Group, Rat>> out;
    for (int rank = g.torus_rank(); rank >= 1; --rank) {
        Group q = Group::torus(rank);
        if (has(g, q)) out.emplace_back(q, coefficient(g, q));
    }
    if (out.empty()) throw CalcError("empty decomposition row for " + g.str());
    return out;
}

const FTable& default_f_table() {
    static const FTable table;
    return table;
}

}  // namespace hallpair
