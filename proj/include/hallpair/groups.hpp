#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "hallpair/poly.hpp"

namespace hallpair {

/// Stabilizer groups of the strata: torus powers Gm^k, GL2, the
/// unipotent-extended tori A^d⋊Gm^k, and the diagonal-plus-antidiagonal
/// torus union inside GL2 (catalog-only, used for Poincare data).
class Group {
public:
    enum class Kind { TorusPow, GL2, SemiDirect, TorusUnion };

    static Group torus(int k) { return Group(Kind::TorusPow, 0, k); }
    static Group gl2() { return Group(Kind::GL2, 0, 0); }
    static Group semidirect(int unipotent_dim, int torus_rank) {
        return Group(Kind::SemiDirect, unipotent_dim, torus_rank);
    }
    static Group torus_union() { return Group(Kind::TorusUnion, 0, 0); }

    Kind kind() const { return kind_; }
    int torus_rank() const;
    int unipotent_dim() const { return unip_; }
    int dim() const;
    bool is_torus() const { return kind_ == Kind::TorusPow; }

    bool operator==(const Group& o) const {
        return kind_ == o.kind_ && unip_ == o.unip_ && rank_ == o.rank_;
    }
    bool operator<(const Group& o) const {
        return std::tie(kind_, unip_, rank_) < std::tie(o.kind_, o.unip_, o.rank_);
    }

    std::string str() const;
    std::string latex() const;

private:
    Group(Kind k, int u, int r) : kind_(k), unip_(u), rank_(r) {}
    Kind kind_;
    int unip_;
    int rank_;
};

/// P_t of the underlying variety of g. Needs "t" among the declared parameters.
Poly group_poincare(const Group& g, const ParamSpacePtr& ps);

/// Rational coefficient F(G, T^G, Q) for the decomposition of [X/G] into
/// quotients by subtori Q. The table holds exactly the instantiated pairs;
/// an absent pair is an error, never a default.
class FTable {
public:
    FTable();  // the built-in table

    Rat coefficient(const Group& g, const Group& q) const;
    bool has(const Group& g, const Group& q) const;
    void set(const Group& g, const Group& q, const Rat& value);  // test fault-injection hook

    /// Ordered subtorus targets with coefficients; identity for tori.
    std::vector<std::pair<Group, Rat>> decomposition_targets(const Group& g) const;

private:
    std::vector<std::tuple<Group, Group, Rat>> entries_;
};

const FTable& default_f_table();

}  // namespace hallpair
