#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hallpair/groups.hpp"
#include "hallpair/motivic.hpp"
#include "hallpair/poly.hpp"

namespace hallpair {

/// Numerical class of a pair object: sheaf degree d (multiple of the line
/// class), sheaf Euler characteristic, and the vector-space rank.
struct PairClass {
    int degree = 0;
    Poly sheaf_chi;
    int rank = 0;

    bool operator==(const PairClass& o) const {
        return degree == o.degree && rank == o.rank && sheaf_chi == o.sheaf_chi;
    }
    std::string str() const;
};

enum class ClassStatus { Stable, StrictlySemistable, Empty };

struct RankOneEntry {
    PairClass cls;
    Space moduli;
    Group stabilizer;
    ClassStatus status = ClassStatus::Stable;
    std::string note;
};

struct ExtEntry {
    Poly dim;
    std::optional<Space> total_space;  // named nonsplit total space over the product base
    std::string note;
};

struct Stratum {
    Space space;
    Group group;
    std::string note;
};

/// Per-geometry record backing the closed-form stratum evaluator: the
/// off-diagonal extension integrals I1(k,l), the self-extension integral I2,
/// the half-class Euler characteristic, and the stratum dimensions whose
/// parities fix the signs.
struct StratumIntegrals {
    struct I1Entry {
        int k_degree = 0;
        int l_degree = 0;
        Poly value;
        Poly dim;
        std::string note;
    };
    std::vector<I1Entry> i1;
    std::optional<Poly> i2, i2_dim;
    std::optional<Poly> chi_half, chi_half_dim;
};

/// Pluggable per-geometry data: classes, Hom/Ext^1 dimensions, rank-1
/// moduli, Euler pairing data, generalized DT values, ambient stack
/// dimensions, rank-2 strata. Immutable after construction.
class Geometry {
public:
    std::string name;
    ParamSpacePtr params;
    std::string twist = "n";

    std::vector<RankOneEntry> classes;
    // Hom(E_a -> E_b) keyed by (a.degree, b.degree, on_diagonal)
    std::map<std::tuple<int, int, bool>, Poly> hom_table;
    // Ext^1(E_quot, E_sub) keyed by (quot.degree, sub.degree, on_diagonal)
    std::map<std::tuple<int, int, bool>, ExtEntry> ext1_table;
    std::map<int, std::vector<Stratum>> strata_table;  // rank-2 classes, keyed by degree
    std::map<int, Poly> ambient_table;                 // rank-2 classes, keyed by degree
    std::map<int, Rat> dt_table;
    std::map<int, StratumIntegrals> integrals_table;
    std::map<int, bool> assumption_ok;  // rank-2 decomposability assumption

    Poly poly(const std::string& expr) const { return parse_poly(expr, params); }
    Poly zero() const { return Poly(params); }
    Poly constant(const Rat& c) const { return Poly::constant(params, c); }

    PairClass degenerate_class() const;          // (0, 0, 1)
    Poly sheaf_chi_of_degree(int degree) const;  // from the declared classes
    PairClass pair_class(int degree, int rank) const;

    const RankOneEntry& rank1(const PairClass& c) const;
    bool has_rank1(int degree, int rank) const;

    /// The rank-1 pair moduli space and its stabilizer.
    std::pair<Space, Group> moduli_descriptor(const PairClass& c) const;

    Poly hom_dim(const PairClass& from, const PairClass& to, bool diagonal) const;
    const ExtEntry& ext1(const PairClass& quot, const PairClass& sub, bool diagonal) const;
    Poly ext1_dim(const PairClass& quot, const PairClass& sub, bool diagonal = false) const;

    /// chibar((beta,d),(gamma,e)) = -d*(n*deg(gamma)+chi(gamma)) + e*(n*deg(beta)+chi(beta)):
    /// curve-class pairings vanish and the twist line contributes n*deg + chi.
    Poly euler_pairing(const PairClass& a, const PairClass& b) const;

    Rat dt_value(int sheaf_degree) const;
    Poly ambient_dim(const PairClass& rank2) const;
    const std::vector<Stratum>& strata(const PairClass& rank2) const;
    const StratumIntegrals* integrals(const PairClass& rank2) const;

    /// Ordered decompositions of a rank-2 class into two declared rank-1
    /// pair classes (the degenerate (0,0,1) participates).
    std::vector<std::pair<PairClass, PairClass>> ordered_decompositions(const PairClass& rank2) const;
};

/// The resolved-conifold instance: curve classes d*[line] with chi(F) = d*u
/// for a declared unit symbol u. Degree 1 reproduces the worked rank-2
/// computation; degree 2 carries the derived strictly-semistable tables.
Geometry make_conifold(int max_degree = 1, const std::string& chi_unit = "r");

/// Line-oriented config loader; parse errors report line and column.
Geometry load_geometry(const std::string& path);
Geometry parse_geometry(const std::string& text, const std::string& name);

/// Geometry by builtin name or file path.
Geometry resolve_geometry(const std::string& name_or_path, int degree,
                          const std::string& chi_binding);

}  // namespace hallpair
