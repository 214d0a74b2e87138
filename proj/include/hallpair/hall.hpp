#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hallpair/oracle.hpp"
#include "hallpair/stackfn.hpp"
#include "hallpair/trace.hpp"

namespace hallpair {

/// Class-tagged stack function (a delta or epsilon element of the Hall algebra).
struct HallElement {
    PairClass cls;
    StackFn sf;
};

/// A computed invariant: exact polynomial value tagged by its class.
struct Invariant {
    Poly value;
    PairClass class_label;
};

/// Weak stability: 0 on rank-0 classes, 1 otherwise. Errors outside the
/// positive cone (negative sheaf degree, or nothing at all).
int weak_stability(const PairClass& c);

/// Characteristic stack function of the rank-1 stable moduli of c; empty
/// classes give zero.
HallElement delta_rank1(const PairClass& c, const Geometry& g);

/// Ringel-Hall product of two rank-1 characteristic stack functions,
/// computed stratum-by-stratum from the extension data: a split part over
/// the moduli product and a nonsplit part from the projectivized extension
/// spaces, with a diagonal/off-diagonal case split when the classes agree.
StackFn hall_product(const HallElement& a, const HallElement& b, const Geometry& g,
                     const Poly& reldim, Trace* trace = nullptr);

/// The strictly-semistable rank-2 characteristic stack function as the
/// oracle's stratum sum, every term carrying the ambient relative dimension.
HallElement delta_ss_rank2(const PairClass& beta2, const Geometry& g, Trace* trace = nullptr);

/// delta_ss minus half the ordered sum of rank-1 Hall products over all
/// decompositions (the degenerate class participates).
HallElement epsilon_rank2(const PairClass& beta2, const Geometry& g, Trace* trace = nullptr);

/// The Behrend-weighted point count of a normalized, virtually
/// indecomposable element: sum of coeff * (-1)^parity(reldim) * (-1)^dim(G).
Invariant lie_morphism_psi(const HallElement& e, Trace* trace = nullptr);

/// Images of the per-stratum epsilon pieces under the Lie algebra morphism,
/// evaluated from the oracle integrals record by the printed closed forms:
/// the off-diagonal pair integrals with weight 1/2, the self-extension
/// integral with prefactor -3/2, the split off-diagonal strata (identically
/// zero), and the split diagonal stratum with prefactor -1/4.
std::vector<std::pair<std::string, Invariant>> epsilon_strata_psi(const PairClass& beta2,
                                                                  const Geometry& g);

}  // namespace hallpair
