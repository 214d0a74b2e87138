#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hallpair/hall.hpp"
#include "hallpair/oracle.hpp"
#include "hallpair/trace.hpp"

namespace hallpair {

struct DirectResult {
    Invariant invariant;
    Trace trace;
    StackFn epsilon;     // before normalization, the audit form
    StackFn normalized;  // the virtual-indecomposable normal form
};

/// End-to-end direct computation: strata, ordered Hall products, epsilon
/// element, normalization, Behrend-weighted evaluation.
DirectResult compute_direct(const PairClass& beta2, const Geometry& g,
                            const FTable& ftable = default_f_table());

/// Closed-form stratum evaluation from the oracle integrals record:
/// sum over ordered pairs of (-1)^(d1+1) * 1/2 * I1(k,l), plus
/// 3/2 * (-1)^(d2+1) * I2 and 1/4 * (-1)^(d4) * chi(M half) when the class
/// is divisible. chi(M half) falls back to the wall-crossing expansion
/// when the record does not carry it.
Invariant compute_formula(const PairClass& beta2, const StratumIntegrals& integrals,
                          const Geometry& g);

/// Euler characteristic of the rank-1 half-class moduli from generalized DT
/// values: ordered decompositions into effective sheaf classes, each piece
/// weighted by DT and the twist pairing n*deg + chi, sign exponent from the
/// rank-2 pairings (always even here).
Poly rank1_chi_wallcrossing(const PairClass& half, const Geometry& g);

/// The rank-2 wall-crossing sum: -1/4 * sum over ordered decompositions of
/// (1/l!) * prod DT^(beta_i) * chibar((beta_<i,2),(beta_i,0)) with the
/// printed parity sign.
Invariant wallcrossing_rank2(const PairClass& beta2, const Geometry& g);
/// Per-length terms of the same sum (l -> term), for homogeneity checks.
std::vector<std::pair<int, Poly>> wallcrossing_rank2_terms(const PairClass& beta2,
                                                           const Geometry& g);

/// The general-rank conjectural form with sign (-1)^(rank^2+1) and weight
/// 1/rank^2; rank 2 reduces to wallcrossing_rank2.
Invariant wallcrossing_general(const PairClass& beta, int rank, const Geometry& g);

struct ConsistencyLine {
    std::string name;
    bool available = false;
    Poly value;
    std::string error;
};

struct ConsistencyReport {
    PairClass cls;
    std::vector<ConsistencyLine> lines;  // direct, formula, wallcrossing
    std::vector<std::string> verdicts;   // pairwise equality verdicts
    bool all_agree = false;
    std::string render() const;
};

/// Runs the three computations and reports pairwise exact comparisons;
/// failures become verdicts, never exceptions.
ConsistencyReport consistency_report(const PairClass& beta2, const Geometry& g);

}  // namespace hallpair
