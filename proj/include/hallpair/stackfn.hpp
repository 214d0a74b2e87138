#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hallpair/groups.hpp"
#include "hallpair/motivic.hpp"
#include "hallpair/poly.hpp"

namespace hallpair {

/// One term c * [space / group] of a stack function. reldim is the relative
/// dimension this term's stacky points carry over the ambient semistable
/// moduli stack; it is assigned when the term is born and preserved by all
/// rewriting, because the Behrend sign is taken from the stratum of origin.
struct Term {
    Poly coeff;
    Space space;
    Group group;
    Poly reldim;
    std::string origin;  // trace label

    std::string key() const;
    std::string str() const;
    std::string latex() const;
};

/// Finite Q-linear combination of terms; addition concatenates and combines
/// terms with identical (space, group, reldim). The zero function is empty.
class StackFn {
public:
    StackFn() = default;
    explicit StackFn(std::vector<Term> terms);

    static StackFn zero() { return StackFn(); }
    static StackFn single(Term t);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    StackFn operator+(const StackFn& o) const;
    StackFn operator-(const StackFn& o) const;
    StackFn scaled(const Rat& c) const;
    StackFn scaled(const Poly& c) const;

    std::string str() const;
    std::string latex() const;

private:
    std::vector<Term> terms_;
    void combine();
};

/// Rewrites c*[X/G] with G acting through the quotient into
/// c*chi(X)*[pt/G]. The product structure is asserted by the caller and
/// recorded in the derivation trace, never verified geometrically.
StackFn apply_chi_relation(const Term& t);

/// Termwise decomposition of a non-abelian quotient into subtorus quotients
/// with the tabulated F coefficients; identity on torus quotients.
StackFn torus_decompose(const Term& t, const FTable& f = default_f_table());

/// Motivic integration of a constant-shape integrand over a base: a point
/// integrand [pt/G] gives [base/G]; a bundle integrand multiplies by the
/// fiber Euler characteristic.
StackFn motivic_integrate(const Space& base, const Group& g, const Poly& fiber_chi,
                          const Poly& coeff, const Poly& reldim, const std::string& origin);

/// Fixpoint of torus decomposition, chi reduction and like-term combination;
/// the result is supported on [pt/Gm^k] only.
StackFn normalize(const StackFn& f, const FTable& ftable = default_f_table());

/// True iff every term of a normalized function has stabilizer Gm.
bool is_virtually_indecomposable(const StackFn& f);

}  // namespace hallpair
