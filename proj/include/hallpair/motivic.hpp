#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hallpair/poly.hpp"

namespace hallpair {

/// Symbolic algebraic spaces with a defined Euler characteristic and, for
/// fixed numeric dimensions, a virtual Poincare polynomial. Opaque leaves
/// carry oracle-resolved data for moduli without a catalog constructor.
class Space {
public:
    enum class Kind {
        Point,
        Empty,
        Affine,        // A^k, dim a polynomial
        Torus,         // Gm^k
        Projective,    // P^dim
        Grassmannian,  // G(k, m)
        Flag,          // F(1, 2, m)
        Product,
        Disjoint,
        Complement,  // a \ b, containment asserted by the caller
        Opaque,      // named space with oracle-supplied chi (and optional P_t)
        Descriptor,  // unresolved moduli tag
    };

    static Space point(ParamSpacePtr ps);
    static Space empty(ParamSpacePtr ps);
    static Space affine(Poly dim);
    static Space torus(ParamSpacePtr ps, int rank);
    static Space projective(Poly dim);
    static Space grassmannian(int k, Poly m);
    static Space flag12(Poly m);
    static Space product(Space a, Space b);
    static Space disjoint(Space a, Space b);
    static Space complement(Space a, Space b);
    static Space opaque(ParamSpacePtr ps, std::string tag, Poly chi);
    static Space opaque(ParamSpacePtr ps, std::string tag, Poly chi, Poly poincare);
    static Space descriptor(ParamSpacePtr ps, std::string tag);

    Kind kind() const { return kind_; }
    const std::string& tag() const { return tag_; }
    const Poly& dim_param() const { return dim_; }
    int small_k() const { return k_; }
    const Space& left() const { return *children_[0]; }
    const Space& right() const { return *children_[1]; }
    const ParamSpacePtr& params() const { return ps_; }

    bool is_point() const { return kind_ == Kind::Point; }
    bool is_empty() const { return kind_ == Kind::Empty; }

    /// Structural identity; no semantic space equivalences are applied.
    bool same(const Space& o) const { return key() == o.key(); }
    std::string key() const { return str(); }

    std::string str() const;
    std::string latex() const;

private:
    Kind kind_ = Kind::Point;
    ParamSpacePtr ps_;
    std::string tag_;
    Poly dim_;       // Affine/Projective dim, Grassmannian/Flag ambient m, Opaque chi
    Poly poincare_;  // optional opaque P_t (zero = not available)
    bool has_poincare_ = false;
    int k_ = 0;  // Torus rank / Grassmannian k
    std::vector<std::shared_ptr<const Space>> children_;

    friend Poly euler_char(const Space& x);
    friend RationalFn poincare_poly(const Space& x);
};

/// Topological Euler characteristic, defined for every constructor except
/// an unresolved descriptor. Multiplicative over Product, additive over
/// Disjoint, subtractive over Complement.
Poly euler_char(const Space& x);

/// Virtual Poincare polynomial in t. Families with a symbolic dimension
/// refuse (closed forms with symbolic exponents are out of scope); tori,
/// affine spaces and fixed-dimension families evaluate exactly.
RationalFn poincare_poly(const Space& x);

/// Base of a fibration from total and fiber Poincare polynomials:
/// P_t(base) = P_t(total)/P_t(fiber), with the inexact case reported as data.
DivResult fibration_base(const Poly& total, const Poly& fiber);

}  // namespace hallpair
