#include "hallpair/motivic.hpp"

namespace hallpair {

namespace {

long as_number(const Poly& p, const char* what) {
    if (!p.is_constant()) throw CalcError(std::string(what) + " needs a numeric dimension, got " + p.str());
    Rat c = p.constant_term();
    if (c.get_den() != 1) throw CalcError(std::string(what) + ": non-integer dimension " + p.str());
    return c.get_num().get_si();
}

}  // namespace

Space Space::point(ParamSpacePtr ps) {
    Space s;
    s.kind_ = Kind::Point;
    s.ps_ = std::move(ps);
    return s;
}

Space Space::empty(ParamSpacePtr ps) {
    Space s;
    s.kind_ = Kind::Empty;
    s.ps_ = std::move(ps);
    return s;
}

Space Space::affine(Poly dim) {
    Space s;
    s.kind_ = Kind::Affine;
    s.ps_ = dim.space();
    s.dim_ = std::move(dim);
    return s;
}

Space Space::torus(ParamSpacePtr ps, int rank) {
    Space s;
    s.kind_ = Kind::Torus;
    s.ps_ = std::move(ps);
    s.k_ = rank;
    return s;
}

Space Space::projective(Poly dim) {
    Space s;
    s.kind_ = Kind::Projective;
    s.ps_ = dim.space();
    s.dim_ = std::move(dim);
    return s;
}

Space Space::grassmannian(int k, Poly m) {
    Space s;
    s.kind_ = Kind::Grassmannian;
    s.ps_ = m.space();
    s.k_ = k;
    s.dim_ = std::move(m);
    return s;
}

Space Space::flag12(Poly m) {
    Space s;
    s.kind_ = Kind::Flag;
    s.ps_ = m.space();
    s.dim_ = std::move(m);
    return s;
}

Space Space::product(Space a, Space b) {
    // point factors are dropped so that split strata built from moduli
    // products combine with the directly-stratified terms
    if (a.is_point()) return b;
    if (b.is_point()) return a;
    Space s;
    s.kind_ = Kind::Product;
    s.ps_ = a.ps_;
    s.children_ = {std::make_shared<Space>(std::move(a)), std::make_shared<Space>(std::move(b))};
    return s;
}

Space Space::disjoint(Space a, Space b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    Space s;
    s.kind_ = Kind::Disjoint;
    s.ps_ = a.ps_;
    s.children_ = {std::make_shared<Space>(std::move(a)), std::make_shared<Space>(std::move(b))};
    return s;
}

Space Space::complement(Space a, Space b) {
    if (b.is_empty()) return a;
    Space s;
    s.kind_ = Kind::Complement;
    s.ps_ = a.ps_;
    s.children_ = {std::make_shared<Space>(std::move(a)), std::make_shared<Space>(std::move(b))};
    return s;
}

Space Space::opaque(ParamSpacePtr ps, std::string tag, Poly chi) {
    Space s;
    s.kind_ = Kind::Opaque;
    s.ps_ = std::move(ps);
    s.tag_ = std::move(tag);
    s.dim_ = std::move(chi);
    return s;
}

Space Space::opaque(ParamSpacePtr ps, std::string tag, Poly chi, Poly poincare) {
    Space s = opaque(std::move(ps), std::move(tag), std::move(chi));
    s.poincare_ = std::move(poincare);
    s.has_poincare_ = true;
    return s;
}

Space Space::descriptor(ParamSpacePtr ps, std::string tag) {
    Space s;
    s.kind_ = Kind::Descriptor;
    s.ps_ = std::move(ps);
    s.tag_ = std::move(tag);
    return s;
}

std::string Space::str() const {
    switch (kind_) {
        case Kind::Point: return "pt";
        case Kind::Empty: return "0";
        case Kind::Affine: return "A^(" + dim_.str() + ")";
        case Kind::Torus: return k_ == 1 ? "Gm" : "Gm^" + std::to_string(k_);
        case Kind::Projective: return "P^(" + dim_.str() + ")";
        case Kind::Grassmannian: return "G(" + std::to_string(k_) + "," + dim_.str() + ")";
        case Kind::Flag: return "F(1,2," + dim_.str() + ")";
        case Kind::Product: return left().str() + " x " + right().str();
        case Kind::Disjoint: return "(" + left().str() + " || " + right().str() + ")";
        case Kind::Complement: return "(" + left().str() + " \\ " + right().str() + ")";
        case Kind::Opaque: return "<" + tag_ + ">";
        case Kind::Descriptor: return "?" + tag_;
    }
    return "?";
}

std::string Space::latex() const {
    switch (kind_) {
        case Kind::Point: return "\\mathrm{pt}";
        case Kind::Empty: return "\\varnothing";
        case Kind::Affine: return "\\mathbb{A}^{" + dim_.latex() + "}";
        case Kind::Torus:
            return k_ == 1 ? "\\mathbb{G}_m" : "\\mathbb{G}_m^{" + std::to_string(k_) + "}";
        case Kind::Projective: return "\\mathbb{P}^{" + dim_.latex() + "}";
        case Kind::Grassmannian:
            return "\\mathrm{G}(" + std::to_string(k_) + "," + dim_.latex() + ")";
        case Kind::Flag: return "\\mathrm{F}(1,2," + dim_.latex() + ")";
        case Kind::Product: return left().latex() + "\\times " + right().latex();
        case Kind::Disjoint: return left().latex() + "\\sqcup " + right().latex();
        case Kind::Complement: return left().latex() + "\\setminus " + right().latex();
        case Kind::Opaque: return "\\mathrm{" + tag_ + "}";
        case Kind::Descriptor: return "\\mathrm{?" + tag_ + "}";
    }
    return "?";
}

Poly euler_char(const Space& x) {
    const ParamSpacePtr& ps = x.ps_;
    auto c = [&](long v) { return Poly::constant(ps, v); };
    switch (x.kind_) {
        case Space::Kind::Point:
        case Space::Kind::Affine: return c(1);
        case Space::Kind::Empty: return c(0);
        case Space::Kind::Torus: return c(x.k_ == 0 ? 1 : 0);
        case Space::Kind::Projective: return x.dim_ + Rat(1);
        case Space::Kind::Grassmannian: {
            if (x.k_ == 2) {
                // binomial(m, 2) stays polynomial in a symbolic m
                return (x.dim_ * x.dim_ - x.dim_) * rat(1, 2);
            }
            long m = as_number(x.dim_, "G(k,m) with k != 2");
            if (m < 0 || x.k_ < 0 || x.k_ > m) return c(0);
            Rat b = 1;
            for (int i = 0; i < x.k_; ++i) b *= rat(m - i, i + 1);
            return Poly::constant(ps, b);
        }
        case Space::Kind::Flag: return x.dim_ * x.dim_ - x.dim_;
        case Space::Kind::Product: return euler_char(x.left()) * euler_char(x.right());
        case Space::Kind::Disjoint: return euler_char(x.left()) + euler_char(x.right());
        case Space::Kind::Complement: return euler_char(x.left()) - euler_char(x.right());
        case Space::Kind::Opaque: return x.dim_;
        case Space::Kind::Descriptor:
            throw CalcError("unresolved moduli descriptor '" + x.tag_ + "'");
    }
    throw CalcError("unreachable");
}

namespace {

Poly tsq_geom(const ParamSpacePtr& ps, long count) {
    // 1 + t^2 + ... + t^(2(count-1))
    Poly p(ps);
    for (long i = 0; i < count; ++i) p += Poly::var(ps, "t", static_cast<int>(2 * i));
    return p;
}

}  // namespace

RationalFn poincare_poly(const Space& x) {
    const ParamSpacePtr& ps = x.ps_;
    auto t2 = [&](int k) { return Poly::var(ps, "t", 2 * k); };
    switch (x.kind_) {
        case Space::Kind::Point: return RationalFn(Poly::constant(ps, 1));
        case Space::Kind::Empty: return RationalFn(Poly(ps));
        case Space::Kind::Affine: {
            long k = as_number(x.dim_, "P_t of A^k");
            return RationalFn(t2(static_cast<int>(k)));
        }
        case Space::Kind::Torus: {
            Poly f = t2(1) - Poly::constant(ps, 1);
            Poly acc = Poly::constant(ps, 1);
            for (int i = 0; i < x.k_; ++i) acc *= f;
            return RationalFn(acc);
        }
        case Space::Kind::Projective: {
            long d = as_number(x.dim_, "P_t of P^d");
            return RationalFn(tsq_geom(ps, d + 1));
        }
        case Space::Kind::Grassmannian: {
            long m = as_number(x.dim_, "P_t of G(k,m)");
            long k = x.k_;
            // Gaussian binomial [m, k] in q = t^2
            Poly num = Poly::constant(ps, 1), den = Poly::constant(ps, 1);
            for (long i = 0; i < k; ++i) {
                num *= tsq_geom(ps, m - i);
                den *= tsq_geom(ps, i + 1);
            }
            return RationalFn(poly_divexact(num, den));
        }
        case Space::Kind::Flag: {
            long m = as_number(x.dim_, "P_t of F(1,2,m)");
            return RationalFn(tsq_geom(ps, m) * tsq_geom(ps, m - 1));
        }
        case Space::Kind::Product: return poincare_poly(x.left()) * poincare_poly(x.right());
        case Space::Kind::Disjoint: return poincare_poly(x.left()) + poincare_poly(x.right());
        case Space::Kind::Complement: return poincare_poly(x.left()) - poincare_poly(x.right());
        case Space::Kind::Opaque:
            if (x.has_poincare_) return RationalFn(x.poincare_);
            throw CalcError("no Poincare polynomial recorded for <" + x.tag_ + ">");
        case Space::Kind::Descriptor:
            throw CalcError("unresolved moduli descriptor '" + x.tag_ + "'");
    }
    throw CalcError("unreachable");
}

DivResult fibration_base(const Poly& total, const Poly& fiber) {
    if (fiber.is_zero()) throw CalcError("fibration with zero fiber polynomial");
    return poly_divmod(total, fiber);
}

}  // namespace hallpair
