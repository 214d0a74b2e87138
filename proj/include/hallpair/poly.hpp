#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hallpair {

using Rat = mpq_class;

Rat rat(long num, long den = 1);
Rat parse_rat(const std::string& s);
std::string rat_str(const Rat& q);

/// Error type for every contract violation in the symbolic layer.
struct CalcError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered set of parameter names declared once per computation session.
/// Using a name outside the declared set is an error, never a silent new symbol.
class ParamSpace {
public:
    explicit ParamSpace(std::vector<std::string> names);

    int index_of(const std::string& name) const;  // throws CalcError on unknown name
    int arity() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    bool same_as(const ParamSpace& other) const;

private:
    std::vector<std::string> names_;
};

using ParamSpacePtr = std::shared_ptr<const ParamSpace>;

using Exps = std::vector<int>;

// Graded lexicographic, higher terms first; used for canonical printing
// and as the reduction order in division.
struct MonoCmp {
    bool operator()(const Exps& a, const Exps& b) const;
};

/// Exact multivariate polynomial over Q in the declared parameters.
class Poly {
public:
    Poly() = default;
    explicit Poly(ParamSpacePtr ps) : ps_(std::move(ps)) {}
    Poly(ParamSpacePtr ps, const Rat& c);

    static Poly constant(ParamSpacePtr ps, const Rat& c);
    static Poly var(ParamSpacePtr ps, const std::string& name, int power = 1);

    const ParamSpacePtr& space() const { return ps_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_term() const;
    int total_degree() const;  // -1 for the zero polynomial

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly operator*(const Rat& c) const;
    Poly operator+(const Rat& c) const;

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Rat eval(const std::map<std::string, Rat>& at) const;
    Poly substitute(const std::string& name, const Rat& value) const;

    std::string str() const;
    std::string latex() const;

    const std::map<Exps, Rat, MonoCmp>& terms() const { return terms_; }
    void set_term(const Exps& e, const Rat& c);

private:
    ParamSpacePtr ps_;
    std::map<Exps, Rat, MonoCmp> terms_;
    void check_space(const Poly& o) const;
};

/// Quotient plus remainder; remainder zero iff the division was exact.
struct DivResult {
    Poly quotient;
    Poly remainder;
    bool exact() const { return remainder.is_zero(); }
};

/// Leading-term division in the graded-lex order. Exact divisibility is
/// detected by a zero remainder; an inexact division returns data, it
/// does not throw. Division by the zero polynomial throws.
DivResult poly_divmod(const Poly& num, const Poly& den);

/// Exact quotient; throws CalcError when the division leaves a remainder.
Poly poly_divexact(const Poly& num, const Poly& den);

enum class Parity { Even, Odd, Undecidable };

/// Parity of an integer-valued polynomial in integer-valued parameters:
/// decidable exactly when all non-constant coefficients are even.
/// Throws on non-integer coefficients.
Parity parity_of(const Poly& p);
std::string parity_str(Parity p);

/// Rational function num/den, den nonzero, stored content-normalized
/// (integral primitive parts, positive leading denominator coefficient).
class RationalFn {
public:
    RationalFn() = default;
    RationalFn(Poly num, Poly den);
    explicit RationalFn(Poly num);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_poly() const;
    Poly as_poly() const;  // throws if the denominator does not divide exactly
    bool is_zero() const { return num_.is_zero(); }

    RationalFn operator*(const RationalFn& o) const;
    RationalFn operator+(const RationalFn& o) const;
    RationalFn operator-(const RationalFn& o) const;
    bool equals(const RationalFn& o) const;  // cross-multiplication, well-defined on reduced forms

    std::string str() const;

private:
    Poly num_, den_;
    void normalize();
};

struct EvalOutcome {
    bool is_pole = false;
    Rat value;          // set when !is_pole
    int cancelled = 0;  // number of linear factors removed before evaluating
};

/// Evaluate num/den at a full parameter assignment. When numerator and
/// denominator both vanish in some variable, common (x - a) factors are
/// cancelled before substituting; a pole is reported only when the
/// denominator still vanishes after full cancellation.
EvalOutcome eval_limit(const RationalFn& f, const std::map<std::string, Rat>& at);

/// Parser for the small arithmetic grammar used in geometry configs and
/// CLI bindings: +, -, *, ^ (integer powers), parentheses, integer and
/// rational literals, declared symbols. Errors carry line and column.
struct ParsePos {
    int line = 1;
    int col = 1;
};
Poly parse_poly(const std::string& text, const ParamSpacePtr& ps, ParsePos where = {});

}  // namespace hallpair
