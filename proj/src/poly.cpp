#include "hallpair/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace hallpair {

Rat rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat parse_rat(const std::string& s) {
    try {
        Rat q(s);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw CalcError("bad rational literal: '" + s + "'");
    }
}

std::string rat_str(const Rat& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

ParamSpace::ParamSpace(std::vector<std::string> names) : names_(std::move(names)) {
    for (size_t i = 0; i < names_.size(); ++i)
        for (size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw CalcError("duplicate parameter '" + names_[i] + "'");
}

int ParamSpace::index_of(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    throw CalcError("undeclared parameter '" + name + "'");
}

bool ParamSpace::same_as(const ParamSpace& other) const { return names_ == other.names_; }

bool MonoCmp::operator()(const Exps& a, const Exps& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da > db;
    return a > b;  // lex, higher first
}

Poly::Poly(ParamSpacePtr ps, const Rat& c) : ps_(std::move(ps)) {
    if (c != 0) terms_[Exps(ps_->arity(), 0)] = c;
}

Poly Poly::constant(ParamSpacePtr ps, const Rat& c) { return Poly(std::move(ps), c); }

Poly Poly::var(ParamSpacePtr ps, const std::string& name, int power) {
    Poly p(ps);
    Exps e(ps->arity(), 0);
    e[ps->index_of(name)] = power;
    p.terms_[e] = 1;
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Rat Poly::constant_term() const {
    if (!ps_) return 0;
    auto it = terms_.find(Exps(ps_->arity(), 0));
    return it == terms_.end() ? Rat(0) : it->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.begin()->first;  // graded order: first term has max degree
    return std::accumulate(e.begin(), e.end(), 0);
}

void Poly::check_space(const Poly& o) const {
    if (!ps_ || !o.ps_) throw CalcError("polynomial without a parameter space");
    if (ps_ != o.ps_ && !ps_->same_as(*o.ps_)) throw CalcError("mixed parameter spaces");
}

Poly Poly::operator-() const {
    Poly r(ps_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    if (!ps_) ps_ = o.ps_;
    check_space(o);
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.terms_.empty()) return a;
    if (b.terms_.empty()) return b;
    a.check_space(b);
    Poly r(a.ps_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exps e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                Rat c = ca * cb;
                if (c != 0) r.terms_[e] = c;
            } else {
                it->second += ca * cb;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    return r;
}

Poly Poly::operator*(const Rat& c) const {
    Poly r(ps_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

Poly Poly::operator+(const Rat& c) const { return *this + Poly(ps_, c); }

Rat Poly::eval(const std::map<std::string, Rat>& at) const {
    if (!ps_) return 0;
    std::vector<Rat> vals(ps_->arity());
    for (int i = 0; i < ps_->arity(); ++i) {
        auto it = at.find(ps_->name(i));
        bool used = false;
        for (const auto& [e, c] : terms_)
            if (e[i] != 0) used = true;
        if (it == at.end()) {
            if (used) throw CalcError("assignment misses parameter '" + ps_->name(i) + "'");
            vals[i] = 0;
        } else {
            vals[i] = it->second;
        }
    }
    Rat acc = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= vals[i];
        acc += t;
    }
    return acc;
}

Poly Poly::substitute(const std::string& name, const Rat& value) const {
    int idx = ps_->index_of(name);
    Poly r(ps_);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int k = 0; k < e[idx]; ++k) t *= value;
        if (t == 0) continue;
        Exps e2 = e;
        e2[idx] = 0;
        auto it = r.terms_.find(e2);
        if (it == r.terms_.end()) {
            r.terms_[e2] = t;
        } else {
            it->second += t;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

void Poly::set_term(const Exps& e, const Rat& c) {
    if (c == 0)
        terms_.erase(e);
    else
        terms_[e] = c;
}

namespace {

std::string mono_str(const ParamSpace& ps, const Exps& e, bool latex) {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += latex ? " " : "*";
        s += ps.name(i);
        if (e[i] != 1) s += latex ? ("^{" + std::to_string(e[i]) + "}") : ("^" + std::to_string(e[i]));
    }
    return s;
}

std::string coeff_str(const Rat& c, bool latex) {
    if (!latex || c.get_den() == 1) return rat_str(c);
    return "\\tfrac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
}

std::string poly_render(const Poly& p, bool latex) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [e, c] : p.terms()) {
        std::string m = mono_str(*p.space(), e, latex);
        Rat a = abs(c);
        std::string piece;
        if (m.empty())
            piece = coeff_str(a, latex);
        else if (a == 1)
            piece = m;
        else
            piece = coeff_str(a, latex) + (latex ? " " : "*") + m;
        if (s.empty())
            s = (c < 0 ? "-" : "") + piece;
        else
            s += (c < 0 ? "-" : "+") + piece;
    }
    return s;
}

}  // namespace

std::string Poly::str() const { return poly_render(*this, false); }
std::string Poly::latex() const { return poly_render(*this, true); }

DivResult poly_divmod(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw CalcError("division by the zero polynomial");
    DivResult r{Poly(num.space() ? num.space() : den.space()), num};
    if (num.is_zero()) return r;
    const auto& dlead = *den.terms().begin();
    while (!r.remainder.is_zero()) {
        const auto& nlead = *r.remainder.terms().begin();
        Exps q(nlead.first.size());
        bool divides = true;
        for (size_t i = 0; i < q.size(); ++i) {
            q[i] = nlead.first[i] - dlead.first[i];
            if (q[i] < 0) divides = false;
        }
        if (!divides) break;
        Poly qt(r.remainder.space());
        qt.set_term(q, nlead.second / dlead.second);
        r.quotient += qt;
        r.remainder -= qt * den;
    }
    return r;
}

Poly poly_divexact(const Poly& num, const Poly& den) {
    DivResult r = poly_divmod(num, den);
    if (!r.exact())
        throw CalcError("inexact polynomial division: (" + num.str() + ") / (" + den.str() +
                        "), remainder " + r.remainder.str());
    return r.quotient;
}

Parity parity_of(const Poly& p) {
    bool nonconst_even = true;
    Rat c0 = 0;
    for (const auto& [e, c] : p.terms()) {
        if (c.get_den() != 1) throw CalcError("parity of a non-integer polynomial");
        bool is_const = std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
        if (is_const) {
            c0 = c;
        } else if (c.get_num() % 2 != 0) {
            nonconst_even = false;
        }
    }
    if (!nonconst_even) return Parity::Undecidable;
    return (c0.get_num() % 2 == 0) ? Parity::Even : Parity::Odd;
}

std::string parity_str(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        default: return "undecidable";
    }
}

namespace {

// content = gcd of numerators / lcm of denominators, signed by the leading coefficient
Rat poly_content(const Poly& p) {
    mpz_class g = 0, l = 1;
    for (const auto& [e, c] : p.terms()) {
        mpz_class num = c.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    }
    if (g == 0) return 1;
    Rat content(g, l);
    content.canonicalize();
    if (p.terms().begin()->second < 0) content = -content;
    return content;
}

}  // namespace

RationalFn::RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw CalcError("rational function with zero denominator");
    normalize();
}

RationalFn::RationalFn(Poly num)
    : RationalFn(num, Poly::constant(num.space(), 1)) {}

void RationalFn::normalize() {
    if (num_.is_zero()) {
        den_ = Poly::constant(den_.space(), 1);
        return;
    }
    Rat cn = poly_content(num_);
    Rat cd = poly_content(den_);
    Rat scale = cn / cd;
    num_ = num_ * (Rat(1) / cn);
    den_ = den_ * (Rat(1) / cd);
    num_ = num_ * scale;
}

bool RationalFn::is_poly() const { return poly_divmod(num_, den_).exact(); }

Poly RationalFn::as_poly() const { return poly_divexact(num_, den_); }

RationalFn RationalFn::operator*(const RationalFn& o) const {
    return RationalFn(num_ * o.num_, den_ * o.den_);
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFn RationalFn::operator-(const RationalFn& o) const {
    return RationalFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

bool RationalFn::equals(const RationalFn& o) const { return num_ * o.den_ == o.num_ * den_; }

std::string RationalFn::str() const {
    if (den_.is_constant() && den_.constant_term() == 1) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

EvalOutcome eval_limit(const RationalFn& f, const std::map<std::string, Rat>& at) {
    Poly num = f.num(), den = f.den();
    const ParamSpacePtr ps = den.space();
    EvalOutcome out;
    for (int i = 0; i < ps->arity(); ++i) {
        const std::string& name = ps->name(i);
        auto it = at.find(name);
        if (it == at.end()) throw CalcError("assignment misses parameter '" + name + "'");
        const Rat a = it->second;
        Poly lin = Poly::var(ps, name) - Poly::constant(ps, a);
        while (den.substitute(name, a).is_zero() && num.substitute(name, a).is_zero()) {
            num = poly_divexact(num, lin);
            den = poly_divexact(den, lin);
            ++out.cancelled;
        }
        if (den.substitute(name, a).is_zero()) {
            out.is_pole = true;
            return out;
        }
        num = num.substitute(name, a);
        den = den.substitute(name, a);
    }
    out.value = num.constant_term() / den.constant_term();
    return out;
}

// ---- expression parser --------------------------------------------------

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;
    ParsePos pos;
    explicit Lexer(const std::string& text, ParsePos start) : s(text), pos(start) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw CalcError("parse error at line " + std::to_string(pos.line) + ", col " +
                        std::to_string(pos.col) + ": " + what);
    }
    void advance() {
        if (s[i] == '\n') {
            pos.line++;
            pos.col = 1;
        } else {
            pos.col++;
        }
        i++;
    }
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) advance();
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
};

struct ExprParser {
    Lexer lex;
    ParamSpacePtr ps;

    Poly parse() {
        Poly p = sum();
        if (!lex.eof()) lex.fail(std::string("unexpected '") + lex.peek() + "'");
        return p;
    }

    Poly sum() {
        Poly acc = lex.peek() == '-' ? Poly(ps) : product();
        for (;;) {
            char c = lex.peek();
            if (c == '+') {
                lex.advance();
                acc += product();
            } else if (c == '-') {
                lex.advance();
                acc -= product();
            } else {
                return acc;
            }
        }
    }

    Poly product() {
        Poly acc = power();
        while (lex.peek() == '*') {
            lex.advance();
            acc *= power();
        }
        return acc;
    }

    Poly power() {
        Poly base = atom();
        if (lex.peek() == '^') {
            lex.advance();
            int e = integer();
            if (e < 0) lex.fail("negative exponent");
            Poly acc = Poly::constant(ps, 1);
            for (int k = 0; k < e; ++k) acc *= base;
            return acc;
        }
        return base;
    }

    int integer() {
        lex.skip_ws();
        std::string d;
        while (lex.i < lex.s.size() && std::isdigit(static_cast<unsigned char>(lex.s[lex.i]))) {
            d += lex.s[lex.i];
            lex.advance();
        }
        if (d.empty()) lex.fail("expected an integer");
        return std::stoi(d);
    }

    Poly atom() {
        char c = lex.peek();
        if (c == '(') {
            lex.advance();
            Poly p = sum();
            if (lex.peek() != ')') lex.fail("expected ')'");
            lex.advance();
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string d;
            while (lex.i < lex.s.size() &&
                   (std::isdigit(static_cast<unsigned char>(lex.s[lex.i])) || lex.s[lex.i] == '/')) {
                d += lex.s[lex.i];
                lex.advance();
            }
            return Poly::constant(ps, parse_rat(d));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (lex.i < lex.s.size() &&
                   (std::isalnum(static_cast<unsigned char>(lex.s[lex.i])) || lex.s[lex.i] == '_')) {
                name += lex.s[lex.i];
                lex.advance();
            }
            ParsePos at = lex.pos;
            try {
                return Poly::var(ps, name);
            } catch (const CalcError&) {
                throw CalcError("parse error at line " + std::to_string(at.line) + ", col " +
                                std::to_string(at.col) + ": undeclared symbol '" + name + "'");
            }
        }
        lex.fail(c ? std::string("unexpected '") + c + "'" : "unexpected end of input");
    }
};

}  // namespace

Poly parse_poly(const std::string& text, const ParamSpacePtr& ps, ParsePos where) {
    ExprParser p{Lexer(text, where), ps};
    return p.parse();
}

}  // namespace hallpair
