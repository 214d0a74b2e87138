#include "hallpair/stackfn.hpp"

#include <algorithm>
#include <map>

namespace hallpair {

std::string Term::key() const {
    return space.key() + " / " + group.str() + " @ " + reldim.str();
}

std::string Term::str() const {
    std::string c = coeff.is_constant() ? coeff.str() : "(" + coeff.str() + ")";
    return c + "*[" + space.str() + "/" + group.str() + "]";
}

std::string Term::latex() const {
    std::string c = coeff.is_constant() ? coeff.latex() : "\\left(" + coeff.latex() + "\\right)";
    return c + "\\left[\\frac{" + space.latex() + "}{" + group.latex() + "}\\right]";
}

StackFn::StackFn(std::vector<Term> terms) : terms_(std::move(terms)) { combine(); }

StackFn StackFn::single(Term t) { return StackFn(std::vector<Term>{std::move(t)}); }

void StackFn::combine() {
    std::vector<Term> out;
    std::map<std::string, size_t> index;
    for (auto& t : terms_) {
        if (t.coeff.is_zero()) continue;
        std::string k = t.key();
        auto it = index.find(k);
        if (it == index.end()) {
            index[k] = out.size();
            out.push_back(std::move(t));
        } else {
            out[it->second].coeff += t.coeff;
        }
    }
    std::erase_if(out, [](const Term& t) { return t.coeff.is_zero(); });
    std::stable_sort(out.begin(), out.end(),
                     [](const Term& a, const Term& b) { return a.key() < b.key(); });
    terms_ = std::move(out);
}

StackFn StackFn::operator+(const StackFn& o) const {
    std::vector<Term> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return StackFn(std::move(all));
}

StackFn StackFn::operator-(const StackFn& o) const { return *this + o.scaled(Rat(-1)); }

StackFn StackFn::scaled(const Rat& c) const {
    std::vector<Term> all = terms_;
    for (auto& t : all) t.coeff = t.coeff * c;
    return StackFn(std::move(all));
}

StackFn StackFn::scaled(const Poly& c) const {
    std::vector<Term> all = terms_;
    for (auto& t : all) t.coeff = t.coeff * c;
    return StackFn(std::move(all));
}

std::string StackFn::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        s += terms_[i].str();
    }
    return s;
}

std::string StackFn::latex() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        s += terms_[i].latex();
    }
    return s;
}

StackFn apply_chi_relation(const Term& t) {
    Poly chi = euler_char(t.space);
    Term out{t.coeff * chi, Space::point(t.space.params()), t.group, t.reldim, t.origin};
    return StackFn::single(std::move(out));
}

StackFn torus_decompose(const Term& t, const FTable& f) {
    std::vector<Term> out;
    for (const auto& [q, c] : f.decomposition_targets(t.group)) {
        out.push_back(Term{t.coeff * c, t.space, q, t.reldim, t.origin});
    }
    return StackFn(std::move(out));
}

StackFn motivic_integrate(const Space& base, const Group& g, const Poly& fiber_chi,
                          const Poly& coeff, const Poly& reldim, const std::string& origin) {
    if (fiber_chi.is_zero()) return StackFn::zero();
    return StackFn::single(Term{coeff * fiber_chi, base, g, reldim, origin});
}

StackFn normalize(const StackFn& f, const FTable& ftable) {
    std::vector<Term> work = f.terms();
    std::vector<Term> done;
    // each pass either shrinks the group to a torus or the space to a point,
    // so the loop terminates
    while (!work.empty()) {
        Term t = std::move(work.back());
        work.pop_back();
        if (t.coeff.is_zero()) continue;
        if (!t.group.is_torus()) {
            StackFn dec = torus_decompose(t, ftable);
            for (const auto& piece : dec.terms()) work.push_back(piece);
            continue;
        }
        if (!t.space.is_point()) {
            StackFn red = apply_chi_relation(t);
            for (const auto& piece : red.terms()) work.push_back(piece);
            continue;
        }
        done.push_back(std::move(t));
    }
    return StackFn(std::move(done));
}

bool is_virtually_indecomposable(const StackFn& f) {
    for (const auto& t : f.terms())
        if (!(t.group.is_torus() && t.group.torus_rank() == 1)) return false;
    return true;
}

}  // namespace hallpair
