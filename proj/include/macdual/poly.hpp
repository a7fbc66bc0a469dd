#pragma once

// Sparse multivariate polynomials over exact rationals, in two flavors:
// ring elements (variables x1..xn) and divided-power duals (y1..yn),
// together with the contraction and derivation actions of the ring on
// the dual module.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "macdual/exponent.hpp"

namespace macdual {

enum class Flavor { Ring, Dual };
enum class Action { Contraction, Derivation };
enum class Rescale { ToDerivation, ToContraction };

class SparsePoly {
public:
    using TermMap = std::map<Exponent, Rat, GrlexLess>;

    SparsePoly(Flavor flavor, int nvars) : flavor_(flavor), nvars_(nvars) {
        if (nvars < 0) throw dimension_error("negative variable count");
    }

    static SparsePoly zero(Flavor f, int nvars) { return SparsePoly(f, nvars); }

    static SparsePoly constant(Flavor f, int nvars, const Rat& c) {
        SparsePoly p(f, nvars);
        p.add_term(Exponent(nvars), c);
        return p;
    }

    static SparsePoly one(Flavor f, int nvars) { return constant(f, nvars, 1); }

    // 0-based variable index.
    static SparsePoly variable(Flavor f, int nvars, int index) {
        if (index < 0 || index >= nvars) throw dimension_error("variable index out of range");
        SparsePoly p(f, nvars);
        p.add_term(Exponent::unit(nvars, index), 1);
        return p;
    }

    static SparsePoly monomial(Flavor f, const Exponent& e, const Rat& c = 1) {
        SparsePoly p(f, e.size());
        p.add_term(e, c);
        return p;
    }

    Flavor flavor() const { return flavor_; }
    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    Rat coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const Exponent& e, const Rat& c) {
        if (e.size() != nvars_) throw dimension_error("term has wrong variable count");
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // Largest term in the grlex order; usage_error on the zero polynomial.
    const std::pair<const Exponent, Rat>& leading_term() const {
        if (terms_.empty()) throw usage_error("zero polynomial has no leading term");
        return *terms_.rbegin();
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e.total_degree());
        return d;
    }

    // Largest exponent of one variable over all terms; -1 for the zero polynomial.
    int degree_in(int var) const {
        if (var < 0 || var >= nvars_) throw dimension_error("variable index out of range");
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    SparsePoly operator-() const {
        SparsePoly r(flavor_, nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        require_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    SparsePoly& operator-=(const SparsePoly& o) {
        require_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }

    SparsePoly operator*(const Rat& s) const {
        SparsePoly r(flavor_, nvars_);
        if (s == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
        return r;
    }

    SparsePoly operator/(const Rat& s) const {
        if (s == 0) throw usage_error("division by zero scalar");
        Rat inv = Rat(1) / s;
        return *this * inv;
    }

    Rat evaluate(const std::vector<Rat>& point) const {
        if (static_cast<int>(point.size()) != nvars_)
            throw dimension_error("evaluation point has wrong length");
        Rat total = 0;
        for (const auto& [e, c] : terms_) {
            Rat t = c;
            for (int i = 0; i < nvars_; ++i)
                if (e[i] > 0) t *= rat_pow(point[i], static_cast<unsigned long>(e[i]));
            total += t;
        }
        return total;
    }

    bool operator==(const SparsePoly&) const = default;

private:
    void require_compatible(const SparsePoly& o) const {
        if (o.flavor_ != flavor_) throw usage_error("mixing ring and dual polynomials");
        if (o.nvars_ != nvars_) throw dimension_error("variable count mismatch");
    }

    Flavor flavor_;
    int nvars_;
    TermMap terms_;
};

namespace detail {

// Plain term convolution; flavor discipline is enforced by the callers.
inline SparsePoly raw_product(const SparsePoly& a, const SparsePoly& b) {
    if (a.flavor() != b.flavor()) throw usage_error("mixing ring and dual polynomials");
    if (a.nvars() != b.nvars()) throw dimension_error("variable count mismatch");
    SparsePoly r(a.flavor(), a.nvars());
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) r.add_term(ea + eb, ca * cb);
    return r;
}

}  // namespace detail

// Product in R. The dual side carries only the module structure here,
// so multiplying duals is rejected.
inline SparsePoly ring_mul(const SparsePoly& a, const SparsePoly& b) {
    if (a.flavor() != Flavor::Ring || b.flavor() != Flavor::Ring)
        throw usage_error("ring_mul is defined for ring polynomials only");
    return detail::raw_product(a, b);
}

inline SparsePoly ring_pow(const SparsePoly& a, int k) {
    if (a.flavor() != Flavor::Ring) throw usage_error("ring_pow is defined for ring polynomials only");
    if (k < 0) throw usage_error("negative power");
    SparsePoly r = SparsePoly::one(Flavor::Ring, a.nvars());
    for (int i = 0; i < k; ++i) r = detail::raw_product(r, a);
    return r;
}

// f acting on F. Contraction on monomials is x^a o y^b = y^{b-a} when
// b >= a componentwise and 0 otherwise; derivation multiplies in the
// falling factorials prod b_i (b_i - 1) ... (b_i - a_i + 1).
inline SparsePoly apply(const SparsePoly& f, const SparsePoly& F, Action act) {
    if (f.flavor() != Flavor::Ring || F.flavor() != Flavor::Dual)
        throw usage_error("apply expects a ring element acting on a dual element");
    if (f.nvars() != F.nvars()) throw dimension_error("variable count mismatch");
    SparsePoly out(Flavor::Dual, F.nvars());
    for (const auto& [alpha, cf] : f.terms()) {
        for (const auto& [beta, cF] : F.terms()) {
            auto gamma = beta.minus(alpha);
            if (!gamma) continue;
            Rat c = cf * cF;
            if (act == Action::Derivation) {
                Int m = 1;
                for (int i = 0; i < alpha.size(); ++i)
                    if (alpha[i] > 0) m *= falling_factorial(beta[i], alpha[i]);
                c *= Rat(m);
            }
            out.add_term(*gamma, c);
        }
    }
    return out;
}

// Diagonal change of basis between the two actions: ToDerivation scales
// the coefficient of y^b by b!, ToContraction divides by it. The two
// directions are mutually inverse, and for any ring element f
//   apply(f, action_rescale(F, ToDerivation), Contraction)
//     == action_rescale(apply(f, F, Derivation), ToDerivation).
inline SparsePoly action_rescale(const SparsePoly& F, Rescale dir) {
    if (F.flavor() != Flavor::Dual) throw usage_error("action_rescale expects a dual polynomial");
    SparsePoly out(Flavor::Dual, F.nvars());
    for (const auto& [e, c] : F.terms()) {
        Rat fac(exponent_factorial(e));
        out.add_term(e, dir == Rescale::ToDerivation ? c * fac : c / fac);
    }
    return out;
}

// Common omega-degree of all terms, or nullopt (zero polynomial included).
inline std::optional<long long> homogeneous_degree(const SparsePoly& p, const Weighting& w) {
    if (w.size() != p.nvars()) throw dimension_error("weighting length mismatch");
    if (p.is_zero()) return std::nullopt;
    std::optional<long long> d;
    for (const auto& [e, c] : p.terms()) {
        long long dd = e.weighted_degree(w);
        if (!d)
            d = dd;
        else if (*d != dd)
            return std::nullopt;
    }
    return d;
}

// Coefficient vector over an explicit monomial basis; every term of p
// must appear in the basis.
inline std::vector<Rat> coeffs_on(const SparsePoly& p, const std::vector<Exponent>& basis) {
    std::map<Exponent, int, GrlexLess> index;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) index.emplace(basis[i], i);
    std::vector<Rat> v(basis.size(), Rat(0));
    for (const auto& [e, c] : p.terms()) {
        auto it = index.find(e);
        if (it == index.end())
            throw std::logic_error("polynomial term outside the expected monomial basis");
        v[static_cast<std::size_t>(it->second)] = c;
    }
    return v;
}

inline SparsePoly normalized_leading_one(const SparsePoly& p) {
    if (p.is_zero()) throw usage_error("cannot normalize the zero polynomial");
    return p / p.leading_term().second;
}

}  // namespace macdual
