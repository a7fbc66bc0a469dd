#pragma once

// Numerical semigroups <a1 < ... < an> with gcd 1: membership, the
// Frobenius number, the dual generators L_{w,j} (sum of all monomials
// of weight j) of the associated monomial-curve ideal, binomial
// spanning sets for that ideal, and the truncated duals of Cor-style
// quotients I + (x1^t).

#include <numeric>
#include <vector>

#include "macdual/poly.hpp"

namespace macdual {

class NumericalSemigroup {
public:
    explicit NumericalSemigroup(std::vector<int> generators)
        : gens_(std::move(generators)), omega_(validate(gens_)) {
        build_membership();
    }

    int nvars() const { return static_cast<int>(gens_.size()); }
    const std::vector<int>& generators() const { return gens_; }
    const Weighting& weighting() const { return omega_; }

    // Largest non-member, -1 when the semigroup is all of N.
    long long frobenius() const { return frobenius_; }

    bool contains(long long j) const {
        if (j < 0) return false;
        if (j < static_cast<long long>(member_.size())) return member_[static_cast<std::size_t>(j)] != 0;
        return true;
    }

    // L_{w,j}: the sum of all dual monomials of weight j (zero when
    // j is not in the semigroup).
    SparsePoly l_form(long long j) const {
        SparsePoly p(Flavor::Dual, nvars());
        for (const Exponent& e : monomials_of_weight(omega_, j, nvars())) p.add_term(e, 1);
        return p;
    }

    // Binomials x^{K0} - x^{K} pairing the first monomial of each weight
    // with every other one; a spanning set for the toric ideal in all
    // weights <= degree_bound (not claimed minimal).
    std::vector<SparsePoly> toric_relations(long long degree_bound) const {
        std::vector<SparsePoly> out;
        for (long long j = 0; j <= degree_bound; ++j) {
            auto mons = monomials_of_weight(omega_, j, nvars());
            for (std::size_t k = 1; k < mons.size(); ++k) {
                SparsePoly b(Flavor::Ring, nvars());
                b.add_term(mons[0], 1);
                b.add_term(mons[k], -1);
                out.push_back(std::move(b));
            }
        }
        return out;
    }

    struct DualGenerator {
        long long j;
        SparsePoly form;
        bool minimal;
    };

    // Generators of (I + (x1^t))^perp: the L_{w,j} with j in S and
    // j - t*a1 not in S (equivalently deg_{y1} L_{w,j} <= t-1). An
    // entry is minimal iff no j + a_i is itself an admissible index.
    std::vector<DualGenerator> truncated_dual_generators(int t) const {
        if (t < 1) throw usage_error("truncation exponent must be >= 1");
        std::vector<DualGenerator> out;
        const long long jmax = frobenius_ + static_cast<long long>(t) * gens_[0];
        for (long long j = 0; j <= jmax; ++j) {
            if (!admissible(j, t)) continue;
            bool minimal = true;
            for (int a : gens_)
                if (admissible(j + a, t)) {
                    minimal = false;
                    break;
                }
            out.push_back({j, l_form(j), minimal});
        }
        return out;
    }

    bool admissible(long long j, int t) const {
        return contains(j) && !contains(j - static_cast<long long>(t) * gens_[0]);
    }

private:
    static Weighting validate(const std::vector<int>& g) {
        if (g.empty()) throw invalid_semigroup_error("no generators given");
        long long gcd_all = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] < 1) throw invalid_semigroup_error("generators must be positive");
            if (i > 0 && g[i] <= g[i - 1])
                throw invalid_semigroup_error("generators must be strictly increasing");
            gcd_all = std::gcd(gcd_all, static_cast<long long>(g[i]));
        }
        if (gcd_all != 1) throw invalid_semigroup_error("generators must have gcd 1");
        return Weighting(g);
    }

    void build_membership() {
        const int a1 = gens_[0];
        member_.assign(1, 1);
        if (a1 == 1) {
            frobenius_ = -1;
            return;
        }
        long long last_gap = 0;
        int run = 1;  // consecutive members ending at the current j
        // Once a1 consecutive members appear, everything beyond is a member.
        const long long hard_stop =
            static_cast<long long>(a1) * gens_.back() + a1;  // > Frobenius + a1 always
        for (long long j = 1; j <= hard_stop; ++j) {
            bool in = false;
            for (int a : gens_) {
                if (j - a >= 0 && member_[static_cast<std::size_t>(j - a)]) {
                    in = true;
                    break;
                }
            }
            member_.push_back(in ? 1 : 0);
            if (in) {
                if (++run >= a1) {
                    frobenius_ = last_gap;
                    return;
                }
            } else {
                run = 0;
                last_gap = j;
            }
        }
        throw std::logic_error("Frobenius scan failed to terminate");
    }

    std::vector<int> gens_;
    Weighting omega_;
    std::vector<char> member_;
    long long frobenius_ = -1;
};

}  // namespace macdual
