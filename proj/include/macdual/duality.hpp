#pragma once

// The graded duality engine. For an omega-homogeneous ideal I the dual
// component at degree j is the kernel of the pairing matrix whose rows
// are the monomial multiples of the generators in degree j and whose
// columns are the dual monomials of degree j. Under the derivation
// action the pairing picks up the factor K! on the column for y^K.

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "macdual/linalg.hpp"
#include "macdual/poly.hpp"

namespace macdual {

class GradedIdeal {
public:
    GradedIdeal(std::vector<SparsePoly> generators, Weighting omega)
        : omega_(std::move(omega)) {
        for (auto& g : generators) {
            if (g.is_zero()) continue;
            if (g.flavor() != Flavor::Ring)
                throw invalid_ideal_error("ideal generators must be ring polynomials");
            if (g.nvars() != omega_.size())
                throw invalid_ideal_error("generator variable count does not match the weighting");
            auto d = homogeneous_degree(g, omega_);
            if (!d)
                throw invalid_ideal_error("generator is not homogeneous for the weighting: " +
                                          std::to_string(g.nvars()) + " variables");
            gens_.push_back(std::move(g));
            degrees_.push_back(*d);
        }
    }

    const Weighting& omega() const { return omega_; }
    int nvars() const { return omega_.size(); }
    const std::vector<SparsePoly>& generators() const { return gens_; }
    long long generator_degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }

    GradedIdeal with_extra_generator(const SparsePoly& g) const {
        auto gens = gens_;
        gens.push_back(g);
        return GradedIdeal(std::move(gens), omega_);
    }

private:
    Weighting omega_;
    std::vector<SparsePoly> gens_;
    std::vector<long long> degrees_;
};

struct DualPresentation {
    DualPresentation(std::vector<SparsePoly> gens, Action act, Weighting w)
        : generators(std::move(gens)), action(act), omega(std::move(w)) {
        for (const auto& g : generators) {
            if (g.is_zero()) throw usage_error("dual presentation generators must be nonzero");
            if (g.flavor() != Flavor::Dual)
                throw usage_error("dual presentation generators must be dual polynomials");
            if (g.nvars() != omega.size())
                throw dimension_error("generator variable count does not match the weighting");
        }
    }

    std::vector<SparsePoly> generators;
    Action action;
    Weighting omega;
};

namespace detail {

// Rows spanning I_{omega,j}: every monomial multiple u*g with
// deg(u) + deg(g) == j, as coefficient vectors over `cols`.
inline std::vector<std::vector<Rat>> ideal_piece_rows(const GradedIdeal& I, long long j,
                                                      const std::vector<Exponent>& cols) {
    std::vector<std::vector<Rat>> rows;
    const int n = I.nvars();
    for (int gi = 0; gi < static_cast<int>(I.generators().size()); ++gi) {
        long long d = I.generator_degree(gi);
        if (d > j) continue;
        for (const Exponent& u : monomials_of_weight(I.omega(), j - d, n)) {
            SparsePoly p = detail::raw_product(SparsePoly::monomial(Flavor::Ring, u),
                                               I.generators()[static_cast<std::size_t>(gi)]);
            rows.push_back(coeffs_on(p, cols));
        }
    }
    return rows;
}

}  // namespace detail

// Basis of I_{omega,j} in reduced echelon form, as polynomials.
inline std::vector<SparsePoly> ideal_component(const GradedIdeal& I, long long j) {
    if (j < 0) throw usage_error("negative degree");
    auto cols = graded_basis(I.omega(), j);
    if (cols.empty()) return {};
    auto rows = detail::ideal_piece_rows(I, j, cols);
    Echelon e = reduced_echelon(ExactMatrix::from_rows(rows, static_cast<int>(cols.size())));
    std::vector<SparsePoly> out;
    for (int k = 0; k < e.rank; ++k) {
        SparsePoly p(Flavor::Ring, I.nvars());
        for (int c = 0; c < static_cast<int>(cols.size()); ++c)
            p.add_term(cols[static_cast<std::size_t>(c)], e.mat(k, c));
        out.push_back(std::move(p));
    }
    return out;
}

// Is a homogeneous element contained in I at its own degree?
inline bool in_ideal_component(const GradedIdeal& I, const SparsePoly& a) {
    if (a.is_zero()) return true;
    auto d = homogeneous_degree(a, I.omega());
    if (!d) throw usage_error("ideal membership test requires a homogeneous element");
    auto cols = graded_basis(I.omega(), *d);
    auto rows = detail::ideal_piece_rows(I, *d, cols);
    int r0 = rank(ExactMatrix::from_rows(rows, static_cast<int>(cols.size())));
    rows.push_back(coeffs_on(a, cols));
    int r1 = rank(ExactMatrix::from_rows(rows, static_cast<int>(cols.size())));
    return r0 == r1;
}

// Basis of the dual component I^{perp}_{omega,j} under the given action.
inline std::vector<SparsePoly> dual_component(const GradedIdeal& I, long long j, Action act) {
    if (j < 0) throw usage_error("negative degree");
    auto cols = graded_basis(I.omega(), j);
    if (cols.empty()) return {};
    auto rows = detail::ideal_piece_rows(I, j, cols);
    if (act == Action::Derivation)
        for (auto& row : rows)
            for (std::size_t c = 0; c < cols.size(); ++c) row[c] *= Rat(exponent_factorial(cols[c]));
    auto null_basis = kernel(ExactMatrix::from_rows(rows, static_cast<int>(cols.size())));
    std::vector<SparsePoly> out;
    for (const auto& v : null_basis) {
        SparsePoly p(Flavor::Dual, I.nvars());
        for (std::size_t c = 0; c < cols.size(); ++c) p.add_term(cols[c], v[c]);
        out.push_back(std::move(p));
    }
    return out;
}

inline long long hilbert_function(const GradedIdeal& I, long long j) {
    if (j < 0) throw usage_error("negative degree");
    auto cols = graded_basis(I.omega(), j);
    if (cols.empty()) return 0;
    auto rows = detail::ideal_piece_rows(I, j, cols);
    return static_cast<long long>(cols.size()) -
           rank(ExactMatrix::from_rows(rows, static_cast<int>(cols.size())));
}

struct HVector {
    std::vector<long long> hf;  // HF(0..j_stop)
    std::vector<long long> h;   // h-vector
    long long socle_degree = -1;
    long long stable_value = 0;
    bool conclusive = false;
};

// Scans HF(0), HF(1), ... and declares stabilization at the first pair
// of consecutive equal values (valid for the one-dimensional CM
// quotients this library targets). When the stable value is 0, the
// quotient is Artinian and the h-vector is its Hilbert function.
inline HVector h_vector(const GradedIdeal& I, long long j_max) {
    HVector out;
    for (long long j = 0; j <= j_max; ++j) {
        out.hf.push_back(hilbert_function(I, j));
        if (j >= 1 && out.hf[static_cast<std::size_t>(j)] == out.hf[static_cast<std::size_t>(j - 1)]) {
            out.conclusive = true;
            out.stable_value = out.hf.back();
            if (out.stable_value == 0) {
                long long last = -1;
                for (std::size_t t = 0; t < out.hf.size(); ++t)
                    if (out.hf[t] != 0) last = static_cast<long long>(t);
                out.socle_degree = last;
                for (long long t = 0; t <= last; ++t)
                    out.h.push_back(out.hf[static_cast<std::size_t>(t)]);
            } else {
                std::vector<long long> diff;
                diff.push_back(out.hf[0]);
                for (long long t = 1; t < j; ++t)
                    diff.push_back(out.hf[static_cast<std::size_t>(t)] -
                                   out.hf[static_cast<std::size_t>(t - 1)]);
                long long last = -1;
                for (std::size_t t = 0; t < diff.size(); ++t)
                    if (diff[t] != 0) last = static_cast<long long>(t);
                out.socle_degree = last;
                for (long long t = 0; t <= last; ++t)
                    out.h.push_back(diff[static_cast<std::size_t>(t)]);
            }
            return out;
        }
    }
    return out;  // inconclusive: hf carries the observed values
}

// Basis of Ann(W)_{omega,d} = { g in R_{omega,d} : g o F_i = 0 for all i }.
inline std::vector<SparsePoly> annihilator_component(const DualPresentation& W, long long d) {
    if (d < 0) throw usage_error("negative degree");
    auto cols = graded_basis(W.omega, d);
    if (cols.empty()) return {};
    const int n = W.omega.size();
    std::vector<std::vector<SparsePoly>> images;
    images.reserve(cols.size());
    for (const Exponent& u : cols) {
        std::vector<SparsePoly> per_gen;
        for (const auto& F : W.generators)
            per_gen.push_back(apply(SparsePoly::monomial(Flavor::Ring, u), F, W.action));
        images.push_back(std::move(per_gen));
    }
    // equations: for every generator and every dual monomial in the
    // union of supports, the combination must cancel
    std::vector<std::vector<Rat>> rows;
    for (std::size_t gi = 0; gi < W.generators.size(); ++gi) {
        std::map<Exponent, std::vector<Rat>, GrlexLess> eq;
        for (std::size_t ui = 0; ui < cols.size(); ++ui) {
            for (const auto& [beta, c] : images[ui][gi].terms()) {
                auto it = eq.emplace(beta, std::vector<Rat>(cols.size(), Rat(0))).first;
                it->second[ui] = c;
            }
        }
        for (auto& [beta, row] : eq) rows.push_back(std::move(row));
    }
    auto null_basis = kernel(ExactMatrix::from_rows(rows, static_cast<int>(cols.size())));
    std::vector<SparsePoly> out;
    for (const auto& v : null_basis) {
        SparsePoly p(Flavor::Ring, n);
        for (std::size_t c = 0; c < cols.size(); ++c) p.add_term(cols[c], v[c]);
        out.push_back(std::move(p));
    }
    return out;
}

struct MembershipWitness {
    // (generator index, multiplier f); G = sum of f o F_index
    std::vector<std::pair<int, SparsePoly>> expansion;
};

// Expresses a homogeneous G as sum f_i o F_i with the f_i supported on
// the finite spanning monomials, or reports exact non-membership.
inline std::optional<MembershipWitness> module_membership(const SparsePoly& G,
                                                          const DualPresentation& W) {
    if (G.flavor() != Flavor::Dual) throw usage_error("module membership expects a dual element");
    if (G.nvars() != W.omega.size()) throw dimension_error("variable count mismatch");
    if (G.is_zero()) return MembershipWitness{};
    auto degG = homogeneous_degree(G, W.omega);
    if (!degG) throw usage_error("module membership expects a homogeneous element");

    struct Unknown {
        int gen;
        Exponent u;
    };
    std::vector<Unknown> unknowns;
    std::vector<SparsePoly> columns;
    const int n = W.omega.size();
    for (int gi = 0; gi < static_cast<int>(W.generators.size()); ++gi) {
        const SparsePoly& F = W.generators[static_cast<std::size_t>(gi)];
        std::vector<Exponent> us;
        if (auto dF = homogeneous_degree(F, W.omega)) {
            long long d = *dF - *degG;
            if (d < 0) continue;
            us = graded_basis(W.omega, d);
        } else {
            // inhomogeneous generator: every u below the support envelope
            Exponent env(n);
            for (const auto& [e, c] : F.terms())
                for (int i = 0; i < n; ++i) env[i] = std::max(env[i], e[i]);
            Exponent cur(n);
            auto rec = [&](auto&& self, int pos) -> void {
                if (pos == n) {
                    us.push_back(cur);
                    return;
                }
                for (int k = 0; k <= env[pos]; ++k) {
                    cur[pos] = k;
                    self(self, pos + 1);
                }
                cur[pos] = 0;
            };
            rec(rec, 0);
        }
        for (const Exponent& u : us) {
            SparsePoly img = apply(SparsePoly::monomial(Flavor::Ring, u), F, W.action);
            if (img.is_zero()) continue;
            unknowns.push_back({gi, u});
            columns.push_back(std::move(img));
        }
    }

    // row index set: union of supports
    std::map<Exponent, int, GrlexLess> row_of;
    auto note = [&](const SparsePoly& p) {
        for (const auto& [e, c] : p.terms()) row_of.emplace(e, 0);
    };
    for (const auto& p : columns) note(p);
    note(G);
    int r = 0;
    for (auto& [e, idx] : row_of) idx = r++;

    ExactMatrix A(r, static_cast<int>(columns.size()));
    for (int cidx = 0; cidx < static_cast<int>(columns.size()); ++cidx)
        for (const auto& [e, c] : columns[static_cast<std::size_t>(cidx)].terms())
            A(row_of.at(e), cidx) = c;
    std::vector<Rat> b(static_cast<std::size_t>(r), Rat(0));
    for (const auto& [e, c] : G.terms()) b[static_cast<std::size_t>(row_of.at(e))] = c;

    auto sol = solve(A, b);
    if (!sol) return std::nullopt;
    std::map<int, SparsePoly> per_gen;
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
        if ((*sol)[k] == 0) continue;
        auto it = per_gen.emplace(unknowns[k].gen, SparsePoly::zero(Flavor::Ring, n)).first;
        it->second.add_term(unknowns[k].u, (*sol)[k]);
    }
    MembershipWitness w;
    for (auto& [gi, f] : per_gen) w.expansion.emplace_back(gi, std::move(f));
    return w;
}

// Matrix whose rows are the coefficient vectors of `polys` over the
// union of their supports (used for span comparisons).
inline bool span_equal(const std::vector<SparsePoly>& A, const std::vector<SparsePoly>& B) {
    std::map<Exponent, int, GrlexLess> col_of;
    auto note = [&](const std::vector<SparsePoly>& ps) {
        for (const auto& p : ps)
            for (const auto& [e, c] : p.terms()) col_of.emplace(e, 0);
    };
    note(A);
    note(B);
    if (col_of.empty()) {
        auto all_zero = [](const std::vector<SparsePoly>& ps) {
            return std::all_of(ps.begin(), ps.end(), [](const SparsePoly& p) { return p.is_zero(); });
        };
        return all_zero(A) && all_zero(B);
    }
    int c = 0;
    for (auto& [e, idx] : col_of) idx = c++;
    auto as_rows = [&](const std::vector<SparsePoly>& ps) {
        std::vector<std::vector<Rat>> rows;
        for (const auto& p : ps) {
            std::vector<Rat> row(static_cast<std::size_t>(c), Rat(0));
            for (const auto& [e, coef] : p.terms()) row[static_cast<std::size_t>(col_of.at(e))] = coef;
            rows.push_back(std::move(row));
        }
        return rows;
    };
    auto ra = as_rows(A), rb = as_rows(B);
    int dim_a = rank(ExactMatrix::from_rows(ra, c));
    int dim_b = rank(ExactMatrix::from_rows(rb, c));
    if (dim_a != dim_b) return false;
    auto rc = ra;
    rc.insert(rc.end(), rb.begin(), rb.end());
    return rank(ExactMatrix::from_rows(rc, c)) == dim_a;
}

// Quotient data for one graded piece: the reduced echelon form of the
// ideal rows plus the complementary monomial basis of A_j.
struct QuotientPiece {
    std::vector<Exponent> cols;
    Echelon ech;
    std::vector<int> free_cols;
    std::vector<Exponent> basis;

    int dim() const { return static_cast<int>(free_cols.size()); }

    // coordinates of p modulo the ideal piece, over `basis`
    std::vector<Rat> reduce(const SparsePoly& p) const {
        std::vector<Rat> v = coeffs_on(p, cols);
        for (int k = 0; k < ech.rank; ++k) {
            int pc = ech.pivot_cols[static_cast<std::size_t>(k)];
            Rat f = v[static_cast<std::size_t>(pc)];
            if (f == 0) continue;
            for (int j = pc; j < static_cast<int>(cols.size()); ++j)
                v[static_cast<std::size_t>(j)] -= f * ech.mat(k, j);
        }
        std::vector<Rat> out;
        out.reserve(free_cols.size());
        for (int fc : free_cols) out.push_back(v[static_cast<std::size_t>(fc)]);
        return out;
    }
};

inline QuotientPiece quotient_piece(const GradedIdeal& I, long long j) {
    QuotientPiece q;
    q.cols = graded_basis(I.omega(), j);
    auto rows = detail::ideal_piece_rows(I, j, q.cols);
    q.ech = reduced_echelon(ExactMatrix::from_rows(rows, static_cast<int>(q.cols.size())));
    std::vector<bool> is_pivot(q.cols.size(), false);
    for (int c : q.ech.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int c = 0; c < static_cast<int>(q.cols.size()); ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) {
            q.free_cols.push_back(c);
            q.basis.push_back(q.cols[static_cast<std::size_t>(c)]);
        }
    return q;
}

}  // namespace macdual
