#pragma once

// G-admissible generator sequences {H_t} for one-dimensional graded
// Gorenstein quotients: <H_t> = (I + (z^t))^perp with z o H_t = H_{t-1},
// plus bounded divisibility probes (evidence for primality, never a
// verdict).

#include <optional>
#include <thread>
#include <vector>

#include "macdual/duality.hpp"

namespace macdual {

namespace detail {

// Minimal-generator count of the graded dual module W (socle dimension
// of the Artinian quotient): sum over degrees of
// dim W_j - dim sum_i x_i o W_{j + w_i}.
inline long long socle_dimension(const std::vector<std::vector<SparsePoly>>& W,
                                 const Weighting& omega, Action act) {
    long long total = 0;
    const long long top = static_cast<long long>(W.size()) - 1;
    for (long long j = 0; j <= top; ++j) {
        const auto& piece = W[static_cast<std::size_t>(j)];
        if (piece.empty()) continue;
        std::vector<SparsePoly> image;
        for (int i = 0; i < omega.size(); ++i) {
            long long jj = j + omega[i];
            if (jj > top) continue;
            for (const auto& w : W[static_cast<std::size_t>(jj)]) {
                SparsePoly im =
                    apply(SparsePoly::variable(Flavor::Ring, omega.size(), i), w, act);
                if (!im.is_zero()) image.push_back(std::move(im));
            }
        }
        std::vector<SparsePoly> both = piece;
        both.insert(both.end(), image.begin(), image.end());
        // dim piece - dim image-within-piece; image is contained in piece
        std::map<Exponent, int, GrlexLess> col_of;
        for (const auto& p : both)
            for (const auto& [e, c] : p.terms()) col_of.emplace(e, 0);
        int c = 0;
        for (auto& [e, idx] : col_of) idx = c++;
        auto rows_of = [&](const std::vector<SparsePoly>& ps) {
            std::vector<std::vector<Rat>> rows;
            for (const auto& p : ps) {
                std::vector<Rat> row(static_cast<std::size_t>(c), Rat(0));
                for (const auto& [e, coef] : p.terms())
                    row[static_cast<std::size_t>(col_of.at(e))] = coef;
                rows.push_back(std::move(row));
            }
            return rows;
        };
        total += rank(ExactMatrix::from_rows(rows_of(piece), c)) -
                 rank(ExactMatrix::from_rows(rows_of(image), c));
    }
    return total;
}

}  // namespace detail

// Single cyclic generator of (I + (z^t))^perp. The dual is computed
// degree by degree; the returned top-degree element is certified to
// generate the whole dual (closure check). Scalar normalization is the
// caller's business.
inline SparsePoly artinian_dual_generator(const GradedIdeal& I, const SparsePoly& z, int t,
                                          Action act) {
    if (t < 1) throw usage_error("truncation exponent must be >= 1");
    if (z.flavor() != Flavor::Ring) throw usage_error("z must be a ring element");
    if (z.nvars() != I.nvars()) throw dimension_error("variable count mismatch");
    auto dz = homogeneous_degree(z, I.omega());
    if (!dz || *dz < 1) throw usage_error("z must be homogeneous of positive degree");

    const GradedIdeal J = I.with_extra_generator(ring_pow(z, t));
    const long long window = I.omega().max_weight();

    long long s_star = -1;
    long long zero_run = 0;
    for (long long j = 0;; ++j) {
        if (j > max_degree_cap())
            throw degree_cap_error("I + (z^" + std::to_string(t) +
                                   ") does not look Artinian below the degree cap");
        if (hilbert_function(J, j) > 0) {
            s_star = j;
            zero_run = 0;
        } else if (++zero_run >= window && j >= window) {
            break;
        }
    }
    if (s_star < 0)
        throw not_gorenstein_error("the dual module of I + (z^t) is zero", 0);

    std::vector<std::vector<SparsePoly>> W;
    for (long long j = 0; j <= s_star; ++j) W.push_back(dual_component(J, j, act));

    auto fail = [&]() -> not_gorenstein_error {
        long long socle = detail::socle_dimension(W, I.omega(), act);
        return not_gorenstein_error(
            "dual of I + (z^" + std::to_string(t) + ") is not cyclic (socle dimension " +
                std::to_string(socle) + ")",
            socle);
    };

    if (W.back().size() != 1) throw fail();
    const SparsePoly& H = W.back().front();
    for (long long j = 0; j < s_star; ++j) {
        std::vector<SparsePoly> span;
        for (const Exponent& u : graded_basis(I.omega(), s_star - j)) {
            SparsePoly im = apply(SparsePoly::monomial(Flavor::Ring, u), H, act);
            if (!im.is_zero()) span.push_back(std::move(im));
        }
        if (!span_equal(span, W[static_cast<std::size_t>(j)])) throw fail();
    }
    return H;
}

struct GSequence {
    GradedIdeal ideal;
    SparsePoly z;
    Action action;
    std::vector<SparsePoly> H;  // H[t-1] is H_t
    long long socle_degree = 0;  // deg H_1

    int size() const { return static_cast<int>(H.size()); }
    const SparsePoly& at(int t) const {  // 1-based
        if (t < 1 || t > size()) throw usage_error("H index out of range");
        return H[static_cast<std::size_t>(t - 1)];
    }
};

// H_1 is normalized to leading coefficient 1; each later H_{t} is the
// unique scaling of the cyclic generator with z o H_t = H_{t-1}.
inline GSequence g_sequence(const GradedIdeal& I, const SparsePoly& z, int T, Action act) {
    if (T < 1) throw usage_error("sequence length must be >= 1");
    std::vector<SparsePoly> H;
    H.push_back(normalized_leading_one(artinian_dual_generator(I, z, 1, act)));
    if (!apply(z, H[0], act).is_zero())
        throw admissibility_error("z does not annihilate H_1");
    for (int t = 2; t <= T; ++t) {
        SparsePoly G = artinian_dual_generator(I, z, t, act);
        SparsePoly zG = apply(z, G, act);
        if (zG.is_zero())
            throw admissibility_error("z annihilates the generator at level " + std::to_string(t));
        const SparsePoly& prev = H.back();
        Rat c = zG.coeff(prev.leading_term().first) / prev.leading_term().second;
        if (c == 0 || zG != prev * c)
            throw admissibility_error("z o H_" + std::to_string(t) +
                                      " is not proportional to H_" + std::to_string(t - 1));
        H.push_back(G / c);
    }
    long long s = *homogeneous_degree(H[0], I.omega());
    return GSequence{I, z, act, std::move(H), s};
}

struct AdmissibilityLevel {
    int l;
    bool chain_condition;        // z o H_l = H_{l-1} (0 for l = 1)
    bool annihilator_condition;  // Ann(<H_l>) o H_{l+1} = <H_1>
};

struct AdmissibilityReport {
    std::vector<AdmissibilityLevel> levels;
    bool all_pass = true;
};

inline AdmissibilityReport verify_admissible(const GSequence& seq, int l_max) {
    if (l_max < 0) throw usage_error("l_max must be >= 0");
    if (seq.size() < l_max + 1)
        throw usage_error("sequence too short: need H up to level " + std::to_string(l_max + 1));
    const Weighting& w = seq.ideal.omega();
    AdmissibilityReport rep;
    const SparsePoly& H1 = seq.at(1);
    const long long deg_h1 = *homogeneous_degree(H1, w);
    for (int l = 1; l <= l_max; ++l) {
        AdmissibilityLevel lev{l, true, true};
        SparsePoly zh = apply(seq.z, seq.at(l), seq.action);
        lev.chain_condition = (l == 1) ? zh.is_zero() : (zh == seq.at(l - 1));

        const SparsePoly& Hl = seq.at(l);
        const SparsePoly& Hnext = seq.at(l + 1);
        const long long deg_next = *homogeneous_degree(Hnext, w);
        DualPresentation Wl({Hl}, seq.action, w);
        for (long long jj = 0; jj <= deg_next && lev.annihilator_condition; ++jj) {
            std::vector<SparsePoly> left;
            for (const auto& a : annihilator_component(Wl, deg_next - jj)) {
                SparsePoly im = apply(a, Hnext, seq.action);
                if (!im.is_zero()) left.push_back(std::move(im));
            }
            std::vector<SparsePoly> right;
            if (deg_h1 - jj >= 0)
                for (const Exponent& u : graded_basis(w, deg_h1 - jj)) {
                    SparsePoly im = apply(SparsePoly::monomial(Flavor::Ring, u), H1, seq.action);
                    if (!im.is_zero()) right.push_back(std::move(im));
                }
            if (!span_equal(left, right)) lev.annihilator_condition = false;
        }
        rep.all_pass = rep.all_pass && lev.chain_condition && lev.annihilator_condition;
        rep.levels.push_back(lev);
    }
    return rep;
}

struct DivisibilityWitness {
    SparsePoly factor;  // F with H_t = a o (F o H_r)
    int r;
};

// Searches r = t..r_max for homogeneous F with a o (F o H_r) = H_t.
// A missing witness is inconclusive; a found witness always has r >= t.
inline std::optional<DivisibilityWitness> divisibility_probe(const GSequence& seq,
                                                             const SparsePoly& a, int t,
                                                             int r_max) {
    if (a.flavor() != Flavor::Ring) throw usage_error("probe element must be a ring element");
    if (a.is_zero()) throw usage_error("probe element must be nonzero");
    if (a.nvars() != seq.ideal.nvars()) throw dimension_error("variable count mismatch");
    const Weighting& w = seq.ideal.omega();
    auto da = homogeneous_degree(a, w);
    if (!da) throw usage_error("probe element must be homogeneous");
    if (t < 1 || t > r_max || r_max > seq.size())
        throw usage_error("need 1 <= t <= r_max <= sequence length");
    if (in_ideal_component(seq.ideal, a))
        throw usage_error("probe element lies in the ideal");

    const long long deg_t = *homogeneous_degree(seq.at(t), w);
    auto target_basis = graded_basis(w, deg_t);
    const std::vector<Rat> rhs = coeffs_on(seq.at(t), target_basis);
    for (int r = t; r <= r_max; ++r) {
        const long long dF = *homogeneous_degree(seq.at(r), w) - *da - deg_t;
        if (dF < 0) continue;
        auto us = graded_basis(w, dF);
        if (us.empty()) continue;
        ExactMatrix A(static_cast<int>(target_basis.size()), static_cast<int>(us.size()));
        for (int c = 0; c < static_cast<int>(us.size()); ++c) {
            SparsePoly img = apply(a,
                                   apply(SparsePoly::monomial(Flavor::Ring, us[static_cast<std::size_t>(c)]),
                                         seq.at(r), seq.action),
                                   seq.action);
            auto col = coeffs_on(img, target_basis);
            for (int i = 0; i < static_cast<int>(target_basis.size()); ++i)
                A(i, c) = col[static_cast<std::size_t>(i)];
        }
        if (auto sol = solve(A, rhs)) {
            SparsePoly F(Flavor::Ring, seq.ideal.nvars());
            for (std::size_t c = 0; c < us.size(); ++c) F.add_term(us[c], (*sol)[c]);
            return DivisibilityWitness{std::move(F), r};
        }
    }
    return std::nullopt;
}

struct ProbeEntry {
    SparsePoly a;
    std::optional<DivisibilityWitness> witness;
};

struct ProbeReport {
    std::vector<ProbeEntry> entries;
    bool all_witnessed = true;
    int t = 1;
    int r_max = 1;
};

// Probes every monomial of total degree <= max_total_degree outside the
// ideal. Independent probes may run on several threads; the report
// order is by total degree, then grlex.
inline ProbeReport probe_all(const GSequence& seq, int max_total_degree, int t, int r_max,
                             int threads = 1) {
    std::vector<SparsePoly> as;
    const int n = seq.ideal.nvars();
    for (int d = 0; d <= max_total_degree; ++d)
        for (const Exponent& e : graded_basis(Weighting::standard(n), d)) {
            SparsePoly a = SparsePoly::monomial(Flavor::Ring, e);
            if (!in_ideal_component(seq.ideal, a)) as.push_back(std::move(a));
        }
    ProbeReport rep;
    rep.t = t;
    rep.r_max = r_max;
    rep.entries.resize(as.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            rep.entries[i] = ProbeEntry{as[i], divisibility_probe(seq, as[i], t, r_max)};
    };
    threads = std::max(1, std::min<int>(threads, static_cast<int>(as.size())));
    if (threads == 1) {
        work(0, as.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (as.size() + threads - 1) / threads;
        for (int k = 0; k < threads; ++k) {
            std::size_t b = static_cast<std::size_t>(k) * chunk;
            std::size_t e = std::min(as.size(), b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }
    for (const auto& entry : rep.entries)
        if (!entry.witness) rep.all_witnessed = false;
    return rep;
}

}  // namespace macdual
