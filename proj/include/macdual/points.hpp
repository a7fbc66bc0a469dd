#pragma once

// Zero-dimensional schemes in projective space (standard grading,
// derivation action): power-sum dual spaces, point recovery through
// commuting multiplication operators, the trace-form reducedness test,
// and the decomposition certificate
//   H_{r+2} = 1/(r+s+1)! * sum_i alpha_i / z(P_i) * L_i^{r+s+1}.

#include <optional>
#include <random>
#include <vector>

#include "macdual/gadmissible.hpp"

namespace macdual {

class ProjectivePoint {
public:
    explicit ProjectivePoint(std::vector<Rat> coords) : c_(std::move(coords)) {
        int first = -1;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) {
                first = static_cast<int>(i);
                break;
            }
        if (first < 0) throw usage_error("projective point must have a nonzero coordinate");
        Rat inv = Rat(1) / c_[static_cast<std::size_t>(first)];
        for (auto& x : c_) x *= inv;
    }

    int size() const { return static_cast<int>(c_.size()); }
    const Rat& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<Rat>& coords() const { return c_; }

    bool operator==(const ProjectivePoint&) const = default;

    friend bool operator<(const ProjectivePoint& a, const ProjectivePoint& b) {
        return a.c_ < b.c_;
    }

private:
    std::vector<Rat> c_;
};

// L = a_1 y_1 + ... + a_n y_n for P = (a_1, ..., a_n).
inline SparsePoly dual_linear_form(const ProjectivePoint& P) {
    SparsePoly L(Flavor::Dual, P.size());
    for (int i = 0; i < P.size(); ++i) L.add_term(Exponent::unit(P.size(), i), P[i]);
    return L;
}

inline SparsePoly dual_power(const SparsePoly& L, int j) {
    if (L.flavor() != Flavor::Dual) throw usage_error("dual_power expects a dual polynomial");
    if (j < 0) throw usage_error("negative power");
    SparsePoly r = SparsePoly::one(Flavor::Dual, L.nvars());
    for (int i = 0; i < j; ++i) r = detail::raw_product(r, L);
    return r;
}

// The spanning set {L_1^j, ..., L_r^j} of (I(X)^perp)_j.
inline std::vector<SparsePoly> power_sum_component(const std::vector<ProjectivePoint>& points,
                                                   int j) {
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::size_t b = a + 1; b < points.size(); ++b)
            if (points[a] == points[b]) throw usage_error("points must be pairwise distinct");
    std::vector<SparsePoly> out;
    for (const auto& P : points) out.push_back(dual_power(dual_linear_form(P), j));
    return out;
}

// Basis of I(X)_d as the kernel of the evaluation matrix.
inline std::vector<SparsePoly> vanishing_ideal_component(const std::vector<ProjectivePoint>& points,
                                                         int d, int nvars) {
    if (d < 0) throw usage_error("negative degree");
    auto cols = graded_basis(Weighting::standard(nvars), d);
    ExactMatrix m(static_cast<int>(points.size()), static_cast<int>(cols.size()));
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        const auto& P = points[static_cast<std::size_t>(i)];
        if (P.size() != nvars) throw dimension_error("point has wrong coordinate count");
        for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
            Rat v = 1;
            const Exponent& e = cols[static_cast<std::size_t>(c)];
            for (int k = 0; k < nvars; ++k)
                if (e[k] > 0) v *= rat_pow(P[k], static_cast<unsigned long>(e[k]));
            m(i, c) = v;
        }
    }
    std::vector<SparsePoly> out;
    for (const auto& v : kernel(m)) {
        SparsePoly p(Flavor::Ring, nvars);
        for (std::size_t c = 0; c < cols.size(); ++c) p.add_term(cols[c], v[c]);
        out.push_back(std::move(p));
    }
    return out;
}

// Multiplication operators M_i = (mult by z)^{-1} (mult by x_i) on A_s,
// where s is the socle degree and r = dim A_s the degree of the scheme.
struct CoordinateOperators {
    long long r = 0;
    long long s = 0;
    SparsePoly z;
    std::vector<Exponent> basis;        // monomial basis of A_s
    std::vector<ExactMatrix> var_ops;   // M_i per variable
    std::vector<QuotientPiece> pieces;  // degrees s .. max(2s, s+1)
    std::vector<ExactMatrix> z_steps;   // mult by z: A_{s+k} -> A_{s+k+1}
    ExactMatrix z_power;                // mult by z^s: A_s -> A_{2s}
    std::vector<long long> hf;
};

inline CoordinateOperators coordinate_operators(const GradedIdeal& I, const SparsePoly& z) {
    if (!I.omega().is_standard())
        throw usage_error("coordinate operators require the standard grading");
    if (z.flavor() != Flavor::Ring || z.nvars() != I.nvars())
        throw usage_error("z must be a ring element in the same variables");
    if (z.is_zero() || z.total_degree() != 1)
        throw bad_z_error("z must be a linear form");

    HVector hv = h_vector(I, max_degree_cap());
    if (!hv.conclusive)
        throw inconclusive_error("Hilbert function did not stabilize below the degree cap");
    CoordinateOperators ops;
    ops.r = hv.stable_value;
    ops.s = hv.socle_degree;
    ops.z = z;
    ops.hf = hv.hf;
    if (ops.r <= 0) throw usage_error("empty scheme: the Hilbert function stabilizes at 0");

    const long long s = ops.s;
    const long long top = std::max(2 * s, s + 1);
    for (long long j = s; j <= top; ++j) {
        QuotientPiece q = quotient_piece(I, j);
        if (q.dim() != ops.r)
            throw inconclusive_error(
                "graded piece at degree " + std::to_string(j) + " has dimension " +
                std::to_string(q.dim()) + ", expected " + std::to_string(ops.r) +
                " (is the ideal saturated?)");
        ops.pieces.push_back(std::move(q));
    }

    const int r = static_cast<int>(ops.r);
    auto mult_matrix = [&](const SparsePoly& f, long long from_idx) {
        const QuotientPiece& src = ops.pieces[static_cast<std::size_t>(from_idx)];
        const QuotientPiece& dst = ops.pieces[static_cast<std::size_t>(from_idx + 1)];
        ExactMatrix m(r, r);
        for (int c = 0; c < r; ++c) {
            SparsePoly prod = ring_mul(
                f, SparsePoly::monomial(Flavor::Ring, src.basis[static_cast<std::size_t>(c)]));
            auto col = dst.reduce(prod);
            for (int i = 0; i < r; ++i) m(i, c) = col[static_cast<std::size_t>(i)];
        }
        return m;
    };

    for (long long j = s; j < top; ++j) {
        ExactMatrix zj = mult_matrix(z, j - s);
        if (rank(zj) != r)
            throw bad_z_error("z is a zero divisor between degrees " + std::to_string(j) +
                              " and " + std::to_string(j + 1));
        ops.z_steps.push_back(std::move(zj));
    }

    ops.z_power = ExactMatrix::identity(r);
    for (long long k = 0; k < s; ++k)
        ops.z_power = ops.z_steps[static_cast<std::size_t>(k)] * ops.z_power;

    const ExactMatrix& zs = ops.z_steps.front();
    for (int i = 0; i < I.nvars(); ++i) {
        ExactMatrix xi = mult_matrix(SparsePoly::variable(Flavor::Ring, I.nvars(), i), 0);
        ExactMatrix mi(r, r);
        for (int c = 0; c < r; ++c) {
            std::vector<Rat> col(static_cast<std::size_t>(r));
            for (int k = 0; k < r; ++k) col[static_cast<std::size_t>(k)] = xi(k, c);
            auto sol = solve(zs, col);
            if (!sol) throw std::logic_error("invertible z step failed to solve");
            for (int k = 0; k < r; ++k) mi(k, c) = (*sol)[static_cast<std::size_t>(k)];
        }
        ops.var_ops.push_back(std::move(mi));
    }

    for (std::size_t a = 0; a < ops.var_ops.size(); ++a)
        for (std::size_t b = a + 1; b < ops.var_ops.size(); ++b)
            if (!(ops.var_ops[a] * ops.var_ops[b] == ops.var_ops[b] * ops.var_ops[a]))
                throw std::logic_error("multiplication operators do not commute");

    ops.basis = ops.pieces.front().basis;
    return ops;
}

inline ExactMatrix lambda_operator(const CoordinateOperators& ops, const std::vector<Rat>& c) {
    if (c.size() != ops.var_ops.size()) throw dimension_error("lambda coefficient count mismatch");
    ExactMatrix m(static_cast<int>(ops.r), static_cast<int>(ops.r));
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) m = m + ops.var_ops[i] * c[i];
    return m;
}

struct TraceForm {
    bool reduced = false;
    Rat det;
    ExactMatrix gram;
};

// Algebra product on A_s: a * b := (mult by z)^{-s} (a b in A_{2s}).
// The trace form of that algebra is nondegenerate exactly when the
// scheme is reduced (characteristic zero).
inline TraceForm trace_reduced_test(const CoordinateOperators& ops) {
    const int r = static_cast<int>(ops.r);
    const QuotientPiece& top = ops.pieces[static_cast<std::size_t>(ops.s)];  // degree 2s
    std::vector<ExactMatrix> regular;
    for (int u = 0; u < r; ++u) {
        ExactMatrix op(r, r);
        for (int v = 0; v < r; ++v) {
            Exponent prod = ops.basis[static_cast<std::size_t>(u)] + ops.basis[static_cast<std::size_t>(v)];
            auto w = top.reduce(SparsePoly::monomial(Flavor::Ring, prod));
            auto sol = solve(ops.z_power, w);
            if (!sol) throw std::logic_error("invertible z power failed to solve");
            for (int i = 0; i < r; ++i) op(i, v) = (*sol)[static_cast<std::size_t>(i)];
        }
        regular.push_back(std::move(op));
    }
    TraceForm out;
    out.gram = ExactMatrix(r, r);
    for (int u = 0; u < r; ++u)
        for (int v = u; v < r; ++v) {
            Rat t = (regular[static_cast<std::size_t>(u)] * regular[static_cast<std::size_t>(v)]).trace();
            out.gram(u, v) = t;
            out.gram(v, u) = t;
        }
    out.det = det(out.gram);
    out.reduced = out.det != 0;
    return out;
}

inline TraceForm trace_reduced_test(const GradedIdeal& I, const SparsePoly& z) {
    return trace_reduced_test(coordinate_operators(I, z));
}

struct RecoveredPoints {
    std::vector<ProjectivePoint> points;  // sorted; possibly partial
    bool complete = false;
    bool rational = true;
    int attempts_used = 0;
    UniPoly min_poly;
    bool minpoly_squarefree = false;
};

// Random integer combinations lambda = sum c_i x_i until the minimal
// polynomial of M_lambda has full degree r; eigenvalues of the M_i on
// the shared eigenvectors are the point coordinates. Irrational
// eigenvalues yield a partial result with rational = false.
inline RecoveredPoints recover_points(const CoordinateOperators& ops, int max_attempts,
                                      unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(-9, 9);
    RecoveredPoints out;
    const int n = static_cast<int>(ops.var_ops.size());
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        out.attempts_used = attempt;
        std::vector<Rat> c(static_cast<std::size_t>(n));
        bool nonzero = false;
        for (auto& x : c) {
            x = dist(rng);
            if (x != 0) nonzero = true;
        }
        if (!nonzero) continue;
        ExactMatrix ml = lambda_operator(ops, c);
        UniPoly p = minimal_polynomial(ml);
        if (p.degree() < static_cast<int>(ops.r)) continue;  // non-separating lambda
        out.min_poly = p;
        out.minpoly_squarefree = squarefree(p);
        auto roots = rational_roots(p);
        for (const Rat& rho : roots) {
            ExactMatrix shifted = ml - ExactMatrix::identity(static_cast<int>(ops.r)) * rho;
            auto null_basis = kernel(shifted);
            if (null_basis.size() != 1)
                throw std::logic_error("eigenspace of a separating lambda is not a line");
            const auto& v = null_basis.front();
            int k = -1;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] != 0) {
                    k = static_cast<int>(i);
                    break;
                }
            std::vector<Rat> coords;
            for (int i = 0; i < n; ++i) {
                auto w = ops.var_ops[static_cast<std::size_t>(i)].mul_vec(v);
                Rat a = w[static_cast<std::size_t>(k)] / v[static_cast<std::size_t>(k)];
                for (std::size_t q = 0; q < v.size(); ++q)
                    if (w[q] != a * v[q])
                        throw std::logic_error("eigenvector is not shared by the operators");
                coords.push_back(a);
            }
            out.points.emplace_back(std::move(coords));
        }
        std::sort(out.points.begin(), out.points.end());
        out.rational = static_cast<int>(roots.size()) == p.degree();
        out.complete = out.rational;
        return out;
    }
    return out;  // no separating lambda found within the attempt budget
}

struct WaringCheck {
    bool feasible = false;
    bool unique = false;
    std::vector<Rat> coefficients;  // c_i with H = sum c_i L_i^deg(H)
};

// Checks whether H is a combination of the deg(H)-th powers of the dual
// linear forms of the given points, and returns the coefficients.
inline WaringCheck waring_verify(const SparsePoly& H, const std::vector<ProjectivePoint>& points) {
    if (H.flavor() != Flavor::Dual) throw usage_error("waring_verify expects a dual polynomial");
    if (H.is_zero()) throw usage_error("waring_verify expects a nonzero polynomial");
    const Weighting std_w = Weighting::standard(H.nvars());
    auto deg = homogeneous_degree(H, std_w);
    if (!deg) throw usage_error("waring_verify expects a homogeneous polynomial");
    auto powers = power_sum_component(points, static_cast<int>(*deg));
    auto cols = graded_basis(std_w, *deg);
    ExactMatrix A(static_cast<int>(cols.size()), static_cast<int>(powers.size()));
    for (int c = 0; c < static_cast<int>(powers.size()); ++c) {
        auto col = coeffs_on(powers[static_cast<std::size_t>(c)], cols);
        for (int i = 0; i < static_cast<int>(cols.size()); ++i)
            A(i, c) = col[static_cast<std::size_t>(i)];
    }
    WaringCheck out;
    auto sol = solve(A, coeffs_on(H, cols));
    if (!sol) return out;
    out.feasible = true;
    out.coefficients = *sol;
    out.unique = rank(A) == static_cast<int>(powers.size());
    return out;
}

struct ReducednessCertificate {
    bool reduced = false;
    long long r = 0;
    long long s = 0;
    SparsePoly H;  // H_{r+2}, leading coefficient 1
    std::optional<std::vector<ProjectivePoint>> points;
    std::optional<std::vector<Rat>> alphas;
    Rat trace_det;
    bool minpoly_squarefree = false;
    int nonsquarefree_lambdas = 0;
    bool points_rational = true;
    std::vector<long long> hf;

    ReducednessCertificate() : H(Flavor::Dual, 1) {}
};

// Full pipeline of the reducedness test for a zero-dimensional
// Gorenstein scheme: r and s from the Hilbert function, H_{r+2} by the
// derivation-action dual, the trace-form verdict, and on success the
// points with the exact decomposition coefficients alpha_i.
inline ReducednessCertificate reducedness_certificate(const GradedIdeal& I, const SparsePoly& z,
                                                      unsigned seed = 12345,
                                                      int max_attempts = 8) {
    CoordinateOperators ops = coordinate_operators(I, z);
    ReducednessCertificate cert;
    cert.r = ops.r;
    cert.s = ops.s;
    cert.hf = ops.hf;
    cert.H = normalized_leading_one(
        artinian_dual_generator(I, z, static_cast<int>(ops.r) + 2, Action::Derivation));

    TraceForm tf = trace_reduced_test(ops);
    cert.trace_det = tf.det;
    cert.reduced = tf.reduced;

    std::mt19937 rng(seed);
    if (!tf.reduced) {
        std::uniform_int_distribution<int> dist(-9, 9);
        const int n = static_cast<int>(ops.var_ops.size());
        int samples = 0;
        bool any_squarefree = false;
        while (samples < 3) {
            std::vector<Rat> c(static_cast<std::size_t>(n));
            bool nonzero = false;
            for (auto& x : c) {
                x = dist(rng);
                if (x != 0) nonzero = true;
            }
            if (!nonzero) continue;
            ++samples;
            UniPoly p = minimal_polynomial(lambda_operator(ops, c));
            if (squarefree(p))
                any_squarefree = true;
            else
                ++cert.nonsquarefree_lambdas;
        }
        cert.minpoly_squarefree = any_squarefree;
        return cert;
    }

    RecoveredPoints rec = recover_points(ops, max_attempts, rng());
    cert.minpoly_squarefree = rec.minpoly_squarefree;
    if (!rec.complete || !rec.rational) {
        cert.points_rational = false;
        if (!rec.points.empty()) cert.points = rec.points;
        return cert;
    }

    const int D = static_cast<int>(ops.r + ops.s + 1);
    WaringCheck wc = waring_verify(cert.H, rec.points);
    if (!wc.feasible || !wc.unique)
        throw inconclusive_error(
            "decomposition over the recovered points failed (is the ideal saturated?)");
    std::vector<Rat> alphas;
    Rat dfac{factorial(static_cast<unsigned long>(D))};
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
        Rat zi = ops.z.evaluate(rec.points[i].coords());
        if (zi == 0) throw bad_z_error("z vanishes at a recovered point");
        Rat a = wc.coefficients[i] * dfac * zi;
        if (a == 0)
            throw inconclusive_error("vanishing decomposition coefficient (alpha must be nonzero)");
        alphas.push_back(a);
    }
    // re-expansion must reproduce H exactly
    SparsePoly expansion(Flavor::Dual, cert.H.nvars());
    for (std::size_t i = 0; i < rec.points.size(); ++i) {
        Rat zi = ops.z.evaluate(rec.points[i].coords());
        SparsePoly term =
            dual_power(dual_linear_form(rec.points[i]), D) * (alphas[i] / (zi * dfac));
        expansion += term;
    }
    if (!(expansion == cert.H)) throw std::logic_error("decomposition identity failed to verify");
    cert.points = std::move(rec.points);
    cert.alphas = std::move(alphas);
    return cert;
}

}  // namespace macdual
