#pragma once

// Dense exact linear algebra over the rationals. Forward elimination is
// fraction-free (Bareiss) with first-nonzero pivoting, so kernels, ranks
// and determinants come out bit-for-bit reproducible.

#include <optional>
#include <string>
#include <vector>

#include "macdual/rational.hpp"
#include "macdual/errors.hpp"

namespace macdual {

class ExactMatrix {
public:
    ExactMatrix() : rows_(0), cols_(0) {}
    ExactMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Rat(0)) {
        if (rows < 0 || cols < 0) throw dimension_error("negative matrix dimension");
    }

    static ExactMatrix identity(int n) {
        ExactMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static ExactMatrix from_rows(const std::vector<std::vector<Rat>>& rows, int cols) {
        ExactMatrix m(static_cast<int>(rows.size()), cols);
        for (int i = 0; i < m.rows(); ++i) {
            if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != cols)
                throw dimension_error("ragged row list");
            for (int j = 0; j < cols; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rat& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    ExactMatrix operator*(const ExactMatrix& o) const {
        if (cols_ != o.rows_) throw dimension_error("matrix product shape mismatch");
        ExactMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rat& aik = (*this)(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }

    ExactMatrix operator+(const ExactMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_error("matrix sum shape mismatch");
        ExactMatrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    ExactMatrix operator-(const ExactMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_error("matrix diff shape mismatch");
        ExactMatrix r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    ExactMatrix operator*(const Rat& s) const {
        ExactMatrix r = *this;
        for (auto& x : r.a_) x *= s;
        return r;
    }

    std::vector<Rat> mul_vec(const std::vector<Rat>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw dimension_error("matrix-vector shape mismatch");
        std::vector<Rat> r(static_cast<std::size_t>(rows_), Rat(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) r[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
        return r;
    }

    Rat trace() const {
        if (rows_ != cols_) throw dimension_error("trace of a non-square matrix");
        Rat t = 0;
        for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    bool operator==(const ExactMatrix&) const = default;

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

struct Echelon {
    ExactMatrix mat;             // reduced row echelon form
    std::vector<int> pivot_cols; // ascending
    int rank = 0;
};

// Bareiss forward pass followed by back-substitution to RREF.
// Pivoting is first-nonzero top-down, so the result is deterministic.
inline Echelon reduced_echelon(ExactMatrix m) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<int> pivots;
    Rat prev(1);
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m(i, col) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < cols; ++j) std::swap(m(r, j), m(p, j));
        for (int i = r + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j)
                m(i, j) = (m(r, col) * m(i, j) - m(i, col) * m(r, j)) / prev;
            m(i, col) = 0;
        }
        prev = m(r, col);
        pivots.push_back(col);
        ++r;
    }
    // normalize pivots to 1 and clear above
    for (int k = r - 1; k >= 0; --k) {
        const int pc = pivots[static_cast<std::size_t>(k)];
        Rat inv = Rat(1) / m(k, pc);
        for (int j = pc; j < cols; ++j) m(k, j) *= inv;
        for (int i = 0; i < k; ++i) {
            Rat f = m(i, pc);
            if (f == 0) continue;
            for (int j = pc; j < cols; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return Echelon{std::move(m), std::move(pivots), r};
}

inline int rank(const ExactMatrix& m) { return reduced_echelon(m).rank; }

inline Rat det(ExactMatrix m) {
    if (m.rows() != m.cols()) throw dimension_error("determinant of a non-square matrix");
    const int n = m.rows();
    if (n == 0) return 1;
    Rat prev(1);
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (m(i, k) != 0) {
                p = i;
                break;
            }
        if (p < 0) return 0;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

// Basis of the right null space, normalized from the RREF: each vector
// has a 1 in its free column and zeros in the other free columns.
inline std::vector<std::vector<Rat>> kernel(const ExactMatrix& m) {
    Echelon e = reduced_echelon(m);
    const int cols = m.cols();
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int c : e.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<Rat>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<Rat> v(static_cast<std::size_t>(cols), Rat(0));
        v[static_cast<std::size_t>(f)] = 1;
        for (int k = 0; k < e.rank; ++k)
            v[static_cast<std::size_t>(e.pivot_cols[static_cast<std::size_t>(k)])] = -e.mat(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One particular solution of M x = b (free variables set to 0), or
// nullopt when the system is inconsistent.
inline std::optional<std::vector<Rat>> solve(const ExactMatrix& m, const std::vector<Rat>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw dimension_error("solve: rhs length mismatch");
    ExactMatrix aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[static_cast<std::size_t>(i)];
    }
    Echelon e = reduced_echelon(std::move(aug));
    for (int c : e.pivot_cols)
        if (c == m.cols()) return std::nullopt;
    std::vector<Rat> x(static_cast<std::size_t>(m.cols()), Rat(0));
    for (int k = 0; k < e.rank; ++k)
        x[static_cast<std::size_t>(e.pivot_cols[static_cast<std::size_t>(k)])] = e.mat(k, m.cols());
    return x;
}

// Univariate polynomial with exact rational coefficients, ascending.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly constant(const Rat& c) { return UniPoly({c}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat coeff(int i) const {
        return (i < 0 || i >= static_cast<int>(c_.size())) ? Rat(0) : c_[static_cast<std::size_t>(i)];
    }

    const Rat& leading() const {
        if (c_.empty()) throw usage_error("zero polynomial has no leading coefficient");
        return c_.back();
    }

    Rat eval(const Rat& t) const {
        Rat r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
        return r;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rat> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
        return UniPoly(std::move(d));
    }

    UniPoly monic() const {
        if (is_zero()) throw usage_error("cannot normalize the zero polynomial");
        UniPoly r = *this;
        Rat inv = Rat(1) / c_.back();
        for (auto& x : r.c_) x *= inv;
        return r;
    }

    UniPoly operator-(const UniPoly& o) const {
        std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
        return UniPoly(std::move(r));
    }

    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly();
        std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return UniPoly(std::move(r));
    }

    UniPoly operator*(const Rat& s) const {
        UniPoly r = *this;
        for (auto& x : r.c_) x *= s;
        r.trim();
        return r;
    }

    // division remainder
    UniPoly rem(const UniPoly& d) const {
        if (d.is_zero()) throw usage_error("polynomial division by zero");
        UniPoly r = *this;
        while (!r.is_zero() && r.degree() >= d.degree()) {
            Rat f = r.c_.back() / d.c_.back();
            int shift = r.degree() - d.degree();
            for (std::size_t i = 0; i < d.c_.size(); ++i)
                r.c_[static_cast<std::size_t>(shift) + i] -= f * d.c_[i];
            r.trim();
        }
        return r;
    }

    bool operator==(const UniPoly&) const = default;

    std::string str(char var = 't') const {
        if (c_.empty()) return "0";
        std::string out;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            Rat c = coeff(i);
            if (c == 0) continue;
            bool neg = c < 0;
            if (!first || neg) out += neg ? '-' : '+';
            first = false;
            Rat a = neg ? Rat(-c) : c;
            if (i == 0) {
                out += a.get_str();
                continue;
            }
            if (a != 1) {
                out += a.get_str();
                out += '*';
            }
            out += var;
            if (i > 1) {
                out += '^';
                out += std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

inline UniPoly gcd_monic(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = a.rem(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

// True iff gcd(p, p') is constant.
inline bool squarefree(const UniPoly& p) {
    if (p.is_zero()) throw usage_error("squarefree test of the zero polynomial");
    if (p.degree() == 0) return true;
    return gcd_monic(p, p.derivative()).degree() == 0;
}

namespace detail {

inline std::vector<Int> positive_divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> ds;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            Int q = n / d;
            if (q != d) ds.push_back(q);
        }
    }
    return ds;
}

}  // namespace detail

// Rational roots via the rational-root theorem on the primitive integer
// form, verified by evaluation. Sorted ascending.
inline std::vector<Rat> rational_roots(const UniPoly& p) {
    if (p.is_zero()) throw usage_error("rational roots of the zero polynomial");
    std::vector<Rat> roots;
    // strip t^k
    int k = 0;
    while (p.coeff(k) == 0) ++k;
    if (k > 0) roots.push_back(0);
    std::vector<Rat> shifted;
    for (int i = k; i <= p.degree(); ++i) shifted.push_back(p.coeff(i));
    UniPoly q(std::move(shifted));
    if (q.degree() >= 1) {
        Int lcm_den = 1;
        for (const Rat& c : q.coeffs()) {
            Int den = c.get_den();
            lcm_den = lcm_den / gcd(lcm_den, den) * den;
        }
        std::vector<Int> nc;
        for (const Rat& c : q.coeffs()) {
            Rat scaled = c * Rat(lcm_den);
            nc.push_back(scaled.get_num());
        }
        Int content = 0;
        for (const Int& v : nc) content = gcd(content, v);
        if (content > 1)
            for (Int& v : nc) v /= content;
        const Int a0 = nc.front();
        const Int ad = nc.back();
        for (const Int& num : detail::positive_divisors(a0)) {
            for (const Int& den : detail::positive_divisors(ad)) {
                for (int sign : {1, -1}) {
                    Rat cand(sign > 0 ? num : Int(-num), den);
                    cand.canonicalize();
                    if (q.eval(cand) == 0) roots.push_back(cand);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// Monic polynomial of least degree with p(M) = 0, located as the first
// linear dependence among I, M, M^2, ...
inline UniPoly minimal_polynomial(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw dimension_error("minimal polynomial of a non-square matrix");
    const int n = m.rows();
    if (n == 0) return UniPoly({Rat(1)});
    auto flatten = [n](const ExactMatrix& a) {
        std::vector<Rat> v;
        v.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v.push_back(a(i, j));
        return v;
    };
    std::vector<std::vector<Rat>> powers;
    ExactMatrix cur = ExactMatrix::identity(n);
    powers.push_back(flatten(cur));
    for (int d = 1; d <= n; ++d) {
        cur = cur * m;
        std::vector<Rat> target = flatten(cur);
        ExactMatrix basis(n * n, d);
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < n * n; ++i)
                basis(i, j) = powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        if (auto c = solve(basis, target)) {
            std::vector<Rat> coeffs(static_cast<std::size_t>(d) + 1, Rat(0));
            for (int j = 0; j < d; ++j) coeffs[static_cast<std::size_t>(j)] = -(*c)[static_cast<std::size_t>(j)];
            coeffs[static_cast<std::size_t>(d)] = 1;
            return UniPoly(std::move(coeffs));
        }
        powers.push_back(std::move(target));
    }
    throw std::logic_error("minimal polynomial search exceeded the matrix dimension");
}

}  // namespace macdual
