#pragma once

// Exponent vectors, weighted degrees and graded monomial enumeration.

#include <algorithm>
#include <cstdlib>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <vector>

#include "macdual/errors.hpp"
#include "macdual/rational.hpp"

namespace macdual {

// Positive integer weights (a_1,...,a_n); the standard grading is all ones.
class Weighting {
public:
    explicit Weighting(std::vector<int> w) : w_(std::move(w)) {
        if (w_.empty()) throw dimension_error("weighting must have at least one entry");
        for (int a : w_)
            if (a < 1) throw usage_error("weights must be positive integers");
    }

    static Weighting standard(int n) { return Weighting(std::vector<int>(n, 1)); }

    int size() const { return static_cast<int>(w_.size()); }
    int operator[](int i) const { return w_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& weights() const { return w_; }
    int max_weight() const { return *std::max_element(w_.begin(), w_.end()); }

    bool is_standard() const {
        return std::all_of(w_.begin(), w_.end(), [](int a) { return a == 1; });
    }

    bool operator==(const Weighting&) const = default;

private:
    std::vector<int> w_;
};

class Exponent {
public:
    explicit Exponent(int n) : e_(static_cast<std::size_t>(n), 0) {
        if (n < 0) throw dimension_error("negative variable count");
    }
    Exponent(std::initializer_list<int> l) : e_(l) {
        for (int k : e_)
            if (k < 0) throw usage_error("exponents must be non-negative");
    }

    static Exponent unit(int n, int var) {
        Exponent e(n);
        e[var] = 1;
        return e;
    }

    int size() const { return static_cast<int>(e_.size()); }
    int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return e_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& entries() const { return e_; }

    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](int k) { return k == 0; });
    }

    int total_degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }

    long long weighted_degree(const Weighting& w) const {
        if (w.size() != size()) throw dimension_error("weighting/exponent length mismatch");
        long long d = 0;
        for (int i = 0; i < size(); ++i) d += static_cast<long long>(e_[i]) * w[i];
        return d;
    }

    Exponent operator+(const Exponent& o) const {
        if (o.size() != size()) throw dimension_error("exponent length mismatch");
        Exponent r = *this;
        for (int i = 0; i < size(); ++i) r[i] += o[i];
        return r;
    }

    // Componentwise difference, empty on shortfall.
    std::optional<Exponent> minus(const Exponent& o) const {
        if (o.size() != size()) throw dimension_error("exponent length mismatch");
        Exponent r = *this;
        for (int i = 0; i < size(); ++i) {
            r[i] -= o[i];
            if (r[i] < 0) return std::nullopt;
        }
        return r;
    }

    bool operator==(const Exponent&) const = default;

private:
    std::vector<int> e_;
};

// Graded-lexicographic: total degree first, then lexicographic on entries.
// This is the canonical term order for printing and matrix columns.
struct GrlexLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
        if (a.size() != b.size()) throw dimension_error("comparing exponents of different length");
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        return std::lexicographical_compare(a.entries().begin(), a.entries().end(),
                                            b.entries().begin(), b.entries().end());
    }
};

inline Int exponent_factorial(const Exponent& e) {
    Int r = 1;
    for (int i = 0; i < e.size(); ++i) r *= factorial(static_cast<unsigned long>(e[i]));
    return r;
}

// Global safety cap on graded enumeration (MACDUAL_MAX_DEGREE, default 200).
inline long long max_degree_cap() {
    static const long long cap = [] {
        if (const char* s = std::getenv("MACDUAL_MAX_DEGREE")) {
            long long v = std::atoll(s);
            if (v > 0) return v;
        }
        return 200LL;
    }();
    return cap;
}

// All K with sum K_i * w_i == j, in descending lexicographic order
// (largest first entry first). Empty when j has no representation.
inline std::vector<Exponent> monomials_of_weight(const Weighting& w, long long j, int n) {
    if (n != w.size()) throw dimension_error("weighting length does not match variable count");
    std::vector<Exponent> out;
    if (j < 0) return out;
    if (j > max_degree_cap())
        throw degree_cap_error("degree " + std::to_string(j) +
                               " exceeds MACDUAL_MAX_DEGREE cap " +
                               std::to_string(max_degree_cap()));
    Exponent cur(n);
    auto rec = [&](auto&& self, int pos, long long rem) -> void {
        if (pos == n) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        if (pos == n - 1) {
            if (rem % w[pos] == 0) {
                cur[pos] = static_cast<int>(rem / w[pos]);
                out.push_back(cur);
                cur[pos] = 0;
            }
            return;
        }
        for (long long k = rem / w[pos]; k >= 0; --k) {
            cur[pos] = static_cast<int>(k);
            self(self, pos + 1, rem - k * w[pos]);
        }
        cur[pos] = 0;
    };
    if (n == 0) {
        if (j == 0) out.push_back(cur);
        return out;
    }
    rec(rec, 0, j);
    return out;
}

// Same monomials in the canonical (grlex ascending) order used for
// matrix column indexing.
inline std::vector<Exponent> graded_basis(const Weighting& w, long long j) {
    auto v = monomials_of_weight(w, j, w.size());
    std::sort(v.begin(), v.end(), GrlexLess{});
    return v;
}

}  // namespace macdual
