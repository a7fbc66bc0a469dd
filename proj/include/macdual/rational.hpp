#pragma once

#include <gmpxx.h>

#include <string>

namespace macdual {

using Rat = mpq_class;
using Int = mpz_class;

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// n * (n-1) * ... * (n-k+1)
inline Int falling_factorial(long n, long k) {
    Int r = 1;
    for (long i = 0; i < k; ++i) r *= Int(n - i);
    return r;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Int n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), e);
    return Rat(n, d);  // coprime since base is canonical
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

}  // namespace macdual
