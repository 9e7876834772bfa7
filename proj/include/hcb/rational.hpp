// Exact rational scalars on top of GMP.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcb {

using Z = mpz_class;
using Q = mpq_class;

inline Q makeQ(long num, long den = 1) {
    Q q(num, den);
    q.canonicalize();
    return q;
}

inline bool isZero(const Q& q) { return sgn(q) == 0; }
inline int signOf(const Q& q) { return sgn(q); }

// "num" or "num/den", always in lowest terms.
inline std::string toText(const Q& q) { return q.get_str(); }

inline Q parseQ(std::string_view s) {
    std::string t(s);
    while (!t.empty() && (t.back() == ' ' || t.back() == '\n')) t.pop_back();
    size_t b = 0;
    while (b < t.size() && t[b] == ' ') ++b;
    t = t.substr(b);
    if (!t.empty() && t[0] == '+') t = t.substr(1);
    Q q;
    if (t.empty() || q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + std::string(s));
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
    q.canonicalize();
    return q;
}

inline Q qpow(const Q& q, unsigned long e) {
    Q r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
    return r;
}

inline Q qabs(const Q& q) { return abs(q); }

inline double toDouble(const Q& q) { return q.get_d(); }

}  // namespace hcb
