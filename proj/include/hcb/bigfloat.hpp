// Arbitrary-precision binary floating point (MPFR) and conversions from the
// exact types.
#pragma once

#include "hcb/rational.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace hcb {

using Real = boost::multiprecision::mpfr_float;

// Working precision for newly created Reals, in decimal digits.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits) : saved_(Real::default_precision()) { Real::default_precision(digits); }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

inline Real toReal(const Q& q) {
    Real n(q.get_num().get_str()), d(q.get_den().get_str());
    return n / d;
}

inline bool isZero(const Real& x) { return x == 0; }

inline Real toReal(const mpz_class& z) { return Real(z.get_str()); }

// Decimal text with the given number of significant digits.
inline std::string toDecimal(const Real& x, int digits) { return x.str(digits, std::ios_base::scientific); }

}  // namespace hcb
