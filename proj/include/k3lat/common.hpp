#pragma once

// Shared scalar types and error conventions.
//
// All arithmetic in this library is exact: mpz_class for lattice coordinates
// and Gram data, mpq_class wherever duals, projections or cone geometry need
// denominators.  Domain errors throw std::invalid_argument with a short
// message; malformed textual input throws ParseError carrying the offset of
// the offending character.  Internal invariant violations (which indicate a
// bug, not bad input) throw std::logic_error.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace k3lat {

using Z = mpz_class;
using Q = mpq_class;

using ZVec = std::vector<Z>;
using QVec = std::vector<Q>;

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& what, std::size_t pos_)
        : std::runtime_error(what + " (at position " + std::to_string(pos_) + ")"), pos(pos_) {}
};

inline Z zgcd(const Z& a, const Z& b) {
    Z g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// gcd of a vector's entries, nonnegative; 0 for the zero vector.
inline Z content(const ZVec& v) {
    Z g = 0;
    for (const Z& x : v) g = zgcd(g, x);
    return g;
}

inline const std::string& version_string() {
    static const std::string v = "k3lat 1.0.0";
    return v;
}

}  // namespace k3lat
