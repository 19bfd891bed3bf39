#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "parahoric/errors.hpp"

namespace parahoric {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

long euler_phi(long m);
// Monic integer coefficients of the m-th cyclotomic polynomial, degree phi(m),
// index i = coefficient of x^i.
const std::vector<Integer>& cyclotomic_polynomial(long m);

/* Sparse reductions of the monomials x^t modulo Phi_m, t < m + phi(m).
 * Shared by the exact class-function kernels; coefficients are guaranteed to
 * fit in int64 (InternalError otherwise, which does not occur at desk scale).
 */
struct MonomialTable {
    long m = 1;
    long phi = 1;
    std::vector<std::vector<std::pair<int, long long>>> rows;
    long long max_abs = 1;
};
const MonomialTable& monomial_table(long m);

/* An element of Q(zeta_m) in the power basis 1, z, ..., z^{phi(m)-1} reduced
 * modulo Phi_m.  The stored conductor is whatever the arithmetic produced;
 * minimization to the true conductor happens on serialization or on demand.
 * Representation at a fixed conductor is canonical, so equality at a common
 * conductor is coefficient equality.
 */
class Cyclotomic {
public:
    Cyclotomic();  // zero, conductor 1
    explicit Cyclotomic(const Rational& r);
    explicit Cyclotomic(long long n);
    Cyclotomic(long m, std::vector<Rational> coords);  // reduced coords, length phi(m)

    static Cyclotomic root_of_unity(long m, long long k);

    long conductor_bound() const { return m_; }
    const std::vector<Rational>& coords() const { return c_; }

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    Cyclotomic inverse() const;  // DomainError on zero
    Cyclotomic operator/(const Cyclotomic& o) const { return *this * o.inverse(); }

    // Galois action z -> z^k, gcd(k, m) = 1.
    Cyclotomic galois(long long k) const;
    Cyclotomic conjugate() const;

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_part() const;  // DomainError when irrational

    // Same value re-expressed at conductor M (m | M required).
    Cyclotomic lifted(long M) const;
    // Copy at the smallest conductor dividing m that contains the value.
    Cyclotomic minimized() const;

    // Canonical form: "cyc <d> <c0> <c1> ...", coefficients "num/den",
    // conductor d minimized.  Round-trips bit-exactly through deserialize.
    std::string serialize() const;
    static Cyclotomic deserialize(const std::string& s);
    // Compact display: plain rational when rational, else the serialized form.
    std::string to_display() const;

    // Numeric embedding z -> exp(2*pi*i/m); diagnostics only.
    std::complex<double> approx() const;

private:
    long m_;
    std::vector<Rational> c_;
};

std::pair<Cyclotomic, Cyclotomic> to_common_conductor(const Cyclotomic& a, const Cyclotomic& b);

}  // namespace parahoric
