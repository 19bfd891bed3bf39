#include "parahoric/residue.hpp"

#include <sstream>

namespace parahoric {

long long pow_ll(long long base, int expo) {
    long long r = 1;
    for (int i = 0; i < expo; ++i) r *= base;
    return r;
}

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; (long long)d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

long long mod_inverse(long long a, long long q) {
    // Extended Euclid; a must be a unit mod q.
    long long r0 = q, r1 = a % q, t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long k = r0 / r1;
        long long r2 = r0 - k * r1;
        long long t2 = t0 - k * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw DomainError("mod_inverse: not a unit");
    return ((t0 % q) + q) % q;
}

}  // namespace

Modulus::Modulus(int p_, int N_) : p(p_), N(N_) {
    if (!is_prime(p_)) throw DomainError("Modulus: p must be prime");
    if (N_ < 1) throw DomainError("Modulus: N must be >= 1");
    q = pow_ll(p_, N_);
    if (q >= (1 << 16)) throw DomainError("Modulus: p^N must be < 2^16");
}

ResidueInt::ResidueInt(Modulus m, long long value) : m_(m) {
    v_ = value % m_.q;
    if (v_ < 0) v_ += m_.q;
}

void ResidueInt::check_same(const ResidueInt& o) const {
    if (!(m_ == o.m_)) throw DomainError("ResidueInt: mismatched moduli");
}

ResidueInt ResidueInt::operator+(const ResidueInt& o) const {
    check_same(o);
    return ResidueInt(m_, v_ + o.v_);
}

ResidueInt ResidueInt::operator-(const ResidueInt& o) const {
    check_same(o);
    return ResidueInt(m_, v_ - o.v_);
}

ResidueInt ResidueInt::operator*(const ResidueInt& o) const {
    check_same(o);
    return ResidueInt(m_, v_ * o.v_);
}

ResidueInt ResidueInt::operator-() const { return ResidueInt(m_, -v_); }

bool ResidueInt::operator==(const ResidueInt& o) const {
    return m_ == o.m_ && v_ == o.v_;
}

ResidueInt ResidueInt::inverse() const {
    if (!is_unit()) throw DomainError("ResidueInt: inverse of a non-unit");
    return ResidueInt(m_, mod_inverse(v_, m_.q));
}

int ResidueInt::valuation() const {
    if (v_ == 0) return m_.N;
    int k = 0;
    long long v = v_;
    while (v % m_.p == 0) { v /= m_.p; ++k; }
    return k;
}

ResidueMatrix::ResidueMatrix(Modulus mod, long long a_, long long b_, long long c_, long long d_)
    : m(mod) {
    auto red = [&](long long x) { x %= m.q; return x < 0 ? x + m.q : x; };
    a = red(a_); b = red(b_); c = red(c_); d = red(d_);
}

ResidueMatrix ResidueMatrix::identity(Modulus mod) { return ResidueMatrix(mod, 1, 0, 0, 1); }

ResidueMatrix ResidueMatrix::weyl(Modulus mod) { return ResidueMatrix(mod, 0, -1, 1, 0); }

ResidueMatrix ResidueMatrix::operator*(const ResidueMatrix& o) const {
    if (!(m == o.m)) throw DomainError("ResidueMatrix: mismatched moduli");
    return ResidueMatrix(m,
                         a * o.a + b * o.c, a * o.b + b * o.d,
                         c * o.a + d * o.c, c * o.b + d * o.d);
}

bool ResidueMatrix::operator==(const ResidueMatrix& o) const {
    return m == o.m && a == o.a && b == o.b && c == o.c && d == o.d;
}

long long ResidueMatrix::det() const {
    long long x = (a * d - b * c) % m.q;
    return x < 0 ? x + m.q : x;
}

ResidueMatrix ResidueMatrix::inverse() const {
    if (det() != 1 % m.q) throw DomainError("ResidueMatrix: inverse requires det 1");
    return ResidueMatrix(m, d, -b, -c, a);
}

ResidueMatrix ResidueMatrix::reduce(int n) const {
    if (n < 1 || n > m.N) throw DomainError("ResidueMatrix: bad reduction level");
    Modulus mm(m.p, n);
    return ResidueMatrix(mm, a, b, c, d);
}

uint64_t ResidueMatrix::pack() const {
    return (uint64_t(a) << 48) | (uint64_t(b) << 32) | (uint64_t(c) << 16) | uint64_t(d);
}

bool ResidueMatrix::lex_less(const ResidueMatrix& o) const { return pack() < o.pack(); }

std::string ResidueMatrix::to_string() const {
    std::ostringstream ss;
    ss << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
    return ss.str();
}

ResidueMatrix conjugate(const ResidueMatrix& x, const ResidueMatrix& g) {
    return x * g * x.inverse();
}

ResidueMatrix weyl_conjugate(const ResidueMatrix& g) {
    return ResidueMatrix(g.m, g.d, -g.c, -g.b, g.a);
}

}  // namespace parahoric
