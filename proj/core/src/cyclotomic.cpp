#include "parahoric/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace parahoric {

long euler_phi(long m) {
    if (m < 1) throw DomainError("euler_phi: m must be positive");
    long result = m;
    long n = m;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

std::mutex g_tables_mutex;

// Exact division of integer polynomials; remainder must vanish.
std::vector<Integer> poly_div_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
    if (den.empty() || den.back() == 0) throw InternalError("poly_div_exact: bad divisor");
    std::vector<Integer> quot(num.size() - den.size() + 1, Integer(0));
    for (int i = (int)quot.size() - 1; i >= 0; --i) {
        Integer c = num[i + den.size() - 1] / den.back();
        quot[i] = c;
        if (c != 0)
            for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (const Integer& c : num)
        if (c != 0) throw InternalError("poly_div_exact: nonzero remainder");
    return quot;
}

const std::vector<Integer>& cyclotomic_polynomial_locked(long m) {
    static std::map<long, std::vector<Integer>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    std::vector<Integer> f(m + 1, Integer(0));  // x^m - 1
    f[0] = -1;
    f[m] = 1;
    for (long d = 1; d < m; ++d)
        if (m % d == 0) f = poly_div_exact(std::move(f), cyclotomic_polynomial_locked(d));
    return cache.emplace(m, std::move(f)).first->second;
}

const MonomialTable& monomial_table_locked(long m) {
    static std::map<long, MonomialTable> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    const std::vector<Integer>& phi_poly = cyclotomic_polynomial_locked(m);
    MonomialTable t;
    t.m = m;
    t.phi = (long)phi_poly.size() - 1;

    std::vector<long long> head(t.phi);  // x^phi = -sum head[i] x^i
    for (long i = 0; i < t.phi; ++i) {
        if (phi_poly[i] < -(1ll << 40) || phi_poly[i] > (1ll << 40))
            throw InternalError("monomial_table: cyclotomic coefficients too large");
        head[i] = -phi_poly[i].convert_to<long long>();
    }

    const long limit = m + t.phi;
    t.rows.resize(limit);
    std::vector<long long> dense(t.phi, 0);
    for (long tt = 0; tt < limit; ++tt) {
        if (tt < t.phi) {
            t.rows[tt] = {{(int)tt, 1ll}};
            continue;
        }
        // x^tt = x * x^{tt-1}
        std::fill(dense.begin(), dense.end(), 0ll);
        for (auto [e, coef] : t.rows[tt - 1]) {
            if (e + 1 < t.phi) {
                dense[e + 1] += coef;
            } else {
                for (long i = 0; i < t.phi; ++i) {
                    dense[i] += coef * head[i];
                    if (dense[i] > (1ll << 60) || dense[i] < -(1ll << 60))
                        throw InternalError("monomial_table: reduction overflow");
                }
            }
        }
        auto& row = t.rows[tt];
        for (long i = 0; i < t.phi; ++i)
            if (dense[i] != 0) {
                row.emplace_back((int)i, dense[i]);
                t.max_abs = std::max(t.max_abs, dense[i] < 0 ? -dense[i] : dense[i]);
            }
    }
    return cache.emplace(m, std::move(t)).first->second;
}

const MonomialTable& monomial_table_shared(long m) {
    std::lock_guard<std::mutex> lock(g_tables_mutex);
    return monomial_table_locked(m);
}

// Rational-coefficient polynomial (any degree < m + phi) reduced mod Phi_m.
std::vector<Rational> reduce_poly(long m, const std::vector<Rational>& poly) {
    const MonomialTable& t = monomial_table_shared(m);
    std::vector<Rational> out(t.phi, Rational(0));
    for (size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] == 0) continue;
        if ((long)i >= m + t.phi) throw InternalError("reduce_poly: degree out of table range");
        for (auto [e, coef] : t.rows[i]) out[e] += poly[i] * coef;
    }
    return out;
}

/* Cached solver for the descent Q(zeta_d) -> Q(zeta_m), d | m: expresses a
 * coordinate vector at m in the embedded power basis of zeta_d when possible.
 */
struct DescentSolver {
    long m, d;
    long phm, phd;
    std::vector<std::vector<long long>> embed;    // phm x phd, integer
    std::vector<std::vector<Rational>> transform; // phd x phm, y = transform * c

    DescentSolver(long m_, long d_) : m(m_), d(d_) {
        const MonomialTable& t = monomial_table_locked(m);
        phm = t.phi;
        phd = euler_phi(d);
        embed.assign(phm, std::vector<long long>(phd, 0));
        for (long j = 0; j < phd; ++j) {
            long e = j * (m / d);
            for (auto [i, coef] : t.rows[e]) embed[i][j] += coef;
        }
        // Gaussian elimination on [embed | I]; every column must get a pivot.
        std::vector<std::vector<Rational>> aug(phm, std::vector<Rational>(phd + phm, Rational(0)));
        for (long i = 0; i < phm; ++i) {
            for (long j = 0; j < phd; ++j) aug[i][j] = embed[i][j];
            aug[i][phd + i] = 1;
        }
        std::vector<int> pivot_row(phd, -1);
        int row = 0;
        for (long col = 0; col < phd; ++col) {
            int pr = -1;
            for (int i = row; i < phm; ++i)
                if (aug[i][col] != 0) { pr = i; break; }
            if (pr < 0) throw InternalError("DescentSolver: embedding not injective");
            std::swap(aug[pr], aug[row]);
            Rational inv = Rational(1) / aug[row][col];
            for (long j = 0; j < phd + phm; ++j) aug[row][j] *= inv;
            for (int i = 0; i < phm; ++i) {
                if (i == row || aug[i][col] == 0) continue;
                Rational f = aug[i][col];
                for (long j = 0; j < phd + phm; ++j) aug[i][j] -= f * aug[row][j];
            }
            pivot_row[col] = row;
            ++row;
        }
        transform.assign(phd, std::vector<Rational>(phm));
        for (long col = 0; col < phd; ++col)
            for (long i = 0; i < phm; ++i) transform[col][i] = aug[pivot_row[col]][phd + i];
    }

    // Returns true and fills y when c lies in the embedded subfield.
    bool solve(const std::vector<Rational>& c, std::vector<Rational>& y) const {
        y.assign(phd, Rational(0));
        for (long j = 0; j < phd; ++j)
            for (long i = 0; i < phm; ++i)
                if (transform[j][i] != 0 && c[i] != 0) y[j] += transform[j][i] * c[i];
        for (long i = 0; i < phm; ++i) {
            Rational acc(0);
            for (long j = 0; j < phd; ++j)
                if (embed[i][j] != 0 && y[j] != 0) acc += y[j] * embed[i][j];
            if (acc != c[i]) return false;
        }
        return true;
    }
};

const DescentSolver& descent_solver_locked(long m, long d) {
    static std::map<std::pair<long, long>, DescentSolver> cache;
    auto key = std::make_pair(m, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, DescentSolver(m, d)).first->second;
}

std::string rational_to_string(const Rational& r) {
    std::ostringstream ss;
    if (boost::multiprecision::denominator(r) == 1) {
        ss << boost::multiprecision::numerator(r);
    } else {
        ss << boost::multiprecision::numerator(r) << "/" << boost::multiprecision::denominator(r);
    }
    return ss.str();
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(long m) {
    if (m < 1) throw DomainError("cyclotomic_polynomial: m must be positive");
    std::lock_guard<std::mutex> lock(g_tables_mutex);
    return cyclotomic_polynomial_locked(m);
}

const MonomialTable& monomial_table(long m) {
    if (m < 1) throw DomainError("monomial_table: m must be positive");
    std::lock_guard<std::mutex> lock(g_tables_mutex);
    return monomial_table_locked(m);
}

Cyclotomic::Cyclotomic() : m_(1), c_(1, Rational(0)) {}

Cyclotomic::Cyclotomic(const Rational& r) : m_(1), c_(1, r) {}

Cyclotomic::Cyclotomic(long long n) : m_(1), c_(1, Rational(n)) {}

Cyclotomic::Cyclotomic(long m, std::vector<Rational> coords) : m_(m), c_(std::move(coords)) {
    if (m_ < 1 || (long)c_.size() != euler_phi(m_))
        throw DomainError("Cyclotomic: coordinate length must be phi(m)");
}

Cyclotomic Cyclotomic::root_of_unity(long m, long long k) {
    if (m < 1) throw DomainError("root_of_unity: m must be positive");
    long long kk = k % m;
    if (kk < 0) kk += m;
    const MonomialTable& t = monomial_table(m);
    std::vector<Rational> coords(t.phi, Rational(0));
    for (auto [e, coef] : t.rows[kk]) coords[e] += coef;
    return Cyclotomic(m, std::move(coords));
}

Cyclotomic Cyclotomic::lifted(long M) const {
    if (M == m_) return *this;
    if (M < 1 || M % m_ != 0) throw DomainError("lifted: target conductor must be a multiple");
    const MonomialTable& t = monomial_table(M);
    std::vector<Rational> out(t.phi, Rational(0));
    const long stride = M / m_;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (auto [e, coef] : t.rows[(long)i * stride]) out[e] += c_[i] * coef;
    }
    return Cyclotomic(M, std::move(out));
}

std::pair<Cyclotomic, Cyclotomic> to_common_conductor(const Cyclotomic& a, const Cyclotomic& b) {
    long M = std::lcm(a.conductor_bound(), b.conductor_bound());
    return {a.lifted(M), b.lifted(M)};
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    auto [x, y] = to_common_conductor(*this, o);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    *this = *this + o;
    return *this;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
    auto [x, y] = to_common_conductor(*this, o);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic x = *this;
    for (auto& c : x.c_) c = -c;
    return x;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    auto [x, y] = to_common_conductor(*this, o);
    const long phi = (long)x.c_.size();
    std::vector<Rational> conv(2 * phi - 1, Rational(0));
    for (long i = 0; i < phi; ++i) {
        if (x.c_[i] == 0) continue;
        for (long j = 0; j < phi; ++j) {
            if (y.c_[j] == 0) continue;
            conv[i + j] += x.c_[i] * y.c_[j];
        }
    }
    return Cyclotomic(x.m_, reduce_poly(x.m_, conv));
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    auto [x, y] = to_common_conductor(*this, o);
    return x.c_ == y.c_;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw DomainError("Cyclotomic: inverse of zero");
    // Extended Euclid in Q[x] against Phi_m; gcd is 1 since Phi_m is
    // irreducible and the argument is a nonzero element of degree < phi.
    const std::vector<Integer>& phi_poly = cyclotomic_polynomial(m_);
    std::vector<Rational> r0(phi_poly.size());
    for (size_t i = 0; i < phi_poly.size(); ++i) r0[i] = Rational(phi_poly[i]);
    std::vector<Rational> r1 = c_;
    while (!r1.empty() && r1.back() == 0) r1.pop_back();
    std::vector<Rational> s0(1, Rational(0)), s1(1, Rational(1));  // s tracks the argument

    auto degree = [](const std::vector<Rational>& f) { return (long)f.size() - 1; };
    while (degree(r1) > 0 || (degree(r1) == 0 && r1[0] == 0)) {
        if (r1.empty()) throw InternalError("Cyclotomic::inverse: zero remainder chain");
        // r0 = q*r1 + r2
        std::vector<Rational> rem = r0;
        std::vector<Rational> quot(std::max<long>(degree(r0) - degree(r1) + 1, 1), Rational(0));
        for (long i = degree(rem); i >= degree(r1); --i) {
            if (rem[i] == 0) continue;
            Rational f = rem[i] / r1.back();
            quot[i - degree(r1)] = f;
            for (long j = 0; j <= degree(r1); ++j) rem[i - degree(r1) + j] -= f * r1[j];
        }
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        // s2 = s0 - q*s1
        std::vector<Rational> s2 = s0;
        s2.resize(std::max(s0.size(), quot.size() + s1.size() - 1), Rational(0));
        for (size_t i = 0; i < quot.size(); ++i) {
            if (quot[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= quot[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant: inverse = s1 / r1.
    Rational lead = r1[0];
    std::vector<Rational> inv(s1.size());
    for (size_t i = 0; i < s1.size(); ++i) inv[i] = s1[i] / lead;
    inv.resize(std::max<size_t>(inv.size(), 1), Rational(0));
    return Cyclotomic(m_, reduce_poly(m_, inv));
}

Cyclotomic Cyclotomic::galois(long long k) const {
    long long kk = k % m_;
    if (kk < 0) kk += m_;
    if (std::gcd((long long)m_, kk == 0 ? (long long)m_ : kk) != 1)
        throw DomainError("galois: exponent must be coprime to the conductor");
    const MonomialTable& t = monomial_table(m_);
    std::vector<Rational> out(t.phi, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (auto [e, coef] : t.rows[(long)((long long)i * kk % m_)]) out[e] += c_[i] * coef;
    }
    return Cyclotomic(m_, std::move(out));
}

Cyclotomic Cyclotomic::conjugate() const { return galois(m_ - 1 == 0 ? 1 : m_ - 1); }

bool Cyclotomic::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_part() const {
    if (!is_rational()) throw DomainError("rational_part: value is irrational");
    return c_[0];
}

Cyclotomic Cyclotomic::minimized() const {
    if (is_rational()) return Cyclotomic(c_[0]);
    std::vector<long> divisors;
    for (long d = 1; d <= m_; ++d)
        if (m_ % d == 0) divisors.push_back(d);
    std::vector<Rational> y;
    for (long d : divisors) {
        if (d == m_) break;
        const DescentSolver* solver;
        {
            std::lock_guard<std::mutex> lock(g_tables_mutex);
            solver = &descent_solver_locked(m_, d);
        }
        if (solver->solve(c_, y)) return Cyclotomic(d, std::move(y));
    }
    return *this;
}

std::string Cyclotomic::serialize() const {
    Cyclotomic v = minimized();
    std::ostringstream ss;
    ss << "cyc " << v.m_;
    for (const Rational& c : v.c_) ss << " " << rational_to_string(c);
    return ss.str();
}

Cyclotomic Cyclotomic::deserialize(const std::string& s) {
    std::istringstream ss(s);
    std::string head;
    long m = 0;
    if (!(ss >> head >> m) || head != "cyc" || m < 1)
        throw DomainError("Cyclotomic::deserialize: bad header in '" + s + "'");
    std::vector<Rational> coords;
    std::string tok;
    while (ss >> tok) coords.emplace_back(tok);
    if ((long)coords.size() != euler_phi(m))
        throw DomainError("Cyclotomic::deserialize: wrong coordinate count in '" + s + "'");
    return Cyclotomic(m, std::move(coords));
}

std::string Cyclotomic::to_display() const {
    if (is_rational()) return rational_to_string(c_[0]);
    return serialize();
}

std::complex<double> Cyclotomic::approx() const {
    std::complex<double> acc(0.0, 0.0);
    const double two_pi = 6.283185307179586476925286766559;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        double angle = two_pi * (double)i / (double)m_;
        acc += c_[i].convert_to<double>() * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc;
}

}  // namespace parahoric
