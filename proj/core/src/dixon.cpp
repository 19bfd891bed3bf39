#include "parahoric/dixon.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "parahoric/errors.hpp"

namespace parahoric {

namespace {

using ll = long long;

ll mulmod(ll a, ll b, ll m) { return (ll)((__int128)a * b % m); }

ll powmod(ll a, ll e, ll m) {
    a %= m;
    if (a < 0) a += m;
    ll r = 1;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

ll invmod(ll a, ll m) { return powmod(a, m - 2, m); }

bool is_prime_ll(ll n) {
    if (n < 2) return false;
    for (ll d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<ll> prime_factors(ll n) {
    std::vector<ll> out;
    for (ll d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

ll primitive_root(ll ell) {
    std::vector<ll> qs = prime_factors(ell - 1);
    for (ll g = 2; g < ell; ++g) {
        bool ok = true;
        for (ll q : qs)
            if (powmod(g, (ell - 1) / q, ell) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw InternalError("primitive_root: no generator found");
}

using Vec = std::vector<ll>;
using Mat = std::vector<Vec>;

/* Column-reduced echelon form of a list of independent vectors mod l:
 * each vector gets a leading 1 at a distinct pivot position, that position is
 * zero in every other vector, and vectors are sorted by pivot. This makes
 * subspace bases canonical, so the whole construction is reproducible.
 */
void echelonize(std::vector<Vec>& basis, ll ell) {
    size_t done = 0;
    size_t n = basis.empty() ? 0 : basis[0].size();
    for (size_t row = 0; row < n && done < basis.size(); ++row) {
        size_t pick = done;
        while (pick < basis.size() && basis[pick][row] % ell == 0) ++pick;
        if (pick == basis.size()) continue;
        std::swap(basis[done], basis[pick]);
        ll inv = invmod(basis[done][row], ell);
        for (size_t j = 0; j < n; ++j) basis[done][j] = mulmod(basis[done][j], inv, ell);
        for (size_t v = 0; v < basis.size(); ++v) {
            if (v == done) continue;
            ll f = basis[v][row];
            if (f == 0) continue;
            for (size_t j = 0; j < n; ++j) {
                basis[v][j] = (basis[v][j] - mulmod(f, basis[done][j], ell)) % ell;
                if (basis[v][j] < 0) basis[v][j] += ell;
            }
        }
        ++done;
    }
    if (done != basis.size()) throw InternalError("echelonize: dependent basis");
}

std::vector<size_t> pivot_rows(const std::vector<Vec>& basis) {
    std::vector<size_t> piv;
    piv.reserve(basis.size());
    for (const Vec& v : basis) {
        size_t r = 0;
        while (r < v.size() && v[r] == 0) ++r;
        piv.push_back(r);
    }
    return piv;
}

// Characteristic polynomial mod l, by Hessenberg reduction. Returns monic
// coefficients c[0..d], c[d] = 1.
Vec charpoly(Mat m, ll ell) {
    const size_t d = m.size();
    for (size_t col = 0; col + 2 < d; ++col) {
        size_t piv = col + 1;
        while (piv < d && m[piv][col] == 0) ++piv;
        if (piv == d) continue;
        if (piv != col + 1) {
            std::swap(m[piv], m[col + 1]);
            for (size_t i = 0; i < d; ++i) std::swap(m[i][piv], m[i][col + 1]);
        }
        ll inv = invmod(m[col + 1][col], ell);
        for (size_t row = col + 2; row < d; ++row) {
            if (m[row][col] == 0) continue;
            ll f = mulmod(m[row][col], inv, ell);
            for (size_t j = 0; j < d; ++j) {
                m[row][j] = (m[row][j] - mulmod(f, m[col + 1][j], ell)) % ell;
                if (m[row][j] < 0) m[row][j] += ell;
            }
            for (size_t i = 0; i < d; ++i)
                m[i][col + 1] = (m[i][col + 1] + mulmod(f, m[i][row], ell)) % ell;
        }
    }
    std::vector<Vec> p(d + 1);
    p[0] = {1};
    for (size_t k = 1; k <= d; ++k) {
        Vec cur(k + 1, 0);
        ll diag = m[k - 1][k - 1];
        for (size_t j = 0; j < k; ++j) {
            cur[j + 1] = (cur[j + 1] + p[k - 1][j]) % ell;
            cur[j] = (cur[j] - mulmod(diag, p[k - 1][j], ell)) % ell;
        }
        ll sub = 1;
        for (size_t mm = 1; mm + 1 <= k; ++mm) {
            sub = mulmod(sub, m[k - mm][k - mm - 1], ell);
            if (sub == 0) break;
            ll coef = mulmod(m[k - 1 - mm][k - 1], sub, ell);
            if (coef == 0) continue;
            for (size_t j = 0; j + 1 <= k - mm; ++j)
                cur[j] = (cur[j] - mulmod(coef, p[k - 1 - mm][j], ell)) % ell;
        }
        for (ll& c : cur)
            if (c < 0) c += ell;
        p[k] = std::move(cur);
    }
    return p[d];
}

// Nullspace basis of a (d x d) matrix mod l, canonical order.
std::vector<Vec> nullspace(Mat m, ll ell) {
    const size_t d = m.size();
    std::vector<long> pivot_col_of_row(d, -1);
    std::vector<bool> col_is_pivot(d, false);
    size_t row = 0;
    for (size_t col = 0; col < d && row < d; ++col) {
        size_t pick = row;
        while (pick < d && m[pick][col] == 0) ++pick;
        if (pick == d) continue;
        std::swap(m[pick], m[row]);
        ll inv = invmod(m[row][col], ell);
        for (size_t j = 0; j < d; ++j) m[row][j] = mulmod(m[row][j], inv, ell);
        for (size_t i = 0; i < d; ++i) {
            if (i == row || m[i][col] == 0) continue;
            ll f = m[i][col];
            for (size_t j = 0; j < d; ++j) {
                m[i][j] = (m[i][j] - mulmod(f, m[row][j], ell)) % ell;
                if (m[i][j] < 0) m[i][j] += ell;
            }
        }
        pivot_col_of_row[row] = (long)col;
        col_is_pivot[col] = true;
        ++row;
    }
    std::vector<Vec> out;
    for (size_t col = 0; col < d; ++col) {
        if (col_is_pivot[col]) continue;
        Vec v(d, 0);
        v[col] = 1;
        for (size_t r = 0; r < row; ++r) {
            long pc = pivot_col_of_row[r];
            if (pc < 0) continue;
            ll f = m[r][col];
            if (f == 0) continue;
            v[(size_t)pc] = (ell - f) % ell;
        }
        out.push_back(std::move(v));
    }
    return out;
}

struct ClassMatrixBuilder {
    const GroupModel& g;
    std::vector<std::vector<int>> members;  // class -> element indices

    explicit ClassMatrixBuilder(const GroupModel& model) : g(model) {
        members.resize((size_t)g.class_count());
        for (size_t e = 0; e < g.elements.size(); ++e)
            members[(size_t)g.class_of_element[e]].push_back((int)e);
    }

    /* Structure-constant matrix of the i-th class sum acting on the centre:
     * entry (j, k) counts pairs x in C_i, y in C_j with x y = g_k, gathered
     * one column at a time from y = x^{-1} g_k.
     */
    Mat build(int i, ll ell) const {
        const int r = g.class_count();
        Mat b((size_t)r, Vec((size_t)r, 0));
        std::vector<ResidueMatrix> inv_members;
        inv_members.reserve(members[(size_t)i].size());
        for (int e : members[(size_t)i]) inv_members.push_back(g.elements[(size_t)e].inverse());
        for (int k = 0; k < r; ++k) {
            const ResidueMatrix& rep = g.representative(k);
            for (const ResidueMatrix& xi : inv_members) {
                int j = g.class_of(xi * rep);
                b[(size_t)j][(size_t)k] = (b[(size_t)j][(size_t)k] + 1) % ell;
            }
        }
        return b;
    }
};

// Restriction of the action of b to the span of an echelonized basis.
Mat restricted_action(const Mat& b, const std::vector<Vec>& basis, const std::vector<size_t>& piv, ll ell) {
    const size_t d = basis.size();
    const size_t r = b.size();
    Mat m(d, Vec(d, 0));
    for (size_t col = 0; col < d; ++col) {
        for (size_t a = 0; a < d; ++a) {
            ll acc = 0;
            const Vec& brow = b[piv[a]];
            for (size_t k = 0; k < r; ++k) {
                if (brow[k] == 0 || basis[col][k] == 0) continue;
                acc = (acc + mulmod(brow[k], basis[col][k], ell)) % ell;
            }
            m[a][col] = acc;
        }
    }
    return m;
}

}  // namespace

long long choose_modular_prime(long long order, long long exponent) {
    if (order < 1 || exponent < 1) throw DomainError("choose_modular_prime: bad parameters");
    for (ll ell = exponent + 1; ell < (ll)1 << 40; ell += exponent) {
        if ((__int128)ell * ell <= (__int128)4 * order) continue;
        if (!is_prime_ll(ell)) continue;
        if (order % ell == 0) continue;
        return ell;
    }
    throw InternalError("choose_modular_prime: no prime found under the search bound");
}

CharacterTable build_character_table(std::shared_ptr<const GroupModel> gp) {
    if (!gp) throw DomainError("build_character_table: null group");
    const GroupModel& g = *gp;
    const int r = g.class_count();
    const ll ell = choose_modular_prime(g.order(), g.exponent);
    const ll gen = primitive_root(ell);
    const ll z = powmod(gen, (ell - 1) / g.exponent, ell);

    // Common eigenvector separation.
    std::vector<std::vector<Vec>> spaces;
    {
        std::vector<Vec> full;
        for (int k = 0; k < r; ++k) {
            Vec e((size_t)r, 0);
            e[(size_t)k] = 1;
            full.push_back(std::move(e));
        }
        spaces.push_back(std::move(full));
    }
    ClassMatrixBuilder cmb(g);
    for (int i = 0; i < r; ++i) {
        if (i == g.identity_class) continue;
        bool all_split = true;
        for (const auto& s : spaces)
            if (s.size() > 1) { all_split = false; break; }
        if (all_split) break;

        Mat b = cmb.build(i, ell);
        std::vector<std::vector<Vec>> next;
        for (auto& s : spaces) {
            if (s.size() == 1) {
                next.push_back(std::move(s));
                continue;
            }
            std::vector<size_t> piv = pivot_rows(s);
            Mat m = restricted_action(b, s, piv, ell);
            Vec cp = charpoly(m, ell);
            std::vector<ll> roots;
            for (ll lam = 0; lam < ell; ++lam) {
                ll acc = 0;
                for (size_t j = cp.size(); j-- > 0;) acc = (mulmod(acc, lam, ell) + cp[j]) % ell;
                if (acc == 0) roots.push_back(lam);
            }
            if (roots.size() <= 1) {
                next.push_back(std::move(s));
                continue;
            }
            size_t total = 0;
            for (ll lam : roots) {
                Mat shifted = m;
                for (size_t a = 0; a < shifted.size(); ++a) {
                    shifted[a][a] = (shifted[a][a] - lam) % ell;
                    if (shifted[a][a] < 0) shifted[a][a] += ell;
                }
                std::vector<Vec> nb = nullspace(shifted, ell);
                if (nb.empty()) throw InternalError("character split: root without eigenvector");
                total += nb.size();
                std::vector<Vec> child;
                for (const Vec& coef : nb) {
                    Vec w((size_t)r, 0);
                    for (size_t c = 0; c < s.size(); ++c) {
                        if (coef[c] == 0) continue;
                        for (int k = 0; k < r; ++k)
                            w[(size_t)k] = (w[(size_t)k] + mulmod(coef[c], s[c][(size_t)k], ell)) % ell;
                    }
                    child.push_back(std::move(w));
                }
                echelonize(child, ell);
                next.push_back(std::move(child));
            }
            if (total != s.size()) throw InternalError("character split: defective class matrix action");
        }
        spaces = std::move(next);
    }
    for (const auto& s : spaces)
        if (s.size() != 1) throw InternalError("character split: classes not fully separated");
    if ((int)spaces.size() != r) throw InternalError("character split: wrong eigenvector count");

    // Recover exact characters from the normalized eigenvectors.
    const int k0 = g.identity_class;
    std::vector<ClassFunction> irr;
    irr.reserve((size_t)r);
    long long degree_square_sum = 0;
    for (const auto& s : spaces) {
        const Vec& u = s[0];
        if (u[(size_t)k0] == 0) throw InternalError("character recovery: vanishing identity coordinate");
        ll norm = invmod(u[(size_t)k0], ell);
        Vec omega((size_t)r);
        for (int k = 0; k < r; ++k) omega[(size_t)k] = mulmod(u[(size_t)k], norm, ell);

        ll ssum = 0;
        for (int k = 0; k < r; ++k) {
            ll term = mulmod(omega[(size_t)k], omega[(size_t)g.inverse_class[k]], ell);
            ssum = (ssum + mulmod(term, invmod(g.class_size[k] % ell, ell), ell)) % ell;
        }
        if (ssum == 0) throw InternalError("character recovery: degenerate norm sum");
        ll d2 = mulmod(g.order() % ell, invmod(ssum, ell), ell);
        ll deg = 0;
        for (ll t = 1; 2 * t < ell; ++t)
            if (mulmod(t, t, ell) == d2) { deg = t; break; }
        if (deg == 0) throw InternalError("character recovery: degree is not a residue square root");
        degree_square_sum += deg * deg;

        Vec chibar((size_t)r);
        for (int k = 0; k < r; ++k)
            chibar[(size_t)k] = mulmod(mulmod(deg, omega[(size_t)k], ell), invmod(g.class_size[k] % ell, ell), ell);

        std::vector<Cyclotomic> values((size_t)r);
        for (int k = 0; k < r; ++k) {
            const long o = g.rep_order[k];
            const ll zo = powmod(z, g.exponent / o, ell);
            std::vector<ll> zp((size_t)o);
            zp[0] = 1;
            for (long t = 1; t < o; ++t) zp[(size_t)t] = mulmod(zp[(size_t)t - 1], zo, ell);
            const ll oinv = invmod(o % ell, ell);
            const MonomialTable& mt = monomial_table(o);
            std::vector<Integer> coords((size_t)mt.phi, Integer(0));
            ll resum = 0;
            ll msum = 0;
            for (long sdx = 0; sdx < o; ++sdx) {
                ll acc = 0;
                for (long t = 0; t < o; ++t) {
                    long rev = (long)(((__int128)(o - sdx) * t) % o);
                    acc = (acc + mulmod(chibar[(size_t)g.power_class(k, t)], zp[(size_t)rev], ell)) % ell;
                }
                ll mult = mulmod(acc, oinv, ell);
                if (mult > deg) throw InternalError("character lift: multiplicity exceeds degree");
                msum += mult;
                if (mult == 0) continue;
                resum = (resum + mulmod(mult, zp[(size_t)sdx], ell)) % ell;
                for (auto [idx, coef] : mt.rows[sdx]) coords[(size_t)idx] += Integer(coef) * mult;
            }
            if (msum != deg) throw InternalError("character lift: multiplicities do not sum to the degree");
            if (resum != chibar[(size_t)k]) throw InternalError("character lift: re-reduction mismatch");
            std::vector<Rational> rc((size_t)mt.phi);
            for (size_t j = 0; j < coords.size(); ++j) rc[j] = Rational(coords[j]);
            values[(size_t)k] = Cyclotomic(o, std::move(rc));
        }
        irr.emplace_back(gp, std::move(values));
    }
    if (degree_square_sum != g.order())
        throw InternalError("character recovery: degree squares do not sum to the group order");

    std::sort(irr.begin(), irr.end(), character_less);
    CharacterTable table;
    table.group = gp;
    table.irr = std::move(irr);
    table.modular_prime = ell;
    return table;
}

}  // namespace parahoric
