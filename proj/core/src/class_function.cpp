#include "parahoric/class_function.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "parahoric/errors.hpp"

namespace parahoric {

namespace {

using Wide = __int128;

Integer wide_to_integer(Wide x) {
    bool neg = x < 0;
    unsigned __int128 u = neg ? (unsigned __int128)0 - (unsigned __int128)x : (unsigned __int128)x;
    Integer r = Integer((unsigned long long)(u >> 64));
    r <<= 64;
    r += Integer((unsigned long long)u);
    if (neg) r = -r;
    return r;
}

bool to_small_int(const Rational& r, long long& out) {
    if (boost::multiprecision::denominator(r) != 1) return false;
    Integer num = boost::multiprecision::numerator(r);
    static const long long cap = (long long)1 << 40;
    if (num > cap || num < -cap) return false;
    out = num.convert_to<long long>();
    return true;
}

struct LiftedInts {
    std::vector<Wide> coeff;  // dense power-basis coordinates at the shared conductor
    Wide max_abs = 0;
};

/* Integer lift of a value (optionally complex-conjugated) into the power
 * basis at conductor E. Conjugation sends exponent j at the native conductor
 * d to (d - j) mod d, so every monomial stays inside the reduction table.
 * Returns false when a coordinate is fractional or too large, which routes
 * the caller to the rational kernel.
 */
bool lift_integral(const Cyclotomic& v, long E, bool conj, const MonomialTable& t, LiftedInts& out) {
    long d = v.conductor_bound();
    if (E % d != 0) throw InternalError("lift_integral: conductor does not divide target");
    long stride = E / d;
    out.coeff.assign(t.phi, 0);
    out.max_abs = 0;
    const std::vector<Rational>& c = v.coords();
    for (long j = 0; j < (long)c.size(); ++j) {
        if (c[j] == 0) continue;
        long long cj = 0;
        if (!to_small_int(c[j], cj)) return false;
        long e = (conj ? ((d - j) % d) : j) * stride;
        for (auto [idx, coef] : t.rows[e]) out.coeff[idx] += (Wide)coef * cj;
    }
    for (Wide x : out.coeff) {
        Wide a = x < 0 ? -x : x;
        if (a > out.max_abs) out.max_abs = a;
    }
    return out.max_abs <= ((Wide)1 << 44);
}

/* Exact integer kernel for the weighted hermitian pairing. All products are
 * bounded before they happen; any risk of exceeding the 128-bit budget aborts
 * into the rational fallback. The weighted convolution is accumulated raw
 * (degree < 2 phi - 1) and reduced modulo the cyclotomic polynomial once.
 */
bool fast_inner_product(const ClassFunction& a, const ClassFunction& b, long E, Cyclotomic& result) {
    const MonomialTable& t = monomial_table(E);
    const long phi = t.phi;
    const GroupModel& g = a.group();
    const int r = a.class_count();

    std::vector<LiftedInts> la((size_t)r), lb((size_t)r);
    for (int k = 0; k < r; ++k) {
        if (!lift_integral(a.value(k), E, false, t, la[k])) return false;
        if (!lift_integral(b.value(k), E, true, t, lb[k])) return false;
    }

    const Wide total_budget = (Wide)1 << 100;
    std::vector<Wide> raw((size_t)(2 * phi - 1), 0);
    for (int k = 0; k < r; ++k) {
        if (la[k].max_abs == 0 || lb[k].max_abs == 0) continue;
        Wide bound = la[k].max_abs * lb[k].max_abs;
        bound *= phi;
        bound *= g.class_size[k];
        if (bound > total_budget / (r + 1)) return false;
        const long long s = g.class_size[k];
        for (long i = 0; i < phi; ++i) {
            Wide ai = la[k].coeff[i];
            if (ai == 0) continue;
            Wide as = ai * s;
            const std::vector<Wide>& bc = lb[k].coeff;
            for (long j = 0; j < phi; ++j) {
                if (bc[j] == 0) continue;
                raw[i + j] += as * bc[j];
            }
        }
    }

    Wide raw_max = 0;
    for (Wide x : raw) {
        Wide v = x < 0 ? -x : x;
        if (v > raw_max) raw_max = v;
    }
    Wide reduce_cap = (((Wide)1) << 120) / ((Wide)t.max_abs * (Wide)(2 * phi));
    if (raw_max > reduce_cap) return false;

    std::vector<Wide> red((size_t)phi, 0);
    for (long deg = 0; deg < 2 * phi - 1; ++deg) {
        if (raw[deg] == 0) continue;
        for (auto [idx, coef] : t.rows[deg]) red[idx] += raw[deg] * coef;
    }

    std::vector<Rational> coords((size_t)phi);
    const Rational den = Rational(g.order());
    for (long i = 0; i < phi; ++i) {
        if (red[i] == 0) continue;
        coords[i] = Rational(wide_to_integer(red[i])) / den;
    }
    result = Cyclotomic(E, std::move(coords)).minimized();
    return true;
}

Cyclotomic slow_inner_product(const ClassFunction& a, const ClassFunction& b) {
    const GroupModel& g = a.group();
    Cyclotomic acc;
    for (int k = 0; k < a.class_count(); ++k) {
        if (a.value(k).is_zero() || b.value(k).is_zero()) continue;
        Cyclotomic term = a.value(k) * b.value(k).conjugate();
        acc += term * Cyclotomic(Rational(g.class_size[k]));
    }
    return (acc * Cyclotomic(Rational(1, g.order()))).minimized();
}

}  // namespace

ClassFunction::ClassFunction(std::shared_ptr<const GroupModel> group)
    : group_(std::move(group)) {
    if (!group_) throw DomainError("ClassFunction: null group");
    values_.assign((size_t)group_->class_count(), Cyclotomic());
}

ClassFunction::ClassFunction(std::shared_ptr<const GroupModel> group, std::vector<Cyclotomic> values)
    : group_(std::move(group)), values_(std::move(values)) {
    if (!group_) throw DomainError("ClassFunction: null group");
    if ((long)values_.size() != (long)group_->class_count())
        throw DomainError("ClassFunction: value count does not match class count");
    for (Cyclotomic& v : values_) v = v.minimized();
}

const Cyclotomic& ClassFunction::value(long cls) const {
    if (cls < 0 || cls >= (long)values_.size())
        throw DomainError("ClassFunction: class index out of range");
    return values_[(size_t)cls];
}

void ClassFunction::set_value(long cls, Cyclotomic v) {
    if (cls < 0 || cls >= (long)values_.size())
        throw DomainError("ClassFunction: class index out of range");
    values_[(size_t)cls] = std::move(v);
}

const Cyclotomic& ClassFunction::value_at(const ResidueMatrix& g) const {
    return values_[(size_t)group_->class_of(g)];
}

const Cyclotomic& ClassFunction::degree() const {
    return values_[(size_t)group_->identity_class];
}

void ClassFunction::require_compatible(const ClassFunction& o) const {
    if (group_.get() != o.group_.get() && group_->key_string() != o.group_->key_string())
        throw DomainError("class functions live on different groups");
}

ClassFunction& ClassFunction::operator+=(const ClassFunction& o) {
    require_compatible(o);
    for (size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

ClassFunction& ClassFunction::operator-=(const ClassFunction& o) {
    require_compatible(o);
    for (size_t k = 0; k < values_.size(); ++k) values_[k] += -o.values_[k];
    return *this;
}

ClassFunction ClassFunction::operator+(const ClassFunction& o) const {
    ClassFunction r = *this;
    r += o;
    return r;
}

ClassFunction ClassFunction::operator-(const ClassFunction& o) const {
    ClassFunction r = *this;
    r -= o;
    return r;
}

ClassFunction ClassFunction::operator-() const {
    ClassFunction r = *this;
    for (Cyclotomic& v : r.values_) v = -v;
    return r;
}

ClassFunction ClassFunction::operator*(const ClassFunction& o) const {
    require_compatible(o);
    ClassFunction r = *this;
    for (size_t k = 0; k < values_.size(); ++k) r.values_[k] = values_[k] * o.values_[k];
    return r;
}

ClassFunction ClassFunction::scaled(const Rational& r) const {
    ClassFunction out = *this;
    Cyclotomic f{r};
    for (Cyclotomic& v : out.values_) v = v * f;
    return out;
}

ClassFunction ClassFunction::conjugated() const {
    ClassFunction out = *this;
    for (Cyclotomic& v : out.values_) v = v.conjugate();
    return out;
}

bool ClassFunction::operator==(const ClassFunction& o) const {
    if (group_.get() != o.group_.get() && group_->key_string() != o.group_->key_string()) return false;
    for (size_t k = 0; k < values_.size(); ++k)
        if (values_[k] != o.values_[k]) return false;
    return true;
}

bool ClassFunction::is_zero() const {
    for (const Cyclotomic& v : values_)
        if (!v.is_zero()) return false;
    return true;
}

void ClassFunction::minimize_values() {
    for (Cyclotomic& v : values_) v = v.minimized();
}

std::string ClassFunction::serialize_values() const {
    std::ostringstream ss;
    for (size_t k = 0; k < values_.size(); ++k) {
        if (k) ss << "; ";
        ss << values_[k].serialize();
    }
    return ss.str();
}

Cyclotomic inner_product_value(const ClassFunction& a, const ClassFunction& b) {
    if (a.group().key_string() != b.group().key_string())
        throw DomainError("inner product: class functions on different groups");
    long E = 1;
    for (int k = 0; k < a.class_count(); ++k) {
        E = std::lcm(E, a.value(k).conductor_bound());
        E = std::lcm(E, b.value(k).conductor_bound());
        if (E > 1000000) throw InternalError("inner product: conductor blow-up");
    }
    Cyclotomic result;
    if (fast_inner_product(a, b, E, result)) return result;
    return slow_inner_product(a, b);
}

Rational inner_product(const ClassFunction& a, const ClassFunction& b) {
    Cyclotomic v = inner_product_value(a, b);
    if (!v.is_rational()) throw DomainError("inner product: result is irrational");
    return v.rational_part();
}

std::vector<long> fusion_map(const GroupModel& h, const GroupModel& g) {
    if (h.mod.p != g.mod.p || h.mod.N != g.mod.N)
        throw DomainError("fusion map: groups at different moduli");
    for (const ResidueMatrix& x : h.elements)
        if (!g.contains(x)) throw DomainError("fusion map: first group is not contained in second");
    std::vector<long> fus((size_t)h.class_count());
    for (int c = 0; c < h.class_count(); ++c) fus[(size_t)c] = g.class_of(h.representative(c));
    return fus;
}

ClassFunction induce(const ClassFunction& phi, std::shared_ptr<const GroupModel> g) {
    if (!g) throw DomainError("induce: null target group");
    const GroupModel& h = phi.group();
    std::vector<long> fus = fusion_map(h, *g);
    std::vector<Cyclotomic> vals((size_t)g->class_count());
    for (int c = 0; c < h.class_count(); ++c) {
        if (phi.value(c).is_zero()) continue;
        vals[(size_t)fus[(size_t)c]] += phi.value(c) * Cyclotomic(Rational(h.class_size[c]));
    }
    const Rational index_factor = Rational(g->order()) / Rational(h.order());
    for (int k = 0; k < g->class_count(); ++k) {
        if (vals[(size_t)k].is_zero()) continue;
        vals[(size_t)k] = vals[(size_t)k] * Cyclotomic(index_factor / Rational(g->class_size[k]));
    }
    return ClassFunction(std::move(g), std::move(vals));
}

ClassFunction restrict_to(const ClassFunction& phi, std::shared_ptr<const GroupModel> h) {
    if (!h) throw DomainError("restrict: null subgroup");
    std::vector<long> fus = fusion_map(*h, phi.group());
    std::vector<Cyclotomic> vals((size_t)h->class_count());
    for (int c = 0; c < h->class_count(); ++c) vals[(size_t)c] = phi.value(fus[(size_t)c]);
    return ClassFunction(std::move(h), std::move(vals));
}

ClassFunction twist(const ClassFunction& phi, const ResidueMatrix& x) {
    const GroupModel& g = phi.group();
    std::vector<Cyclotomic> vals((size_t)g.class_count());
    for (int c = 0; c < g.class_count(); ++c) {
        ResidueMatrix y = conjugate(x, g.representative(c));
        if (!g.contains(y)) throw DomainError("twist: conjugation does not preserve the group");
        vals[(size_t)c] = phi.value(g.class_of(y));
    }
    return ClassFunction(phi.group_ptr(), std::move(vals));
}

ClassFunction invariants_character(const ClassFunction& pi,
                                   const GroupModel& a,
                                   std::shared_ptr<const GroupModel> l) {
    if (!l) throw DomainError("invariants: null target group");
    const GroupModel& g = pi.group();
    for (const ResidueMatrix& x : a.elements)
        if (!g.contains(x)) throw DomainError("invariants: averaging subgroup not inside the big group");
    for (const ResidueMatrix& x : l->elements)
        if (!g.contains(x)) throw DomainError("invariants: target subgroup not inside the big group");
    for (const ResidueMatrix& le : l->elements)
        for (const ResidueMatrix& ae : a.elements)
            if (!a.contains(conjugate(le, ae)))
                throw DomainError("invariants: target subgroup does not normalize the averaging subgroup");

    const Rational weight = Rational(1, a.order());
    std::vector<Cyclotomic> vals((size_t)l->class_count());
    for (int c = 0; c < l->class_count(); ++c) {
        const ResidueMatrix& rep = l->representative(c);
        Cyclotomic acc;
        for (const ResidueMatrix& ae : a.elements) acc += pi.value_at(rep * ae);
        vals[(size_t)c] = acc * Cyclotomic(weight);
    }
    return ClassFunction(std::move(l), std::move(vals));
}

long CharacterTable::index_of(const ClassFunction& chi) const {
    for (size_t i = 0; i < irr.size(); ++i)
        if (irr[i] == chi) return (long)i;
    return -1;
}

bool character_less(const ClassFunction& a, const ClassFunction& b) {
    Cyclotomic da = a.degree().minimized();
    Cyclotomic db = b.degree().minimized();
    if (!da.is_rational() || !db.is_rational())
        throw InternalError("character order: irrational degree");
    if (da.rational_part() != db.rational_part()) return da.rational_part() < db.rational_part();
    for (int k = 0; k < a.class_count(); ++k) {
        std::string sa = a.value(k).serialize();
        std::string sb = b.value(k).serialize();
        if (sa != sb) return sa < sb;
    }
    return false;
}

bool VirtualCharacter::is_integral() const {
    for (const Rational& c : coords)
        if (boost::multiprecision::denominator(c) != 1) return false;
    return true;
}

bool VirtualCharacter::is_genuine() const {
    if (!is_integral()) return false;
    bool any = false;
    for (const Rational& c : coords) {
        if (c < 0) return false;
        if (c > 0) any = true;
    }
    return any;
}

std::string VirtualCharacter::to_string() const {
    std::ostringstream ss;
    bool first = true;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        if (!first) ss << " + ";
        if (coords[i] != 1) ss << coords[i] << "*";
        ss << "chi" << i;
        first = false;
    }
    if (first) ss << "0";
    return ss.str();
}

VirtualCharacter decompose(const ClassFunction& phi, const CharacterTable& table) {
    VirtualCharacter d;
    d.table = &table;
    d.coords.reserve(table.irr.size());
    ClassFunction recomb(table.group);
    for (const ClassFunction& chi : table.irr) {
        Cyclotomic ip = inner_product_value(phi, chi);
        if (!ip.is_rational()) throw DomainError("decompose: non-rational multiplicity");
        Rational m = ip.rational_part();
        d.coords.push_back(m);
        if (m != 0) recomb += chi.scaled(m);
    }
    if (recomb != phi) throw DomainError("decompose: class function lies outside the table span");
    return d;
}

}  // namespace parahoric
