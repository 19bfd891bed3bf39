#include "parahoric/parahoric.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "parahoric/errors.hpp"

namespace parahoric {

namespace {

long long powmod_small(long long b, long long e, long long m) {
    long long r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

std::vector<long long> prime_divisors(long long v) {
    std::vector<long long> out;
    for (long long d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

}  // namespace

const UnitGroup& UnitGroup::get(int p, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<UnitGroup>> cache;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(p, n);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    if (p < 3) throw DomainError("unit group: an odd prime is required");
    Modulus m(p, n);  // validates primality and the packing range
    auto ug = std::make_unique<UnitGroup>();
    ug->p = p;
    ug->n = n;
    ug->q = m.q;
    ug->order = m.q / p * (p - 1);

    const auto divs = prime_divisors(ug->order);
    long long gen = 0;
    for (long long g = 2; g < ug->q && gen == 0; ++g) {
        if (g % p == 0) continue;
        bool primitive = true;
        for (long long d : divs) {
            if (powmod_small(g, ug->order / d, ug->q) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) gen = g;
    }
    if (gen == 0) throw InternalError("unit group: no primitive root found");
    ug->generator = gen;

    ug->dlog.assign(ug->q, -1);
    long long cur = 1;
    for (long long i = 0; i < ug->order; ++i) {
        ug->dlog[cur] = i;
        cur = cur * gen % ug->q;
    }
    if (cur != 1) throw InternalError("unit group: generator order mismatch");

    const UnitGroup& ref = *ug;
    cache.emplace(key, std::move(ug));
    return ref;
}

LCharacter::LCharacter(int p, int n, long long index) : p_(p), n_(n) {
    const long long phi = UnitGroup::get(p, n).order;
    index_ = ((index % phi) + phi) % phi;
}

long long LCharacter::order_modulus() const { return UnitGroup::get(p_, n_).order; }

bool LCharacter::operator==(const LCharacter& o) const {
    return p_ == o.p_ && n_ == o.n_ && index_ == o.index_;
}

LCharacter LCharacter::weyl_dual() const { return LCharacter(p_, n_, -index_); }

int LCharacter::conductor() const {
    if (index_ == 0) return 0;
    const UnitGroup& ug = UnitGroup::get(p_, n_);
    for (int c = 1; c <= n_; ++c) {
        const long long pc = pow_ll(p_, c);
        bool trivial = true;
        for (long long a = 1; a < ug.q && trivial; a += pc)
            if (index_ * ug.dlog[a] % ug.order != 0) trivial = false;
        if (trivial) return c;
    }
    throw InternalError("conductor scan failed");  // 1 + p^n Z meets the units only at 1
}

Cyclotomic LCharacter::value_at_unit(long long a) const {
    const UnitGroup& ug = UnitGroup::get(p_, n_);
    const long long r = (a % ug.q + ug.q) % ug.q;
    if (ug.dlog[r] < 0) throw DomainError("torus character evaluated off the units");
    return Cyclotomic::root_of_unity(ug.order, index_ * ug.dlog[r] % ug.order);
}

ClassFunction LCharacter::as_class_function(std::shared_ptr<const GroupModel> torus) const {
    if (torus->tag != SubgroupTag::Diagonal || torus->mod.p != p_ || torus->mod.N != n_)
        throw DomainError("torus character needs the diagonal model at its own level");
    std::vector<Cyclotomic> vals((size_t)torus->class_count());
    for (int c = 0; c < torus->class_count(); ++c)
        vals[(size_t)c] = value_at_unit(torus->representative(c).a);
    return ClassFunction(std::move(torus), std::move(vals));
}

std::vector<LCharacter> all_l_characters(int p, int n) {
    const long long phi = UnitGroup::get(p, n).order;
    std::vector<LCharacter> out;
    out.reserve((size_t)phi);
    for (long long k = 0; k < phi; ++k) out.emplace_back(p, n, k);
    return out;
}

Rational z_value(const LCharacter& rho) {
    if (rho.is_trivial()) return Rational(1);
    return Rational(1, pow_ll(rho.p(), rho.conductor() - 1));
}

ClassFunction torus_average(TableStore& store, const ClassFunction& phi, bool swap_roles) {
    const Modulus m = phi.group().mod;
    auto U = store.model(m, SubgroupTag::UnipUpper);
    auto Ub = store.model(m, SubgroupTag::UnipLower);
    auto L = store.model(m, SubgroupTag::Diagonal);

    const Cyclotomic scale{Rational(1, U->order() * Ub->order())};
    std::vector<Cyclotomic> vals((size_t)L->class_count());
    for (int c = 0; c < L->class_count(); ++c) {
        const ResidueMatrix& l = L->representative(c);
        Cyclotomic acc;
        for (const auto& u : U->elements) {
            const ResidueMatrix left = swap_roles ? l * u : u * l;
            for (const auto& v : Ub->elements)
                acc += phi.value_at(swap_roles ? v * left : left * v);
        }
        vals[(size_t)c] = acc * scale;
    }
    return ClassFunction(std::move(L), std::move(vals));
}

ClassFunction iwahori_average(TableStore& store, const ClassFunction& psi, bool swap_roles) {
    if (psi.group().tag != SubgroupTag::Diagonal)
        throw DomainError("iwahori averaging starts from a torus class function");
    const Modulus m = psi.group().mod;
    auto J = store.model(m, SubgroupTag::IwahoriUpper);

    const Cyclotomic scale{Rational(1, J->order())};
    std::vector<Cyclotomic> vals((size_t)J->class_count());
    for (int c = 0; c < J->class_count(); ++c) {
        const ResidueMatrix& j = J->representative(c);
        Cyclotomic acc;
        for (const auto& k : J->elements) {
            const ResidueMatrix x = k.inverse() * j * k;
            acc += psi.value_at(swap_roles ? iwahori_factorize_opposite(x).l
                                           : lambda_projection(x));
        }
        vals[(size_t)c] = acc * scale;
    }
    return ClassFunction(std::move(J), std::move(vals));
}

ClassFunction parahoric_induce(TableStore& store, const LCharacter& rho, bool swap_roles) {
    auto L = store.model(Modulus(rho.p(), rho.n()), SubgroupTag::Diagonal);
    const ClassFunction ch = rho.as_class_function(std::move(L));
    return iwahori_average(store, ch, swap_roles).scaled(Rational(1) / z_value(rho));
}

ClassFunction diagonal_extension(TableStore& store, const LCharacter& rho,
                                 SubgroupTag tag, int param) {
    auto H = store.model(Modulus(rho.p(), rho.n()), tag, param);
    std::vector<Cyclotomic> vals((size_t)H->class_count());
    std::vector<char> seen((size_t)H->class_count(), 0);
    for (size_t i = 0; i < H->elements.size(); ++i) {
        const Cyclotomic v = rho.value_at_unit(H->elements[i].a);
        const size_t c = (size_t)H->class_of_element[i];
        if (!seen[c]) {
            vals[c] = v;
            seen[c] = 1;
        } else if (!(vals[c] == v)) {
            throw DomainError("diagonal extension is not constant on conjugacy classes");
        }
    }
    return ClassFunction(std::move(H), std::move(vals));
}

ClassFunction parahoric_induce_via_congruence(TableStore& store, const LCharacter& rho) {
    const int depth = std::max(rho.conductor(), 1);
    const ClassFunction rho_hat =
        diagonal_extension(store, rho, SubgroupTag::Congruence, depth);
    auto J = store.model(Modulus(rho.p(), rho.n()), SubgroupTag::IwahoriUpper);
    return induce(rho_hat, std::move(J));
}

std::vector<Rational> torus_coordinates(TableStore& store, const ClassFunction& phi) {
    if (phi.group().tag != SubgroupTag::Diagonal)
        throw DomainError("torus coordinates need a torus class function");
    (void)store;
    const auto rhos = all_l_characters(phi.group().mod.p, phi.group().mod.N);
    std::vector<Rational> out;
    out.reserve(rhos.size());
    for (const auto& rho : rhos)
        out.push_back(inner_product(phi, rho.as_class_function(phi.group_ptr())));
    return out;
}

ClassFunction parahoric_restrict(TableStore& store, const ClassFunction& pi,
                                 bool require_genuine) {
    const ClassFunction avg = torus_average(store, pi);
    const auto& L = avg.group_ptr();
    const auto rhos = all_l_characters(L->mod.p, L->mod.N);

    std::vector<Rational> coords = torus_coordinates(store, avg);
    for (size_t k = 0; k < coords.size(); ++k) coords[k] /= z_value(rhos[k]);
    if (require_genuine) {
        for (const auto& r : coords) {
            if (boost::multiprecision::denominator(r) != 1 || r < 0)
                throw InternalError("normalized restriction coordinate is not a nonnegative integer: " +
                                    r.str());
        }
    }

    std::vector<Cyclotomic> vals((size_t)L->class_count());
    for (int c = 0; c < L->class_count(); ++c) {
        const long long a = L->representative(c).a;
        Cyclotomic acc;
        for (size_t k = 0; k < coords.size(); ++k)
            if (coords[k] != 0) acc += Cyclotomic(coords[k]) * rhos[k].value_at_unit(a);
        vals[(size_t)c] = acc;
    }
    return ClassFunction(L, std::move(vals));
}

ClassFunction edge_induce_standard(TableStore& store, const ClassFunction& phi) {
    if (phi.group().tag != SubgroupTag::IwahoriUpper)
        throw DomainError("edge induction starts on the upper Iwahori group");
    return induce(phi, store.model(phi.group().mod, SubgroupTag::FullSL2));
}

ClassFunction edge_induce_opposite(TableStore& store, const ClassFunction& phi) {
    if (phi.group().tag != SubgroupTag::IwahoriUpper)
        throw DomainError("edge induction starts on the upper Iwahori group");
    const Modulus m = phi.group().mod;
    const Modulus up(m.p, m.N + 1);
    auto JL = store.model(up, SubgroupTag::IwahoriLower);

    // Pull back along the level-lowering homomorphism, then induce.
    std::vector<Cyclotomic> vals((size_t)JL->class_count());
    for (int c = 0; c < JL->class_count(); ++c)
        vals[(size_t)c] = phi.value_at(edge_homomorphism_q1(JL->representative(c)));
    const ClassFunction pulled(std::move(JL), std::move(vals));
    return induce(pulled, store.model(up, SubgroupTag::FullSL2));
}

ClassFunction vertex_induce_standard(TableStore& store, const LCharacter& rho) {
    return edge_induce_standard(store, parahoric_induce(store, rho));
}

ClassFunction vertex_induce_opposite(TableStore& store, const LCharacter& rho) {
    return edge_induce_opposite(store, parahoric_induce(store, rho));
}

ClassFunction upper_invariants(TableStore& store, const ClassFunction& pi) {
    const Modulus m = pi.group().mod;
    return invariants_character(pi, *store.model(m, SubgroupTag::UnipUpper),
                                store.model(m, SubgroupTag::Diagonal));
}

ClassFunction lower_invariants(TableStore& store, const ClassFunction& pi) {
    const Modulus m = pi.group().mod;
    return invariants_character(pi, *store.model(m, SubgroupTag::UnipLower),
                                store.model(m, SubgroupTag::Diagonal));
}

ClassFunction weyl_twist(const ClassFunction& phi) {
    if (phi.group().tag != SubgroupTag::Diagonal)
        throw DomainError("weyl twist acts on torus class functions");
    return twist(phi, ResidueMatrix::weyl(phi.group().mod));
}

ClassFunction inflate(const ClassFunction& phi, std::shared_ptr<const GroupModel> deeper) {
    const Modulus base = phi.group().mod;
    if (deeper->mod.p != base.p || deeper->mod.N < base.N)
        throw DomainError("inflation target must refine the base level");
    for (const auto& e : deeper->elements)
        if (!phi.group().contains(e.reduce(base.N)))
            throw DomainError("inflation: reduction leaves the base group");
    std::vector<Cyclotomic> vals((size_t)deeper->class_count());
    for (int c = 0; c < deeper->class_count(); ++c)
        vals[(size_t)c] = phi.value_at(deeper->representative(c).reduce(base.N));
    return ClassFunction(std::move(deeper), std::move(vals));
}

std::vector<Cyclotomic> dihedral_moments(TableStore& store, const ClassFunction& chi,
                                         int k_max, long long max_words) {
    if (k_max < 1) throw DomainError("dihedral moments: k_max must be at least 1");
    if (chi.group().tag != SubgroupTag::IwahoriUpper)
        throw DomainError("dihedral moments are taken on the upper Iwahori group");
    const auto& J = chi.group_ptr();
    const Modulus m = J->mod;
    auto U = store.model(m, SubgroupTag::UnipUpper);
    auto Ub = store.model(m, SubgroupTag::UnipLower);

    __int128 words = 1;
    for (int k = 0; k < k_max; ++k) {
        words *= (__int128)U->order() * Ub->order();
        if (words > max_words)
            throw ResourceError("dihedral moments: alternating word budget exceeded");
    }

    // f is carried through the steps as a density on J; after step k it is
    // the group-algebra element (e_U e_Ubar)^k.
    std::vector<Rational> f((size_t)J->order(), Rational(0));
    f[(size_t)J->identity_index] = 1;
    const auto convolve = [&](const GroupModel& s) {
        std::vector<Rational> g((size_t)J->order(), Rational(0));
        const Rational w(1, s.order());
        for (size_t yi = 0; yi < f.size(); ++yi) {
            if (f[yi] == 0) continue;
            const Rational add = f[yi] * w;
            for (const auto& e : s.elements) {
                const int zi = J->element_index(J->elements[yi] * e);
                if (zi < 0) throw InternalError("dihedral moments: convolution left the group");
                g[(size_t)zi] += add;
            }
        }
        f.swap(g);
    };

    std::vector<Cyclotomic> out;
    out.reserve((size_t)k_max);
    for (int k = 1; k <= k_max; ++k) {
        convolve(*U);
        convolve(*Ub);
        std::vector<Rational> per_class((size_t)J->class_count(), Rational(0));
        for (size_t xi = 0; xi < f.size(); ++xi)
            if (f[xi] != 0) per_class[(size_t)J->class_of_element[xi]] += f[xi];
        Cyclotomic mk;
        for (int c = 0; c < J->class_count(); ++c)
            if (per_class[(size_t)c] != 0) mk += Cyclotomic(per_class[(size_t)c]) * chi.value(c);
        out.push_back(mk.minimized());
    }
    return out;
}

}  // namespace parahoric
