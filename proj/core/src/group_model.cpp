#include "parahoric/group_model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace parahoric {

std::string tag_name(SubgroupTag tag) {
    switch (tag) {
        case SubgroupTag::FullSL2: return "full";
        case SubgroupTag::IwahoriUpper: return "iwahori-upper";
        case SubgroupTag::IwahoriLower: return "iwahori-lower";
        case SubgroupTag::UnipUpper: return "unip-upper";
        case SubgroupTag::UnipLower: return "unip-lower";
        case SubgroupTag::Diagonal: return "diagonal";
        case SubgroupTag::Congruence: return "congruence";
        case SubgroupTag::IwahoriIntersection: return "intersection";
        case SubgroupTag::LowerBorel: return "lower-borel";
    }
    throw InternalError("tag_name: unhandled tag");
}

SubgroupTag tag_from_name(const std::string& name) {
    if (name == "full") return SubgroupTag::FullSL2;
    if (name == "iwahori-upper") return SubgroupTag::IwahoriUpper;
    if (name == "iwahori-lower") return SubgroupTag::IwahoriLower;
    if (name == "unip-upper") return SubgroupTag::UnipUpper;
    if (name == "unip-lower") return SubgroupTag::UnipLower;
    if (name == "diagonal") return SubgroupTag::Diagonal;
    if (name == "congruence") return SubgroupTag::Congruence;
    if (name == "intersection") return SubgroupTag::IwahoriIntersection;
    if (name == "lower-borel") return SubgroupTag::LowerBorel;
    throw DomainError("unknown subgroup tag: " + name);
}

long long predicted_order(Modulus m, SubgroupTag tag, int param) {
    const long long p = m.p;
    const int N = m.N;
    switch (tag) {
        case SubgroupTag::FullSL2:
            return pow_ll(p, 3 * N - 2) * (p * p - 1);
        case SubgroupTag::IwahoriUpper:
        case SubgroupTag::IwahoriLower:
            return pow_ll(p, 3 * N - 2) * (p - 1);
        case SubgroupTag::UnipUpper:
            return pow_ll(p, N);
        case SubgroupTag::UnipLower:
            return pow_ll(p, N - 1);
        case SubgroupTag::Diagonal:
            return pow_ll(p, N - 1) * (p - 1);
        case SubgroupTag::Congruence:
            if (param < 1 || param > N) throw DomainError("Congruence depth must be in [1, N]");
            return pow_ll(p, 3 * N - param - 1) * (p - 1);
        case SubgroupTag::IwahoriIntersection:
            return pow_ll(p, 3 * N - 3) * (p - 1);
        case SubgroupTag::LowerBorel:
            return pow_ll(p, 2 * N - 2) * (p - 1);
    }
    throw InternalError("predicted_order: unhandled tag");
}

bool in_subgroup(Modulus m, SubgroupTag tag, int param, const ResidueMatrix& g) {
    if (!(g.m == m) || !g.is_sl2()) return false;
    const long long p = m.p;
    switch (tag) {
        case SubgroupTag::FullSL2: return true;
        case SubgroupTag::IwahoriUpper: return g.c % p == 0;
        case SubgroupTag::IwahoriLower: return g.b % p == 0;
        case SubgroupTag::UnipUpper: return g.a == 1 && g.c == 0 && g.d == 1;
        case SubgroupTag::UnipLower:
            return g.a == 1 && g.b == 0 && g.d == 1 && g.c % p == 0;
        case SubgroupTag::Diagonal: return g.b == 0 && g.c == 0;
        case SubgroupTag::Congruence:
            if (param < 1 || param > m.N) throw DomainError("Congruence depth must be in [1, N]");
            return g.c % pow_ll(p, param) == 0;
        case SubgroupTag::IwahoriIntersection: return g.b % p == 0 && g.c % p == 0;
        case SubgroupTag::LowerBorel: return g.b == 0 && g.c % p == 0;
    }
    throw InternalError("in_subgroup: unhandled tag");
}

int element_order(const ResidueMatrix& g) {
    if (!g.is_sl2()) throw DomainError("element_order: determinant must be 1");
    ResidueMatrix id = ResidueMatrix::identity(g.m);
    ResidueMatrix x = g;
    int k = 1;
    while (!(x == id)) {
        x = x * g;
        ++k;
        if (k > 1'000'000) throw InternalError("element_order: runaway order");
    }
    return k;
}

std::shared_ptr<const GroupModel> GroupModel::build(Modulus m, SubgroupTag tag, int param,
                                                    long long max_elements) {
    const long long expect = predicted_order(m, tag, param);
    if (expect > max_elements) {
        std::ostringstream ss;
        ss << "enumerate_group: " << tag_name(tag) << " at p=" << m.p << " N=" << m.N
           << " requires " << expect << " elements, budget is " << max_elements;
        throw ResourceError(ss.str());
    }

    const long long q = m.q;
    const long long p = m.p;
    const long long pc = tag == SubgroupTag::Congruence ? pow_ll(p, param) : 1;

    // Per-entry guards keep the lexicographic (a,b,c,d) scan near the subgroup
    // size; without them a large-q Diagonal scan would be q^4.
    const bool a_one = tag == SubgroupTag::UnipUpper || tag == SubgroupTag::UnipLower;
    const bool b_zero = tag == SubgroupTag::UnipLower || tag == SubgroupTag::Diagonal ||
                        tag == SubgroupTag::LowerBorel;
    const bool b_div = tag == SubgroupTag::IwahoriLower || tag == SubgroupTag::IwahoriIntersection;
    const bool c_zero = tag == SubgroupTag::UnipUpper || tag == SubgroupTag::Diagonal;
    const bool c_div = tag == SubgroupTag::IwahoriUpper || tag == SubgroupTag::UnipLower ||
                       tag == SubgroupTag::IwahoriIntersection || tag == SubgroupTag::LowerBorel;
    const bool d_one = tag == SubgroupTag::UnipUpper || tag == SubgroupTag::UnipLower;

    {
        double per_a = a_one ? 1.0 : (double)q;
        double per_b = b_zero ? 1.0 : b_div ? (double)(q / p) : (double)q;
        double per_c = c_zero ? 1.0 : (double)(q / pc) / (c_div && pc == 1 ? (double)p : 1.0);
        double per_d = d_one ? 1.0 : (double)q;
        if (per_a * per_b * per_c * per_d > 3.0e8)
            throw ResourceError("enumerate_group: entry scan exceeds the built-in tuple bound");
    }

    auto model = std::shared_ptr<GroupModel>(new GroupModel());
    GroupModel& G = *model;
    G.mod = m;
    G.tag = tag;
    G.param = tag == SubgroupTag::Congruence ? param : 0;
    G.elements.reserve((size_t)expect);

    for (long long a = 0; a < q; ++a) {
        if (a_one && a != 1) continue;
        for (long long b = 0; b < q; ++b) {
            if (b_zero && b != 0) continue;
            if (b_div && b % p != 0) continue;
            const long long bc_base = b % q;
            for (long long c = 0; c < q; ++c) {
                if (c_zero && c != 0) continue;
                if (c_div && c % p != 0) continue;
                if (tag == SubgroupTag::Congruence && c % pc != 0) continue;
                const long long bc = bc_base * c % q;
                for (long long d = 0; d < q; ++d) {
                    if (d_one && d != 1) continue;
                    long long det = (a * d - bc) % q;
                    if (det < 0) det += q;
                    if (det != 1 % q) continue;
                    G.elements.emplace_back(m, a, b, c, d);
                }
            }
        }
    }

    if ((long long)G.elements.size() != expect)
        throw InternalError("enumerate_group: count disagrees with the closed form for " +
                            tag_name(tag));

    G.index_.reserve(G.elements.size() * 2);
    for (int i = 0; i < (int)G.elements.size(); ++i) G.index_.emplace(G.elements[i].pack(), i);
    G.identity_index = G.element_index(ResidueMatrix::identity(m));
    if (G.identity_index < 0) throw InternalError("enumerate_group: identity missing");

    // Conjugacy classes: scan in element order, so each class representative
    // is its least member and classes are ordered by representative.
    const int n = (int)G.elements.size();
    G.class_of_element.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (G.class_of_element[i] >= 0) continue;
        const int cls = (int)G.class_rep.size();
        G.class_rep.push_back(i);
        long long size = 0;
        const ResidueMatrix& g = G.elements[i];
        for (const ResidueMatrix& x : G.elements) {
            ResidueMatrix y = x * g * x.inverse();
            auto it = G.index_.find(y.pack());
            if (it == G.index_.end())
                throw InternalError("conjugacy: subgroup not closed under conjugation");
            if (G.class_of_element[it->second] < 0) {
                G.class_of_element[it->second] = cls;
                ++size;
            }
        }
        G.class_size.push_back(size);
    }
    G.identity_class = G.class_of_element[G.identity_index];

    const int r = G.class_count();
    G.inverse_class.resize(r);
    G.rep_order.resize(r);
    G.power_classes_.resize(r);
    for (int cls = 0; cls < r; ++cls) {
        const ResidueMatrix& g = G.elements[G.class_rep[cls]];
        G.inverse_class[cls] = G.class_of(g.inverse());
        const int o = element_order(g);
        G.rep_order[cls] = o;
        G.exponent = std::lcm(G.exponent, (long long)o);
        auto& pows = G.power_classes_[cls];
        pows.resize(o);
        ResidueMatrix x = ResidueMatrix::identity(m);
        for (int t = 0; t < o; ++t) {
            pows[t] = G.class_of(x);
            x = x * g;
        }
    }
    return model;
}

bool GroupModel::contains(const ResidueMatrix& g) const { return element_index(g) >= 0; }

int GroupModel::element_index(const ResidueMatrix& g) const {
    if (!(g.m == mod)) return -1;
    auto it = index_.find(g.pack());
    return it == index_.end() ? -1 : it->second;
}

int GroupModel::class_of(const ResidueMatrix& g) const {
    int i = element_index(g);
    if (i < 0) throw DomainError("class_of: element is not in " + key_string());
    return class_of_element[i];
}

int GroupModel::power_class(int cls, long long t) const {
    const int o = rep_order[cls];
    long long tt = t % o;
    if (tt < 0) tt += o;
    return power_classes_[cls][(size_t)tt];
}

std::string model_key(Modulus m, SubgroupTag tag, int param) {
    std::ostringstream ss;
    ss << "p" << m.p << "N" << m.N << ":" << tag_name(tag);
    if (tag == SubgroupTag::Congruence) ss << ":" << param;
    return ss.str();
}

std::string GroupModel::key_string() const { return model_key(mod, tag, param); }

IwahoriTriple iwahori_factorize(const ResidueMatrix& g) {
    if (!g.is_sl2()) throw DomainError("iwahori_factorize: determinant must be 1");
    if (g.c % g.m.p != 0)
        throw DomainError("iwahori_factorize: lower-left entry must vanish mod p");
    ResidueInt d(g.m, g.d);
    // det 1 and c = 0 mod p force d to be a unit.
    ResidueInt dinv = d.inverse();
    IwahoriTriple t{
        ResidueMatrix(g.m, 1, g.b * dinv.value(), 0, 1),
        ResidueMatrix(g.m, dinv.value(), 0, 0, g.d),
        ResidueMatrix(g.m, 1, 0, g.c * dinv.value(), 1),
    };
    if (!(t.u * t.l * t.ubar == g)) throw InternalError("iwahori_factorize: product mismatch");
    return t;
}

IwahoriTriple iwahori_factorize_opposite(const ResidueMatrix& g) {
    if (!g.is_sl2()) throw DomainError("iwahori_factorize_opposite: determinant must be 1");
    if (g.c % g.m.p != 0)
        throw DomainError("iwahori_factorize_opposite: lower-left entry must vanish mod p");
    ResidueInt a(g.m, g.a);
    // det 1 and c = 0 mod p force a to be a unit.
    ResidueInt ainv = a.inverse();
    IwahoriTriple t{
        ResidueMatrix(g.m, 1, ainv.value() * g.b, 0, 1),
        ResidueMatrix(g.m, g.a, 0, 0, ainv.value()),
        ResidueMatrix(g.m, 1, 0, g.c * ainv.value(), 1),
    };
    if (!(t.ubar * t.l * t.u == g))
        throw InternalError("iwahori_factorize_opposite: product mismatch");
    return t;
}

ResidueMatrix lambda_projection(const ResidueMatrix& g) { return iwahori_factorize(g).l; }

ResidueMatrix edge_homomorphism_q1(const ResidueMatrix& g) {
    const Modulus& m = g.m;
    if (m.N < 2) throw DomainError("edge_homomorphism_q1: needs N >= 2");
    if (!g.is_sl2()) throw DomainError("edge_homomorphism_q1: determinant must be 1");
    if (g.b % m.p != 0)
        throw DomainError("edge_homomorphism_q1: upper-right entry must vanish mod p");
    Modulus mm(m.p, m.N - 1);
    return ResidueMatrix(mm, g.a, g.b / m.p, g.c * m.p, g.d);
}

DoubleCosets double_coset_decomposition(const GroupModel& H, const GroupModel& G) {
    if (!(H.mod == G.mod)) throw DomainError("double cosets: mismatched moduli");
    std::vector<int> h_in_g(H.order());
    for (int i = 0; i < (int)H.order(); ++i) {
        int j = G.element_index(H.elements[i]);
        if (j < 0) throw DomainError("double cosets: H is not contained in G");
        h_in_g[i] = j;
    }

    DoubleCosets dc;
    dc.coset_of.assign(G.order(), -1);
    std::vector<int> stack;
    for (int i = 0; i < (int)G.order(); ++i) {
        if (dc.coset_of[i] >= 0) continue;
        const int id = (int)dc.coset_rep.size();
        dc.coset_rep.push_back(i);
        dc.coset_size.push_back(0);
        dc.coset_of[i] = id;
        stack.assign(1, i);
        ++dc.coset_size[id];
        while (!stack.empty()) {
            const ResidueMatrix y = G.elements[stack.back()];
            stack.pop_back();
            for (const ResidueMatrix& h : H.elements) {
                for (const ResidueMatrix& z : {h * y, y * h}) {
                    const int zi = G.element_index(z);
                    if (zi < 0) throw InternalError("double cosets: G not closed under H");
                    if (dc.coset_of[zi] < 0) {
                        dc.coset_of[zi] = id;
                        ++dc.coset_size[id];
                        stack.push_back(zi);
                    }
                }
            }
        }
    }
    return dc;
}

}  // namespace parahoric
