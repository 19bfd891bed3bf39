#include "parahoric/verify.hpp"

#include <algorithm>
#include <future>
#include <memory>
#include <sstream>
#include <utility>

#include "parahoric/errors.hpp"
#include "parahoric/homology.hpp"
#include "parahoric/intmat.hpp"
#include "parahoric/parahoric.hpp"

namespace parahoric {

namespace {

std::string disp(const Cyclotomic& v) { return v.to_display(); }
std::string disp(const Rational& r) { return r.str(); }

ClassFunction trivial_character(std::shared_ptr<const GroupModel> g) {
    std::vector<Cyclotomic> vals((size_t)g->class_count(), Cyclotomic((long long)1));
    return ClassFunction(std::move(g), std::move(vals));
}

// Empty string when equal; otherwise the first differing class.
std::string first_difference(const ClassFunction& a, const ClassFunction& b) {
    if (a.class_count() != b.class_count()) return "class counts differ";
    for (long c = 0; c < a.class_count(); ++c)
        if (!(a.value(c) == b.value(c)))
            return "class " + std::to_string(c) + ": " + disp(a.value(c)) + " vs " +
                   disp(b.value(c));
    return "";
}

std::vector<long long> mat_vec(const IntMatrix& m, const std::vector<long long>& v) {
    std::vector<long long> out(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

struct Ctx {
    TableStore& store;
    int p;
    int n;
    VerifyOptions opt;
    std::vector<CheckResult> checks;

    void add(std::string id, std::string inputs, bool pass, std::string expected,
             std::string got) {
        checks.push_back(
            {std::move(id), std::move(inputs), pass, std::move(expected), std::move(got)});
    }

    void equal_check(std::string id, std::string inputs, const ClassFunction& a,
                     const ClassFunction& b) {
        const std::string diff = first_difference(a, b);
        add(std::move(id), std::move(inputs), diff.empty(), "equal",
            diff.empty() ? "equal" : diff);
    }

    void matrix_check(std::string id, const IntMatrix& a, const IntMatrix& b) {
        const bool ok = a == b;
        add(std::move(id), "", ok, "matrix identity", ok ? "matrix identity" : "matrices differ");
    }

    // Budget violations propagate; anything else marks this one check failed.
    template <typename F>
    void guarded(const std::string& id, const std::string& inputs, F&& body) {
        try {
            body();
        } catch (const ResourceError&) {
            throw;
        } catch (const std::exception& e) {
            add(id, inputs, false, "completes", std::string("exception: ") + e.what());
        }
    }
};

/* ---- structure of the Iwahori group and its neighbours ---- */

void suite_iwahori(Ctx& c) {
    const Modulus m(c.p, c.n);

    struct TagCase {
        SubgroupTag tag;
        int param;
    };
    std::vector<TagCase> cases = {
        {SubgroupTag::FullSL2, 0},      {SubgroupTag::IwahoriUpper, 0},
        {SubgroupTag::IwahoriLower, 0}, {SubgroupTag::UnipUpper, 0},
        {SubgroupTag::UnipLower, 0},    {SubgroupTag::Diagonal, 0},
        {SubgroupTag::IwahoriIntersection, 0}, {SubgroupTag::LowerBorel, 0}};
    for (int d = 1; d <= c.n; ++d) cases.push_back({SubgroupTag::Congruence, d});

    for (const auto& tc : cases) {
        c.guarded("iwahori/order", model_key(m, tc.tag, tc.param), [&] {
            auto g = c.store.model(m, tc.tag, tc.param);
            const long long want = predicted_order(m, tc.tag, tc.param);
            c.add("iwahori/order", model_key(m, tc.tag, tc.param), g->order() == want,
                  std::to_string(want), std::to_string(g->order()));
        });
    }

    c.guarded("iwahori/vertex-index", "", [&] {
        const long long idx = predicted_order(m, SubgroupTag::FullSL2, 0) /
                              predicted_order(m, SubgroupTag::IwahoriUpper, 0);
        c.add("iwahori/vertex-index", "", idx == c.p + 1, std::to_string(c.p + 1),
              std::to_string(idx));
    });

    c.guarded("iwahori/factorization", "", [&] {
        auto J = c.store.model(m, SubgroupTag::IwahoriUpper);
        auto U = c.store.model(m, SubgroupTag::UnipUpper);
        auto L = c.store.model(m, SubgroupTag::Diagonal);
        auto Ub = c.store.model(m, SubgroupTag::UnipLower);

        long bad_std = 0, bad_opp = 0;
        std::string detail_std, detail_opp;
        for (const auto& g : J->elements) {
            const IwahoriTriple t = iwahori_factorize(g);
            const bool ok = U->contains(t.u) && L->contains(t.l) && Ub->contains(t.ubar) &&
                            t.u * t.l * t.ubar == g && lambda_projection(g) == t.l;
            if (!ok && bad_std++ == 0) detail_std = "element " + g.to_string();

            const IwahoriTriple s = iwahori_factorize_opposite(g);
            const bool ok2 = U->contains(s.u) && L->contains(s.l) && Ub->contains(s.ubar) &&
                             s.ubar * s.l * s.u == g;
            if (!ok2 && bad_opp++ == 0) detail_opp = "element " + g.to_string();
        }
        c.add("iwahori/factorization/standard", "", bad_std == 0, "all elements round-trip",
              bad_std == 0 ? "all elements round-trip"
                           : std::to_string(bad_std) + " failures, first at " + detail_std);
        c.add("iwahori/factorization/opposite", "", bad_opp == 0, "all elements round-trip",
              bad_opp == 0 ? "all elements round-trip"
                           : std::to_string(bad_opp) + " failures, first at " + detail_opp);
        const bool counts = U->order() * L->order() * Ub->order() == J->order();
        c.add("iwahori/factorization/product-count", "", counts,
              "|U| |L| |Ubar| = " + std::to_string(J->order()),
              std::to_string(U->order() * L->order() * Ub->order()));
    });

    c.guarded("iwahori/edge-map", "", [&] {
        const Modulus up(c.p, c.n + 1);
        auto JL = c.store.model(up, SubgroupTag::IwahoriLower);
        auto J = c.store.model(m, SubgroupTag::IwahoriUpper);

        std::vector<long long> hits((size_t)J->order(), 0);
        bool in_range = true;
        for (const auto& g : JL->elements) {
            const int idx = J->element_index(edge_homomorphism_q1(g));
            if (idx < 0) {
                in_range = false;
                break;
            }
            ++hits[(size_t)idx];
        }
        const long long fiber = pow_ll(c.p, 3);
        bool uniform = in_range;
        for (long long h : hits) uniform = uniform && h == fiber;
        c.add("iwahori/edge-map/fibers", "", uniform,
              "surjective with every fiber of size " + std::to_string(fiber),
              uniform ? "surjective with uniform fibers" : "fiber structure broken");

        const long long stride = std::max<long long>(1, JL->order() / 60);
        bool homo = true;
        std::string hdetail;
        for (long long i = 0; i < JL->order() && homo; i += stride) {
            for (long long j = 0; j < JL->order() && homo; j += stride) {
                const auto& x = JL->elements[(size_t)i];
                const auto& y = JL->elements[(size_t)j];
                if (!(edge_homomorphism_q1(x * y) ==
                      edge_homomorphism_q1(x) * edge_homomorphism_q1(y))) {
                    homo = false;
                    hdetail = x.to_string() + " * " + y.to_string();
                }
            }
        }
        c.add("iwahori/edge-map/homomorphism-sample", "stride=" + std::to_string(stride), homo,
              "multiplicative on the sampled pairs",
              homo ? "multiplicative on the sampled pairs" : "fails at " + hdetail);
    });

    c.guarded("iwahori/double-cosets", "", [&] {
        auto J = c.store.model(m, SubgroupTag::IwahoriUpper);
        auto K = c.store.model(m, SubgroupTag::FullSL2);
        const DoubleCosets dc = double_coset_decomposition(*J, *K);

        std::vector<long long> sizes = dc.coset_size;
        std::sort(sizes.begin(), sizes.end());
        std::vector<long long> want = {J->order(), (long long)c.p * J->order()};
        std::sort(want.begin(), want.end());

        bool ok = dc.coset_rep.size() == 2 && sizes == want;
        if (ok) {
            const int cw = dc.coset_of[(size_t)K->element_index(ResidueMatrix::weyl(m))];
            const int ce = dc.coset_of[(size_t)K->element_index(ResidueMatrix::identity(m))];
            ok = cw != ce;
        }
        c.add("iwahori/double-cosets", "", ok, "2 cosets of sizes |J| and p|J|, w outside J",
              ok ? "2 cosets of sizes |J| and p|J|, w outside J"
                 : std::to_string(dc.coset_rep.size()) + " cosets");
    });
}

/* ---- character tables ---- */

void table_checks(Ctx& c, Modulus m, SubgroupTag tag) {
    const std::string key = model_key(m, tag, 0);

    c.guarded("characters/orthogonality/rows", key, [&] {
        auto tab = c.store.table(m, tag);
        const long r = (long)tab->irr.size();
        bool ok = true;
        std::string detail = "all pairs orthonormal";
        for (long i = 0; i < r && ok; ++i) {
            for (long j = i; j < r && ok; ++j) {
                const Rational got = inner_product(tab->irr[(size_t)i], tab->irr[(size_t)j]);
                const Rational want = i == j ? 1 : 0;
                if (got != want) {
                    ok = false;
                    detail = "(" + std::to_string(i) + "," + std::to_string(j) + ") = " + disp(got);
                }
            }
        }
        c.add("characters/orthogonality/rows", key, ok, "all pairs orthonormal", detail);
    });

    c.guarded("characters/orthogonality/columns", key, [&] {
        auto tab = c.store.table(m, tag);
        const GroupModel& g = *tab->group;
        const long r = (long)tab->irr.size();
        bool ok = true;
        std::string detail = "all class pairs orthogonal";
        for (long k = 0; k < g.class_count() && ok; ++k) {
            for (long l = k; l < g.class_count() && ok; ++l) {
                Cyclotomic s;
                for (long i = 0; i < r; ++i)
                    s += tab->irr[(size_t)i].value(k) * tab->irr[(size_t)i].value(l).conjugate();
                const Cyclotomic want =
                    k == l ? Cyclotomic(Rational(g.order(), g.class_size[(size_t)k]))
                           : Cyclotomic();
                if (!(s == want)) {
                    ok = false;
                    detail = "classes (" + std::to_string(k) + "," + std::to_string(l) +
                             ") = " + disp(s);
                }
            }
        }
        c.add("characters/orthogonality/columns", key, ok, "all class pairs orthogonal", detail);
    });

    c.guarded("characters/degree-sum", key, [&] {
        auto tab = c.store.table(m, tag);
        Rational sum = 0;
        bool integral = true;
        for (const auto& chi : tab->irr) {
            const Rational d = chi.degree().rational_part();
            integral = integral && boost::multiprecision::denominator(d) == 1 && d > 0;
            sum += d * d;
        }
        const bool ok = integral && sum == tab->group->order();
        c.add("characters/degree-sum", key, ok,
              "positive integer degrees with square sum " + std::to_string(tab->group->order()),
              disp(sum));
    });
}

void suite_characters(Ctx& c) {
    const Modulus m(c.p, c.n), up(c.p, c.n + 1);
    table_checks(c, m, SubgroupTag::Diagonal);
    table_checks(c, m, SubgroupTag::IwahoriUpper);
    table_checks(c, m, SubgroupTag::FullSL2);
    table_checks(c, up, SubgroupTag::FullSL2);

    if (c.p == 3) {
        c.guarded("characters/depth-one-degrees", "", [&] {
            auto tab = c.store.table(Modulus(3, 1), SubgroupTag::FullSL2);
            std::vector<long long> got;
            for (const auto& chi : tab->irr)
                got.push_back(
                    boost::multiprecision::numerator(chi.degree().rational_part())
                        .convert_to<long long>());
            std::sort(got.begin(), got.end());
            const std::vector<long long> want = {1, 1, 1, 2, 2, 2, 3};
            std::string gs;
            for (long long v : got) gs += (gs.empty() ? "" : ",") + std::to_string(v);
            c.add("characters/depth-one-degrees", "", got == want, "1,1,1,2,2,2,3", gs);
        });
    }

    c.guarded("characters/torus", "", [&] {
        auto L = c.store.model(m, SubgroupTag::Diagonal);
        auto tabL = c.store.table(m, SubgroupTag::Diagonal);
        const auto rhos = all_l_characters(c.p, c.n);

        const bool count_ok = (long)rhos.size() == (long)tabL->irr.size() &&
                              (long long)rhos.size() == L->order();
        c.add("characters/torus/count", "", count_ok,
              "phi(p^n) characters matching the table size", std::to_string(rhos.size()));

        bool found = true, dual = true;
        for (const auto& rho : rhos) {
            const ClassFunction ch = rho.as_class_function(L);
            found = found && tabL->index_of(ch) >= 0;
            const ClassFunction chw = rho.weyl_dual().as_class_function(L);
            dual = dual && first_difference(weyl_twist(ch), chw).empty() &&
                   first_difference(ch.conjugated(), chw).empty();
        }
        c.add("characters/torus/matches-table", "", found, "every character is a table row",
              found ? "every character is a table row" : "missing row");
        c.add("characters/torus/weyl-dual-is-inverse", "", dual,
              "twist by w = complex conjugate = index negation",
              dual ? "twist by w = complex conjugate = index negation" : "mismatch");
    });
}

/* ---- normalized induction and restriction ---- */

void suite_parahoric(Ctx& c) {
    const Modulus m(c.p, c.n);
    auto L = c.store.model(m, SubgroupTag::Diagonal);
    auto J = c.store.model(m, SubgroupTag::IwahoriUpper);
    auto tabJ = c.store.table(m, SubgroupTag::IwahoriUpper);
    const auto rhos = all_l_characters(c.p, c.n);

    c.guarded("parahoric/conductor", "", [&] {
        bool ok = true;
        long trivial_count = 0;
        for (const auto& rho : rhos) {
            const int cc = rho.conductor();
            if (rho.is_trivial()) {
                ++trivial_count;
                ok = ok && cc == 0;
            } else {
                ok = ok && cc >= 1 && cc <= c.n;
            }
            ok = ok && rho.weyl_dual().conductor() == cc;
        }
        ok = ok && trivial_count == 1;
        c.add("parahoric/conductor", "", ok,
              "0 exactly for the trivial character, otherwise in 1..n, w-invariant",
              ok ? "0 exactly for the trivial character, otherwise in 1..n, w-invariant"
                 : "profile broken");
    });

    std::vector<ClassFunction> chr, iro, lam;
    for (const auto& rho : rhos) chr.push_back(rho.as_class_function(L));

    for (size_t k = 0; k < rhos.size(); ++k) {
        const std::string in = "rho=" + std::to_string(k);
        const LCharacter& rho = rhos[k];
        const ClassFunction i1 = parahoric_induce(c.store, rho);
        iro.push_back(i1);
        lam.push_back(iwahori_average(c.store, chr[k]));

        const Rational z = z_value(rho);
        const Rational deg = i1.degree().rational_part();
        c.add("parahoric/z-value", in, z * deg == 1 && (rho.is_trivial() ? z == 1 : true),
              "z(rho) = deg rho / deg(i rho)", "z=" + disp(z) + " deg=" + disp(deg));

        const long long cef = std::max(rho.conductor(), 1);
        c.add("parahoric/induce/degree", in, deg == pow_ll(c.p, (int)cef - 1),
              "p^(conductor-1) = " + std::to_string(pow_ll(c.p, (int)cef - 1)), disp(deg));

        c.add("parahoric/induce/norm-one", in, inner_product(i1, i1) == 1, "1",
              disp(inner_product(i1, i1)));

        c.guarded("parahoric/induce/two-routes", in, [&] {
            c.equal_check("parahoric/induce/two-routes", in, i1,
                          parahoric_induce_via_congruence(c.store, rho));
        });
        c.equal_check("parahoric/induce/wing-symmetry", in, i1,
                      parahoric_induce(c.store, rho, true));

        c.add("parahoric/average/identity-value", in, lam[k].degree() == Cyclotomic((long long)1),
              "1", disp(lam[k].degree()));
        c.equal_check("parahoric/average/recovers-scaled", in, torus_average(c.store, i1),
                      chr[k].scaled(z));
        c.guarded("parahoric/restrict/section", in, [&] {
            c.equal_check("parahoric/restrict/section", in,
                          parahoric_restrict(c.store, i1), chr[k]);
        });
        c.equal_check("parahoric/contragredient", in, i1.conjugated(),
                      parahoric_induce(c.store, rho.weyl_dual()));

        c.guarded("parahoric/intertwining", in, [&] {
            const ClassFunction a =
                induce(diagonal_extension(c.store, rho, SubgroupTag::LowerBorel), J);
            const ClassFunction b =
                induce(diagonal_extension(c.store, rho, SubgroupTag::Congruence, c.n), J);
            const Rational ab = inner_product(a, b);
            const Rational ma = inner_product(a, i1);
            const Rational mb = inner_product(b, i1);
            c.add("parahoric/intertwining", in, ab == 1 && ma == 1 && mb == 1,
                  "intertwining number 1, i rho once on each side",
                  "pairing=" + disp(ab) + " mult=" + disp(ma) + "," + disp(mb));
        });
    }

    c.guarded("parahoric/adjointness", "", [&] {
        std::vector<ClassFunction> avgJ;
        for (const auto& pi : tabJ->irr) avgJ.push_back(torus_average(c.store, pi));
        bool ok = true;
        std::string detail = "all pairs agree";
        for (size_t k = 0; k < rhos.size() && ok; ++k) {
            for (size_t j = 0; j < tabJ->irr.size() && ok; ++j) {
                const Rational lhs = inner_product(lam[k], tabJ->irr[j]);
                const Rational rhs = inner_product(chr[k], avgJ[j]);
                if (lhs != rhs) {
                    ok = false;
                    detail = "rho=" + std::to_string(k) + " pi=" + std::to_string(j) + ": " +
                             disp(lhs) + " vs " + disp(rhs);
                }
            }
        }
        c.add("parahoric/adjointness", "", ok, "all pairs agree", detail);
    });

    long nonzero = 0;
    for (size_t j = 0; j < tabJ->irr.size(); ++j) {
        const std::string in = "pi=" + std::to_string(j);
        c.guarded("parahoric/restrict/schur", in, [&] {
            const ClassFunction& pi = tabJ->irr[j];
            const ClassFunction r = parahoric_restrict(c.store, pi);
            const ClassFunction upv = upper_invariants(c.store, pi);
            const ClassFunction lov = lower_invariants(c.store, pi);

            const Rational pairing = inner_product(lov, upv);
            bool ok = pairing == 0 || pairing == 1;
            std::string got = "wing pairing " + disp(pairing);

            if (!r.is_zero()) {
                ++nonzero;
                const auto coords = torus_coordinates(c.store, r);
                long hit = -1;
                long hits = 0;
                for (size_t t = 0; t < coords.size(); ++t) {
                    if (coords[t] != 0) {
                        ++hits;
                        hit = (long)t;
                        if (coords[t] != 1) hits = -1000;
                    }
                }
                const bool single = hits == 1;
                ok = ok && single;
                got += single ? ", restriction = rho_" + std::to_string(hit)
                              : ", restriction not a single character";
                if (single) {
                    ok = ok && first_difference(parahoric_induce(c.store, rhos[(size_t)hit]), pi)
                                   .empty();
                    ok = ok && first_difference(upv, lov).empty();
                    got += ", recovers pi, wings agree";
                }
            } else {
                got += ", restriction 0";
            }
            c.add("parahoric/restrict/schur", in, ok,
                  "pairing in {0,1}; restriction 0 or one character recovering pi", got);
        });
    }
    c.add("parahoric/restrict/nonzero-count", "", nonzero == (long)rhos.size(),
          std::to_string(rhos.size()), std::to_string(nonzero));

    if (c.n == 2) {
        c.guarded("parahoric/remark", "", [&] {
            const Modulus m1(c.p, 1);
            auto B = c.store.model(m1, SubgroupTag::IwahoriUpper);
            auto N = c.store.model(m1, SubgroupTag::UnipUpper);

            std::vector<Cyclotomic> vals((size_t)N->class_count());
            for (int cls = 0; cls < N->class_count(); ++cls)
                vals[(size_t)cls] =
                    Cyclotomic::root_of_unity(c.p, N->representative(cls).b % c.p);
            const ClassFunction psi(N, std::move(vals));
            const ClassFunction pi = inflate(induce(psi, B), J);

            c.add("parahoric/remark/upper-invariants-vanish", "",
                  upper_invariants(c.store, pi).is_zero(), "0",
                  upper_invariants(c.store, pi).is_zero() ? "0" : "nonzero");
            const ClassFunction r = parahoric_restrict(c.store, pi);
            c.add("parahoric/remark/restriction-zero", "", r.is_zero(), "0",
                  r.is_zero() ? "0" : "nonzero");

            auto I = c.store.model(m, SubgroupTag::IwahoriIntersection);
            const Rational dim = inner_product(restrict_to(pi, I), trivial_character(I));
            c.add("parahoric/remark/intersection-invariants", "", dim == 1, "1", disp(dim));
        });
    }

    if (c.n >= 2) {
        const Modulus prev(c.p, c.n - 1);
        auto Lprev = c.store.model(prev, SubgroupTag::Diagonal);
        auto Kn = c.store.model(m, SubgroupTag::FullSL2);
        const auto sigmas = all_l_characters(c.p, c.n - 1);
        for (size_t s = 0; s < sigmas.size(); ++s) {
            const std::string in = "sigma=" + std::to_string(s);
            c.guarded("parahoric/depth-stability", in, [&] {
                const ClassFunction lift = inflate(sigmas[s].as_class_function(Lprev), L);
                const auto coords = torus_coordinates(c.store, lift);
                long hit = -1;
                long hits = 0;
                for (size_t t = 0; t < coords.size(); ++t)
                    if (coords[t] != 0) {
                        ++hits;
                        hit = (long)t;
                    }
                if (hits != 1 || coords[(size_t)hit] != 1)
                    throw InternalError("inflated torus character is not a basis character");
                const LCharacter& up = rhos[(size_t)hit];
                c.add("parahoric/depth-stability/conductor", in,
                      up.conductor() == sigmas[s].conductor(),
                      std::to_string(sigmas[s].conductor()), std::to_string(up.conductor()));
                c.equal_check("parahoric/depth-stability/iwahori", in,
                              parahoric_induce(c.store, up),
                              inflate(parahoric_induce(c.store, sigmas[s]), J));
                c.equal_check("parahoric/depth-stability/vertex", in,
                              vertex_induce_standard(c.store, up),
                              inflate(vertex_induce_standard(c.store, sigmas[s]), Kn));
            });
        }
    }
}

/* ---- the two vertex inductions ---- */

void suite_mackey(Ctx& c) {
    const Modulus m(c.p, c.n);
    auto tabK = c.store.table(m, SubgroupTag::FullSL2);
    auto tabKp = c.store.table(Modulus(c.p, c.n + 1), SubgroupTag::FullSL2);
    const auto rhos = all_l_characters(c.p, c.n);
    const long phi = (long)rhos.size();
    const auto wdual = [phi](long k) { return (phi - k) % phi; };

    std::vector<ClassFunction> vs, vo;
    for (const auto& rho : rhos) {
        vs.push_back(vertex_induce_standard(c.store, rho));
        vo.push_back(vertex_induce_opposite(c.store, rho));
    }

    for (long a = 0; a < phi; ++a) {
        for (long b = 0; b < phi; ++b) {
            const std::string in = "rho=" + std::to_string(a) + " tau=" + std::to_string(b);
            const Rational want = (a == b ? 1 : 0) + (a == wdual(b) ? 1 : 0);
            const Rational g1 = inner_product(vs[(size_t)a], vs[(size_t)b]);
            c.add("mackey/pairs/standard", in, g1 == want, disp(want), disp(g1));
            const Rational g2 = inner_product(vo[(size_t)a], vo[(size_t)b]);
            c.add("mackey/pairs/opposite", in, g2 == want, disp(want), disp(g2));
        }
    }

    long split_count = 0;
    for (long k = 0; k < phi; ++k) {
        const std::string in = "rho=" + std::to_string(k);
        const bool self = k == wdual(k);
        if (self) ++split_count;
        c.guarded("mackey/dichotomy", in, [&] {
            const auto pattern = [&](const VirtualCharacter& d) {
                long ones = 0;
                bool clean = d.is_genuine();
                for (const auto& v : d.coords) {
                    if (v == 0) continue;
                    if (v == 1)
                        ++ones;
                    else
                        clean = false;
                }
                return std::make_pair(clean, ones);
            };
            const auto [cK, onesK] = pattern(decompose(vs[(size_t)k], *tabK));
            const auto [cKp, onesKp] = pattern(decompose(vo[(size_t)k], *tabKp));
            const long want = self ? 2 : 1;
            const bool ok = cK && cKp && onesK == want && onesKp == want;
            c.add("mackey/dichotomy", in, ok,
                  self ? "splits into two distinct irreducibles on both vertices"
                       : "irreducible on both vertices",
                  "multiplicity-one constituents: " + std::to_string(onesK) + " and " +
                      std::to_string(onesKp));
        });

        c.equal_check("mackey/weyl-symmetric/standard", in, vs[(size_t)k],
                      vs[(size_t)wdual(k)]);
        c.equal_check("mackey/weyl-symmetric/opposite", in, vo[(size_t)k],
                      vo[(size_t)wdual(k)]);

        const long long cef = std::max(rhos[(size_t)k].conductor(), 1);
        const long long want_deg = (c.p + 1) * pow_ll(c.p, (int)cef - 1);
        const bool deg_ok = vs[(size_t)k].degree() == Cyclotomic(want_deg) &&
                            vo[(size_t)k].degree() == Cyclotomic(want_deg);
        c.add("mackey/degree", in, deg_ok, "(p+1) p^(conductor-1) = " + std::to_string(want_deg),
              disp(vs[(size_t)k].degree()) + " and " + disp(vo[(size_t)k].degree()));
    }
    c.add("mackey/self-dual-count", "", split_count == 2, "2", std::to_string(split_count));
}

/* ---- alternating-word moments ---- */

void suite_dihedral(Ctx& c) {
    const Modulus m(c.p, c.n);
    auto J = c.store.model(m, SubgroupTag::IwahoriUpper);
    const auto rhos = all_l_characters(c.p, c.n);

    for (size_t k = 0; k < rhos.size(); ++k) {
        const std::string in = "rho=" + std::to_string(k);
        c.guarded("dihedral/recursion", in, [&] {
            const ClassFunction pi = parahoric_induce(c.store, rhos[k]);
            const auto mo =
                dihedral_moments(c.store, pi, c.opt.dihedral_k_max, c.opt.max_words);
            const Cyclotomic z{z_value(rhos[k])};
            bool rec = true;
            for (size_t t = 0; t + 1 < mo.size(); ++t) rec = rec && mo[t + 1] == z * mo[t];
            std::string got = "m =";
            for (const auto& v : mo) got += " " + disp(v);
            c.add("dihedral/recursion", in, rec,
                  "m_(k+1) = z m_k with z = " + disp(z_value(rhos[k])), got);
            if (rhos[k].is_trivial()) {
                bool ones = true;
                for (const auto& v : mo) ones = ones && v == Cyclotomic((long long)1);
                c.add("dihedral/trivial-moments", in, ones, "all 1", got);
            }
        });
    }

    if (c.n == 2) {
        c.guarded("dihedral/remark-first-moment", "", [&] {
            const Modulus m1(c.p, 1);
            auto B = c.store.model(m1, SubgroupTag::IwahoriUpper);
            auto N = c.store.model(m1, SubgroupTag::UnipUpper);
            std::vector<Cyclotomic> vals((size_t)N->class_count());
            for (int cls = 0; cls < N->class_count(); ++cls)
                vals[(size_t)cls] =
                    Cyclotomic::root_of_unity(c.p, N->representative(cls).b % c.p);
            const ClassFunction pi = inflate(induce(ClassFunction(N, std::move(vals)), B), J);
            const auto mo = dihedral_moments(c.store, pi, 1, c.opt.max_words);
            c.add("dihedral/remark-first-moment", "", mo[0].is_zero(), "0", disp(mo[0]));
        });
    }
}

/* ---- chain complexes and the chain maps ---- */

void suite_chains(Ctx& c) {
    const Modulus m(c.p, c.n), up(c.p, c.n + 1);
    const ChainMatrices cm = build_chain_matrices(c.store, c.p, c.n);
    const long phi2 = 2 * cm.torus_rank;

    c.matrix_check("chains/weyl/involution-deg0",
                   matrix_product(cm.torus_weyl0, cm.torus_weyl0), identity_matrix(phi2));
    c.matrix_check("chains/weyl/involution-deg1",
                   matrix_product(cm.torus_weyl1, cm.torus_weyl1), identity_matrix(phi2));
    c.matrix_check("chains/weyl/boundary-equivariance",
                   matrix_product(cm.torus_boundary_mat, cm.torus_weyl1),
                   matrix_product(cm.torus_weyl0, cm.torus_boundary_mat));

    c.matrix_check("chains/square/induction",
                   matrix_product(cm.arithmetic_boundary_mat, cm.pind1),
                   matrix_product(cm.pind0, cm.torus_boundary_mat));
    c.matrix_check("chains/square/restriction",
                   matrix_product(cm.pres0, cm.arithmetic_boundary_mat),
                   matrix_product(cm.torus_boundary_mat_up, cm.pres1));

    const IntMatrix infl_pair = block_diagonal(cm.infl, cm.infl);
    c.matrix_check("chains/round-trip-deg1", matrix_product(cm.pres1, cm.pind1),
                   matrix_product(infl_pair, matrix_sum(identity_matrix(phi2), cm.torus_weyl1)));
    c.matrix_check("chains/round-trip-deg0", matrix_product(cm.pres0, cm.pind0),
                   matrix_product(infl_pair, matrix_sum(identity_matrix(phi2), cm.torus_weyl0)));

    {
        bool ok = true;
        for (long i = 0; i < (long)cm.arithmetic_boundary_mat.size() && ok; ++i)
            for (long long v : cm.arithmetic_boundary_mat[(size_t)i])
                if (i < cm.vertex_rank ? v < 0 : v > 0) {
                    ok = false;
                    break;
                }
        c.add("chains/boundary/sign-structure", "", ok,
              "standard block nonnegative, opposite block nonpositive",
              ok ? "standard block nonnegative, opposite block nonpositive" : "sign broken");
    }

    auto tabJ = c.store.table(m, SubgroupTag::IwahoriUpper);
    auto Lup = c.store.model(up, SubgroupTag::Diagonal);
    for (size_t j = 0; j < tabJ->irr.size(); ++j) {
        const std::string in = "pi=" + std::to_string(j);
        c.guarded("chains/key-identity", in, [&] {
            const ClassFunction& pi = tabJ->irr[j];
            const ClassFunction rhs =
                upper_invariants(c.store, pi) + weyl_twist(lower_invariants(c.store, pi));
            c.equal_check("chains/key-identity", in,
                          upper_invariants(c.store, edge_induce_standard(c.store, pi)), rhs);
            c.equal_check("chains/mirror-identity", in,
                          upper_invariants(c.store, edge_induce_opposite(c.store, pi)),
                          inflate(rhs, Lup));
        });
    }

    c.guarded("chains/h1", "", [&] {
        const HomologyReport hr = homology_report(c.store, c.p, c.n);
        c.add("chains/h1/cycles-in-kernel", "", hr.cycles_in_kernel,
              "every listed cycle is a kernel vector",
              hr.cycles_in_kernel ? "every listed cycle is a kernel vector" : "cycle escapes");
        c.add("chains/h1/cycles-independent", "", hr.cycles_independent,
              "listed cycles independent",
              hr.cycles_independent ? "listed cycles independent" : "dependent");
        std::string got = "kernel=" + std::to_string(hr.kernel_dim) +
                          " cycles=" + std::to_string(hr.expected_cycles);
        if (hr.kernel_dim > hr.expected_cycles)
            got += " warning: kernel exceeds the listed cycles";
        c.add("chains/h1/kernel-dimension", "", hr.kernel_dim >= hr.expected_cycles,
              "kernel at least the cycle count, excess flagged", got);

        if (hr.expected_cycles > 0) {
            IntMatrix images;
            bool formula = true;
            for (size_t i = 0; i < hr.cycle_coords.size(); ++i) {
                const auto img = mat_vec(cm.pres1, hr.cycle_coords[i]);
                images.push_back(img);

                const long k = (long)hr.orbit_indices[i];
                const long kw = (cm.torus_rank - k) % cm.torus_rank;
                std::vector<long long> base((size_t)cm.torus_rank, 0);
                base[(size_t)k] = 1;
                base[(size_t)kw] = -1;
                const auto top = mat_vec(cm.infl, base);
                std::vector<long long> want;
                want.insert(want.end(), top.begin(), top.end());
                for (long long v : top) want.push_back(-v);
                formula = formula && img == want;
            }
            c.add("chains/pres-cycle-formula", "", formula,
                  "restriction of each cycle is (rho - rho^w, rho^w - rho) one level up",
                  formula ? "matches" : "differs");
            c.add("chains/pres-injective-on-cycles", "",
                  integer_matrix_rank(images) == hr.expected_cycles,
                  "rank " + std::to_string(hr.expected_cycles),
                  "rank " + std::to_string(integer_matrix_rank(images)));
        }
    });
}

using SuiteFn = void (*)(Ctx&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> reg = {
        {"iwahori", suite_iwahori},   {"characters", suite_characters},
        {"parahoric", suite_parahoric}, {"mackey", suite_mackey},
        {"dihedral", suite_dihedral}, {"chains", suite_chains},
    };
    return reg;
}

std::vector<CheckResult> run_one(TableStore& store, const std::string& name, SuiteFn fn, int p,
                                 int n, const VerifyOptions& opt) {
    Ctx ctx{store, p, n, opt, {}};
    try {
        fn(ctx);
    } catch (const ResourceError&) {
        throw;
    } catch (const std::exception& e) {
        ctx.add(name + "/aborted", "", false, "suite completes",
                std::string("exception: ") + e.what());
    }
    return std::move(ctx.checks);
}

}  // namespace

long SuiteReport::failed_count() const {
    long f = 0;
    for (const auto& ck : checks)
        if (!ck.pass) ++f;
    return f;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : suite_registry()) out.push_back(name);
        return out;
    }();
    return names;
}

SuiteReport run_suite(TableStore& store, const std::string& suite, int p, int n,
                      const VerifyOptions& opt) {
    if (n < 1) throw DomainError("depth must be at least 1");
    (void)Modulus(p, n + 1);  // validates p and the deeper level up front

    SuiteReport rep;
    rep.suite = suite;
    rep.p = p;
    rep.n = n;

    if (suite == "all") {
        const auto& reg = suite_registry();
        if (opt.jobs > 1) {
            std::vector<std::future<std::vector<CheckResult>>> slots;
            for (const auto& [name, fn] : reg)
                slots.push_back(std::async(std::launch::async, run_one, std::ref(store), name,
                                           fn, p, n, std::cref(opt)));
            for (auto& slot : slots) {
                auto part = slot.get();
                rep.checks.insert(rep.checks.end(), std::make_move_iterator(part.begin()),
                                  std::make_move_iterator(part.end()));
            }
        } else {
            for (const auto& [name, fn] : reg) {
                auto part = run_one(store, name, fn, p, n, opt);
                rep.checks.insert(rep.checks.end(), std::make_move_iterator(part.begin()),
                                  std::make_move_iterator(part.end()));
            }
        }
        return rep;
    }

    for (const auto& [name, fn] : suite_registry()) {
        if (name == suite) {
            rep.checks = run_one(store, name, fn, p, n, opt);
            return rep;
        }
    }
    throw DomainError("unknown suite: " + suite);
}

std::string render_report(const SuiteReport& r) {
    std::ostringstream os;
    os << "verification suite=" << r.suite << " p=" << r.p << " n=" << r.n << '\n';
    for (const auto& ck : r.checks) {
        os << (ck.pass ? "ok   " : "FAIL ") << ck.id;
        if (!ck.inputs.empty()) os << " [" << ck.inputs << "]";
        os << " | expected " << ck.expected << " | got " << ck.got << '\n';
    }
    os << "checks " << r.checks.size() << " failures " << r.failed_count() << '\n';
    os << "result " << (r.pass() ? "pass" : "fail") << '\n';
    return os.str();
}

}  // namespace parahoric
