// Acceptance gate: one line per criterion, pass/fail, nonzero exit on any
// failure. Criterion 10 drives the installed command-line binary, whose path
// arrives as argv[1].

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "parahoric/cache.hpp"
#include "parahoric/errors.hpp"
#include "parahoric/homology.hpp"
#include "parahoric/parahoric.hpp"
#include "parahoric/table_store.hpp"
#include "parahoric/verify.hpp"

using namespace parahoric;

namespace {

int g_failures = 0;

void report(int number, const std::string& label, bool pass, const std::string& detail = "") {
    std::ostringstream os;
    os << (pass ? "PASS" : "FAIL") << " criterion-" << (number < 10 ? "0" : "")
       << number << " " << label;
    if (!detail.empty()) os << " (" << detail << ")";
    std::cout << os.str() << std::endl;
    if (!pass) ++g_failures;
}

template <typename F>
void criterion(int number, const std::string& label, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(number, label, false, std::string("exception: ") + e.what());
    }
}

long long degree_of(const ClassFunction& chi) {
    return boost::multiprecision::numerator(chi.degree().rational_part())
        .convert_to<long long>();
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

ClassFunction counterexample_rep(TableStore& store) {
    const Modulus m1(3, 1);
    auto B = store.model(m1, SubgroupTag::IwahoriUpper);
    auto N = store.model(m1, SubgroupTag::UnipUpper);
    std::vector<Cyclotomic> vals((size_t)N->class_count());
    for (long cls = 0; cls < N->class_count(); ++cls)
        vals[(size_t)cls] = Cyclotomic::root_of_unity(3, N->representative(cls).b % 3);
    auto J2 = store.model(Modulus(3, 2), SubgroupTag::IwahoriUpper);
    return inflate(induce(ClassFunction(N, std::move(vals)), B), J2);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const auto scratch =
        std::filesystem::temp_directory_path() / "parahoric-acceptance-cache";
    std::filesystem::remove_all(scratch);
    TableStore store(scratch.string());
    const Modulus m2(3, 2);

    /* 1: subgroup structure at level two */
    criterion(1, "group structure and triangular factorization", [&] {
        auto J = store.model(m2, SubgroupTag::IwahoriUpper);
        auto U = store.model(m2, SubgroupTag::UnipUpper);
        auto L = store.model(m2, SubgroupTag::Diagonal);
        auto Ub = store.model(m2, SubgroupTag::UnipLower);
        bool ok = J->order() == 162 && U->order() == 9 && L->order() == 6 &&
                  Ub->order() == 3 && store.model(m2, SubgroupTag::FullSL2)->order() == 648;
        long round_trips = 0;
        for (const auto& g : J->elements) {
            const IwahoriTriple t = iwahori_factorize(g);
            if (U->contains(t.u) && L->contains(t.l) && Ub->contains(t.ubar) &&
                t.u * t.l * t.ubar == g)
                ++round_trips;
        }
        ok = ok && round_trips == 162;
        report(1, "group structure and triangular factorization", ok,
               std::to_string(round_trips) + "/162 factorizations");
    });

    /* 2: exact character tables up to the level-three full group */
    criterion(2, "exact character tables", [&] {
        const std::vector<std::pair<Modulus, SubgroupTag>> targets = {
            {Modulus(3, 1), SubgroupTag::FullSL2},   {m2, SubgroupTag::Diagonal},
            {m2, SubgroupTag::IwahoriUpper},         {m2, SubgroupTag::FullSL2},
            {Modulus(3, 3), SubgroupTag::FullSL2},
        };
        bool ok = true;
        std::string detail;
        for (const auto& [mm, tag] : targets) {
            auto tab = store.table(mm, tag);
            Rational sum = 0;
            for (const auto& chi : tab->irr) {
                const Rational d = chi.degree().rational_part();
                sum += d * d;
            }
            bool here = sum == tab->group->order();
            for (size_t i = 0; i < tab->irr.size() && here; ++i)
                for (size_t j = i; j < tab->irr.size() && here; ++j)
                    here = inner_product(tab->irr[i], tab->irr[j]) ==
                           Rational(i == j ? 1 : 0);
            if (!here) detail = "failure at " + model_key(mm, tag, 0);
            ok = ok && here;
        }
        std::vector<long long> degs;
        for (const auto& chi : store.table(Modulus(3, 1), SubgroupTag::FullSL2)->irr)
            degs.push_back(degree_of(chi));
        std::sort(degs.begin(), degs.end());
        ok = ok && degs == std::vector<long long>{1, 1, 1, 2, 2, 2, 3};
        report(2, "exact character tables", ok,
               ok ? "orthogonality and degree sums exact through p3N3" : detail);
    });

    /* 3: normalizing factors */
    criterion(3, "normalizing factors", [&] {
        const auto rhos = all_l_characters(3, 2);
        bool ok = true;
        std::string listing;
        for (const auto& rho : rhos) {
            const Rational z = z_value(rho);
            const Rational deg = parahoric_induce(store, rho).degree().rational_part();
            ok = ok && z * deg == 1;
            const int cc = rho.conductor();
            ok = ok && z == (cc <= 1 ? Rational(1) : Rational(1, pow_ll(3, cc - 1)));
            listing += (listing.empty() ? "" : ",") + z.str();
        }
        report(3, "normalizing factors", ok, "z = " + listing);
    });

    /* 4: normalized induction */
    criterion(4, "normalized induction is irreducible with the right degree", [&] {
        const auto rhos = all_l_characters(3, 2);
        bool ok = true;
        for (const auto& rho : rhos) {
            const ClassFunction a = parahoric_induce(store, rho);
            const ClassFunction b = parahoric_induce_via_congruence(store, rho);
            ok = ok && a == b && inner_product(a, a) == 1;
            ok = ok && degree_of(a) == pow_ll(3, std::max(rho.conductor(), 1) - 1);
        }
        report(4, "normalized induction is irreducible with the right degree", ok,
               "both construction routes, all 6 characters");
    });

    /* 5: restriction */
    criterion(5, "restriction is a clean one-sided inverse", [&] {
        const auto rhos = all_l_characters(3, 2);
        auto L = store.model(m2, SubgroupTag::Diagonal);
        bool ok = true;
        for (const auto& rho : rhos)
            ok = ok && parahoric_restrict(store, parahoric_induce(store, rho)) ==
                           rho.as_class_function(L);

        auto tabJ = store.table(m2, SubgroupTag::IwahoriUpper);
        long nonzero = 0;
        for (const auto& pi : tabJ->irr) {
            const ClassFunction r = parahoric_restrict(store, pi);
            if (r.is_zero()) continue;
            ++nonzero;
            const auto coords = torus_coordinates(store, r);
            long ones = 0;
            for (const auto& v : coords) {
                if (v == 1) ++ones;
                else if (v != 0) ones = -100;
            }
            ok = ok && ones == 1;
        }
        ok = ok && nonzero == 6;

        const ClassFunction pi = counterexample_rep(store);
        const bool remark_zero = parahoric_restrict(store, pi).is_zero();
        auto I = store.model(m2, SubgroupTag::IwahoriIntersection);
        std::vector<Cyclotomic> ones_v((size_t)I->class_count(), Cyclotomic((long long)1));
        const Rational fixed = inner_product(restrict_to(pi, I), ClassFunction(I, ones_v));
        ok = ok && remark_zero && fixed >= 1;
        report(5, "restriction is a clean one-sided inverse", ok,
               "sections recovered, vanishing example has intersection invariants " +
                   fixed.str());
    });

    /* 6: the two vertex inductions */
    criterion(6, "vertex induction intertwining numbers", [&] {
        const auto rhos = all_l_characters(3, 2);
        auto tabK = store.table(m2, SubgroupTag::FullSL2);
        std::vector<ClassFunction> vs, vo;
        for (const auto& rho : rhos) {
            vs.push_back(vertex_induce_standard(store, rho));
            vo.push_back(vertex_induce_opposite(store, rho));
        }
        bool ok = true;
        for (size_t a = 0; a < 6; ++a)
            for (size_t b = 0; b < 6; ++b) {
                const Rational want = (a == b ? 1 : 0) + (a == (6 - b) % 6 ? 1 : 0);
                ok = ok && inner_product(vs[a], vs[b]) == want &&
                     inner_product(vo[a], vo[b]) == want;
            }
        long split = 0, irred = 0;
        for (size_t k = 0; k < 6; ++k) {
            const Rational norm = inner_product(vs[k], vs[k]);
            if (norm == 2) {
                ++split;
                const VirtualCharacter d = decompose(vs[k], *tabK);
                long ones = 0;
                for (const auto& v : d.coords)
                    if (v == 1) ++ones;
                ok = ok && d.is_genuine() && ones == 2;
            } else if (norm == 1) {
                ++irred;
            }
        }
        ok = ok && split == 2 && irred == 4;
        report(6, "vertex induction intertwining numbers", ok,
               "36 ordered pairs on each side, 2 split + 4 irreducible");
    });

    /* 7: commuting squares */
    criterion(7, "chain maps commute with the boundaries", [&] {
        bool ok = true;
        for (int n = 1; n <= 2; ++n) {
            const ChainMatrices cm = build_chain_matrices(store, 3, n);
            ok = ok && matrix_product(cm.arithmetic_boundary_mat, cm.pind1) ==
                           matrix_product(cm.pind0, cm.torus_boundary_mat);
            ok = ok && matrix_product(cm.pres0, cm.arithmetic_boundary_mat) ==
                           matrix_product(cm.torus_boundary_mat_up, cm.pres1);
            const IntMatrix infl2 = block_diagonal(cm.infl, cm.infl);
            const long dim = 2 * cm.torus_rank;
            ok = ok && matrix_product(cm.pres1, cm.pind1) ==
                           matrix_product(infl2,
                                          matrix_sum(identity_matrix(dim), cm.torus_weyl1));
            ok = ok && matrix_product(cm.pres0, cm.pind0) ==
                           matrix_product(infl2,
                                          matrix_sum(identity_matrix(dim), cm.torus_weyl0));
        }
        report(7, "chain maps commute with the boundaries", ok,
               "both squares and both round-trips, levels 1 and 2");
    });

    /* 8: kernel of the degree-one boundary */
    criterion(8, "boundary kernel matches the two-element orbits", [&] {
        const HomologyReport h1 = homology_report(store, 3, 1);
        const HomologyReport h2 = homology_report(store, 3, 2);
        const bool ok = h1.kernel_dim == 0 && h1.expected_cycles == 0 &&
                        h2.kernel_dim == 2 && h2.expected_cycles == 2 &&
                        h2.cycles_in_kernel && h2.cycles_independent &&
                        h2.kernel_matches_expected;
        report(8, "boundary kernel matches the two-element orbits", ok,
               "level 1 kernel 0, level 2 kernel 2");
    });

    /* 9: alternating-word moments */
    criterion(9, "alternating-word moments", [&] {
        const auto rhos = all_l_characters(3, 2);
        bool ok = true;
        for (const auto& rho : rhos) {
            if (rho.conductor() != 2) continue;
            const auto mo =
                dihedral_moments(store, parahoric_induce(store, rho), 2, 100000000);
            ok = ok && mo[0] == Cyclotomic(Rational(1, 3)) &&
                 mo[1] == Cyclotomic(Rational(1, 9));
        }
        const auto mo = dihedral_moments(store, counterexample_rep(store), 1, 100000000);
        ok = ok && mo[0].is_zero();
        report(9, "alternating-word moments", ok,
               "ratio 1/3 at conductor 2, first moment 0 for the vanishing example");
    });

    /* 10: CLI determinism and warm-cache speed */
    criterion(10, "command-line verification is deterministic and fast", [&] {
        if (cli.empty()) {
            report(10, "command-line verification is deterministic and fast", false,
                   "binary path not supplied");
            return;
        }
        const auto dir = std::filesystem::temp_directory_path() / "parahoric-acceptance-cli";
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
        const std::string out1 = (dir / "run1.txt").string();
        const std::string out2 = (dir / "run2.txt").string();
        const std::string base = "\"" + cli + "\" verify --p 3 --depth 2 --suite all --cache-dir \"" +
                                 (dir / "cache").string() + "\"";

        const int rc1 = std::system((base + " --out \"" + out1 + "\"").c_str());
        const auto t0 = std::chrono::steady_clock::now();
        const int rc2 = std::system((base + " --out \"" + out2 + "\"").c_str());
        const auto warm_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();

        const std::string r1 = read_file(out1), r2 = read_file(out2);
        const bool ok = rc1 == 0 && rc2 == 0 && !r1.empty() && r1 == r2 &&
                        r1.find("result pass") != std::string::npos && warm_ms < 60000;
        report(10, "command-line verification is deterministic and fast", ok,
               "warm run " + std::to_string(warm_ms) + " ms, byte-identical " +
                   (r1 == r2 ? "yes" : "no"));
    });

    std::cout << (g_failures == 0 ? "acceptance: all criteria pass"
                                  : "acceptance: " + std::to_string(g_failures) +
                                        " criterion(s) failed")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
