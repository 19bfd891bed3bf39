#include "doctest.h"
#include "parahoric/errors.hpp"
#include "parahoric/homology.hpp"
#include "parahoric/intmat.hpp"
#include "parahoric/table_store.hpp"

using namespace parahoric;

namespace {
TableStore& shared_store() {
    static TableStore store;
    return store;
}
}  // namespace

TEST_SUITE("homology") {

TEST_CASE("integer matrix helpers") {
    const IntMatrix a = {{1, 2}, {3, 4}};
    const IntMatrix b = {{0, 1}, {1, 0}};
    CHECK(matrix_product(a, b) == IntMatrix{{2, 1}, {4, 3}});
    CHECK(matrix_sum(a, b) == IntMatrix{{1, 3}, {4, 4}});
    CHECK(identity_matrix(2) == IntMatrix{{1, 0}, {0, 1}});
    CHECK(block_diagonal(identity_matrix(1), identity_matrix(2)) ==
          IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(integer_matrix_rank({{1, 1}, {1, 1}}) == 1);
    CHECK(integer_matrix_rank({{1, 1}, {1, -1}}) == 2);
    CHECK(render_matrix(identity_matrix(2)) == "2 2\n1 0\n0 1\n");
}

TEST_CASE("torus complex dimensions and ranks at level two") {
    TableStore& store = shared_store();
    const ChainMatrices cm = build_chain_matrices(store, 3, 2);
    CHECK(cm.torus_rank == 6);
    CHECK(cm.torus_rank_up == 18);
    CHECK((long)cm.torus_boundary_mat.size() == 12);
    CHECK(integer_matrix_rank(cm.torus_boundary_mat) == 6);

    // boundary squares to... itself doubled: d(a,b) = (a+b, -(a+b)), so d^2 = 0
    const IntMatrix d2 = matrix_product(cm.torus_boundary_mat, cm.torus_boundary_mat);
    bool zero = true;
    for (const auto& row : d2)
        for (long long v : row) zero = zero && v == 0;
    CHECK(zero);
}

TEST_CASE("level-one slice: all squares commute and the kernel vanishes") {
    TableStore& store = shared_store();
    const ChainMatrices cm = build_chain_matrices(store, 3, 1);
    CHECK(cm.torus_rank == 2);
    CHECK(cm.iwahori_rank == 6);

    CHECK(matrix_product(cm.arithmetic_boundary_mat, cm.pind1) ==
          matrix_product(cm.pind0, cm.torus_boundary_mat));
    CHECK(matrix_product(cm.pres0, cm.arithmetic_boundary_mat) ==
          matrix_product(cm.torus_boundary_mat_up, cm.pres1));

    const IntMatrix infl2 = block_diagonal(cm.infl, cm.infl);
    CHECK(matrix_product(cm.pres1, cm.pind1) ==
          matrix_product(infl2, matrix_sum(identity_matrix(4), cm.torus_weyl1)));
    CHECK(matrix_product(cm.pres0, cm.pind0) ==
          matrix_product(infl2, matrix_sum(identity_matrix(4), cm.torus_weyl0)));

    const HomologyReport hr = homology_report(store, 3, 1);
    CHECK(hr.kernel_dim == 0);
    CHECK(hr.expected_cycles == 0);
    CHECK(hr.kernel_matches_expected);
    CHECK(hr.pass());
}

TEST_CASE("level-two slice: the kernel is exactly the two-element orbits") {
    TableStore& store = shared_store();
    const HomologyReport hr = homology_report(store, 3, 2);
    CHECK(hr.chain_dim_deg1 == 34);
    CHECK(hr.boundary_rank == 32);
    CHECK(hr.kernel_dim == 2);
    CHECK(hr.expected_cycles == 2);
    CHECK(hr.orbit_indices == std::vector<long long>{1, 2});
    CHECK(hr.cycles_in_kernel);
    CHECK(hr.cycles_independent);
    CHECK(hr.kernel_matches_expected);

    // each cycle is i(rho) - i(rho^w): one +1 and one -1 against the table
    for (const auto& coords : hr.cycle_coords) {
        long long plus = 0, minus = 0, other = 0;
        for (long long v : coords) {
            if (v == 1) ++plus;
            else if (v == -1) ++minus;
            else if (v != 0) ++other;
        }
        CHECK(plus == 1);
        CHECK(minus == 1);
        CHECK(other == 0);
    }
}

TEST_CASE("chain-level functions match their matrices") {
    TableStore& store = shared_store();
    const Modulus m(3, 2);
    auto L = store.model(m, SubgroupTag::Diagonal);
    const auto rhos = all_l_characters(3, 2);

    // boundary of (rho, 0): both coordinates +-(rho)
    const TorusChain x{rhos[1].as_class_function(L),
                       ClassFunction(L)};
    const TorusChain dx = torus_boundary(x);
    CHECK(dx.first == x.first);
    CHECK(dx.second == -x.first);

    // Weyl action in degree one swaps and twists
    const TorusChain wx = torus_weyl_deg1(x);
    CHECK(wx.first.is_zero());
    CHECK(wx.second == weyl_twist(x.first));
    const TorusChain w0 = torus_weyl_deg0(x);
    CHECK(w0.first == weyl_twist(x.first));
    CHECK(w0.second.is_zero());

    // degree-1 chain map on a basis chain is plain normalized induction
    const ClassFunction lifted = pind_deg1(store, x);
    CHECK(lifted == parahoric_induce(store, rhos[1]));

    // the arithmetic boundary of i(rho) has the advertised signs
    const VertexChain bd = arithmetic_boundary(store, lifted);
    CHECK(bd.standard == vertex_induce_standard(store, rhos[1]));
    CHECK(bd.opposite == -vertex_induce_opposite(store, rhos[1]));

    // restriction of the boundary equals the boundary of the restriction
    const TorusChain r1 = pres_deg0(store, bd);
    const TorusChain r2 = torus_boundary(pres_deg1(store, lifted));
    CHECK(r1.first == r2.first);
    CHECK(r1.second == r2.second);
}

TEST_CASE("vertex chains validate their levels") {
    TableStore& store = shared_store();
    auto K2 = store.model(Modulus(3, 2), SubgroupTag::FullSL2);
    std::vector<Cyclotomic> ones((size_t)K2->class_count(), Cyclotomic((long long)1));
    const ClassFunction t2(K2, std::move(ones));
    // both components at the same level is malformed
    CHECK_THROWS_AS(pres_deg0(store, VertexChain{t2, t2}), DomainError);
}

TEST_CASE("report rendering is stable") {
    TableStore& store = shared_store();
    const HomologyReport hr = homology_report(store, 3, 1);
    const std::string text = render_homology_report(hr);
    CHECK(text.find("homology p=3 n=1") == 0);
    CHECK(text.find("result: pass") != std::string::npos);
    CHECK(render_homology_report(hr) == text);
}

}  // TEST_SUITE
