#pragma once

#include <memory>
#include <string>
#include <vector>

#include "parahoric/class_function.hpp"
#include "parahoric/parahoric.hpp"
#include "parahoric/table_store.hpp"

namespace parahoric {

using IntMatrix = std::vector<std::vector<long long>>;

/* Depth-n slice of the two-sided chamber complex, in two models:
 *
 *   torus complex       two copies of R(L_n) in each degree,
 *                       boundary (a, b) -> (a + b, -(a + b)),
 *                       Weyl action twisting each copy (degree 0) or
 *                       twisting and swapping the copies (degree 1);
 *
 *   arithmetic complex  R(J_n) in degree 1, R(K_n) + R(K'_{n+1}) in
 *                       degree 0, boundary pi -> (ind pi, -ind' pi).
 *
 * The chain maps between them carry torus characters up by normalized
 * induction (degree by degree) and come back via unipotent invariants one
 * level deeper. All matrices are exact integer matrices in the canonical
 * bases: torus characters by index, irreducibles in table order.
 */

// One chain of the torus complex (either degree): a pair of torus class
// functions at a single level.
struct TorusChain {
    ClassFunction first, second;
};

// Degree-0 chain of the arithmetic complex.
struct VertexChain {
    ClassFunction standard;  // on the full group at level n
    ClassFunction opposite;  // on the full group at level n+1
};

TorusChain torus_boundary(const TorusChain& x);
TorusChain torus_weyl_deg0(const TorusChain& x);
TorusChain torus_weyl_deg1(const TorusChain& x);

// Linear extension of rho -> i(rho) to arbitrary torus class functions
// (divide each rho-coordinate by z(rho), then average up).
ClassFunction induce_linear(TableStore& store, const ClassFunction& phi);

ClassFunction pind_deg1(TableStore& store, const TorusChain& x);
VertexChain pind_deg0(TableStore& store, const TorusChain& x);
VertexChain arithmetic_boundary(TableStore& store, const ClassFunction& pi);
TorusChain pres_deg1(TableStore& store, const ClassFunction& pi);   // lands one level up
TorusChain pres_deg0(TableStore& store, const VertexChain& x);      // lands one level up
TorusChain inflate_chain(TableStore& store, const TorusChain& x);   // componentwise, one level up

// Every matrix of the depth-n slice. Building this forces the character
// tables of J_n, K_n and K'_{n+1}.
struct ChainMatrices {
    int p = 0;
    int n = 0;
    long torus_rank = 0;      // phi(p^n)
    long torus_rank_up = 0;   // phi(p^{n+1})
    long iwahori_rank = 0;    // number of irreducibles of J_n
    long vertex_rank = 0;     // of K_n
    long vertex_rank_up = 0;  // of K'_{n+1}

    IntMatrix torus_boundary_mat;       // 2phi x 2phi
    IntMatrix torus_boundary_mat_up;    // 2phi' x 2phi'
    IntMatrix torus_weyl0, torus_weyl1;  // 2phi x 2phi
    IntMatrix arithmetic_boundary_mat;  // (|irr K| + |irr K'|) x |irr J|
    IntMatrix pind1;                    // |irr J| x 2phi
    IntMatrix pind0;                    // (|irr K| + |irr K'|) x 2phi
    IntMatrix pres1;                    // 2phi' x |irr J|
    IntMatrix pres0;                    // 2phi' x (|irr K| + |irr K'|)
    IntMatrix infl;                     // phi' x phi, one torus copy
};

ChainMatrices build_chain_matrices(TableStore& store, int p, int n);

IntMatrix matrix_product(const IntMatrix& a, const IntMatrix& b);
IntMatrix matrix_sum(const IntMatrix& a, const IntMatrix& b);
IntMatrix identity_matrix(long n);
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
long integer_matrix_rank(const IntMatrix& m);

// Plain-text form: "rows cols" header, then one space-separated row per line.
std::string render_matrix(const IntMatrix& m);

/* Kernel analysis of the degree-1 arithmetic boundary. The candidate cycles
 * i(rho) - i(rho^w), one per two-element Weyl orbit, are checked to lie in
 * the kernel and to be independent (hard failures); whether they span the
 * whole kernel is measured and reported, with any excess flagged.
 */
struct HomologyReport {
    int p = 0;
    int n = 0;
    long chain_dim_deg1 = 0;
    long chain_dim_deg0 = 0;
    long boundary_rank = 0;
    long kernel_dim = 0;
    long cokernel_dim = 0;
    long expected_cycles = 0;
    std::vector<long long> orbit_indices;               // chosen rho index per orbit
    std::vector<std::vector<long long>> cycle_coords;   // against the irreducibles of J
    bool cycles_in_kernel = false;
    bool cycles_independent = false;
    bool kernel_matches_expected = false;

    bool pass() const { return cycles_in_kernel && cycles_independent; }
};

HomologyReport homology_report(TableStore& store, int p, int n);
std::string render_homology_report(const HomologyReport& r);

}  // namespace parahoric
