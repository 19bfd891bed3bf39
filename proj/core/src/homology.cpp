#include "parahoric/homology.hpp"

#include <sstream>
#include <utility>

#include "parahoric/errors.hpp"
#include "parahoric/intmat.hpp"

namespace parahoric {

namespace {

long long integer_entry(const Rational& r) {
    if (boost::multiprecision::denominator(r) != 1)
        throw InternalError("chain matrix entry is not an integer: " + r.str());
    return boost::multiprecision::numerator(r).convert_to<long long>();
}

std::vector<long long> integer_entries(const std::vector<Rational>& v) {
    std::vector<long long> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back(integer_entry(r));
    return out;
}

IntMatrix zero_matrix(long rows, long cols) {
    return IntMatrix((size_t)rows, std::vector<long long>((size_t)cols, 0));
}

void write_column(IntMatrix& m, long col, long row_offset, const std::vector<long long>& vals,
                  long long sign = 1) {
    for (size_t i = 0; i < vals.size(); ++i)
        m[(size_t)(row_offset + (long)i)][(size_t)col] = sign * vals[i];
}

// Torus characters at level n, evaluated lazily against the level's model.
struct TorusBasis {
    std::shared_ptr<const GroupModel> model;
    std::vector<LCharacter> rhos;
};

TorusBasis torus_basis(TableStore& store, int p, int n) {
    return {store.model(Modulus(p, n), SubgroupTag::Diagonal), all_l_characters(p, n)};
}

}  // namespace

TorusChain torus_boundary(const TorusChain& x) {
    ClassFunction s = x.first + x.second;
    return {s, -s};
}

TorusChain torus_weyl_deg0(const TorusChain& x) {
    return {weyl_twist(x.first), weyl_twist(x.second)};
}

TorusChain torus_weyl_deg1(const TorusChain& x) {
    return {weyl_twist(x.second), weyl_twist(x.first)};
}

ClassFunction induce_linear(TableStore& store, const ClassFunction& phi) {
    if (phi.group().tag != SubgroupTag::Diagonal)
        throw DomainError("normalized induction starts from a torus class function");
    const auto& L = phi.group_ptr();
    const auto rhos = all_l_characters(L->mod.p, L->mod.N);
    std::vector<Rational> coords = torus_coordinates(store, phi);
    for (size_t k = 0; k < coords.size(); ++k) coords[k] /= z_value(rhos[k]);

    std::vector<Cyclotomic> vals((size_t)L->class_count());
    for (int c = 0; c < L->class_count(); ++c) {
        const long long a = L->representative(c).a;
        Cyclotomic acc;
        for (size_t k = 0; k < coords.size(); ++k)
            if (coords[k] != 0) acc += Cyclotomic(coords[k]) * rhos[k].value_at_unit(a);
        vals[(size_t)c] = acc;
    }
    return iwahori_average(store, ClassFunction(L, std::move(vals)));
}

ClassFunction pind_deg1(TableStore& store, const TorusChain& x) {
    return induce_linear(store, x.first) + induce_linear(store, weyl_twist(x.second));
}

VertexChain pind_deg0(TableStore& store, const TorusChain& x) {
    return {edge_induce_standard(store, induce_linear(store, x.first)),
            edge_induce_opposite(store, induce_linear(store, x.second))};
}

VertexChain arithmetic_boundary(TableStore& store, const ClassFunction& pi) {
    return {edge_induce_standard(store, pi), -edge_induce_opposite(store, pi)};
}

TorusChain pres_deg1(TableStore& store, const ClassFunction& pi) {
    const Modulus m = pi.group().mod;
    auto Lup = store.model(Modulus(m.p, m.N + 1), SubgroupTag::Diagonal);
    return {inflate(upper_invariants(store, pi), Lup),
            inflate(weyl_twist(lower_invariants(store, pi)), Lup)};
}

TorusChain pres_deg0(TableStore& store, const VertexChain& x) {
    const Modulus m = x.standard.group().mod;
    auto Lup = store.model(Modulus(m.p, m.N + 1), SubgroupTag::Diagonal);
    if (x.opposite.group().mod.N != m.N + 1)
        throw DomainError("vertex chain components must sit one level apart");
    return {inflate(upper_invariants(store, x.standard), Lup),
            upper_invariants(store, x.opposite)};
}

TorusChain inflate_chain(TableStore& store, const TorusChain& x) {
    const Modulus m = x.first.group().mod;
    auto Lup = store.model(Modulus(m.p, m.N + 1), SubgroupTag::Diagonal);
    return {inflate(x.first, Lup), inflate(x.second, Lup)};
}

ChainMatrices build_chain_matrices(TableStore& store, int p, int n) {
    const Modulus m(p, n), up(p, n + 1);
    auto tabJ = store.table(m, SubgroupTag::IwahoriUpper);
    auto tabK = store.table(m, SubgroupTag::FullSL2);
    auto tabKp = store.table(up, SubgroupTag::FullSL2);
    const TorusBasis base = torus_basis(store, p, n);
    const TorusBasis deep = torus_basis(store, p, n + 1);

    ChainMatrices cm;
    cm.p = p;
    cm.n = n;
    cm.torus_rank = (long)base.rhos.size();
    cm.torus_rank_up = (long)deep.rhos.size();
    cm.iwahori_rank = (long)tabJ->irr.size();
    cm.vertex_rank = (long)tabK->irr.size();
    cm.vertex_rank_up = (long)tabKp->irr.size();

    const long phi = cm.torus_rank;
    const long phiUp = cm.torus_rank_up;
    const long rJ = cm.iwahori_rank;
    const long rK = cm.vertex_rank;
    const long rKp = cm.vertex_rank_up;

    // Torus boundary: (a, b) -> (a + b, -(a + b)) on basis columns.
    const auto torus_bd = [](long ph) {
        IntMatrix bd = zero_matrix(2 * ph, 2 * ph);
        for (long k = 0; k < ph; ++k) {
            for (long copy = 0; copy < 2; ++copy) {
                bd[(size_t)k][(size_t)(copy * ph + k)] = 1;
                bd[(size_t)(ph + k)][(size_t)(copy * ph + k)] = -1;
            }
        }
        return bd;
    };
    cm.torus_boundary_mat = torus_bd(phi);
    cm.torus_boundary_mat_up = torus_bd(phiUp);

    cm.torus_weyl0 = zero_matrix(2 * phi, 2 * phi);
    cm.torus_weyl1 = zero_matrix(2 * phi, 2 * phi);
    for (long k = 0; k < phi; ++k) {
        const long kw = (phi - k) % phi;
        cm.torus_weyl0[(size_t)kw][(size_t)k] = 1;
        cm.torus_weyl0[(size_t)(phi + kw)][(size_t)(phi + k)] = 1;
        cm.torus_weyl1[(size_t)(phi + kw)][(size_t)k] = 1;
        cm.torus_weyl1[(size_t)kw][(size_t)(phi + k)] = 1;
    }

    // Arithmetic boundary and the degree-1 restriction map, per irreducible.
    cm.arithmetic_boundary_mat = zero_matrix(rK + rKp, rJ);
    cm.pres1 = zero_matrix(2 * phiUp, rJ);
    for (long j = 0; j < rJ; ++j) {
        const ClassFunction& pi = tabJ->irr[(size_t)j];
        write_column(cm.arithmetic_boundary_mat, j, 0,
                     integer_entries(decompose(edge_induce_standard(store, pi), *tabK).coords));
        write_column(cm.arithmetic_boundary_mat, j, rK,
                     integer_entries(decompose(edge_induce_opposite(store, pi), *tabKp).coords),
                     -1);
        const TorusChain t = pres_deg1(store, pi);
        write_column(cm.pres1, j, 0, integer_entries(torus_coordinates(store, t.first)));
        write_column(cm.pres1, j, phiUp, integer_entries(torus_coordinates(store, t.second)));
    }

    // Degree-wise normalized induction on torus basis vectors.
    cm.pind1 = zero_matrix(rJ, 2 * phi);
    cm.pind0 = zero_matrix(rK + rKp, 2 * phi);
    for (long k = 0; k < phi; ++k) {
        const ClassFunction ik = parahoric_induce(store, base.rhos[(size_t)k]);
        const ClassFunction ikw =
            parahoric_induce(store, base.rhos[(size_t)k].weyl_dual());
        write_column(cm.pind1, k, 0, integer_entries(decompose(ik, *tabJ).coords));
        write_column(cm.pind1, phi + k, 0, integer_entries(decompose(ikw, *tabJ).coords));
        write_column(cm.pind0, k, 0,
                     integer_entries(decompose(edge_induce_standard(store, ik), *tabK).coords));
        write_column(cm.pind0, phi + k, rK,
                     integer_entries(decompose(edge_induce_opposite(store, ik), *tabKp).coords));
    }

    // Degree-0 restriction map, block by block.
    cm.pres0 = zero_matrix(2 * phiUp, rK + rKp);
    for (long j = 0; j < rK; ++j) {
        const ClassFunction inv = upper_invariants(store, tabK->irr[(size_t)j]);
        write_column(cm.pres0, j, 0,
                     integer_entries(torus_coordinates(store, inflate(inv, deep.model))));
    }
    for (long j = 0; j < rKp; ++j) {
        const ClassFunction inv = upper_invariants(store, tabKp->irr[(size_t)j]);
        write_column(cm.pres0, rK + j, phiUp, integer_entries(torus_coordinates(store, inv)));
    }

    // Torus inflation on basis vectors.
    cm.infl = zero_matrix(phiUp, phi);
    for (long k = 0; k < phi; ++k) {
        const ClassFunction ch = base.rhos[(size_t)k].as_class_function(base.model);
        write_column(cm.infl, k, 0,
                     integer_entries(torus_coordinates(store, inflate(ch, deep.model))));
    }
    return cm;
}

IntMatrix matrix_product(const IntMatrix& a, const IntMatrix& b) {
    if (a.empty() || b.empty()) throw DomainError("matrix product of an empty matrix");
    const size_t n = a.size(), k = b.size(), mcols = b[0].size();
    if (a[0].size() != k) throw DomainError("matrix product shape mismatch");
    IntMatrix out = zero_matrix((long)n, (long)mcols);
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            const long long av = a[i][t];
            if (av == 0) continue;
            for (size_t j = 0; j < mcols; ++j) out[i][j] += av * b[t][j];
        }
    return out;
}

IntMatrix matrix_sum(const IntMatrix& a, const IntMatrix& b) {
    if (a.size() != b.size() || (!a.empty() && a[0].size() != b[0].size()))
        throw DomainError("matrix sum shape mismatch");
    IntMatrix out = a;
    for (size_t i = 0; i < b.size(); ++i)
        for (size_t j = 0; j < b[i].size(); ++j) out[i][j] += b[i][j];
    return out;
}

IntMatrix identity_matrix(long n) {
    IntMatrix out = zero_matrix(n, n);
    for (long i = 0; i < n; ++i) out[(size_t)i][(size_t)i] = 1;
    return out;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
    const long ra = (long)a.size(), ca = a.empty() ? 0 : (long)a[0].size();
    const long rb = (long)b.size(), cb = b.empty() ? 0 : (long)b[0].size();
    IntMatrix out = zero_matrix(ra + rb, ca + cb);
    for (long i = 0; i < ra; ++i)
        for (long j = 0; j < ca; ++j) out[(size_t)i][(size_t)j] = a[(size_t)i][(size_t)j];
    for (long i = 0; i < rb; ++i)
        for (long j = 0; j < cb; ++j)
            out[(size_t)(ra + i)][(size_t)(ca + j)] = b[(size_t)i][(size_t)j];
    return out;
}

long integer_matrix_rank(const IntMatrix& m) {
    RationalMatrix rm;
    rm.reserve(m.size());
    for (const auto& row : m) {
        std::vector<Rational> r;
        r.reserve(row.size());
        for (long long v : row) r.emplace_back(v);
        rm.push_back(std::move(r));
    }
    return matrix_rank(std::move(rm));
}

std::string render_matrix(const IntMatrix& m) {
    std::ostringstream os;
    os << m.size() << ' ' << (m.empty() ? 0 : m[0].size()) << '\n';
    for (const auto& row : m) {
        for (size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
        os << '\n';
    }
    return os.str();
}

HomologyReport homology_report(TableStore& store, int p, int n) {
    const Modulus m(p, n), up(p, n + 1);
    auto tabJ = store.table(m, SubgroupTag::IwahoriUpper);
    auto tabK = store.table(m, SubgroupTag::FullSL2);
    auto tabKp = store.table(up, SubgroupTag::FullSL2);

    const long rJ = (long)tabJ->irr.size();
    const long rK = (long)tabK->irr.size();
    const long rKp = (long)tabKp->irr.size();

    IntMatrix bd = zero_matrix(rK + rKp, rJ);
    for (long j = 0; j < rJ; ++j) {
        const ClassFunction& pi = tabJ->irr[(size_t)j];
        write_column(bd, j, 0,
                     integer_entries(decompose(edge_induce_standard(store, pi), *tabK).coords));
        write_column(bd, j, rK,
                     integer_entries(decompose(edge_induce_opposite(store, pi), *tabKp).coords),
                     -1);
    }

    HomologyReport rep;
    rep.p = p;
    rep.n = n;
    rep.chain_dim_deg1 = rJ;
    rep.chain_dim_deg0 = rK + rKp;
    rep.boundary_rank = integer_matrix_rank(bd);
    rep.kernel_dim = rJ - rep.boundary_rank;
    rep.cokernel_dim = rK + rKp - rep.boundary_rank;

    const long phi = (long)UnitGroup::get(p, n).order;
    for (long k = 1; k < phi; ++k)
        if (k < (phi - k) % phi) rep.orbit_indices.push_back(k);
    rep.expected_cycles = (long)rep.orbit_indices.size();

    rep.cycles_in_kernel = true;
    for (long long k : rep.orbit_indices) {
        const LCharacter rho(p, n, k);
        const ClassFunction cyc =
            parahoric_induce(store, rho) - parahoric_induce(store, rho.weyl_dual());
        const auto coords = integer_entries(decompose(cyc, *tabJ).coords);
        rep.cycle_coords.push_back(coords);
        for (long i = 0; i < rK + rKp; ++i) {
            long long acc = 0;
            for (long j = 0; j < rJ; ++j) acc += bd[(size_t)i][(size_t)j] * coords[(size_t)j];
            if (acc != 0) rep.cycles_in_kernel = false;
        }
    }
    rep.cycles_independent =
        rep.expected_cycles == 0 ||
        integer_matrix_rank(rep.cycle_coords) == rep.expected_cycles;
    rep.kernel_matches_expected = rep.kernel_dim == rep.expected_cycles;
    return rep;
}

std::string render_homology_report(const HomologyReport& r) {
    std::ostringstream os;
    os << "homology p=" << r.p << " n=" << r.n << '\n';
    os << "deg1 dim " << r.chain_dim_deg1 << '\n';
    os << "deg0 dim " << r.chain_dim_deg0 << '\n';
    os << "boundary rank " << r.boundary_rank << '\n';
    os << "kernel dim " << r.kernel_dim << " expected " << r.expected_cycles << '\n';
    os << "cokernel dim " << r.cokernel_dim
       << " (finite-depth approximation of the vertex limit)" << '\n';
    for (size_t i = 0; i < r.cycle_coords.size(); ++i) {
        os << "cycle rho=" << r.orbit_indices[i] << " coords";
        for (long long v : r.cycle_coords[i]) os << ' ' << v;
        os << '\n';
    }
    os << "cycles in kernel: " << (r.cycles_in_kernel ? "yes" : "no") << '\n';
    os << "cycles independent: " << (r.cycles_independent ? "yes" : "no") << '\n';
    os << "kernel matches listed cycles: " << (r.kernel_matches_expected ? "yes" : "no") << '\n';
    if (r.kernel_dim > r.expected_cycles)
        os << "warning: kernel exceeds the listed cycles by "
           << (r.kernel_dim - r.expected_cycles) << '\n';
    os << "result: " << (r.pass() ? "pass" : "fail") << '\n';
    return os.str();
}

}  // namespace parahoric
