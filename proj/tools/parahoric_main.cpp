// Command-line front end: character tables, z-values, verification suites
// and the chain-complex reports, all over exact arithmetic.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
// 3 resource budget exceeded, 4 internal invariant broken.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "parahoric/cache.hpp"
#include "parahoric/errors.hpp"
#include "parahoric/homology.hpp"
#include "parahoric/parahoric.hpp"
#include "parahoric/table_store.hpp"
#include "parahoric/verify.hpp"

namespace {

struct CommonOpts {
    int p = 3;
    int depth = 1;
    std::string cache_dir;
    std::string out;
    long long max_elements = parahoric::TableStore::kDefaultMaxElements;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "odd prime modulus base")->required();
    cmd->add_option("--depth,--level", o.depth, "truncation level n (modulus p^n)")
        ->required();
    cmd->add_option("--cache-dir", o.cache_dir,
                    "directory for cached character tables (overrides PARAHORIC_CACHE_DIR)");
    cmd->add_option("--out", o.out, "write the report to this file instead of stdout");
    cmd->add_option("--max-elements", o.max_elements,
                    "refuse to enumerate groups larger than this");
}

std::string resolved_cache_dir(const CommonOpts& o) {
    if (!o.cache_dir.empty()) return o.cache_dir;
    if (const char* env = std::getenv("PARAHORIC_CACHE_DIR")) return env;
    return "";
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw parahoric::ResourceError("cannot open output file: " + o.out);
    f << text;
    if (!f.good()) throw parahoric::ResourceError("short write to: " + o.out);
}

int cmd_table(const CommonOpts& o, const std::string& group, int param) {
    parahoric::TableStore store(resolved_cache_dir(o), o.max_elements);
    const parahoric::Modulus m(o.p, o.depth);
    const parahoric::SubgroupTag tag = parahoric::tag_from_name(group);
    auto tab = store.table(m, tag, param);
    emit(o, parahoric::serialize_character_table(*tab));
    return 0;
}

int cmd_zvalues(const CommonOpts& o) {
    parahoric::TableStore store(resolved_cache_dir(o), o.max_elements);
    const auto rhos = parahoric::all_l_characters(o.p, o.depth);
    std::ostringstream os;
    os << "z-values p=" << o.p << " n=" << o.depth << '\n';
    for (size_t k = 0; k < rhos.size(); ++k) {
        const auto pi = parahoric::parahoric_induce(store, rhos[k]);
        os << "rho index=" << k << " conductor=" << rhos[k].conductor()
           << " z=" << parahoric::z_value(rhos[k]).str()
           << " deg=" << pi.degree().to_display() << '\n';
    }
    emit(o, os.str());
    return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& suite, int jobs, int k_max,
               long long max_words) {
    parahoric::TableStore store(resolved_cache_dir(o), o.max_elements);
    parahoric::VerifyOptions vo;
    vo.jobs = jobs;
    vo.dihedral_k_max = k_max;
    vo.max_words = max_words;
    const parahoric::SuiteReport rep = parahoric::run_suite(store, suite, o.p, o.depth, vo);
    emit(o, parahoric::render_report(rep));
    return rep.pass() ? 0 : 1;
}

int cmd_homology(const CommonOpts& o, const std::string& matrix_dir) {
    parahoric::TableStore store(resolved_cache_dir(o), o.max_elements);
    const parahoric::HomologyReport hr = parahoric::homology_report(store, o.p, o.depth);
    emit(o, parahoric::render_homology_report(hr));

    if (!matrix_dir.empty()) {
        std::filesystem::create_directories(matrix_dir);
        const auto cm = parahoric::build_chain_matrices(store, o.p, o.depth);
        const auto dump = [&](const std::string& name, const parahoric::IntMatrix& mat) {
            std::ofstream f(matrix_dir + "/" + name + ".txt", std::ios::binary);
            if (!f) throw parahoric::ResourceError("cannot write matrix file: " + name);
            f << parahoric::render_matrix(mat);
        };
        dump("torus_boundary", cm.torus_boundary_mat);
        dump("torus_boundary_up", cm.torus_boundary_mat_up);
        dump("torus_weyl0", cm.torus_weyl0);
        dump("torus_weyl1", cm.torus_weyl1);
        dump("arithmetic_boundary", cm.arithmetic_boundary_mat);
        dump("pind0", cm.pind0);
        dump("pind1", cm.pind1);
        dump("pres0", cm.pres0);
        dump("pres1", cm.pres1);
        dump("inflation", cm.infl);
    }
    return hr.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact character theory of truncated special linear groups"};
    app.set_version_flag("--version", "parahoric 1.0.0");
    app.require_subcommand(1);

    CommonOpts topts;
    std::string group = "full";
    int param = 0;
    auto* t = app.add_subcommand("table", "print a character table");
    add_common(t, topts);
    t->add_option("--group", group,
                  "subgroup: full, iwahori-upper, iwahori-lower, unip-upper, unip-lower, "
                  "diagonal, congruence, intersection, lower-borel");
    t->add_option("--param", param, "congruence depth when --group congruence");

    CommonOpts zopts;
    auto* z = app.add_subcommand("zvalues",
                                 "normalizing factors and induced degrees per torus character");
    add_common(z, zopts);

    CommonOpts vopts;
    std::string suite = "all";
    int jobs = 1;
    int k_max = 3;
    long long max_words = 100000000;
    auto* v = app.add_subcommand("verify", "run a verification suite");
    add_common(v, vopts);
    v->add_option("--suite", suite, "iwahori, characters, parahoric, mackey, dihedral, chains, all");
    v->add_option("--jobs", jobs, "suite-level parallelism for --suite all")
        ->check(CLI::Range(1, 64));
    v->add_option("--dihedral-k", k_max, "number of alternating-word moments")
        ->check(CLI::Range(1, 16));
    v->add_option("--max-words", max_words, "alternating-word budget for the dihedral suite");

    CommonOpts hopts;
    std::string matrix_dir;
    auto* h = app.add_subcommand("homology", "kernel report for the depth-n chain complex");
    add_common(h, hopts);
    h->add_option("--matrices", matrix_dir, "also write every chain matrix into this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (t->parsed()) return cmd_table(topts, group, param);
        if (z->parsed()) return cmd_zvalues(zopts);
        if (v->parsed()) return cmd_verify(vopts, suite, jobs, k_max, max_words);
        if (h->parsed()) return cmd_homology(hopts, matrix_dir);
    } catch (const parahoric::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const parahoric::ResourceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
    return 2;
}
