// Command-line front end: load bimodules and cochains from files, run the
// exact check suites, reconstruct cocycles from seed data, split them, and
// emit JSON reports.
//
// Exit codes: 0 all checks passed, 1 a cocycle/associativity check failed,
// 2 bad input file or arguments, 3 normalization residual, 4 linear solve
// failure, 5 invalid bimodule or certificate.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cendalg/cendalg.hpp"

namespace {

using namespace cendalg;

struct RunConfig {
    std::string bimodule = "regular";
    int kmax = 5;
    int nmax = 6;
    long lcheck = 8;
    int fuzz = 0;
    std::uint64_t seed = 1;
    std::string tau_path, seeds_path, out_path;
};

void add_bounds(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--kmax", cfg.kmax, "basis power bound")->check(CLI::PositiveNumber);
    cmd->add_option("--nmax", cfg.nmax, "product index bound")->check(CLI::PositiveNumber);
    cmd->add_option("--lcheck", cfg.lcheck, "first-row check cutoff")
        ->check(CLI::PositiveNumber);
}

void add_bimodule(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--bimodule", cfg.bimodule,
                    "builtin name (regular, regular_zero_right, zero, sums with '+') or a "
                    "table file path");
}

void add_output(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("-o,--output", cfg.out_path, "write the JSON report here");
}

Json base_report(const std::string& subcommand, const RunConfig& cfg) {
    return Json{{"tool", "cendalg"},
                {"subcommand", subcommand},
                {"bimodule", cfg.bimodule},
                {"bounds", Json{{"kmax", cfg.kmax}, {"nmax", cfg.nmax}, {"lcheck", cfg.lcheck}}}};
}

void emit(const Json& report, const RunConfig& cfg) {
    if (cfg.out_path.empty())
        std::cout << report.dump(2) << "\n";
    else
        write_json_file(cfg.out_path, report);
}

Cochain2 load_phi(const RunConfig& cfg, const BimodulePtr& module, Json& report) {
    if (!cfg.tau_path.empty()) {
        Cochain1 tau = cochain1_from_json(load_json_file(cfg.tau_path), module);
        report["source"] = Json{{"tau", cfg.tau_path}};
        return d1(tau);
    }
    if (!cfg.seeds_path.empty()) {
        SeedData sd = seed_data_from_json(load_json_file(cfg.seeds_path));
        report["source"] = Json{{"seeds", cfg.seeds_path}};
        return Cochain2::from_seeds(std::move(sd), module);
    }
    throw CLI::ValidationError("--tau or --seeds is required");
}

int cmd_check_algebra(const RunConfig& cfg) {
    auto rep = run_algebra_checks(cfg.kmax, cfg.nmax);
    Json out = base_report("check-algebra", cfg);
    out.erase("bimodule");
    out["report"] = to_json(rep);
    emit(out, cfg);
    return rep.pass() ? 0 : 1;
}

int cmd_bimodule_check(const RunConfig& cfg) {
    auto module = load_bimodule(cfg.bimodule);
    auto rep = check_bimodule_axioms(*module, cfg.kmax, cfg.nmax);
    Json out = base_report("bimodule check", cfg);
    out["report"] = to_json(rep);
    emit(out, cfg);
    return rep.pass() ? 0 : 1;
}

int cmd_cocycle_from_tau(const RunConfig& cfg) {
    auto module = load_bimodule(cfg.bimodule);
    Cochain1 tau = cochain1_from_json(load_json_file(cfg.tau_path), module);
    SeedData sd = seeds_of(d1(tau), cfg.lcheck);
    Json out = base_report("cocycle from-tau", cfg);
    out["source"] = Json{{"tau", cfg.tau_path}};
    out["seeds"] = to_json(sd);
    emit(out, cfg);
    return 0;
}

int cmd_cocycle_from_seeds(const RunConfig& cfg) {
    auto module = load_bimodule(cfg.bimodule);
    SeedData sd = seed_data_from_json(load_json_file(cfg.seeds_path));
    Cochain2 phi = Cochain2::from_seeds(sd, module);
    Json out = base_report("cocycle from-seeds", cfg);
    out["source"] = Json{{"seeds", cfg.seeds_path}};
    Json values = Json::array();
    int bound = phi.locality_bound();
    for (int s = 0; s <= std::min(bound, cfg.nmax); ++s)
        for (long k = 1; k < cfg.lcheck; ++k)
            for (long l = 1; k + l <= cfg.lcheck; ++l)
                values.push_back(Json{{"s", s},
                                      {"k", k},
                                      {"l", l},
                                      {"value", to_json(phi.basis_value(s, k, l))}});
    out["locality_bound"] = bound;
    out["values"] = values;
    emit(out, cfg);
    return 0;
}

int cmd_cocycle_check(const RunConfig& cfg) {
    auto module = load_bimodule(cfg.bimodule);
    Json out = base_report("cocycle check", cfg);
    Cochain2 phi = load_phi(cfg, module, out);
    auto rep = is_cocycle(phi, cfg.kmax, cfg.nmax);
    out["report"] = to_json(rep);
    emit(out, cfg);
    if (!rep.pass()) {
        const auto& v = rep.violations.front();
        std::cerr << "not a cocycle: differential nonzero at (m=" << v.m << ", n=" << v.n
                  << ", x^" << v.k << ", x^" << v.l << ", x^" << v.q << ")\n";
        return 1;
    }
    return 0;
}

int cmd_split(const RunConfig& cfg) {
    auto module = load_bimodule(cfg.bimodule);
    SplitBounds bounds{cfg.kmax, cfg.nmax, cfg.lcheck};
    Json out = base_report("split", cfg);
    if (cfg.fuzz > 0) {
        out["seed"] = cfg.seed;
        out["fuzz"] = cfg.fuzz;
        FuzzRng rng(cfg.seed);
        Json results = Json::array();
        bool all = true;
        for (int i = 0; i < cfg.fuzz; ++i) {
            Cochain1 tau = rng.cochain1(module, 3, 3, 3, 2, 4);
            SplitCertificate cert = split_cocycle(d1(tau), bounds);
            all = all && cert.pass;
            results.push_back(Json{{"index", i}, {"certificate", to_json(cert)}});
        }
        out["results"] = results;
        out["pass"] = all;
        emit(out, cfg);
        return all ? 0 : 1;
    }
    Cochain2 phi = load_phi(cfg, module, out);
    SplitCertificate cert = split_cocycle(phi, bounds);
    out["certificate"] = to_json(cert);
    out["pass"] = cert.pass;
    emit(out, cfg);
    return cert.pass ? 0 : 1;
}

int cmd_extension_build(const RunConfig& cfg) {
    auto module = load_bimodule(cfg.bimodule);
    Json out = base_report("extension build", cfg);
    Cochain2 phi = load_phi(cfg, module, out);
    ExtensionAlgebra B(module, phi);
    Json samples = Json::array();
    for (int n = 0; n <= std::min(cfg.nmax, 3); ++n) {
        ExtElem xx = B.product({x_gen(), {}}, {x_gen(), {}}, n);
        samples.push_back(Json{{"lhs", "x"},
                               {"rhs", "x"},
                               {"n", n},
                               {"alg", to_json(xx.alg)},
                               {"mod", to_json(xx.mod)}});
    }
    for (const auto& e : module->sample_basis(2)) {
        ExtElem xe = B.product({x_gen(), {}}, {{}, ModElem::term(e, DPoly::constant(1))}, 0);
        samples.push_back(Json{{"lhs", "x"},
                               {"rhs", "[" + e + "]"},
                               {"n", 0},
                               {"alg", to_json(xe.alg)},
                               {"mod", to_json(xe.mod)}});
    }
    out["sample_products"] = samples;
    out["phi_seeds"] = to_json(seeds_of(phi, cfg.lcheck));
    emit(out, cfg);
    return 0;
}

int cmd_extension_check(const RunConfig& cfg) {
    auto module = load_bimodule(cfg.bimodule);
    Json out = base_report("extension check", cfg);
    Cochain2 phi = load_phi(cfg, module, out);
    ExtensionAlgebra B(module, phi);
    auto rep = check_extension_associativity(B, cfg.kmax, cfg.nmax);
    auto crep = is_cocycle(phi, cfg.kmax, cfg.nmax);
    out["associativity"] = to_json(rep);
    out["cocycle"] = to_json(crep);
    out["verdicts_agree"] = rep.pass() == crep.pass();
    emit(out, cfg);
    return rep.pass() ? 0 : 1;
}

int cmd_extension_split_check(const RunConfig& cfg) {
    auto module = load_bimodule(cfg.bimodule);
    SplitBounds bounds{cfg.kmax, cfg.nmax, cfg.lcheck};
    Json out = base_report("extension split-check", cfg);
    Cochain2 phi = load_phi(cfg, module, out);
    SplitCertificate cert = split_cocycle(phi, bounds);
    ExtensionAlgebra B(module, phi);
    auto emb = splitting_embedding(cert.psi_total, B, std::min(cfg.kmax, 4), cfg.nmax);
    auto rep = check_embedding_closure(emb, B, std::min(cfg.kmax, 4), cfg.nmax);
    out["certificate"] = to_json(cert);
    out["embedding_closure"] = to_json(rep);
    out["pass"] = cert.pass && rep.pass();
    emit(out, cfg);
    return (cert.pass && rep.pass()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact checks and cocycle splitting for the conformal algebra generated "
                 "by x"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto* check_algebra = app.add_subcommand("check-algebra", "verify the algebra axioms");
    add_bounds(check_algebra, cfg);
    add_output(check_algebra, cfg);

    auto* bimodule = app.add_subcommand("bimodule", "bimodule tools");
    bimodule->require_subcommand(1);
    auto* bimodule_check =
        bimodule->add_subcommand("check", "verify the bimodule axioms on derived actions");
    add_bimodule(bimodule_check, cfg);
    add_bounds(bimodule_check, cfg);
    add_output(bimodule_check, cfg);

    auto* cocycle = app.add_subcommand("cocycle", "2-cochain tools");
    cocycle->require_subcommand(1);
    auto* from_tau =
        cocycle->add_subcommand("from-tau", "emit the seed data of the coboundary of tau");
    from_tau->add_option("--tau", cfg.tau_path, "1-cochain file")->required();
    add_bimodule(from_tau, cfg);
    add_bounds(from_tau, cfg);
    add_output(from_tau, cfg);
    auto* from_seeds =
        cocycle->add_subcommand("from-seeds", "reconstruct values from seed data");
    from_seeds->add_option("--seeds", cfg.seeds_path, "seed data file")->required();
    add_bimodule(from_seeds, cfg);
    add_bounds(from_seeds, cfg);
    add_output(from_seeds, cfg);
    auto* cocycle_check = cocycle->add_subcommand("check", "run the cocycle predicate");
    cocycle_check->add_option("--tau", cfg.tau_path, "1-cochain file (checks its coboundary)");
    cocycle_check->add_option("--seeds", cfg.seeds_path, "seed data file");
    add_bimodule(cocycle_check, cfg);
    add_bounds(cocycle_check, cfg);
    add_output(cocycle_check, cfg);

    auto* split = app.add_subcommand("split", "split a 2-cocycle into a coboundary");
    split->add_option("--tau", cfg.tau_path, "1-cochain file (splits its coboundary)");
    split->add_option("--seeds", cfg.seeds_path, "seed data file");
    split->add_option("--fuzz", cfg.fuzz, "split N random coboundaries instead");
    split->add_option("--seed", cfg.seed, "random seed for --fuzz");
    add_bimodule(split, cfg);
    add_bounds(split, cfg);
    add_output(split, cfg);

    auto* extension = app.add_subcommand("extension", "singular extension tools");
    extension->require_subcommand(1);
    auto* ext_build = extension->add_subcommand("build", "construct the twisted product");
    auto* ext_check = extension->add_subcommand("check", "verify extension associativity");
    auto* ext_split =
        extension->add_subcommand("split-check", "split, then verify the section closure");
    for (auto* cmd : {ext_build, ext_check, ext_split}) {
        cmd->add_option("--tau", cfg.tau_path, "1-cochain file");
        cmd->add_option("--seeds", cfg.seeds_path, "seed data file");
        add_bimodule(cmd, cfg);
        add_bounds(cmd, cfg);
        add_output(cmd, cfg);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (check_algebra->parsed()) return cmd_check_algebra(cfg);
        if (bimodule_check->parsed()) return cmd_bimodule_check(cfg);
        if (from_tau->parsed()) return cmd_cocycle_from_tau(cfg);
        if (from_seeds->parsed()) return cmd_cocycle_from_seeds(cfg);
        if (cocycle_check->parsed()) return cmd_cocycle_check(cfg);
        if (split->parsed()) return cmd_split(cfg);
        if (ext_build->parsed()) return cmd_extension_build(cfg);
        if (ext_check->parsed()) return cmd_extension_check(cfg);
        if (ext_split->parsed()) return cmd_extension_split_check(cfg);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NotACocycle& e) {
        std::cerr << "not a cocycle: " << e.what() << "\n";
        return 1;
    } catch (const NormalizationFailed& e) {
        std::cerr << "normalization failed: " << e.what() << "\n";
        return 3;
    } catch (const NoSolution& e) {
        std::cerr << "no solution: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
