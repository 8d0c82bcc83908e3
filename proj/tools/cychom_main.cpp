#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <cychom/cyclic_homology.hpp>
#include <cychom/hochschild.hpp>
#include <cychom/module_io.hpp>
#include <cychom/simplex_identities.hpp>

namespace {

using namespace cychom;
using nlohmann::json;

json group_to_json(const AbelianGroupStructure& g) {
    json torsion = json::array();
    for (const Int& d : g.torsion) torsion.push_back(io_detail::int_to_json(d));
    return json{
        {"free_rank", g.free_rank}, {"torsion", std::move(torsion)}, {"format", g.format()}};
}

struct LoadedModule {
    PrecyclicModule module;
    ModuleMetadata meta;
    std::string path;

    const std::string& display() const { return meta.name.empty() ? path : meta.name; }
};

LoadedModule load(const std::string& path) {
    LoadedModule l;
    l.path = path;
    l.module = read_module_file(path, &l.meta);
    return l;
}

int run_verify(const LoadedModule& l, bool as_json) {
    IdentityReport r = verify_identities(l.module);
    if (as_json) {
        json families = json::array();
        for (const IdentityFamilyResult& f : r.families)
            families.push_back({{"name", f.name},
                                {"applicable", f.applicable},
                                {"informational", f.informational},
                                {"instances", f.instances},
                                {"holds", f.holds()},
                                {"failures", f.failures}});
        std::cout << json{{"command", "verify"},
                          {"module", l.display()},
                          {"max_degree", l.module.max_degree()},
                          {"ok", r.all_hold()},
                          {"families", std::move(families)}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "module " << l.display() << ", degrees 0.." << l.module.max_degree()
                  << "\n\n"
                  << r.summary();
        for (const IdentityFamilyResult& f : r.families)
            for (const std::string& failure : f.failures)
                std::cout << "  " << f.name << ": " << failure << "\n";
        std::cout << "\n"
                  << (r.all_hold() ? "all identities hold" : "identity failures found") << "\n";
    }
    return r.all_hold() ? 0 : 1;
}

int run_table(const std::string& command, const LoadedModule& l,
              std::optional<std::size_t> requested, bool as_json) {
    const std::size_t top = l.module.max_degree();
    const std::size_t n_max = requested.value_or(top == 0 ? 0 : top - 1);
    std::string label;
    std::vector<AbelianGroupStructure> groups;
    if (command == "homology") {
        label = "H";
        if (n_max + 1 > top)
            throw IncompleteData("homology at degree " + std::to_string(n_max) +
                                 " needs the boundary from degree " + std::to_string(n_max + 1) +
                                 "; the file stores degrees 0.." + std::to_string(top));
        ChainComplex c = underlying_complex(l.module);
        for (std::size_t n = 0; n <= n_max; ++n) groups.push_back(homology(c, n).structure);
    } else if (command == "cyclic") {
        label = "HC";
        for (std::size_t n = 0; n <= n_max; ++n)
            groups.push_back(cyclic_homology(l.module, n).structure);
    } else {
        label = "HC^λ";
        for (std::size_t n = 0; n <= n_max; ++n)
            groups.push_back(connes_homology(l.module, n).structure);
    }

    if (as_json) {
        json rows = json::array();
        for (std::size_t n = 0; n <= n_max; ++n) {
            json row = group_to_json(groups[n]);
            row["degree"] = n;
            rows.push_back(std::move(row));
        }
        std::cout << json{{"command", command},
                          {"module", l.display()},
                          {"max_degree", n_max},
                          {"groups", std::move(rows)}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << label << " groups of " << l.display() << ", degrees 0.." << n_max << "\n";
        for (std::size_t n = 0; n <= n_max; ++n)
            std::cout << "  " << label << "_" << n << " = " << groups[n].format() << "\n";
    }
    return 0;
}

int run_sbi(const LoadedModule& l, std::optional<std::size_t> requested, bool as_json) {
    IdentityReport idr = verify_identities(l.module);
    if (!idr.all_hold()) {
        if (as_json)
            std::cout << json{{"command", "sbi"},
                              {"module", l.display()},
                              {"ok", false},
                              {"refused", "module fails the operator identities"}}
                             .dump(2)
                      << "\n";
        else
            std::cout << "module " << l.display()
                      << " fails the operator identities; run `verify` for the ledger\n";
        return 1;
    }

    const std::size_t top = l.module.max_degree();
    const std::size_t n_max = requested.value_or(top == 0 ? 0 : top - 1);
    SBIReport r = sbi_sequence(l.module, n_max);

    if (as_json) {
        json table = json::array();
        json maps = json::array();
        for (std::size_t n = 0; n <= n_max; ++n) {
            table.push_back({{"degree", n},
                             {"hochschild", group_to_json(r.table[n].hochschild)},
                             {"cyclic", group_to_json(r.table[n].cyclic)},
                             {"shifted", group_to_json(r.table[n].shifted)}});
            maps.push_back({{"degree", n},
                            {"i", matrix_to_json(r.i_map[n])},
                            {"s", matrix_to_json(r.s_map[n])},
                            {"b", matrix_to_json(r.b_map[n])}});
        }
        json nodes = json::array();
        for (const LESNode& node : r.les.nodes)
            nodes.push_back({{"label", node.label},
                             {"group", node.group.format()},
                             {"exact", node.exact ? json(*node.exact) : json(nullptr)},
                             {"detail", node.detail}});
        std::cout << json{{"command", "sbi"},
                          {"module", l.display()},
                          {"n_max", n_max},
                          {"ok", r.ok()},
                          {"exact", r.exact},
                          {"identifications_ok", r.identifications_ok},
                          {"notes", r.notes},
                          {"table", std::move(table)},
                          {"maps", std::move(maps)},
                          {"nodes", std::move(nodes)}}
                         .dump(2)
                  << "\n";
        return r.ok() ? 0 : 1;
    }

    std::cout << "periodicity sequence of " << l.display() << " through degree " << n_max
              << "\n\n"
              << r.format_table() << "\n";
    for (std::size_t k = n_max + 1; k-- > 0;) {
        std::size_t n = k;
        std::cout << "  I_" << n << " : H -> HC      = " << r.i_map[n].to_string() << "\n"
                  << "  S_" << n << " : HC -> HC[-2] = " << r.s_map[n].to_string() << "\n"
                  << "  B_" << n << " : HC[-1] -> H  = " << r.b_map[n].to_string() << "\n";
    }
    std::cout << "\n";
    for (const LESNode& node : r.les.nodes) {
        std::cout << "  " << node.label << " = " << node.group.format() << ": ";
        if (!node.exact)
            std::cout << "unverified (" << node.detail << ")";
        else if (*node.exact)
            std::cout << "exact";
        else
            std::cout << "NOT EXACT (" << node.detail << ")";
        std::cout << "\n";
    }
    for (const std::string& note : r.notes) std::cout << "  note: " << note << "\n";
    std::cout << "\n"
              << (r.ok() ? "sequence is exact and matches the direct computations"
                         : "sequence verification FAILED")
              << "\n";
    return r.ok() ? 0 : 1;
}

struct ExampleSpec {
    std::string description;
    std::size_t default_degree;
    std::function<PrecyclicModule(std::size_t, std::size_t)> build;
};

const std::map<std::string, ExampleSpec>& examples() {
    static const std::map<std::string, ExampleSpec> reg = {
        {"point",
         {"the one-point module: rank one in every degree", 9,
          [](std::size_t top, std::size_t) { return point_module(top); }}},
        {"hochschild-ground",
         {"tensor powers of the ground ring", 8,
          [](std::size_t top, std::size_t guard) {
              return hochschild_module(ground_ring_algebra(), top, guard);
          }}},
        {"hochschild-dual-numbers",
         {"tensor powers of Z[x]/(x^2)", 5,
          [](std::size_t top, std::size_t guard) {
              return hochschild_module(dual_numbers_algebra(), top, guard);
          }}},
        {"hochschild-upper-triangular",
         {"tensor powers of the 2x2 upper triangular matrices", 3,
          [](std::size_t top, std::size_t guard) {
              return hochschild_module(upper_triangular2_algebra(), top, guard);
          }}},
    };
    return reg;
}

int run_example(const std::string& name, const std::string& emit,
                std::optional<std::size_t> max_degree, std::size_t size_guard) {
    auto it = examples().find(name);
    if (it == examples().end()) {
        std::string known;
        for (const auto& [key, spec] : examples()) known += (known.empty() ? "" : ", ") + key;
        throw ParseError("unknown example \"" + name + "\" (known: " + known + ")");
    }
    const ExampleSpec& spec = it->second;
    const std::size_t top = max_degree.value_or(spec.default_degree);
    PrecyclicModule m = spec.build(top, size_guard);
    ModuleMetadata meta{name, spec.description};
    if (emit.empty()) {
        std::cout << module_to_json(m, meta).dump(2) << "\n";
    } else {
        write_module_file(emit, m, meta);
        std::cout << "wrote " << emit << " (degrees 0.." << m.max_degree() << ")\n";
    }
    return 0;
}

int run_simplex(const std::string& kind_str, std::size_t max_n, bool as_json) {
    SimplexKind kind = kind_str == "sum-zero" ? SimplexKind::SumZero : SimplexKind::SumOne;
    SimplexIdentityReport r = verify_simplex_identities(max_n, kind);
    if (as_json) {
        json failures = json::array();
        for (const SimplexIdentityFailure& f : r.failures)
            failures.push_back({{"n", f.n},
                                {"identity", f.identity},
                                {"generator", f.generator},
                                {"left", f.left},
                                {"right", f.right}});
        std::cout << json{{"command", "simplex-check"},
                          {"kind", kind_str},
                          {"max_n", max_n},
                          {"instances", r.instances},
                          {"ok", r.ok()},
                          {"failures", std::move(failures)}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << r.summary() << "\n";
        for (const SimplexIdentityFailure& f : r.failures)
            std::cout << "  n=" << f.n << " " << f.identity << ", t_" << f.generator << ": "
                      << f.left << " vs " << f.right << "\n";
    }
    return r.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simplicial, cyclic and Connes homology of precyclic modules"};
    app.require_subcommand(1);

    bool as_json = false;
    app.add_flag("--json", as_json, "emit machine-readable JSON reports");

    std::string path;
    std::optional<std::size_t> max_degree;
    auto add_module_command = [&](const std::string& name, const std::string& help) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->add_option("module", path, "module file to read")->required();
        cmd->add_flag("--json", as_json, "emit machine-readable JSON reports");
        return cmd;
    };

    CLI::App* verify_cmd = add_module_command("verify", "check the operator identities");
    CLI::App* homology_cmd =
        add_module_command("homology", "homology of the underlying complex");
    CLI::App* cyclic_cmd = add_module_command("cyclic", "cyclic homology via the bicomplex");
    CLI::App* connes_cmd = add_module_command("connes", "homology of the cyclic quotient complex");
    CLI::App* sbi_cmd =
        add_module_command("sbi", "build and verify the periodicity long exact sequence");
    for (CLI::App* cmd : {homology_cmd, cyclic_cmd, connes_cmd, sbi_cmd})
        cmd->add_option("--max-degree", max_degree,
                        "top degree to report (default: the stored window)");

    std::string example_name, emit_path;
    std::size_t size_guard = 4096;
    CLI::App* example_cmd = app.add_subcommand("example", "generate a built-in module");
    example_cmd->add_option("name", example_name, "which example to build")->required();
    example_cmd->add_option("--emit", emit_path, "write a module file instead of stdout");
    example_cmd->add_option("--max-degree", max_degree, "override the example's top degree");
    example_cmd->add_option("--size-guard", size_guard, "largest rank to materialize");

    std::string kind = "sum-one";
    std::size_t max_n = 6;
    CLI::App* simplex_cmd =
        app.add_subcommand("simplex-check", "verify the algebraic simplex identities");
    simplex_cmd->add_option("--kind", kind, "which simplex relation to work modulo")
        ->check(CLI::IsMember({"sum-one", "sum-zero"}));
    simplex_cmd->add_option("--max-n", max_n, "largest simplex dimension")
        ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    simplex_cmd->add_flag("--json", as_json, "emit machine-readable JSON reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*verify_cmd) return run_verify(load(path), as_json);
        if (*homology_cmd) return run_table("homology", load(path), max_degree, as_json);
        if (*cyclic_cmd) return run_table("cyclic", load(path), max_degree, as_json);
        if (*connes_cmd) return run_table("connes", load(path), max_degree, as_json);
        if (*sbi_cmd) return run_sbi(load(path), max_degree, as_json);
        if (*example_cmd) return run_example(example_name, emit_path, max_degree, size_guard);
        if (*simplex_cmd) return run_simplex(kind, max_n, as_json);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const IncompleteData& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const SizeGuardExceeded& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
