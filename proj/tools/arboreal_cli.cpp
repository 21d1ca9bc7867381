// arboreal: command-line driver for the tree chain-complex experiments.

#include "arboreal/aligned.hpp"
#include "arboreal/errors.hpp"
#include "arboreal/flatmate.hpp"
#include "arboreal/homology.hpp"
#include "arboreal/orbits.hpp"
#include "arboreal/report.hpp"
#include "arboreal/tree.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace arboreal;

namespace {

constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;

// Raised for flag combinations CLI11 cannot express on its own.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TreeSource {
    std::string file;
    int branching = 0;
    int radius = -1;
    std::size_t random_size = 0;
};

struct Common {
    TreeSource tree;
    std::optional<std::uint64_t> seed;
    std::size_t vertex_cap = kDefaultVertexCap;
    std::size_t dim_cap = kDefaultDimensionCap;
    std::string out;
    std::string format = "json";
};

void add_tree_flags(CLI::App* cmd, TreeSource& src) {
    cmd->add_option("--tree-file", src.file, "edge-list file");
    cmd->add_option("--regular", src.branching, "branching of a regular ball")->check(CLI::Range(2, 1000));
    cmd->add_option("--radius", src.radius, "radius of the regular ball")->check(CLI::NonNegativeNumber);
    cmd->add_option("--random", src.random_size, "random labelled tree on N vertices")->check(CLI::PositiveNumber);
}

void add_common_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--vertex-cap", c.vertex_cap, "maximum tree size")->check(CLI::PositiveNumber);
    cmd->add_option("--dim-cap", c.dim_cap, "maximum chain-space dimension")->check(CLI::PositiveNumber);
    cmd->add_option("--out", c.out, "report path (default: <command>.<format>)");
    cmd->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "csv"}));
}

bool has_tree_source(const TreeSource& s) {
    return !s.file.empty() || s.branching > 0 || s.random_size > 0;
}

std::uint64_t require_seed(const Common& c, const std::string& command) {
    if (!c.seed) throw ConfigError(command + " is randomized and needs --seed");
    return *c.seed;
}

Tree load_tree(const Common& c, Json& config) {
    const TreeSource& s = c.tree;
    const int sources = !s.file.empty() + (s.branching > 0) + (s.random_size > 0);
    if (sources != 1) throw ConfigError("give exactly one of --tree-file, --regular/--radius, --random");
    Tree t = Tree::from_edges({});
    if (!s.file.empty()) {
        t = read_edge_list_file(s.file);
        config["tree"] = {{"source", "file"}, {"path", s.file}};
    } else if (s.branching > 0) {
        if (s.radius < 0) throw ConfigError("--regular needs --radius");
        t = gen_regular_ball(s.branching, s.radius, c.vertex_cap);
        config["tree"] = {{"source", "regular"}, {"branching", s.branching}, {"radius", s.radius}};
    } else {
        if (!c.seed) throw ConfigError("--random is randomized and needs --seed");
        if (s.random_size > c.vertex_cap) throw CapExceeded("random tree size exceeds the vertex cap");
        t = gen_random_tree(s.random_size, *c.seed);
        config["tree"] = {{"source", "random"}, {"vertices", s.random_size}};
    }
    if (t.size() > c.vertex_cap) throw CapExceeded("tree has " + std::to_string(t.size()) + " vertices, above the cap");
    config["tree"]["size"] = t.size();
    return t;
}

void echo_common(const Common& c, Json& config) {
    config["seed"] = c.seed ? Json(*c.seed) : Json();
    config["vertex_cap"] = c.vertex_cap;
    config["dim_cap"] = c.dim_cap;
    config["format"] = c.format;
}

struct DegreeRange {
    int degree = -1;
    int nmin = 2;
    int nmax = 5;

    std::pair<int, int> resolve() const {
        if (degree >= 0) return {degree, degree};
        if (nmin < 0 || nmax < nmin) throw ConfigError("need 0 <= --nmin <= --nmax");
        return {nmin, nmax};
    }
};

void add_degree_flags(CLI::App* cmd, DegreeRange& d) {
    cmd->add_option("--degree", d.degree, "single degree")->check(CLI::NonNegativeNumber);
    cmd->add_option("--nmin", d.nmin, "lowest degree");
    cmd->add_option("--nmax", d.nmax, "highest degree");
}

int finish(Report& report, const Common& c, bool passed) {
    report.summary["passed"] = passed;
    const std::string path = c.out.empty() ? report.command + "." + c.format : c.out;
    write_file_atomically(path, c.format == "json" ? report.to_json() : report.to_csv());
    std::cout << report.summary_line() << '\n';
    return passed ? 0 : kExitAssertion;
}

const std::vector<std::string> kVerificationColumns = {"check", "degree", "samples", "passed", "ok", "counterexample",
                                                       "detail"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact experiments on aligned chain complexes of trees"};
    app.require_subcommand(1);

    Common common;

    auto* exactness = app.add_subcommand("verify-exactness", "exactness of the full, aligned or flatmate complex");
    bool aligned_only = false;
    std::size_t point_count = 0;
    int exact_nmax = 3;
    add_tree_flags(exactness, common.tree);
    add_common_flags(exactness, common);
    exactness->add_flag("--aligned", aligned_only, "restrict to aligned tuples of the tree");
    exactness->add_option("--vertices", point_count, "full complex on N abstract vertices")->check(CLI::PositiveNumber);
    exactness->add_option("--nmax", exact_nmax, "highest degree")->check(CLI::NonNegativeNumber);
    std::string flatmate_second;
    exactness->add_option("--flatmate-with", flatmate_second,
                          "flatmate complex of the tree times this edge-list tree");

    auto* chainmap = app.add_subcommand("verify-chainmap", "boundary commutes with phi on sampled tuples");
    DegreeRange chain_degrees;
    std::size_t samples = 500;
    add_tree_flags(chainmap, common.tree);
    add_common_flags(chainmap, common);
    add_degree_flags(chainmap, chain_degrees);
    chainmap->add_option("--samples", samples, "tuples per degree")->check(CLI::PositiveNumber);

    auto* pate_cmd = app.add_subcommand("verify-pate", "identities of the pate operator");
    add_tree_flags(pate_cmd, common.tree);
    add_common_flags(pate_cmd, common);
    pate_cmd->add_option("--samples", samples, "instances per identity")->check(CLI::PositiveNumber);

    auto* norm = app.add_subcommand("norm-phi", "l1 norms of phi on sampled tuples");
    DegreeRange norm_degrees;
    add_tree_flags(norm, common.tree);
    add_common_flags(norm, common);
    add_degree_flags(norm, norm_degrees);
    norm->add_option("--samples", samples, "tuples per degree")->check(CLI::PositiveNumber);

    auto* orbit = app.add_subcommand("orbit-report", "signature classes against witnessed orbits");
    int orbit_degree = 1;
    int diameter = 4;
    std::string mode = "both";
    OrbitSearchOptions orbit_options;
    add_tree_flags(orbit, common.tree);
    add_common_flags(orbit, common);
    orbit->add_option("--degree", orbit_degree, "tuple degree")->check(CLI::NonNegativeNumber);
    orbit->add_option("--diameter", diameter, "maximum tuple diameter")->check(CLI::NonNegativeNumber);
    orbit->add_option("--mode", mode, "typed, full or both")->check(CLI::IsMember({"typed", "full", "both"}));
    orbit->add_option("--slack", orbit_options.slack, "witness margin around each hull")->check(CLI::NonNegativeNumber);
    orbit->add_option("--anchor-radius", orbit_options.anchor_radius, "enumeration radius around the root");
    orbit->add_option("--max-pairs", orbit_options.max_pairs_per_class, "pairs witnessed per class before sampling");

    auto* probe = app.add_subcommand("flatmate-probe", "minimal preimage norms in flatmate complexes");
    std::string family = "path";
    int kmin = 3, kmax = 8;
    std::string first_file, second_file;
    int probe_degree = 1;
    std::size_t probe_samples = 50;
    std::string growth = "2";
    ProbeOptions probe_options;
    add_common_flags(probe, common);
    probe->add_option("--family", family, "product family")->check(CLI::IsMember({"path"}));
    probe->add_option("--kmin", kmin, "smallest factor size")->check(CLI::PositiveNumber);
    probe->add_option("--kmax", kmax, "largest factor size")->check(CLI::PositiveNumber);
    probe->add_option("--first-file", first_file, "first factor edge list (single instance)");
    probe->add_option("--second-file", second_file, "second factor edge list (single instance)");
    probe->add_option("--degree", probe_degree, "cycle degree")->check(CLI::NonNegativeNumber);
    probe->add_option("--samples", probe_samples, "unit cycles per instance")->check(CLI::PositiveNumber);
    probe->add_option("--growth-threshold", growth, "flag ratios of consecutive maxima above this");
    probe->add_option("--lp-cap", probe_options.lp.basis_cap, "LP basis cap")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        Report report;
        Json& config = report.config;
        echo_common(common, config);

        if (*exactness) {
            report.command = "verify-exactness";
            std::vector<ExactnessRecord> records;
            config["nmax"] = exact_nmax;
            if (point_count > 0) {
                if (has_tree_source(common.tree) || aligned_only) {
                    throw ConfigError("--vertices describes the full complex and takes no tree");
                }
                config["complex"] = "full";
                config["vertices"] = point_count;
                records = verify_exactness(all_vertices(point_count), exact_nmax, {}, common.dim_cap);
            } else if (!flatmate_second.empty()) {
                if (aligned_only) throw ConfigError("--aligned and --flatmate-with are exclusive");
                const Tree t = load_tree(common, config);
                const Tree second = read_edge_list_file(flatmate_second);
                config["complex"] = "flatmate";
                config["second_factor"] = {{"file", flatmate_second}, {"vertices", second.size()}};
                records = flatmate_exactness(ProductComplex(t, second), exact_nmax, common.dim_cap);
            } else {
                const Tree t = load_tree(common, config);
                config["complex"] = aligned_only ? "aligned" : "full";
                records = verify_exactness(all_vertices(t.size()), exact_nmax,
                                           aligned_only ? aligned_membership(t) : TupleMembership{}, common.dim_cap);
            }
            bool all_exact = true;
            for (const auto& r : records) {
                report.results.push_back(to_json(r));
                all_exact = all_exact && r.exact;
            }
            report.csv_columns = {"degree", "dim", "rank", "kernel_dim", "exact"};
            report.summary["degrees"] = records.size();
            report.summary["all_exact"] = all_exact;
            return finish(report, common, all_exact);
        }

        if (*chainmap) {
            report.command = "verify-chainmap";
            const auto seed = require_seed(common, report.command);
            const Tree t = load_tree(common, config);
            const auto [lo, hi] = chain_degrees.resolve();
            config["nmin"] = lo;
            config["nmax"] = hi;
            config["samples"] = samples;
            std::size_t passed = 0, total = 0;
            for (int n = lo; n <= hi; ++n) {
                const auto r = verify_chain_map(t, n, samples, seed + static_cast<std::uint64_t>(n));
                report.results.push_back(to_json(r));
                passed += r.passed;
                total += r.samples;
            }
            report.csv_columns = kVerificationColumns;
            report.summary["tuples"] = total;
            report.summary["passed_tuples"] = passed;
            return finish(report, common, passed == total);
        }

        if (*pate_cmd) {
            report.command = "verify-pate";
            const auto seed = require_seed(common, report.command);
            const Tree t = load_tree(common, config);
            config["samples"] = samples;
            bool ok = true;
            std::size_t checks = 0;
            for (const auto& r : verify_pate_identities(t, samples, seed)) {
                report.results.push_back(to_json(r));
                ok = ok && r.ok();
                checks += r.samples;
            }
            report.csv_columns = kVerificationColumns;
            report.summary["identities"] = report.results.size();
            report.summary["checks"] = checks;
            return finish(report, common, ok);
        }

        if (*norm) {
            report.command = "norm-phi";
            const auto seed = require_seed(common, report.command);
            const Tree t = load_tree(common, config);
            const auto [lo, hi] = norm_degrees.resolve();
            config["nmin"] = lo;
            config["nmax"] = hi;
            config["samples"] = samples;
            bool ok = true;
            Rational worst = 0, worst_standard = 0;
            for (int n = lo; n <= hi; ++n) {
                const auto scan = phi_norm_scan(t, n, samples, seed + static_cast<std::uint64_t>(n));
                report.results.push_back(to_json(scan));
                ok = ok && scan.ok();
                worst = std::max(worst, scan.max_norm);
                worst_standard = std::max(worst_standard, scan.max_standard_norm);
            }
            report.csv_columns = {"degree",           "samples",          "max_norm", "term_bound",
                                  "standard_samples", "max_standard_norm", "term_bound_violations",
                                  "standard_bound_violations", "ok", "worst_tuple"};
            report.summary["max_norm"] = worst.str();
            report.summary["max_standard_norm"] = worst_standard.str();
            return finish(report, common, ok);
        }

        if (*orbit) {
            report.command = "orbit-report";
            orbit_options.seed = require_seed(common, report.command);
            const Tree t = load_tree(common, config);
            config["degree"] = orbit_degree;
            config["diameter"] = diameter;
            config["mode"] = mode;
            config["slack"] = orbit_options.slack;
            config["max_pairs"] = orbit_options.max_pairs_per_class;
            std::vector<bool> modes;
            if (mode != "full") modes.push_back(true);
            if (mode != "typed") modes.push_back(false);
            bool ok = true;
            for (bool typed : modes) {
                const auto r = count_orbits_vs_signatures(t, orbit_degree, diameter, typed, orbit_options);
                const std::string label = typed ? "typed" : "full";
                config["anchor_radius"] = r.anchor_radius;
                for (const auto& row : r.rows) {
                    Json line = {{"mode", label}};
                    line.update(to_json(row, typed));
                    report.results.push_back(std::move(line));
                }
                report.summary[label + "_tuples"] = r.tuples;
                report.summary[label + "_signature_classes"] = r.signature_classes;
                report.summary[label + "_witnessed_orbits"] = r.witnessed_orbits;
                report.summary[label + "_pair_checks"] = r.pair_checks;
                report.summary[label + "_pair_failures"] = r.pair_failures;
                ok = ok && r.ok();
            }
            report.csv_columns = {"mode", "signature", "type_bit", "gaps", "sort_sign", "class_size",
                                  "witness_verified"};
            return finish(report, common, ok);
        }

        if (*probe) {
            report.command = "flatmate-probe";
            const auto seed = require_seed(common, report.command);
            try {
                probe_options.growth_threshold = parse_rational(growth);
            } catch (const std::invalid_argument&) {
                throw ConfigError("--growth-threshold must be a rational number");
            }
            probe_options.cap = common.dim_cap;
            std::vector<ProductComplex> instances;
            if (!first_file.empty() || !second_file.empty()) {
                if (first_file.empty() || second_file.empty()) {
                    throw ConfigError("--first-file and --second-file go together");
                }
                instances.emplace_back(read_edge_list_file(first_file), read_edge_list_file(second_file));
                config["family"] = {{"first", first_file}, {"second", second_file}};
            } else {
                if (kmin > kmax) throw ConfigError("need --kmin <= --kmax");
                for (int k = kmin; k <= kmax; ++k) instances.emplace_back(path_tree(k), path_tree(k));
                config["family"] = {{"name", family}, {"kmin", kmin}, {"kmax", kmax}};
            }
            for (const auto& p : instances) {
                if (p.size() > common.vertex_cap) throw CapExceeded("product " + p.describe() + " exceeds the vertex cap");
            }
            config["degree"] = probe_degree;
            config["samples"] = probe_samples;
            config["growth_threshold"] = probe_options.growth_threshold.str();
            config["lp_cap"] = probe_options.lp.basis_cap;

            const auto rows = homotopy_norm_probe(instances, probe_degree, probe_samples, seed, probe_options);
            bool ok = true;
            std::size_t flagged = 0;
            Json series = Json::array();
            for (const auto& r : rows) {
                report.results.push_back(to_json(r));
                ok = ok && r.exact && r.certificates_ok == r.cycles_tested && r.cycles_tested > 0;
                flagged += r.suspicious_growth;
                series.push_back(r.max_min_preimage_norm ? Json(r.max_min_preimage_norm->str()) : Json());
            }
            report.csv_columns = {"instance", "factor1_size", "factor2_size", "degree", "samples", "seed", "exact",
                                  "exact_flags", "max_min_norm", "max_min_norm_num", "max_min_norm_den",
                                  "certificates_ok", "suspicious_growth"};
            report.summary["instances"] = rows.size();
            report.summary["norm_series"] = series;
            report.summary["suspicious_growth"] = flagged;
            return finish(report, common, ok);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InvalidTree& e) {
        std::cerr << "invalid tree: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
