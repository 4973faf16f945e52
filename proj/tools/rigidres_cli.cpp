// rigidres: command-line front end.
//
// Exit codes: 0 success, 1 a verify check failed, 2 usage or parse error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <rigidres/rigidres.hpp>

#ifndef RIGIDRES_VERSION
#define RIGIDRES_VERSION "0.0.0"
#endif

using namespace rigidres;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Common {
    std::string field = "Q";
    std::string format = "text";
};

FieldSpec parse_field(const std::string& text)
{
    try {
        return FieldSpec::parse(text);
    } catch (const std::exception& e) {
        throw CLI::ValidationError("--field", e.what());
    }
}

const LcmLattice* lcm_of(const LoadedInput& in) { return in.lcm ? &*in.lcm : nullptr; }

int cmd_betti(const std::string& path, const Common& opt)
{
    const FieldSpec field = parse_field(opt.field);
    const LoadedInput in = load_input_file(path);
    const BettiTable table = betti_table(in.lattice, field);
    if (opt.format == "json") {
        std::cout << betti_json(table, lcm_of(in)).dump(2) << "\n";
        return kOk;
    }
    std::cout << "field: " << field.name() << "\n" << betti_grid(table, lcm_of(in)) << "\n"
              << multigraded_listing(table, lcm_of(in)) << "totals:";
    for (auto t : table.totals())
        std::cout << ' ' << t;
    std::cout << "\n";
    return kOk;
}

int cmd_classify(const std::string& path, const Common& opt)
{
    const FieldSpec field = parse_field(opt.field);
    const LoadedInput in = load_input_file(path);
    const Classification c = classify(*in.lattice, lcm_of(in), field);
    if (opt.format == "json")
        std::cout << classification_json(c, *in.lattice, lcm_of(in)).dump(2) << "\n";
    else
        std::cout << betti_grid(betti_table(in.lattice, field), lcm_of(in)) << classification_text(c, *in.lattice, lcm_of(in));
    return kOk;
}

int cmd_resolve(const std::string& path, const Common& opt, const std::string& schedule, std::uint64_t seed)
{
    const FieldSpec field = parse_field(opt.field);
    const LoadedInput in = load_input_file(path);
    if (!in.lcm)
        throw CLI::ValidationError("resolve", "expects a monomial ideal file");
    const MonomialIdeal& ideal = in.lcm->ideal();
    const auto pivots = schedule == "random" ? PivotSchedule::random(seed) : PivotSchedule::canonical();
    const auto res = minimalize(taylor_complex(ideal, field), pivots);
    const auto report = verify_resolution(res, ideal);
    const bool linear = lattice_linear_support(res, *in.lcm);
    if (opt.format == "json") {
        Json j = resolution_json(res);
        j["verified"] = report.ok;
        j["lattice_linear"] = linear;
        std::cout << j.dump(2) << "\n";
        return kOk;
    }
    std::cout << "field: " << field.name() << "\nranks:";
    for (auto r : res.ranks())
        std::cout << ' ' << r;
    std::cout << "\nminimal: " << (res.is_minimal() ? "yes" : "no") << "\nverified: "
              << (report.ok ? "yes" : "no (" + report.failure + ")") << "\nlattice-linear: " << (linear ? "yes" : "no")
              << "\n";
    for (std::size_t i = 0; i <= res.length(); ++i) {
        std::cout << "F" << i << ":";
        for (const auto& m : res.basis(i))
            std::cout << ' ' << m.to_string();
        std::cout << "\n";
    }
    for (std::size_t i = 1; i <= res.length(); ++i) {
        std::cout << "D" << i << ":\n";
        const auto& d = res.differential(i);
        for (std::size_t r = 0; r < d.rows(); ++r) {
            std::cout << " ";
            for (std::size_t c = 0; c < d.cols(); ++c)
                std::cout << ' ' << (d(r, c).is_zero() ? "0" : d(r, c).to_string());
            std::cout << "\n";
        }
    }
    return kOk;
}

int cmd_lattice(const std::string& path, const Common& opt)
{
    const LoadedInput in = load_input_file(path);
    const auto& lattice = *in.lattice;
    if (opt.format == "json") {
        std::cout << lattice_to_json(lattice).dump() << "\n";
    } else if (opt.format == "dot") {
        std::cout << to_dot(lattice, lcm_of(in));
    } else {
        std::cout << "atoms: " << lattice.atom_count() << "\nelements: " << lattice.size() << "\n";
        for (Mask m : lattice.elements()) {
            std::cout << "  " << support_string(m);
            if (in.lcm)
                std::cout << ' ' << in.lcm->label(m).to_string();
            std::cout << "\n";
        }
        std::cout << "covers: " << lattice.covers().size() << "\nmeet-irreducibles:";
        for (Mask m : lattice.meet_irreducibles())
            std::cout << ' ' << support_string(m);
        std::cout << "\n";
    }
    return kOk;
}

struct ExploreOptions {
    unsigned n = 3;
    bool stratify = false;
    std::size_t budget = kDefaultEnumerationBudget;
    unsigned workers = 1;
    std::string out;
};

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path.string());
    f << text;
}

int cmd_explore(const ExploreOptions& ex, const Common& opt)
{
    const FieldSpec field = parse_field(opt.field);
    auto e = enumerate_Ln(ex.n, ex.budget, ex.workers);
    std::cerr << "L(" << ex.n << "): " << e.keys.size() << " lattices" << (e.truncated ? " (truncated by budget)" : "")
              << "\n";
    if (!ex.stratify) {
        std::string lines;
        for (const auto& key : e.keys)
            lines += Json{{"key", key_json(key)}, {"n", key.n}}.dump() + "\n";
        if (ex.out.empty())
            std::cout << lines;
        else {
            std::filesystem::create_directories(ex.out);
            write_file(std::filesystem::path(ex.out) / "lattices.jsonl", lines);
        }
        return kOk;
    }
    const Strata strata = stratify(e.keys, field, ex.workers);
    if (ex.out.empty()) {
        std::cout << atlas_jsonl(strata);
        std::cerr << strata_summary(strata);
        return kOk;
    }
    std::filesystem::create_directories(ex.out);
    const std::filesystem::path dir(ex.out);
    write_file(dir / "atlas.jsonl", atlas_jsonl(strata));
    write_file(dir / "edges.jsonl", atlas_edges_jsonl(strata));
    write_file(dir / "strata.txt", strata_summary(strata));
    std::cout << strata_summary(strata);
    return kOk;
}

struct VerifyOptions {
    std::string theorem;
    unsigned n = 4;
    bool rigid_only = false;
    std::size_t count = 50;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::size_t show = 10;
};

int cmd_verify(const VerifyOptions& v, const Common& opt)
{
    const FieldSpec field = parse_field(opt.field);
    const auto& names = sweep_names();
    if (std::find(names.begin(), names.end(), v.theorem) == names.end()) {
        std::cerr << "unknown check '" << v.theorem << "'; available:\n";
        for (const auto& n : names)
            std::cerr << "  " << n << "\n";
        return kUsage;
    }
    SweepReport report;
    if (v.theorem == "face-rigidity")
        report = sweep_face_rigidity(v.count, v.seed, field);
    else if (v.theorem == "cross-validation")
        report = sweep_cross_validation(v.count, v.seed, {field});
    else {
        const Atlas atlas = build_atlas(v.n, field, v.workers);
        if (atlas.truncated)
            std::cerr << "warning: L(" << v.n << ") truncated by the enumeration budget\n";
        if (v.theorem == "betti-monotonicity")
            report = sweep_betti_monotonicity(atlas);
        else if (v.theorem == "rigid-up-closure")
            report = sweep_rigid_up_closure(atlas);
        else if (v.theorem == "concentrated-iff-lattice-linear")
            report = sweep_concentrated_iff_lattice_linear(atlas, v.rigid_only, v.workers);
        else if (v.theorem == "resolution-transfer")
            report = sweep_resolution_transfer(atlas, v.workers);
        else
            report = sweep_interval_identity(atlas);
    }
    if (opt.format == "json") {
        std::cout << Json{{"check", report.name},
                          {"field", field.name()},
                          {"checked", report.checked},
                          {"violations", report.violations}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << report.name << ": " << report.checked << " checked, " << report.violations.size()
                  << " violations\n";
        for (std::size_t i = 0; i < report.violations.size() && i < v.show; ++i)
            std::cout << "  " << report.violations[i] << "\n";
    }
    return report.ok() ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Betti numbers, minimal resolutions and rigidity of monomial ideals and finite atomic lattices"};
    app.set_version_flag("--version", "rigidres " RIGIDRES_VERSION);
    app.require_subcommand(1);

    Common opt;
    auto add_common = [&](CLI::App* sub, std::vector<std::string> formats) {
        sub->add_option("--field", opt.field, "Q, or a prime p given as Fp / GF(p) / ZZ/p")->capture_default_str();
        sub->add_option("--format", opt.format, "output format")
            ->capture_default_str()
            ->check(CLI::IsMember(std::move(formats)));
    };

    std::string input;
    auto* betti = app.add_subcommand("betti", "multigraded Betti numbers of an ideal, lattice or complex");
    betti->add_option("input", input, "ideal, lattice JSON or complex file")->required();
    add_common(betti, {"text", "json"});

    auto* classify_cmd = app.add_subcommand("classify", "rigid / concentrated / lattice-linear report");
    classify_cmd->add_option("input", input, "ideal, lattice JSON or complex file")->required();
    add_common(classify_cmd, {"text", "json"});

    std::string schedule = "canonical";
    std::uint64_t seed = 1;
    auto* resolve = app.add_subcommand("resolve", "minimal free resolution by Taylor minimalization");
    resolve->add_option("input", input, "ideal file")->required();
    resolve->add_option("--schedule", schedule, "pivot schedule")
        ->capture_default_str()
        ->check(CLI::IsMember({"canonical", "random"}));
    resolve->add_option("--seed", seed, "seed for the random schedule")->capture_default_str();
    add_common(resolve, {"text", "json"});

    auto* lattice = app.add_subcommand("lattice", "print the lcm-lattice or lattice");
    lattice->add_option("input", input, "ideal, lattice JSON or complex file")->required();
    add_common(lattice, {"text", "json", "dot"});

    ExploreOptions ex;
    auto* explore = app.add_subcommand("explore", "enumerate L(n), optionally stratified by Betti vector");
    explore->add_option("--n", ex.n, "number of atoms")->required()->check(CLI::Range(1u, kMaxEnumerableAtoms));
    explore->add_flag("--stratify", ex.stratify, "compute Betti strata and write the atlas");
    explore->add_option("--budget", ex.budget, "maximum number of lattices")->capture_default_str();
    explore->add_option("--workers", ex.workers, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
    explore->add_option("--out", ex.out, "output directory (default: stdout)");
    add_common(explore, {"text"});

    VerifyOptions ver;
    auto* verify = app.add_subcommand("verify", "machine-check a structural result");
    verify->add_option("theorem", ver.theorem, "check name")->required();
    verify->add_option("--n", ver.n, "atoms for the L(n) sweeps")->capture_default_str()->check(
        CLI::Range(1u, kMaxEnumerableAtoms));
    verify->add_flag("--rigid-only", ver.rigid_only, "restrict the lattice-linearity sweep to rigid members");
    verify->add_option("--count", ver.count, "samples for the randomized checks")->capture_default_str();
    verify->add_option("--seed", ver.seed, "seed for the randomized checks")->capture_default_str();
    verify->add_option("--workers", ver.workers, "worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
    verify->add_option("--show", ver.show, "violations to print")->capture_default_str();
    add_common(verify, {"text", "json"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*betti)
            return cmd_betti(input, opt);
        if (*classify_cmd)
            return cmd_classify(input, opt);
        if (*resolve)
            return cmd_resolve(input, opt, schedule, seed);
        if (*lattice)
            return cmd_lattice(input, opt);
        if (*explore)
            return cmd_explore(ex, opt);
        if (*verify)
            return cmd_verify(ver, opt);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << input << ": " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
