// sidonlab: command-line front end for sampling, counting, packing, the
// deletion pipeline and the bound calculators.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sidon/error.hpp"
#include "sidon/experiment.hpp"

using namespace sidon;

namespace {

Params cli_params(int h, Int N, std::uint64_t seed, const std::string& alpha) {
    Params p = Params::preset(h, N, seed);
    if (!alpha.empty()) {
        const auto slash = alpha.find('/');
        if (slash == std::string::npos) throw ValidationError("--alpha must look like p/q");
        try {
            p.alpha = Rational(BigInt(alpha.substr(0, slash)), BigInt(alpha.substr(slash + 1)));
        } catch (const std::exception&) {
            throw ValidationError(fmt::format("cannot parse --alpha '{}'", alpha));
        }
        p.validate();
    }
    return p;
}

// Writes the single named file of a bundle to `out` ("-" for stdout).
void emit(const ResultBundle& bundle, const std::string& name, const std::string& out) {
    const std::string& content = bundle.files.at(name);
    if (out == "-" || out.empty()) {
        std::cout << content;
    } else {
        write_file(out, content);
    }
}

IntegerSet read_set(const std::string& path, std::size_t line, Int N) {
    auto sets = parse_jsonl(read_file(path), N);
    if (line >= sets.size()) {
        throw ValidationError(fmt::format("{} has {} sets, asked for line {}", path, sets.size(), line));
    }
    return sets[line];
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sampling, counting and verification for B_h[g] sets and additive bases"};
    app.require_subcommand(1);
    // --h is the order parameter, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");

    int h = 2;
    Int N = 100000;
    std::uint64_t seed = 42;
    std::size_t trials = 1;
    std::size_t decay_trials = 2000;
    std::size_t growth_sets = 30;
    std::size_t prop2_samples = 1000;
    std::string alpha;
    std::string out = "-";

    auto* sample = app.add_subcommand("sample", "Draw sets from the inclusion model (JSON lines)");
    sample->add_option("--h", h, "Order h; alpha defaults to 2/(4h+1)");
    sample->add_option("--N", N, "Window size")->required();
    sample->add_option("--seed", seed, "RNG seed");
    sample->add_option("--trials", trials, "Number of sets");
    sample->add_option("--alpha", alpha, "Override alpha as p/q");
    sample->add_option("--out", out, "Output path");

    std::string set_path;
    std::size_t line = 0;
    auto* count = app.add_subcommand("count", "Representation profile n,R,r,Rstar (CSV)");
    count->add_option("--set", set_path, "JSON-lines file of sets")->required();
    count->add_option("--line", line, "Which set in the file (0-based)");
    count->add_option("--h", h, "Order")->required();
    count->add_option("--N", N, "Window size")->required();
    count->add_option("--out", out, "Output path");

    int l = 2;
    auto* rstar = app.add_subcommand("rstar", "Maximum disjoint representations n,r_star,certified (CSV)");
    rstar->add_option("--set", set_path, "JSON-lines file of sets")->required();
    rstar->add_option("--line", line, "Which set in the file (0-based)");
    rstar->add_option("--l", l, "Order")->required();
    rstar->add_option("--N", N, "Window size")->required();
    rstar->add_option("--out", out, "Output path");

    std::string reading = "literal";
    auto* repair_cmd = app.add_subcommand("repair", "Sample, delete prefixes and verify (JSON report)");
    repair_cmd->add_option("--h", h, "Order h");
    repair_cmd->add_option("--N", N, "Window size")->required();
    repair_cmd->add_option("--seed", seed, "RNG seed");
    repair_cmd->add_option("--reading", reading, "literal | order");
    repair_cmd->add_option("--out", out, "Output path");

    std::string report_path;
    auto* verify = app.add_subcommand("verify", "Re-derive a repair report and compare");
    verify->add_option("--report", report_path, "report.json")->required();

    bool table = false;
    std::uint64_t w = 0;
    auto* bounds = app.add_subcommand("bounds", "Exact exponent table and g_k chain");
    bounds->add_option("--h", h, "Order h");
    bounds->add_flag("--table", table, "Print the exponent table");
    bounds->add_option("--w", w, "Number of deleted elements for G");

    int k = 2;
    int s = 2;
    Int fit_from = 0;
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo decay of P(r*_k(n) >= s) (CSV)");
    estimate->add_option("--h", h, "Order h");
    estimate->add_option("--k", k, "Order k of r*");
    estimate->add_option("--s", s, "Event threshold s");
    estimate->add_option("--N", N, "Window size");
    estimate->add_option("--trials", decay_trials, "Sampled sets")->capture_default_str();
    estimate->add_option("--seed", seed, "RNG seed");
    estimate->add_option("--fit-from", fit_from, "Lower end of the fitted range (default N/100)");
    estimate->add_option("--out", out, "Output path");

    auto* growth = app.add_subcommand("growth", "Growth of r_{2h+1} over sampled sets (JSON)");
    growth->add_option("--h", h, "Order h");
    growth->add_option("--N", N, "Window size");
    growth->add_option("--sets", growth_sets, "Sampled sets")->capture_default_str();
    growth->add_option("--seed", seed, "RNG seed");
    growth->add_option("--out", out, "Output path");

    std::uint64_t g = 1;
    std::uint64_t ll = 1;
    int order = 2;
    int multiplier = 0;
    Int prop_N = 500;
    auto* prop2 = app.add_subcommand("prop2", "Empirical containment B*_k[g] ∩ B_{k-1}[l] ⊆ B_k[...]");
    prop2->add_option("--order", order, "Order k");
    prop2->add_option("--g", g, "g");
    prop2->add_option("--l", ll, "l");
    prop2->add_option("--multiplier", multiplier, "Multiplier m (default: the order)");
    prop2->add_option("--N", prop_N, "Window size");
    prop2->add_option("--samples", prop2_samples, "Random sets")->capture_default_str();
    prop2->add_option("--seed", seed, "RNG seed");
    prop2->add_option("--out", out, "Output path");

    std::string manifest_path;
    std::string out_dir;
    bool verify_mode = false;
    auto* run = app.add_subcommand("run", "Execute a manifest and write a result bundle");
    run->add_option("--manifest", manifest_path, "Manifest JSON")->required();
    run->add_option("--out-dir", out_dir, "Bundle directory (default: next to the manifest)");
    run->add_flag("--verify", verify_mode, "Re-run and compare against an existing bundle");

    CLI11_PARSE(app, argc, argv);

    try {
        auto direct = [&](const std::string& op, const Params& p, json options, std::size_t n_trials) {
            Manifest m;
            m.operation = op;
            m.params = p;
            m.trials = n_trials;
            m.options = std::move(options);
            return run_manifest(m);
        };

        if (*sample) {
            emit(direct("sample", cli_params(h, N, seed, alpha), json::object(), trials), "sets.jsonl", out);
        } else if (*count || *rstar) {
            const IntegerSet A = read_set(set_path, line, N);
            Manifest m;
            m.operation = *count ? "count" : "rstar";
            m.params = Params::preset(*count ? h : std::max(2, l), N, 0);
            m.options = {{"set_sha256", sha256_hex(to_jsonl({A}))}};
            if (*rstar) m.options["l"] = l;
            const std::string sha = manifest_hash(m);
            const std::string text =
                *count ? profile_csv(profile(A, h, N), sha) : rstar_csv(r_star_profile(A, l, N), sha);
            if (out == "-") std::cout << text; else write_file(out, text);
        } else if (*repair_cmd) {
            auto bundle = direct("repair", cli_params(h, N, seed, ""), {{"reading", reading}}, 1);
            emit(bundle, "report.json", out);
            return bundle.status;
        } else if (*verify) {
            const std::string original = read_file(report_path);
            json j;
            try {
                j = json::parse(original);
            } catch (const json::exception& e) {
                throw ValidationError(fmt::format("malformed report: {}", e.what()));
            }
            const RepairReport rep = rerun_report(j);
            json regenerated = to_json(rep);
            regenerated["manifest_sha256"] = j.value("manifest_sha256", std::string{});
            const bool identical = dump(regenerated) == original;
            const Reverification check = reverify(rep);
            std::cout << fmt::format("regenerated report identical: {}\n", identical ? "yes" : "no");
            std::cout << fmt::format("independent re-verification: {}\n", check.ok ? "pass" : "FAIL");
            for (const auto& p : check.problems) std::cout << "  " << p << "\n";
            std::cout << fmt::format("repair outcome: {}\n", rep.success ? "success" : "failure");
            return identical && check.ok ? kExitOk : kExitVerdict;
        } else if (*bounds) {
            Params p = Params::preset(h, 1, 0);
            json options = {{"w", w}};
            auto bundle = direct("bounds", p, options, 1);
            json j = json::parse(bundle.files.at("table.json"));
            if (table) {
                std::cout << fmt::format("h = {}, alpha = {}\n", h, j["exponents"]["alpha"].get<std::string>());
                std::cout << fmt::format("{:>3} {:>4} {:>14} {:>14} {:>7} {:>8}\n", "k", "s",
                                         "(k*alpha-1)*s", "closed form", "match", "< -1");
                for (const auto& r : j["exponents"]["rows"]) {
                    std::cout << fmt::format("{:>3} {:>4} {:>14} {:>14} {:>7} {:>8}\n", r["k"].get<int>(),
                                             r["s"].get<int>(), r["exponent"].get<std::string>(),
                                             r["closed_form"].get<std::string>(), r["matches"].get<bool>(),
                                             r["summable"].get<bool>());
                }
            } else {
                std::cout << bundle.files.at("table.json");
            }
        } else if (*estimate) {
            json options = {{"k", k}, {"s", s}};
            if (fit_from > 0) options["fit_from"] = fit_from;
            auto bundle = direct("estimate", Params::preset(h, N, seed), options, decay_trials);
            emit(bundle, "decay.csv", out);
            std::cerr << bundle.files.at("decay.json");
        } else if (*growth) {
            emit(direct("growth", Params::preset(h, N, seed), json::object(), growth_sets), "growth.json", out);
        } else if (*prop2) {
            json options = {{"order", order}, {"g", g}, {"l", ll},
                            {"multiplier", multiplier > 0 ? multiplier : order}};
            auto bundle = direct("prop2", Params::preset(std::max(2, order), prop_N, seed), options, prop2_samples);
            emit(bundle, "prop2.json", out);
            return bundle.status;
        } else if (*run) {
            json j;
            try {
                j = json::parse(read_file(manifest_path));
            } catch (const json::exception& e) {
                throw ValidationError(fmt::format("malformed manifest: {}", e.what()));
            }
            const Manifest m = parse_manifest(j);
            std::filesystem::path dir = out_dir.empty()
                ? std::filesystem::path(manifest_path).replace_extension("") += "_out"
                : std::filesystem::path(out_dir);
            if (verify_mode) {
                verify_bundle(m, dir);
                std::cout << "bundle reproduced: " << dir.string() << "\n";
                return kExitOk;
            }
            const ResultBundle bundle = run_manifest(m);
            write_bundle(bundle, m, dir);
            std::cout << fmt::format("{} {}\n", bundle.content_hash, dir.string());
            return bundle.status;
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerdict;
    }
    return kExitOk;
}
