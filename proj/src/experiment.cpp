#include "sidon/experiment.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "sidon/error.hpp"
#include "sidon/sampler.hpp"

#ifndef SIDON_BUILD_ID
#define SIDON_BUILD_ID "unknown"
#endif

namespace sidon {

const char* build_id() { return SIDON_BUILD_ID; }

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 digest failed");
    }
    std::string hex;
    hex.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(fmt::format("cannot read {}", path.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write {}", path.string()));
    out << content;
}

// --- manifest ---

const std::vector<std::string>& known_operations() {
    static const std::vector<std::string> ops{"sample", "count", "rstar", "repair",
                                              "estimate", "growth", "bounds", "prop2"};
    return ops;
}

namespace {

json params_json(const Params& p) {
    return {{"h", p.h},
            {"alpha", {{"num", numerator(p.alpha).str()}, {"den", denominator(p.alpha).str()}}},
            {"N", p.N},
            {"seed", p.seed}};
}

Rational parse_alpha(const json& a) {
    auto part = [](const json& v) -> BigInt {
        if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
        if (v.is_string()) return BigInt(v.get<std::string>());
        throw ValidationError("alpha parts must be integers");
    };
    if (!a.is_object() || !a.contains("num") || !a.contains("den")) {
        throw ValidationError("alpha must be an object {num, den}");
    }
    const BigInt den = part(a.at("den"));
    if (den == 0) throw ValidationError("alpha denominator is zero");
    return Rational(part(a.at("num")), den);
}

Params parse_params(const json& j) {
    if (!j.is_object()) throw ValidationError("params must be an object");
    Params p;
    p.h = j.value("h", 2);
    p.N = j.value("N", Int{0});
    p.seed = j.value("seed", std::uint64_t{0});
    p.alpha = j.contains("alpha") ? parse_alpha(j.at("alpha")) : preset_alpha(p.h);
    p.validate();
    return p;
}

template <typename T>
T option(const Manifest& m, const char* key, T fallback) {
    return m.options.is_object() && m.options.contains(key) ? m.options.at(key).get<T>() : fallback;
}

}  // namespace

Manifest parse_manifest(const json& j) {
    try {
        if (!j.is_object()) throw ValidationError("manifest must be a JSON object");
        Manifest m;
        m.schema_version = j.value("schema_version", 0);
        if (m.schema_version != kSchemaVersion) {
            throw ValidationError(fmt::format("unsupported schema_version {} (expected {})",
                                              m.schema_version, kSchemaVersion));
        }
        m.operation = j.value("operation", std::string{});
        const auto& ops = known_operations();
        if (std::find(ops.begin(), ops.end(), m.operation) == ops.end()) {
            throw ValidationError(fmt::format("unknown operation '{}'", m.operation));
        }
        if (!j.contains("params")) throw ValidationError("manifest has no params");
        m.params = parse_params(j.at("params"));
        m.trials = j.at("params").value("trials", std::size_t{1});
        if (m.trials < 1) throw ValidationError("trials must be at least 1");
        if (j.contains("options")) {
            m.options = j.at("options");
            if (!m.options.is_object()) throw ValidationError("options must be an object");
        }
        m.build_id = j.value("build_id", std::string{});
        m.created = j.value("created", std::string{});
        return m;
    } catch (const json::exception& e) {
        throw ValidationError(fmt::format("malformed manifest: {}", e.what()));
    }
}

json to_json(const Manifest& m) {
    json params = params_json(m.params);
    params["trials"] = m.trials;
    json j = {{"schema_version", m.schema_version},
              {"operation", m.operation},
              {"params", params},
              {"options", m.options}};
    if (!m.build_id.empty()) j["build_id"] = m.build_id;
    if (!m.created.empty()) j["created"] = m.created;
    return j;
}

std::string manifest_hash(const Manifest& m) {
    json identity = to_json(m);
    identity.erase("build_id");
    identity.erase("created");
    return sha256_hex(identity.dump());
}

std::string content_hash(const std::map<std::string, std::string>& files) {
    std::string digest_input;
    for (const auto& [name, content] : files) {
        digest_input += name;
        digest_input += '\0';
        digest_input += sha256_hex(content);
        digest_input += '\n';
    }
    return sha256_hex(digest_input);
}

// --- formats ---

std::string to_jsonl(const std::vector<IntegerSet>& sets) {
    std::string out;
    for (const auto& s : sets) {
        json arr = json::array();
        for (Int e : s.elements()) arr.push_back(e);
        out += arr.dump();
        out += '\n';
    }
    return out;
}

std::vector<IntegerSet> parse_jsonl(std::string_view text, Int N) {
    std::vector<IntegerSet> sets;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            json arr = json::parse(line);
            if (!arr.is_array()) throw ValidationError("not an array");
            std::vector<Int> elems;
            for (const auto& v : arr) {
                // Nonpositive values are kept so make() rejects them.
                const Int e = v.get<Int>();
                if (e <= N) elems.push_back(e);
            }
            sets.push_back(IntegerSet::make(std::move(elems), N));
        } catch (const json::exception& e) {
            throw ValidationError(fmt::format("line {}: {}", lineno, e.what()));
        } catch (const ValidationError& e) {
            throw ValidationError(fmt::format("line {}: {}", lineno, e.what()));
        }
    }
    return sets;
}

std::string profile_csv(const RepProfile& p, const std::string& manifest_sha) {
    std::string out = fmt::format("# manifest_sha256={}\nn,R,r,Rstar\n", manifest_sha);
    for (Int n = 1; n <= p.N; ++n) {
        const auto i = static_cast<std::size_t>(n);
        out += fmt::format("{},{},{},{}\n", n, p.R[i], p.r[i], p.Rstar[i]);
    }
    return out;
}

std::string rstar_csv(const std::vector<PackingResult>& values, const std::string& manifest_sha) {
    std::string out = fmt::format("# manifest_sha256={}\nn,r_star,certified\n", manifest_sha);
    for (std::size_t n = 1; n < values.size(); ++n) {
        out += fmt::format("{},{},{}\n", n, values[n].value, values[n].certified ? "true" : "false");
    }
    return out;
}

std::string decay_csv(const DecayEstimate& est, const std::string& manifest_sha) {
    std::string out = fmt::format("# manifest_sha256={}\nbin_lo,bin_hi,events,frequency\n", manifest_sha);
    const double trials = static_cast<double>(est.trials);
    for (std::size_t b = 0; b < est.curve.bins(); ++b) {
        out += fmt::format("{},{},{},{}\n", est.curve.edges[b], est.curve.edges[b + 1] - 1,
                           est.curve.sums[b], est.curve.sums[b] / (trials * est.curve.width[b]));
    }
    return out;
}

namespace {

json fit_json(const LineFit& f) {
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"points", f.points}};
}

json ints(std::span<const Int> v) { return json(std::vector<Int>(v.begin(), v.end())); }

}  // namespace

json to_json(const DecayEstimate& est) {
    return {{"fit", fit_json(est.fit)},
            {"interval95", {est.interval.low, est.interval.high}},
            {"ceiling", est.ceiling.str()},
            {"ceiling_value", static_cast<double>(est.ceiling)},
            {"trials", est.trials},
            {"bins", est.curve.bins()},
            {"nonzero_bins", nonzero_bins(est.curve)},
            {"undecided", est.undecided}};
}

json to_json(const GrowthEstimate& est) {
    return {{"fit", fit_json(est.fit)},
            {"predicted_exponent", est.predicted.str()},
            {"sets", est.sets},
            {"covered_upper_half", est.covered},
            {"first_gap_above_half", est.first_gap_above_half}};
}

json to_json(const ExponentTable& table) {
    json rows = json::array();
    for (const auto& r : table.rows) {
        rows.push_back({{"k", r.k},
                        {"s", r.s},
                        {"exponent", r.value.str()},
                        {"closed_form", r.closed_form.str()},
                        {"matches", r.matches},
                        {"summable", r.summable}});
    }
    return {{"h", table.h}, {"alpha", table.alpha.str()}, {"rows", rows}};
}

json to_json(const GChain& chain) {
    json g = json::object();
    for (const auto& [k, v] : chain.g) g[std::to_string(k)] = v.str();
    return {{"h", chain.h}, {"reading", to_string(chain.reading)}, {"g", g},
            {"max_g", chain.max_g().str()}};
}

json to_json(const Prop2Result& r) {
    json j = {{"samples", r.samples},
              {"premise_held", r.premise_held},
              {"premise_unknown", r.premise_unknown},
              {"bound", r.bound},
              {"max_count_under_premise", r.max_count_under_premise},
              {"counterexample", nullptr}};
    if (r.counterexample) {
        const auto& c = *r.counterexample;
        j["counterexample"] = {{"sample", c.sample}, {"set", ints(c.set.elements())},
                               {"n", c.n}, {"count", c.count}, {"bound", c.bound}};
    }
    return j;
}

json to_json(const RepairReport& rep) {
    const auto& p = rep.params;
    json stages = json::array();
    for (const auto& s : rep.stages) {
        json st = {{"k", s.k},
                   {"bound", s.bound},
                   {"found", s.threshold.found},
                   {"n_k", s.threshold.n_k},
                   {"evaluations", s.threshold.evaluations},
                   {"deleted", s.deleted},
                   {"B_membership", to_string(s.B_membership)}};
        if (s.k > p.h) {
            st["undeleted_threshold"] = s.undeleted_threshold;
            st["undeleted_holds_beyond_nk"] = s.undeleted_holds_beyond_nk;
        }
        stages.push_back(std::move(st));
    }
    const auto& gb = rep.gbound;
    return {
        {"params", params_json(p)},
        {"config",
         {{"reading", to_string(rep.config.reading)},
          {"max_vertices", rep.config.packing.max_vertices},
          {"node_limit", rep.config.packing.node_limit},
          {"enumeration_budget", rep.config.packing.enumeration_budget},
          {"walk_budget", rep.config.packing.walk_budget},
          {"fit_bins", rep.config.fit_bins}}},
        {"A", ints(rep.A.elements())},
        {"stages", stages},
        {"max_threshold", rep.max_threshold},
        {"B", ints(rep.B.elements())},
        {"deleted", rep.deleted},
        {"w", rep.w},
        {"Bh1", {{"order", p.h},
                 {"beyond_threshold", rep.Bh1_beyond_threshold},
                 {"full_window", rep.Bh1_full},
                 {"first_repeat", rep.Bh1_witness}}},
        {"basis", {{"order", 2 * p.h + 1},
                   {"gaps", rep.basis_gaps},
                   {"window", {rep.basis_from, p.N}},
                   {"covers_upper_half", rep.basis_upper_half},
                   {"fit", rep.basis_fitted ? fit_json(rep.basis_fit) : json(nullptr)}}},
        {"growth", {{"order", 2 * p.h + 1},
                    {"fit_from", rep.growth_fit_from},
                    {"fit", fit_json(rep.growth_fit)},
                    {"constant_c", rep.growth_constant},
                    {"predicted_exponent", Rational(1, 4 * p.h + 1).str()}}},
        {"g_chain", to_json(rep.chain)},
        {"G_bound", {{"G", gb.G.str()},
                     {"w", gb.w},
                     {"max_R_A", gb.max_R_A},
                     {"A_in_B2h_G", gb.A_in_B2h_G},
                     {"pigeonhole_holds", gb.pigeonhole_holds},
                     {"multisets_checked", gb.multisets_checked},
                     {"holds", gb.holds}}},
        {"success", rep.success},
        {"failures", rep.failures},
    };
}

RepairReport rerun_report(const json& j) {
    try {
        const Params params = parse_params(j.at("params"));
        PipelineConfig cfg;
        const auto& c = j.at("config");
        cfg.reading = parse_reading(c.at("reading").get<std::string>());
        cfg.packing.max_vertices = c.at("max_vertices").get<std::size_t>();
        cfg.packing.node_limit = c.at("node_limit").get<std::uint64_t>();
        cfg.packing.enumeration_budget = c.at("enumeration_budget").get<std::uint64_t>();
        cfg.packing.walk_budget = c.at("walk_budget").get<std::uint64_t>();
        cfg.fit_bins = c.at("fit_bins").get<std::size_t>();
        const IntegerSet A = IntegerSet::make(j.at("A").get<std::vector<Int>>(), params.N);
        return repair(A, params, cfg);
    } catch (const json::exception& e) {
        throw ValidationError(fmt::format("malformed report: {}", e.what()));
    }
}

// --- orchestration ---

namespace {

std::string numbered(const std::string& stem, const std::string& ext, std::size_t t, std::size_t trials) {
    return trials == 1 ? stem + ext : fmt::format("{}_{}{}", stem, t, ext);
}

PipelineConfig pipeline_config(const Manifest& m) {
    PipelineConfig cfg;
    cfg.reading = parse_reading(option<std::string>(m, "reading", "literal"));
    return cfg;
}

}  // namespace

ResultBundle run_manifest(const Manifest& m) {
    ResultBundle bundle;
    bundle.manifest_hash = manifest_hash(m);
    const std::string& sha = bundle.manifest_hash;
    const Params& p = m.params;
    auto& files = bundle.files;

    try {
        if (m.operation == "sample") {
            const Sampler sampler(SampleSpec{p});
            std::vector<IntegerSet> sets;
            for (std::size_t t = 0; t < m.trials; ++t) sets.push_back(sampler.sample(t));
            files["sets.jsonl"] = to_jsonl(sets);
        } else if (m.operation == "count") {
            const Sampler sampler(SampleSpec{p});
            const int order = option<int>(m, "order", p.h);
            for (std::size_t t = 0; t < m.trials; ++t) {
                files[numbered("profile", ".csv", t, m.trials)] =
                    profile_csv(profile(sampler.sample(t), order, p.N), sha);
            }
        } else if (m.operation == "rstar") {
            const Sampler sampler(SampleSpec{p});
            const int l = option<int>(m, "l", 2);
            for (std::size_t t = 0; t < m.trials; ++t) {
                files[numbered("rstar", ".csv", t, m.trials)] =
                    rstar_csv(r_star_profile(sampler.sample(t), l, p.N), sha);
            }
        } else if (m.operation == "repair") {
            const PipelineConfig cfg = pipeline_config(m);
            const Sampler sampler(SampleSpec{p});
            std::size_t successes = 0;
            std::size_t reverify_failures = 0;
            for (std::size_t t = 0; t < m.trials; ++t) {
                Params trial_params = p;
                trial_params.seed = p.seed + t;
                const IntegerSet A = Sampler(SampleSpec{trial_params}).sample(0);
                const RepairReport rep = repair(A, trial_params, cfg);
                if (rep.success) ++successes;
                if (!reverify(rep).ok) ++reverify_failures;
                json j = to_json(rep);
                j["manifest_sha256"] = sha;
                files[numbered("report", ".json", t, m.trials)] = dump(j);
            }
            if (m.trials > 1) {
                files["summary.json"] = dump({{"manifest_sha256", sha},
                                              {"runs", m.trials},
                                              {"successes", successes},
                                              {"reverification_failures", reverify_failures}});
            }
            if (reverify_failures > 0 || (m.trials == 1 && successes == 0)) bundle.status = kExitVerdict;
        } else if (m.operation == "estimate") {
            DecayConfig cfg;
            cfg.h = p.h;
            cfg.alpha = p.alpha;
            cfg.N = p.N;
            cfg.seed = p.seed;
            cfg.trials = m.trials;
            cfg.k = option<int>(m, "k", 2);
            cfg.s = option<int>(m, "s", 2);
            cfg.fit_from = option<Int>(m, "fit_from", std::max<Int>(1, p.N / 100));
            cfg.bins = option<std::size_t>(m, "bins", 40);
            cfg.min_bins = option<std::size_t>(m, "min_bins", 30);
            cfg.resamples = option<std::size_t>(m, "resamples", 1000);
            const DecayEstimate est = estimate_decay(cfg);
            files["decay.csv"] = decay_csv(est, sha);
            json j = to_json(est);
            j["manifest_sha256"] = sha;
            files["decay.json"] = dump(j);
        } else if (m.operation == "growth") {
            GrowthConfig cfg;
            cfg.h = p.h;
            cfg.N = p.N;
            cfg.seed = p.seed;
            cfg.sets = m.trials;
            cfg.k = option<int>(m, "k", 2 * p.h + 1);
            cfg.fit_from = option<Int>(m, "fit_from", std::max<Int>(1, p.N / 100));
            cfg.bins = option<std::size_t>(m, "bins", 40);
            json j = to_json(estimate_growth(cfg));
            j["manifest_sha256"] = sha;
            files["growth.json"] = dump(j);
        } else if (m.operation == "bounds") {
            const auto w = option<std::uint64_t>(m, "w", 0);
            json j = {{"manifest_sha256", sha},
                      {"exponents", to_json(exponent_table(p.h))},
                      {"g_chain_literal", to_json(g_chain(p.h, Prop2Reading::literal))},
                      {"g_chain_order", to_json(g_chain(p.h, Prop2Reading::order))},
                      {"w", w},
                      {"G_literal", g_chain(p.h, Prop2Reading::literal).G(w).str()},
                      {"G_order", g_chain(p.h, Prop2Reading::order).G(w).str()}};
            files["table.json"] = dump(j);
        } else if (m.operation == "prop2") {
            Prop2Config cfg;
            cfg.samples = m.trials;
            cfg.order = option<int>(m, "order", p.h);
            cfg.g = option<std::uint64_t>(m, "g", 1);
            cfg.l = option<std::uint64_t>(m, "l", 1);
            cfg.multiplier = option<int>(m, "multiplier", cfg.order);
            cfg.N = p.N;
            cfg.seed = p.seed;
            const Prop2Result res = check_prop2(cfg);
            json j = to_json(res);
            j["manifest_sha256"] = sha;
            files["prop2.json"] = dump(j);
            if (res.counterexample) bundle.status = kExitVerdict;
        }
    } catch (const json::exception& e) {
        throw ValidationError(fmt::format("bad option in manifest: {}", e.what()));
    }
    bundle.content_hash = content_hash(files);
    return bundle;
}

void write_bundle(const ResultBundle& bundle, const Manifest& m, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    json hashes = json::object();
    for (const auto& [name, content] : bundle.files) {
        write_file(dir / name, content);
        hashes[name] = sha256_hex(content);
    }
    write_file(dir / "manifest.json", dump(to_json(m)));
    write_file(dir / "bundle.json", dump({{"manifest_sha256", bundle.manifest_hash},
                                          {"files", hashes},
                                          {"content_sha256", bundle.content_hash}}));
}

void verify_bundle(const Manifest& m, const std::filesystem::path& dir) {
    json recorded;
    try {
        recorded = json::parse(read_file(dir / "bundle.json"));
    } catch (const json::exception& e) {
        throw ValidationError(fmt::format("malformed bundle.json: {}", e.what()));
    }
    const ResultBundle fresh = run_manifest(m);
    if (recorded.value("manifest_sha256", std::string{}) != fresh.manifest_hash) {
        throw ValidationError("bundle was produced by a different manifest");
    }
    if (recorded.value("content_sha256", std::string{}) != fresh.content_hash) {
        throw AssertionFailure("nondeterminism detected: re-run content hash differs from bundle");
    }
}

}  // namespace sidon
