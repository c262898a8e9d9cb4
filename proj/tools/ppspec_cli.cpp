#include "ppspec/acceptance.hpp"
#include "ppspec/flc.hpp"
#include "ppspec/generators.hpp"
#include "ppspec/hull.hpp"
#include "ppspec/io.hpp"
#include "ppspec/kernels.hpp"
#include "ppspec/spectra.hpp"
#include "ppspec/statistics.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

using namespace ppspec;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Globals {
    std::string config;
    std::string out = "out";
    int threads = 0;
    std::optional<std::uint64_t> seed;
    bool plot_data = false;
};

struct Run {
    std::string command;
    json config;
    fs::path out;
    bool plot_data = false;
    std::vector<std::string> outputs;

    void write(const std::string& name, const std::string& text)
    {
        write_text(out / name, text);
        outputs.push_back(name);
    }
};

void check_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed)
{
    if (!obj.is_object())
        throw std::invalid_argument(std::string(where) + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : obj.items())
        if (!ok.count(k))
            throw std::invalid_argument(std::string(where) + ": unknown key '" + k + "'");
}

json& section(json& cfg, const char* name)
{
    if (!cfg.contains(name))
        cfg[name] = json::object();
    return cfg[name];
}

template <class T>
T get_or(json& obj, const char* key, T fallback)
{
    if (!obj.contains(key))
        obj[key] = fallback;
    return obj.at(key).get<T>();
}

// Fills defaults so the manifest echoes the complete configuration.
json resolve_common(json cfg, const Globals& g)
{
    check_keys(cfg, "config",
               {"source", "schedule", "weights", "seed", "generate", "classes", "freq", "autocorr", "diffract",
                "metric", "partition"});
    if (g.seed)
        cfg["seed"] = *g.seed;
    const auto seed = get_or<std::uint64_t>(cfg, "seed", 1);
    json& src = section(cfg, "source");
    if (!src.contains("type"))
        src["type"] = "fibonacci";
    if (src.at("type") == "poisson" && (!src.contains("seed") || g.seed))
        src["seed"] = seed;
    const SourcePtr source = source_from_json(src);

    if (!cfg.contains("schedule"))
        cfg["schedule"] = VanHoveSpec::geometric(source->dim()).schedule;
    const auto sched = cfg.at("schedule").get<std::vector<double>>();
    if (sched.empty())
        throw std::invalid_argument("schedule must not be empty");
    for (std::size_t i = 0; i < sched.size(); ++i)
        if (!(sched[i] > 0.0) || (i > 0 && !(sched[i] > sched[i - 1])))
            throw std::invalid_argument("schedule must be positive and increasing");

    if (!cfg.contains("weights"))
        cfg["weights"] = std::vector<double>(static_cast<std::size_t>(source->colors()), 1.0);
    if (static_cast<int>(cfg.at("weights").size()) != source->colors())
        throw std::invalid_argument("weights: need one weight per color");
    return cfg;
}

VanHoveSpec schedule_of(const json& cfg, int dim)
{
    VanHoveSpec spec = VanHoveSpec::geometric(dim);
    spec.schedule = cfg.at("schedule").get<std::vector<double>>();
    return spec;
}

// A weight is a real number or a [re, im] pair.
WeightVector weights_of(const json& cfg)
{
    std::vector<cplx> w;
    for (const auto& a : cfg.at("weights")) {
        if (a.is_array()) {
            if (a.size() != 2)
                throw std::invalid_argument("weights: complex weights are [re, im]");
            w.emplace_back(a[0].get<double>(), a[1].get<double>());
        } else {
            w.emplace_back(a.get<double>(), 0.0);
        }
    }
    return WeightVector(std::move(w));
}

Region region_or(json& obj, const char* key, int dim, double lo, double hi)
{
    if (!obj.contains(key))
        obj[key] = region_to_json(Region::box(std::vector<double>(static_cast<std::size_t>(dim), lo),
                                              std::vector<double>(static_cast<std::size_t>(dim), hi)));
    return region_from_json(obj.at(key));
}

int cmd_generate(Run& run, const SourcePtr& source)
{
    json& s = section(run.config, "generate");
    check_keys(s, "generate", {"region"});
    const Region region = region_or(s, "region", source->dim(), 0.0, 100.0);
    const auto patch = window(*source, region);
    run.write("patch.json", patch_to_json(patch).dump(2) + "\n");
    std::printf("%zu points in %s\n", patch.size(), region.str().c_str());
    return kExitOk;
}

int cmd_classes(Run& run, const SourcePtr& source)
{
    json& s = section(run.config, "classes");
    check_keys(s, "classes", {"radius", "scan"});
    const double radius = get_or(s, "radius", 3.0);
    const double scan = get_or(s, "scan", 1000.0);
    const auto table = enumerate_cluster_classes(*source, radius, Region::centered_cube(source->dim(), scan));
    json out = json::array();
    for (std::size_t i = 0; i < table.size(); ++i)
        out.push_back({{"cluster", cluster_to_json(table.representatives[i])}, {"count", table.counts[i]}});
    run.write("classes.json", out.dump(2) + "\n");
    std::printf("%zu classes of radius %g over %s\n", table.size(), radius, table.scan.str().c_str());
    return kExitOk;
}

int cmd_freq(Run& run, const SourcePtr& source)
{
    json& s = section(run.config, "freq");
    check_keys(s, "freq", {"cluster", "offsets", "offset_span"});
    if (!s.contains("cluster")) {
        Cluster origin = Cluster::single(source->colors(), 0, Point::zero(source->dim()));
        s["cluster"] = cluster_to_json(origin);
    }
    const Cluster p = cluster_from_json(s.at("cluster"), source->dim());
    if (p.colors() != source->colors())
        throw std::invalid_argument("freq: cluster needs one point list per color");
    const auto count = get_or<std::size_t>(s, "offsets", 1);
    const double span = get_or(s, "offset_span", 10.0);
    if (count == 0)
        throw std::invalid_argument("freq: offsets must be at least 1");
    const auto offsets = low_discrepancy_offsets(count, span, source->dim());
    const auto est = estimate_frequency(*source, p, schedule_of(run.config, source->dim()), offsets);
    run.write("freq.csv", frequency_table(est, ','));
    run.write("freq.json", frequency_summary(est).dump(2) + "\n");
    if (run.plot_data)
        run.write("freq.dat", frequency_table(est, ' '));
    std::printf("freq = %.12g, uniformity gap %.3g\n", est.value, est.uniformity_gap);
    return kExitOk;
}

int cmd_autocorr(Run& run, const SourcePtr& source)
{
    json& s = section(run.config, "autocorr");
    check_keys(s, "autocorr", {"radius", "n", "method"});
    const double radius = get_or(s, "radius", 10.0);
    const auto spec = schedule_of(run.config, source->dim());
    const double n = get_or(s, "n", spec.largest());
    const std::string method = get_or<std::string>(s, "method", "frequency");
    const WeightVector w = weights_of(run.config);
    AutocorrelationMeasure g;
    if (method == "frequency")
        g = autocorr_from_frequencies(*source, w, radius, spec, n);
    else if (method == "direct")
        g = autocorr_direct(*source, w, radius, spec, n);
    else
        throw std::invalid_argument("autocorr: method must be frequency or direct");
    run.write("autocorr.csv", autocorr_table(g, ','));
    if (run.plot_data)
        run.write("autocorr.dat", autocorr_table(g, ' '));
    std::printf("%zu atoms in [-%g, %g]\n", g.entries.size(), radius, radius);
    return kExitOk;
}

int cmd_diffract(Run& run, const SourcePtr& source)
{
    json& s = section(run.config, "diffract");
    check_keys(s, "diffract", {"k_range", "resolution", "drift_tol", "module_seeds"});
    const auto range = get_or(s, "k_range", std::vector<double>{-3.0, 3.0});
    if (range.size() != 2 || !(range[0] < range[1]))
        throw std::invalid_argument("diffract: k_range must be [lo, hi] with lo < hi");
    PeakScanOptions opts;
    opts.resolution = get_or(s, "resolution", 0.0);
    opts.drift_tol = get_or(s, "drift_tol", 0.2);
    opts.module_seeds = get_or(s, "module_seeds", true);
    const auto ns = run.config.at("schedule").get<std::vector<double>>();
    const auto est = peak_scan(*source, weights_of(run.config), range[0], range[1], ns, opts);
    run.write("diffraction.csv", diffraction_table(est, ','));
    if (run.plot_data)
        run.write("diffraction.dat", diffraction_table(est, ' '));
    const auto kept = est.retained();
    std::printf("%zu candidates, %zu retained (n1=%g, n2=%g, threshold %.3g)\n", est.entries.size(), kept.size(),
                est.n1, est.n2, est.threshold);
    for (const auto& p : kept)
        std::printf("  k = %.12g  I = %.6g\n", p.k, p.intensity);
    return kExitOk;
}

int cmd_metric(Run& run, const SourcePtr& source)
{
    json& s = section(run.config, "metric");
    check_keys(s, "metric", {"other", "eps_grid"});
    if (!s.contains("other"))
        throw std::invalid_argument("metric: 'other' source spec is required");
    const SourcePtr other = source_from_json(s.at("other"));
    const double eps_grid = get_or(s, "eps_grid", 1e-3);
    const auto m = hull_metric(*source, *other, eps_grid);
    run.write("metric.json", metric_to_json(m).dump(2) + "\n");
    std::printf("d in [%.9g, %.9g]\n", m.lower, m.upper);
    return kExitOk;
}

int cmd_partition(Run& run, const SourcePtr& source)
{
    json& s = section(run.config, "partition");
    check_keys(s, "partition", {"radius", "delta", "scan", "measure_n"});
    const double radius = get_or(s, "radius", 3.0);
    const double delta = get_or(s, "delta", 0.2);
    PartitionOptions opts;
    opts.scan = get_or(s, "scan", opts.scan);
    const double n = get_or(s, "measure_n", schedule_of(run.config, source->dim()).largest());
    const auto part = build_partition_1d(*source, radius, delta, opts);
    const auto m = partition_measure(part, *source, n);
    run.write("partition.json", partition_to_json(part).dump(2) + "\n");
    std::printf("%zu cells over %zu R-patch classes; sum Vol*freq = %.9g\n", part.cells.size(), part.classes.size(),
                m.total);
    return kExitOk;
}

int cmd_verify(Run& run, const std::string& suite, bool fast, std::uint64_t seed)
{
    AcceptanceOptions opts;
    opts.fast = fast;
    opts.seed = seed;
    suite_criteria(suite);
    const auto results = run_suite(suite, opts);
    std::string report;
    for (const auto& r : results)
        report += format_result(r) + "\n";
    std::fputs(report.c_str(), stdout);
    run.write("verify.txt", report);
    return all_passed(results) ? kExitOk : kExitNumerical;
}

void write_manifest(const Run& run, int threads)
{
    json m;
    m["command"] = run.command;
    m["resolved_config"] = run.config;
    m["threads"] = threads;
    m["outputs"] = run.outputs;
    write_text(run.out / "manifest.json", m.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Point-set statistics, hull partitions and diffraction of colored Delone sets"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "JSON run configuration (or a manifest from a previous run)");
    app.add_option("--out", g.out, "Output directory")->capture_default_str();
    app.add_option("--threads", g.threads, "Thread count for data-parallel kernels (0 = runtime default)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", g.seed, "Seed for random sources and sampled checks");
    app.add_flag("--plot-data", g.plot_data, "Also write gnuplot-ready .dat files");

    const char* names[] = {"generate", "classes", "freq", "autocorr", "diffract", "metric", "partition"};
    const char* help[] = {"Write a windowed patch as point-set JSON",
                          "Enumerate R-patch classes",
                          "Cluster frequency along the van Hove schedule",
                          "Autocorrelation coefficients",
                          "Bragg peak scan with drift test",
                          "Certified hull-metric bracket",
                          "1D hull partition into cylinder sets"};
    for (std::size_t i = 0; i < std::size(names); ++i)
        app.add_subcommand(names[i], help[i])->fallthrough();
    auto* verify = app.add_subcommand("verify", "Run an acceptance suite")->fallthrough();
    std::string suite = "all";
    bool fast = false;
    verify->add_option("suite", suite, "lattice | fibonacci | controls | all")->capture_default_str();
    verify->add_flag("--fast", fast, "Reduced sample counts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (g.threads > 0)
        set_threads(g.threads);
    Run run;
    run.command = app.get_subcommands().front()->get_name();
    run.out = g.out;
    run.plot_data = g.plot_data;
    try {
        json cfg = json::object();
        if (!g.config.empty()) {
            cfg = read_json(g.config);
            if (cfg.contains("resolved_config"))
                cfg = cfg.at("resolved_config");
        }
        int code = kExitOk;
        if (run.command == "verify") {
            run.config = {{"suite", suite}, {"fast", fast}, {"seed", g.seed.value_or(AcceptanceOptions{}.seed)}};
            code = cmd_verify(run, suite, fast, run.config.at("seed").get<std::uint64_t>());
        } else {
            run.config = resolve_common(std::move(cfg), g);
            const SourcePtr source = source_from_json(run.config.at("source"));
            if (run.command == "generate")
                code = cmd_generate(run, source);
            else if (run.command == "classes")
                code = cmd_classes(run, source);
            else if (run.command == "freq")
                code = cmd_freq(run, source);
            else if (run.command == "autocorr")
                code = cmd_autocorr(run, source);
            else if (run.command == "diffract")
                code = cmd_diffract(run, source);
            else if (run.command == "metric")
                code = cmd_metric(run, source);
            else
                code = cmd_partition(run, source);
        }
        write_manifest(run, max_threads());
        return code;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical check failed: %s\n", e.what());
        return kExitNumerical;
    }
}
