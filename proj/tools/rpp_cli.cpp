// rpp: command-line front end for sampling, repulsion, estimation,
// second-order diagnostics and the benchmark sweeps.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rpp/bench.hpp"
#include "rpp/error.hpp"
#include "rpp/io.hpp"
#include "rpp/parallel.hpp"
#include "rpp/repulsion.hpp"
#include "rpp/sampling.hpp"
#include "rpp/secondorder.hpp"
#include "rpp/version.hpp"

namespace fs = std::filesystem;
using namespace rpp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitResource = 4;

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnsupportedDimension:
    case ErrorKind::UnsupportedWindow: return kExitUsage;
    case ErrorKind::Resource: return kExitResource;
    default: return kExitRuntime;
    }
}

std::string utc_timestamp()
{
    auto const now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

fs::path manifest_path(fs::path const& out)
{
    fs::path p = out;
    p.replace_extension(".manifest.json");
    return p;
}

std::vector<double> parse_list(std::string const& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (std::exception const&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw Error(ErrorKind::InvalidArgument, "bad number '" + item + "' in list '" + s + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw Error(ErrorKind::InvalidArgument, "empty list");
    return out;
}

std::vector<Method> parse_methods(std::string const& s)
{
    std::vector<Method> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(method_from_string(item));
    if (out.empty())
        throw Error(ErrorKind::InvalidArgument, "no methods given");
    return out;
}

// Step size from "auto", "-auto" or a number.
double resolve_epsilon(std::string const& s, int d, std::optional<double> rho)
{
    if (s == "auto" || s == "-auto") {
        if (!rho)
            throw Error(ErrorKind::Contract, "epsilon=auto needs an intensity (input metadata or --rho)");
        double const e = epsilon_zero(d, *rho);
        return s == "auto" ? e : -e;
    }
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (std::exception const&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw Error(ErrorKind::InvalidArgument, "epsilon must be a number, 'auto' or '-auto'");
    return v;
}

struct Context
{
    std::vector<std::string> argv;
    RunManifest manifest;

    void record_options(CLI::App const& app)
    {
        for (auto const* opt : app.get_options()) {
            if (opt->get_name() == "--help" || opt->get_name().empty())
                continue;
            std::string name = opt->get_name();
            while (!name.empty() && name.front() == '-')
                name.erase(name.begin());
            if (opt->count() > 0) {
                auto const& r = opt->results();
                manifest.parameters["options"][name] = r.size() == 1 ? Json(r.front()) : Json(r);
            } else if (!opt->get_default_str().empty()) {
                manifest.parameters["options"][name] = opt->get_default_str();
            }
        }
    }

    void finish(fs::path const& out, std::string const& summary)
    {
        manifest.argv = argv;
        manifest.version = kVersion;
        manifest.timestamp = utc_timestamp();
        write_text_file(manifest_path(out), manifest_to_json(manifest).dump(2) + "\n");
        std::cout << summary << '\n';
    }
};

void save_json(fs::path const& path, Json const& j)
{
    write_text_file(path, j.dump(2) + "\n");
}

template<class Writer>
void save_table(fs::path const& path, Writer&& w)
{
    std::ostringstream os;
    w(os);
    write_text_file(path, os.str());
}

int run(std::vector<std::string> const& args);

int run(std::vector<std::string> const& args)
{
    CLI::App app{"Repelled point processes: sampling, repulsion, Monte Carlo estimation and diagnostics"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker cap (default: RPP_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);

    Context ctx;
    ctx.argv = args;
    int status = kExitOk;

    // sample
    auto* sample = app.add_subcommand("sample", "draw a point configuration");
    std::string process;
    int d = 3;
    double rho = 500;
    std::size_t n = 0;
    std::string window_spec = "box:1";
    std::uint64_t seed = 0, stream = 0;
    std::string out;
    bool no_scramble = false;
    sample->add_option("process", process, "poisson | binomial | ginibre | sobol")
        ->required()
        ->check(CLI::IsMember({"poisson", "binomial", "ginibre", "sobol"}));
    sample->add_option("--d", d, "dimension")->capture_default_str();
    sample->add_option("--rho", rho, "intensity (poisson; rescaling target for ginibre)")->capture_default_str();
    sample->add_option("--n", n, "point count (binomial, sobol) or matrix size (ginibre)");
    sample->add_option("--window", window_spec, "box:SIDE | ball:R | annulus:R0:R1 | JSON")->capture_default_str();
    sample->add_option("--seed", seed, "seed base")->capture_default_str();
    sample->add_option("--stream", stream, "seed stream")->capture_default_str();
    sample->add_flag("--no-scramble", no_scramble, "plain Sobol sequence");
    sample->add_option("--out", out, "output .csv or .json")->required();

    sample->callback([&] {
        ctx.manifest.command = "sample";
        ctx.manifest.seed = Seed{seed, stream};
        ctx.record_options(*sample);
        Seed const s{seed, stream};
        std::optional<Configuration> c;
        if (process == "poisson") {
            c = sample_poisson(parse_window_spec(window_spec, d), rho, s);
        } else if (process == "binomial") {
            if (n == 0)
                throw Error(ErrorKind::InvalidArgument, "binomial needs --n >= 1");
            c = sample_binomial(parse_window_spec(window_spec, d), n, s);
        } else if (process == "sobol") {
            if (n == 0)
                throw Error(ErrorKind::InvalidArgument, "sobol needs --n >= 1");
            if (sample->count("--window") && parse_window_spec(window_spec, d) != Window::centered_box(d, 1.0))
                throw Error(ErrorKind::InvalidArgument, "sobol points live in box:1");
            c = sample_sobol(d, n, !no_scramble, s);
        } else {
            if (sample->count("--d") && d != 2)
                throw Error(ErrorKind::UnsupportedDimension, "ginibre samples are planar (d = 2)");
            if (n == 0)
                throw Error(ErrorKind::InvalidArgument, "ginibre needs the matrix size --n");
            c = sample_ginibre(static_cast<int>(n), s);
            if (sample->count("--rho"))
                c = rescale(*c, std::sqrt(1.0 / (std::numbers::pi * rho)));
        }
        save_configuration(out, *c);
        ctx.manifest.artifacts = {out};
        ctx.finish(out, "sample: " + std::to_string(c->size()) + " points (" + process + ", d="
                            + std::to_string(c->dim()) + ") -> " + out);
    });

    // repel
    auto* repel_cmd = app.add_subcommand("repel", "apply the repulsion operator to a configuration");
    std::string in;
    std::string epsilon_spec = "auto";
    std::string scheme = "origin";
    double q = 0, p = INFINITY;
    int iterations = 1;
    bool self_consistent = false;
    std::string forces_out;
    std::optional<double> in_rho;
    std::string in_window;
    repel_cmd->add_option("--in", in, "input configuration (.csv or .json)")->required();
    repel_cmd->add_option("--epsilon", epsilon_spec, "step size, 'auto' (epsilon_0) or '-auto'")->capture_default_str();
    repel_cmd->add_option("--scheme", scheme, "origin | target")
        ->capture_default_str()
        ->check(CLI::IsMember({"origin", "target"}));
    repel_cmd->add_option("--q", q, "inner truncation radius (target)")->capture_default_str();
    repel_cmd->add_option("--p", p, "outer truncation radius (target)");
    repel_cmd->add_option("--iterations", iterations, "number of steps")->capture_default_str()->check(CLI::PositiveNumber);
    repel_cmd->add_flag("--self-consistent", self_consistent, "forces from the current iterate");
    repel_cmd->add_option("--rho", in_rho, "intensity for inputs without metadata");
    repel_cmd->add_option("--window", in_window, "window for CSV inputs");
    repel_cmd->add_option("--forces", forces_out, "also write the force field at the input points (CSV)");
    repel_cmd->add_option("--out", out, "output path; with several steps, one file per step")->required();

    repel_cmd->callback([&] {
        ctx.manifest.command = "repel";
        ctx.record_options(*repel_cmd);
        auto const c0 = load_configuration(in, std::nullopt, in_rho);
        std::optional<Window> w;
        if (!in_window.empty())
            w = parse_window_spec(in_window, c0.dim());
        auto const c = w ? load_configuration(in, w, in_rho) : c0;
        double const eps = resolve_epsilon(epsilon_spec, c.dim(), c.intensity());
        RepulsionParams params;
        params.epsilon = eps;
        params.iterations = iterations;
        params.self_consistent = self_consistent;
        params.spec = scheme == "target" ? ForceSpec::target_ordered(q, p) : ForceSpec::origin_ordered();
        ctx.manifest.parameters["epsilon"] = eps;
        ctx.manifest.parameters["d"] = c.dim();
        if (c.intensity())
            ctx.manifest.parameters["rho"] = *c.intensity();

        if (!forces_out.empty()) {
            save_table(forces_out, [&](std::ostream& os) { write_force_field_csv(os, force_field(c, params.resolved_spec())); });
            ctx.manifest.artifacts.push_back(forces_out);
        }
        fs::path const out_path(out);
        if (iterations == 1) {
            save_configuration(out_path, repel(c, params));
            ctx.manifest.artifacts.push_back(out);
        } else {
            auto steps = repel_iterated(c, params);
            int const width = static_cast<int>(std::to_string(iterations).size());
            for (std::size_t t = 0; t < steps.size(); ++t) {
                std::string idx = std::to_string(t + 1);
                idx.insert(0, static_cast<std::size_t>(width) - idx.size(), '0');
                fs::path step = out_path.parent_path()
                                / (out_path.stem().string() + "_t" + idx + out_path.extension().string());
                save_configuration(step, steps[t]);
                ctx.manifest.artifacts.push_back(step.string());
            }
        }
        std::ostringstream sum;
        sum << "repel: " << c.size() << " points, epsilon=" << format_double(eps) << ", "
            << iterations << " step(s) -> " << out;
        ctx.finish(out, sum.str());
    });

    // estimate
    auto* estimate = app.add_subcommand("estimate", "replicated integral estimates of a test integrand");
    std::string method = "mc";
    std::string integrand = "f1";
    int reps = 50;
    estimate->add_option("--method", method, "mc | mcrb | mccv | rqmc")
        ->capture_default_str()
        ->check(CLI::IsMember({"mc", "mcrb", "mccv", "rqmc"}));
    estimate->add_option("--integrand", integrand, "f1 | f2 | f3")
        ->capture_default_str()
        ->check(CLI::IsMember({"f1", "f2", "f3"}));
    estimate->add_option("--d", d, "dimension")->capture_default_str();
    estimate->add_option("--n", n, "points per replication")->required();
    estimate->add_option("--reps", reps, "replications")->capture_default_str()->check(CLI::PositiveNumber);
    estimate->add_option("--seed", seed, "seed base")->capture_default_str();
    estimate->add_option("--out", out, "report .json or .csv")->required();

    estimate->callback([&] {
        ctx.manifest.command = "estimate";
        ctx.manifest.seed = Seed{seed, 0};
        ctx.record_options(*estimate);
        if (n == 0)
            throw Error(ErrorKind::InvalidArgument, "--n must be at least 1");
        Method const m = method_from_string(method);
        Integrand const f = integrand_by_name(integrand, d);
        auto const r_count = static_cast<std::size_t>(reps);
        std::vector<double> values(r_count);
        std::vector<std::size_t> pts(r_count);
        std::vector<char> failed(r_count, 0);
        Seed const base = Seed{seed, 0}.derive("estimate/" + method);
        parallel_for(r_count, [&](std::size_t r) {
            try {
                auto const run = run_method(m, d, f, n, base.with_stream(r));
                values[r] = run.estimate;
                pts[r] = run.n_points;
            } catch (Error const& e) {
                if (e.kind() == ErrorKind::Resource)
                    throw;
                failed[r] = 1;
            }
        });
        std::vector<double> v;
        std::vector<std::size_t> np;
        std::size_t n_failed = 0;
        for (std::size_t r = 0; r < r_count; ++r) {
            if (failed[r]) {
                ++n_failed;
                continue;
            }
            v.push_back(values[r]);
            np.push_back(pts[r]);
        }
        auto const report = EstimateReport::from(std::move(v), std::move(np));
        if (fs::path(out).extension() == ".csv") {
            save_table(out, [&](std::ostream& os) { write_estimate_report_csv(os, report); });
        } else {
            Json j = estimate_report_to_json(report);
            j["method"] = method;
            j["integrand"] = integrand;
            j["d"] = d;
            j["n"] = n;
            j["failed"] = n_failed;
            if (auto ref = reference_integral(f, d))
                j["reference"] = *ref;
            save_json(out, j);
        }
        ctx.manifest.artifacts = {out};
        if (n_failed > 0)
            status = kExitRuntime;
        std::ostringstream sum;
        sum << "estimate: " << method << " " << integrand << " d=" << d << " N=" << n << ": mean "
            << format_double(report.mean) << ", std " << format_double(report.sample_std) << " over "
            << report.values.size() << " reps (" << n_failed << " failed) -> " << out;
        ctx.finish(out, sum.str());
    });

    // sweep
    auto* sweep = app.add_subcommand("sweep", "benchmark sweeps");
    sweep->require_subcommand(1);

    auto* sweep_eps = sweep->add_subcommand("epsilon", "estimator std against the step size");
    std::string eps_list;
    std::string eps_multiples = "-1,-0.5,0,0.25,0.5,0.75,1,1.5,2";
    int ginibre_size = 0;
    std::string sweep_process = "poisson";
    sweep_eps->add_option("--process", sweep_process, "poisson | ginibre | sobol")
        ->capture_default_str()
        ->check(CLI::IsMember({"poisson", "ginibre", "sobol"}));
    sweep_eps->add_option("--d", d, "dimension")->capture_default_str();
    sweep_eps->add_option("--rho", rho, "intensity")->capture_default_str();
    sweep_eps->add_option("--integrand", integrand, "f1 | f2 | f3")
        ->capture_default_str()
        ->check(CLI::IsMember({"f1", "f2", "f3"}));
    sweep_eps->add_option("--reps", reps, "replications per step size")->capture_default_str();
    auto* eps_opt = sweep_eps->add_option("--epsilons", eps_list, "comma-separated step sizes");
    sweep_eps->add_option("--eps-multiples", eps_multiples, "comma-separated multiples of epsilon_0")
        ->capture_default_str()
        ->excludes(eps_opt);
    sweep_eps->add_option("--ginibre-size", ginibre_size, "Ginibre matrix size (0: automatic)")->capture_default_str();
    sweep_eps->add_option("--seed", seed, "seed base")->capture_default_str();
    sweep_eps->add_option("--out", out, "sweep .json; a long-format .csv is written alongside")->required();

    auto write_sweep = [&](SweepResult const& r) {
        fs::path const j(out);
        fs::path csv = j;
        csv.replace_extension(".csv");
        save_json(j, sweep_to_json(r));
        save_table(csv, [&](std::ostream& os) { write_sweep_csv(os, r); });
        ctx.manifest.artifacts = {j.string(), csv.string()};
        for (auto f : r.failed)
            if (f > 0)
                status = kExitRuntime;
    };

    sweep_eps->callback([&] {
        ctx.manifest.command = "sweep epsilon";
        ctx.manifest.seed = Seed{seed, 0};
        ctx.record_options(*sweep_eps);
        EpsilonSweepConfig cfg;
        cfg.process = process_from_string(sweep_process);
        cfg.d = d;
        cfg.rho = rho;
        cfg.integrand = integrand;
        if (!eps_list.empty()) {
            cfg.epsilons = parse_list(eps_list);
        } else {
            for (double mlt : parse_list(eps_multiples))
                cfg.epsilons.push_back(mlt * epsilon_zero(d, rho));
        }
        cfg.reps = reps;
        cfg.seed = Seed{seed, 0};
        cfg.ginibre_size = ginibre_size;
        ctx.manifest.parameters["epsilons"] = cfg.epsilons;
        auto const r = epsilon_sweep(cfg);
        write_sweep(r);
        std::ostringstream sum;
        sum << "sweep epsilon: " << sweep_process << " d=" << d << " rho=" << format_double(rho) << " "
            << integrand << ", " << cfg.epsilons.size() << " step sizes x " << reps << " reps -> " << out;
        ctx.finish(out, sum.str());
    });

    auto* sweep_n = sweep->add_subcommand("n", "estimator std against the number of points");
    std::string methods = "mc,mcrb,mccv,rqmc";
    std::string n_list = "64,128,256,512,1024";
    sweep_n->add_option("--methods", methods, "comma-separated subset of mc,mcrb,mccv,rqmc")->capture_default_str();
    sweep_n->add_option("--d", d, "dimension")->capture_default_str();
    sweep_n->add_option("--integrand", integrand, "f1 | f2 | f3")
        ->capture_default_str()
        ->check(CLI::IsMember({"f1", "f2", "f3"}));
    sweep_n->add_option("--n-values", n_list, "comma-separated increasing N grid")->capture_default_str();
    sweep_n->add_option("--reps", reps, "replications per N")->capture_default_str();
    sweep_n->add_option("--seed", seed, "seed base")->capture_default_str();
    sweep_n->add_option("--out", out, "sweep .json; one long-format .csv per method is written alongside")->required();

    sweep_n->callback([&] {
        ctx.manifest.command = "sweep n";
        ctx.manifest.seed = Seed{seed, 0};
        ctx.record_options(*sweep_n);
        NSweepConfig cfg;
        cfg.methods = parse_methods(methods);
        cfg.d = d;
        cfg.integrand = integrand;
        for (double v : parse_list(n_list)) {
            if (!(v >= 1) || v != std::floor(v))
                throw Error(ErrorKind::InvalidArgument, "N values must be positive integers");
            cfg.n_values.push_back(static_cast<std::size_t>(v));
        }
        cfg.reps = reps;
        cfg.seed = Seed{seed, 0};
        auto const res = n_sweep(cfg);
        Json j;
        j["experiment"] = "n_sweep";
        j["methods"] = Json::array();
        fs::path const jp(out);
        ctx.manifest.artifacts = {jp.string()};
        std::ostringstream sum;
        sum << "sweep n: " << integrand << " d=" << d << ";";
        for (auto const& ms : res) {
            Json e;
            e["method"] = to_string(ms.method);
            e["slope"] = ms.slope ? slope_fit_to_json(*ms.slope) : Json(nullptr);
            e["sweep"] = sweep_to_json(ms.result);
            j["methods"].push_back(std::move(e));
            fs::path csv = jp.parent_path() / (jp.stem().string() + "_" + to_string(ms.method) + ".csv");
            save_table(csv, [&](std::ostream& os) { write_sweep_csv(os, ms.result); });
            ctx.manifest.artifacts.push_back(csv.string());
            for (auto f : ms.result.failed)
                if (f > 0)
                    status = kExitRuntime;
            sum << ' ' << to_string(ms.method) << " slope "
                << (ms.slope ? format_double(std::round(ms.slope->slope * 1000) / 1000) : std::string("n/a"));
        }
        save_json(jp, j);
        sum << " -> " << out;
        ctx.finish(out, sum.str());
    });

    auto* sweep_err = sweep->add_subcommand("errors", "signed errors against the reference integral");
    std::size_t err_n = 500;
    int err_reps = 200;
    std::string err_integrand = "f2";
    sweep_err->add_option("--methods", methods, "comma-separated subset of mc,mcrb,mccv,rqmc")->capture_default_str();
    sweep_err->add_option("--d", d, "dimension")->capture_default_str();
    sweep_err->add_option("--integrand", err_integrand, "f1 | f2 | f3")
        ->capture_default_str()
        ->check(CLI::IsMember({"f1", "f2", "f3"}));
    sweep_err->add_option("--n", err_n, "points per replication")->capture_default_str();
    sweep_err->add_option("--reps", err_reps, "replications")->capture_default_str();
    sweep_err->add_option("--seed", seed, "seed base")->capture_default_str();
    sweep_err->add_option("--out", out, "sweep .json; a long-format .csv is written alongside")->required();

    sweep_err->callback([&] {
        ctx.manifest.command = "sweep errors";
        ctx.manifest.seed = Seed{seed, 0};
        ctx.record_options(*sweep_err);
        ErrorStudyConfig cfg;
        cfg.methods = parse_methods(methods);
        cfg.d = d;
        cfg.integrand = err_integrand;
        cfg.n = err_n;
        cfg.reps = err_reps;
        cfg.seed = Seed{seed, 0};
        auto const r = error_study(cfg);
        write_sweep(r);
        ctx.finish(out, "sweep errors: " + methods + " " + err_integrand + " d=" + std::to_string(d) + " N="
                            + std::to_string(err_n) + " -> " + out);
    });

    // secondorder
    auto* second = app.add_subcommand("secondorder", "pair correlation and structure factor");
    second->require_subcommand(1);
    double r_max = 0, k_max = 0;
    int bins = 40;
    bool no_crop = false;
    auto* pcf = second->add_subcommand("pcf", "pair correlation function");
    pcf->add_option("--in", in, "input configuration")->required();
    pcf->add_option("--rmax", r_max, "largest distance")->required();
    pcf->add_option("--bins", bins, "number of bins")->capture_default_str()->check(CLI::PositiveNumber);
    pcf->add_option("--rho", in_rho, "intensity for inputs without metadata");
    pcf->add_option("--window", in_window, "window for CSV inputs");
    pcf->add_option("--out", out, "output CSV")->required();

    auto load_for_second = [&]() {
        auto const probe = load_configuration(in, std::nullopt, in_rho);
        if (in_window.empty())
            return probe;
        return load_configuration(in, parse_window_spec(in_window, probe.dim()), in_rho);
    };

    pcf->callback([&] {
        ctx.manifest.command = "secondorder pcf";
        ctx.record_options(*pcf);
        auto const c = load_for_second();
        auto const g = pcf_estimate(c, r_max, bins);
        save_table(out, [&](std::ostream& os) { write_radial_csv(os, g); });
        ctx.manifest.artifacts = {out};
        ctx.finish(out, "secondorder pcf: " + std::to_string(c.size()) + " points, " + std::to_string(bins)
                            + " bins -> " + out);
    });

    auto* sf = second->add_subcommand("sf", "structure factor (scattering intensity)");
    sf->add_option("--in", in, "input configuration")->required();
    sf->add_option("--kmax", k_max, "largest wavenumber")->required();
    sf->add_option("--bins", bins, "number of bins")->capture_default_str()->check(CLI::PositiveNumber);
    sf->add_option("--rho", in_rho, "intensity for inputs without metadata");
    sf->add_option("--window", in_window, "window for CSV inputs");
    sf->add_flag("--no-crop", no_crop, "fail on ball windows instead of cropping to the inscribed box");
    sf->add_option("--out", out, "output CSV")->required();

    sf->callback([&] {
        ctx.manifest.command = "secondorder sf";
        ctx.record_options(*sf);
        auto c = load_for_second();
        if (c.window().kind() == WindowKind::Ball && !no_crop)
            c = crop_to_inscribed_box(c);
        auto const s = structure_factor_estimate(c, k_max, bins);
        save_table(out, [&](std::ostream& os) { write_radial_csv(os, s); });
        ctx.manifest.artifacts = {out};
        ctx.finish(out, "secondorder sf: " + std::to_string(c.size()) + " points, " + std::to_string(s.size())
                            + " non-empty bins -> " + out);
    });

    // plot-data
    auto* plot = app.add_subcommand("plot-data", "aggregate a sweep into a ready-to-plot table");
    plot->add_option("--in", in, "sweep JSON written by 'sweep'")->required();
    plot->add_option("--out", out, "output CSV")->required();
    plot->callback([&] {
        ctx.manifest.command = "plot-data";
        ctx.record_options(*plot);
        Json j;
        try {
            j = Json::parse(read_text_file(in));
        } catch (nlohmann::json::exception const& e) {
            throw Error(ErrorKind::Parse, in + ": " + e.what());
        }
        std::ostringstream os;
        if (j.contains("methods")) {
            bool header = true;
            for (auto const& e : j.at("methods")) {
                std::ostringstream part;
                write_plot_data_csv(part, sweep_from_json(e.at("sweep")));
                std::string line;
                std::istringstream lines(part.str());
                std::getline(lines, line);
                if (header)
                    os << "method," << line << ",slope,slope_stderr\n";
                header = false;
                std::string slope = ",", stderr_ = "";
                if (!e.at("slope").is_null()) {
                    slope = format_double(e["slope"]["slope"].get<double>()) + ",";
                    stderr_ = format_double(e["slope"]["slope_stderr"].get<double>());
                }
                while (std::getline(lines, line))
                    os << e.at("method").get<std::string>() << ',' << line << ',' << slope << stderr_ << '\n';
            }
        } else {
            write_plot_data_csv(os, sweep_from_json(j));
        }
        write_text_file(out, os.str());
        ctx.manifest.artifacts = {out};
        ctx.finish(out, "plot-data: " + in + " -> " + out);
    });

    // rerun
    auto* rerun = app.add_subcommand("rerun", "re-execute the command recorded in a manifest");
    std::string manifest_in;
    rerun->add_option("--manifest", manifest_in, "manifest JSON")->required();
    rerun->callback([&] {
        auto const m = manifest_from_json(Json::parse(read_text_file(manifest_in)));
        if (!m.argv.empty() && m.argv.front() == "rerun")
            throw Error(ErrorKind::InvalidArgument, "manifest records a rerun");
        status = run(m.argv);
    });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::CallForVersion const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        app.exit(e);
        return kExitUsage;
    }
    (void)threads;
    return status;
}

}  // namespace

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        // --threads must take effect before any subcommand callback runs.
        for (std::size_t i = 0; i + 1 < args.size(); ++i)
            if (args[i] == "--threads")
                set_thread_count(std::stoi(args[i + 1]));
        return run(args);
    } catch (Error const& e) {
        std::cerr << "rpp: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (nlohmann::json::exception const& e) {
        std::cerr << "rpp: parse error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (std::bad_alloc const&) {
        std::cerr << "rpp: out of memory\n";
        return kExitResource;
    } catch (std::exception const& e) {
        std::cerr << "rpp: " << e.what() << '\n';
        return kExitRuntime;
    }
}
