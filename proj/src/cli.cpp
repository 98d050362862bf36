#include "glvnet/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "glvnet/bifurcation.hpp"
#include "glvnet/bounds.hpp"
#include "glvnet/dynamics.hpp"
#include "glvnet/error.hpp"
#include "glvnet/experiments.hpp"
#include "glvnet/glv.hpp"
#include "glvnet/graph_io.hpp"
#include "glvnet/graphs.hpp"

namespace glvnet::cli {

namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

constexpr std::uint64_t kDefaultSeed = 1;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("GLVNET_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw UsageError("GLVNET_SEED is not an unsigned integer");
        return v;
    }
    return kDefaultSeed;
}

// Output sink: a file when a path is given, otherwise `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw IoError("cannot open " + path + " for writing");
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }
    void finish(const std::string& what) {
        os_->flush();
        if (!*os_) throw IoError("write failed: " + what);
    }

private:
    std::ofstream file_;
    std::ostream* os_;
};

GraphFile load_graph_checked(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open graph file " + path);
    try {
        return read_graph(is);
    } catch (const std::invalid_argument& e) {
        throw IoError(path + ": " + e.what());
    } catch (const std::runtime_error& e) {
        throw IoError(e.what());
    }
}

json edges_json(const UndirectedGraph& g) {
    json e = json::array();
    for (const auto& [u, v] : g.edges()) e.push_back({u, v});
    return e;
}

json report_json(const BifurcationReport& r) {
    json j;
    j["tau_trans"] = r.tau_trans ? json(*r.tau_trans) : json(nullptr);
    j["tau_pitch"] = r.tau_pitch;
    j["tau_c"] = r.tau_c;
    j["kind"] = to_string(r.kind);
    j["vanishing_vertex"] = r.vanishing_vertex ? json(*r.vanishing_vertex) : json(nullptr);
    return j;
}

json bound_json(const CubicBoundResult& r) {
    json j;
    j["omega"] = r.omega;
    j["theta"] = r.theta;
    j["roots"] = r.roots;
    j["method_agreement"] = {{"closed_form", r.closed_form},
                             {"bisection", r.omega},
                             {"abs_difference", r.agreement},
                             {"tolerance", kBoundAgreementTol * std::max(1.0, r.omega)},
                             {"agree", r.agreement <= kBoundAgreementTol * std::max(1.0, r.omega)}};
    return j;
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::istringstream is(item);
        T v{};
        std::string rest;
        if (!(is >> v) || (is >> rest)) throw UsageError(std::string("bad value in ") + what + ": '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError(std::string(what) + " is empty");
    return out;
}

// Resolved options of a subcommand as a JSON object.
json resolved_config(const CLI::App& sub) {
    json cfg = json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_name(false, true);
        if (name.empty() || name == "--help" || name == "-h") continue;
        std::string key = opt->get_lnames().empty() ? name : opt->get_lnames().front();
        if (opt->get_type_size() == 0) {
            cfg[key] = opt->count() > 0;
        } else if (opt->count() > 0) {
            cfg[key] = opt->as<std::string>();
        } else if (!opt->get_default_str().empty()) {
            cfg[key] = opt->get_default_str();
        }
    }
    return cfg;
}

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::optional<std::uint64_t> seed_flag;
    std::uint64_t seed = kDefaultSeed;
    json extra = json::object();
};

void log_config(Context& ctx, const CLI::App& sub) {
    json line;
    line["command"] = sub.get_name();
    line["seed"] = ctx.seed;
    line["config"] = resolved_config(sub);
    for (auto& [k, v] : ctx.extra.items()) line[k] = v;
    ctx.err << line.dump() << '\n';
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"glvnet: competitive Lotka-Volterra dynamics on bounded-degree networks"};
    app.require_subcommand(1);
    Context ctx{out, err, std::nullopt};

    // generate ------------------------------------------------------------
    struct {
        std::string kind;
        std::size_t k = 0, n = 0, m = 0;
        int d = 0, dmax = 30;
        double p = 0.3;
        std::string out;
    } gen;
    auto* generate = app.add_subcommand("generate", "Write a named or random graph as an edge list");
    generate->add_option("--kind", gen.kind,
                         "star | cycle | path | complete | complete-bipartite | random-regular | config-model")
        ->required();
    generate->add_option("--k", gen.k, "star size");
    generate->add_option("--n", gen.n, "vertex count (second part for complete-bipartite)");
    generate->add_option("--m", gen.m, "first part size for complete-bipartite");
    generate->add_option("--d", gen.d, "degree for random-regular");
    generate->add_option("--dmax", gen.dmax, "binomial trials for config-model")->capture_default_str();
    generate->add_option("--p", gen.p, "binomial success probability for config-model")->capture_default_str();
    generate->add_option("--seed", ctx.seed_flag, "master seed (falls back to GLVNET_SEED)");
    generate->add_option("--out", gen.out, "output edge-list path (default stdout)");

    // bound ---------------------------------------------------------------
    struct {
        bool case1 = false, case2 = false, regular = false;
        int dmin = 0, dmax = 0, d = 0;
        double Dmin = 1, Dmax = 1, rmin = 1, rmax = 1, beta = 1;
        std::string regime;
    } bnd;
    auto* bound = app.add_subcommand("bound", "Coexistence bound Omega");
    auto* c1 = bound->add_flag("--case1", bnd.case1, "constant competition from --dmin/--dmax");
    auto* c2 = bound->add_flag("--case2", bnd.case2, "general competition from --Dmin/--Dmax/--rmin/--rmax/--beta");
    auto* reg = bound->add_flag("--regular", bnd.regular, "random d-regular threshold from --d");
    c1->excludes(c2)->excludes(reg);
    c2->excludes(reg);
    bound->add_option("--dmin", bnd.dmin, "minimum degree");
    bound->add_option("--dmax", bnd.dmax, "maximum degree");
    bound->add_option("--d", bnd.d, "regular degree");
    bound->add_option("--Dmin", bnd.Dmin, "minimum self-regulation")->capture_default_str();
    bound->add_option("--Dmax", bnd.Dmax, "maximum self-regulation")->capture_default_str();
    bound->add_option("--rmin", bnd.rmin, "minimum growth rate")->capture_default_str();
    bound->add_option("--rmax", bnd.rmax, "maximum growth rate")->capture_default_str();
    bound->add_option("--beta", bnd.beta, "min/max row-sum ratio")->capture_default_str();
    bound->add_option("--regime", bnd.regime,
                      "with --case2: large-Dmax | large-rmax | small-rmin asymptotic ramp");

    // bifurcate -------------------------------------------------------------
    struct {
        std::string graph, out, branch_csv, grid;
        double scan_step = 1e-3, tol = 1e-9;
    } bif;
    auto* bifurcate = app.add_subcommand("bifurcate", "Locate and classify the first bifurcation of a graph");
    bifurcate->add_option("--graph", bif.graph, "edge-list file")->required();
    bifurcate->add_option("--out", bif.out, "report JSON path (default stdout)");
    bifurcate->add_option("--branch-csv", bif.branch_csv, "write x*(tau) samples here");
    bifurcate->add_option("--tau-grid", bif.grid, "start:stop:count for the branch (default 0:1.2*tau_pitch:241)");
    bifurcate->add_option("--scan-step", bif.scan_step, "scan step as a fraction of tau_pitch")->capture_default_str();
    bifurcate->add_option("--tol", bif.tol, "bisection tolerance")->capture_default_str();

    // simulate --------------------------------------------------------------
    struct {
        std::string graph, system, x0 = "random", out;
        std::optional<double> tau;
        double t_end = 100, rtol = 1e-8, atol = 1e-10;
        std::size_t every = 1;
        bool run_full = false;
    } sim;
    auto* simulate = app.add_subcommand("simulate", "Integrate the GLV equations and write a trajectory CSV");
    auto* sg = simulate->add_option("--graph", sim.graph, "edge-list file (constant competition)");
    auto* ss = simulate->add_option("--system", sim.system, "system JSON {r, D, T}");
    sg->excludes(ss);
    simulate->add_option("--tau", sim.tau, "interaction strength for --graph");
    simulate->add_option("--x0", sim.x0, "random | const:<v> | comma-separated values")->capture_default_str();
    simulate->add_option("--t-end", sim.t_end, "final time")->capture_default_str();
    simulate->add_option("--rtol", sim.rtol)->capture_default_str();
    simulate->add_option("--atol", sim.atol)->capture_default_str();
    simulate->add_option("--every", sim.every, "keep every k-th accepted step")->capture_default_str();
    simulate->add_flag("--run-to-end", sim.run_full, "do not stop at convergence");
    simulate->add_option("--seed", ctx.seed_flag, "seed for --x0 random");
    simulate->add_option("--out", sim.out, "trajectory CSV path (default stdout)");

    // sweep -------------------------------------------------------------------
    struct {
        std::string ns = "100", ps = "0.3", config, out, summary, group_by = "n";
        std::size_t runs = 500;
        int dmax = 30;
        unsigned threads = 1;
    } swp;
    auto* sweep = app.add_subcommand("sweep", "Ratio tau_c / Omega over configuration-model ensembles");
    sweep->add_option("--config", swp.config, "JSON file with any of the flags below");
    sweep->add_option("--ns", swp.ns, "comma-separated network sizes")->capture_default_str();
    sweep->add_option("--ps", swp.ps, "comma-separated binomial probabilities")->capture_default_str();
    sweep->add_option("--runs", swp.runs, "graphs per (n, p) cell")->capture_default_str();
    sweep->add_option("--dmax", swp.dmax, "binomial trials (maximum degree)")->capture_default_str();
    sweep->add_option("--seed", ctx.seed_flag, "master seed (falls back to GLVNET_SEED)");
    sweep->add_option("--threads", swp.threads, "worker threads")->capture_default_str();
    sweep->add_option("--out", swp.out, "records CSV path (default stdout)");
    sweep->add_option("--summary", swp.summary, "summary CSV path");
    sweep->add_option("--group-by", swp.group_by, "n | p")->capture_default_str();

    // fig2search ------------------------------------------------------------
    struct {
        std::size_t n = 8, budget = 200000;
        std::string out, prefix;
    } f2;
    auto* fig2 = app.add_subcommand("fig2search", "Find G and G-e with different bifurcation kinds");
    fig2->add_option("--n", f2.n, "vertex count")->capture_default_str();
    fig2->add_option("--budget", f2.budget, "random graphs to try")->capture_default_str();
    fig2->add_option("--seed", ctx.seed_flag, "master seed (falls back to GLVNET_SEED)");
    fig2->add_option("--out", f2.out, "result JSON path (default stdout)");
    fig2->add_option("--graph-prefix", f2.prefix, "also write <prefix>_full.edges and <prefix>_reduced.edges");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        ctx.seed = resolve_seed(ctx.seed_flag);

        if (generate->parsed()) {
            log_config(ctx, *generate);
            Rng rng(ctx.seed);
            UndirectedGraph g;
            json header{{"generator", gen.kind}, {"seed", ctx.seed}};
            if (gen.kind == "config-model") {
                if (gen.n < 2) throw UsageError("config-model needs --n >= 2");
                if (gen.dmax < 1 || !(gen.p > 0 && gen.p <= 1))
                    throw UsageError("config-model needs --dmax >= 1 and 0 < --p <= 1");
                g = configuration_model(sample_binomial_degrees(gen.n, gen.dmax, gen.p, rng), rng);
                header["dmax"] = gen.dmax;
                header["p"] = gen.p;
            } else {
                NamedGraphSpec spec;
                try {
                    spec.kind = parse_named_kind(gen.kind);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                using K = NamedGraphSpec::Kind;
                switch (spec.kind) {
                    case K::Star: spec.a = gen.k; header["k"] = gen.k; break;
                    case K::CompleteBipartite:
                        spec.a = gen.m;
                        spec.b = gen.n;
                        header["m"] = gen.m;
                        header["n_right"] = gen.n;
                        break;
                    case K::RandomRegular:
                        spec.a = static_cast<std::size_t>(std::max(gen.d, 0));
                        spec.b = gen.n;
                        header["d"] = gen.d;
                        break;
                    default: spec.a = gen.n; break;
                }
                try {
                    g = make_named(spec, rng);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
            }
            Sink sink(gen.out, out);
            write_graph(sink.stream(), g, header);
            sink.finish(gen.out);
            return kOk;
        }

        if (bound->parsed()) {
            log_config(ctx, *bound);
            json j;
            if (bnd.case1) {
                if (bnd.dmin < 1 || bnd.dmax < bnd.dmin) throw UsageError("--case1 needs 1 <= --dmin <= --dmax");
                j = bound_json(omega_case1({bnd.dmin, bnd.dmax}));
                j["case"] = "case1";
            } else if (bnd.case2) {
                const Case2Params p{bnd.Dmin, bnd.Dmax, bnd.rmin, bnd.rmax, bnd.beta};
                try {
                    p.validate();
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
                if (bnd.regime.empty()) {
                    j = bound_json(omega_case2(p));
                    j["case"] = "case2";
                } else {
                    Regime r;
                    if (bnd.regime == "large-Dmax") r = Regime::LargeDMax;
                    else if (bnd.regime == "large-rmax") r = Regime::LargeRMax;
                    else if (bnd.regime == "small-rmin") r = Regime::SmallRMin;
                    else throw UsageError("unknown --regime '" + bnd.regime + "'");
                    const RegimeLimit lim = regime_limits(p, r);
                    j["regime"] = bnd.regime;
                    j["theta_limit"] = lim.theta_limit;
                    j["omega_limit"] = lim.omega_limit;
                    json ramp = json::array();
                    for (const auto& pt : lim.ramp)
                        ramp.push_back({{"parameter", pt.parameter}, {"theta", pt.theta}, {"omega", pt.omega}});
                    j["ramp"] = ramp;
                }
            } else if (bnd.regular) {
                if (bnd.d < 2) throw UsageError("--regular needs --d >= 2");
                j["omega"] = omega_regular(bnd.d);
                j["theta"] = nullptr;
                j["roots"] = json::array();
                j["method_agreement"] = nullptr;
                j["case"] = "regular";
            } else {
                throw UsageError("bound needs one of --case1, --case2, --regular");
            }
            out << j.dump(2) << '\n';
            return kOk;
        }

        if (bifurcate->parsed()) {
            log_config(ctx, *bifurcate);
            if (!(bif.scan_step > 0 && bif.scan_step < 1) || !(bif.tol > 0))
                throw UsageError("need 0 < --scan-step < 1 and --tol > 0");
            const GraphFile gf = load_graph_checked(bif.graph);
            if (gf.graph.size() == 0 || !gf.graph.is_connected())
                throw UsageError("bifurcate needs a connected graph with at least one edge");
            BifurcationOptions opts;
            opts.scan_step = bif.scan_step;
            opts.tol = bif.tol;
            const BifurcationReport rep = classify(gf.graph, opts);
            json j = report_json(rep);
            j["n"] = gf.graph.order();
            j["d_min"] = gf.graph.d_min();
            j["d_max"] = gf.graph.d_max();
            j["omega"] = omega_case1({gf.graph.d_min(), gf.graph.d_max()}).omega;
            {
                Sink sink(bif.out, out);
                sink.stream() << j.dump(2) << '\n';
                sink.finish(bif.out);
            }
            if (!bif.branch_csv.empty()) {
                double lo = 0, hi = 1.2 * rep.tau_pitch;
                std::size_t count = 241;
                if (!bif.grid.empty()) {
                    const auto parts = parse_list<std::string>([&] {
                        std::string s = bif.grid;
                        for (char& c : s)
                            if (c == ':') c = ',';
                        return s;
                    }(), "--tau-grid");
                    if (parts.size() != 3) throw UsageError("--tau-grid must be start:stop:count");
                    try {
                        lo = std::stod(parts[0]);
                        hi = std::stod(parts[1]);
                        count = static_cast<std::size_t>(std::stoul(parts[2]));
                    } catch (const std::exception&) {
                        throw UsageError("--tau-grid must be start:stop:count");
                    }
                    if (!(lo >= 0) || !(hi > lo) || count < 2) throw UsageError("--tau-grid needs 0 <= start < stop, count >= 2");
                }
                std::vector<double> grid(count);
                for (std::size_t i = 0; i < count; ++i)
                    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
                const auto samples = branch(gf.graph, grid);
                Sink sink(bif.branch_csv, out);
                auto& os = sink.stream();
                os << "tau";
                for (std::size_t i = 1; i <= gf.graph.order(); ++i) os << ",x_" << i;
                os << ",feasible,stable\n";
                os.precision(17);
                for (const auto& s : samples) {
                    os << s.tau;
                    for (Eigen::Index i = 0; i < s.x_star.size(); ++i) os << ',' << s.x_star(i);
                    os << ',' << (s.feasible ? 1 : 0) << ',' << (s.stable ? 1 : 0) << '\n';
                }
                sink.finish(bif.branch_csv);
            }
            return kOk;
        }

        if (simulate->parsed()) {
            log_config(ctx, *simulate);
            std::optional<InteractionSystem> sys;
            if (!sim.graph.empty()) {
                if (!sim.tau || !(*sim.tau >= 0)) throw UsageError("--graph needs --tau >= 0");
                sys.emplace(constant_competition(load_graph_checked(sim.graph).graph, *sim.tau));
            } else if (!sim.system.empty()) {
                std::ifstream is(sim.system);
                if (!is) throw IoError("cannot open system file " + sim.system);
                json j;
                try {
                    j = json::parse(is);
                } catch (const json::exception& e) {
                    throw IoError(sim.system + ": " + e.what());
                }
                try {
                    sys.emplace(system_from_json(j));
                } catch (const std::exception& e) {
                    throw UsageError(sim.system + ": " + e.what());
                }
            } else {
                throw UsageError("simulate needs --graph or --system");
            }
            if (!(sim.t_end > 0) || !(sim.rtol > 0) || !(sim.atol > 0))
                throw UsageError("--t-end, --rtol and --atol must be positive");
            const Eigen::Index n = sys->size();
            Eigen::VectorXd x0(n);
            if (sim.x0 == "random") {
                Rng rng(ctx.seed);
                for (Eigen::Index i = 0; i < n; ++i) x0(i) = std::exp(rng.uniform(std::log(1e-3), std::log(10.0)));
            } else if (sim.x0.rfind("const:", 0) == 0) {
                x0.setConstant(parse_list<double>(sim.x0.substr(6), "--x0").at(0));
            } else {
                const auto v = parse_list<double>(sim.x0, "--x0");
                if (static_cast<Eigen::Index>(v.size()) != n) throw UsageError("--x0 has the wrong length");
                for (Eigen::Index i = 0; i < n; ++i) x0(i) = v[static_cast<std::size_t>(i)];
            }
            if (!x0.allFinite() || x0.minCoeff() < 0) throw UsageError("--x0 must be non-negative");
            IntegrateOptions io;
            io.t_end = sim.t_end;
            io.rtol = sim.rtol;
            io.atol = sim.atol;
            io.record_every = sim.every;
            io.stop_on_convergence = !sim.run_full;
            const Trajectory tr = integrate(*sys, x0, io);
            Sink sink(sim.out, out);
            auto& os = sink.stream();
            os << 't';
            for (Eigen::Index i = 1; i <= n; ++i) os << ",x_" << i;
            os << '\n';
            os.precision(17);
            for (std::size_t k = 0; k < tr.times.size(); ++k) {
                os << tr.times[k];
                for (Eigen::Index i = 0; i < n; ++i) os << ',' << tr.states[k](i);
                os << '\n';
            }
            sink.finish(sim.out);
            err << json{{"converged", tr.converged},
                        {"t_final", tr.times.back()},
                        {"accepted_steps", tr.accepted_steps},
                        {"rejected_steps", tr.rejected_steps}}
                       .dump()
                << '\n';
            return kOk;
        }

        if (sweep->parsed()) {
            if (!swp.config.empty()) {
                std::ifstream is(swp.config);
                if (!is) throw IoError("cannot open config " + swp.config);
                json j;
                try {
                    j = json::parse(is);
                } catch (const json::exception& e) {
                    throw IoError(swp.config + ": " + e.what());
                }
                auto join = [](const json& v) {
                    if (!v.is_array()) return v.is_string() ? v.get<std::string>() : v.dump();
                    std::string s;
                    for (const auto& e : v) s += (s.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
                    return s;
                };
                // Flags given on the command line win over the file.
                try {
                    for (auto& [key, value] : j.items()) {
                        const CLI::Option* flag = sweep->get_option_no_throw("--" + key);
                        if (flag != nullptr && flag->count() > 0) continue;
                        if (key == "ns") swp.ns = join(value);
                        else if (key == "ps") swp.ps = join(value);
                        else if (key == "runs") swp.runs = value.get<std::size_t>();
                        else if (key == "dmax") swp.dmax = value.get<int>();
                        else if (key == "seed") ctx.seed_flag = ctx.seed_flag ? ctx.seed_flag : value.get<std::uint64_t>();
                        else if (key == "threads") swp.threads = value.get<unsigned>();
                        else if (key == "out") swp.out = value.get<std::string>();
                        else if (key == "summary") swp.summary = value.get<std::string>();
                        else if (key == "group-by" || key == "group_by") swp.group_by = value.get<std::string>();
                        else throw UsageError("unknown key '" + key + "' in " + swp.config);
                    }
                } catch (const json::exception& e) {
                    throw UsageError(swp.config + ": " + e.what());
                }
                ctx.seed = resolve_seed(ctx.seed_flag);
            }
            SweepConfig cfg;
            cfg.ns = parse_list<std::size_t>(swp.ns, "--ns");
            cfg.ps = parse_list<double>(swp.ps, "--ps");
            cfg.runs = swp.runs;
            cfg.d_max = swp.dmax;
            cfg.master_seed = ctx.seed;
            cfg.threads = std::max(1u, swp.threads);
            GroupBy group;
            try {
                group = parse_group_by(swp.group_by);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            if (cfg.runs < 2 || cfg.d_max < 2) throw UsageError("sweep needs --runs >= 2 and --dmax >= 2");
            for (double p : cfg.ps)
                if (!(p > 0 && p < 1)) throw UsageError("--ps entries must lie in (0, 1)");
            for (std::size_t n : cfg.ns)
                if (n < 2) throw UsageError("--ns entries must be at least 2");
            ctx.extra["resolved"] = {{"ns", cfg.ns}, {"ps", cfg.ps}, {"runs", cfg.runs},
                                     {"dmax", cfg.d_max}, {"group_by", swp.group_by}};
            log_config(ctx, *sweep);

            const SweepResult res = run_sweep(cfg);
            {
                Sink sink(swp.out, out);
                write_records_csv(sink.stream(), res.records);
                sink.finish(swp.out);
            }
            if (!swp.summary.empty()) {
                Sink sink(swp.summary, out);
                write_summary_csv(sink.stream(), summarize(res.records, group));
                sink.finish(swp.summary);
            }
            json f = {{"records", res.records.size()}, {"failures", res.failures.size()}};
            json items = json::array();
            for (const auto& fl : res.failures)
                items.push_back({{"n", fl.n}, {"p", fl.p}, {"run", fl.run}, {"error", fl.message}});
            f["failed_cells"] = items;
            err << f.dump() << '\n';
            return kOk;
        }

        if (fig2->parsed()) {
            log_config(ctx, *fig2);
            if (f2.n < 4) throw UsageError("fig2search needs --n >= 4");
            Rng rng(ctx.seed);
            Fig2SearchOptions opts;
            opts.budget = f2.budget;
            const Fig2Pair pair = find_fig2_pair(f2.n, rng, opts);
            json j;
            j["n"] = f2.n;
            j["graphs_tried"] = pair.graphs_tried;
            j["removed_edge"] = {pair.removed.first, pair.removed.second};
            j["graph"] = {{"edges", edges_json(pair.graph)}, {"report", report_json(pair.graph_report)}};
            j["reduced"] = {{"edges", edges_json(pair.reduced)}, {"report", report_json(pair.reduced_report)}};
            if (!f2.prefix.empty()) {
                const json header{{"generator", "fig2search"}, {"seed", ctx.seed}};
                try {
                    save_graph(f2.prefix + "_full.edges", pair.graph, header);
                    save_graph(f2.prefix + "_reduced.edges", pair.reduced, header);
                } catch (const std::runtime_error& e) {
                    throw IoError(e.what());
                }
            }
            Sink sink(f2.out, out);
            sink.stream() << j.dump(2) << '\n';
            sink.finish(f2.out);
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIoError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomainError;
    }
    return kUsageError;
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace glvnet::cli
