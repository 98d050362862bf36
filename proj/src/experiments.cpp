#include "glvnet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "glvnet/bifurcation.hpp"
#include "glvnet/bounds.hpp"
#include "glvnet/error.hpp"
#include "glvnet/graphs.hpp"
#include "glvnet/rng.hpp"

namespace glvnet {

namespace {

struct Cell {
    std::size_t ni, pi, run;
};

struct CellOutcome {
    std::optional<SweepRecord> record;
    std::string error;
};

CellOutcome run_cell(const SweepConfig& cfg, const Cell& cell) {
    const std::size_t n = cfg.ns[cell.ni];
    const double p = cfg.ps[cell.pi];
    const std::uint64_t seed = Rng::derive_seed(cfg.master_seed, cell.ni, cell.pi, cell.run);
    Rng rng(seed);
    CellOutcome out;
    try {
        const DegreeSequence seq = sample_binomial_degrees(n, cfg.d_max, p, rng);
        const UndirectedGraph g = configuration_model(seq, rng);
        const BifurcationReport rep = classify(g);
        const CubicBoundResult om = omega_case1({g.d_min(), g.d_max()});
        out.record = SweepRecord{n, p, seed, g.d_min(), g.d_max(), rep.tau_c, om.omega,
                                 rep.tau_c / om.omega};
    } catch (const DomainError& e) {
        out.error = e.what();
    }
    return out;
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
    if (cfg.runs < 2) throw std::invalid_argument("run_sweep: need runs >= 2");
    if (cfg.d_max < 2) throw std::invalid_argument("run_sweep: need d_max >= 2");
    for (double p : cfg.ps)
        if (!(p > 0 && p < 1)) throw std::invalid_argument("run_sweep: p must lie in (0, 1)");
    for (std::size_t n : cfg.ns)
        if (n < 2) throw std::invalid_argument("run_sweep: n must be at least 2");

    std::vector<Cell> cells;
    for (std::size_t ni = 0; ni < cfg.ns.size(); ++ni)
        for (std::size_t pi = 0; pi < cfg.ps.size(); ++pi)
            for (std::size_t run = 0; run < cfg.runs; ++run) cells.push_back({ni, pi, run});

    std::vector<CellOutcome> outcomes(cells.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cells.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) outcomes[i] = run_cell(cfg, cells[i]);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < cells.size(); i += workers)
                        outcomes[i] = run_cell(cfg, cells[i]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    SweepResult result;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (outcomes[i].record)
            result.records.push_back(*outcomes[i].record);
        else
            result.failures.push_back(
                {cfg.ns[cells[i].ni], cfg.ps[cells[i].pi], cells[i].run, outcomes[i].error});
    }
    return result;
}

std::vector<SweepSummary> summarize(const std::vector<SweepRecord>& records, GroupBy group_by) {
    std::map<double, std::vector<double>> groups;
    for (const auto& r : records)
        groups[group_by == GroupBy::N ? static_cast<double>(r.n) : r.p].push_back(r.ratio);
    std::vector<SweepSummary> out;
    for (auto& [key, ratios] : groups) {
        if (ratios.size() < 2)
            throw std::invalid_argument("summarize: group " + format_real(key) +
                                        " has a single record");
        // Sort so the floating-point sums do not depend on record order.
        std::sort(ratios.begin(), ratios.end());
        const auto count = static_cast<double>(ratios.size());
        double mean = 0;
        for (double v : ratios) mean += v;
        mean /= count;
        double ss = 0;
        for (double v : ratios) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / (count - 1));
        const double half = 1.96 * sd / std::sqrt(count);
        out.push_back({group_by, key, mean, mean - half, mean + half, ratios.size()});
    }
    return out;
}

bool intervals_overlap(const SweepSummary& a, const SweepSummary& b) {
    return a.ci95_low <= b.ci95_high && b.ci95_low <= a.ci95_high;
}

void write_records_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << "n,p,seed,d_min,d_max,tau_c,omega,ratio\n";
    for (const auto& r : records) {
        os << r.n << ',' << format_real(r.p) << ',' << r.seed << ',' << r.d_min << ',' << r.d_max
           << ',' << format_real(r.tau_c) << ',' << format_real(r.omega) << ','
           << format_real(r.ratio) << '\n';
    }
}

std::vector<SweepRecord> read_records_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "n,p,seed,d_min,d_max,tau_c,omega,ratio")
        throw std::runtime_error("records CSV: unexpected header");
    std::vector<SweepRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        SweepRecord r;
        char c1, c2, c3, c4, c5, c6, c7;
        if (!(ss >> r.n >> c1 >> r.p >> c2 >> r.seed >> c3 >> r.d_min >> c4 >> r.d_max >> c5 >>
              r.tau_c >> c6 >> r.omega >> c7 >> r.ratio))
            throw std::runtime_error("records CSV: malformed row: " + line);
        out.push_back(r);
    }
    return out;
}

void write_summary_csv(std::ostream& os, const std::vector<SweepSummary>& summaries) {
    os << "group_by,key,count,mean_ratio,ci95_low,ci95_high\n";
    for (const auto& s : summaries) {
        os << to_string(s.group_by) << ',' << format_real(s.key) << ',' << s.count << ','
           << format_real(s.mean_ratio) << ',' << format_real(s.ci95_low) << ','
           << format_real(s.ci95_high) << '\n';
    }
}

GroupBy parse_group_by(const std::string& s) {
    if (s == "n") return GroupBy::N;
    if (s == "p") return GroupBy::P;
    throw std::invalid_argument("group_by must be 'n' or 'p'");
}

const char* to_string(GroupBy g) {
    return g == GroupBy::N ? "n" : "p";
}

}  // namespace glvnet
