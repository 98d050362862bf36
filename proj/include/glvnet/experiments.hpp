#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace glvnet {

struct SweepRecord {
    std::size_t n = 0;
    double p = 0;
    std::uint64_t seed = 0;  ///< stream seed of this cell
    int d_min = 0;
    int d_max = 0;
    double tau_c = 0;
    double omega = 0;
    double ratio = 0;
};

struct SweepFailure {
    std::size_t n = 0;
    double p = 0;
    std::size_t run = 0;
    std::string message;
};

struct SweepConfig {
    std::vector<std::size_t> ns{100};
    std::vector<double> ps{0.3};
    std::size_t runs = 500;
    int d_max = 30;
    std::uint64_t master_seed = 1;
    unsigned threads = 1;
};

struct SweepResult {
    std::vector<SweepRecord> records;    ///< ordered by (n, p, run)
    std::vector<SweepFailure> failures;  ///< cells that could not be generated
};

/// For each (n, p, run): binomial degrees, connected configuration-model
/// graph, tau_c from classify and Omega from the sampled graph's own
/// d_min/d_max. Cell (i, j, run) draws from Rng::derive(master, i, j, run),
/// so the output is independent of the thread count.
SweepResult run_sweep(const SweepConfig& cfg);

enum class GroupBy { N, P };

struct SweepSummary {
    GroupBy group_by = GroupBy::N;
    double key = 0;
    double mean_ratio = 0;
    double ci95_low = 0;
    double ci95_high = 0;
    std::size_t count = 0;
};

/// Mean ratio per group with normal-approximation 95% interval
/// mean +- 1.96 s / sqrt(count). Groups are returned in ascending key order.
std::vector<SweepSummary> summarize(const std::vector<SweepRecord>& records, GroupBy group_by);

bool intervals_overlap(const SweepSummary& a, const SweepSummary& b);

/// Header n,p,seed,d_min,d_max,tau_c,omega,ratio; reals with 17 significant digits.
void write_records_csv(std::ostream& os, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_records_csv(std::istream& is);
/// Header group_by,key,count,mean_ratio,ci95_low,ci95_high.
void write_summary_csv(std::ostream& os, const std::vector<SweepSummary>& summaries);

GroupBy parse_group_by(const std::string& s);
const char* to_string(GroupBy g);

}  // namespace glvnet
