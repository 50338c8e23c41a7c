#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "zcli/manifest.hpp"

namespace zcli {

struct Common {
    unsigned workers = 1;
    bool json = false;
    std::string out;  // file path; empty means stdout
};

struct ZOptions {
    double t = 0.0;
    std::string method = "rs";
    double omega = 1.0;
    std::string rounding = "floor_ceil";
    std::string k_policy = "paper_0_35t";
    bool nearest_numeric = true;  // newsum: odd integer nearest a by quadrature
};

struct GramOptions {
    std::int64_t index = -1;
    std::int64_t range_lo = -1, range_hi = -1;
};

struct Table1Options {
    double t_start = 1.0e6;
    std::int64_t start_index = -1;  // overrides t_start when >= 0
    std::int64_t count = 10000;
    std::string rounding = "floor_ceil";
    double omega = 1.0;
    double transition_window = 1.0;
    std::string transition_policy = "regime";
};

struct TableAiOptions {
    std::string preset = "1000";
    bool incremental = false;
};

struct RsiOptions {
    std::vector<double> ts = {10, 20, 30, 40, 50};
};

struct BenchOptions {
    double t = 1.0e8;
    std::int64_t budget = 1000000;
    int reps = 9;
};

// Each command writes its report to `out` and fills manifest.parameters / outputs.
int cmd_z(const ZOptions& o, const Common& c, RunManifest& m, std::ostream& out);
int cmd_gram(const GramOptions& o, const Common& c, RunManifest& m, std::ostream& out);
int cmd_table1(const Table1Options& o, const Common& c, RunManifest& m, std::ostream& out);
int cmd_tableai(const TableAiOptions& o, const Common& c, RunManifest& m, std::ostream& out);
int cmd_rsi(const RsiOptions& o, const Common& c, RunManifest& m, std::ostream& out);
int cmd_bench(const BenchOptions& o, const Common& c, RunManifest& m, std::ostream& out);

std::int64_t first_gram_above(double t);

}  // namespace zcli
