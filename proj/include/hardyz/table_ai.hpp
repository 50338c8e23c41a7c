#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hardyz/rs_classic.hpp"
#include "hardyz/zeta_sum.hpp"

namespace hardyz {

// One row of the illustrative Euler-Maclaurin calculations, with its term-handling policy.
struct TableAiPreset {
    std::string name;
    double t = 0.0;
    KPolicy k_policy = KPolicy::paper_0_35t;
    std::vector<std::pair<std::int64_t, TermMethod>> overrides;
    std::int64_t main_lo = 0;
    std::string note;
};

inline const std::vector<TableAiPreset>& table_ai_presets() {
    using M = TermMethod;
    static const std::vector<TableAiPreset> rows = {
        {"1000", 1000.0, KPolicy::paper_0_35t, {{49, M::numeric}, {51, M::numeric}}, 0, "alpha nearest a numeric"},
        {"1100-generic", 1100.0, KPolicy::paper_0_35t, {{51, M::numeric}, {53, M::generic}}, 0,
         "first term above a from the generic formula"},
        {"1100-numeric", 1100.0, KPolicy::paper_0_35t, {{51, M::numeric}, {53, M::numeric}}, 0,
         "alpha nearest a numeric"},
        {"1103.09172", 1103.091720, KPolicy::paper_0_35t, {{53, M::closed_form}}, 0, "a = 53, closed form"},
        {"17143.803905", 17143.803905, KPolicy::half_t, {{207, M::numeric}, {209, M::numeric}}, 0,
         "N_alpha = odd_floor(t/2) + 2, alpha nearest a numeric"},
        {"100000", 100000.0, KPolicy::paper_0_35t, {{503, M::numeric}}, 0, ""},
        {"100148.08331", 100148.083310, KPolicy::paper_0_35t, {{505, M::closed_form}}, 0, "a = 505, closed form"},
        {"2000000", 2.0e6, KPolicy::paper_0_35t, {{2255, M::numeric}}, 0, ""},
        {"1e7", 1.0e7, KPolicy::paper_0_35t, {{5045, M::numeric}}, 0, ""},
        {"388858886.002", 388858886.0023394, KPolicy::half_t, {}, 31465, "N_alpha = odd_floor(t/2) + 2"},
        {"1e9", 1.0e9, KPolicy::paper_0_35t, {}, 0, ""},
    };
    return rows;
}

inline const TableAiPreset& table_ai_preset(const std::string& name) {
    for (const auto& p : table_ai_presets())
        if (p.name == name) return p;
    std::string list;
    for (const auto& p : table_ai_presets()) list += (list.empty() ? "" : ", ") + p.name;
    throw std::invalid_argument("unknown preset '" + name + "'; valid presets: " + list);
}

struct TableAiRow {
    NewsumResult newsum;
    double actual = 0.0;  // rs_z
};

inline TableAiRow run_table_ai(const TableAiPreset& p, Exec exec = {}, bool incremental = false) {
    NewsumOptions o;
    o.k_policy = p.k_policy;
    o.overrides = p.overrides;
    o.main_lo = p.main_lo;
    o.incremental = incremental;
    TableAiRow r;
    r.newsum = z_newsum(p.t, o, exec);
    r.actual = rs_z(p.t, exec).z;
    return r;
}

}  // namespace hardyz
