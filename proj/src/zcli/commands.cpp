#include "zcli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "hardyz/bench.hpp"
#include "hardyz/hybrid.hpp"
#include "hardyz/rsi_check.hpp"
#include "hardyz/table_ai.hpp"
#include "zcli/output.hpp"

namespace zcli {

using nlohmann::json;

namespace {

hardyz::Rounding parse_rounding(const std::string& s) {
    if (s == "floor_ceil" || s == "floor") return hardyz::Rounding::floor_ceil;
    if (s == "nearest") return hardyz::Rounding::nearest;
    throw std::invalid_argument("rounding must be floor_ceil or nearest");
}

hardyz::TransitionPolicy parse_policy(const std::string& s) {
    if (s == "regime") return hardyz::TransitionPolicy::regime;
    if (s == "numeric") return hardyz::TransitionPolicy::numeric;
    throw std::invalid_argument("transition policy must be regime or numeric");
}

hardyz::KPolicy parse_k_policy(const std::string& s) {
    if (s == "double_min") return hardyz::KPolicy::double_min;
    if (s == "paper_0_35t") return hardyz::KPolicy::paper_0_35t;
    if (s == "half_t") return hardyz::KPolicy::half_t;
    throw std::invalid_argument("k policy must be double_min, paper_0_35t or half_t");
}

const char* method_name(hardyz::TermMethod m) {
    switch (m) {
    case hardyz::TermMethod::generic: return "generic";
    case hardyz::TermMethod::closed_form: return "closed_form";
    case hardyz::TermMethod::numeric: return "numeric";
    default: return "automatic";
    }
}

// Opens c.out when set; the manifest goes beside it.
struct Sink {
    std::ostream* os;
    std::unique_ptr<std::ofstream> file;

    Sink(const Common& c, RunManifest& m, std::ostream& fallback) : os(&fallback) {
        if (c.out.empty()) return;
        file = std::make_unique<std::ofstream>(c.out, std::ios::binary);
        if (!*file) throw std::runtime_error("cannot write " + c.out);
        os = file.get();
        m.outputs.push_back(c.out);
    }
};

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

std::int64_t first_gram_above(double t) {
    std::int64_t n = static_cast<std::int64_t>(std::floor(hardyz::theta(t) / hardyz::xconst::pi));
    if (n < 0) n = 0;
    while (n > 0 && hardyz::gram_point(n - 1) > t) --n;
    while (hardyz::gram_point(n) <= t) ++n;
    return n;
}

int cmd_z(const ZOptions& o, const Common& c, RunManifest& m, std::ostream& out) {
    m.parameters = {{"t", o.t}, {"method", o.method}, {"omega", o.omega}, {"rounding", o.rounding},
                    {"k_policy", o.k_policy}, {"nearest_numeric", o.nearest_numeric}, {"workers", c.workers}};
    hardyz::Exec exec{c.workers};
    hardyz::EvalResult r;
    if (o.method == "rs") {
        r = hardyz::rs_eval(o.t, exec);
    } else if (o.method == "newsum") {
        hardyz::NewsumOptions opt;
        opt.k_policy = parse_k_policy(o.k_policy);
        opt.nearest_numeric = o.nearest_numeric;
        auto n = hardyz::z_newsum(o.t, opt, exec);
        r.z = n.z;
        r.method = hardyz::Method::newsum;
        r.new_terms = (n.alpha_hi - n.alpha_lo) / 2 + 1;
        r.error_budget = std::nan("");
    } else if (o.method == "hybrid") {
        auto cfg = hardyz::cutoffs(o.t, o.omega, parse_rounding(o.rounding));
        r = hardyz::hybrid_z(o.t, cfg, exec);
    } else {
        throw std::invalid_argument("method must be rs, newsum or hybrid");
    }
    double th = hardyz::theta(o.t);
    double zr = r.z * std::cos(th), zi = -r.z * std::sin(th);
    Sink s(c, m, out);
    if (c.json) {
        json j = {{"run_id", m.run_id}, {"t", o.t}, {"method", o.method}, {"z", r.z}, {"z_hex", hex_double(r.z)},
                  {"zeta_re", zr}, {"zeta_im", zi}, {"rs_terms", r.rs_terms}, {"new_terms", r.new_terms},
                  {"transition_used", r.transition_used}, {"error_budget", num(r.error_budget)}};
        *s.os << j.dump() << '\n';
    } else {
        *s.os << "t             " << fmt10(o.t) << '\n'
              << "method        " << o.method << '\n'
              << "Z(t)          " << fmt10(r.z) << "  (" << hex_double(r.z) << ")\n"
              << "zeta(1/2+it)  " << fmt10(zr) << (zi < 0 ? " - " : " + ") << fmt10(std::fabs(zi)) << "i\n"
              << "rs terms      " << r.rs_terms << '\n'
              << "new terms     " << r.new_terms << '\n'
              << "transition    " << (r.transition_used ? "yes" : "no") << '\n'
              << "error budget  " << fmt10(r.error_budget) << '\n'
              << "run id        " << m.run_id << '\n';
    }
    return 0;
}

int cmd_gram(const GramOptions& o, const Common& c, RunManifest& m, std::ostream& out) {
    std::int64_t lo = o.index, hi = o.index;
    if (o.index < 0) {
        lo = o.range_lo;
        hi = o.range_hi;
    }
    if (lo < 0 || hi < lo) throw std::invalid_argument("gram: give --index n or --range n0 n1 with 0 <= n0 <= n1");
    m.parameters = {{"lo", lo}, {"hi", hi}};
    Sink s(c, m, out);
    if (c.json) {
        for (std::int64_t n = lo; n <= hi; ++n) {
            double g = hardyz::gram_point(n);
            *s.os << json{{"run_id", m.run_id}, {"n", n}, {"g", g}, {"g_hex", hex_double(g)}}.dump() << '\n';
        }
        return 0;
    }
    CsvWriter w(*s.os);
    w.row({"n", "g", "g_hex", "run_id"});
    for (std::int64_t n = lo; n <= hi; ++n) {
        double g = hardyz::gram_point(n);
        w.row({std::to_string(n), fmt10(g), hex_double(g), m.run_id});
    }
    return 0;
}

int cmd_table1(const Table1Options& o, const Common& c, RunManifest& m, std::ostream& out) {
    if (o.count < 1) throw std::invalid_argument("table1: --count must be >= 1");
    std::int64_t start = o.start_index >= 0 ? o.start_index : first_gram_above(o.t_start);
    hardyz::HybridConfig tmpl;
    tmpl.omega = o.omega;
    tmpl.rounding = parse_rounding(o.rounding);
    tmpl.transition_window = o.transition_window;
    tmpl.transition_policy = parse_policy(o.transition_policy);
    m.parameters = {{"start_index", start},         {"count", o.count},
                    {"rounding", o.rounding},       {"omega", o.omega},
                    {"transition_window", o.transition_window}, {"transition_policy", o.transition_policy},
                    {"workers", c.workers}};
    std::vector<hardyz::SweepRecord> recs;
    hardyz::ErrorStats st = hardyz::error_sweep(start, o.count, tmpl, hardyz::Exec{c.workers}, &recs);
    Sink s(c, m, out);
    if (c.json) {
        for (const auto& r : recs)
            *s.os << json{{"run_id", m.run_id}, {"gram_index", r.gram_index}, {"t", r.t}, {"rs_tail", r.rs_tail},
                          {"new_series_value", r.new_series}, {"transition_flag", r.transition},
                          {"error", r.error}, {"error_hex", hex_double(r.error)}, {"bound", r.bound}}
                         .dump()
                  << '\n';
    } else {
        CsvWriter w(*s.os);
        w.row({"gram_index", "t", "rs_tail", "new_series_value", "transition_flag", "error", "bound", "error_hex",
               "run_id"});
        for (const auto& r : recs)
            w.row({std::to_string(r.gram_index), fmt10(r.t), fmt10(r.rs_tail), fmt10(r.new_series),
                   r.transition ? "1" : "0", fmt10(r.error), fmt10(r.bound), hex_double(r.error), m.run_id});
        w.row({"summary", "count=" + std::to_string(st.count), "mean_abs_error=" + fmt10(st.mean_abs_error),
               "mean_exponent_s=" + fmt10(st.mean_exponent_s), "max_abs_error=" + fmt10(st.max_abs_error),
               "max_at_gram=" + std::to_string(st.max_at_gram), "bound=" + fmt10(st.bound),
               "violations=" + std::to_string(st.violations), m.run_id});
    }
    if (!c.out.empty() || c.json) {
        std::ostream& log = c.out.empty() ? std::cerr : out;
        log << "count " << st.count << "  mean|err| " << fmt10(st.mean_abs_error) << "  s " << fmt10(st.mean_exponent_s)
            << "  max|err| " << fmt10(st.max_abs_error) << " at g_" << st.max_at_gram << "  bound " << fmt10(st.bound)
            << "  violations " << st.violations << '\n';
    }
    return 0;
}

int cmd_tableai(const TableAiOptions& o, const Common& c, RunManifest& m, std::ostream& out) {
    std::vector<hardyz::TableAiPreset> rows;
    if (o.preset == "all") rows = hardyz::table_ai_presets();
    else rows.push_back(hardyz::table_ai_preset(o.preset));
    m.parameters = {{"preset", o.preset}, {"incremental", o.incremental}, {"workers", c.workers}};
    Sink s(c, m, out);
    for (const auto& p : rows) {
        auto r = hardyz::run_table_ai(p, hardyz::Exec{c.workers}, o.incremental);
        const auto& n = r.newsum;
        if (c.json) {
            json near = json::array();
            for (auto& [al, meth] : n.near_terms) near.push_back({{"alpha", al}, {"method", method_name(meth)}});
            *s.os << json{{"run_id", m.run_id},           {"preset", p.name},
                          {"t", p.t},                     {"alpha_lo", n.alpha_lo},
                          {"alpha_hi", n.alpha_hi},       {"main_sum", n.main_sum},
                          {"bernoulli_sum", n.tail.bern_sum}, {"half_term", n.tail.half_term},
                          {"integral_i", n.tail.integral_i},  {"z_estimate", n.z},
                          {"z_estimate_hex", hex_double(n.z)}, {"actual_z", r.actual},
                          {"near_terms", near}}
                             .dump()
                      << '\n';
            continue;
        }
        *s.os << "preset " << p.name << "  t = " << std::setprecision(12) << p.t;
        if (!p.note.empty()) *s.os << "  (" << p.note << ")";
        *s.os << '\n'
              << "  main sum      " << fmt10(n.main_sum) << "  (" << n.alpha_lo << "-" << n.alpha_hi << ")\n"
              << "  bernoulli     " << fmt10(n.tail.bern_sum) << '\n'
              << "  f(pc(K))/2    " << fmt10(n.tail.half_term) << '\n'
              << "  I             " << fmt10(n.tail.integral_i) << '\n'
              << "  Z estimate    " << fmt10(n.z) << '\n'
              << "  actual Z      " << fmt10(r.actual) << '\n';
        for (auto& [al, meth] : n.near_terms) *s.os << "  alpha " << al << ": " << method_name(meth) << '\n';
    }
    if (!c.json) *s.os << "run id " << m.run_id << '\n';
    return 0;
}

int cmd_rsi(const RsiOptions& o, const Common& c, RunManifest& m, std::ostream& out) {
    m.parameters = {{"t", o.ts}};
    Sink s(c, m, out);
    std::unique_ptr<CsvWriter> w;
    if (!c.json) {
        w = std::make_unique<CsvWriter>(*s.os);
        w->row({"t", "numeric_re", "numeric_im", "asymptotic_re", "asymptotic_im", "rel_error", "numeric_est_err",
                "run_id"});
    }
    for (double t : o.ts) {
        auto n = hardyz::rsi_numeric(t);
        auto a = hardyz::rsi_asymptotic(t);
        double rel = std::abs(a.value - n.value) / std::abs(n.value);
        if (c.json) {
            *s.os << json{{"run_id", m.run_id},         {"t", t},
                          {"numeric_re", n.value.real()}, {"numeric_im", n.value.imag()},
                          {"asymptotic_re", a.value.real()}, {"asymptotic_im", a.value.imag()},
                          {"rel_error", rel},            {"numeric_est_err", n.est_err}}
                             .dump()
                      << '\n';
        } else {
            w->row({fmt10(t), fmt10(n.value.real()), fmt10(n.value.imag()), fmt10(a.value.real()),
                    fmt10(a.value.imag()), fmt10(rel), fmt10(n.est_err), m.run_id});
        }
    }
    return 0;
}

int cmd_bench(const BenchOptions& o, const Common& c, RunManifest& m, std::ostream& out) {
    m.parameters = {{"t", o.t}, {"budget", o.budget}, {"reps", o.reps}};
    auto meas = hardyz::measure_omega(o.t, o.budget, o.reps);
    auto sav = hardyz::realized_saving(o.t, meas);
    Sink s(c, m, out);
    json j = {{"run_id", m.run_id},
              {"t", o.t},
              {"omega", meas.omega},
              {"rs_ns_per_term", meas.rs_ns_per_term},
              {"new_ns_per_term", meas.new_ns_per_term},
              {"reps", meas.reps},
              {"dispersion", meas.dispersion},
              {"omega_used", sav.omega_used},
              {"predicted_saving_pct", sav.predicted_pct},
              {"realized_saving_pct", sav.realized_pct},
              {"saving_dispersion", sav.dispersion},
              {"rs_terms", sav.rs_terms},
              {"hybrid_terms", sav.hybrid_terms}};
    *s.os << j.dump() << '\n';
    return 0;
}

}  // namespace zcli
