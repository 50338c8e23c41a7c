#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardyz/bench.hpp"
#include "hardyz/parallel.hpp"
#include "zcli/commands.hpp"
#include "zcli/config.hpp"
#include "zcli/manifest.hpp"

namespace {

// Config entries become `--key=value` for the chosen subcommand unless the flag is already given.
std::vector<std::string> inject_config(const std::vector<std::string>& args, const zcli::ConfigMap& cfg,
                                       const CLI::App& app) {
    std::vector<std::string> out = args;
    if (args.empty()) return out;
    const CLI::App* sub = nullptr;
    try {
        sub = app.get_subcommand(args.front());
    } catch (const CLI::OptionNotFound&) {
        return out;
    }
    for (const auto& [key, value] : cfg) {
        std::string flag = "--" + key;
        bool given = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
        if (given) continue;
        if (sub->get_option_no_throw(flag) != nullptr || app.get_option_no_throw(flag) != nullptr)
            out.push_back(flag + "=" + value);
    }
    return out;
}

int run(std::vector<std::string> args, const zcli::ConfigMap* replay_config) {
    CLI::App app{"Hardy Z(t): Riemann-Siegel, the odd-alpha series and the hybrid evaluator"};
    app.require_subcommand(1);
    zcli::Common common;
    common.workers = hardyz::default_workers();
    std::string config_path, manifest_path;
    app.add_option("--workers", common.workers, "worker threads (default Z_WORKERS or 1)")->check(CLI::Range(1u, 1024u));
    app.add_option("--config", config_path, "flat key = value file; flags override it");
    app.add_option("--manifest", manifest_path, "write the run manifest here");

    zcli::ZOptions zo;
    auto* z = app.add_subcommand("z", "evaluate Z(t)");
    z->add_option("t", zo.t)->required();
    z->add_option("--method", zo.method)->check(CLI::IsMember({"rs", "newsum", "hybrid"}));
    z->add_option("--omega", zo.omega);
    z->add_option("--rounding", zo.rounding)->check(CLI::IsMember({"floor_ceil", "nearest"}));
    z->add_option("--k-policy", zo.k_policy)->check(CLI::IsMember({"double_min", "paper_0_35t", "half_t"}));
    z->add_flag("--nearest-numeric,!--no-nearest-numeric", zo.nearest_numeric,
                "newsum: evaluate the odd integer nearest a by quadrature (default on)");

    zcli::GramOptions go;
    std::vector<std::int64_t> range;
    auto* gram = app.add_subcommand("gram", "Gram points");
    auto* gi = gram->add_option("--index", go.index);
    auto* gr = gram->add_option("--range", range)->expected(2);
    gi->excludes(gr);

    zcli::Table1Options t1;
    auto* table1 = app.add_subcommand("table1", "hybrid error sweep over consecutive Gram points");
    table1->add_option("--t-start", t1.t_start, "start at the first Gram point above this t");
    table1->add_option("--start-index", t1.start_index);
    table1->add_option("--count", t1.count);
    table1->add_option("--rounding", t1.rounding)->check(CLI::IsMember({"floor_ceil", "nearest"}));
    table1->add_option("--omega", t1.omega);
    table1->add_option("--transition-window", t1.transition_window);
    table1->add_option("--transition-policy", t1.transition_policy)->check(CLI::IsMember({"regime", "numeric"}));

    zcli::TableAiOptions ta;
    auto* tableai = app.add_subcommand("tableai", "Euler-Maclaurin rows of the new series");
    tableai->add_option("--preset", ta.preset, "row name or `all`");
    tableai->add_flag("--incremental", ta.incremental, "incremental phases for the bulk sum");

    zcli::RsiOptions ro;
    auto* rsi = app.add_subcommand("rsi", "Riemann-Siegel integral: quadrature vs asymptotic formula");
    rsi->add_option("--t", ro.ts)->delimiter(',');

    zcli::BenchOptions bo;
    auto* bench = app.add_subcommand("bench", "measure omega and the realized saving");
    bench->add_option("--t", bo.t);
    bench->add_option("--budget", bo.budget);
    bench->add_option("--reps", bo.reps);

    std::string replay_path;
    auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
    replay->add_option("manifest", replay_path)->required();

    for (auto* sc : {z, gram, table1, tableai, rsi, bench}) {
        sc->add_flag("--json", common.json, "JSON lines");
        sc->add_option("--out", common.out, "output file; the manifest is written beside it");
    }

    // global options may precede the subcommand; config injection keys off the first subcommand token
    std::vector<std::string> head, tail;
    std::size_t i = 0;
    for (; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) != 0) break;
        head.push_back(a);
        if (a.find('=') == std::string::npos && i + 1 < args.size()) head.push_back(args[++i]);
    }
    tail.assign(args.begin() + static_cast<std::ptrdiff_t>(i), args.end());
    for (std::size_t k = 0; k + 1 < head.size(); ++k)
        if (head[k] == "--config") config_path = head[k + 1];
    for (const auto& h : head)
        if (h.rfind("--config=", 0) == 0) config_path = h.substr(9);

    zcli::ConfigMap cfg;
    try {
        if (replay_config != nullptr) cfg = *replay_config;
        else if (!config_path.empty()) cfg = zcli::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    std::vector<std::string> full = head;
    for (const auto& a : inject_config(tail, cfg, app)) full.push_back(a);

    std::vector<std::string> rev(full.rbegin(), full.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    if (range.size() == 2) {
        go.range_lo = range[0];
        go.range_hi = range[1];
    }

    if (replay->parsed()) {
        try {
            auto m = zcli::RunManifest::read(replay_path);
            return run(m.command_line, &m.config);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
    }

    auto manifest = zcli::RunManifest::begin(args, cfg);
    int status = 0;
    try {
        if (z->parsed()) status = zcli::cmd_z(zo, common, manifest, std::cout);
        else if (gram->parsed()) status = zcli::cmd_gram(go, common, manifest, std::cout);
        else if (table1->parsed()) status = zcli::cmd_table1(t1, common, manifest, std::cout);
        else if (tableai->parsed()) status = zcli::cmd_tableai(ta, common, manifest, std::cout);
        else if (rsi->parsed()) status = zcli::cmd_rsi(ro, common, manifest, std::cout);
        else if (bench->parsed()) status = zcli::cmd_bench(bo, common, manifest, std::cout);
    } catch (const hardyz::UnstableMeasurement& e) {
        std::cerr << "unstable measurement: " << e.what() << '\n';
        status = 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        status = 1;
    }
    manifest.finish();
    manifest.parameters["exit_status"] = status;
    try {
        if (!manifest_path.empty()) manifest.write(manifest_path);
        if (!common.out.empty()) manifest.write(common.out + ".manifest.json");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (status == 0) status = 1;
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, nullptr);
}
