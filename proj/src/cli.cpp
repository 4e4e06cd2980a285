#include "cfk/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cfk/exporters.hpp"

namespace cfk {

namespace {

struct RunConfig {
    std::string quiver = "A2";
    long budget = 10000;
    long samples = 3;
    uint64_t seed = 12345;
    size_t max_clusters = 100000;
    size_t store_cap = 0; // 0: derived from max_clusters
    std::string output;
    std::string format = "json";
};

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read config file: " + path);
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            auto e = s.find_last_not_of(" \t\r");
            s.erase(e == std::string::npos ? 0 : e + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "quiver") cfg.quiver = val;
        else if (key == "budget") cfg.budget = std::stol(val);
        else if (key == "samples") cfg.samples = std::stol(val);
        else if (key == "seed") cfg.seed = std::stoull(val);
        else if (key == "max-clusters") cfg.max_clusters = std::stoul(val);
        else if (key == "store-cap") cfg.store_cap = std::stoul(val);
        else if (key == "output") cfg.output = val;
        else if (key == "format") cfg.format = val;
        else throw std::runtime_error("unknown config key: " + key);
    }
}

void write_output(const RunConfig& cfg, const std::string& payload, std::ostream& out) {
    if (cfg.output.empty()) {
        out << payload;
        if (!payload.empty() && payload.back() != '\n') out << "\n";
    } else {
        std::ofstream f(cfg.output);
        if (!f) throw std::runtime_error("cannot write " + cfg.output);
        f << payload;
    }
}

ComplexStore make_store(const RunConfig& cfg, std::ostream& err) {
    IntMat b0 = load_quiver(cfg.quiver);
    ComplexStore st = ComplexStore::enumerate(b0, cfg.max_clusters);
    if (!st.exhausted()) {
        size_t cap = cfg.store_cap ? cfg.store_cap : 8 * std::max<size_t>(cfg.max_clusters, 500);
        st.set_max_clusters(cap);
        err << "note: store is partial (" << st.cluster_count()
            << " clusters enumerated, lazy cap " << cap << ")\n";
    }
    return st;
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& which, std::ostream& out,
               std::ostream& err) {
    ComplexStore store = make_store(cfg, err);
    bool all_pass = true;
    auto report = [&](const std::string& name, bool pass, const std::string& note) {
        out << (pass ? "PASS" : "FAIL") << " " << name << (note.empty() ? "" : ": " + note)
            << "\n";
        all_pass = all_pass && pass;
    };
    for (const std::string& w : which) {
        if (w == "duality") {
            bool ok = true;
            size_t checked = 0;
            for (size_t ci = 0; ci < store.cluster_count() && ci < 2000; ++ci, ++checked)
                ok = ok && check_duality(store.cluster((int)ci).witness);
            std::mt19937_64 rng(cfg.seed);
            Seed s = root_seed(store.b0());
            for (int t = 0; t < 2000; ++t) {
                if (t % 40 == 0) s = root_seed(store.b0());
                s = mutate_seed(s, (int)(rng() % store.rank()));
                ok = ok && check_duality(s);
                ++checked;
            }
            report("duality", ok, std::to_string(checked) + " seeds checked");
        } else if (w == "green") {
            if (!store.exhausted()) {
                report("green", false, "store not exhausted");
                continue;
            }
            if (!is_acyclic_quiver(store.b0()))
                err << "warning: quiver has oriented cycles; the green theory assumes "
                       "Jacobi-finiteness\n";
            bool ok = true;
            for (size_t base = 0; base < store.cluster_count(); ++base)
                ok = ok && verify_green(store, (int)base).pass();
            report("green", ok, std::to_string(store.cluster_count()) + " bases");
        } else if (w == "homology") {
            if (!store.exhausted()) {
                report("homology", false, "store not exhausted");
                continue;
            }
            auto rep = betti(store);
            bool ok = true;
            for (size_t k = 0; k < rep.betti.size(); ++k)
                ok = ok && rep.betti[k] == (k + 1 == (size_t)store.rank() ? 1 : 0);
            std::ostringstream note;
            note << "betti = [";
            for (size_t k = 0; k < rep.betti.size(); ++k) note << (k ? "," : "") << rep.betti[k];
            note << "]";
            report("homology", ok, note.str());
        } else if (w == "polygons") {
            if (!store.exhausted()) {
                report("polygons", false, "store not exhausted");
                continue;
            }
            auto rep = polygon_h1(store);
            report("polygons", rep.h1_rank == 0,
                   "H1 rank " + std::to_string(rep.h1_rank) + " (" + std::to_string(rep.squares) +
                       " squares, " + std::to_string(rep.pentagons) + " pentagons)");
        } else if (w == "foliation") {
            bool ok = true;
            std::string note;
            size_t nvars = store.variable_count();
            for (size_t v = 0; v < nvars; ++v) {
                SinkSpec sink =
                    make_sink(store, {{(VarId)v, rat(1)}}, "vertex:" + std::to_string(v));
                auto rep = classify_foliation(store, sink, cfg.samples, cfg.budget, cfg.seed);
                bool good = store.exhausted()
                                ? rep.classification == FoliationClass::Compact
                                : (rep.classification == FoliationClass::Compact ||
                                   rep.classification == FoliationClass::SemiCompactEvidence);
                if (!good) {
                    ok = false;
                    note = "variable " + std::to_string(v) + " -> " +
                           to_string(rep.classification);
                    break;
                }
            }
            report("foliation", ok, note);
        } else {
            throw std::invalid_argument("unknown check: " + w);
        }
    }
    return all_pass ? 0 : 1;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    // config file first, then CFK_BUDGET, then flags
    for (size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") load_config_file(args[i + 1], cfg);
    if (const char* env = std::getenv("CFK_BUDGET")) cfg.budget = std::stol(env);

    CLI::App app{"cluster complexes, evolution flows, and foliations"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "key=value config file (parsed before flags)");

    auto add_common = [&](CLI::App* c) {
        c->add_option("--config", config_path, "key=value config file (parsed before flags)");
        c->add_option("--quiver", cfg.quiver, "preset (A1,A2,A3,D4,Atilde:p,q) or B-matrix file");
        c->add_option("--budget", cfg.budget, "max wall crossings per trace");
        c->add_option("--samples", cfg.samples, "random interior starts per top cell");
        c->add_option("--seed", cfg.seed, "PRNG seed for rational sampling");
        c->add_option("--max-clusters", cfg.max_clusters, "enumeration budget");
        c->add_option("--store-cap", cfg.store_cap, "lazy expansion cap (0 = 8x max-clusters)");
        c->add_option("--output", cfg.output, "write to file instead of stdout");
        c->add_option("--format", cfg.format, "json|dot|svg");
    };

    auto* c_enum = app.add_subcommand("enumerate", "enumerate clusters breadth-first");
    add_common(c_enum);
    auto* c_complex = app.add_subcommand("export-complex", "complex JSON or exchange-graph DOT");
    add_common(c_complex);
    auto* c_fan = app.add_subcommand("export-fan", "g-fan JSON or SVG (rank <= 3)");
    add_common(c_fan);

    std::string sink_spec, start_spec, sense_str = "down", base_spec;
    auto* c_trace = app.add_subcommand("trace", "trace one leaf");
    add_common(c_trace);
    c_trace->add_option("--sink", sink_spec, "vertex:<id> | cell:<ids> | point:<id=p/q,...>")
        ->required();
    c_trace->add_option("--start", start_spec, "same syntax as --sink")->required();
    c_trace->add_option("--sense", sense_str, "down|up");

    auto* c_fol = app.add_subcommand("foliate", "classify the foliation by sampling");
    add_common(c_fol);
    c_fol->add_option("--sink", sink_spec, "vertex:<id> | cell:<ids> | point:<id=p/q,...>")
        ->required();

    auto* c_green = app.add_subcommand(
        "green",
        "flow-induced orientation of the exchange graph; convention: a mutation is green "
        "(arc points out of the cluster) iff its c-vector w.r.t. the shifted base is "
        "nonnegative iff its b-coefficient is negative");
    add_common(c_green);
    c_green->add_option("--base", base_spec, "cell:<ids> of the base cluster (default: root)");

    auto* c_hom = app.add_subcommand("homology", "reduced Betti numbers of the complex");
    add_common(c_hom);
    bool with_torsion = false;
    c_hom->add_flag("--torsion", with_torsion, "also report torsion via Smith form");

    auto* c_poly = app.add_subcommand("polygons", "squares-and-pentagons H1 rank");
    add_common(c_poly);

    std::vector<std::string> which;
    auto* c_verify = app.add_subcommand("verify", "run structural checks");
    add_common(c_verify);
    c_verify->add_option("--which", which, "duality|green|homology|polygons|foliation")
        ->required();

    std::vector<const char*> argv;
    argv.push_back("cfk");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(c_enum)) {
            ComplexStore store = make_store(cfg, err);
            json j{{"variables", store.variable_count()},
                   {"clusters", store.cluster_count()},
                   {"exhausted", store.exhausted()}};
            write_output(cfg, j.dump(2), out);
            err << store.variable_count() << " variables, " << store.cluster_count()
                << " clusters, " << (store.exhausted() ? "exhausted" : "partial") << "\n";
            return store.exhausted() ? 0 : 2;
        }
        if (app.got_subcommand(c_complex)) {
            ComplexStore store = make_store(cfg, err);
            if (cfg.format == "dot") write_output(cfg, exchange_graph_dot(store), out);
            else write_output(cfg, complex_to_json(store).dump(2), out);
            return 0;
        }
        if (app.got_subcommand(c_fan)) {
            ComplexStore store = make_store(cfg, err);
            if (cfg.format == "svg") write_output(cfg, fan_svg(store), out);
            else write_output(cfg, fan_to_json(store).dump(2), out);
            return 0;
        }
        if (app.got_subcommand(c_trace)) {
            ComplexStore store = make_store(cfg, err);
            SinkSpec sink = make_sink(store, parse_weight_spec(store, sink_spec), sink_spec);
            Point start{parse_weight_spec(store, start_spec)};
            Sense sense = (sense_str == "up") ? Sense::Up : Sense::Down;
            LeafTrace t = trace(store, sink, start, sense, cfg.budget);
            if (cfg.format == "svg")
                write_output(cfg, complex_svg(store, {t}, &sink), out);
            else write_output(cfg, trace_to_json(store, sink, sense, t).dump(2), out);
            return 0;
        }
        if (app.got_subcommand(c_fol)) {
            ComplexStore store = make_store(cfg, err);
            SinkSpec sink = make_sink(store, parse_weight_spec(store, sink_spec), sink_spec);
            auto rep = classify_foliation(store, sink, cfg.samples, cfg.budget, cfg.seed);
            write_output(cfg, foliation_to_json(rep).dump(2), out);
            return 0;
        }
        if (app.got_subcommand(c_green)) {
            ComplexStore store = make_store(cfg, err);
            if (!is_acyclic_quiver(store.b0()))
                err << "warning: quiver has oriented cycles; the green theory assumes "
                       "Jacobi-finiteness\n";
            int base = store.root();
            if (!base_spec.empty()) {
                auto wts = parse_weight_spec(store, base_spec);
                std::vector<VarId> cell;
                for (const auto& [v, c] : wts) cell.push_back(v);
                auto ci = store.find_cluster(cell);
                if (!ci) throw std::invalid_argument("base is not an enumerated cluster");
                base = *ci;
            }
            if (cfg.format == "dot") {
                SinkSpec sink = make_sink(store, barycenter(store.cluster(base).vars).w);
                auto og = orient_from_flow(store, sink);
                write_output(cfg, oriented_graph_dot(store, og), out);
            } else {
                auto rep = verify_green(store, base);
                write_output(cfg, green_to_json(rep).dump(2), out);
                return rep.pass() ? 0 : 1;
            }
            return 0;
        }
        if (app.got_subcommand(c_hom)) {
            ComplexStore store = make_store(cfg, err);
            auto rep = betti(store, with_torsion);
            write_output(cfg, homology_to_json(rep).dump(2), out);
            return 0;
        }
        if (app.got_subcommand(c_poly)) {
            ComplexStore store = make_store(cfg, err);
            auto rep = polygon_h1(store);
            write_output(cfg, polygons_to_json(rep).dump(2), out);
            return 0;
        }
        if (app.got_subcommand(c_verify)) return cmd_verify(cfg, which, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

} // namespace cfk
