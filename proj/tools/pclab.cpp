#include <pclab/cfi/cfi.hpp>
#include <pclab/encoders/encoders.hpp>
#include <pclab/errors.hpp>
#include <pclab/games/threshold.hpp>
#include <pclab/harness/config.hpp>
#include <pclab/harness/experiments.hpp>
#include <pclab/harness/report.hpp>
#include <pclab/logic/formula.hpp>
#include <pclab/pc/saturate.hpp>
#include <pclab/resolution/engines.hpp>
#include <pclab/wl/wl.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using std::string;
using std::uint32_t;
using std::vector;
using namespace pclab;

namespace
{
    constexpr int exit_completed = 0;
    constexpr int exit_usage = 2;
    constexpr int exit_resource = 3;
    constexpr int exit_refuted = 10;
    constexpr int exit_not_refuted = 11;

    int log_level = 1;

    auto log(int level, const string & message) -> void
    {
        if (level <= log_level)
            std::cerr << "pclab: " << message << '\n';
    }

    auto emit(const json & j) -> void
    {
        std::cout << j.dump(2) << '\n';
    }

    auto verdict(bool refuted) -> int
    {
        return refuted ? exit_refuted : exit_not_refuted;
    }

    auto read_text(const string & path) -> string
    {
        if (path == "-") {
            std::stringstream ss;
            ss << std::cin.rdbuf();
            return ss.str();
        }
        std::ifstream in{ path };
        if (! in)
            throw UsageError("cannot open '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    auto load_cnf(const string & path) -> CnfFormula
    {
        if (path == "-")
            return read_dimacs(std::cin);
        return read_dimacs_file(path);
    }

    auto load_json(const string & path) -> json
    {
        try {
            return json::parse(read_text(path));
        }
        catch (const json::parse_error & e) {
            throw UsageError("'" + path + "' is not valid JSON: " + e.what());
        }
    }

    auto load_base(const string & name, const string & file) -> CfiBase
    {
        if (! file.empty()) {
            std::ifstream in{ file };
            if (! in)
                throw UsageError("cannot open '" + file + "'");
            return CfiBase::read_text(in, file);
        }
        return CfiBase::library(name);
    }

    auto deadline_after(double seconds) -> std::optional<std::chrono::steady_clock::time_point>
    {
        if (seconds <= 0)
            return std::nullopt;
        return std::chrono::steady_clock::now()
            + std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
    }

    auto dimacs_with_names(const CnfFormula & f, const vector<string> & names) -> string
    {
        string out;
        for (size_t i = 0; i < names.size(); ++i)
            out += "c " + std::to_string(i + 1) + " " + names[i] + "\n";
        return out + write_dimacs(f);
    }

    // Options of the selected subcommand that were not given on the command line take their
    // value from the config file, keyed by the long option name.
    auto apply_config(CLI::App * leaf, const KeyValueConfig & config) -> void
    {
        for (auto * opt : leaf->get_options()) {
            if (opt->count() > 0)
                continue;
            for (auto & name : opt->get_lnames()) {
                auto value = config.get(name);
                if (! value)
                    continue;
                log(2, "config: " + name + " = " + *value);
                opt->add_result(*value);
                opt->run_callback();
                break;
            }
        }
    }

    // The selected subcommand path with every option that ended up set, in declaration order.
    auto effective_command(CLI::App * leaf) -> string
    {
        vector<string> path;
        for (auto * app = leaf; app != nullptr && app->get_parent() != nullptr; app = app->get_parent())
            path.insert(path.begin(), app->get_name());
        vector<string> args{ "pclab" };
        args.insert(args.end(), path.begin(), path.end());
        for (auto * opt : leaf->get_options()) {
            if (opt->count() == 0 || opt->get_lnames().empty() || opt->get_lnames().front() == "help")
                continue;
            string name = "--" + opt->get_lnames().front();
            if (opt->get_expected_min() == 0)
                args.push_back(name);
            else
                for (auto & r : opt->results())
                    args.push_back(name + "=" + r);
        }
        for (auto * opt : leaf->get_options())
            if (opt->get_lnames().empty() && opt->count() > 0)
                for (auto & r : opt->results())
                    args.push_back(r);
        return quote_command_line(args);
    }

    auto saturate_json(const SaturateResult & r) -> json
    {
        return {
            { "refuted", r.refuted },
            { "rounds", r.stats.rounds },
            { "basis_dimension", r.stats.basis_dimension },
            { "live_monomials", r.stats.live_monomials },
            { "dead_generators", r.stats.dead_generators },
            { "dimension_per_round", r.stats.dimension_per_round },
            { "seconds", r.stats.seconds },
        };
    }

    auto parse_subdegree(const string & s) -> SubdegreeMethod
    {
        if (s == "auto")
            return SubdegreeMethod::automatic;
        if (s == "linear")
            return SubdegreeMethod::linear_system;
        if (s == "echelon")
            return SubdegreeMethod::echelon;
        throw UsageError("unknown subdegree method '" + s + "' (auto, linear, echelon)");
    }

    auto parse_constants(const vector<string> & items) -> std::map<string, uint32_t>
    {
        std::map<string, uint32_t> out;
        for (auto & item : items) {
            auto eq = item.find('=');
            if (eq == string::npos || eq == 0)
                throw UsageError("constant '" + item + "' is not name=element");
            try {
                out[item.substr(0, eq)] = static_cast<uint32_t>(std::stoul(item.substr(eq + 1)));
            }
            catch (const std::logic_error &) {
                throw UsageError("constant '" + item + "' has a non-numeric element");
            }
        }
        return out;
    }

    struct Budget
    {
        double cell_timeout = 300;
        std::size_t monomial_limit = 25'000'000;
        std::size_t tuple_limit = 30'000'000;
        unsigned jobs = 1;

        auto add_to(CLI::App * app) -> void
        {
            app->add_option("--cell-timeout", cell_timeout, "Wall-clock seconds per cell")->capture_default_str();
            app->add_option("--monomial-limit", monomial_limit, "Live monomial limit per saturation")->capture_default_str();
            app->add_option("--tuple-limit", tuple_limit, "WL tuple limit per graph")->capture_default_str();
            app->add_option("--jobs", jobs, "Worker threads for experiment cells")->capture_default_str();
        }

        auto cell_budget() const -> CellBudget
        {
            return CellBudget{ cell_timeout, monomial_limit, tuple_limit, jobs };
        }
    };

    auto run(int argc, char ** argv) -> int
    {
        CLI::App app{ "Proof-system laboratory: resolution, polynomial calculus, WL, CFI, games, CSP, LFP" };
        app.require_subcommand(1);
        string config_path, log_name = "info";
        app.add_option("--config", config_path, "key=value file supplying defaults for the subcommand's options");
        app.add_option("--log-level", log_name, "quiet, info or debug")->check(CLI::IsMember({ "quiet", "info", "debug" }));

        // encode
        auto * encode = app.add_subcommand("encode", "Write an encoding (DIMACS or PolySystem JSON) to stdout");
        encode->require_subcommand(1);
        string graph_a, graph_b, field_name = "Q";
        uint32_t s_vertex = 0, t_vertex = 0;
        int k = 3;
        bool colored = false, constant_on_mismatch = false, full_subsets = false;
        auto * enc_nonreach = encode->add_subcommand("nonreach", "Implication clauses of a digraph plus 1 -> X_s, X_t -> 0");
        enc_nonreach->add_option("graph", graph_a, "Graph file (text or JSON, relation E)")->required();
        enc_nonreach->add_option("--s", s_vertex)->required();
        enc_nonreach->add_option("--t", t_vertex)->required();
        auto * enc_iso_cnf = encode->add_subcommand("iso-cnf", "Isomorphism CNF");
        enc_iso_cnf->add_option("graph1", graph_a, "Graph file (text or JSON)")->required();
        enc_iso_cnf->add_option("graph2", graph_b, "Graph file (text or JSON)")->required();
        auto * enc_iso_poly = encode->add_subcommand("iso-poly", "Isomorphism polynomial system");
        enc_iso_poly->add_option("graph1", graph_a, "Graph file (text or JSON)")->required();
        enc_iso_poly->add_option("graph2", graph_b, "Graph file (text or JSON)")->required();
        enc_iso_poly->add_option("--field", field_name)->capture_default_str();
        enc_iso_poly->add_flag("--colored", colored, "Variables only within matching colour classes");
        enc_iso_poly->add_flag("--constant-on-mismatch", constant_on_mismatch, "Emit {1} when the colour classes differ");
        auto * enc_kcons = encode->add_subcommand("kconsistency", "k-consistency CNF of a CSP instance");
        enc_kcons->add_option("instance", graph_a, "Structure JSON")->required();
        enc_kcons->add_option("template", graph_b, "Structure JSON")->required();
        enc_kcons->add_option("--k", k)->capture_default_str();
        enc_kcons->add_flag("--full-subsets", full_subsets);

        // res
        auto * res = app.add_subcommand("res", "Resolution engines on a DIMACS file");
        res->require_subcommand(1);
        string cnf_path;
        int width = 2;
        bool premise_wide = false;
        double timeout = 0;
        std::size_t clause_limit = 20'000'000;
        auto * res_horn = res->add_subcommand("horn", "Unit propagation (Horn resolution)");
        res_horn->add_option("file", cnf_path, "DIMACS file or -")->required();
        auto * res_kres = res->add_subcommand("kres", "Width-bounded resolution saturation");
        res_kres->add_option("file", cnf_path, "DIMACS file or -")->required();
        res_kres->add_option("--width", width)->required();
        res_kres->add_flag("--premise-wide", premise_wide, "Use clauses wider than the bound as premises");
        res_kres->add_option("--timeout", timeout, "Seconds (0 = none)");
        res_kres->add_option("--clause-limit", clause_limit)->capture_default_str();

        // pc / min-degree
        string poly_path, engine_name = "monpc", subdegree_name = "auto";
        string field_override;
        int degree = 2, k_max = 6;
        std::size_t monomial_limit = 60'000'000;
        auto * pc = app.add_subcommand("pc", "Saturate a polynomial system at a degree bound");
        pc->add_option("file", poly_path, "PolySystem JSON or -")->required();
        pc->add_option("--engine", engine_name)->check(CLI::IsMember({ "monpc", "pc" }))->capture_default_str();
        pc->add_option("--degree", degree)->required();
        pc->add_option("--field", field_override, "Reinterpret the system over Q or Fp:p");
        pc->add_option("--subdegree", subdegree_name, "auto, linear or echelon (pc engine)")->capture_default_str();
        pc->add_option("--timeout", timeout, "Seconds (0 = none)");
        pc->add_option("--monomial-limit", monomial_limit)->capture_default_str();
        auto * min_degree = app.add_subcommand("min-degree", "Smallest refuting degree bound");
        min_degree->add_option("file", poly_path, "PolySystem JSON or -")->required();
        min_degree->add_option("--engine", engine_name)->check(CLI::IsMember({ "monpc", "pc" }))->capture_default_str();
        min_degree->add_option("--k-max", k_max)->capture_default_str();
        min_degree->add_option("--field", field_override);
        min_degree->add_option("--timeout", timeout, "Seconds for the whole search (0 = none)");
        min_degree->add_option("--monomial-limit", monomial_limit)->capture_default_str();

        // wl
        int dim_max = 3;
        auto * wl = app.add_subcommand("wl", "Weisfeiler-Leman sweep on two graphs");
        wl->add_option("graph1", graph_a, "Graph file (text or JSON)")->required();
        wl->add_option("graph2", graph_b, "Graph file (text or JSON)")->required();
        wl->add_option("--dim-max", dim_max)->capture_default_str();
        wl->add_option("--timeout", timeout, "Seconds (0 = none)");

        // cfi
        auto * cfi = app.add_subcommand("cfi", "CFI structures");
        cfi->require_subcommand(1);
        string base_name = "k4", base_file, lambda_text, format = "structure";
        uint32_t p = 2;
        bool twisted = false;
        auto add_base = [&] (CLI::App * sub) {
            sub->add_option("--base", base_name, "k4, prism, cube or petersen")->capture_default_str();
            sub->add_option("--base-file", base_file, "Base graph text file (overrides --base)");
            sub->add_option("--p", p)->capture_default_str();
        };
        auto * cfi_gen = cfi->add_subcommand("gen", "One CFI structure");
        add_base(cfi_gen);
        cfi_gen->add_option("--lambda", lambda_text, "Comma-separated load per base vertex (default all zero)");
        cfi_gen->add_flag("--twisted", twisted, "Load 1 at vertex 0");
        cfi_gen->add_option("--format", format, "structure or graph")->check(CLI::IsMember({ "structure", "graph" }))->capture_default_str();
        auto * cfi_pair = cfi->add_subcommand("pair", "The twisted pair");
        add_base(cfi_pair);
        cfi_pair->add_option("--format", format, "structure or graph")->check(CLI::IsMember({ "structure", "graph" }))->capture_default_str();
        auto * cfi_aut = cfi->add_subcommand("aut", "Solution space of the automorphism system");
        add_base(cfi_aut);

        // game
        string game_path;
        auto * game = app.add_subcommand("game", "Acyclic threshold games");
        game->require_subcommand(1);
        auto * game_solve = game->add_subcommand("solve", "Winning regions");
        game_solve->add_option("file", game_path, "Game JSON or -")->required();
        auto * game_encode = game->add_subcommand("encode", "Polynomial axioms P(G)");
        game_encode->add_option("file", game_path, "Game JSON or -")->required();
        game_encode->add_option("--field", field_name)->capture_default_str();

        // csp
        auto * csp = app.add_subcommand("csp", "k-consistency");
        csp->require_subcommand(1);
        auto * csp_check = csp->add_subcommand("check", "Run the shrinking iteration");
        csp_check->add_option("instance", graph_a, "Structure JSON")->required();
        csp_check->add_option("template", graph_b, "Structure JSON")->required();
        csp_check->add_option("--k", k)->capture_default_str();
        csp_check->add_flag("--full-subsets", full_subsets);
        auto * csp_encode = csp->add_subcommand("encode", "The k-consistency CNF");
        csp_encode->add_option("instance", graph_a, "Structure JSON")->required();
        csp_encode->add_option("template", graph_b, "Structure JSON")->required();
        csp_encode->add_option("--k", k)->capture_default_str();
        csp_encode->add_flag("--full-subsets", full_subsets);

        // lfp
        string structure_path, formula_path;
        vector<string> constants;
        auto * lfp = app.add_subcommand("lfp", "posLFP sentences");
        lfp->require_subcommand(1);
        auto add_lfp = [&] (CLI::App * sub) {
            sub->add_option("--structure", structure_path, "Structure JSON")->required();
            sub->add_option("--formula", formula_path, "S-expression file or -")->required();
            sub->add_option("--const", constants, "name=element");
        };
        auto * lfp_eval = lfp->add_subcommand("eval", "Evaluate by stage iteration");
        add_lfp(lfp_eval);
        auto * lfp_encode = lfp->add_subcommand("encode", "Horn CNF whose refutability is the truth value");
        add_lfp(lfp_encode);

        // experiment
        auto * experiment = app.add_subcommand("experiment", "Experiment drivers; reports go to stdout and --out");
        experiment->require_subcommand(1);
        string out_prefix, bases_text = "k4,prism,cube,petersen", ks_text = "3";
        int wl_dim_max = 4;
        bool control = false, no_cfi = false;
        uint32_t min_cycle = 3, max_cycle = 8, template_size = 2;
        Budget budget;
        auto * exp_growth = experiment->add_subcommand("degree-growth", "Minimal MON-PC degree and WL dimension on CFI twisted pairs");
        exp_growth->add_option("--bases", bases_text)->capture_default_str();
        exp_growth->add_option("--p", p)->capture_default_str();
        exp_growth->add_option("--field", field_name)->capture_default_str();
        exp_growth->add_option("--k-max", k_max)->capture_default_str();
        exp_growth->add_option("--wl-dim-max", wl_dim_max)->capture_default_str();
        exp_growth->add_flag("--control", control, "Also saturate each structure against itself");
        exp_growth->add_option("--out", out_prefix, "Write <prefix>.csv and <prefix>.json");
        budget.add_to(exp_growth);
        auto * exp_calibrate = experiment->add_subcommand("wl-calibrate", "Offset between minimal degree and WL dimension");
        exp_calibrate->add_option("--k-max", k_max)->capture_default_str();
        exp_calibrate->add_option("--wl-dim-max", wl_dim_max)->capture_default_str();
        exp_calibrate->add_option("--field", field_name)->capture_default_str();
        exp_calibrate->add_flag("--no-cfi", no_cfi, "Leave out the CFI pairs");
        exp_calibrate->add_option("--out", out_prefix);
        budget.add_to(exp_calibrate);
        auto * exp_csp = experiment->add_subcommand("csp-sweep", "k-consistency, its CNF and brute force on cycles");
        exp_csp->add_option("--min-cycle", min_cycle)->capture_default_str();
        exp_csp->add_option("--max-cycle", max_cycle)->capture_default_str();
        exp_csp->add_option("--template-size", template_size)->capture_default_str();
        exp_csp->add_option("--k", ks_text, "Comma-separated k values")->capture_default_str();
        exp_csp->add_flag("--full-subsets", full_subsets);
        exp_csp->add_option("--out", out_prefix);

        try {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp & e) {
            return app.exit(e);
        }
        catch (const CLI::CallForAllHelp & e) {
            return app.exit(e);
        }
        catch (const CLI::ParseError & e) {
            app.exit(e, std::cerr, std::cerr);
            std::cerr << app.help() << '\n';
            return exit_usage;
        }

        if (const char * env = std::getenv("PCLAB_LOG"); env && log_name == "info")
            log_name = env;
        log_level = log_name == "quiet" ? 0 : log_name == "debug" ? 2 : 1;

        CLI::App * leaf = &app;
        while (! leaf->get_subcommands().empty())
            leaf = leaf->get_subcommands().front();
        if (! config_path.empty())
            apply_config(leaf, KeyValueConfig::read(config_path));
        string command = effective_command(leaf);
        log(2, "command: " + command);

        auto field = [&] { return Field::parse(field_name); };
        auto load_system = [&] {
            auto sys = poly_system_from_json(load_json(poly_path));
            if (! field_override.empty())
                sys = convert_field(sys, Field::parse(field_override));
            return sys;
        };

        if (enc_nonreach->parsed()) {
            std::cout << write_dimacs(encode_nonreach(read_graph_file(graph_a), s_vertex, t_vertex));
            return exit_completed;
        }
        if (enc_iso_cnf->parsed()) {
            std::cout << write_dimacs(encode_iso_cnf(read_graph_file(graph_a), read_graph_file(graph_b)));
            return exit_completed;
        }
        if (enc_iso_poly->parsed()) {
            auto g = read_graph_file(graph_a), h = read_graph_file(graph_b);
            IsoPolyOptions opts;
            opts.constant_on_mismatch = constant_on_mismatch;
            emit(to_json(colored ? encode_iso_poly_colored(g, h, field(), opts) : encode_iso_poly(g, h, field())));
            return exit_completed;
        }
        if (enc_kcons->parsed() || csp_encode->parsed()) {
            KConsistencyOptions opts;
            opts.full_subsets = full_subsets;
            std::cout << write_dimacs(encode_kconsistency_cnf(rel_structure_from_json(load_json(graph_a)),
                        rel_structure_from_json(load_json(graph_b)), k, opts));
            return exit_completed;
        }
        if (res_horn->parsed()) {
            auto r = horn_refute(load_cnf(cnf_path));
            emit({ { "engine", "horn" }, { "refuted", r.refuted }, { "derived_units", r.derived_units } });
            return verdict(r.refuted);
        }
        if (res_kres->parsed()) {
            KresOptions opts;
            opts.premise_wide = premise_wide;
            opts.clause_limit = clause_limit;
            opts.deadline = deadline_after(timeout);
            auto r = kres_saturate(load_cnf(cnf_path), width, opts);
            emit({ { "engine", "kres" }, { "width", width }, { "refuted", r.refuted }, { "derived", r.derived.size() } });
            return verdict(r.refuted);
        }
        if (pc->parsed()) {
            auto sys = load_system();
            SaturateOptions opts;
            opts.subdegree = parse_subdegree(subdegree_name);
            opts.deadline = deadline_after(timeout);
            opts.monomial_limit = monomial_limit;
            auto r = saturate(parse_engine(engine_name), sys, degree, opts);
            json j = saturate_json(r);
            j["engine"] = engine_name;
            j["degree"] = degree;
            j["field"] = sys.field.to_string();
            emit(j);
            return verdict(r.refuted);
        }
        if (min_degree->parsed()) {
            auto sys = load_system();
            SaturateOptions opts;
            opts.deadline = deadline_after(timeout);
            opts.monomial_limit = monomial_limit;
            auto d = min_refutation_degree(sys, parse_engine(engine_name), k_max, opts);
            emit({ { "engine", engine_name }, { "field", sys.field.to_string() }, { "k_max", k_max },
                    { "degree", d ? json(*d) : json(nullptr) } });
            return verdict(d.has_value());
        }
        if (wl->parsed()) {
            WlOptions opts;
            opts.deadline = deadline_after(timeout);
            auto d = wl_sweep(read_graph_file(graph_a), read_graph_file(graph_b), dim_max, opts);
            emit({ { "dim_max", dim_max }, { "distinguished", d.has_value() }, { "dim", d ? json(*d) : json(nullptr) } });
            return verdict(d.has_value());
        }
        if (cfi_gen->parsed()) {
            auto base = load_base(base_name, base_file);
            vector<uint32_t> lambda(base.num_vertices(), 0);
            if (! lambda_text.empty()) {
                auto values = split_int_list(lambda_text);
                if (values.size() != lambda.size())
                    throw UsageError("--lambda needs one value per base vertex");
                for (size_t i = 0; i < values.size(); ++i) {
                    if (values[i] < 0)
                        throw UsageError("--lambda values must be non-negative");
                    lambda[i] = static_cast<uint32_t>(values[i]);
                }
            }
            if (twisted)
                lambda[0] = (lambda[0] + 1) % p;
            auto s = build_cfi(base, p, lambda);
            emit(format == "graph" ? to_json(to_graph(s)) : to_json(s));
            return exit_completed;
        }
        if (cfi_pair->parsed()) {
            auto [a, b] = twisted_pair(load_base(base_name, base_file), p);
            if (format == "graph")
                emit({ { "g", to_json(to_graph(a)) }, { "h", to_json(to_graph(b)) } });
            else
                emit({ { "a", to_json(a) }, { "b", to_json(b) } });
            return exit_completed;
        }
        if (cfi_aut->parsed()) {
            auto aut = automorphism_space(load_base(base_name, base_file), p);
            emit({ { "p", p }, { "dimension", aut.dimension() }, { "basis", aut.basis } });
            return exit_completed;
        }
        if (game_solve->parsed()) {
            auto g = threshold_game_from_json(load_json(game_path));
            auto sol = solve_threshold_game(g);
            emit({ { "w0", sol.w0 }, { "w1", sol.w1 }, { "ws", sol.ws }, { "start_winner", g.size() ? json(sol.winner[g.start()]) : json(nullptr) } });
            return exit_completed;
        }
        if (game_encode->parsed()) {
            auto ax = encode_threshold_axioms(threshold_game_from_json(load_json(game_path)), field());
            emit(to_json(ax.system));
            return exit_completed;
        }
        if (csp_check->parsed()) {
            KConsistencyOptions opts;
            opts.full_subsets = full_subsets;
            auto st = k_consistency_state(rel_structure_from_json(load_json(graph_a)), rel_structure_from_json(load_json(graph_b)), k, opts);
            std::size_t alive = std::count(st.alive.begin(), st.alive.end(), std::uint8_t{ 1 });
            emit({ { "k", k }, { "consistent", st.consistent() }, { "partial_homomorphisms", st.maps.size() },
                    { "alive", alive }, { "iterations", st.iterations } });
            return verdict(! st.consistent());
        }
        if (lfp_eval->parsed() || lfp_encode->parsed()) {
            auto a = rel_structure_from_json(load_json(structure_path));
            auto phi = LfpFormula::parse(read_text(formula_path), parse_constants(constants));
            if (lfp_eval->parsed()) {
                emit({ { "formula", phi.to_string() }, { "value", eval_poslfp(a, phi) }, { "efp0", phi.is_efp0() } });
                return exit_completed;
            }
            auto enc = horn_encode(a, phi);
            std::cout << dimacs_with_names(enc.cnf, enc.names);
            return exit_completed;
        }
        if (exp_growth->parsed()) {
            DegreeGrowthOptions opts;
            opts.bases = split_list(bases_text);
            opts.p = p;
            opts.field = field();
            opts.k_max = k_max;
            opts.wl_dim_max = wl_dim_max;
            opts.control = control;
            opts.budget = budget.cell_budget();
            opts.command = command;
            log(1, "degree-growth over " + bases_text);
            auto report = degree_growth_report(experiment_degree_growth(opts));
            if (! out_prefix.empty())
                report.save(out_prefix);
            emit(report.to_json());
            return exit_completed;
        }
        if (exp_calibrate->parsed()) {
            CalibrationOptions opts;
            opts.k_max = k_max;
            opts.wl_dim_max = wl_dim_max;
            opts.field = field();
            opts.budget = budget.cell_budget();
            opts.command = command;
            auto rep = experiment_wl_calibrate(calibration_corpus(! no_cfi), opts);
            auto report = calibration_report(rep);
            if (! out_prefix.empty())
                report.save(out_prefix);
            emit({ { "offset", rep.offset ? json(*rep.offset) : json(nullptr) }, { "uniform", rep.uniform },
                    { "skipped", rep.skipped }, { "rows", report.to_json() } });
            return exit_completed;
        }
        if (exp_csp->parsed()) {
            CspSweepOptions opts;
            opts.min_cycle = min_cycle;
            opts.max_cycle = max_cycle;
            opts.template_size = template_size;
            opts.ks = split_int_list(ks_text);
            opts.full_subsets = full_subsets;
            opts.command = command;
            auto report = csp_sweep_report(experiment_csp_sweep(opts));
            if (! out_prefix.empty())
                report.save(out_prefix);
            emit(report.to_json());
            return exit_completed;
        }
        std::cerr << app.help() << '\n';
        return exit_usage;
    }
}

auto main(int argc, char ** argv) -> int
{
    try {
        return run(argc, argv);
    }
    catch (const UsageError & e) {
        std::cerr << "pclab: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const Timeout &) {
        emit({ { "status", "timeout" } });
        return exit_resource;
    }
    catch (const ResourceLimit & e) {
        emit({ { "status", "limit" }, { "message", e.what() } });
        return exit_resource;
    }
    catch (const std::bad_alloc &) {
        emit({ { "status", "limit" }, { "message", "out of memory" } });
        return exit_resource;
    }
}
