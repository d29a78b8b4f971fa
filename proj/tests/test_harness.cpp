#include <pclab/cfi/cfi.hpp>
#include <pclab/errors.hpp>
#include <pclab/harness/config.hpp>
#include <pclab/harness/experiments.hpp>
#include <pclab/harness/report.hpp>
#include <pclab/pc/poly_system.hpp>

#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace pclab;

namespace
{
    auto config(const std::string & text) -> KeyValueConfig
    {
        std::istringstream in{ text };
        return KeyValueConfig::parse(in, "test.cfg");
    }

    auto scratch(const std::string & name) -> std::string
    {
        auto dir = std::filesystem::temp_directory_path() / "pclab_test_harness";
        std::filesystem::create_directories(dir);
        return (dir / name).string();
    }

    auto write_file(const std::string & path, const std::string & text) -> void
    {
        std::ofstream{ path } << text;
    }

    auto run_cli(const std::string & args) -> int
    {
        auto command = std::string{ PCLAB_CLI } + " " + args + " > /dev/null 2>&1";
        int status = std::system(command.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
}

TEST(config, comments_blanks_and_types)
{
    auto c = config("# header\n\nk_max = 5 ; trailing\nfield=Fp:3\nflag = yes\nratio = 0.25\n");
    EXPECT_EQ(c.get_int("k_max"), 5);
    EXPECT_EQ(c.get("field"), "Fp:3");
    EXPECT_EQ(c.get_bool("flag"), true);
    EXPECT_DOUBLE_EQ(*c.get_double("ratio"), 0.25);
    EXPECT_FALSE(c.has("missing"));
    EXPECT_EQ(c.get_int("missing"), std::nullopt);
}

TEST(config, malformed_input)
{
    EXPECT_THROW(config("no equals sign\n"), UsageError);
    EXPECT_THROW(config(" = 3\n"), UsageError);
    EXPECT_THROW(config("k = five\n").get_int("k"), UsageError);
    EXPECT_THROW(config("b = maybe\n").get_bool("b"), UsageError);
    EXPECT_THROW(KeyValueConfig::read("/nonexistent/pclab.cfg"), UsageError);
}

TEST(config, lists)
{
    EXPECT_EQ(split_list("k4, prism,,cube "), (std::vector<std::string>{ "k4", "prism", "cube" }));
    EXPECT_TRUE(split_list("").empty());
    EXPECT_EQ(split_int_list("3,4, 5"), (std::vector<int>{ 3, 4, 5 }));
    EXPECT_THROW(split_int_list("3,x"), UsageError);
}

TEST(config, quote_command_line)
{
    EXPECT_EQ(quote_command_line({ "pclab", "wl", "--dim-max", "3" }), "pclab wl --dim-max 3");
    EXPECT_EQ(quote_command_line({ "a b", "it's", "" }), "'a b' 'it'\\''s' ''");
}

TEST(report, csv_escaping)
{
    EXPECT_EQ(csv_escape("plain"), "plain");
    EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(report, csv_rendering)
{
    Report r;
    r.columns = { "name", "value", "flag", "list", "missing", "seconds" };
    r.rows.push_back({ { "name", "x,y" }, { "value", 3 }, { "flag", true }, { "list", { "2:5", "3:9" } },
        { "missing", nullptr }, { "seconds", 0.5 } });
    std::ostringstream out;
    r.write_csv(out);
    EXPECT_EQ(out.str(), "name,value,flag,list,missing,seconds\n\"x,y\",3,true,2:5;3:9,,0.500\n");
}

TEST(report, save_writes_both_formats)
{
    Report r;
    r.columns = { "a" };
    r.rows.push_back({ { "a", 1 } });
    auto prefix = scratch("saved");
    r.save(prefix);
    EXPECT_TRUE(std::filesystem::exists(prefix + ".csv"));
    std::ifstream js{ prefix + ".json" };
    auto j = nlohmann::json::parse(js);
    EXPECT_EQ(j.dump(), r.to_json().dump());
}

TEST(run_cells, every_slot_once)
{
    std::vector<std::atomic<int>> hits(37);
    run_cells(hits.size(), 3, [&] (std::size_t i) { ++hits[i]; });
    for (auto & h : hits)
        EXPECT_EQ(h.load(), 1);
}

TEST(experiments, csp_sweep_rows)
{
    CspSweepOptions o;
    o.min_cycle = 3;
    o.max_cycle = 5;
    o.ks = { 2, 3 };
    auto rows = experiment_csp_sweep(o);
    ASSERT_EQ(rows.size(), 6u);
    for (auto & row : rows) {
        bool odd = row.instance.back() != '4';
        EXPECT_EQ(row.homomorphism, ! odd) << row.instance;
        EXPECT_EQ(row.cnf_refuted, ! row.direct) << row.instance;
        if (row.k == 3)
            EXPECT_EQ(row.direct, ! odd) << row.instance;
    }
    auto report = csp_sweep_report(rows);
    EXPECT_EQ(report.rows.size(), rows.size());
}

TEST(experiments, reports_are_deterministic_apart_from_timings)
{
    auto strip = [] (Report r) {
        for (auto & row : r.rows)
            for (auto & [key, value] : row.items())
                if (key.ends_with("seconds"))
                    value = nullptr;
        return r.to_json().dump();
    };
    CspSweepOptions o;
    o.max_cycle = 6;
    EXPECT_EQ(strip(csp_sweep_report(experiment_csp_sweep(o))), strip(csp_sweep_report(experiment_csp_sweep(o))));

    CalibrationOptions c;
    c.k_max = 3;
    c.wl_dim_max = 3;
    auto pairs = calibration_corpus(false);
    pairs.resize(std::min<std::size_t>(pairs.size(), 6));
    EXPECT_EQ(strip(calibration_report(experiment_wl_calibrate(pairs, c))),
        strip(calibration_report(experiment_wl_calibrate(pairs, c))));
}

TEST(experiments, calibration_corpus_shape)
{
    auto small = calibration_corpus(false);
    auto full = calibration_corpus(true);
    EXPECT_GT(full.size(), small.size());
    std::set<std::string> names;
    for (auto & pair : full) {
        EXPECT_TRUE(names.insert(pair.name).second) << pair.name;
        EXPECT_EQ(pair.g.size(), pair.h.size()) << pair.name;
    }
}

TEST(experiments, searches_report_limits)
{
    auto [a, b] = twisted_pair(CfiBase::library("k4"), 2);
    auto g = to_graph(a), h = to_graph(b);
    CellBudget tight;
    tight.monomial_limit = 1000;
    tight.tuple_limit = 1000;
    auto pc = search_refutation_degree(g, h, Field::rationals(), 4, tight);
    EXPECT_EQ(pc.status, CellStatus::limit);
    EXPECT_FALSE(pc.degree.has_value());
    auto wl = search_wl_dimension(g, h, 3, tight);
    EXPECT_EQ(wl.status, CellStatus::limit);
    EXPECT_EQ(cell_status_name(CellStatus::timeout), "timeout");
}

TEST(cli, exit_codes)
{
    auto poly = scratch("x_and_not_x.json");
    write_file(poly, R"({"field": {"kind": "Q"}, "num_vars": 1, "polys": [[{"coef": 1, "mono": [1]}], [{"coef": 1, "mono": []}, {"coef": "-1", "mono": [1]}]]})");
    auto graph = scratch("c4.txt");
    write_file(graph, "4 4\n0 1\n1 2\n2 3\n3 0\n");

    EXPECT_EQ(run_cli("pc --engine monpc --degree 2 " + poly), 10);
    EXPECT_EQ(run_cli("wl --dim-max 3 " + graph + " " + graph), 11);
    EXPECT_EQ(run_cli("no-such-command"), 2);
    EXPECT_EQ(run_cli("pc --degree 2 /nonexistent.json"), 2);
}
