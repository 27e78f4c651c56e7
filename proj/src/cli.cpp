#include "gridlab/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridlab/contribution.hpp"
#include "gridlab/criteria.hpp"
#include "gridlab/enumeration.hpp"
#include "gridlab/errors.hpp"
#include "gridlab/grid_graph.hpp"
#include "gridlab/isomorphism.hpp"
#include "gridlab/linalg.hpp"

namespace gridlab {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

GridLabelledGraph load_graph(const std::string& path) {
    return graph_from_json(read_file(path));
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_edges(const GridLabelledGraph& g) {
    if (g.edges.empty()) return "(none)";
    std::string out;
    for (const Edge& e : g.edges) {
        if (!out.empty()) out += ' ';
        out += "{(" + std::to_string(e.u.row) + "," + std::to_string(e.u.col) + "),(" +
               std::to_string(e.v.row) + "," + std::to_string(e.v.col) + ")}";
    }
    return out;
}

std::string fmt_perm(const std::vector<int>& p) {
    std::string out = "[";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(p[i]);
    }
    return out + "]";
}

nlohmann::ordered_json matrix_json(const DenseMatrix& m) {
    nlohmann::ordered_json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (int r = 0; r < m.rows; ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
        entries.push_back(std::move(row));
    }
    j["entries"] = std::move(entries);
    return j;
}

// Budget resolution order: --budget flag, then GRIDLAB_BUDGET, then default.
long long resolve_budget(const CLI::Option* flag, long long flag_value) {
    if (flag != nullptr && flag->count() > 0) return flag_value;
    if (const char* env = std::getenv("GRIDLAB_BUDGET")) {
        try {
            return std::stoll(env);
        } catch (const std::exception&) {
            throw parse_error("GRIDLAB_BUDGET is not an integer: " + std::string(env));
        }
    }
    return kDefaultBudget;
}

struct VerbResult {
    int exit_code = 0;
};

int do_analyze(const std::string& path, const std::string& format) {
    GridLabelledGraph g = load_graph(path);
    SeparabilityVerdict v = separability_verdict(g);
    if (format == "json") {
        std::cout << verdict_to_json(v) << "\n";
    } else {
        std::cout << "status: " << status_name(v.status) << "\n";
        std::cout << "certificate: " << certificate_name(v.certificate) << "\n";
        if (v.min_ppt_eig) std::cout << "min_ppt_eig: " << fmt_double(*v.min_ppt_eig) << "\n";
        if (v.realignment_norm)
            std::cout << "realignment_norm: " << fmt_double(*v.realignment_norm) << "\n";
    }
    return v.status == VerdictStatus::Unknown ? 2 : 0;
}

int do_export(const std::string& path, const std::string& what, bool exact,
              const std::string& format) {
    GridLabelledGraph g = load_graph(path);
    long long two_m = 2 * static_cast<long long>(g.edges.size());

    std::vector<std::pair<DenseMatrix, long long>> matrices;  // matrix, exact denominator
    if (what == "laplacian") {
        matrices.emplace_back(laplacian(g), 1);
    } else if (what == "density") {
        matrices.emplace_back(density(g).matrix, two_m);
    } else if (what == "ptranspose") {
        matrices.emplace_back(partial_transpose_matrix(density(g)), two_m);
    } else if (what == "realigned") {
        matrices.emplace_back(realign(density(g).matrix, g.cols), two_m);
    } else {
        StructureMatrices sm = structure_matrices(g);
        matrices.emplace_back(std::move(sm.degree_structure), 1);
        matrices.emplace_back(std::move(sm.adjacency_structure), 1);
    }

    if (format == "json") {
        if (what == "structure") {
            nlohmann::ordered_json j;
            j["degreeStructure"] = matrix_json(matrices[0].first);
            j["adjacencyStructure"] = matrix_json(matrices[1].first);
            std::cout << j.dump() << "\n";
        } else {
            std::cout << matrix_json(matrices[0].first).dump() << "\n";
        }
        return 0;
    }
    for (size_t i = 0; i < matrices.size(); ++i) {
        if (i) std::cout << "\n";
        std::cout << (exact ? matrix_to_text_exact(matrices[i].first, matrices[i].second)
                            : matrix_to_text(matrices[i].first));
    }
    return 0;
}

int do_enumerate(int rows, int cols, int k, const EnumerateOptions& opt,
                 const std::string& format) {
    std::vector<GridLabelledGraph> graphs = enumerate_dc(rows, cols, k, opt);
    for (const GridLabelledGraph& g : graphs) {
        if (format == "json")
            std::cout << graph_to_json(g) << "\n";
        else
            std::cout << g.rows << " " << g.cols << " " << fmt_edges(g) << "\n";
    }
    return 0;
}

int do_count(int rows, int cols, int k, bool pk, long long budget, const std::string& format) {
    CountReport r = pk ? count_pk(rows, cols, k, budget) : count_dc_diagonal(rows, cols, k, budget);
    if (format == "json") {
        std::cout << count_report_to_json(r) << "\n";
        return 0;
    }
    auto opt_str = [](const std::optional<long long>& v) {
        return v ? std::to_string(*v) : std::string("n/a");
    };
    std::cout << "rows: " << r.rows << "\n";
    std::cout << "cols: " << r.cols << "\n";
    std::cout << "edges: " << r.edges << "\n";
    std::cout << "raw: " << opt_str(r.raw_count) << "\n";
    std::cout << "orbits: " << opt_str(r.orbit_count) << "\n";
    std::cout << "formula: " << opt_str(r.formula_value) << "\n";
    std::cout << "agree: " << (r.agree ? "yes" : "no") << "\n";
    return 0;
}

int do_iso(const std::string& path1, const std::string& path2, bool second_order,
           const std::string& format) {
    GridLabelledGraph g = load_graph(path1);
    GridLabelledGraph h = load_graph(path2);
    if (second_order) {
        bool iso = second_order_iso(g, h);
        if (format == "json") {
            nlohmann::ordered_json j;
            j["isomorphic"] = iso;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << (iso ? "second-order locally isomorphic"
                              : "not second-order locally isomorphic")
                      << "\n";
        }
        return 0;
    }
    std::optional<LocalIso> witness = local_isomorphism(g, h);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["isomorphic"] = witness.has_value();
        if (witness) {
            j["rows"] = witness->row_perm;
            j["cols"] = witness->col_perm;
        }
        std::cout << j.dump() << "\n";
    } else if (witness) {
        std::cout << "rows: " << fmt_perm(witness->row_perm) << " cols: "
                  << fmt_perm(witness->col_perm) << "\n";
    } else {
        std::cout << "not locally isomorphic\n";
    }
    return 0;
}

int do_game_solve(const std::string& path, const std::string& format) {
    ContributionTable t = table_from_text(read_file(path));
    std::optional<std::vector<GameMove>> moves = clearability(t);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["clearable"] = moves.has_value();
        if (moves) {
            nlohmann::ordered_json list = nlohmann::ordered_json::array();
            for (const GameMove& mv : *moves) {
                nlohmann::ordered_json m;
                m["kind"] = mv.kind == MoveKind::Cross ? "cross" : "lasso";
                m["r1"] = mv.r1;
                m["c1"] = mv.c1;
                m["r2"] = mv.r2;
                m["c2"] = mv.c2;
                list.push_back(std::move(m));
            }
            j["moves"] = std::move(list);
        }
        std::cout << j.dump() << "\n";
        return 0;
    }
    if (!moves) {
        std::cout << "UNCLEARABLE\n";
        return 0;
    }
    for (const GameMove& mv : *moves)
        std::cout << (mv.kind == MoveKind::Cross ? "CROSS" : "LASSO") << " " << mv.r1 << " "
                  << mv.c1 << " " << mv.r2 << " " << mv.c2 << "\n";
    return 0;
}

int do_decompose(const std::string& path, const std::string& format) {
    GridLabelledGraph g = load_graph(path);
    HvdParts parts = hvd_decomposition(g);
    bool row_strat = is_stratified(g, Axis::Row);
    bool col_strat = is_stratified(g, Axis::Column);
    std::optional<std::vector<BlockPlacement>> blocks =
        building_block_decomposition(parts.diagonal);

    if (format == "json") {
        nlohmann::ordered_json j;
        j["horizontal"] = nlohmann::ordered_json::parse(graph_to_json(parts.horizontal));
        j["vertical"] = nlohmann::ordered_json::parse(graph_to_json(parts.vertical));
        j["diagonal"] = nlohmann::ordered_json::parse(graph_to_json(parts.diagonal));
        auto strata_json = [&](Axis axis) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const GridLabelledGraph& s : strata_decomposition(g, axis))
                arr.push_back(nlohmann::ordered_json::parse(graph_to_json(s)));
            return arr;
        };
        j["rowStrata"] = row_strat ? strata_json(Axis::Row) : nlohmann::ordered_json(nullptr);
        j["columnStrata"] =
            col_strat ? strata_json(Axis::Column) : nlohmann::ordered_json(nullptr);
        if (blocks) {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const BlockPlacement& p : *blocks) {
                nlohmann::ordered_json item;
                item["block"] = building_block_name(p.id);
                item["part"] = nlohmann::ordered_json::parse(graph_to_json(p.part));
                arr.push_back(std::move(item));
            }
            j["blocks"] = std::move(arr);
        } else {
            j["blocks"] = nullptr;
        }
        std::cout << j.dump() << "\n";
        return 0;
    }

    std::cout << "horizontal: " << fmt_edges(parts.horizontal) << "\n";
    std::cout << "vertical: " << fmt_edges(parts.vertical) << "\n";
    std::cout << "diagonal: " << fmt_edges(parts.diagonal) << "\n";
    auto print_strata = [&](const char* label, Axis axis) {
        std::vector<GridLabelledGraph> strata = strata_decomposition(g, axis);
        std::cout << label << ":";
        for (size_t i = 0; i < strata.size(); ++i)
            std::cout << (i ? " | " : " ") << i + 1 << ": " << fmt_edges(strata[i]);
        std::cout << "\n";
    };
    if (row_strat) print_strata("row strata", Axis::Row);
    if (col_strat) print_strata("column strata", Axis::Column);
    if (blocks) {
        std::cout << "blocks:";
        for (const BlockPlacement& p : *blocks)
            std::cout << " " << building_block_name(p.id) << " [" << fmt_edges(p.part) << "]";
        std::cout << "\n";
    } else {
        std::cout << "blocks: (no decomposition)\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"grid-labelled graphs, their density matrices and separability tests"};
    app.require_subcommand(1);

    std::string format;
    std::string graph_path, graph_path2, table_path;
    std::string what = "laplacian";
    int rows = 0, cols = 0, edges = 0;
    bool diagonal_only = false, dedupe = false, strip_crosses = false;
    bool pk = false, second_order = false, exact = false;
    int jobs = 1;
    long long budget_flag = kDefaultBudget;

    auto add_format = [&](CLI::App* cmd, const char* default_format) {
        format = "";
        return cmd
            ->add_option("--format", format, std::string("output format (default ") +
                                                 default_format + ")")
            ->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* analyze = app.add_subcommand("analyze", "separability verdict for a graph");
    analyze->add_option("graph", graph_path, "graph JSON file")->required();
    CLI::Option* analyze_fmt = add_format(analyze, "json");

    CLI::App* enumerate = app.add_subcommand("enumerate", "list degree-criterion graphs");
    enumerate->add_option("--rows", rows, "grid rows")->required();
    enumerate->add_option("--cols", cols, "grid columns")->required();
    enumerate->add_option("--edges", edges, "edge count")->required();
    enumerate->add_flag("--diagonal-only", diagonal_only, "restrict to diagonal edges");
    enumerate->add_flag("--dedupe", dedupe, "one graph per local-isomorphism orbit");
    enumerate->add_flag("--strip-crosses", strip_crosses, "remove criss-cross pairs first");
    enumerate->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    CLI::Option* enum_budget = enumerate->add_option("--budget", budget_flag, "subset budget");
    CLI::Option* enum_fmt = add_format(enumerate, "json");

    CLI::App* count = app.add_subcommand("count", "count degree-criterion graphs");
    count->add_option("--rows", rows, "grid rows")->required();
    count->add_option("--cols", cols, "grid columns")->required();
    count->add_option("--edges", edges, "edge count")->required();
    count->add_flag("--pk", pk, "count graphs of any edge class, not only diagonal");
    CLI::Option* count_budget = count->add_option("--budget", budget_flag, "subset budget");
    CLI::Option* count_fmt = add_format(count, "json");

    CLI::App* iso = app.add_subcommand("iso", "local isomorphism witness search");
    iso->add_option("first", graph_path, "first graph JSON file")->required();
    iso->add_option("second", graph_path2, "second graph JSON file")->required();
    iso->add_flag("--second-order", second_order, "compare after compaction and padding");
    CLI::Option* iso_fmt = add_format(iso, "text");

    CLI::App* game = app.add_subcommand("game", "Crosses and Lassoes");
    game->require_subcommand(1);
    CLI::App* solve = game->add_subcommand("solve", "find a clearing move sequence");
    solve->add_option("table", table_path, "dash table text file")->required();
    CLI::Option* game_fmt = add_format(solve, "text");

    CLI::App* exp = app.add_subcommand("export", "print a matrix of the graph");
    exp->add_option("graph", graph_path, "graph JSON file")->required();
    exp->add_option("--what", what, "which matrix")
        ->check(CLI::IsMember({"laplacian", "density", "ptranspose", "realigned", "structure"}));
    exp->add_flag("--exact", exact, "exact rational entries p/q");
    CLI::Option* exp_fmt = add_format(exp, "text");

    CLI::App* decompose = app.add_subcommand("decompose", "HVD parts, strata, building blocks");
    decompose->add_option("graph", graph_path, "graph JSON file")->required();
    CLI::Option* dec_fmt = add_format(decompose, "json");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    auto chosen_format = [&](const CLI::Option* opt, const char* def) {
        return opt->count() > 0 ? format : std::string(def);
    };

    try {
        if (*analyze) return do_analyze(graph_path, chosen_format(analyze_fmt, "json"));
        if (*enumerate) {
            EnumerateOptions opt;
            opt.diagonal_only = diagonal_only;
            opt.dedupe = dedupe;
            opt.strip_crosses = strip_crosses;
            opt.jobs = jobs;
            opt.budget = resolve_budget(enum_budget, budget_flag);
            return do_enumerate(rows, cols, edges, opt, chosen_format(enum_fmt, "json"));
        }
        if (*count)
            return do_count(rows, cols, edges, pk, resolve_budget(count_budget, budget_flag),
                            chosen_format(count_fmt, "json"));
        if (*iso)
            return do_iso(graph_path, graph_path2, second_order, chosen_format(iso_fmt, "text"));
        if (*game) return do_game_solve(table_path, chosen_format(game_fmt, "text"));
        if (*exp) return do_export(graph_path, what, exact, chosen_format(exp_fmt, "text"));
        if (*decompose) return do_decompose(graph_path, chosen_format(dec_fmt, "json"));
    } catch (const budget_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace gridlab
