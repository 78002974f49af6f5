#include "dendro/configuration.hpp"
#include "dendro/harness.hpp"
#include "dendro/homotopy.hpp"
#include "dendro/morphism.hpp"
#include "dendro/nerve.hpp"
#include "dendro/obstruction.hpp"
#include "dendro/random.hpp"
#include "dendro/svg.hpp"
#include "dendro/tree.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace dendro;

namespace {

// Exit codes: 0 success, 1 failed check or invalid input, 2 usage error.
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string read_tree_text(const std::string& path) {
    std::istringstream in(read_input(path));
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return line;
    }
    throw std::runtime_error("'" + path + "' holds no tree");
}

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        out.push_back(ScalarTraits<double>::parse(text.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

std::vector<std::size_t> parse_permutation(const std::string& text) {
    std::vector<std::size_t> out;
    for (double v : parse_vector(text)) {
        if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw std::invalid_argument("permutation entries are 1-based integers");
        out.push_back(static_cast<std::size_t>(v) - 1);
    }
    return out;
}

std::size_t env_dim() {
    if (const char* v = std::getenv("DENDRO_DIM")) {
        char* end = nullptr;
        long n = std::strtol(v, &end, 10);
        if (end == v || *end != '\0' || n <= 0) throw UsageError("DENDRO_DIM must be a positive integer");
        return static_cast<std::size_t>(n);
    }
    return 2;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

struct Common {
    std::string output;
    std::size_t dim = 0;
    std::string mode = "rational";

    std::size_t default_dim() const { return dim ? dim : env_dim(); }
    bool exact() const {
        auto m = parse_mode(mode);
        if (!m) throw UsageError("mode must be rational or float");
        return *m == Mode::rational;
    }
};

void emit(const Common& common, const std::string& text) {
    if (common.output.empty() || common.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(common.output);
    if (!out) throw std::runtime_error("cannot write '" + common.output + "'");
    out << text;
}

// ---------------------------------------------------------------------------
// tree

std::string tree_kind(const Tree& t) {
    if (t.is_eta()) return "eta";
    if (t.is_corolla()) return "corolla";
    if (is_linear(t)) return "linear";
    return "tree";
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : " ") + s;
    return out;
}

// Each item preceded by a space, so empty lists leave no trailing blank.
std::string listed(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += " " + s;
    return out;
}

std::string tree_info(const Tree& t) {
    std::string out = "term: " + format_tree(t) + "\n";
    out += "kind: " + tree_kind(t) + "\n";
    out += "vertices: " + std::to_string(t.vertex_count()) + "\n";
    out += "edges: " + std::to_string(t.edge_count()) + "\n";
    out += "leaves:" + listed(t.leaves()) + "\n";
    out += "inner:" + listed(t.inner_edges()) + "\n";
    for (const auto& v : t.vertices()) out += "vertex " + v + ":" + listed(t.inputs(v)) + "\n";
    return out;
}

std::string morphism_info(const OmegaInjMorphism& m) {
    std::string out = "source: " + format_tree(m.source()) + "\n";
    out += "target: " + format_tree(m.target()) + "\n";
    std::string steps = describe(m);
    out += "steps: " + (steps.empty() ? std::string("(identity)") : steps) + "\n";
    out += "edge map:";
    for (const auto& e : m.source().edges()) out += " " + e + "->" + m.edge_map().at(e);
    out += "\n";
    auto p = predicates(m);
    out += "leaf_bijective: " + yes_no(p.leaf_bijective) + "\n";
    out += "leaf_preserving: " + yes_no(p.leaf_preserving) + "\n";
    out += "star: " + yes_no(p.star) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// op

template <class S>
Configuration<S> read_configuration(const std::string& path, const Common& c) {
    return parse_configuration<S>(read_input(path), c.default_dim());
}

template <class S>
std::string validation_text(const Configuration<S>& x, double tol, bool& ok) {
    auto violations = validate(x, tol);
    ok = violations.empty();
    if (ok) return "ok\n";
    std::string out;
    for (const auto& v : violations) out += "violation: " + v.message + "\n";
    return out;
}

std::size_t slot_from(std::size_t one_based) {
    if (one_based == 0) throw std::invalid_argument("slots are 1-based");
    return one_based - 1;
}

// ---------------------------------------------------------------------------
// nerve

template <class S>
NervePoint<S> read_point(const std::string& path, const Common& c) {
    auto p = parse_nerve_point<S>(read_input(path), c.default_dim());
    require_valid(p);
    return p;
}

template <class S>
std::string membership_text(const NervePoint<S>& p) {
    auto m = membership(p);
    return "in_XL: " + yes_no(m.in_XL) + "\nin_XIR: " + yes_no(m.in_XIR) + "\nin_X: " + yes_no(m.in_X) + "\n";
}

template <class S>
std::string segal_text(const NervePoint<S>& p) {
    std::string out;
    auto comps = segal_map(p);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i) out += "---\n";
        out += format_nerve_point(comps[i]);
    }
    return out;
}

template <class S>
std::string face_text(const NervePoint<S>& p, std::size_t i, std::size_t k) {
    auto list = encode_linear(p);
    if (list.arity() != k)
        throw std::invalid_argument("point lies over L" + std::to_string(list.arity()) + ", not L" + std::to_string(k));
    return format_linear_list(face_d(i, list));
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point/disk configurations over trees: operad, nerve, hat maps, and property suites"};
    app.require_subcommand(1);

    std::vector<std::pair<CLI::App*, std::function<int()>>> actions;
    Common common;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, bool has_mode,
                    std::function<int()> fn) {
        auto* sub = parent->add_subcommand(name, help);
        sub->add_option("-o,--output", common.output, "Write the result to this file instead of stdout");
        sub->add_option("--dim", common.dim, "Dimension for files without a '# dim' header (default 2 or $DENDRO_DIM)");
        if (has_mode) sub->add_option("--mode", common.mode, "Scalar mode: rational or float")->capture_default_str();
        actions.emplace_back(sub, std::move(fn));
        return sub;
    };

    std::string file, file2, edge, vertex, morphism_desc, perm_text, colors_text, tree_text;
    std::size_t slot = 0, face_i = 0, face_k = 0, depth = 2;
    std::uint64_t seed = 42;
    std::string t_text;
    double tol = default_tolerance;
    TreeParams tree_params;

    // tree ------------------------------------------------------------------
    auto* tree_cmd = app.add_subcommand("tree", "Tree terms, faces and morphisms");
    tree_cmd->require_subcommand(1);
    leaf(tree_cmd, "format", "Print the canonical term", false, [&] {
        emit(common, format_tree(parse_tree(read_tree_text(file))) + "\n");
        return 0;
    })->add_option("file", file)->required();
    leaf(tree_cmd, "info", "Print vertices, edges, leaves and inputs", false, [&] {
        emit(common, tree_info(parse_tree(read_tree_text(file))));
        return 0;
    })->add_option("file", file)->required();
    leaf(tree_cmd, "faces", "List the elementary faces with their sources", false, [&] {
        std::string out;
        for (const auto& f : elementary_faces(parse_tree(read_tree_text(file))))
            out += describe(f) + " : " + format_tree(f.source) + "\n";
        emit(common, out);
        return 0;
    })->add_option("file", file)->required();
    {
        auto* s = leaf(tree_cmd, "contract", "Contract an inner edge", false, [&] {
            auto c = contract_inner_edge(parse_tree(read_tree_text(file)), edge);
            emit(common, format_tree(c.tree) + "\nmerge: top=" + c.top + " bottom=" + c.bottom +
                             " slot=" + std::to_string(c.slot + 1) + "\n");
            return 0;
        });
        s->add_option("--edge", edge)->required();
        s->add_option("file", file)->required();
    }
    {
        auto* s = leaf(tree_cmd, "chop-top", "Remove a top vertex", false, [&] {
            emit(common, format_tree(chop_top_vertex(parse_tree(read_tree_text(file)), vertex)) + "\n");
            return 0;
        });
        s->add_option("--vertex", vertex)->required();
        s->add_option("file", file)->required();
    }
    leaf(tree_cmd, "chop-root", "Remove the root vertex", false, [&] {
        emit(common, format_tree(chop_root_vertex(parse_tree(read_tree_text(file)))) + "\n");
        return 0;
    })->add_option("file", file)->required();
    {
        auto* s = leaf(tree_cmd, "morphism", "Resolve a morphism description against a target tree", false, [&] {
            emit(common, morphism_info(parse_morphism(morphism_desc, parse_tree(read_tree_text(file)))));
            return 0;
        });
        s->add_option("--morphism", morphism_desc, "Steps applied target to source, e.g. 'inner:e;edge:l'")->required();
        s->add_option("file", file)->required();
    }

    // op --------------------------------------------------------------------
    auto* op_cmd = app.add_subcommand("op", "Operations on configurations");
    op_cmd->require_subcommand(1);
    {
        auto* s = leaf(op_cmd, "validate", "Check a configuration", true, [&] {
            bool ok = false;
            std::string text = common.exact() ? validation_text(read_configuration<Rational>(file, common), tol, ok)
                                              : validation_text(read_configuration<double>(file, common), tol, ok);
            emit(common, text);
            return ok ? 0 : exit_failure;
        });
        s->add_option("--tol", tol)->capture_default_str();
        s->add_option("file", file)->required();
    }
    {
        auto* s = leaf(op_cmd, "compose", "Partial composition x o_i y", true, [&] {
            auto run = [&]<class S>(S*) {
                auto x = read_configuration<S>(file, common);
                auto y = read_configuration<S>(file2, common);
                require_valid(x, "x");
                require_valid(y, "y");
                emit(common, format_configuration(compose_at(x, slot_from(slot), y)));
            };
            if (common.exact()) run(static_cast<Rational*>(nullptr));
            else run(static_cast<double*>(nullptr));
            return 0;
        });
        s->add_option("--i", slot, "1-based disk slot of x")->required();
        s->add_option("x", file)->required();
        s->add_option("y", file2)->required();
    }
    {
        auto* s = leaf(op_cmd, "sigma", "Relabel entries: result[j] = x[perm[j]]", true, [&] {
            auto perm = parse_permutation(perm_text);
            if (common.exact()) emit(common, format_configuration(sigma_act(read_configuration<Rational>(file, common), perm)));
            else emit(common, format_configuration(sigma_act(read_configuration<double>(file, common), perm)));
            return 0;
        });
        s->add_option("--perm", perm_text, "1-based permutation, e.g. 2,1")->required();
        s->add_option("file", file)->required();
    }
    {
        auto* s = leaf(op_cmd, "shift", "Replace disks by their centers where the target color is 2", true, [&] {
            auto to = parse_colors(colors_text);
            if (common.exact()) emit(common, format_configuration(shift(read_configuration<Rational>(file, common), to)));
            else emit(common, format_configuration(shift(read_configuration<double>(file, common), to)));
            return 0;
        });
        s->add_option("--to", colors_text, "Target colors, e.g. 2,2")->required();
        s->add_option("file", file)->required();
    }
    {
        auto* s = leaf(op_cmd, "epsilon", "Clearance around a point entry", false, [&] {
            emit(common, ScalarTraits<double>::format(epsilon(read_configuration<double>(file, common), slot_from(slot))) + "\n");
            return 0;
        });
        s->add_option("--i", slot, "1-based point slot")->required();
        s->add_option("file", file)->required();
    }
    {
        auto* s = leaf(op_cmd, "g-inverse", "Replace a point by the disk of half its clearance", false, [&] {
            emit(common, format_configuration(g_inverse(read_configuration<double>(file, common), slot_from(slot))));
            return 0;
        });
        s->add_option("--i", slot, "1-based point slot")->required();
        s->add_option("file", file)->required();
    }
    {
        auto* s = leaf(op_cmd, "homotopy", "Evaluate the homotopy H(x, i, t)", false, [&] {
            emit(common, format_configuration(homotopy(read_configuration<double>(file, common), slot_from(slot), ScalarTraits<double>::parse(t_text))));
            return 0;
        });
        s->add_option("--i", slot, "1-based disk slot")->required();
        s->add_option("--t", t_text, "Time in [0, 1], decimal or fraction")->required();
        s->add_option("file", file)->required();
    }
    {
        auto* s = leaf(op_cmd, "random", "Sample a valid configuration", true, [&] {
            auto colors = parse_colors(colors_text);
            if (common.exact()) emit(common, format_configuration(random_configuration<Rational>(colors, common.default_dim(), seed)));
            else emit(common, format_configuration(random_configuration<double>(colors, common.default_dim(), seed)));
            return 0;
        });
        s->add_option("--colors", colors_text, "Colors, e.g. 1,2,2 (empty for none)")->required();
        s->add_option("--seed", seed)->capture_default_str();
    }

    // nerve -----------------------------------------------------------------
    auto* nerve_cmd = app.add_subcommand("nerve", "Nerve points over trees");
    nerve_cmd->require_subcommand(1);
    auto nerve_leaf = [&](const std::string& name, const std::string& help,
                          std::function<std::string(const NervePoint<Rational>&)> exact_fn,
                          std::function<std::string(const NervePoint<double>&)> float_fn) {
        auto* s = leaf(nerve_cmd, name, help, true, [&, exact_fn, float_fn] {
            if (common.exact()) emit(common, exact_fn(read_point<Rational>(file, common)));
            else emit(common, float_fn(read_point<double>(file, common)));
            return 0;
        });
        return s;
    };
    nerve_leaf("membership", "Report membership in X^L, X^IR and X",
               [](const auto& p) { return membership_text(p); }, [](const auto& p) { return membership_text(p); })
        ->add_option("file", file)->required();
    {
        auto* s = nerve_leaf(
            "pullback", "Pull a point back along a morphism",
            [&](const auto& p) { return format_nerve_point(pullback(parse_morphism(morphism_desc, p.tree), p)); },
            [&](const auto& p) { return format_nerve_point(pullback(parse_morphism(morphism_desc, p.tree), p)); });
        s->add_option("--morphism", morphism_desc)->required();
        s->add_option("file", file)->required();
    }
    {
        auto* s = nerve_leaf(
            "hat", "Pull back, then shift the leaves to points",
            [&](const auto& p) { return format_nerve_point(hat(parse_morphism(morphism_desc, p.tree), p)); },
            [&](const auto& p) { return format_nerve_point(hat(parse_morphism(morphism_desc, p.tree), p)); });
        s->add_option("--morphism", morphism_desc)->required();
        s->add_option("file", file)->required();
    }
    nerve_leaf("shift", "Recolor leaves to 2 and shift",
               [](const auto& p) { return format_nerve_point(shift_operator(p)); },
               [](const auto& p) { return format_nerve_point(shift_operator(p)); })
        ->add_option("file", file)->required();
    nerve_leaf("segal", "Corolla components, separated by '---'",
               [](const auto& p) { return segal_text(p); }, [](const auto& p) { return segal_text(p); })
        ->add_option("file", file)->required();
    nerve_leaf("encode", "Write a point over a linear tree as a list",
               [](const auto& p) { return format_linear_list(encode_linear(p)); },
               [](const auto& p) { return format_linear_list(encode_linear(p)); })
        ->add_option("file", file)->required();
    leaf(nerve_cmd, "decode", "Read a list as a point over a linear tree", true, [&] {
        auto text = read_input(file);
        if (common.exact()) emit(common, format_nerve_point(decode_linear(parse_linear_list<Rational>(text, common.default_dim()))));
        else emit(common, format_nerve_point(decode_linear(parse_linear_list<double>(text, common.default_dim()))));
        return 0;
    })->add_option("file", file)->required();
    {
        auto* s = nerve_leaf(
            "face", "Face d_i of a point over L_k, as a list",
            [&](const auto& p) { return face_text(p, face_i, face_k); },
            [&](const auto& p) { return face_text(p, face_i, face_k); });
        s->add_option("--i", face_i)->required();
        s->add_option("--k", face_k)->required();
        s->add_option("file", file)->required();
    }

    // generate --------------------------------------------------------------
    auto* gen_cmd = app.add_subcommand("generate", "Seeded random values");
    gen_cmd->require_subcommand(1);
    auto add_tree_bounds = [&](CLI::App* s) {
        s->add_option("--seed", seed)->capture_default_str();
        s->add_option("--max-vertices", tree_params.max_vertices)->capture_default_str();
        s->add_option("--max-arity", tree_params.max_arity)->capture_default_str();
    };
    add_tree_bounds(leaf(gen_cmd, "tree", "A random tree", false, [&] {
        Rng rng(seed);
        emit(common, format_tree(random_tree(rng, tree_params)) + "\n");
        return 0;
    }));
    {
        auto* s = leaf(gen_cmd, "x-point", "A random point of X over a tree", true, [&] {
            Rng rng(seed);
            Tree t = parse_tree(tree_text);
            if (common.exact()) emit(common, format_nerve_point(random_x_point<Rational>(rng, t, common.default_dim())));
            else emit(common, format_nerve_point(random_x_point<double>(rng, t, common.default_dim())));
            return 0;
        });
        s->add_option("--tree", tree_text, "Tree term")->required();
        s->add_option("--seed", seed)->capture_default_str();
    }
    {
        auto* s = leaf(gen_cmd, "morphism", "A random chain of faces and isomorphisms into a tree", false, [&] {
            Rng rng(seed);
            emit(common, morphism_info(random_chain(rng, parse_tree(tree_text), depth, ChainKind::faces_and_isos)));
            return 0;
        });
        s->add_option("--tree", tree_text, "Tree term")->required();
        s->add_option("--depth", depth)->capture_default_str();
        s->add_option("--seed", seed)->capture_default_str();
    }

    // check -----------------------------------------------------------------
    SuiteOptions suite;
    std::string suite_name, suite_mode, c1_text = "0,0", p_text = "0.2,0";
    bool all = false, json = false;
    auto add_obstruction_flags = [&](CLI::App* s) {
        s->add_option("--r", suite.radius, "Radius candidate const:<v> or radial:<c0>,<c1>,...")->capture_default_str();
        s->add_option("--c1", c1_text, "Center of the disk family")->capture_default_str();
        s->add_option("--p", p_text, "Top point P")->capture_default_str();
        s->add_option("--tmin", suite.tmin)->capture_default_str();
        s->add_option("--tmax", suite.tmax)->capture_default_str();
        s->add_option("--steps", suite.steps)->capture_default_str();
    };
    auto* check = app.add_subcommand("check", "Run property suites");
    check->add_option("suite", suite_name, "Suite name");
    check->add_flag("--all", all, "Run every suite");
    check->add_option("--cases", suite.cases, "Cases per suite (0 for the suite default)");
    check->add_option("--seed", suite.seed)->capture_default_str();
    check->add_option("--mode", suite_mode, "rational or float (default per suite)");
    check->add_option("--tol", suite.tol)->capture_default_str();
    check->add_option("--dim", suite.dim, "Fixed dimension (default: cycle or 2)");
    check->add_option("--max-vertices", suite.max_vertices, "Theorem suite enumeration bound")->capture_default_str();
    check->add_option("--max-arity", suite.max_arity, "Theorem suite arity bound")->capture_default_str();
    check->add_flag("--json", json, "One JSON record per suite");
    add_obstruction_flags(check);
    actions.emplace_back(check, [&] {
        if (all == !suite_name.empty()) throw UsageError("give a suite name or --all");
        if (!suite_mode.empty()) {
            suite.mode = parse_mode(suite_mode);
            if (!suite.mode) throw UsageError("mode must be rational or float");
        }
        suite.c1 = parse_vector(c1_text);
        suite.point = parse_vector(p_text);
        std::vector<std::string> names = all ? suite_names() : std::vector<std::string>{suite_name};
        if (!all) {
            const auto& known = suite_names();
            if (std::find(known.begin(), known.end(), suite_name) == known.end())
                throw UsageError("unknown suite '" + suite_name + "'; known suites: " + join(known));
        }
        bool passed = true;
        for (const auto& name : names) {
            SuiteOptions opts = suite;
            if (all && opts.mode) {
                // Skip suites that do not run in the requested mode.
                try {
                    auto r = run_suite(name, opts);
                    std::cout << (json ? report_json(r) + "\n" : format_report(r));
                    passed &= r.passed();
                } catch (const SuiteError&) {
                }
                continue;
            }
            auto r = run_suite(name, opts);
            std::cout << (json ? report_json(r) + "\n" : format_report(r));
            passed &= r.passed();
        }
        return passed ? 0 : exit_failure;
    });

    // obstruction -----------------------------------------------------------
    auto* obstruction = app.add_subcommand("obstruction", "Tabulate the degeneracy obstruction bound r(tP + c1) - t");
    add_obstruction_flags(obstruction);
    actions.emplace_back(obstruction, [&] {
        auto candidate = RadiusCandidate::parse(suite.radius);
        auto scan = obstruction_scan(candidate, parse_vector(c1_text), parse_vector(p_text),
                                     t_grid(suite.tmin, suite.tmax, suite.steps));
        std::string out = "candidate: " + candidate.describe() + "\nt bound\n";
        for (const auto& row : scan.rows) out += format_number(row.t) + " " + format_number(row.bound) + "\n";
        out += "floor: " + format_number(scan.floor) + "\n";
        out += "positive: " + std::to_string(scan.positive) + "/" + std::to_string(scan.rows.size()) + "\n";
        out += "certified: " + yes_no(scan.certified()) + "\n";
        std::cout << out;
        return scan.certified() ? 0 : exit_failure;
    });

    // render ----------------------------------------------------------------
    leaf(&app, "render", "Draw a planar configuration as SVG", false, [&] {
        emit(common, render_svg(read_configuration<double>(file, common)));
        return 0;
    })->add_option("file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        for (auto& [sub, fn] : actions)
            if (sub->parsed()) return fn();
        std::cerr << app.help();
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return exit_usage;
    } catch (const SuiteError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
}
