#pragma once

#include "dendro/configuration.hpp"
#include "dendro/morphism.hpp"
#include "dendro/tree.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

namespace dendro {

// A point of the dendroidal nerve over a tree: an edge coloring plus, for
// every vertex, an operation of the operad with the matching profile. A
// vertex whose output is point-colored carries the unique operation of
// O(2; 2), stored as nullopt.
template <class S>
struct NervePoint {
    using scalar_type = S;

    Tree tree;
    std::size_t dim;
    std::map<std::string, Color> coloring;
    std::map<std::string, std::optional<Configuration<S>>> operations;

    ColorList input_colors(const std::string& vertex) const {
        ColorList out;
        for (const auto& e : tree.inputs(vertex)) out.push_back(coloring.at(e));
        return out;
    }

    bool operator==(const NervePoint&) const = default;
};

// Leaves to 2; root and inner edges to 1.
inline std::map<std::string, Color> canonical_coloring(const Tree& tree) {
    std::map<std::string, Color> out;
    for (const auto& e : tree.edges()) out[e] = tree.is_leaf(e) ? Color::point : Color::disk;
    return out;
}

// The single point of X over the trivial tree.
template <class S>
NervePoint<S> trivial_point(const Tree& eta, std::size_t dim) {
    if (!eta.is_eta()) throw TreeError("trivial point requested over a non-trivial tree");
    return {eta, dim, {{eta.root(), Color::point}}, {}};
}

// Throws std::invalid_argument describing the first broken invariant.
template <class S>
void require_valid(const NervePoint<S>& p, double tol = default_tolerance) {
    for (const auto& e : p.tree.edges())
        if (!p.coloring.count(e)) throw std::invalid_argument("edge '" + e + "' has no color");
    if (p.coloring.size() != p.tree.edge_count()) throw std::invalid_argument("coloring names unknown edges");
    if (p.operations.size() != p.tree.vertex_count())
        throw std::invalid_argument("operations do not match the vertices");
    for (const auto& v : p.tree.vertices()) {
        auto it = p.operations.find(v);
        if (it == p.operations.end()) throw std::invalid_argument("vertex '" + v + "' has no operation");
        ColorList ins = p.input_colors(v);
        if (p.coloring.at(v) == Color::point) {
            if (ins != ColorList{Color::point})
                throw std::invalid_argument("vertex '" + v + "' has point output but profile " + format_colors(ins));
            if (it->second) throw std::invalid_argument("vertex '" + v + "' with point output carries a configuration");
            continue;
        }
        if (!it->second) throw std::invalid_argument("vertex '" + v + "' has no configuration");
        const auto& x = *it->second;
        if (x.dim() != p.dim) throw std::invalid_argument("vertex '" + v + "' has the wrong dimension");
        if (x.colors() != ins)
            throw std::invalid_argument("vertex '" + v + "' carries colors " + format_colors(x.colors()) +
                                        " but its inputs are colored " + format_colors(ins));
        if (auto bad = validate(x, tol); !bad.empty())
            throw std::invalid_argument("vertex '" + v + "': " + bad.front().message);
    }
}

template <class S>
bool is_valid(const NervePoint<S>& p, double tol = default_tolerance) {
    try {
        require_valid(p, tol);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

struct Membership {
    bool in_XL;   // every leaf colored 2
    bool in_XIR;  // root and inner edges colored 1
    bool in_X;
    bool operator==(const Membership&) const = default;
};

template <class S>
Membership membership(const NervePoint<S>& p) {
    bool leaves = true, rest = true;
    for (const auto& e : p.tree.edges()) {
        Color c = p.coloring.at(e);
        if (p.tree.is_leaf(e) && c != Color::point) leaves = false;
        if ((e == p.tree.root() || p.tree.is_inner(e)) && c != Color::disk) rest = false;
    }
    return {leaves, rest, p.tree.is_eta() ? true : (leaves && rest)};
}

namespace detail {

// The pullback along one elementary step. Only the operations that survive
// are copied; pass an rvalue to reuse storage.
template <class P, class S = typename std::decay_t<P>::scalar_type>
NervePoint<S> pullback_step(const ElementaryMorphism& step, P&& p) {
    if (!(p.tree == step.target)) throw std::invalid_argument("nerve point does not live over the morphism's target");
    NervePoint<S> out{step.source, p.dim, {}, {}};
    for (const auto& e : step.source.edges()) out.coloring[e] = p.coloring.at(step.edge_map.at(e));
    auto take = [&](const std::string& v) -> std::optional<Configuration<S>> {
        if constexpr (std::is_lvalue_reference_v<P>) return p.operations.at(v);
        else return std::move(p.operations.at(v));
    };
    if (step.kind == StepKind::isomorphism) {
        for (const auto& v : step.source.vertices()) {
            const auto& op = p.operations.at(step.edge_map.at(v));
            out.operations[v] = op ? std::optional(sigma_act(*op, planar_permutation(step, v))) : std::nullopt;
        }
        return out;
    }
    for (const auto& v : step.source.vertices()) {
        if (step.kind == StepKind::inner_face && v == step.bottom) {
            const auto& lower = p.operations.at(step.bottom);
            const auto& upper = p.operations.at(step.top);
            // A point-colored edge joins a unit of O(2; 2); composing with it is the identity.
            if (lower && upper) out.operations[v] = compose_at(*lower, step.slot, *upper);
            else out.operations[v] = take(v);
        } else {
            out.operations[v] = take(v);
        }
    }
    return out;
}

}  // namespace detail

template <class S>
NervePoint<S> pullback(const ElementaryMorphism& step, const NervePoint<S>& p) {
    return detail::pullback_step(step, p);
}

namespace detail {

template <class S>
NervePoint<S> pullback_steps(const OmegaInjMorphism& morphism, const NervePoint<S>& p) {
    const auto& steps = morphism.steps();
    if (steps.empty()) return p;
    NervePoint<S> current = pullback_step(steps.back(), p);
    for (auto it = std::next(steps.rbegin()); it != steps.rend(); ++it) current = pullback_step(*it, std::move(current));
    if (!(current.tree == morphism.source())) throw std::logic_error("pullback ended over the wrong tree");
    return current;
}

}  // namespace detail

// Pulls back along a composite, last step first.
template <class S>
NervePoint<S> pullback(const OmegaInjMorphism& morphism, const NervePoint<S>& p) {
    require_valid(p);
    return detail::pullback_steps(morphism, p);
}

// Recolors every leaf to 2 and shifts each vertex operation accordingly.
template <class S>
NervePoint<S> shift_operator(NervePoint<S> out) {
    if (out.tree.is_eta()) throw std::invalid_argument("the shift operator is undefined on the trivial tree");
    for (const auto& e : out.tree.leaves()) out.coloring[e] = Color::point;
    for (auto& [v, op] : out.operations) {
        if (!op) continue;
        auto colors = out.input_colors(v);
        if (op->colors() != colors) op = shift(*op, colors);
    }
    return out;
}

template <class S>
void require_in_X(const NervePoint<S>& x) {
    require_valid(x);
    if (!membership(x).in_X) throw std::invalid_argument("nerve point is not in X");
}

// hat for a point already known to be a valid point of X: only the coloring
// is rechecked.
template <class S>
NervePoint<S> hat_trusted(const OmegaInjMorphism& morphism, const NervePoint<S>& x) {
    if (!membership(x).in_X) throw std::invalid_argument("nerve point is not in X");
    if (!(x.tree == morphism.target())) throw std::invalid_argument("nerve point does not live over the morphism's target");
    if (morphism.source().is_eta()) return trivial_point<S>(morphism.source(), x.dim);
    NervePoint<S> out = shift_operator(detail::pullback_steps(morphism, x));
    if (!membership(out).in_X) throw std::logic_error("hat left the subspace X");
    return out;
}

// Pull back along the morphism, then shift onto X over the source.
template <class S>
NervePoint<S> hat(const OmegaInjMorphism& morphism, const NervePoint<S>& x) {
    require_in_X(x);
    return hat_trusted(morphism, x);
}

// Components of the Segal map, one per vertex in planar pre-order: hat along
// each corolla inclusion.
template <class S>
std::vector<NervePoint<S>> segal_map(const NervePoint<S>& x) {
    if (x.tree.is_eta()) throw std::invalid_argument("the Segal map is taken over non-trivial trees");
    std::vector<NervePoint<S>> out;
    for (const auto& v : x.tree.vertices()) out.push_back(hat(corolla_inclusion(x.tree, v), x));
    return out;
}

// The same components computed as projection followed by the shift to all points.
template <class S>
std::vector<NervePoint<S>> segal_factored(const NervePoint<S>& x) {
    require_in_X(x);
    if (x.tree.is_eta()) throw std::invalid_argument("the Segal map is taken over non-trivial trees");
    std::vector<NervePoint<S>> out;
    for (const auto& v : x.tree.vertices()) {
        const auto& ins = x.tree.inputs(v);
        Tree corolla = Tree::corolla(v, ins);
        NervePoint<S> c{corolla, x.dim, canonical_coloring(corolla), {}};
        c.operations[v] = shift(*x.operations.at(v), all_points(ins.size()));
        out.push_back(std::move(c));
    }
    return out;
}

// A point of X over a linear tree, read from the root upward: the unary
// disk operations a_1 .. a_{k-1} followed by the top point P.
template <class S>
struct LinearList {
    std::size_t dim;
    std::vector<Disk<S>> maps;
    std::optional<Point<S>> top;

    std::size_t arity() const { return top ? maps.size() + 1 : 0; }
    bool operator==(const LinearList&) const = default;
};

template <class S>
LinearList<S> encode_linear(const NervePoint<S>& x) {
    require_in_X(x);
    auto verts = linear_vertices(x.tree);
    LinearList<S> out{x.dim, {}, std::nullopt};
    for (std::size_t j = 0; j < verts.size(); ++j) {
        const auto& op = *x.operations.at(verts[j]);
        if (j + 1 < verts.size()) out.maps.push_back(op.disk(0));
        else out.top = op.point(0);
    }
    return out;
}

template <class S>
NervePoint<S> decode_linear(const LinearList<S>& list) {
    if (!list.top && !list.maps.empty()) throw std::invalid_argument("linear list has maps but no top point");
    std::size_t k = list.arity();
    Tree tree = Tree::linear(k);
    NervePoint<S> x{tree, list.dim, canonical_coloring(tree), {}};
    auto verts = linear_vertices(tree);
    for (std::size_t j = 0; j < k; ++j) {
        if (j + 1 < k) x.operations[verts[j]] = Configuration<S>(list.dim, {list.maps[j]});
        else x.operations[verts[j]] = Configuration<S>(list.dim, {*list.top});
    }
    require_in_X(x);
    return x;
}

// The semi-simplicial face d_i on X_k written as lists.
template <class S>
LinearList<S> face_d(std::size_t i, const LinearList<S>& pt) {
    std::size_t k = pt.arity();
    if (k == 0) throw std::invalid_argument("face maps start at k = 1");
    if (i > k) throw std::out_of_range("face index " + std::to_string(i) + " exceeds " + std::to_string(k));
    LinearList<S> out{pt.dim, {}, std::nullopt};
    if (k == 1) return out;
    const auto& a = pt.maps;
    if (i == 0) {
        out.maps.assign(a.begin() + 1, a.end());
        out.top = pt.top;
    } else if (i <= k - 2) {
        out.maps.assign(a.begin(), a.end());
        out.maps[i - 1] = after(a[i - 1], a[i]);
        out.maps.erase(out.maps.begin() + static_cast<std::ptrdiff_t>(i));
        out.top = pt.top;
    } else {
        out.maps.assign(a.begin(), a.end() - 1);
        Vec<S> origin(pt.dim, S(0));
        out.top = Point<S>{affine(a[k - 2], i == k - 1 ? pt.top->position : origin)};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text formats

template <class S>
std::string format_linear_list(const LinearList<S>& list) {
    std::string out = "# dim " + std::to_string(list.dim) + "\n";
    for (const auto& a : list.maps) out += format_entry<S>(a) + "\n";
    if (list.top) out += format_entry<S>(*list.top) + "\n";
    return out;
}

template <class S>
LinearList<S> parse_linear_list(std::string_view text, std::size_t default_dim) {
    auto cfg = parse_configuration<S>(text, default_dim);
    LinearList<S> out{cfg.dim(), {}, std::nullopt};
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        if (cfg.is_disk(i)) {
            if (out.top) throw std::invalid_argument("the top point must come last in a linear list");
            out.maps.push_back(cfg.disk(i));
        } else {
            if (out.top) throw std::invalid_argument("a linear list has a single top point");
            out.top = cfg.point(i);
        }
    }
    if (!out.top && !out.maps.empty()) throw std::invalid_argument("linear list has maps but no top point");
    return out;
}

// "# dim n", the tree term, "color <edge> <1|2>" lines, then "vertex <v>:"
// blocks of configuration lines.
template <class S>
std::string format_nerve_point(const NervePoint<S>& p) {
    std::string out = "# dim " + std::to_string(p.dim) + "\n" + format_tree(p.tree) + "\n";
    for (const auto& e : p.tree.edges())
        out += "color " + e + " " + (p.coloring.at(e) == Color::disk ? "1" : "2") + "\n";
    for (const auto& v : p.tree.vertices()) {
        out += "vertex " + v + ":\n";
        if (const auto& op = p.operations.at(v))
            for (const auto& e : op->entries()) out += format_entry<S>(e) + "\n";
    }
    return out;
}

// Edges without a color line take the canonical X coloring.
template <class S>
NervePoint<S> parse_nerve_point(std::string_view text, std::size_t default_dim) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0, dim = default_dim;
    std::optional<Tree> tree;
    std::map<std::string, Color> coloring;
    std::map<std::string, std::vector<Entry<S>>> blocks;
    std::optional<std::string> current;
    auto fail = [&](const std::string& why) {
        return std::invalid_argument("line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        std::string body = line.substr(first);
        while (!body.empty() && (body.back() == '\r' || body.back() == ' ' || body.back() == '\t')) body.pop_back();
        if (body[0] == '#') {
            std::istringstream h(body.substr(1));
            std::string key;
            if (h >> key && key == "dim") {
                if (tree || !(h >> dim) || dim == 0) throw fail("bad dim header");
            }
            continue;
        }
        if (!tree) {
            try {
                tree = parse_tree(body);
            } catch (const ParseError& e) {
                throw fail(e.what());
            }
            continue;
        }
        std::istringstream words(body);
        std::string kind;
        words >> kind;
        if (kind == "color") {
            if (current) throw fail("color lines must precede vertex blocks");
            std::string edge, value;
            if (!(words >> edge >> value) || (value != "1" && value != "2")) throw fail("expected 'color <edge> <1|2>'");
            if (!tree->has_edge(edge)) throw fail("unknown edge '" + edge + "'");
            coloring[edge] = value == "1" ? Color::disk : Color::point;
        } else if (kind == "vertex") {
            std::string name;
            words >> name;
            if (name.empty() || name.back() != ':') throw fail("expected 'vertex <edge>:'");
            name.pop_back();
            if (!tree->has_vertex(name)) throw fail("no vertex '" + name + "'");
            if (blocks.count(name)) throw fail("duplicate block for vertex '" + name + "'");
            blocks[name];
            current = name;
        } else {
            if (!current) throw fail("configuration line outside a vertex block");
            blocks[*current].push_back(parse_entry<S>(body, dim, line_no));
        }
    }
    if (!tree) throw std::invalid_argument("nerve point file has no tree");
    NervePoint<S> p{*tree, dim, canonical_coloring(*tree), {}};
    for (const auto& [e, c] : coloring) p.coloring[e] = c;
    for (const auto& v : tree->vertices()) {
        auto& entries = blocks[v];
        if (p.coloring.at(v) == Color::point) {
            if (!entries.empty()) throw std::invalid_argument("vertex '" + v + "' has point output and takes no entries");
            p.operations[v] = std::nullopt;
        } else {
            p.operations[v] = Configuration<S>(dim, std::move(entries));
        }
    }
    require_valid(p);
    return p;
}

}  // namespace dendro
