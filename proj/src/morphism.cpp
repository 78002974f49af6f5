#include "dendro/morphism.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace dendro {

namespace {

EdgeMap identity_on(const Tree& tree) {
    EdgeMap map;
    for (const auto& e : tree.edges()) map.emplace(e, e);
    return map;
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ElementaryMorphism inner_face(const Tree& target, const std::string& edge) {
    auto c = contract_inner_edge(target, edge);
    EdgeMap map = identity_on(c.tree);
    return {StepKind::inner_face, edge, std::move(c.tree), target, std::move(map), c.top, c.bottom, c.slot};
}

ElementaryMorphism outer_top_face(const Tree& target, const std::string& vertex) {
    Tree source = chop_top_vertex(target, vertex);
    EdgeMap map = identity_on(source);
    return {StepKind::outer_top_face, vertex, std::move(source), target, std::move(map), {}, {}, 0};
}

ElementaryMorphism outer_root_face(const Tree& target) {
    Tree source = chop_root_vertex(target);
    EdgeMap map = identity_on(source);
    return {StepKind::outer_root_face, target.root(), std::move(source), target, std::move(map), {}, {}, 0};
}

ElementaryMorphism edge_inclusion(const Tree& target, const std::string& edge) {
    if (!target.has_edge(edge)) throw TreeError("no edge '" + edge + "' to include");
    Tree source = Tree::eta(edge);
    EdgeMap map = identity_on(source);
    return {StepKind::edge_inclusion, edge, std::move(source), target, std::move(map), {}, {}, 0};
}

ElementaryMorphism isomorphism(const Tree& source, const Tree& target, EdgeMap map) {
    if (map.size() != source.edge_count() || source.edge_count() != target.edge_count())
        throw TreeError("isomorphism edge map has the wrong size");
    std::set<std::string> image;
    for (const auto& e : source.edges()) {
        auto it = map.find(e);
        if (it == map.end()) throw TreeError("isomorphism edge map misses '" + e + "'");
        if (!target.has_edge(it->second)) throw TreeError("isomorphism target has no edge '" + it->second + "'");
        if (!image.insert(it->second).second) throw TreeError("isomorphism edge map is not injective");
    }
    if (map.at(source.root()) != target.root()) throw TreeError("isomorphism does not preserve the root");
    for (const auto& [v, ins] : source.vertex_inputs()) {
        const std::string& w = map.at(v);
        if (!target.has_vertex(w)) throw TreeError("isomorphism sends vertex '" + v + "' to a leaf");
        std::vector<std::string> mapped;
        for (const auto& e : ins) mapped.push_back(map.at(e));
        auto expected = target.inputs(w);
        std::sort(mapped.begin(), mapped.end());
        std::sort(expected.begin(), expected.end());
        if (mapped != expected) throw TreeError("isomorphism does not preserve the inputs of '" + v + "'");
    }
    if (source.vertex_count() != target.vertex_count())
        throw TreeError("isomorphism does not preserve vertices");
    return {StepKind::isomorphism, {}, source, target, std::move(map), {}, {}, 0};
}

std::vector<std::size_t> planar_permutation(const ElementaryMorphism& iso, const std::string& vertex) {
    const auto& src_in = iso.source.inputs(vertex);
    const auto& tgt_in = iso.target.inputs(iso.edge_map.at(vertex));
    std::vector<std::size_t> perm;
    perm.reserve(src_in.size());
    for (const auto& e : src_in) {
        const auto& image = iso.edge_map.at(e);
        perm.push_back(static_cast<std::size_t>(std::find(tgt_in.begin(), tgt_in.end(), image) - tgt_in.begin()));
    }
    return perm;
}

std::string describe(const ElementaryMorphism& step) {
    switch (step.kind) {
        case StepKind::inner_face: return "inner:" + step.edge;
        case StepKind::outer_top_face: return "outer-top:" + step.edge;
        case StepKind::outer_root_face: return "outer-root";
        case StepKind::edge_inclusion: return "edge:" + step.edge;
        case StepKind::isomorphism: {
            std::string out = "iso:" + format_tree(step.source);
            std::string renames;
            for (const auto& [s, t] : step.edge_map) {
                if (s == t) continue;
                if (!renames.empty()) renames += ',';
                renames += s + "=" + t;
            }
            if (!renames.empty()) out += "@" + renames;
            return out;
        }
    }
    return {};
}

OmegaInjMorphism OmegaInjMorphism::identity(const Tree& tree) { return OmegaInjMorphism(tree, tree, {}); }

// A single step is composable and injective by construction.
OmegaInjMorphism::OmegaInjMorphism(ElementaryMorphism step)
    : source_(step.source), target_(step.target), edge_map_(step.edge_map) {
    steps_.push_back(std::move(step));
}

OmegaInjMorphism::OmegaInjMorphism(Tree source, Tree target, std::vector<ElementaryMorphism> steps)
    : source_(std::move(source)), target_(std::move(target)), steps_(std::move(steps)) {
    edge_map_ = identity_on(source_);
    const Tree* current = &source_;
    for (const auto& step : steps_) {
        if (!(step.source == *current))
            throw TreeError("non-composable chain at step '" + describe(step) + "'");
        for (auto& [s, t] : edge_map_) t = step.edge_map.at(t);
        current = &step.target;
    }
    if (!(*current == target_)) throw TreeError("chain does not end at the stated target");
    std::set<std::string> image;
    for (const auto& [s, t] : edge_map_)
        if (!image.insert(t).second) throw TreeError("edge map is not injective");
}

OmegaInjMorphism compose(const OmegaInjMorphism& outer, const OmegaInjMorphism& inner) {
    if (!(inner.target() == outer.source()))
        throw TreeError("cannot compose: " + format_tree(inner.target()) + " != " + format_tree(outer.source()));
    auto steps = inner.steps();
    steps.insert(steps.end(), outer.steps().begin(), outer.steps().end());
    return OmegaInjMorphism(inner.source(), outer.target(), std::move(steps));
}

std::vector<ElementaryMorphism> elementary_faces(const Tree& tree) {
    std::vector<ElementaryMorphism> out;
    if (tree.is_eta()) return out;
    if (tree.is_corolla()) {
        for (const auto& e : tree.edges()) out.push_back(edge_inclusion(tree, e));
        return out;
    }
    for (const auto& e : tree.inner_edges()) out.push_back(inner_face(tree, e));
    for (const auto& v : tree.vertices()) {
        const auto& ins = tree.inputs(v);
        if (std::all_of(ins.begin(), ins.end(), [&](const std::string& e) { return tree.is_leaf(e); }))
            out.push_back(outer_top_face(tree, v));
    }
    const auto& root_in = tree.inputs(tree.root());
    auto inner = std::count_if(root_in.begin(), root_in.end(), [&](const std::string& e) { return tree.is_inner(e); });
    if (inner == 1) out.push_back(outer_root_face(tree));
    return out;
}

MorphismPredicates predicates(const OmegaInjMorphism& morphism) {
    const Tree& s = morphism.source();
    const Tree& t = morphism.target();
    const EdgeMap& map = morphism.edge_map();

    std::set<std::string> hit;
    bool preserving = true;
    for (const auto& leaf : s.leaves()) {
        const auto& image = map.at(leaf);
        if (!t.is_leaf(image)) preserving = false;
        else hit.insert(image);
    }
    bool bijective = preserving && hit.size() == t.leaves().size() && hit.size() == s.leaves().size();

    // A vertex collapses onto an edge exactly when its output and one of its
    // inputs share an image.
    bool star = true;
    for (const auto& [v, ins] : s.vertex_inputs()) {
        const auto& out_image = map.at(v);
        for (const auto& e : ins)
            if (map.at(e) == out_image && t.is_leaf(out_image)) star = false;
    }
    return {bijective, preserving, star};
}

OmegaInjMorphism parse_morphism(std::string_view description, const Tree& target) {
    std::vector<ElementaryMorphism> reversed;
    Tree current = target;
    std::size_t start = 0;
    while (start <= description.size()) {
        auto end = description.find(';', start);
        if (end == std::string_view::npos) end = description.size();
        std::string token = trim(description.substr(start, end - start));
        start = end + 1;
        if (token.empty()) {
            if (end == description.size()) break;
            throw ParseError("empty morphism step", end);
        }
        auto colon = token.find(':');
        std::string kind = token.substr(0, colon);
        std::string arg = colon == std::string::npos ? std::string() : trim(token.substr(colon + 1));
        ElementaryMorphism step = [&]() {
            if (kind == "inner") return inner_face(current, arg);
            if (kind == "outer-top") return outer_top_face(current, arg);
            if (kind == "outer-root") return outer_root_face(current);
            if (kind == "edge") return edge_inclusion(current, arg);
            if (kind == "iso") {
                auto at = arg.find('@');
                Tree source = parse_tree(arg.substr(0, at));
                EdgeMap map = identity_on(source);
                if (at != std::string::npos) {
                    std::string pairs = arg.substr(at + 1);
                    std::size_t p = 0;
                    while (p <= pairs.size()) {
                        auto q = pairs.find(',', p);
                        if (q == std::string::npos) q = pairs.size();
                        std::string pair = trim(std::string_view(pairs).substr(p, q - p));
                        p = q + 1;
                        auto eq = pair.find('=');
                        if (eq == std::string::npos) throw TreeError("malformed iso rename '" + pair + "'");
                        std::string from = trim(pair.substr(0, eq));
                        if (!source.has_edge(from)) throw TreeError("iso rename of unknown edge '" + from + "'");
                        map[from] = trim(pair.substr(eq + 1));
                    }
                }
                return isomorphism(source, current, std::move(map));
            }
            throw TreeError("unknown morphism step '" + token + "'");
        }();
        current = step.source;
        reversed.push_back(std::move(step));
    }
    std::reverse(reversed.begin(), reversed.end());
    return OmegaInjMorphism(current, target, std::move(reversed));
}

std::string describe(const OmegaInjMorphism& morphism) {
    std::string out;
    const auto& steps = morphism.steps();
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        if (!out.empty()) out += ';';
        out += describe(*it);
    }
    return out;
}

OmegaInjMorphism corolla_inclusion(const Tree& tree, const std::string& vertex) {
    if (!tree.has_vertex(vertex)) throw TreeError("no vertex '" + vertex + "'");
    std::vector<ElementaryMorphism> reversed;
    Tree current = tree;
    while (current.vertex_count() > 1) {
        std::optional<std::string> top;
        for (const auto& u : current.vertices()) {
            if (u == vertex) continue;
            const auto& ins = current.inputs(u);
            if (std::all_of(ins.begin(), ins.end(), [&](const std::string& e) { return current.is_leaf(e); })) {
                top = u;
                break;
            }
        }
        ElementaryMorphism step = top ? outer_top_face(current, *top) : outer_root_face(current);
        current = step.source;
        reversed.push_back(std::move(step));
    }
    std::reverse(reversed.begin(), reversed.end());
    return OmegaInjMorphism(current, tree, std::move(reversed));
}

bool is_linear(const Tree& tree) {
    for (const auto& [v, ins] : tree.vertex_inputs())
        if (ins.size() != 1) return false;
    return true;
}

std::vector<std::string> linear_vertices(const Tree& tree) {
    if (!is_linear(tree)) throw TreeError("tree " + format_tree(tree) + " is not linear");
    std::vector<std::string> out;
    for (std::string v = tree.root(); tree.has_vertex(v); v = tree.inputs(v).front()) out.push_back(v);
    return out;
}

ElementaryMorphism linear_face(const Tree& tree, std::size_t i) {
    auto verts = linear_vertices(tree);
    std::size_t k = verts.size();
    if (k == 0) throw TreeError("the trivial tree has no faces");
    if (i > k) throw TreeError("face index " + std::to_string(i) + " exceeds " + std::to_string(k));
    if (k == 1) return edge_inclusion(tree, i == 0 ? tree.inputs(verts[0]).front() : tree.root());
    if (i == 0) return outer_root_face(tree);
    if (i == k) return outer_top_face(tree, verts[k - 1]);
    return inner_face(tree, verts[i]);
}

}  // namespace dendro
