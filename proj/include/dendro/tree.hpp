#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dendro {

class TreeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

bool is_identifier(std::string_view name);

// A finite rooted tree with a planar structure. Edges carry user-visible
// names; a vertex is named by its output edge. Immutable once built.
class Tree {
public:
    // The trivial tree: one edge, no vertices.
    static Tree eta(std::string edge);
    static Tree corolla(std::string root, std::vector<std::string> leaves);
    // Linear tree with k unary vertices, edges e0 (root) .. e<k> (leaf).
    static Tree linear(std::size_t k);

    // Validates every tree invariant; throws TreeError on violation.
    static Tree from_vertices(std::string root,
                              std::map<std::string, std::vector<std::string>> inputs);

    const std::string& root() const { return d_->root; }
    // Edges in planar pre-order, root first.
    const std::vector<std::string>& edges() const { return d_->edges; }
    // Vertices (by output edge) in planar pre-order.
    const std::vector<std::string>& vertices() const { return d_->vertices; }
    const std::map<std::string, std::vector<std::string>>& vertex_inputs() const { return d_->inputs; }

    std::size_t edge_count() const { return d_->edges.size(); }
    std::size_t vertex_count() const { return d_->inputs.size(); }

    bool is_eta() const { return d_->inputs.empty(); }
    bool is_corolla() const { return d_->inputs.size() == 1; }

    bool has_edge(const std::string& e) const { return d_->position.count(e) != 0; }
    bool has_vertex(const std::string& v) const { return d_->inputs.count(v) != 0; }
    const std::vector<std::string>& inputs(const std::string& v) const;
    std::size_t arity(const std::string& v) const { return inputs(v).size(); }

    // The vertex that consumes e, if e is not the root.
    std::optional<std::string> consumer(const std::string& e) const;
    // Position of e within its consumer's planar input list.
    std::size_t slot(const std::string& e) const;

    bool is_leaf(const std::string& e) const { return has_edge(e) && !has_vertex(e); }
    bool is_inner(const std::string& e) const { return has_vertex(e) && e != d_->root; }
    std::vector<std::string> leaves() const;
    std::vector<std::string> inner_edges() const;
    std::optional<std::string> root_vertex() const;

    bool operator==(const Tree& other) const {
        return d_ == other.d_ || (d_->root == other.d_->root && d_->inputs == other.d_->inputs);
    }

private:
    struct Data {
        std::string root;
        std::map<std::string, std::vector<std::string>> inputs;
        std::vector<std::string> edges;
        std::vector<std::string> vertices;
        std::map<std::string, std::size_t> position;
        std::map<std::string, std::string> consumer;
    };

    explicit Tree(std::shared_ptr<const Data> data) : d_(std::move(data)) {}
    static void index(Data& d);

    // Shared and immutable, so copies are cheap.
    std::shared_ptr<const Data> d_;
};

// tree := edge | edge "(" [ tree ("," tree)* ] ")"
Tree parse_tree(std::string_view text);
std::string format_tree(const Tree& tree);

// Result of contracting an inner edge. The merged vertex keeps the name of
// `bottom`, since it has the same output edge.
struct Contraction {
    Tree tree;
    std::string top;      // vertex whose output is the contracted edge
    std::string bottom;   // vertex consuming the contracted edge
    std::size_t slot;     // position (0-based) of the contracted edge in in(bottom)
};

Contraction contract_inner_edge(const Tree& tree, const std::string& edge);
Tree chop_top_vertex(const Tree& tree, const std::string& vertex);
Tree chop_root_vertex(const Tree& tree);

// Renames edges through `rename`, which must be injective and total on edges.
Tree relabel(const Tree& tree, const std::map<std::string, std::string>& rename);

// Every planar tree with at most max_vertices vertices and arities <= max_arity,
// edges named in pre-order as r, e1, e2, ...
std::vector<Tree> enumerate_trees(std::size_t max_vertices, std::size_t max_arity);

// Renames edges in pre-order as r, e1, e2, ...
Tree canonical_names(const Tree& tree);

}  // namespace dendro
