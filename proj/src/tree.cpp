#include "dendro/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace dendro {

bool is_identifier(std::string_view name) {
    if (name.empty()) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    if (!alpha(name.front())) return false;
    return std::all_of(name.begin() + 1, name.end(),
                       [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

Tree Tree::eta(std::string edge) { return from_vertices(std::move(edge), {}); }

Tree Tree::corolla(std::string root, std::vector<std::string> leaves) {
    std::map<std::string, std::vector<std::string>> inputs;
    inputs.emplace(root, std::move(leaves));
    return from_vertices(std::move(root), std::move(inputs));
}

Tree Tree::linear(std::size_t k) {
    std::map<std::string, std::vector<std::string>> inputs;
    for (std::size_t i = 0; i < k; ++i)
        inputs["e" + std::to_string(i)] = {"e" + std::to_string(i + 1)};
    return from_vertices("e0", std::move(inputs));
}

Tree Tree::from_vertices(std::string root, std::map<std::string, std::vector<std::string>> inputs) {
    auto d = std::make_shared<Data>();
    d->root = std::move(root);
    d->inputs = std::move(inputs);
    if (!is_identifier(d->root)) throw TreeError("invalid edge name '" + d->root + "'");
    for (const auto& [v, ins] : d->inputs) {
        for (const auto& e : ins) {
            if (!is_identifier(e)) throw TreeError("invalid edge name '" + e + "'");
            if (e == d->root) throw TreeError("root edge '" + e + "' is an input of vertex " + v);
            if (!d->consumer.emplace(e, v).second)
                throw TreeError("edge '" + e + "' is an input more than once");
        }
    }
    for (const auto& [v, ins] : d->inputs) {
        if (v != d->root && !d->consumer.count(v))
            throw TreeError("vertex '" + v + "' is not connected to the root");
    }
    index(*d);
    std::size_t expected = 1;
    for (const auto& [v, ins] : d->inputs) expected += ins.size();
    if (d->edges.size() != expected || d->position.size() != expected)
        throw TreeError("vertex-edge incidence is not a rooted tree");
    return Tree(std::move(d));
}

void Tree::index(Data& d) {
    // Iterative pre-order walk; a cycle would revisit an edge.
    std::vector<std::string> stack{d.root};
    while (!stack.empty()) {
        std::string e = std::move(stack.back());
        stack.pop_back();
        if (!d.position.emplace(e, d.edges.size()).second)
            throw TreeError("cycle through edge '" + e + "'");
        d.edges.push_back(e);
        if (auto it = d.inputs.find(e); it != d.inputs.end()) {
            d.vertices.push_back(e);
            for (auto c = it->second.rbegin(); c != it->second.rend(); ++c) stack.push_back(*c);
        }
    }
}

const std::vector<std::string>& Tree::inputs(const std::string& v) const {
    auto it = d_->inputs.find(v);
    if (it == d_->inputs.end()) throw TreeError("no vertex with output '" + v + "'");
    return it->second;
}

std::optional<std::string> Tree::consumer(const std::string& e) const {
    if (auto it = d_->consumer.find(e); it != d_->consumer.end()) return it->second;
    return std::nullopt;
}

std::size_t Tree::slot(const std::string& e) const {
    auto c = consumer(e);
    if (!c) throw TreeError("edge '" + e + "' is not an input of any vertex");
    const auto& ins = d_->inputs.at(*c);
    return static_cast<std::size_t>(std::find(ins.begin(), ins.end(), e) - ins.begin());
}

std::vector<std::string> Tree::leaves() const {
    std::vector<std::string> out;
    for (const auto& e : d_->edges)
        if (!d_->inputs.count(e)) out.push_back(e);
    return out;
}

std::vector<std::string> Tree::inner_edges() const {
    std::vector<std::string> out;
    for (const auto& e : d_->edges)
        if (is_inner(e)) out.push_back(e);
    return out;
}

std::optional<std::string> Tree::root_vertex() const {
    if (d_->inputs.count(d_->root)) return d_->root;
    return std::nullopt;
}

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view text) : text_(text) {}

    Tree parse() {
        skip_space();
        std::string root = parse_subtree();
        skip_space();
        if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return Tree::from_vertices(std::move(root), std::move(inputs_));
    }

private:
    std::string parse_subtree() {
        std::size_t start = pos_;
        std::string edge = parse_identifier();
        if (!seen_.insert(edge).second) throw ParseError("duplicate edge name '" + edge + "'", start);
        skip_space();
        if (peek() != '(') return edge;
        ++pos_;
        std::vector<std::string> children;
        skip_space();
        if (peek() == ')') {
            ++pos_;
        } else {
            for (;;) {
                skip_space();
                children.push_back(parse_subtree());
                skip_space();
                char c = peek();
                if (c == ',') {
                    ++pos_;
                } else if (c == ')') {
                    ++pos_;
                    break;
                } else {
                    throw ParseError(c ? "expected ',' or ')'" : "unterminated '('", pos_);
                }
            }
        }
        inputs_.emplace(edge, std::move(children));
        return edge;
    }

    std::string parse_identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        auto name = text_.substr(start, pos_ - start);
        if (!is_identifier(name)) throw ParseError("expected edge name", start);
        return std::string(name);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::set<std::string> seen_;
    std::map<std::string, std::vector<std::string>> inputs_;
};

void format_into(const Tree& tree, const std::string& edge, std::string& out) {
    out += edge;
    if (!tree.has_vertex(edge)) return;
    out += '(';
    bool first = true;
    for (const auto& child : tree.inputs(edge)) {
        if (!first) out += ',';
        first = false;
        format_into(tree, child, out);
    }
    out += ')';
}

}  // namespace

Tree parse_tree(std::string_view text) { return TermParser(text).parse(); }

std::string format_tree(const Tree& tree) {
    std::string out;
    format_into(tree, tree.root(), out);
    return out;
}

Contraction contract_inner_edge(const Tree& tree, const std::string& edge) {
    if (!tree.is_inner(edge)) throw TreeError("edge '" + edge + "' is not an inner edge");
    std::string bottom = *tree.consumer(edge);
    std::size_t slot = tree.slot(edge);
    auto inputs = tree.vertex_inputs();
    const auto spliced_in = inputs.at(edge);
    auto& target = inputs.at(bottom);
    target.erase(target.begin() + static_cast<std::ptrdiff_t>(slot));
    target.insert(target.begin() + static_cast<std::ptrdiff_t>(slot), spliced_in.begin(), spliced_in.end());
    inputs.erase(edge);
    return {Tree::from_vertices(tree.root(), std::move(inputs)), edge, bottom, slot};
}

Tree chop_top_vertex(const Tree& tree, const std::string& vertex) {
    const auto& ins = tree.inputs(vertex);
    for (const auto& e : ins)
        if (!tree.is_leaf(e)) throw TreeError("vertex '" + vertex + "' has non-leaf input '" + e + "'");
    if (tree.is_corolla()) return Tree::eta(tree.root());
    auto inputs = tree.vertex_inputs();
    inputs.erase(vertex);
    return Tree::from_vertices(tree.root(), std::move(inputs));
}

Tree chop_root_vertex(const Tree& tree) {
    auto rv = tree.root_vertex();
    if (!rv) throw TreeError("the trivial tree has no root vertex");
    std::vector<std::string> inner;
    for (const auto& e : tree.inputs(*rv))
        if (tree.is_inner(e)) inner.push_back(e);
    if (inner.size() != 1)
        throw TreeError("root vertex has " + std::to_string(inner.size()) + " inner inputs, expected exactly one");
    auto inputs = tree.vertex_inputs();
    inputs.erase(*rv);
    return Tree::from_vertices(inner.front(), std::move(inputs));
}

Tree relabel(const Tree& tree, const std::map<std::string, std::string>& rename) {
    auto name = [&](const std::string& e) {
        auto it = rename.find(e);
        if (it == rename.end()) throw TreeError("relabeling is not defined on edge '" + e + "'");
        return it->second;
    };
    std::map<std::string, std::vector<std::string>> inputs;
    for (const auto& [v, ins] : tree.vertex_inputs()) {
        std::vector<std::string> renamed;
        renamed.reserve(ins.size());
        for (const auto& e : ins) renamed.push_back(name(e));
        if (!inputs.emplace(name(v), std::move(renamed)).second)
            throw TreeError("relabeling is not injective");
    }
    Tree out = Tree::from_vertices(name(tree.root()), std::move(inputs));
    if (out.edge_count() != tree.edge_count()) throw TreeError("relabeling is not injective");
    return out;
}

Tree canonical_names(const Tree& tree) {
    std::map<std::string, std::string> rename;
    const auto& edges = tree.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        rename[edges[i]] = i == 0 ? std::string("r") : "e" + std::to_string(i);
    return relabel(tree, rename);
}

namespace {

// A planar shape: one vertex with a child slot per input; nullopt is a leaf.
struct Shape {
    std::vector<std::optional<std::size_t>> children;  // index into the shape pool
};

}  // namespace

std::vector<Tree> enumerate_trees(std::size_t max_vertices, std::size_t max_arity) {
    std::vector<Shape> pool;
    std::vector<std::vector<std::size_t>> by_size(max_vertices + 1);

    // Fill slots left to right; `remaining` vertices still to distribute.
    std::function<void(std::size_t, std::size_t, std::vector<std::optional<std::size_t>>&)> fill;
    fill = [&](std::size_t slots, std::size_t remaining, std::vector<std::optional<std::size_t>>& acc) {
        if (acc.size() == slots) {
            if (remaining == 0) pool.push_back({acc});
            return;
        }
        acc.push_back(std::nullopt);
        fill(slots, remaining, acc);
        acc.pop_back();
        for (std::size_t m = 1; m <= remaining; ++m) {
            for (std::size_t id : by_size[m]) {
                acc.push_back(id);
                fill(slots, remaining - m, acc);
                acc.pop_back();
            }
        }
    };
    for (std::size_t n = 1; n <= max_vertices; ++n) {
        for (std::size_t k = 0; k <= max_arity; ++k) {
            std::size_t before = pool.size();
            std::vector<std::optional<std::size_t>> acc;
            fill(k, n - 1, acc);
            for (std::size_t id = before; id < pool.size(); ++id) by_size[n].push_back(id);
        }
    }

    std::vector<Tree> out;
    out.push_back(Tree::eta("r"));
    for (std::size_t n = 1; n <= max_vertices; ++n) {
        for (std::size_t id : by_size[n]) {
            std::map<std::string, std::vector<std::string>> inputs;
            std::size_t counter = 0;
            std::function<void(const std::string&, std::size_t)> build = [&](const std::string& out_edge,
                                                                             std::size_t shape) {
                std::vector<std::string> ins;
                std::vector<std::pair<std::string, std::size_t>> subtrees;
                for (const auto& child : pool[shape].children) {
                    std::string name = "e" + std::to_string(++counter);
                    ins.push_back(name);
                    if (child) subtrees.emplace_back(name, *child);
                }
                inputs.emplace(out_edge, std::move(ins));
                for (const auto& [name, sub] : subtrees) build(name, sub);
            };
            build("r", id);
            out.push_back(canonical_names(Tree::from_vertices("r", std::move(inputs))));
        }
    }
    return out;
}

}  // namespace dendro
