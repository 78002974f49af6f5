#include "doctest.h"

#include "dendro/tree.hpp"

#include <set>
#include <vector>

using namespace dendro;

namespace {

// Shapes with n vertices and arity <= a satisfy F = x * sum_k (1 + F)^k.
std::vector<long> shape_counts(std::size_t n, std::size_t a) {
    std::vector<long> f(n + 1, 0);
    for (std::size_t round = 0; round < n; ++round) {
        std::vector<long> one_plus = f;
        one_plus[0] += 1;
        std::vector<long> power(n + 1, 0), sum(n + 1, 0);
        power[0] = 1;
        for (std::size_t k = 0; k <= a; ++k) {
            for (std::size_t i = 0; i <= n; ++i) sum[i] += power[i];
            std::vector<long> next(n + 1, 0);
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t j = 0; i + j <= n; ++j) next[i + j] += power[i] * one_plus[j];
            power = next;
        }
        std::vector<long> g(n + 1, 0);
        for (std::size_t i = 1; i <= n; ++i) g[i] = sum[i - 1];
        f = g;
    }
    return f;
}

}  // namespace

TEST_CASE("terms round trip through the parser") {
    for (const char* term : {"e", "r(a,b)", "r(e(l))", "r()", "r(e(a,b),c)", "root(x1(),x_2(y),z)"})
        CHECK(format_tree(parse_tree(term)) == term);
    CHECK(format_tree(parse_tree("  r ( a , b ) ")) == "r(a,b)");
}

TEST_CASE("parser rejects malformed terms") {
    CHECK_THROWS_AS(parse_tree("r(a,a)"), ParseError);
    CHECK_THROWS_AS(parse_tree("r(a"), ParseError);
    CHECK_THROWS_AS(parse_tree("r(a,)"), ParseError);
    CHECK_THROWS_AS(parse_tree("1r"), ParseError);
    CHECK_THROWS_AS(parse_tree("r(a) b"), ParseError);
    CHECK_THROWS_AS(parse_tree(""), ParseError);
}

TEST_CASE("from_vertices rejects non-trees") {
    CHECK_THROWS_AS(Tree::from_vertices("r", {{"r", {"a"}}, {"a", {"r"}}}), TreeError);
    CHECK_THROWS_AS(Tree::from_vertices("r", {{"r", {"a"}}, {"x", {"y"}}}), TreeError);
    CHECK_THROWS_AS(Tree::from_vertices("r", {{"r", {"a", "a"}}}), TreeError);
    CHECK_THROWS_AS(Tree::from_vertices("r", {{"r", {"a"}}, {"a", {"b"}}, {"b", {"a"}}}), TreeError);
}

TEST_CASE("edge classification on a branching tree") {
    Tree t = parse_tree("r(e(a,b),c)");
    CHECK(t.edges() == std::vector<std::string>{"r", "e", "a", "b", "c"});
    CHECK(t.vertices() == std::vector<std::string>{"r", "e"});
    CHECK(t.leaves() == std::vector<std::string>{"a", "b", "c"});
    CHECK(t.inner_edges() == std::vector<std::string>{"e"});
    CHECK(t.consumer("a") == std::optional<std::string>("e"));
    CHECK_FALSE(t.consumer("r"));
    CHECK(t.slot("c") == 1);
    CHECK(t.root_vertex() == std::optional<std::string>("r"));
    CHECK_FALSE(Tree::eta("x").root_vertex());
    CHECK(Tree::eta("x").leaves() == std::vector<std::string>{"x"});
}

TEST_CASE("linear and corolla constructors") {
    CHECK(format_tree(Tree::linear(3)) == "e0(e1(e2(e3)))");
    CHECK(format_tree(Tree::linear(0)) == "e0");
    CHECK(format_tree(Tree::corolla("r", {"a", "b"})) == "r(a,b)");
    CHECK(format_tree(Tree::corolla("r", {})) == "r()");
}

TEST_CASE("inner edge contraction splices at the slot") {
    auto c = contract_inner_edge(parse_tree("r(a,e(b,f(x)),c)"), "e");
    CHECK(format_tree(c.tree) == "r(a,b,f(x),c)");
    CHECK(c.top == "e");
    CHECK(c.bottom == "r");
    CHECK(c.slot == 1);
    auto stump = contract_inner_edge(parse_tree("r(a,e(),c)"), "e");
    CHECK(format_tree(stump.tree) == "r(a,c)");
    CHECK_THROWS_AS(contract_inner_edge(parse_tree("r(a)"), "a"), TreeError);
    CHECK_THROWS_AS(contract_inner_edge(parse_tree("r(a)"), "r"), TreeError);
}

TEST_CASE("outer chops") {
    CHECK(format_tree(chop_top_vertex(parse_tree("r(e(l))"), "e")) == "r(e)");
    CHECK(format_tree(chop_top_vertex(parse_tree("r(a,b)"), "r")) == "r");
    CHECK(format_tree(chop_top_vertex(parse_tree("r(e(),c)"), "e")) == "r(e,c)");
    CHECK_THROWS_AS(chop_top_vertex(parse_tree("r(e(l))"), "r"), TreeError);
    CHECK(format_tree(chop_root_vertex(parse_tree("r(c,e(a,b))"))) == "e(a,b)");
    CHECK_THROWS_AS(chop_root_vertex(parse_tree("r(e(a),f(b))")), TreeError);
    CHECK_THROWS_AS(chop_root_vertex(parse_tree("r(a,b)")), TreeError);
    CHECK_THROWS_AS(chop_root_vertex(Tree::eta("r")), TreeError);
}

TEST_CASE("relabel and canonical names") {
    Tree t = parse_tree("x(y(z),w)");
    CHECK(format_tree(canonical_names(t)) == "r(e1(e2),e3)");
    CHECK(format_tree(relabel(t, {{"x", "a"}, {"y", "b"}, {"z", "c"}, {"w", "d"}})) == "a(b(c),d)");
    CHECK_THROWS_AS(relabel(t, {{"x", "a"}, {"y", "a"}, {"z", "c"}, {"w", "d"}}), TreeError);
    CHECK_THROWS_AS(relabel(t, {{"x", "a"}}), TreeError);
}

TEST_CASE("enumeration matches the shape generating function") {
    for (std::size_t a : {1u, 2u, 3u}) {
        for (std::size_t n : {1u, 2u, 3u, 4u, 5u}) {
            auto f = shape_counts(n, a);
            long expected = 1;  // the trivial tree
            for (std::size_t i = 1; i <= n; ++i) expected += f[i];
            auto trees = enumerate_trees(n, a);
            CAPTURE(n);
            CAPTURE(a);
            CHECK(static_cast<long>(trees.size()) == expected);
        }
    }
    // Arity 1: the linear tree and the one capped by a stump.
    CHECK(shape_counts(4, 1)[4] == 2);
}

TEST_CASE("enumerated trees are distinct and bounded") {
    auto trees = enumerate_trees(4, 2);
    std::set<std::string> terms;
    for (const auto& t : trees) {
        terms.insert(format_tree(t));
        CHECK(t.vertex_count() <= 4);
        for (const auto& v : t.vertices()) CHECK(t.arity(v) <= 2);
    }
    CHECK(terms.size() == trees.size());
}
