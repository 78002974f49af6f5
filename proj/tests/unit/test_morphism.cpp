#include "doctest.h"

#include "dendro/morphism.hpp"
#include "dendro/random.hpp"

#include <set>

using namespace dendro;

namespace {

std::vector<std::string> face_names(const Tree& t) {
    std::vector<std::string> out;
    for (const auto& f : elementary_faces(t)) out.push_back(describe(f) + " " + format_tree(f.source));
    return out;
}

// Independent oracle: follow the edge maps step by step.
EdgeMap chase(const OmegaInjMorphism& m) {
    EdgeMap out;
    for (const auto& e : m.source().edges()) {
        std::string cur = e;
        for (const auto& s : m.steps()) cur = s.edge_map.at(cur);
        out[e] = cur;
    }
    return out;
}

}  // namespace

TEST_CASE("faces of small trees") {
    CHECK(face_names(Tree::eta("e")).empty());
    CHECK(face_names(parse_tree("r(a,b)")) == std::vector<std::string>{"edge:r r", "edge:a a", "edge:b b"});
    CHECK(face_names(parse_tree("r(e(l))")) ==
          std::vector<std::string>{"inner:e r(l)", "outer-top:e r(e)", "outer-root e(l)"});
    // Two inner edges at the root: no root face.
    CHECK(face_names(parse_tree("r(e(a),f(b))")) ==
          std::vector<std::string>{"inner:e r(a,f(b))", "inner:f r(e(a),b)", "outer-top:e r(e,f(b))",
                                   "outer-top:f r(e(a),f)"});
}

TEST_CASE("elementary edge maps") {
    Tree t = parse_tree("r(a,e(b,c))");
    auto in = inner_face(t, "e");
    CHECK(in.edge_map == EdgeMap{{"r", "r"}, {"a", "a"}, {"b", "b"}, {"c", "c"}});
    CHECK(in.top == "e");
    CHECK(in.bottom == "r");
    CHECK(in.slot == 1);
    auto root = outer_root_face(parse_tree("r(e(b,c))"));
    CHECK(format_tree(root.source) == "e(b,c)");
    CHECK(edge_inclusion(parse_tree("r(a,b)"), "b").edge_map == EdgeMap{{"b", "b"}});
    CHECK(format_tree(edge_inclusion(parse_tree("r(e(l))"), "l").source) == "l");
    CHECK_THROWS_AS(edge_inclusion(parse_tree("r(a,b)"), "c"), TreeError);
    CHECK_THROWS_AS(inner_face(t, "a"), TreeError);
    CHECK_THROWS_AS(outer_top_face(t, "r"), TreeError);
}

TEST_CASE("isomorphisms must preserve structure") {
    Tree t = parse_tree("r(a,b)");
    auto swap = isomorphism(parse_tree("r(b,a)"), t, {{"r", "r"}, {"a", "a"}, {"b", "b"}});
    CHECK(planar_permutation(swap, "r") == std::vector<std::size_t>{1, 0});
    auto renamed = isomorphism(parse_tree("x(y,z)"), t, {{"x", "r"}, {"y", "a"}, {"z", "b"}});
    CHECK(planar_permutation(renamed, "x") == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_AS(isomorphism(parse_tree("r(a,b)"), t, {{"r", "a"}, {"a", "r"}, {"b", "b"}}), TreeError);
    CHECK_THROWS_AS(isomorphism(parse_tree("r(e(a))"), parse_tree("r(a,b)"), {}), TreeError);
}

TEST_CASE("parsed morphisms compose their steps") {
    Tree l2 = parse_tree("r(e(l))");
    auto m = parse_morphism("inner:e;edge:l", l2);
    CHECK(format_tree(m.source()) == "l");
    CHECK(m.edge_map() == EdgeMap{{"l", "l"}});
    CHECK(describe(m) == "inner:e;edge:l");
    CHECK(parse_morphism("", l2) == OmegaInjMorphism::identity(l2));
    auto iso = parse_morphism("iso:x(y(z))@x=r,y=e,z=l", l2);
    CHECK(iso.edge_map() == EdgeMap{{"x", "r"}, {"y", "e"}, {"z", "l"}});
    CHECK_THROWS(parse_morphism("inner:l", l2));
    CHECK_THROWS(parse_morphism("sideways:e", l2));
}

TEST_CASE("predicates on basic maps") {
    auto p = predicates(parse_morphism("outer-top:r", parse_tree("r(a,b)")));
    CHECK_FALSE(p.leaf_bijective);
    CHECK_FALSE(p.leaf_preserving);
    CHECK(p.star);
    auto q = predicates(parse_morphism("inner:e", parse_tree("r(e(l))")));
    CHECK(q.leaf_bijective);
    CHECK(q.leaf_preserving);
    // The outer root face keeps every leaf.
    auto root = predicates(parse_morphism("outer-root", parse_tree("r(e(a,b))")));
    CHECK(root.leaf_bijective);
    // Including a leaf edge of a corolla sends a leaf to a leaf but misses the others.
    auto leaf = predicates(parse_morphism("edge:a", parse_tree("r(a,b)")));
    CHECK_FALSE(leaf.leaf_bijective);
    CHECK(leaf.leaf_preserving);
}

TEST_CASE("corolla inclusions land on the vertex") {
    Tree t = parse_tree("r(a,e(b,f(c,d)),g)");
    for (const auto& v : t.vertices()) {
        auto m = corolla_inclusion(t, v);
        CHECK(m.source().is_corolla());
        CHECK(m.source().root() == v);
        CHECK(m.source().inputs(v) == t.inputs(v));
        CHECK(m.edge_map() == chase(m));
    }
}

TEST_CASE("linear faces follow the simplicial indexing") {
    Tree l3 = Tree::linear(3);
    CHECK(format_tree(linear_face(l3, 0).source) == "e1(e2(e3))");
    CHECK(format_tree(linear_face(l3, 1).source) == "e0(e2(e3))");
    CHECK(format_tree(linear_face(l3, 2).source) == "e0(e1(e3))");
    CHECK(format_tree(linear_face(l3, 3).source) == "e0(e1(e2))");
    Tree l1 = Tree::linear(1);
    CHECK(format_tree(linear_face(l1, 0).source) == "e1");
    CHECK(format_tree(linear_face(l1, 1).source) == "e0");
    CHECK_THROWS_AS(linear_face(l3, 4), TreeError);
    CHECK(is_linear(Tree::eta("e")));
    CHECK_FALSE(is_linear(parse_tree("r(a,b)")));
}

TEST_CASE("property: composites carry the chased edge map") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Rng rng(mix_seed(11, seed));
        Tree t = random_tree(rng, {6, 3});
        auto kind = seed % 3 == 0 ? ChainKind::faces : seed % 3 == 1 ? ChainKind::faces_and_isos : ChainKind::leaf_bijective;
        auto m = random_chain(rng, t, 1 + seed % 4, kind);
        CAPTURE(describe(m));
        CHECK(m.target() == t);
        CHECK(m.edge_map() == chase(m));
        // Injective on edges.
        std::set<std::string> image;
        for (const auto& [s, e] : m.edge_map()) image.insert(e);
        CHECK(image.size() == m.source().edge_count());
        if (kind == ChainKind::leaf_bijective) CHECK(predicates(m).leaf_bijective);
        // Re-parsing the description reproduces the morphism.
        CHECK(parse_morphism(describe(m), t) == m);
    }
}

TEST_CASE("property: compose agrees with concatenated steps") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(mix_seed(12, seed));
        Tree t = random_tree(rng, {6, 3});
        auto outer = random_chain(rng, t, 2, ChainKind::faces_and_isos);
        auto inner = random_chain(rng, outer.source(), 2, ChainKind::faces_and_isos);
        auto both = compose(outer, inner);
        CHECK(both.source() == inner.source());
        CHECK(both.target() == t);
        EdgeMap expected;
        for (const auto& [s, m] : inner.edge_map()) expected[s] = outer.edge_map().at(m);
        CHECK(both.edge_map() == expected);
    }
}
