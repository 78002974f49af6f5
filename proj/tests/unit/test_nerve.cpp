#include "doctest.h"

#include "dendro/nerve.hpp"
#include "dendro/random.hpp"

using namespace dendro;

namespace {

using Q = Rational;

NervePoint<Q> nrv(const char* text) { return parse_nerve_point<Q>(text, 2); }

const char* l2_text =
    "# dim 2\nr(e(l))\ncolor r 1\ncolor e 1\ncolor l 2\nvertex r:\ndisk 1/2 1/10 0\nvertex e:\npoint 1/5 0\n";

}  // namespace

TEST_CASE("nerve text format round trips") {
    auto p = nrv(l2_text);
    CHECK(format_nerve_point(p) == l2_text);
    // Missing color lines default to the X coloring.
    CHECK(nrv("r(e(l))\nvertex r:\ndisk 1/2 1/10 0\nvertex e:\npoint 1/5 0\n") == p);
    CHECK_THROWS(nrv("r(a)\ncolor r 1\ncolor a 1\nvertex r:\npoint 0 0\n"));
    CHECK_THROWS(nrv("r(a)\ncolor q 1\n"));
    CHECK_THROWS(nrv("r(a)\nvertex r:\npoint 0 0\nvertex r:\n"));
    CHECK_THROWS(nrv("# dim 2\n"));
}

TEST_CASE("membership by hand") {
    CHECK(membership(nrv("r(a,b)\nvertex r:\npoint 1/4 0\npoint -1/4 0\n")) == Membership{true, true, true});
    auto disks = nrv("r(a,b)\ncolor a 1\ncolor b 1\nvertex r:\ndisk 1/4 1/2 0\ndisk 1/4 -1/2 0\n");
    CHECK(membership(disks) == Membership{false, true, false});
    CHECK(membership(trivial_point<Q>(Tree::eta("e"), 2)) == Membership{true, false, true});
    // A point-colored inner edge carries the unit of O(2; 2).
    auto mixed = nrv("r(e(l))\ncolor e 2\nvertex r:\npoint 0 0\nvertex e:\n");
    CHECK(membership(mixed) == Membership{true, false, false});
}

TEST_CASE("pullbacks by hand") {
    auto p = nrv(l2_text);
    CHECK(format_nerve_point(pullback(parse_morphism("inner:e", p.tree), p)) ==
          "# dim 2\nr(l)\ncolor r 1\ncolor l 2\nvertex r:\npoint 1/5 0\n");
    CHECK(format_nerve_point(pullback(parse_morphism("outer-top:e", p.tree), p)) ==
          "# dim 2\nr(e)\ncolor r 1\ncolor e 1\nvertex r:\ndisk 1/2 1/10 0\n");
    CHECK(format_nerve_point(pullback(parse_morphism("outer-root", p.tree), p)) ==
          "# dim 2\ne(l)\ncolor e 1\ncolor l 2\nvertex e:\npoint 1/5 0\n");
    auto c = nrv("r(a,b)\nvertex r:\npoint 1/4 0\npoint -1/4 0\n");
    auto swapped = pullback(parse_morphism("iso:r(b,a)", c.tree), c);
    CHECK(*swapped.operations.at("r") == parse_configuration<Q>("point -1/4 0\npoint 1/4 0", 2));
}

TEST_CASE("hat and the shift operator by hand") {
    auto p = nrv(l2_text);
    auto top = hat(parse_morphism("outer-top:e", p.tree), p);
    CHECK(format_nerve_point(top) == "# dim 2\nr(e)\ncolor r 1\ncolor e 2\nvertex r:\npoint 1/10 0\n");
    auto eta = hat(parse_morphism("inner:e;edge:l", p.tree), p);
    CHECK(eta == trivial_point<Q>(Tree::eta("l"), 2));
    CHECK(hat(OmegaInjMorphism::identity(p.tree), p) == p);
    auto disks = nrv("r(e(l))\ncolor l 1\nvertex r:\ndisk 1/2 1/10 0\nvertex e:\ndisk 1/4 0 0\n");
    CHECK_THROWS_AS(hat(parse_morphism("inner:e", p.tree), disks), std::invalid_argument);
    auto shifted = shift_operator(disks);
    CHECK(shifted.coloring.at("l") == Color::point);
    CHECK(*shifted.operations.at("e") == parse_configuration<Q>("point 0 0", 2));
    CHECK(shift_operator(shifted) == shifted);
    CHECK_THROWS(shift_operator(trivial_point<Q>(Tree::eta("e"), 2)));
}

TEST_CASE("Segal components by hand") {
    auto p = nrv(l2_text);
    auto parts = segal_map(p);
    REQUIRE(parts.size() == 2);
    CHECK(format_nerve_point(parts[0]) == "# dim 2\nr(e)\ncolor r 1\ncolor e 2\nvertex r:\npoint 1/10 0\n");
    CHECK(format_nerve_point(parts[1]) == "# dim 2\ne(l)\ncolor e 1\ncolor l 2\nvertex e:\npoint 1/5 0\n");
    CHECK(segal_factored(p) == parts);
    auto c = nrv("r(a,b)\nvertex r:\npoint 1/4 0\npoint -1/4 0\n");
    CHECK(segal_map(c) == std::vector{c});
}

TEST_CASE("linear codec and faces by hand") {
    auto p = nrv(l2_text);
    auto list = encode_linear(p);
    CHECK(format_linear_list(list) == "# dim 2\ndisk 1/2 1/10 0\npoint 1/5 0\n");
    CHECK(format_nerve_point(decode_linear(list)) ==
          "# dim 2\ne0(e1(e2))\ncolor e0 1\ncolor e1 1\ncolor e2 2\nvertex e0:\ndisk 1/2 1/10 0\nvertex e1:\npoint 1/5 0\n");
    auto one = parse_linear_list<Q>("point 1/3 0\n", 2);
    CHECK(one.arity() == 1);
    CHECK(face_d(0, one).arity() == 0);
    CHECK(face_d(1, one).arity() == 0);
    // d0 drops a, d1 evaluates a at P, d2 evaluates a at the origin.
    CHECK(format_linear_list(face_d(0, list)) == "# dim 2\npoint 1/5 0\n");
    CHECK(format_linear_list(face_d(1, list)) == "# dim 2\npoint 1/5 0\n");
    CHECK(format_linear_list(face_d(2, list)) == "# dim 2\npoint 1/10 0\n");
    CHECK_THROWS(face_d(3, list));
    CHECK_THROWS(encode_linear(nrv("r(a,b)\nvertex r:\npoint 1/4 0\npoint -1/4 0\n")));
    CHECK_THROWS(parse_linear_list<Q>("point 0 0\ndisk 1/2 0 0\n", 2));
}

TEST_CASE("property: pullback is contravariantly functorial") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(mix_seed(41, seed));
        Tree t = random_tree(rng, {6, 3});
        auto p = random_nerve_point<Q>(rng, t, 1 + seed % 3);
        REQUIRE(is_valid(p));
        auto outer = random_chain(rng, t, 2, ChainKind::faces_and_isos);
        auto inner = random_chain(rng, outer.source(), 2, ChainKind::faces_and_isos);
        auto direct = pullback(compose(outer, inner), p);
        CHECK(direct == pullback(inner, pullback(outer, p)));
        CHECK(is_valid(direct));
        CHECK(parse_nerve_point<Q>(format_nerve_point(p), 1) == p);
    }
}

TEST_CASE("property: hat lands in X and the codec round trips") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(mix_seed(42, seed));
        Tree t = random_tree(rng, {6, 3});
        auto x = random_x_point<Q>(rng, t, 2);
        auto alpha = random_chain(rng, t, 1 + seed % 3, ChainKind::faces_and_isos);
        auto h = hat(alpha, x);
        CHECK(h.tree == alpha.source());
        CHECK(membership(h).in_X);
        CHECK(is_valid(h));

        std::size_t k = seed % 5;
        auto list = random_linear_list<Q>(rng, k, 2);
        CHECK(encode_linear(decode_linear(list)) == list);
    }
}

TEST_CASE("property: linear faces match hat along the tree faces") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(mix_seed(43, seed));
        std::size_t k = 1 + seed % 5;
        auto list = random_linear_list<Q>(rng, k, 1 + seed % 3);
        auto x = decode_linear(list);
        for (std::size_t i = 0; i <= k; ++i) {
            CAPTURE(k);
            CAPTURE(i);
            auto via_tree = encode_linear(hat(OmegaInjMorphism(linear_face(x.tree, i)), x));
            CHECK(via_tree == face_d(i, list));
        }
        for (std::size_t j = 1; j <= k && k >= 2; ++j)
            for (std::size_t i = 0; i < j; ++i)
                CHECK(face_d(i, face_d(j, list)) == face_d(j - 1, face_d(i, list)));
    }
}
