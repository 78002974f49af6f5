#pragma once

#include "dendro/tree.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dendro {

using EdgeMap = std::map<std::string, std::string>;

enum class StepKind { inner_face, outer_top_face, outer_root_face, edge_inclusion, isomorphism };

// One generator of the injective tree category: a face map or an isomorphism
// source -> target, together with its action on edges.
struct ElementaryMorphism {
    StepKind kind;
    std::string edge;  // contracted edge, chopped vertex, or included edge
    Tree source;
    Tree target;
    EdgeMap edge_map;  // source edge -> target edge

    // Inner faces only: the merged pair and the splice position.
    std::string top;
    std::string bottom;
    std::size_t slot = 0;
};

ElementaryMorphism inner_face(const Tree& target, const std::string& edge);
ElementaryMorphism outer_top_face(const Tree& target, const std::string& vertex);
ElementaryMorphism outer_root_face(const Tree& target);
ElementaryMorphism edge_inclusion(const Tree& target, const std::string& edge);
// Throws TreeError unless `map` is a root-, leaf- and incidence-preserving bijection.
ElementaryMorphism isomorphism(const Tree& source, const Tree& target, EdgeMap map);

// For an isomorphism step and a source vertex v: the permutation p with
// in_target(map(v))[p[j]] = map(in_source(v)[j]).
std::vector<std::size_t> planar_permutation(const ElementaryMorphism& iso, const std::string& vertex);

std::string describe(const ElementaryMorphism& step);

// A composable chain of elementary morphisms, listed from source to target.
class OmegaInjMorphism {
public:
    static OmegaInjMorphism identity(const Tree& tree);
    explicit OmegaInjMorphism(ElementaryMorphism step);
    OmegaInjMorphism(Tree source, Tree target, std::vector<ElementaryMorphism> steps);

    const Tree& source() const { return source_; }
    const Tree& target() const { return target_; }
    const std::vector<ElementaryMorphism>& steps() const { return steps_; }
    const EdgeMap& edge_map() const { return edge_map_; }

    // Morphisms are equal when source, target and edge action agree.
    bool operator==(const OmegaInjMorphism& other) const {
        return source_ == other.source_ && target_ == other.target_ && edge_map_ == other.edge_map_;
    }

private:
    Tree source_;
    Tree target_;
    std::vector<ElementaryMorphism> steps_;
    EdgeMap edge_map_;
};

// outer ∘ inner; requires inner.target() == outer.source().
OmegaInjMorphism compose(const OmegaInjMorphism& outer, const OmegaInjMorphism& inner);

// Inner faces, outer top faces, and the root face; for corollas the edge
// inclusions instead. Empty for the trivial tree.
std::vector<ElementaryMorphism> elementary_faces(const Tree& tree);

struct MorphismPredicates {
    bool leaf_bijective;
    bool leaf_preserving;  // leaves of the source land on leaves of the target
    bool star;             // no source vertex is sent to a leaf edge
};

MorphismPredicates predicates(const OmegaInjMorphism& morphism);

// Steps separated by ';', read from the given target toward the source:
//   inner:<edge>  outer-top:<vertex>  outer-root  edge:<edge>
//   iso:<source-term>[@<src>=<tgt>,...]   (unlisted edges map by name)
OmegaInjMorphism parse_morphism(std::string_view description, const Tree& target);
std::string describe(const OmegaInjMorphism& morphism);

// The face chain C_v -> T for the vertex v (top chops first, then root chops).
OmegaInjMorphism corolla_inclusion(const Tree& tree, const std::string& vertex);

// Linear trees: every vertex unary. The trivial tree is linear of length 0.
bool is_linear(const Tree& tree);
// Vertices of a linear tree from the root upward.
std::vector<std::string> linear_vertices(const Tree& tree);
// The elementary face of a linear tree with k vertices playing the role of
// the semi-simplicial face d_i, 0 <= i <= k.
ElementaryMorphism linear_face(const Tree& tree, std::size_t i);

}  // namespace dendro
