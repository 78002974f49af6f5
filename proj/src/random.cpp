#include "dendro/random.hpp"

#include <algorithm>
#include <numeric>

namespace dendro {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

Tree grow_tree(Rng& rng, std::size_t vertices, std::size_t max_arity) {
    std::map<std::string, std::vector<std::string>> inputs;
    std::vector<std::string> open{"t0"};
    std::size_t counter = 0;
    for (std::size_t n = 0; n < vertices && !open.empty(); ++n) {
        std::size_t pick = rng.below(open.size());
        std::string v = open[pick];
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
        std::size_t arity = rng.below(max_arity + 1);
        // Keep growing past early stumps unless the tree is meant to be tiny.
        if (arity == 0 && open.empty() && n + 1 < vertices && rng.chance(0.75)) arity = 1 + rng.below(std::max<std::size_t>(max_arity, 1));
        std::vector<std::string> ins;
        for (std::size_t j = 0; j < arity; ++j) {
            ins.push_back("t" + std::to_string(++counter));
            open.push_back(ins.back());
        }
        inputs.emplace(v, std::move(ins));
    }
    return canonical_names(Tree::from_vertices("t0", std::move(inputs)));
}

}  // namespace

Tree random_tree(Rng& rng, const TreeParams& params) {
    if (params.max_vertices == 0) return Tree::eta("r");
    double roll = rng.uniform();
    if (roll < 0.06) return Tree::eta("r");
    if (roll < 0.14) {
        std::vector<std::string> leaves;
        std::size_t k = rng.below(params.max_arity + 1);
        for (std::size_t j = 1; j <= k; ++j) leaves.push_back("e" + std::to_string(j));
        return Tree::corolla("r", std::move(leaves));
    }
    if (roll < 0.22) return canonical_names(Tree::linear(1 + rng.below(params.max_vertices)));
    return grow_tree(rng, 1 + rng.below(params.max_vertices), params.max_arity);
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    return perm;
}

ElementaryMorphism random_isomorphism(Rng& rng, const Tree& target) {
    const auto& edges = target.edges();
    auto names = edges;
    rng.shuffle(names);
    std::map<std::string, std::string> to_source, to_target;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        to_source[edges[i]] = names[i];
        to_target[names[i]] = edges[i];
    }
    std::map<std::string, std::vector<std::string>> inputs;
    for (const auto& [w, ins] : target.vertex_inputs()) {
        std::vector<std::string> renamed;
        for (const auto& e : ins) renamed.push_back(to_source.at(e));
        rng.shuffle(renamed);
        inputs.emplace(to_source.at(w), std::move(renamed));
    }
    Tree source = Tree::from_vertices(to_source.at(target.root()), std::move(inputs));
    return isomorphism(source, target, std::move(to_target));
}

OmegaInjMorphism random_chain(Rng& rng, const Tree& target, std::size_t depth, ChainKind kind) {
    std::vector<ElementaryMorphism> reversed;
    Tree current = target;
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<ElementaryMorphism> options;
        for (auto& f : elementary_faces(current)) {
            if (kind == ChainKind::leaf_bijective && !predicates(OmegaInjMorphism(f)).leaf_bijective) continue;
            options.push_back(std::move(f));
        }
        bool use_iso = kind != ChainKind::faces && (options.empty() || rng.chance(0.3));
        if (use_iso) options = {random_isomorphism(rng, current)};
        if (options.empty()) break;
        ElementaryMorphism step = std::move(options[rng.below(options.size())]);
        current = step.source;
        reversed.push_back(std::move(step));
    }
    std::reverse(reversed.begin(), reversed.end());
    return OmegaInjMorphism(current, target, std::move(reversed));
}

}  // namespace dendro
