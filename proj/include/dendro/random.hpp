#pragma once

#include "dendro/configuration.hpp"
#include "dendro/morphism.hpp"
#include "dendro/nerve.hpp"
#include "dendro/tree.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace dendro {

// Seeded source of randomness. Draws are derived from raw 64-bit engine
// output so sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform on {0, .., n - 1}.
    std::size_t below(std::size_t n) {
        if (n == 0) throw std::invalid_argument("below(0)");
        return static_cast<std::size_t>(engine_() % n);
    }
    bool chance(double p) { return uniform() < p; }
    std::uint64_t next() { return engine_(); }

    template <class T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

// Per-case seed derived from a suite seed and a case index (splitmix64).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

struct TreeParams {
    std::size_t max_vertices = 8;
    std::size_t max_arity = 4;
};

// A random planar tree, edges named r, e1, e2, ... in pre-order. The trivial
// tree, corollas, linear trees and stumps are drawn with forced probability.
Tree random_tree(Rng& rng, const TreeParams& params = {});

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n);

// A random isomorphism onto `target`: shuffled planar orders and permuted names.
ElementaryMorphism random_isomorphism(Rng& rng, const Tree& target);

enum class ChainKind { faces, faces_and_isos, leaf_bijective };

// A composable chain of `depth` elementary steps ending at `target` (shorter
// if the tree runs out of faces).
OmegaInjMorphism random_chain(Rng& rng, const Tree& target, std::size_t depth, ChainKind kind);

// Grid for rational coordinates sampled from doubles.
inline constexpr long coordinate_grid = 1000;
inline constexpr long radius_grid = 10000;

namespace detail {

template <class S>
S sample_scalar(double value, long grid) {
    if constexpr (ScalarTraits<S>::exact) return snap_to_grid(value, grid);
    else return value;
}

template <class S>
Vec<double> as_doubles(const Vec<S>& v) {
    Vec<double> out;
    for (const auto& c : v) out.push_back(ScalarTraits<S>::to_double(c));
    return out;
}

}  // namespace detail

// A valid configuration with the given colors: entries are placed in order,
// centers by rejection in the ball of radius `scale`, each disk taking a
// uniform fraction (0, 1/2] of its clearance.
template <class S>
Configuration<S> random_configuration(Rng& rng, const ColorList& colors, std::size_t dim, double scale = 1.0) {
    constexpr int max_attempts = 200;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Entry<S>> entries;
        std::vector<std::pair<Vec<double>, double>> placed;  // center, radius (0 for points)
        bool ok = true;
        for (Color c : colors) {
            Vec<S> center;
            Vec<double> approx;
            double clearance = 0.0;
            int tries = 0;
            for (; tries < 1000; ++tries) {
                Vec<double> raw(dim);
                double norm2 = 0.0;
                for (auto& x : raw) {
                    x = rng.uniform(-scale, scale);
                    norm2 += x * x;
                }
                if (norm2 >= scale * scale) continue;
                center.clear();
                for (double x : raw) center.push_back(detail::sample_scalar<S>(x, coordinate_grid));
                approx = detail::as_doubles(center);
                clearance = 1.0 - std::sqrt(squared_norm(approx));
                for (const auto& [q, r] : placed) clearance = std::min(clearance, std::sqrt(squared_distance(approx, q)) - r);
                if (clearance > 1e-6) break;
            }
            if (tries == 1000) {
                ok = false;
                break;
            }
            if (c == Color::point) {
                entries.push_back(Point<S>{center});
                placed.emplace_back(approx, 0.0);
            } else {
                double fraction = 0.5 * (1.0 - rng.uniform());  // (0, 1/2]
                S radius = detail::sample_scalar<S>(fraction * clearance, radius_grid);
                if (!(radius > 0)) {
                    ok = false;
                    break;
                }
                entries.push_back(Disk<S>{radius, center});
                placed.emplace_back(approx, ScalarTraits<S>::to_double(radius));
            }
        }
        if (!ok) continue;
        Configuration<S> x(dim, std::move(entries));
        if (is_valid(x)) return x;
    }
    throw std::runtime_error("random_configuration: no valid sample for colors " + format_colors(colors) +
                             " in dimension " + std::to_string(dim));
}

template <class S>
Configuration<S> random_configuration(const ColorList& colors, std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return random_configuration<S>(rng, colors, dim);
}

inline ColorList random_colors(Rng& rng, std::size_t length) {
    ColorList out;
    for (std::size_t i = 0; i < length; ++i) out.push_back(rng.chance(0.5) ? Color::disk : Color::point);
    return out;
}

// A random point of X over the tree.
template <class S>
NervePoint<S> random_x_point(Rng& rng, const Tree& tree, std::size_t dim, double scale = 1.0) {
    if (tree.is_eta()) return trivial_point<S>(tree, dim);
    NervePoint<S> x{tree, dim, canonical_coloring(tree), {}};
    for (const auto& v : tree.vertices())
        x.operations[v] = random_configuration<S>(rng, x.input_colors(v), dim, scale);
    return x;
}

// A random nerve point with an arbitrary admissible coloring: a point-colored
// output forces a unary vertex with a point-colored input.
template <class S>
NervePoint<S> random_nerve_point(Rng& rng, const Tree& tree, std::size_t dim, double scale = 1.0) {
    NervePoint<S> p{tree, dim, {}, {}};
    // Above a point-colored edge every vertex is unary, up to a leaf.
    auto may_be_point = [&](std::string e) {
        while (tree.has_vertex(e)) {
            if (tree.arity(e) != 1) return false;
            e = tree.inputs(e).front();
        }
        return true;
    };
    for (const auto& e : tree.edges()) {
        auto parent = tree.consumer(e);
        if (parent && p.coloring.at(*parent) == Color::point) p.coloring[e] = Color::point;
        else p.coloring[e] = may_be_point(e) && rng.chance(0.5) ? Color::point : Color::disk;
    }
    for (const auto& v : tree.vertices()) {
        if (p.coloring.at(v) == Color::point) p.operations[v] = std::nullopt;
        else p.operations[v] = random_configuration<S>(rng, p.input_colors(v), dim, scale);
    }
    return p;
}

// The representation of a disk a_i as a valid one-entry configuration.
template <class S>
Disk<S> random_embedding(Rng& rng, std::size_t dim, double scale = 1.0) {
    return random_configuration<S>(rng, {Color::disk}, dim, scale).disk(0);
}

template <class S>
LinearList<S> random_linear_list(Rng& rng, std::size_t k, std::size_t dim, double scale = 1.0) {
    LinearList<S> out{dim, {}, std::nullopt};
    if (k == 0) return out;
    for (std::size_t i = 0; i + 1 < k; ++i) out.maps.push_back(random_embedding<S>(rng, dim, scale));
    out.top = random_configuration<S>(rng, {Color::point}, dim, scale).point(0);
    return out;
}

}  // namespace dendro
