#pragma once

#include "dendro/configuration.hpp"
#include "dendro/nerve.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dendro {

// A continuous radius function on the unit ball, either constant or a
// polynomial in |y|: r(y) = c0 + c1 |y| + c2 |y|^2 + ...
class RadiusCandidate {
public:
    static RadiusCandidate constant(double value) { return RadiusCandidate(false, {value}); }
    static RadiusCandidate radial(std::vector<double> coefficients) {
        return RadiusCandidate(true, std::move(coefficients));
    }
    // "const:<v>" or "radial:<c0>,<c1>,..."
    static RadiusCandidate parse(std::string_view spec);

    double operator()(const Vec<double>& y) const;
    std::string describe() const;

private:
    RadiusCandidate(bool radial, std::vector<double> coefficients)
        : radial_(radial), coefficients_(std::move(coefficients)) {}

    bool radial_;
    std::vector<double> coefficients_;
};

struct ObstructionRow {
    double t;
    double bound;  // r(t P + c1) - t; positive means no R <= 1 fits at this t
};

struct ObstructionScan {
    std::vector<ObstructionRow> rows;
    double floor = 0.0;      // least bound over the grid
    std::size_t positive = 0;

    bool certified() const { return !rows.empty() && positive == rows.size(); }
};

// Equispaced grid tmin, ..., tmax with `steps` points.
std::vector<double> t_grid(double tmin, double tmax, std::size_t steps);

// For the disks a_t(x) = t x + c1, any candidate s2 with radius R <= 1 misses
// s1 d1 by at least |t R - r(a_t(P))| >= r(t P + c1) - t.
ObstructionScan obstruction_scan(const RadiusCandidate& r, const Vec<double>& c1, const Vec<double>& p,
                                 const std::vector<double>& grid);

// Forced shapes of the low degeneracies on linear lists:
//   s0 [] = [0],  s1 [P] = [r x + P, 0],  s2 [a, P] = [a, R x + P, 0].
template <class S>
LinearList<S> degeneracy_s0(std::size_t dim) {
    return {dim, {}, Point<S>{Vec<S>(dim, S(0))}};
}

template <class S>
LinearList<S> degeneracy_s1(const LinearList<S>& x, const S& radius) {
    if (x.arity() != 1) throw std::invalid_argument("s1 acts on lists of arity 1");
    return {x.dim, {Disk<S>{radius, x.top->position}}, Point<S>{Vec<S>(x.dim, S(0))}};
}

template <class S>
LinearList<S> degeneracy_s2(const LinearList<S>& x, const S& radius) {
    if (x.arity() != 2) throw std::invalid_argument("s2 acts on lists of arity 2");
    return {x.dim, {x.maps[0], Disk<S>{radius, x.top->position}}, Point<S>{Vec<S>(x.dim, S(0))}};
}

}  // namespace dendro
