#include "dendro/harness.hpp"

#include "dendro/configuration.hpp"
#include "dendro/homotopy.hpp"
#include "dendro/morphism.hpp"
#include "dendro/nerve.hpp"
#include "dendro/obstruction.hpp"
#include "dendro/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace dendro {

std::string to_string(Mode mode) { return mode == Mode::rational ? "rational" : "float"; }

std::optional<Mode> parse_mode(std::string_view text) {
    if (text == "rational") return Mode::rational;
    if (text == "float") return Mode::floating;
    return std::nullopt;
}

std::string describe(const CaseParams& p) {
    std::ostringstream out;
    out << "seed=" << p.seed << " dim=" << p.dim << " max_vertices=" << p.max_vertices
        << " max_arity=" << p.max_arity << " max_length=" << p.max_length << " scale=" << p.scale;
    return out.str();
}

CaseParams shrink_case(CaseParams failing, const std::function<bool(const CaseParams&)>& fails) {
    auto attempt = [&](CaseParams candidate) {
        if (candidate == failing || !fails(candidate)) return false;
        failing = candidate;
        return true;
    };
    for (int round = 0; round < 64; ++round) {
        bool progress = false;
        if (failing.max_vertices > 0) {
            auto c = failing;
            --c.max_vertices;
            progress |= attempt(c);
        }
        if (failing.max_arity > 0) {
            auto c = failing;
            --c.max_arity;
            progress |= attempt(c);
        }
        if (failing.max_length > 1) {
            auto c = failing;
            --c.max_length;
            progress |= attempt(c);
        }
        if (failing.dim > 1) {
            auto c = failing;
            --c.dim;
            progress |= attempt(c);
        }
        if (failing.scale > 1.0 / 64) {
            auto c = failing;
            c.scale /= 2;
            progress |= attempt(c);
        }
        if (!progress) break;
    }
    return failing;
}

namespace {

constexpr std::size_t max_witnesses = 5;
constexpr double infinity = std::numeric_limits<double>::infinity();

struct Outcome {
    bool ok = true;
    double residual = 0.0;
    std::string witness;
    std::vector<std::string> tags;
};

// Collects the checks of one case. Exact scalars must agree exactly; floats
// within the tolerance.
template <class S>
class CaseCheck {
public:
    explicit CaseCheck(double tol) : tol_(tol) {}

    std::function<std::string()> inputs;

    void expect(bool condition, const std::string& what) {
        if (!condition) fail(what);
    }

    void fail(const std::string& what) {
        if (out_.ok) out_.witness = what + (inputs ? "\n" + inputs() : std::string());
        out_.ok = false;
    }

    void record(double residual, const std::string& what) {
        out_.residual = std::max(out_.residual, residual);
        bool bad = ScalarTraits<S>::exact ? residual != 0.0 : !(residual <= tol_);
        if (bad) fail(what + " (residual " + ScalarTraits<double>::format(residual) + ")");
    }

    void same(const Configuration<S>& a, const Configuration<S>& b, const std::string& what) {
        record(residual(a, b), what);
    }

    void same(const NervePoint<S>& a, const NervePoint<S>& b, const std::string& what) {
        record(nerve_residual(a, b), what);
    }

    void same(const LinearList<S>& a, const LinearList<S>& b, const std::string& what) {
        record(residual(as_configuration(a), as_configuration(b)), what);
    }

    void valid(const Configuration<S>& x, const std::string& what) {
        auto v = validate(x, tol_);
        if (!v.empty()) fail(what + ": " + v.front().message + "\n" + format_configuration(x));
    }

    void tag(std::string t) { out_.tags.push_back(std::move(t)); }
    double tol() const { return tol_; }
    Outcome take() { return std::move(out_); }

    static double nerve_residual(const NervePoint<S>& a, const NervePoint<S>& b) {
        if (!(a.tree == b.tree) || a.coloring != b.coloring || a.dim != b.dim) return infinity;
        double worst = 0.0;
        for (const auto& [v, op] : a.operations) {
            const auto& other = b.operations.at(v);
            if (op.has_value() != other.has_value()) return infinity;
            if (op) worst = std::max(worst, residual(*op, *other));
        }
        return worst;
    }

    static Configuration<S> as_configuration(const LinearList<S>& list) {
        std::vector<Entry<S>> entries(list.maps.begin(), list.maps.end());
        if (list.top) entries.push_back(*list.top);
        return Configuration<S>(list.dim, std::move(entries));
    }

private:
    double tol_;
    Outcome out_;
};

using CaseFn = std::function<Outcome(const CaseParams&, std::size_t)>;

Outcome guarded(const CaseFn& fn, const CaseParams& p, std::size_t index) {
    try {
        return fn(p, index);
    } catch (const std::exception& e) {
        Outcome o;
        o.ok = false;
        o.witness = std::string("exception: ") + e.what();
        return o;
    }
}

void run_cases(CheckReport& report, std::size_t n, const std::function<CaseParams(std::size_t)>& params_for,
               const CaseFn& fn) {
    for (std::size_t i = 0; i < n; ++i) {
        CaseParams p = params_for(i);
        Outcome o = guarded(fn, p, i);
        ++report.cases;
        report.max_residual = std::max(report.max_residual, o.residual);
        for (const auto& t : o.tags) ++report.counts[t];
        if (o.ok) continue;
        ++report.failures;
        if (report.witnesses.size() >= max_witnesses) continue;
        CaseParams small = shrink_case(p, [&](const CaseParams& q) { return !guarded(fn, q, i).ok; });
        Outcome w = guarded(fn, small, i);
        report.witnesses.push_back("case " + std::to_string(i) + " shrunk to " + describe(small) + "\n" +
                                   (w.ok ? o.witness : w.witness));
    }
}

template <class S>
std::string show(const Configuration<S>& x) {
    return format_configuration(x);
}

ColorList raise(Rng& rng, ColorList colors, std::optional<std::size_t> keep = std::nullopt) {
    for (std::size_t i = 0; i < colors.size(); ++i)
        if (colors[i] == Color::disk && i != keep && rng.chance(0.5)) colors[i] = Color::point;
    return colors;
}

// ---------------------------------------------------------------------------
// operad_axioms

template <class S>
Outcome operad_case(const CaseParams& p, double tol) {
    Rng rng(p.seed);
    CaseCheck<S> c(tol);
    std::size_t lx = 1 + rng.below(std::max<std::size_t>(p.max_length, 1));
    ColorList cx = random_colors(rng, lx);
    std::size_t i = rng.below(lx);
    cx[i] = Color::disk;
    std::size_t ly = rng.below(p.max_length + 1);
    ColorList cy = random_colors(rng, ly);
    std::size_t j = 0;
    if (ly) {
        j = rng.below(ly);
        cy[j] = Color::disk;
    }
    ColorList cz = random_colors(rng, rng.below(p.max_length + 1));
    auto x = random_configuration<S>(rng, cx, p.dim, p.scale);
    auto y = random_configuration<S>(rng, cy, p.dim, p.scale);
    auto z = random_configuration<S>(rng, cz, p.dim, p.scale);
    c.inputs = [&] {
        return "x =\n" + show(x) + "y =\n" + show(y) + "z =\n" + show(z) + "i=" + std::to_string(i + 1) +
               " j=" + std::to_string(j + 1);
    };

    auto xy = compose_at(x, i, y);
    c.valid(xy, "x o_i y");
    if (ly) {
        auto lhs = compose_at(xy, i + j, z);
        auto rhs = compose_at(x, i, compose_at(y, j, z));
        c.same(lhs, rhs, "sequential associativity");
        c.valid(lhs, "(x o_i y) o z");
    }

    std::vector<std::size_t> other_disks;
    for (std::size_t k = 0; k < lx; ++k)
        if (k != i && x.is_disk(k)) other_disks.push_back(k);
    if (!other_disks.empty()) {
        std::size_t k = other_disks[rng.below(other_disks.size())];
        std::size_t a = std::min(i, k), b = std::max(i, k);
        auto lhs = compose_at(compose_at(x, b, z), a, y);
        auto rhs = compose_at(compose_at(x, a, y), b + y.size() - 1, z);
        c.same(lhs, rhs, "parallel composition");
    }

    auto unit = unit_configuration<S>(p.dim);
    c.same(compose_at(x, i, unit), x, "right unit");
    c.same(compose_at(unit, 0, x), x, "left unit");

    auto sigma = random_permutation(rng, lx);
    auto tau = random_permutation(rng, ly);
    std::size_t i_moved = static_cast<std::size_t>(std::find(sigma.begin(), sigma.end(), i) - sigma.begin());
    auto lhs = compose_at(sigma_act(x, sigma), i_moved, sigma_act(y, tau));
    // Block permutation: where each entry of the left side sits in x o_i y.
    auto base_index = [&](std::size_t m) { return m < i ? m : m + ly - 1; };
    std::vector<std::size_t> rho;
    for (std::size_t pos = 0; pos < lx + ly - 1; ++pos) {
        if (pos < i_moved) rho.push_back(base_index(sigma[pos]));
        else if (pos < i_moved + ly) rho.push_back(i + tau[pos - i_moved]);
        else rho.push_back(base_index(sigma[pos - ly + 1]));
    }
    c.same(lhs, sigma_act(xy, rho), "composition equivariance");
    c.valid(sigma_act(x, sigma), "x . sigma");

    auto s2 = random_permutation(rng, lx);
    std::vector<std::size_t> both(lx);
    for (std::size_t m = 0; m < lx; ++m) both[m] = sigma[s2[m]];
    c.same(sigma_act(sigma_act(x, sigma), s2), sigma_act(x, both), "right action law");
    return c.take();
}

// ---------------------------------------------------------------------------
// shifts and the compatibility with composition

template <class S>
Outcome shifts_case(const CaseParams& p, double tol) {
    Rng rng(p.seed);
    CaseCheck<S> c(tol);
    ColorList l0 = random_colors(rng, rng.below(p.max_length + 1));
    ColorList l1 = raise(rng, l0);
    ColorList l2 = raise(rng, l1);
    auto x = random_configuration<S>(rng, l0, p.dim, p.scale);
    c.inputs = [&] { return "x =\n" + show(x) + "l' = " + format_colors(l1) + "\nl'' = " + format_colors(l2); };

    c.same(shift(x, l0), x, "identity shift");
    auto once = shift(x, l1);
    c.valid(once, "shift(x, l')");
    c.expect(once.colors() == l1, "shift lands on the wrong colors");
    c.same(shift(once, l2), shift(x, l2), "shift functoriality");

    auto sigma = random_permutation(rng, l0.size());
    c.same(sigma_act(once, sigma), shift(sigma_act(x, sigma), permute(l1, sigma)), "shift equivariance");

    if (l1 != l0) {
        bool threw = false;
        try {
            shift(once, l0);
        } catch (const std::invalid_argument&) {
            threw = true;
        }
        c.expect(threw, "shift accepted a lower target");
    }
    return c.take();
}

template <class S>
Outcome eq2_case(const CaseParams& p, double tol) {
    Rng rng(p.seed);
    CaseCheck<S> c(tol);
    std::size_t lx = 1 + rng.below(std::max<std::size_t>(p.max_length, 1));
    ColorList cx = random_colors(rng, lx);
    std::size_t i = rng.below(lx);
    cx[i] = Color::disk;
    ColorList cy = random_colors(rng, rng.below(p.max_length + 1));
    ColorList cx_up = raise(rng, cx, i);
    ColorList cy_up = raise(rng, cy);
    auto x = random_configuration<S>(rng, cx, p.dim, p.scale);
    auto y = random_configuration<S>(rng, cy, p.dim, p.scale);
    c.inputs = [&] {
        return "x =\n" + show(x) + "y =\n" + show(y) + "i=" + std::to_string(i + 1) + " l'=" + format_colors(cx_up) +
               " l'''=" + format_colors(cy_up);
    };
    auto lhs = compose_at(shift(x, cx_up), i, shift(y, cy_up));
    auto rhs = shift(compose_at(x, i, y), splice(cx_up, i, cy_up));
    c.same(lhs, rhs, "shift compatibility with composition");
    c.valid(lhs, "composite of shifts");
    return c.take();
}

// ---------------------------------------------------------------------------
// retraction and homotopy (float)

Outcome retraction_case(const CaseParams& p, double tol) {
    Rng rng(p.seed);
    CaseCheck<double> c(tol);
    std::size_t len = 1 + rng.below(std::max<std::size_t>(p.max_length, 1));
    std::size_t slot = rng.below(len);
    ColorList cy = random_colors(rng, len);
    cy[slot] = Color::point;
    ColorList cx = random_colors(rng, len);
    cx[slot] = Color::disk;
    auto y = random_configuration<double>(rng, cy, p.dim, p.scale);
    auto x = random_configuration<double>(rng, cx, p.dim, p.scale);
    c.inputs = [&] { return "y =\n" + show(y) + "x =\n" + show(x) + "slot=" + std::to_string(slot + 1); };

    c.expect(epsilon(y, slot) > 0.0, "epsilon is not positive");
    auto g = g_inverse(y, slot);
    c.valid(g, "g_inverse(y)");
    c.same(shift(g, y.colors()), y, "shift o g_inverse = id");

    c.same(homotopy(x, slot, 1.0), x, "H(x, 1) = x");
    c.same(homotopy(x, slot, 0.0), g_inverse(shift_at(x, slot), slot), "H(x, 0) = g o shift");
    for (int k = 0; k <= 10; ++k) c.valid(homotopy(x, slot, k / 10.0), "H(x, " + std::to_string(k) + "/10)");
    return c.take();
}

// ---------------------------------------------------------------------------
// hat maps

std::string show_point(const NervePoint<Rational>& x) { return format_nerve_point(x); }

Outcome well_defined_case(const CaseParams& p, double tol) {
    Rng rng(p.seed);
    CaseCheck<Rational> c(tol);
    Tree tree = random_tree(rng, {p.max_vertices, p.max_arity});
    auto x = random_x_point<Rational>(rng, tree, p.dim, p.scale);
    auto alpha = random_chain(rng, tree, 1 + rng.below(3), ChainKind::faces_and_isos);
    c.inputs = [&] { return "morphism: " + describe(alpha) + "\n" + show_point(x); };
    c.expect(predicates(alpha).star, "morphism sends a vertex to a leaf");
    auto y = hat(alpha, x);
    c.expect(is_valid(y), "hat produced an invalid nerve point");
    c.expect(membership(y).in_X, "hat left X");
    c.expect(y.tree == alpha.source(), "hat landed over the wrong tree");
    if (alpha.source().is_eta()) c.tag("eta_source");
    return c.take();
}

Outcome lemma_case(const CaseParams& p, std::size_t index, double tol) {
    Rng rng(p.seed);
    CaseCheck<Rational> c(tol);
    Tree tree = random_tree(rng, {p.max_vertices, p.max_arity});
    auto x = random_x_point<Rational>(rng, tree, p.dim, p.scale);
    bool first_hypothesis = index % 2 == 0;
    std::optional<OmegaInjMorphism> alpha, beta;
    if (first_hypothesis) {
        alpha = random_chain(rng, tree, 1 + rng.below(3), ChainKind::leaf_bijective);
        beta = random_chain(rng, alpha->source(), rng.below(4), ChainKind::faces_and_isos);
        c.tag("leaf_bijective_alpha");
    } else {
        alpha = random_chain(rng, tree, rng.below(4), ChainKind::faces_and_isos);
        beta = OmegaInjMorphism(random_isomorphism(rng, alpha->source()));
        c.tag("isomorphism_beta");
    }
    c.inputs = [&] { return "alpha: " + describe(*alpha) + "\nbeta: " + describe(*beta) + "\n" + show_point(x); };
    if (first_hypothesis) c.expect(predicates(*alpha).leaf_bijective, "alpha is not leaf-bijective");
    auto lhs = hat(*beta, hat(*alpha, x));
    auto rhs = hat(compose(*alpha, *beta), x);
    c.same(lhs, rhs, "hat(beta) hat(alpha) = hat(alpha o beta)");
    return c.take();
}

Outcome segal_case(const CaseParams& p, double tol) {
    Rng rng(p.seed);
    CaseCheck<Rational> c(tol);
    Tree tree = random_tree(rng, {std::max<std::size_t>(p.max_vertices, 1), p.max_arity});
    if (tree.is_eta()) tree = Tree::corolla("r", {"e1"});
    auto x = random_x_point<Rational>(rng, tree, p.dim, p.scale);
    c.inputs = [&] { return show_point(x); };
    auto via_hat = segal_map(x);
    auto factored = segal_factored(x);
    c.expect(via_hat.size() == tree.vertex_count() && factored.size() == via_hat.size(), "wrong number of components");
    for (std::size_t v = 0; v < std::min(via_hat.size(), factored.size()); ++v)
        c.same(via_hat[v], factored[v], "Segal component " + std::to_string(v + 1));

    // On a corolla the Segal map is the identity.
    std::size_t k = rng.below(7);
    std::vector<std::string> leaves;
    for (std::size_t j = 1; j <= k; ++j) leaves.push_back("e" + std::to_string(j));
    Tree corolla = Tree::corolla("r", leaves);
    auto xc = random_x_point<Rational>(rng, corolla, p.dim, p.scale);
    auto comps = segal_map(xc);
    c.expect(comps.size() == 1, "corolla has one component");
    if (comps.size() == 1) c.same(comps.front(), xc, "Segal map on a corolla");
    c.tag("corolla_identity");

    // X over a corolla is exactly the configuration space of k points.
    NervePoint<Rational> q{corolla, p.dim, canonical_coloring(corolla), {}};
    std::vector<Entry<Rational>> entries;
    auto pts = random_configuration<Rational>(rng, all_points(k), p.dim, p.scale);
    entries = pts.entries();
    int variant = static_cast<int>(rng.below(5));
    if (variant == 1 && k >= 2) {
        entries[1] = entries[0];
    } else if (variant == 2 && k >= 1) {
        Vec<Rational> boundary(p.dim, Rational(0));
        boundary[0] = 1;
        entries[0] = Point<Rational>{boundary};
    } else if (variant == 3 && k >= 1) {
        Vec<Rational> outside(p.dim, Rational(0));
        outside[0] = Rational(3, 2);
        entries[0] = Point<Rational>{outside};
    } else if (variant == 4 && k >= 1) {
        q.coloring[leaves[0]] = Color::disk;
        entries = random_configuration<Rational>(rng, random_colors(rng, k), p.dim, p.scale).entries();
        entries[0] = random_embedding<Rational>(rng, p.dim, p.scale);
        entries = Configuration<Rational>(p.dim, entries).entries();
    }
    q.operations["r"] = Configuration<Rational>(p.dim, entries);
    bool oracle = true;
    for (const auto& e : q.tree.leaves()) oracle &= q.coloring.at(e) == Color::point;
    for (std::size_t a = 0; a < entries.size(); ++a) {
        const auto* pa = std::get_if<Point<Rational>>(&entries[a]);
        if (!pa) {
            oracle = false;
            continue;
        }
        Rational n2 = 0;
        for (const auto& v : pa->position) n2 += v * v;
        oracle &= n2 < 1;
        for (std::size_t b = 0; b < a; ++b)
            if (const auto* pb = std::get_if<Point<Rational>>(&entries[b])) oracle &= pa->position != pb->position;
    }
    bool member = is_valid(q) && membership(q).in_X;
    c.expect(member == oracle, "X over C_k disagrees with the configuration space of k points");
    c.tag(oracle ? "corollary_in_X" : "corollary_not_in_X");
    return c.take();
}

// ---------------------------------------------------------------------------
// semi-simplicial faces on linear trees

template <class S>
Outcome simplicial_case(const CaseParams& p, std::size_t index, double tol) {
    Rng rng(p.seed);
    CaseCheck<S> c(tol);
    std::size_t k = 1 + index % 5;
    auto list = random_linear_list<S>(rng, k, p.dim, p.scale);
    c.inputs = [&] { return "k=" + std::to_string(k) + "\n" + format_linear_list(list); };
    for (std::size_t j = 1; j <= k && k >= 2; ++j)
        for (std::size_t i = 0; i < j; ++i)
            c.same(face_d(i, face_d(j, list)), face_d(j - 1, face_d(i, list)),
                   "d_" + std::to_string(i) + " d_" + std::to_string(j) + " = d_" + std::to_string(j - 1) + " d_" +
                       std::to_string(i));
    auto x = decode_linear(list);
    c.same(encode_linear(x), list, "linear codec round trip");
    if (k <= 4) {
        for (std::size_t i = 0; i <= k; ++i)
            c.same(encode_linear(hat(OmegaInjMorphism(linear_face(x.tree, i)), x)), face_d(i, list),
                   "face d_" + std::to_string(i) + " against the tree-level hat");
        c.tag("hat_agreement_k" + std::to_string(k));
    }
    return c.take();
}

// ---------------------------------------------------------------------------
// commuting squares of faces

std::string pair_tag(const ElementaryMorphism& delta, const ElementaryMorphism& partial, bool leaf_bijective) {
    if (delta.source.is_eta()) return "eta_source";
    if (partial.kind == StepKind::isomorphism) return "iso";
    if (leaf_bijective) return "lemma_leaf_bijective";
    if (partial.kind == StepKind::outer_top_face) {
        switch (delta.kind) {
            case StepKind::outer_root_face: return "case1_root";
            case StepKind::outer_top_face: return "case2_leaf_vertex";
            case StepKind::inner_face: return "case3_inner";
            default: break;
        }
    }
    return "root_face_with_leaves";
}

struct Route {
    std::size_t partial;  // index into the faces of the tree
    std::size_t delta;    // index into the faces of that face's source
    NervePoint<Rational> value;
};

void theorem_exhaustive(CheckReport& report, const SuiteOptions& opts, std::size_t dim) {
    auto trees = enumerate_trees(opts.max_vertices, opts.max_arity);
    report.counts["trees"] = static_cast<std::int64_t>(trees.size());
    for (std::size_t ti = 0; ti < trees.size(); ++ti) {
        const Tree& tree = trees[ti];
        Rng rng(mix_seed(opts.seed, ti));
        auto x = random_x_point<Rational>(rng, tree, dim);
        auto note_failure = [&](const std::string& what) {
            ++report.failures;
            if (report.witnesses.size() < max_witnesses)
                report.witnesses.push_back(what + "\n" + format_nerve_point(x));
        };
        try {
            require_in_X(x);
            auto faces = elementary_faces(tree);
            std::vector<std::vector<ElementaryMorphism>> subfaces;
            // Faces never rename edges, so a composite of two faces is
            // determined by its source tree.
            std::map<std::string, std::vector<Route>> groups;
            for (std::size_t pi = 0; pi < faces.size(); ++pi) {
                const auto& partial = faces[pi];
                OmegaInjMorphism outer(partial);
                auto y = hat_trusted(outer, x);
                if (partial.kind == StepKind::outer_top_face && !tree.is_corolla()) {
                    const std::string& bottom = *tree.consumer(partial.edge);
                    auto expected = shift_at(*x.operations.at(bottom), tree.slot(partial.edge));
                    bool ok = *y.operations.at(bottom) == expected;
                    for (const auto& [v, op] : y.operations)
                        if (v != bottom) ok &= op == x.operations.at(v);
                    ++report.counts["composite_checks"];
                    ++report.cases;
                    if (!ok) note_failure("shifted pullback along " + describe(partial) + " differs at " + bottom);
                }
                subfaces.push_back(elementary_faces(partial.source));
                bool leaf_bijective = predicates(outer).leaf_bijective;
                for (std::size_t di = 0; di < subfaces[pi].size(); ++di) {
                    const auto& delta = subfaces[pi][di];
                    ++report.counts["pairs"];
                    ++report.counts[pair_tag(delta, partial, leaf_bijective)];
                    groups[format_tree(delta.source)].push_back({pi, di, hat_trusted(OmegaInjMorphism(delta), y)});
                }
            }
            auto route_name = [&](const Route& r) {
                return describe(subfaces[r.partial][r.delta]) + " then " + describe(faces[r.partial]);
            };
            // Every route must agree with the hat of the composite, hence with each other.
            for (const auto& [key, routes] : groups) {
                const Route& first = routes.front();
                auto composite = compose(OmegaInjMorphism(faces[first.partial]),
                                         OmegaInjMorphism(subfaces[first.partial][first.delta]));
                auto direct = hat_trusted(composite, x);
                for (const auto& route : routes) {
                    ++report.cases;
                    if (!(route.value == direct))
                        note_failure("tree " + format_tree(tree) + ": route " + route_name(route) +
                                     " differs from the hat of the composite");
                }
                for (std::size_t a = 0; a < routes.size(); ++a) {
                    for (std::size_t b = a + 1; b < routes.size(); ++b) {
                        ++report.counts["squares"];
                        if (!(routes[a].value == routes[b].value))
                            note_failure("tree " + format_tree(tree) + ": square " + route_name(routes[a]) + " vs " +
                                         route_name(routes[b]) + " does not commute");
                    }
                }
            }
        } catch (const std::exception& e) {
            note_failure("tree " + format_tree(tree) + ": exception " + e.what());
        }
    }
}

// Squares whose horizontal sides are isomorphisms: a face of T2 followed by an
// isomorphism T2 -> T3, refactored as an isomorphism followed by a face of T3.
Outcome iso_square_case(const CaseParams& p, double tol) {
    Rng rng(p.seed);
    CaseCheck<Rational> c(tol);
    Tree target = random_tree(rng, {std::max<std::size_t>(p.max_vertices, 1), p.max_arity});
    if (target.is_eta()) target = Tree::corolla("r", {"e1"});
    auto x = random_x_point<Rational>(rng, target, p.dim, p.scale);
    OmegaInjMorphism iso_right(random_isomorphism(rng, target));
    auto faces = elementary_faces(iso_right.source());
    OmegaInjMorphism face_left(faces[rng.below(faces.size())]);
    auto composite = compose(iso_right, face_left);
    c.inputs = [&] { return "route: " + describe(composite) + "\n" + show_point(x); };

    std::optional<std::pair<OmegaInjMorphism, OmegaInjMorphism>> other;
    for (const auto& f : elementary_faces(target)) {
        EdgeMap map;
        bool fits = true;
        for (const auto& [s, t] : composite.edge_map()) {
            if (!f.source.has_edge(t)) fits = false;
            map[s] = t;
        }
        if (!fits) continue;
        try {
            OmegaInjMorphism iso_left(isomorphism(composite.source(), f.source, map));
            OmegaInjMorphism face_right(f);
            if (compose(face_right, iso_left) == composite) {
                other.emplace(face_right, iso_left);
                break;
            }
        } catch (const TreeError&) {
        }
    }
    c.expect(other.has_value(), "no refactorization of the square");
    if (other) {
        auto lhs = hat(other->second, hat(other->first, x));
        auto rhs = hat(face_left, hat(iso_right, x));
        c.same(lhs, rhs, "iso square");
        c.same(lhs, hat(composite, x), "iso square against the composite");
        c.tag("iso_squares");
    }
    return c.take();
}

// ---------------------------------------------------------------------------
// obstruction

Outcome degeneracy_case(const CaseParams& p, double tol) {
    Rng rng(p.seed);
    CaseCheck<Rational> c(tol);
    auto one = random_linear_list<Rational>(rng, 1, p.dim, p.scale);
    auto two = random_linear_list<Rational>(rng, 2, p.dim, p.scale);
    auto radius_for = [&](const Vec<Rational>& center) {
        double room = 1.0 - std::sqrt(squared_norm(detail::as_doubles(center)));
        Rational r = snap_to_grid(rng.uniform(0.05, 1.0) * room, radius_grid);
        return r > 0 ? r : Rational(1, radius_grid);
    };
    Rational r = radius_for(one.top->position);
    Rational big_r = radius_for(two.top->position);
    c.inputs = [&] {
        return "[P] =\n" + format_linear_list(one) + "[a, P] =\n" + format_linear_list(two) + "r=" + r.get_str() +
               " R=" + big_r.get_str();
    };
    auto s0 = degeneracy_s0<Rational>(p.dim);
    auto s1 = degeneracy_s1(one, r);
    auto s2 = degeneracy_s2(two, big_r);
    decode_linear(s1);
    decode_linear(s2);
    c.same(face_d(0, s1), s0, "d0 s1 = s0 d0");
    c.same(face_d(1, s1), one, "d1 s1 = id");
    c.same(face_d(2, s1), one, "d2 s1 = id");
    c.same(face_d(2, s2), two, "d2 s2 = id");
    c.same(face_d(3, s2), two, "d3 s2 = id");
    // The surviving identity d1 s2 = s1 d1 reduces to equal radii.
    auto d1s2 = face_d(1, s2);
    c.expect(d1s2.maps.size() == 1 && d1s2.maps[0].center == affine(two.maps[0], two.top->position),
             "d1 s2 has the wrong center");
    return c.take();
}

// ---------------------------------------------------------------------------

struct SuiteSpec {
    std::size_t default_cases;
    Mode default_mode;
    bool rational_ok;
    bool float_ok;
};

const std::map<std::string, SuiteSpec>& suite_table() {
    static const std::map<std::string, SuiteSpec> table{
        {"operad_axioms", {1000, Mode::rational, true, true}},
        {"shifts", {1000, Mode::rational, true, true}},
        {"eq2", {1000, Mode::rational, true, true}},
        {"retraction_homotopy", {500, Mode::floating, false, true}},
        {"well_defined", {1000, Mode::rational, true, false}},
        {"lemma_hat", {1000, Mode::rational, true, false}},
        {"theorem_squares", {500, Mode::rational, true, false}},
        {"segal", {500, Mode::rational, true, false}},
        {"simplicial", {500, Mode::rational, true, true}},
        {"obstruction", {200, Mode::floating, false, true}},
    };
    return table;
}

template <class S>
CaseFn typed(Outcome (*fn)(const CaseParams&, double), double tol) {
    return [fn, tol](const CaseParams& p, std::size_t) { return fn(p, tol); };
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"operad_axioms", "shifts",          "eq2",   "retraction_homotopy",
                                                "well_defined",  "lemma_hat",       "theorem_squares",
                                                "segal",         "simplicial",      "obstruction"};
    return names;
}

CheckReport run_suite(std::string_view name, const SuiteOptions& opts) {
    const auto& table = suite_table();
    auto it = table.find(std::string(name));
    if (it == table.end()) throw SuiteError("unknown suite '" + std::string(name) + "'");
    const SuiteSpec& spec = it->second;
    Mode mode = opts.mode.value_or(spec.default_mode);
    if ((mode == Mode::rational && !spec.rational_ok) || (mode == Mode::floating && !spec.float_ok))
        throw SuiteError("suite '" + std::string(name) + "' does not run in " + to_string(mode) + " mode");

    CheckReport report;
    report.suite = std::string(name);
    report.seed = opts.seed;
    report.mode = mode;
    report.tol = opts.tol;
    std::size_t n = opts.cases ? opts.cases : spec.default_cases;
    bool tree_suite = name == "well_defined" || name == "lemma_hat" || name == "theorem_squares" ||
                      name == "segal" || name == "simplicial";

    auto params_for = [&](std::size_t i) {
        CaseParams p;
        p.seed = mix_seed(opts.seed, i);
        p.dim = opts.dim ? opts.dim : (tree_suite ? 2 : 1 + i % 3);
        p.max_vertices = 6;
        p.max_arity = 3;
        p.max_length = 4;
        return p;
    };
    bool exact = mode == Mode::rational;
    double tol = opts.tol;

    if (name == "operad_axioms") {
        run_cases(report, n, params_for, exact ? typed<Rational>(&operad_case<Rational>, tol)
                                               : typed<double>(&operad_case<double>, tol));
    } else if (name == "shifts") {
        run_cases(report, n, params_for, exact ? typed<Rational>(&shifts_case<Rational>, tol)
                                               : typed<double>(&shifts_case<double>, tol));
    } else if (name == "eq2") {
        run_cases(report, n, params_for, exact ? typed<Rational>(&eq2_case<Rational>, tol)
                                               : typed<double>(&eq2_case<double>, tol));
    } else if (name == "retraction_homotopy") {
        run_cases(report, n, params_for, typed<double>(&retraction_case, tol));
    } else if (name == "well_defined") {
        run_cases(report, n, params_for, typed<Rational>(&well_defined_case, tol));
    } else if (name == "lemma_hat") {
        run_cases(report, n, params_for,
                  [tol](const CaseParams& p, std::size_t i) { return lemma_case(p, i, tol); });
    } else if (name == "theorem_squares") {
        theorem_exhaustive(report, opts, opts.dim ? opts.dim : 2);
        run_cases(report, n, params_for, typed<Rational>(&iso_square_case, tol));
    } else if (name == "segal") {
        run_cases(report, n, params_for, typed<Rational>(&segal_case, tol));
    } else if (name == "simplicial") {
        CaseFn fn = exact ? CaseFn([tol](const CaseParams& p, std::size_t i) { return simplicial_case<Rational>(p, i, tol); })
                          : CaseFn([tol](const CaseParams& p, std::size_t i) { return simplicial_case<double>(p, i, tol); });
        run_cases(report, n, params_for, fn);
    } else if (name == "obstruction") {
        auto candidate = RadiusCandidate::parse(opts.radius);
        auto scan = obstruction_scan(candidate, opts.c1, opts.point, t_grid(opts.tmin, opts.tmax, opts.steps));
        report.metrics["floor"] = scan.floor;
        report.metrics["tmin"] = opts.tmin;
        report.metrics["tmax"] = opts.tmax;
        report.counts["grid_points"] = static_cast<std::int64_t>(scan.rows.size());
        report.counts["positive_points"] = static_cast<std::int64_t>(scan.positive);
        ++report.cases;
        if (!scan.certified()) {
            ++report.failures;
            std::string rows;
            for (const auto& row : scan.rows)
                if (row.bound <= 0.0)
                    rows += "t=" + ScalarTraits<double>::format(row.t) + " bound=" + ScalarTraits<double>::format(row.bound) + "\n";
            report.witnesses.push_back("candidate " + candidate.describe() + " has no positive floor at\n" + rows);
        }
        auto deg_params = [&](std::size_t i) {
            auto p = params_for(i);
            p.dim = opts.c1.size();
            return p;
        };
        run_cases(report, n, deg_params, typed<Rational>(&degeneracy_case, tol));
    }
    return report;
}

namespace {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

std::string format_report(const CheckReport& r) {
    std::ostringstream out;
    out << "suite: " << r.suite << "\n";
    out << "mode: " << to_string(r.mode) << "\n";
    out << "seed: " << r.seed << "\n";
    out << "cases: " << r.cases << "\n";
    out << "failures: " << r.failures << "\n";
    out << "max_residual: " << format_number(r.max_residual) << "\n";
    out << "tol: " << format_number(r.tol) << "\n";
    for (const auto& [k, v] : r.counts) out << "count." << k << ": " << v << "\n";
    for (const auto& [k, v] : r.metrics) out << "metric." << k << ": " << format_number(v) << "\n";
    out << "status: " << (r.passed() ? "PASS" : "FAIL") << "\n";
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) out << "witness[" << i << "]:\n" << r.witnesses[i] << "\n";
    return out.str();
}

std::string report_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["mode"] = to_string(r.mode);
    j["seed"] = r.seed;
    j["cases"] = r.cases;
    j["failures"] = r.failures;
    j["max_residual"] = r.max_residual;
    j["tol"] = r.tol;
    j["counts"] = r.counts;
    j["metrics"] = r.metrics;
    j["passed"] = r.passed();
    j["witnesses"] = r.witnesses;
    return j.dump();
}

}  // namespace dendro
