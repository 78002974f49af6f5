#pragma once

#include "dendro/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace dendro {

// Colors of the operad: 1 marks a little disk, 2 marks a point.
enum class Color : std::uint8_t { disk = 1, point = 2 };

using ColorList = std::vector<Color>;

inline ColorList all_disks(std::size_t p) { return ColorList(p, Color::disk); }
inline ColorList all_points(std::size_t p) { return ColorList(p, Color::point); }

// Entrywise order on lists of equal length.
inline bool leq(const ColorList& a, const ColorList& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// a ∘_slot b: entry `slot` of a replaced by the whole of b.
inline ColorList splice(const ColorList& a, std::size_t slot, const ColorList& b) {
    if (slot >= a.size()) throw std::out_of_range("splice slot out of range");
    ColorList out(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(slot));
    out.insert(out.end(), b.begin(), b.end());
    out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(slot) + 1, a.end());
    return out;
}

// Entry i of the result is entry perm[i] of the input.
template <class T>
std::vector<T> permute(const std::vector<T>& items, const std::vector<std::size_t>& perm) {
    if (perm.size() != items.size()) throw std::invalid_argument("permutation size mismatch");
    std::vector<bool> seen(perm.size(), false);
    std::vector<T> out;
    out.reserve(items.size());
    for (std::size_t p : perm) {
        if (p >= items.size() || seen[p]) throw std::invalid_argument("not a permutation");
        seen[p] = true;
        out.push_back(items[p]);
    }
    return out;
}

// "1,2,2"; the empty list prints as "".
inline std::string format_colors(const ColorList& colors) {
    std::string out;
    for (std::size_t i = 0; i < colors.size(); ++i) {
        if (i) out += ',';
        out += colors[i] == Color::disk ? '1' : '2';
    }
    return out;
}

inline ColorList parse_colors(std::string_view text) {
    ColorList out;
    for (char c : text) {
        if (c == '1') out.push_back(Color::disk);
        else if (c == '2') out.push_back(Color::point);
        else if (c != ',' && c != ' ') throw std::invalid_argument("color list may only contain 1, 2 and commas");
    }
    return out;
}

template <class S>
using Vec = std::vector<S>;

// The affine embedding u -> radius * u + center of the unit ball.
template <class S>
struct Disk {
    S radius;
    Vec<S> center;
    bool operator==(const Disk&) const = default;
};

template <class S>
struct Point {
    Vec<S> position;
    bool operator==(const Point&) const = default;
};

template <class S>
using Entry = std::variant<Disk<S>, Point<S>>;

template <class S>
Vec<S> affine(const Disk<S>& a, const Vec<S>& x) {
    Vec<S> out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) out[k] = a.radius * x[k] + a.center[k];
    return out;
}

// a ∘ b as affine maps.
template <class S>
Disk<S> after(const Disk<S>& a, const Disk<S>& b) {
    return {a.radius * b.radius, affine(a, b.center)};
}

template <class S>
Entry<S> transform(const Disk<S>& a, const Entry<S>& e) {
    if (const auto* d = std::get_if<Disk<S>>(&e)) return after(a, *d);
    return Point<S>{affine(a, std::get<Point<S>>(e).position)};
}

template <class S>
S squared_norm(const Vec<S>& v) {
    S acc = 0;
    for (const auto& c : v) acc += c * c;
    return acc;
}

template <class S>
S squared_distance(const Vec<S>& a, const Vec<S>& b) {
    S acc = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        S d = a[k] - b[k];
        acc += d * d;
    }
    return acc;
}

// A point of O(l; 1): an ordered list of disks and points in the unit n-ball.
template <class S>
class Configuration {
public:
    explicit Configuration(std::size_t dim, std::vector<Entry<S>> entries = {})
        : dim_(dim), entries_(std::move(entries)) {
        if (dim_ == 0) throw std::invalid_argument("dimension must be at least 1");
        for (const auto& e : entries_) {
            std::size_t n = std::visit(
                [](const auto& x) {
                    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Disk<S>>) return x.center.size();
                    else return x.position.size();
                },
                e);
            if (n != dim_) throw std::invalid_argument("entry dimension does not match configuration dimension");
        }
    }

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<Entry<S>>& entries() const { return entries_; }
    const Entry<S>& operator[](std::size_t i) const { return entries_.at(i); }

    bool is_disk(std::size_t i) const { return std::holds_alternative<Disk<S>>(entries_.at(i)); }
    const Disk<S>& disk(std::size_t i) const { return std::get<Disk<S>>(entries_.at(i)); }
    const Point<S>& point(std::size_t i) const { return std::get<Point<S>>(entries_.at(i)); }

    ColorList colors() const {
        ColorList out;
        out.reserve(entries_.size());
        for (const auto& e : entries_)
            out.push_back(std::holds_alternative<Disk<S>>(e) ? Color::disk : Color::point);
        return out;
    }

    bool operator==(const Configuration&) const = default;

private:
    std::size_t dim_;
    std::vector<Entry<S>> entries_;
};

// Largest coordinate difference between two configurations of the same shape;
// infinity if the shapes differ.
template <class S>
double residual(const Configuration<S>& a, const Configuration<S>& b) {
    if (a.dim() != b.dim() || a.colors() != b.colors()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    auto upd = [&](const S& x, const S& y) { worst = std::max(worst, ScalarTraits<S>::distance(x, y)); };
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.is_disk(i)) {
            upd(a.disk(i).radius, b.disk(i).radius);
            for (std::size_t k = 0; k < a.dim(); ++k) upd(a.disk(i).center[k], b.disk(i).center[k]);
        } else {
            for (std::size_t k = 0; k < a.dim(); ++k) upd(a.point(i).position[k], b.point(i).position[k]);
        }
    }
    return worst;
}

enum class ViolationKind {
    nonpositive_radius,
    disk_outside_ball,
    point_outside_ball,
    disks_overlap,
    points_coincide,
    point_in_disk,
};

struct Violation {
    ViolationKind kind;
    std::size_t first;
    std::size_t second;  // equals `first` for single-entry conditions
    std::string message;
};

// Checks containment in the unit ball and pairwise separation. Rational mode
// is exact (squared distances); float mode relaxes non-strict bounds by tol.
template <class S>
std::vector<Violation> validate(const Configuration<S>& x, double tol = default_tolerance) {
    using T = ScalarTraits<S>;
    std::vector<Violation> out;
    auto label = [](std::size_t i) { return std::to_string(i + 1); };
    const S one = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x.is_disk(i)) {
            const auto& d = x.disk(i);
            if (!(d.radius > 0)) {
                out.push_back({ViolationKind::nonpositive_radius, i, i, "disk " + label(i) + " has non-positive radius"});
                continue;
            }
            // r + |c| <= 1  <=>  r <= 1 and |c|^2 <= (1 - r)^2
            S slack = one - d.radius;
            if (!T::le(d.radius, one, tol) || !T::le(squared_norm(d.center), slack * slack, tol))
                out.push_back({ViolationKind::disk_outside_ball, i, i, "disk " + label(i) + " leaves the unit ball"});
        } else if (!T::lt(squared_norm(x.point(i).position), one, tol)) {
            out.push_back({ViolationKind::point_outside_ball, i, i, "point " + label(i) + " is not in the open unit ball"});
        }
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            bool di = x.is_disk(i), dj = x.is_disk(j);
            std::string pair = label(i) + "," + label(j);
            if (di && dj) {
                const auto &a = x.disk(i), &b = x.disk(j);
                S reach = a.radius + b.radius;
                if (!T::le(reach * reach, squared_distance(a.center, b.center), tol))
                    out.push_back({ViolationKind::disks_overlap, i, j, "disks " + pair + " overlap"});
            } else if (!di && !dj) {
                if (!T::lt(S(0), squared_distance(x.point(i).position, x.point(j).position), tol))
                    out.push_back({ViolationKind::points_coincide, i, j, "points " + pair + " coincide"});
            } else {
                const auto& disk = di ? x.disk(i) : x.disk(j);
                const auto& pt = di ? x.point(j) : x.point(i);
                if (!T::lt(disk.radius * disk.radius, squared_distance(pt.position, disk.center), tol))
                    out.push_back({ViolationKind::point_in_disk, i, j, "entries " + pair + ": point lies in the closed disk"});
            }
        }
    }
    return out;
}

template <class S>
bool is_valid(const Configuration<S>& x, double tol = default_tolerance) {
    return validate(x, tol).empty();
}

template <class S>
void require_valid(const Configuration<S>& x, const char* what, double tol = default_tolerance) {
    auto v = validate(x, tol);
    if (!v.empty()) throw std::invalid_argument(std::string(what) + ": " + v.front().message);
}

// x ∘_slot y: apply the disk at `slot` of x to every entry of y.
template <class S>
Configuration<S> compose_at(const Configuration<S>& x, std::size_t slot, const Configuration<S>& y) {
    if (slot >= x.size()) throw std::out_of_range("composition slot out of range");
    if (!x.is_disk(slot)) throw std::invalid_argument("composition slot holds a point, not a disk");
    if (x.dim() != y.dim()) throw std::invalid_argument("composing configurations of different dimension");
    const Disk<S>& a = x.disk(slot);
    std::vector<Entry<S>> out;
    out.reserve(x.size() + y.size() - 1);
    for (std::size_t i = 0; i < slot; ++i) out.push_back(x[i]);
    for (const auto& e : y.entries()) out.push_back(transform(a, e));
    for (std::size_t i = slot + 1; i < x.size(); ++i) out.push_back(x[i]);
    return Configuration<S>(x.dim(), std::move(out));
}

// Entry i of the result is entry perm[i] of x.
template <class S>
Configuration<S> sigma_act(const Configuration<S>& x, const std::vector<std::size_t>& perm) {
    return Configuration<S>(x.dim(), permute(x.entries(), perm));
}

// Replaces every disk whose color rises to a point by the disk's center.
template <class S>
Configuration<S> shift(const Configuration<S>& x, const ColorList& to) {
    if (!leq(x.colors(), to))
        throw std::invalid_argument("shift target " + format_colors(to) + " is not above " + format_colors(x.colors()));
    std::vector<Entry<S>> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x.is_disk(i) && to[i] == Color::point) out.push_back(Point<S>{x.disk(i).center});
        else out.push_back(x[i]);
    }
    return Configuration<S>(x.dim(), std::move(out));
}

template <class S>
Configuration<S> shift_at(const Configuration<S>& x, std::size_t slot) {
    ColorList to = x.colors();
    to.at(slot) = Color::point;
    return shift(x, to);
}

// Identity embedding as a one-entry configuration: the operad unit at color 1.
template <class S>
Configuration<S> unit_configuration(std::size_t dim) {
    return Configuration<S>(dim, {Disk<S>{S(1), Vec<S>(dim, S(0))}});
}

template <class To, class From>
Configuration<To> convert(const Configuration<From>& x) {
    auto cast = [](const Vec<From>& v) {
        Vec<To> out;
        for (const auto& c : v) out.push_back(scalar_cast<To>(c));
        return out;
    };
    std::vector<Entry<To>> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x.is_disk(i)) out.push_back(Disk<To>{scalar_cast<To>(x.disk(i).radius), cast(x.disk(i).center)});
        else out.push_back(Point<To>{cast(x.point(i).position)});
    }
    return Configuration<To>(x.dim(), std::move(out));
}

// Text form: "# dim n" header, then one entry per line:
//   disk <r> <c1> .. <cn>     point <x1> .. <xn>
template <class S>
std::string format_entry(const Entry<S>& e) {
    std::string out;
    auto append = [&](const Vec<S>& v) {
        for (const auto& c : v) out += " " + ScalarTraits<S>::format(c);
    };
    if (const auto* d = std::get_if<Disk<S>>(&e)) {
        out = "disk " + ScalarTraits<S>::format(d->radius);
        append(d->center);
    } else {
        out = "point";
        append(std::get<Point<S>>(e).position);
    }
    return out;
}

template <class S>
std::string format_configuration(const Configuration<S>& x) {
    std::string out = "# dim " + std::to_string(x.dim()) + "\n";
    for (const auto& e : x.entries()) out += format_entry(e) + "\n";
    return out;
}

// Parses one entry line; throws std::invalid_argument naming the line.
template <class S>
Entry<S> parse_entry(const std::string& line, std::size_t dim, std::size_t line_no) {
    std::istringstream in(line);
    std::string kind;
    in >> kind;
    std::vector<S> values;
    std::string tok;
    auto fail = [&](const std::string& why) -> std::invalid_argument {
        return std::invalid_argument("line " + std::to_string(line_no) + ": " + why);
    };
    while (in >> tok) {
        try {
            values.push_back(ScalarTraits<S>::parse(tok));
        } catch (const std::invalid_argument& e) {
            throw fail(e.what());
        }
    }
    if (kind == "disk") {
        if (values.size() != dim + 1) throw fail("disk needs a radius and " + std::to_string(dim) + " coordinates");
        return Disk<S>{values[0], Vec<S>(values.begin() + 1, values.end())};
    }
    if (kind == "point") {
        if (values.size() != dim) throw fail("point needs " + std::to_string(dim) + " coordinates");
        return Point<S>{std::move(values)};
    }
    throw fail("expected 'disk' or 'point', got '" + kind + "'");
}

// Reads "# dim n" if present (else default_dim); blank lines and other
// '#' comments are skipped.
template <class S>
Configuration<S> parse_configuration(std::string_view text, std::size_t default_dim) {
    std::size_t dim = default_dim;
    std::vector<Entry<S>> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool body = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::istringstream h(line.substr(first + 1));
            std::string key;
            std::size_t n = 0;
            if (h >> key && key == "dim") {
                if (body || !(h >> n) || n == 0)
                    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad dim header");
                dim = n;
            }
            continue;
        }
        body = true;
        entries.push_back(parse_entry<S>(line, dim, line_no));
    }
    return Configuration<S>(dim, std::move(entries));
}

}  // namespace dendro
