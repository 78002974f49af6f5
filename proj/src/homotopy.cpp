#include "dendro/homotopy.hpp"

#include <cmath>
#include <limits>

namespace dendro {

namespace {

double distance(const Vec<double>& a, const Vec<double>& b) { return std::sqrt(squared_distance(a, b)); }

}  // namespace

double epsilon(const Configuration<double>& y, std::size_t slot) {
    if (slot >= y.size()) throw std::out_of_range("epsilon slot out of range");
    if (y.is_disk(slot)) throw std::invalid_argument("epsilon needs a point at the given slot");
    require_valid(y, "epsilon");
    const auto& d = y.point(slot).position;
    double best = 1.0 - std::sqrt(squared_norm(d));
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i == slot) continue;
        double gap = y.is_disk(i) ? distance(d, y.disk(i).center) - y.disk(i).radius
                                  : distance(d, y.point(i).position);
        best = std::min(best, gap);
    }
    return best;
}

Configuration<double> g_inverse(const Configuration<double>& y, std::size_t slot) {
    double eps = epsilon(y, slot);
    auto entries = y.entries();
    entries[slot] = Disk<double>{eps / 2.0, y.point(slot).position};
    return Configuration<double>(y.dim(), std::move(entries));
}

Configuration<double> homotopy(const Configuration<double>& x, std::size_t slot, double t) {
    if (slot >= x.size()) throw std::out_of_range("homotopy slot out of range");
    if (!x.is_disk(slot)) throw std::invalid_argument("homotopy needs a disk at the given slot");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("homotopy parameter must lie in [0, 1]");
    require_valid(x, "homotopy");
    const Disk<double>& a = x.disk(slot);
    double half_eps = epsilon(shift_at(x, slot), slot) / 2.0;
    auto entries = x.entries();
    entries[slot] = Disk<double>{t * a.radius + (1.0 - t) * half_eps, a.center};
    return Configuration<double>(x.dim(), std::move(entries));
}

}  // namespace dendro
