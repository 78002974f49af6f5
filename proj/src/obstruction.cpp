#include "dendro/obstruction.hpp"

#include <cmath>
#include <stdexcept>

namespace dendro {

RadiusCandidate RadiusCandidate::parse(std::string_view spec) {
    auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("radius candidate must be const:<v> or radial:<coeffs>");
    auto kind = spec.substr(0, colon);
    auto rest = spec.substr(colon + 1);
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= rest.size()) {
        auto end = rest.find(',', start);
        if (end == std::string_view::npos) end = rest.size();
        values.push_back(ScalarTraits<double>::parse(rest.substr(start, end - start)));
        start = end + 1;
    }
    if (kind == "const") {
        if (values.size() != 1) throw std::invalid_argument("const candidate takes one value");
        return constant(values.front());
    }
    if (kind == "radial") return radial(std::move(values));
    throw std::invalid_argument("unknown radius candidate kind '" + std::string(kind) + "'");
}

double RadiusCandidate::operator()(const Vec<double>& y) const {
    if (!radial_) return coefficients_.front();
    double s = std::sqrt(squared_norm(y));
    double acc = 0.0;
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

std::string RadiusCandidate::describe() const {
    std::string out = radial_ ? "radial:" : "const:";
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        if (i) out += ',';
        out += ScalarTraits<double>::format(coefficients_[i]);
    }
    return out;
}

std::vector<double> t_grid(double tmin, double tmax, std::size_t steps) {
    if (steps == 0) throw std::invalid_argument("grid needs at least one step");
    if (!(tmin <= tmax)) throw std::invalid_argument("grid needs tmin <= tmax");
    if (steps == 1) return {tmax};
    std::vector<double> out;
    for (std::size_t j = 0; j < steps; ++j)
        out.push_back(tmin + (tmax - tmin) * static_cast<double>(j) / static_cast<double>(steps - 1));
    return out;
}

ObstructionScan obstruction_scan(const RadiusCandidate& r, const Vec<double>& c1, const Vec<double>& p,
                                 const std::vector<double>& grid) {
    if (c1.size() != p.size()) throw std::invalid_argument("c1 and P must have the same dimension");
    double c_norm = std::sqrt(squared_norm(c1));
    if (!(c_norm < 1.0)) throw std::invalid_argument("|c1| must be below 1");
    if (!(squared_norm(p) < 1.0)) throw std::invalid_argument("P must lie in the open unit ball");
    ObstructionScan scan;
    for (double t : grid) {
        if (!(t > 0.0 && t <= 1.0 - c_norm)) throw std::invalid_argument("grid point outside (0, 1 - |c1|]");
        Vec<double> y(p.size());
        for (std::size_t k = 0; k < p.size(); ++k) y[k] = t * p[k] + c1[k];
        double bound = r(y) - t;
        if (scan.rows.empty() || bound < scan.floor) scan.floor = bound;
        if (bound > 0.0) ++scan.positive;
        scan.rows.push_back({t, bound});
    }
    return scan;
}

}  // namespace dendro
