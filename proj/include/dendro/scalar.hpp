#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace dendro {

using Rational = mpq_class;

inline constexpr double default_tolerance = 1e-9;

// Arithmetic mode of a configuration. Rational compares exactly; double
// relaxes non-strict comparisons by a tolerance.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";

    static Rational parse(std::string_view text);
    static std::string format(const Rational& value);
    static double to_double(const Rational& value) { return value.get_d(); }
    static Rational from_double(double value) { return Rational(value); }

    static bool le(const Rational& a, const Rational& b, double) { return a <= b; }
    static bool lt(const Rational& a, const Rational& b, double) { return a < b; }
    static double distance(const Rational& a, const Rational& b) {
        return a == b ? 0.0 : std::abs(Rational(a - b).get_d());
    }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";

    static double parse(std::string_view text);
    static std::string format(double value);
    static double to_double(double value) { return value; }
    static double from_double(double value) { return value; }

    static bool le(double a, double b, double tol) { return a <= b + tol; }
    static bool lt(double a, double b, double) { return a < b; }
    static double distance(double a, double b) { return std::abs(a - b); }
};

template <class To, class From>
To scalar_cast(const From& value) {
    if constexpr (std::is_same_v<To, From>) return value;
    else return ScalarTraits<To>::from_double(ScalarTraits<From>::to_double(value));
}

// Snaps a sampled double onto the grid k / denominator, rounding toward zero.
Rational snap_to_grid(double value, long denominator);

}  // namespace dendro
