#include "dendro/scalar.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace dendro {

namespace {

bool is_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

[[noreturn]] void bad_scalar(std::string_view text) {
    throw std::invalid_argument("malformed scalar '" + std::string(text) + "'");
}

// Accepts [-+]digits[.digits] and [-+]digits/digits.
Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational result;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!is_digits(num) || !is_digits(den)) bad_scalar(text);
        mpz_class n(std::string(num), 10), d(std::string(den), 10);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        result = Rational(n, d);
        result.canonicalize();
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !is_digits(whole)) ||
            (!frac.empty() && !is_digits(frac)))
            bad_scalar(text);
        mpz_class n(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
        result = Rational(n, d);
        result.canonicalize();
    } else {
        if (!is_digits(body)) bad_scalar(text);
        result = Rational(mpz_class(std::string(body), 10));
    }
    result.canonicalize();
    return negative ? Rational(-result) : result;
}

}  // namespace

Rational ScalarTraits<Rational>::parse(std::string_view text) { return parse_rational(text); }

std::string ScalarTraits<Rational>::format(const Rational& value) { return value.get_str(); }

double ScalarTraits<double>::parse(std::string_view text) {
    if (text.find('/') != std::string_view::npos) {
        // mpq get_d truncates; divide exact doubles instead so 1/10 rounds like 0.1
        Rational q = parse_rational(text);
        mpz_class limit = mpz_class(1) << 53;
        if (abs(q.get_num()) <= limit && q.get_den() <= limit)
            return q.get_num().get_d() / q.get_den().get_d();
        return q.get_d();
    }
    std::string_view body = text;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double value = 0.0;
    auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (ec != std::errc() || end != body.data() + body.size()) bad_scalar(text);
    return value;
}

std::string ScalarTraits<double>::format(double value) {
    if (value == 0.0) return "0";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc()) throw std::runtime_error("cannot format double");
    return std::string(buf, end);
}

Rational snap_to_grid(double value, long denominator) {
    auto k = static_cast<long>(std::trunc(value * static_cast<double>(denominator)));
    Rational r(k, denominator);
    r.canonicalize();
    return r;
}

}  // namespace dendro
