#include "ohc/rational.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace ohc {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t value = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last)
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = parse_int(text.substr(0, slash), text);
        const auto den = parse_int(text.substr(slash + 1), text);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        auto frac = text.substr(dot + 1);
        if (frac.size() > 15) throw std::invalid_argument("too many decimals in '" + std::string(text) + "'");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        auto whole = text.substr(0, dot);
        const bool negative = !whole.empty() && whole.front() == '-';
        const std::int64_t ip = whole.empty() || whole == "-" || whole == "+" ? 0 : parse_int(whole, text);
        const std::int64_t fp = frac.empty() ? 0 : parse_int(frac, text);
        const std::int64_t mag = (ip < 0 ? -ip : ip) * den + fp;
        return Rational(negative ? -mag : mag, den);
    }
    return Rational(parse_int(text, text));
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::int64_t floor_of(const Rational& r) {
    const auto q = r.numerator() / r.denominator();
    const auto rem = r.numerator() % r.denominator();
    return rem < 0 ? q - 1 : q;
}

std::int64_t count_threshold(const Rational& alpha, std::int64_t n, int power) {
    Rational scaled = alpha;
    for (int i = 0; i < power; ++i) scaled *= n;
    return std::max<std::int64_t>(1, floor_of(scaled));
}

}  // namespace ohc
