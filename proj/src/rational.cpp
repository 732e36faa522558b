#include "flowgame/rational.hpp"

#include <stdexcept>

namespace flowgame {

std::string to_string(const Rational& value)
{
    Rational canonical = value;
    canonical.canonicalize();
    return canonical.get_str();
}

Rational parse_rational(std::string_view text)
{
    if (text.empty()) {
        throw std::invalid_argument("empty rational");
    }
    auto slash = text.find('/');
    auto digits_ok = [](std::string_view part, bool allow_sign) {
        if (allow_sign && !part.empty() && (part.front() == '-' || part.front() == '+')) {
            part.remove_prefix(1);
        }
        if (part.empty()) {
            return false;
        }
        for (char c : part) {
            if (c < '0' || c > '9') {
                return false;
            }
        }
        return true;
    };
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    if (num.front() == '+') {
        num.remove_prefix(1);
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string join(std::span<const Rational> values, std::string_view separator)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) {
            out += separator;
        }
        out += to_string(values[i]);
    }
    return out;
}

Rational sum(std::span<const Rational> values)
{
    Rational total = 0;
    for (const auto& v : values) {
        total += v;
    }
    return total;
}

}  // namespace flowgame
