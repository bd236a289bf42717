#include "csdiv/rational.hpp"

#include <cctype>

namespace csdiv {

std::string to_fraction_string(const Rational& r) {
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            const BigInt num(text.substr(0, slash));
            const BigInt den(text.substr(slash + 1));
            if (den == 0) return std::nullopt;
            return Rational(num, den);
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(BigInt(text));
        // Decimal literal: digits after the dot give an exact power-of-ten
        // denominator.
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
        BigInt den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
            den *= 10;
        }
        return Rational(BigInt(digits), den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace csdiv
