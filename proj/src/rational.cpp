#include "concord/rational.hpp"

#include <cctype>

namespace concord {

std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    if (s.empty()) return std::nullopt;

    Rational value;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash);
        std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        Integer d(den);
        if (d == 0) return std::nullopt;
        value = Rational(Integer(num), d);
    } else if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
        Integer scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        value = Rational(Integer(whole) * scale + Integer(frac), scale);
    } else {
        if (!all_digits(s)) return std::nullopt;
        value = Rational(Integer(s));
    }
    if (negative) value = -value;
    return value;
}

}  // namespace concord
