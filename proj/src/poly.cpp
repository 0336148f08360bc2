#include "concord/poly.hpp"

#include <algorithm>

namespace concord {

int SymbolTable::add(const std::string& name) {
    if (index(name)) throw Error("symbol already declared: " + name);
    names_.push_back(name);
    return size() - 1;
}

int SymbolTable::fresh(const std::string& base) {
    if (!index(base)) return add(base);
    for (int k = 2;; ++k) {
        std::string candidate = base + "_" + std::to_string(k);
        if (!index(candidate)) return add(candidate);
    }
}

std::optional<int> SymbolTable::index(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<int>(i);
    }
    return std::nullopt;
}

AffineValue::AffineValue(const Rational& c) {
    if (c != 0) terms_[{}] = c;
}

AffineValue AffineValue::symbol(int id) {
    AffineValue v;
    v.terms_[{id}] = 1;
    return v;
}

bool AffineValue::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational AffineValue::constant_part() const {
    auto it = terms_.find({});
    return it == terms_.end() ? Rational(0) : it->second;
}

bool AffineValue::is_symbol(int id) const {
    return terms_.size() == 1 && terms_.begin()->first == Monomial{id} &&
           terms_.begin()->second == 1;
}

int AffineValue::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
    return d;
}

std::set<int> AffineValue::symbols() const {
    std::set<int> out;
    for (const auto& [m, c] : terms_) out.insert(m.begin(), m.end());
    return out;
}

bool AffineValue::mentions(int id) const {
    for (const auto& [m, c] : terms_) {
        if (std::find(m.begin(), m.end(), id) != m.end()) return true;
    }
    return false;
}

void AffineValue::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

AffineValue AffineValue::operator+(const AffineValue& o) const {
    AffineValue r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

AffineValue AffineValue::operator-(const AffineValue& o) const {
    AffineValue r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

AffineValue AffineValue::operator*(const AffineValue& o) const {
    AffineValue r;
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            Monomial m = m1;
            m.insert(m.end(), m2.begin(), m2.end());
            std::sort(m.begin(), m.end());
            r.add_term(m, c1 * c2);
        }
    }
    return r;
}

AffineValue AffineValue::operator-() const {
    AffineValue r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

AffineValue AffineValue::substituted(int id, const AffineValue& v) const {
    AffineValue r;
    for (const auto& [m, c] : terms_) {
        AffineValue term(c);
        for (int s : m) {
            term = (s == id) ? term * v : term * AffineValue::symbol(s);
        }
        r = r + term;
    }
    return r;
}

AffineValue AffineValue::substituted(const Binding& b) const {
    AffineValue r = *this;
    for (const auto& [id, val] : b) {
        if (r.mentions(id)) r = r.substituted(id, AffineValue(val));
    }
    return r;
}

Rational AffineValue::evaluate(const Binding& b) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (int s : m) {
            auto it = b.find(s);
            if (it == b.end()) throw UnboundSymbol("symbol #" + std::to_string(s) + " unbound");
            term *= it->second;
        }
        total += term;
    }
    return total;
}

std::pair<AffineValue, AffineValue> AffineValue::split_on(int id) const {
    AffineValue alpha, beta;
    for (const auto& [m, c] : terms_) {
        long occurrences = std::count(m.begin(), m.end(), id);
        if (occurrences == 0) {
            alpha.add_term(m, c);
        } else if (occurrences == 1) {
            Monomial rest;
            bool removed = false;
            for (int s : m) {
                if (s == id && !removed) {
                    removed = true;
                } else {
                    rest.push_back(s);
                }
            }
            beta.add_term(rest, c);
        } else {
            throw InternalError("value is nonlinear in the split symbol");
        }
    }
    return {alpha, beta};
}

std::string AffineValue::to_string(const SymbolTable& syms) const {
    if (terms_.empty()) return "0";
    // Order: total degree ascending, then monomial id-vector ascending.
    std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        return a.first < b.first;
    });
    std::string out;
    bool first = true;
    for (const auto& [m, c] : ordered) {
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::vector<std::string> factors;
        for (int s : m) factors.push_back(syms.name(s));
        std::sort(factors.begin(), factors.end());
        std::string body;
        if (mag != 1 || factors.empty()) body = concord::to_string(mag);
        for (const auto& f : factors) {
            if (!body.empty()) body += "*";
            body += f;
        }
        out += body;
    }
    return out;
}

}  // namespace concord
