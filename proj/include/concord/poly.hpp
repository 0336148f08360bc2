#pragma once

#include "concord/errors.hpp"
#include "concord/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace concord {

/// Registry of prevision symbols. Symbol id = registration order.
class SymbolTable {
public:
    /// Registers a symbol under a unique name; throws Error on duplicates.
    int add(const std::string& name);
    /// Registers under `base`, appending a numeric suffix if taken.
    int fresh(const std::string& base);
    std::optional<int> index(const std::string& name) const;
    const std::string& name(int id) const { return names_.at(static_cast<size_t>(id)); }
    int size() const { return static_cast<int>(names_.size()); }

private:
    std::vector<std::string> names_;
};

/// Binding of symbols to exact rationals.
using Binding = std::map<int, Rational>;

/// Exact multivariate polynomial over prevision symbols. Degree stays <= 2
/// for every quantity this library builds, but the representation is general.
class AffineValue {
public:
    /// Monomial: symbol ids sorted ascending, repeated per power.
    using Monomial = std::vector<int>;

    AffineValue() = default;
    AffineValue(const Rational& c);
    AffineValue(int c) : AffineValue(Rational(c)) {}
    static AffineValue symbol(int id);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Coefficient of the empty monomial.
    Rational constant_part() const;
    /// Exactly 1 * the given symbol, nothing else.
    bool is_symbol(int id) const;
    int degree() const;
    std::set<int> symbols() const;
    bool mentions(int id) const;

    AffineValue operator+(const AffineValue& o) const;
    AffineValue operator-(const AffineValue& o) const;
    AffineValue operator*(const AffineValue& o) const;
    AffineValue operator-() const;
    bool operator==(const AffineValue& o) const = default;

    /// Replaces every occurrence of the symbol by the given value.
    AffineValue substituted(int id, const AffineValue& v) const;
    AffineValue substituted(const Binding& b) const;

    /// Full numeric evaluation; throws UnboundSymbol if a symbol is missing.
    Rational evaluate(const Binding& b) const;

    /// Writes the value as alpha + beta * sym; throws InternalError if the
    /// symbol appears with degree >= 2.
    std::pair<AffineValue, AffineValue> split_on(int id) const;

    /// Canonical rendering: terms by ascending total degree then ascending
    /// monomial; factors within a term alphabetically by symbol name.
    std::string to_string(const SymbolTable& syms) const;

private:
    void add_term(const Monomial& m, const Rational& c);
    std::map<Monomial, Rational> terms_;  // no zero coefficients
};

inline AffineValue operator*(const Rational& c, const AffineValue& v) {
    return AffineValue(c) * v;
}

}  // namespace concord
