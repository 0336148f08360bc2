#include "oracles.hpp"

#include <map>
#include <optional>

namespace oracle {

using concord::AtomTable;
using concord::ConditionalEvent;
using concord::Rational;
using concord::World;

bool gn_implies(const ConditionalEvent& c1, const ConditionalEvent& c2,
                const AtomTable& atoms) {
    uint32_t n = atoms.world_count();
    for (World w = 0; w < n; ++w) {
        bool h1 = c1.antecedent().evaluate(w);
        bool e1 = c1.consequent().evaluate(w);
        bool h2 = c2.antecedent().evaluate(w);
        bool e2 = c2.consequent().evaluate(w);
        if (h1 && e1 && !(h2 && e2)) return false;  // first true, second not
        if (h2 && !e2 && !(h1 && !e1)) return false;  // second false, first not
    }
    return true;
}

namespace {

/// Exact solve of a linear system with unique solution; nullopt when the
/// system is inconsistent or underdetermined.
std::optional<std::vector<Rational>> solve_unique(std::vector<std::vector<Rational>> m,
                                                  std::vector<Rational> b) {
    const size_t rows = m.size();
    const size_t cols = rows == 0 ? 0 : m[0].size();
    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        std::swap(b[pivot], b[rank]);
        Rational inv = m[rank][c];
        for (size_t j = c; j < cols; ++j) m[rank][j] /= inv;
        b[rank] /= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
            b[r] -= f * b[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    if (rank < cols) return std::nullopt;  // underdetermined
    for (size_t r = rank; r < rows; ++r) {
        if (b[r] != 0) return std::nullopt;  // inconsistent
    }
    std::vector<Rational> x(cols);
    for (size_t k = 0; k < rank; ++k) x[pivot_col[k]] = b[k];
    return x;
}

struct HullProblem {
    std::vector<World> worlds;
    // Column per world: one balance entry per event plus the final 1.
    std::vector<std::vector<Rational>> columns;
    size_t n_rows = 0;
};

/// Every basic feasible solution, as world -> mass maps. Supports of size up
/// to the row count are enumerated; each support with linearly independent
/// columns and a nonnegative exact solution is a vertex of the feasible set.
std::vector<std::map<World, Rational>> enumerate_vertices(const HullProblem& hp) {
    std::vector<std::map<World, Rational>> out;
    std::vector<Rational> rhs(hp.n_rows, Rational(0));
    rhs[hp.n_rows - 1] = 1;
    std::vector<size_t> support;
    auto attempt = [&] {
        std::vector<std::vector<Rational>> m(hp.n_rows,
                                             std::vector<Rational>(support.size()));
        for (size_t j = 0; j < support.size(); ++j) {
            for (size_t r = 0; r < hp.n_rows; ++r) m[r][j] = hp.columns[support[j]][r];
        }
        auto sol = solve_unique(std::move(m), rhs);
        if (!sol) return;
        for (const Rational& v : *sol) {
            if (v < 0) return;
        }
        std::map<World, Rational> vertex;
        for (size_t j = 0; j < support.size(); ++j) vertex[hp.worlds[support[j]]] = (*sol)[j];
        out.push_back(std::move(vertex));
    };
    auto rec = [&](auto&& self, size_t next) -> void {
        if (!support.empty()) attempt();
        if (support.size() == hp.n_rows) return;
        for (size_t j = next; j < hp.worlds.size(); ++j) {
            support.push_back(j);
            self(self, j + 1);
            support.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

bool coherent_rec(const std::vector<ConditionalEvent>& events, const std::vector<Rational>& p,
                  const AtomTable& atoms, const std::vector<size_t>& active) {
    HullProblem hp;
    hp.n_rows = active.size() + 1;
    uint32_t n = atoms.world_count();
    for (World w = 0; w < n; ++w) {
        bool in_level = false;
        for (size_t i : active) {
            if (events[i].antecedent().evaluate(w)) {
                in_level = true;
                break;
            }
        }
        if (!in_level) continue;
        std::vector<Rational> col;
        for (size_t i : active) {
            const ConditionalEvent& c = events[i];
            Rational value = !c.antecedent().evaluate(w) ? p[i]
                             : c.consequent().evaluate(w) ? Rational(1)
                                                          : Rational(0);
            col.push_back(value - p[i]);
        }
        col.push_back(Rational(1));
        hp.worlds.push_back(w);
        hp.columns.push_back(std::move(col));
    }

    std::vector<std::map<World, Rational>> vertices = enumerate_vertices(hp);
    if (vertices.empty()) return false;

    std::vector<size_t> starved;
    for (size_t k = 0; k < active.size(); ++k) {
        size_t i = active[k];
        bool has_mass = false;
        for (const auto& vertex : vertices) {
            Rational mass(0);
            for (const auto& [w, lambda] : vertex) {
                if (events[i].antecedent().evaluate(w)) mass += lambda;
            }
            if (mass > 0) {
                has_mass = true;
                break;
            }
        }
        if (!has_mass) starved.push_back(i);
    }
    if (starved.empty()) return true;
    return coherent_rec(events, p, atoms, starved);
}

}  // namespace

bool coherent(const std::vector<ConditionalEvent>& events, const std::vector<Rational>& p,
              const AtomTable& atoms) {
    std::vector<size_t> all(events.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    if (all.empty()) return true;
    return coherent_rec(events, p, atoms, all);
}

}  // namespace oracle
