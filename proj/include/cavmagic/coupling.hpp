#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cavmagic/atom_model.hpp"
#include "cavmagic/half_integer.hpp"
#include "cavmagic/wigner.hpp"

namespace cavmagic {

/// Dipole coupling coefficients c_{F';m,m'} for every allowed ground-excited
/// sublevel pair of a level scheme, normalized so the cycling transition
/// (m = F -> m' = F+1 on the highest F') is exactly 1, with Condon-Shortley
/// phases. Built in exact arithmetic, stored as double.
///
/// Reflection symmetry: c_{F';-m,-m'} = (-1)^(F+F'+1) c_{F';m,m'}.
class TransitionTable {
public:
    TransitionTable(HalfInteger ground_f, std::size_t num_levels);

    HalfInteger ground_f() const { return ground_f_; }
    std::size_t num_levels() const { return num_levels_; }

    /// c_{F';m,m'}; zero for any pair outside the selection rules or for a
    /// rejected level.
    double coefficient(std::size_t level_index, HalfInteger m, HalfInteger m_prime) const;

    /// Levels whose F' cannot couple to the ground F (|F'-F| > 1); entries
    /// kept in place as zeros but flagged here.
    const std::vector<std::string>& rejected_levels() const { return rejected_; }

    /// sum over F', m' of c^2 for a given m (the per-sublevel total strength).
    double total_strength(HalfInteger m) const;

    void set(std::size_t level_index, HalfInteger m, int q, double value);
    void mark_rejected(const std::string& label) { rejected_.push_back(label); }

private:
    std::size_t slot(std::size_t level_index, HalfInteger m, int q) const;

    HalfInteger ground_f_;
    std::size_t num_levels_;
    std::vector<double> coeff_;  // [level][(m+F)][q+1], q = m' - m
    std::vector<std::string> rejected_;
};

/// Builds the coupling table for a scheme from exact Wigner algebra:
///   c ~ (-1)^(F'+J+1+I) sqrt((2F'+1)(2J+1)) {J J' 1; F' F I}
///       * (-1)^(F'-1+m) sqrt(2F+1) (F' 1 F; m' q -m),  q = m - m',
/// rescaled so the cycling transition coefficient is exactly 1.
/// Throws std::runtime_error when the scheme has no cycling transition
/// (no level with F' = F+1).
TransitionTable coupling_table(const LevelScheme& scheme);

/// Exact normalized coefficient for one transition; the double table above
/// is this value converted at the boundary.
ExactSqrt coupling_coefficient_exact(const LevelScheme& scheme, std::size_t level_index,
                                     HalfInteger m, HalfInteger m_prime);

}  // namespace cavmagic
