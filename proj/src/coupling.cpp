#include "cavmagic/coupling.hpp"

#include <stdexcept>

namespace cavmagic {

namespace {

int half_exponent_sign(int twice_exponent, const char* what) {
    if (twice_exponent % 2 != 0) {
        throw std::logic_error(std::string("coupling phase exponent not an integer in ") + what);
    }
    return (twice_exponent / 2) % 2 == 0 ? 1 : -1;
}

/// Unnormalized c_{F';m,m'} as an exact value.
ExactSqrt coupling_exact(const LevelScheme& scheme, HalfInteger f_prime, HalfInteger m,
                         HalfInteger m_prime) {
    const HalfInteger f = scheme.ground_f;
    const HalfInteger one = HalfInteger::from_int(1);
    const HalfInteger q = m - m_prime;
    if (abs(q).twice() > 2) return ExactSqrt::zero();

    // hyperfine reduction factor, independent of m
    ExactSqrt hf = wigner6j(scheme.j_ground, scheme.j_excited, one, f_prime, f, scheme.nuclear_i);
    hf = hf * ExactSqrt::sqrt_of(BigRational((f_prime.twice() + 1) * (scheme.j_ground.twice() + 1)));
    hf.sign *= half_exponent_sign(
        f_prime.twice() + scheme.j_ground.twice() + 2 + scheme.nuclear_i.twice(), "hf factor");

    // geometric (Clebsch-Gordan) factor
    ExactSqrt geom = wigner3j(f_prime, one, f, m_prime, q, -m);
    geom = geom * ExactSqrt::sqrt_of(BigRational(f.twice() + 1));
    geom.sign *= half_exponent_sign(f_prime.twice() - 2 + m.twice(), "geometric factor");

    return hf * geom;
}

}  // namespace

TransitionTable::TransitionTable(HalfInteger ground_f, std::size_t num_levels)
    : ground_f_(ground_f),
      num_levels_(num_levels),
      coeff_(num_levels * static_cast<std::size_t>(ground_f.twice() + 1) * 3, 0.0) {}

std::size_t TransitionTable::slot(std::size_t level_index, HalfInteger m, int q) const {
    const auto m_index = static_cast<std::size_t>((m.twice() + ground_f_.twice()) / 2);
    return (level_index * static_cast<std::size_t>(ground_f_.twice() + 1) + m_index) * 3 +
           static_cast<std::size_t>(q + 1);
}

double TransitionTable::coefficient(std::size_t level_index, HalfInteger m,
                                    HalfInteger m_prime) const {
    if (level_index >= num_levels_) throw std::out_of_range("TransitionTable: level index");
    if (!valid_projection(ground_f_, m)) return 0.0;
    const int q_twice = m_prime.twice() - m.twice();
    if (q_twice % 2 != 0) return 0.0;
    const int q = q_twice / 2;
    if (q < -1 || q > 1) return 0.0;
    return coeff_[slot(level_index, m, q)];
}

double TransitionTable::total_strength(HalfInteger m) const {
    double total = 0.0;
    for (std::size_t e = 0; e < num_levels_; ++e) {
        for (int q = -1; q <= 1; ++q) {
            const double c = coeff_[slot(e, m, q)];
            total += c * c;
        }
    }
    return total;
}

void TransitionTable::set(std::size_t level_index, HalfInteger m, int q, double value) {
    coeff_[slot(level_index, m, q)] = value;
}

namespace {

ExactSqrt stretch_coefficient(const LevelScheme& scheme) {
    const HalfInteger f = scheme.ground_f;
    const HalfInteger f_plus_one = f + HalfInteger::from_int(1);
    bool found = false;
    for (const auto& lv : scheme.levels) {
        if (lv.f == f_plus_one) found = true;
    }
    if (!found) {
        throw std::runtime_error(
            "coupling_table: scheme has no F' = F+1 level; the cycling transition fixes the "
            "normalization");
    }
    const ExactSqrt stretch = coupling_exact(scheme, f_plus_one, f, f_plus_one);
    if (stretch.is_zero()) throw std::logic_error("coupling_table: vanishing cycling coefficient");
    return stretch;
}

}  // namespace

ExactSqrt coupling_coefficient_exact(const LevelScheme& scheme, std::size_t level_index,
                                     HalfInteger m, HalfInteger m_prime) {
    if (level_index >= scheme.num_levels()) {
        throw std::out_of_range("coupling_coefficient_exact: level index");
    }
    const HalfInteger fp = scheme.levels[level_index].f;
    if (abs(fp - scheme.ground_f).twice() > 2) return ExactSqrt::zero();
    if (!valid_projection(scheme.ground_f, m) || !valid_projection(fp, m_prime)) {
        return ExactSqrt::zero();
    }
    return coupling_exact(scheme, fp, m, m_prime) / stretch_coefficient(scheme);
}

TransitionTable coupling_table(const LevelScheme& scheme) {
    scheme.validate();
    const HalfInteger f = scheme.ground_f;
    const ExactSqrt stretch = stretch_coefficient(scheme);

    TransitionTable table(f, scheme.num_levels());
    for (std::size_t e = 0; e < scheme.num_levels(); ++e) {
        const HalfInteger fp = scheme.levels[e].f;
        if (abs(fp - f).twice() > 2) {
            table.mark_rejected(scheme.levels[e].label());
            continue;
        }
        for (int mt = -f.twice(); mt <= f.twice(); mt += 2) {
            const HalfInteger m = HalfInteger::from_twice(mt);
            for (int q = -1; q <= 1; ++q) {
                const HalfInteger mp = m + HalfInteger::from_int(q);
                if (!valid_projection(fp, mp)) continue;
                const ExactSqrt c = coupling_exact(scheme, fp, m, mp) / stretch;
                table.set(e, m, q, c.to_double());
            }
        }
    }
    return table;
}

}  // namespace cavmagic
