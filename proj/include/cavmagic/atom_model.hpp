#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cavmagic/half_integer.hpp"

namespace cavmagic {

class TransitionTable;

struct ExcitedLevel {
    HalfInteger f;              // F'
    double omega_offset_mhz;    // offset relative to the reference transition
    double gamma_mhz;           // HWHM linewidth
    std::string label() const { return "F'=" + f.str(); }
};

/// Hyperfine level structure of the driven line: ground F, the excited F'
/// manifold with frequency offsets and linewidths, and the quantum numbers
/// (J, J', I) needed to reduce hyperfine dipole matrix elements.
struct LevelScheme {
    std::string name;
    std::string reference_transition;
    HalfInteger ground_f;
    HalfInteger j_ground;
    HalfInteger j_excited;
    HalfInteger nuclear_i;
    std::vector<ExcitedLevel> levels;  // strictly ascending omega_offset_mhz
    std::vector<std::string> references;

    std::size_t num_levels() const { return levels.size(); }
    /// Index of the level the detuning origin refers to (omega_offset == 0).
    std::size_t reference_index() const;
    void validate() const;
};

/// Parses a level-scheme JSON document. Throws std::runtime_error with a
/// descriptive message on missing fields, non-positive linewidths, duplicate
/// F' entries or unordered offsets.
LevelScheme parse_level_scheme(const std::string& json_text);

/// Reads a level-scheme document from disk.
LevelScheme load_level_scheme(const std::string& path);

/// The document shipped with the library (Rb-87 D2, F=2 manifold; data and
/// citation inside the document itself).
const std::string& default_level_scheme_text();
const LevelScheme& default_level_scheme();

/// Normalized populations p_m over the ground sublevels m = -F..F.
class ZeemanDistribution {
public:
    ZeemanDistribution(HalfInteger f, std::vector<double> populations);

    static ZeemanDistribution uniform(HalfInteger f);
    static ZeemanDistribution delta(HalfInteger f, HalfInteger m);
    /// Nonnegative weights, normalized internally.
    static ZeemanDistribution from_weights(HalfInteger f, const std::vector<double>& weights);

    HalfInteger f() const { return f_; }
    std::size_t size() const { return populations_.size(); }
    double population(HalfInteger m) const;
    const std::vector<double>& populations() const { return populations_; }
    /// Sublevel value for storage index i (m = -F + i).
    HalfInteger m_at(std::size_t i) const { return HalfInteger::from_twice(-f_.twice() + 2 * static_cast<int>(i)); }

private:
    HalfInteger f_;
    std::vector<double> populations_;  // index (m + F), unit steps
};

/// Zeeman-averaged sigma-coupling strengths <c^2_{F'}>, aligned with
/// LevelScheme::levels.
struct AveragedStrengths {
    std::vector<double> c2;
};

/// <c^2_{F'}> = sum_m p_m * 1/2 (c^2_{F';m,m-1} + c^2_{F';m,m+1}), the
/// average over the two circular components that drive the y-polarized mode.
AveragedStrengths zeeman_average(const TransitionTable& table, const ZeemanDistribution& dist);

}  // namespace cavmagic
