#include "cavmagic/atom_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cavmagic/coupling.hpp"
#include "default_levels.hpp"

namespace cavmagic {

using nlohmann::json;

std::size_t LevelScheme::reference_index() const {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (levels[i].omega_offset_mhz == 0.0) return i;
    }
    throw std::runtime_error("level scheme: no reference level with zero offset");
}

void LevelScheme::validate() const {
    if (levels.empty()) throw std::runtime_error("level scheme: no excited levels");
    if (ground_f.twice() < 0) throw std::runtime_error("level scheme: negative ground F");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& lv = levels[i];
        if (lv.gamma_mhz <= 0.0) {
            throw std::runtime_error("level scheme: non-positive linewidth for " + lv.label());
        }
        for (std::size_t k = i + 1; k < levels.size(); ++k) {
            if (levels[k].f == lv.f) {
                throw std::runtime_error("level scheme: duplicate level " + lv.label());
            }
        }
        if (i > 0 && levels[i].omega_offset_mhz <= levels[i - 1].omega_offset_mhz) {
            throw std::runtime_error("level scheme: offsets not strictly increasing at " +
                                     lv.label());
        }
    }
    reference_index();  // throws when missing
}

namespace {

HalfInteger half_from_json(const json& j, const std::string& key) {
    if (!j.contains(key)) throw std::runtime_error("level scheme: missing field '" + key + "'");
    return HalfInteger::from_double(j.at(key).get<double>());
}

}  // namespace

LevelScheme parse_level_scheme(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("level scheme: invalid JSON: ") + e.what());
    }

    LevelScheme scheme;
    scheme.name = doc.value("name", "");
    if (!doc.contains("reference_transition")) {
        throw std::runtime_error("level scheme: missing field 'reference_transition'");
    }
    scheme.reference_transition = doc.at("reference_transition").get<std::string>();
    scheme.ground_f = half_from_json(doc, "ground_F");
    scheme.j_ground = half_from_json(doc, "J_ground");
    scheme.j_excited = half_from_json(doc, "J_excited");
    scheme.nuclear_i = half_from_json(doc, "nuclear_I");
    if (doc.contains("references")) {
        for (const auto& r : doc.at("references")) scheme.references.push_back(r.get<std::string>());
    }

    if (!doc.contains("excited_levels") || !doc.at("excited_levels").is_array()) {
        throw std::runtime_error("level scheme: missing 'excited_levels' array");
    }
    for (const auto& entry : doc.at("excited_levels")) {
        ExcitedLevel lv;
        lv.f = half_from_json(entry, "F");
        if (!entry.contains("omega_offset_mhz")) {
            throw std::runtime_error("level scheme: missing omega_offset_mhz for F'=" +
                                     lv.f.str());
        }
        lv.omega_offset_mhz = entry.at("omega_offset_mhz").get<double>();
        if (!entry.contains("gamma_mhz")) {
            throw std::runtime_error("level scheme: missing gamma_mhz for F'=" + lv.f.str());
        }
        lv.gamma_mhz = entry.at("gamma_mhz").get<double>();
        scheme.levels.push_back(lv);
    }
    scheme.validate();
    return scheme;
}

LevelScheme load_level_scheme(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("level scheme: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_level_scheme(buf.str());
}

const std::string& default_level_scheme_text() {
    static const std::string text = detail::default_levels_json;
    return text;
}

const LevelScheme& default_level_scheme() {
    static const LevelScheme scheme = parse_level_scheme(default_level_scheme_text());
    return scheme;
}

ZeemanDistribution::ZeemanDistribution(HalfInteger f, std::vector<double> populations)
    : f_(f), populations_(std::move(populations)) {
    const auto expected = static_cast<std::size_t>(f.twice() + 1);
    if (populations_.size() != expected) {
        throw std::invalid_argument("ZeemanDistribution: expected " + std::to_string(expected) +
                                    " populations for F=" + f.str());
    }
    double total = 0.0;
    for (double p : populations_) {
        if (p < 0.0) throw std::invalid_argument("ZeemanDistribution: negative population");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("ZeemanDistribution: populations sum to " +
                                    std::to_string(total) + ", expected 1");
    }
}

ZeemanDistribution ZeemanDistribution::uniform(HalfInteger f) {
    const auto n = static_cast<std::size_t>(f.twice() + 1);
    return ZeemanDistribution(f, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ZeemanDistribution ZeemanDistribution::delta(HalfInteger f, HalfInteger m) {
    if (!valid_projection(f, m)) {
        throw std::invalid_argument("ZeemanDistribution: m=" + m.str() + " invalid for F=" +
                                    f.str());
    }
    std::vector<double> p(static_cast<std::size_t>(f.twice() + 1), 0.0);
    p[static_cast<std::size_t>((m.twice() + f.twice()) / 2)] = 1.0;
    return ZeemanDistribution(f, std::move(p));
}

ZeemanDistribution ZeemanDistribution::from_weights(HalfInteger f,
                                                    const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("ZeemanDistribution: negative weight");
        total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("ZeemanDistribution: all weights zero");
    std::vector<double> p(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) p[i] = weights[i] / total;
    // re-normalize exactly enough for the 1e-12 gate
    double s = 0.0;
    for (double v : p) s += v;
    for (double& v : p) v /= s;
    return ZeemanDistribution(f, std::move(p));
}

double ZeemanDistribution::population(HalfInteger m) const {
    if (!valid_projection(f_, m)) return 0.0;
    return populations_[static_cast<std::size_t>((m.twice() + f_.twice()) / 2)];
}

AveragedStrengths zeeman_average(const TransitionTable& table, const ZeemanDistribution& dist) {
    if (table.ground_f() != dist.f()) {
        throw std::invalid_argument("zeeman_average: table and distribution have different F");
    }
    double total = 0.0;
    for (double p : dist.populations()) total += p;
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("zeeman_average: distribution not normalized");
    }

    AveragedStrengths out;
    out.c2.assign(table.num_levels(), 0.0);
    const HalfInteger one = HalfInteger::from_int(1);
    for (std::size_t e = 0; e < table.num_levels(); ++e) {
        double acc = 0.0;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            const HalfInteger m = dist.m_at(i);
            const double minus = table.coefficient(e, m, m - one);
            const double plus = table.coefficient(e, m, m + one);
            acc += dist.populations()[i] * 0.5 * (minus * minus + plus * plus);
        }
        out.c2[e] = acc;
    }
    return out;
}

}  // namespace cavmagic
