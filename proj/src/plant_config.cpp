#include "hfbs/plant_config.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "hfbs/trajgen.hpp"

namespace hfbs {

std::string PlantStabilityReport::summary() const {
    auto line = [](const char* name, const std::vector<double>& mags) {
        std::ostringstream os;
        os << name << " max|pole| = ";
        if (mags.empty())
            os << "0 (static)";
        else
            os << mags.front() << (mags.front() < 1.0 ? " (stable)" : " (UNSTABLE)");
        return os.str();
    };
    std::ostringstream os;
    os << line("gxx", poles_gxx) << "; " << line("gyy", poles_gyy) << "; "
       << line("gxtheta", poles_gxtheta);
    return os.str();
}

PlantStabilityReport stability_report(const HFramePlant& plant) {
    PlantStabilityReport rep;
    rep.poles_gxx = plant.gxx.pole_magnitudes();
    rep.poles_gyy = plant.gyy.pole_magnitudes();
    rep.poles_gxtheta = plant.gxtheta.pole_magnitudes();
    rep.all_stable = plant.all_stable();
    return rep;
}

namespace {

struct RawConfig {
    std::map<std::string, std::vector<double>> lists;
    std::map<std::string, std::string> strings;
    std::string name;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::runtime_error(name + ": " + msg);
    }

    double scalar(const std::string& key) const {
        auto it = lists.find(key);
        if (it == lists.end() || it->second.size() != 1)
            fail("missing scalar key '" + key + "'");
        return it->second.front();
    }

    std::vector<double> list(const std::string& key) const {
        auto it = lists.find(key);
        if (it == lists.end()) fail("missing key '" + key + "'");
        return it->second;
    }

    bool has(const std::string& key) const {
        return lists.count(key) || strings.count(key);
    }
};

RawConfig parse_raw(std::istream& in, const std::string& name) {
    RawConfig cfg;
    cfg.name = name;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::istringstream ws(line);
            std::string tok;
            if (ws >> tok)
                throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                         ": expected 'key = value...'");
            continue;
        }
        std::istringstream keys(line.substr(0, eq));
        std::string key;
        keys >> key;
        std::string extra;
        if (key.empty() || (keys >> extra))
            throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                     ": malformed key");
        std::istringstream vals(line.substr(eq + 1));
        std::vector<double> numbers;
        std::string tok;
        bool numeric = true;
        std::vector<std::string> toks;
        while (vals >> tok) {
            toks.push_back(tok);
            try {
                size_t used = 0;
                const double v = std::stod(tok, &used);
                if (used != tok.size()) numeric = false;
                numbers.push_back(v);
            } catch (const std::exception&) {
                numeric = false;
            }
        }
        if (toks.empty())
            throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                     ": key '" + key + "' has no value");
        if (numeric)
            cfg.lists[key] = numbers;
        else if (toks.size() == 1)
            cfg.strings[key] = toks.front();
        else
            throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                     ": non-numeric list for key '" + key + "'");
    }
    return cfg;
}

DiscreteTransferFunction tf_from(const RawConfig& cfg, const std::string& prefix,
                                 double ts) {
    const auto b = cfg.list(prefix + ".b");
    const auto a = cfg.list(prefix + ".a");
    try {
        return DiscreteTransferFunction(b, a, ts);
    } catch (const std::invalid_argument& e) {
        cfg.fail(prefix + ": " + e.what());
    }
}

} // namespace

LoadedPlant parse_plant_config(std::istream& in, const std::string& name,
                               CouplingMode mode) {
    const RawConfig cfg = parse_raw(in, name);
    const double ts = cfg.scalar("ts");

    std::optional<HFramePlant> plant;
    bool synthetic = false;
    auto type_it = cfg.strings.find("type");
    if (type_it != cfg.strings.end() && type_it->second == "synthetic") {
        synthetic = true;
        plant = synthetic_plant(cfg.scalar("resonance_x_hz"), cfg.scalar("resonance_y_hz"),
                                cfg.scalar("resonance_rack_hz"), cfg.scalar("damping"),
                                cfg.scalar("rack_gain"), ts, mode);
    } else if (type_it != cfg.strings.end()) {
        cfg.fail("unknown plant type '" + type_it->second + "'");
    } else {
        plant = HFramePlant(tf_from(cfg, "gxx", ts), tf_from(cfg, "gyy", ts),
                            tf_from(cfg, "gxtheta", ts), mode);
    }

    LoadedPlant out{std::move(*plant), {}, synthetic};
    out.stability = stability_report(out.plant);
    return out;
}

LoadedPlant load_plant_config(const std::string& path, CouplingMode mode) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open plant config '" + path + "'");
    return parse_plant_config(in, path, mode);
}

} // namespace hfbs
