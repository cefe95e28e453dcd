#include "dyadic/calibration.hpp"

#include "dyadic/report.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef DYADIC_FIXTURE_DIR
#define DYADIC_FIXTURE_DIR "."
#endif

namespace dyadic {

using ordered_json = nlohmann::ordered_json;

double Calibration::bound(const std::string& key) const {
    auto it = observed_sup.find(key);
    if (it == observed_sup.end())
        throw std::out_of_range("no calibration entry for '" + key + "'");
    return it->second * margin;
}

std::string calibration_key(const std::string& check, double s) {
    return check + "@" + format_double(s);
}

Calibration load_calibration(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open calibration file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    ordered_json j;
    try {
        j = ordered_json::parse(buf.str());
    } catch (const ordered_json::parse_error& e) {
        throw std::runtime_error("invalid calibration JSON: " + std::string(e.what()));
    }
    if (!j.is_object() || !j.contains("margin") || !j.contains("entries"))
        throw std::runtime_error("invalid calibration JSON: needs 'margin' and 'entries'");
    Calibration cal;
    cal.margin = j["margin"].get<double>();
    for (const auto& [key, value] : j["entries"].items())
        cal.observed_sup[key] = value.get<double>();
    return cal;
}

void save_calibration(const Calibration& cal, const std::string& path) {
    ordered_json j;
    j["margin"] = cal.margin;
    ordered_json entries = ordered_json::object();
    for (const auto& [key, value] : cal.observed_sup) entries[key] = value;
    j["entries"] = std::move(entries);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write calibration file: " + path);
    out << j.dump(2) << '\n';
}

std::string default_calibration_path() {
    if (const char* env = std::getenv("DYADIC_FIXTURES"))
        return std::string(env) + "/calibration.json";
    return std::string(DYADIC_FIXTURE_DIR) + "/calibration.json";
}

} // namespace dyadic
