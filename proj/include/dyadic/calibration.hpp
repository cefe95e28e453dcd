#pragma once

#include <map>
#include <string>

namespace dyadic {

// Recorded sup ratios for the inequalities whose constants are not explicit
// ("≲_s"). A fixed seeded ensemble records the observed sup per key; tests
// assert no regression beyond the stored margin. Keys look like "gns@0.25"
// or "algebra@0.75".
struct Calibration {
    double margin = 1.5;
    std::map<std::string, double> observed_sup;

    bool has(const std::string& key) const { return observed_sup.count(key) != 0; }
    // observed sup × margin; throws std::out_of_range for unknown keys.
    double bound(const std::string& key) const;
};

std::string calibration_key(const std::string& check, double s);

Calibration load_calibration(const std::string& path);
void save_calibration(const Calibration& cal, const std::string& path);

// DYADIC_FIXTURES environment override, else the compiled-in fixture
// directory; returns <dir>/calibration.json.
std::string default_calibration_path();

} // namespace dyadic
