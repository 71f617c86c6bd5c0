#include "zonal/planets.hpp"

namespace zonal {

const std::vector<PlanetRecord>& planet_table() {
    static const std::vector<PlanetRecord> table{
        {"Earth", 6371.0, 7.27e-5, 50.0, 9.26},
        {"Jupiter", 69911.0, 1.76e-4, 100.0, 123.0},
        {"Saturn", 58232.0, 1.62e-4, 100.0, 94.3},
        {"Neptune", 24622.0, 1.08e-4, 200.0, 13.2},
        {"Uranus", 25362.0, -1.04e-4, 200.0, -13.1},
        {"Pluto", 1188.0, -1.1e-5, 10.0, -1.31},
        {"Titan", 2576.0, 4.55e-6, 100.0, 0.11},
        {"HD 209458b", 94380.0, 2.06e-5, 1940.0, 1.01},
        {"WASP-39b", 91000.0, 4.05e-7, 2000.0, 0.01},
    };
    return table;
}

double printed_resolution(const PlanetRecord& p) {
    if (p.name == "Jupiter")
        return 1.0;
    if (p.name == "Saturn" || p.name == "Neptune" || p.name == "Uranus")
        return 0.1;
    return 0.01;
}

}  // namespace zonal
