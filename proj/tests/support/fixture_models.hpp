#pragma once

#include <array>
#include <map>
#include <string>

#include "elfscan/biot_savart.hpp"

// Synthetic 13-laptop conductor fixture. Loop currents are calibrated so the
// noise-free survey of every cell lands inside five disjoint value bands,
// with the strong currents concentrated under tbmp1/2/4/5 and
// bbmp1/4/7/8. Test-only construction; it claims nothing about real laptops.
namespace elfscan::testfix {

struct Band {
    double lo_uT;
    double hi_uT;
};

// Severity order: band 0 is the hottest. Chosen inside the reporting bands
// (>1.5), (0.6..1.5), (0.3..0.6), (0.1..0.25), (<0.1) with clear gaps so the
// clusters are unambiguous.
inline constexpr std::array<Band, 5> kBands = {
    {{2.0, 2.3}, {0.9, 1.1}, {0.38, 0.5}, {0.14, 0.22}, {0.03, 0.08}}};

inline constexpr int kFixtureLaptops = 13;

// Band index (0..4) targeted for one laptop at one grid point.
int band_for(Side side, int laptop, int point_index);

// Target RMS value, placed deterministically inside the band.
double target_for(Side side, int laptop, int point_index);

// The calibrated models, keyed lap01..lap13.
std::map<std::string, LaptopModel> make_fixture_models();

std::string fixture_laptop_id(int laptop);

}  // namespace elfscan::testfix
