#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypstab::suite {

/// One property run: `measured` is compared against `threshold` in the
/// direction stated by the property (usually measured <= threshold).
struct PropertyOutcome {
    std::string key;  ///< short identifier for reports
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    int cases = 0;
    std::string detail;
};

/// rhs(h) and deturck_field(h) vanish to 1e-13 for n = 3..6, both backgrounds.
PropertyOutcome stationarity_property();

/// kato_residual <= 1e-10 on random smooth states.
PropertyOutcome kato_property(std::uint64_t seed, int cases = 1000);

/// The 1D interpolation inequality ||Du||^2 <= 32 ||u|| ||D^2 u|| on random
/// band-limited trigonometric polynomials.
PropertyOutcome interpolation_property(std::uint64_t seed, int cases = 200);

/// zeroth_order_term(l) <= 4 sum d^2 - 4 (sum d)^2 + 8 n eps sum d^2 with
/// d = l - 1 and eps = max |d| <= 0.1.
PropertyOutcome zeroth_order_property(std::uint64_t seed, int cases = 1000);

/// Observed order, under grid doubling, of the difference between the
/// discrete frame gradient, rhs and DeTurck field and the coordinate oracle
/// at n = 3 on random profiles. Passes at order >= 1.9.
PropertyOutcome frame_reduction_property(std::uint64_t seed, int profiles = 10);

/// Relative round-trip error of the time maps and metric rescaling on 100
/// log-spaced samples per dimension, <= 1e-14.
PropertyOutcome time_map_property();

/// sigma_1(B_R) > (n-1)^2 / 4 for (n, R) in {2..6} x {1, 2, 5, 10}.
PropertyOutcome mckean_property();

/// All of the above in a fixed order.
std::vector<PropertyOutcome> run_all_properties(std::uint64_t seed);

}  // namespace hypstab::suite
