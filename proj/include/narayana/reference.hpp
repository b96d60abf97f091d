#pragma once

// Reduced bounds as published for 2 <= g <= 10, one row per step.

#include <array>
#include <stdexcept>

namespace narayana::reference {

struct StepRow {
    std::array<int, 9> convergent;  // 1-based convergent number
    std::array<double, 9> epsilon;  // stated lower bound on eps
    std::array<int, 9> bound;
};

inline const StepRow& step_row(int step) {
    static const StepRow rows[3] = {
        {{118, 100, 110, 115, 90, 106, 112, 102, 96},
         {0.36, 0.26, 0.03, 0.01, 0.06, 0.001, 0.0019, 0.005, 0.01},
         {194, 121, 99, 87, 76, 72, 67, 62, 59}},
        {{118, 100, 110, 115, 90, 106, 112, 102, 96},
         {0.004, 0.0007, 0.0003, 0.001, 0.0002, 0.0005, 0.0001, 0.005, 0.001},
         {199, 125, 102, 88, 78, 72, 68, 62, 60}},
        {{118, 99, 110, 115, 90, 106, 112, 102, 96},
         {0.00006, 0.002, 0.007, 0.0002, 0.0008, 0.002, 0.0005, 0.02, 0.009},
         {204, 124, 99, 89, 77, 71, 67, 61, 59}},
    };
    if (step < 1 || step > 3) throw std::out_of_range("step must be 1, 2 or 3");
    return rows[step - 1];
}

inline bool has_base(int g) { return g >= 2 && g <= 10; }

inline int bound(int step, int g) {
    if (!has_base(g)) throw std::out_of_range("no reference row for this base");
    return step_row(step).bound[static_cast<std::size_t>(g - 2)];
}
inline int convergent(int step, int g) {
    if (!has_base(g)) throw std::out_of_range("no reference row for this base");
    return step_row(step).convergent[static_cast<std::size_t>(g - 2)];
}
inline double epsilon(int step, int g) {
    if (!has_base(g)) throw std::out_of_range("no reference row for this base");
    return step_row(step).epsilon[static_cast<std::size_t>(g - 2)];
}

// Allowed deviation of a recomputed bound from the reference value.
inline constexpr int bound_tolerance = 2;

// Global box after the three steps.
inline constexpr int ell_box = 194;
inline constexpr int m_box = 200;
inline constexpr int n_box = 205;
inline constexpr long k_box = 11500;

// Closed-form targets: n < 5.91e49 log^9 g, k < 4.73e50 log^10 g.
inline constexpr long double n_coefficient = 5.91e49L;
inline constexpr long double k_coefficient = 4.73e50L;

}  // namespace narayana::reference
