#pragma once

// Frozen outputs of tests/oracle/shooting_oracle.py (independent shooting on
// the second-order system, scipy DOP853 + brentq). Logistic r = 1 throughout.
namespace oracle {

inline constexpr double kP0Delta2 = -1.2909944487358;  // -sqrt(5/3)

inline constexpr double kCStarDelta2D1 = -0.893521949555033;
inline constexpr double kCStarDelta2DHalf = -0.631815429669391;
inline constexpr double kCStarDelta2D2 = -1.263630859338728;

struct DeltaSpeed {
  double delta;
  double c_star;
};

inline constexpr DeltaSpeed kByDelta[] = {
    {1.0001, -9.99983334305344e-05}, {1.001, -9.998334304933676e-04},
    {1.01, -9.983429934971796e-03},  {1.1, -9.842471906891978e-02},
    {1.5, -4.675897434496654e-01},   {2.0, kCStarDelta2D1},
    {2.5, -1.296572268230810},       {3.0, -1.685767431525649},
};

struct Perturbed {
  double eps;
  double c_lower;  // reaction u(1 - eps - u)
  double c_upper;  // reaction u(1 + eps - u)
};

inline constexpr Perturbed kPerturbedDelta2[] = {
    {0.1, -1.019654255881, -0.778181299214},
    {0.05, -0.955072052639, -0.834655541721},
    {0.025, -0.923941253958, -0.863772687436},
};

}  // namespace oracle
