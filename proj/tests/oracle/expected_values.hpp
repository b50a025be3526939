// Generated by tests/oracle/expected_values.py -- do not edit by hand.
#pragma once

namespace oracle {
// U cos(a) - V sin(a), a=0.4 U=1 V=0.1
inline constexpr double kTouchdownAngularRate = 0.88211915977202003;
// U sin(a) + V cos(a), a=0.4 U=1 V=0.1
inline constexpr double kTouchdownRadialRate = 0.481524441708939;
// (sin(-a) + 2 L_d theta_d) / 1
inline constexpr double kThetaDdotTouchdown = 0.46010552955131013;
// theta_d^2 - cos(a)
inline constexpr double kLDdotTouchdown = -0.14292678196599048;
// (L_d^2 + theta_d^2)/2 + cos(a)
inline constexpr double kEnergyTouchdown = 1.4260609940028851;
// k l0 / (m g), 9417.6/(80*9.81)
inline constexpr double kNondimK = 12.0;
// u / sqrt(g l0), 3.132/sqrt(9.81)
inline constexpr double kNondimU = 0.99997064177088205;
// v / sqrt(g l0)
inline constexpr double kNondimV = 0.099997064177088205;
// (pi theta_d / (2*0.4))^2
inline constexpr double kStiffnessApprox04 = 11.999807568371149;
// (pi theta_d(0.1) / (2*0.1))^2
inline constexpr double kStiffnessApprox01 = 239.40354525884062;
// -(1-c^2)/(1+c^2), c = eps W / L_d, K=12
inline constexpr double kCosReturnPhase12 = -0.98542319301681172;
// pi + 2 atan(c), K=12
inline constexpr double kReturnPhase12 = 3.3125450397925066;
// 1 - theta_d^2 eps^2 / 2, K=12
inline constexpr double kStrainedFreq12 = 0.96757774116512939;
// fast length approx at tau+=pi, K=400
inline constexpr double kFastLengthPi400 = 0.99928536609017005;
// fast angle approx at tau+=pi, K=400
inline constexpr double kFastAnglePi400 = -0.26199368327556421;
// 0.01 (sinh 1 - cosh 1)
inline constexpr double kSmallAngleT1 = -0.0036787944117144232;

// first rising crossing of theta = alpha for a=0.4 U=1 V=0.1 K=12,
// computed with an independent adaptive integrator (scipy RK45, rtol 1e-12)
inline constexpr double kThetaCrossTime12 = 0.7745072119225792;
}  // namespace oracle
