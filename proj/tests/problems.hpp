#pragma once

// Product problems and certificate mutations shared by the tests and the
// acceptance binary.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "pgreen/pipeline.hpp"
#include "pgreen/serialize.hpp"

namespace pgreen::testing {

inline Polynomial poly(std::initializer_list<Complex> c) {
  return Polynomial(std::vector<Complex>(c));
}

// a1 = 0.5, b1 = 0.3, a2 = b2 = 0 on E x E with the discs 0.999 l.
inline ProductProblem worked_example(double level) {
  ProductProblem p;
  p.pole1 = {0.5};
  p.pole2 = {0.3};
  p.base1 = {0.0};
  p.base2 = {0.0};
  p.level = level;
  p.disc1 = AnalyticDisc({poly({0.0, 0.999})});
  p.disc2 = AnalyticDisc({poly({0.0, 0.999})});
  return p;
}

// Two pole preimages 0.3, 0.6 on the first side, one critical value.
inline ProductProblem engineered_example() {
  ProductProblem p;
  p.pole1 = {0.0};
  p.base1 = {0.072};
  p.pole2 = {0.05};
  p.base2 = {0.0};
  p.level = 0.45;
  p.disc1 = AnalyticDisc({poly({0.072, -0.36, 0.4})});
  p.disc2 = AnalyticDisc({poly({0.0, 0.5})});
  return p;
}

// The second factor's pole is its base.
inline ProductProblem direct_example() {
  ProductProblem p;
  p.pole1 = {0.3};
  p.base1 = {0.0};
  p.pole2 = {0.2};
  p.base2 = {0.2};
  p.level = 0.35;
  p.disc1 = AnalyticDisc({poly({0.0, 0.999})});
  p.disc2 = AnalyticDisc({poly({0.2, 0.5})});
  return p;
}

struct Mutation {
  int certificate;  // index into the certificate list
  std::string what;
  std::function<void(Json&)> apply;
};

inline void shift(Json& j, double by) { j = j.get<double>() + by; }

inline const Json& stage(const Json& cert, const std::string& name) {
  for (const auto& s : cert["stages"])
    if (s["name"] == name) return s;
  return cert["stages"][0];
}

inline Json& stage(Json& cert, const std::string& name) {
  for (auto& s : cert["stages"])
    if (s["name"] == name) return s;
  return cert["stages"][0];
}

// Single-field mutations of the certificates built from
// {worked_example(0.55), worked_example(0.51), engineered_example()}.
inline std::vector<Mutation> tamper_suite() {
  return {
      {0, "achieved lowered by 0.1%", [](Json& c) { c["achieved"] = c["achieved"].get<double>() * 0.999; }},
      {0, "zero moved by 1e-4", [](Json& c) { shift(c["gamma_zeros"][0]["point"][0], 1e-4); }},
      {0, "radius moved to the next schedule point",
       [](Json& c) {
         const int k = c["gamma"]["radius_index"].get<int>() + 1;
         c["gamma"]["radius"] = 1.0 - std::ldexp(1.0, -k);
       }},
      {0, "radius index raised", [](Json& c) { c["gamma"]["radius_index"] = c["gamma"]["radius_index"].get<int>() + 1; }},
      {0, "level lowered to 0.5", [](Json& c) { c["problem"]["level"] = 0.5; }},
      {0, "pole a1 moved by 1e-3", [](Json& c) { shift(c["problem"]["pole1"][0][0], 1e-3); }},
      {0, "gamma disc1 slope scaled by 1.01",
       [](Json& c) { c["gamma"]["disc1"]["coords"][0][1][0] = c["gamma"]["disc1"]["coords"][0][1][0].get<double>() * 1.01; }},
      {0, "recorded margin doubled", [](Json& c) { c["checks"]["min_margin"] = c["checks"]["min_margin"].get<double>() * 2.0; }},
      {0, "Jensen boundary mean moved by 1e-6", [](Json& c) { shift(c["jensen"]["boundary_mean"], 1e-6); }},
      {0, "radius stage log bound moved by 1e-6", [](Json& c) { shift(stage(c, "radius")["values"]["log_bound"], 1e-6); }},
      {1, "zero tolerance loosened to 1e-3", [](Json& c) { c["tolerances"]["zero_residual"] = 1e-3; }},
      {1, "basepoint moved by 1e-6", [](Json& c) { shift(c["gamma"]["basepoint"][0], 1e-6); }},
      {1, "branch index changed", [](Json& c) { c["config"]["branch"] = 1; }},
      {1, "zero multiplicity doubled", [](Json& c) { c["gamma_zeros"][0]["mult"] = 2; }},
      {1, "base b2 moved by 1e-3", [](Json& c) { shift(c["problem"]["base2"][0][1], 1e-3); }},
      {2, "Blaschke zero moved by 1e-5", [](Json& c) { shift(c["gamma"]["blaschke1"]["zeros"][0]["point"][1], 1e-5); }},
      {2, "puncture moved by 1e-5", [](Json& c) { shift(c["gamma"]["punctures"][0][0], 1e-5); }},
      {2, "covering preimage mu moved by 1e-7", [](Json& c) { shift(c["gamma"]["mu"][0], 1e-7); }},
      {2, "recorded lift residual raised to 1e-3", [](Json& c) { c["checks"]["lift_residual1"] = 1e-3; }},
      {2, "gamma disc2 constant moved by 1e-4", [](Json& c) { shift(c["gamma"]["disc2"]["coords"][0][0][1], 1e-4); }},
  };
}

}  // namespace pgreen::testing
