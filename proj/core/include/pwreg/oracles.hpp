#pragma once

#include <string>

#include "pwreg/pipeline.hpp"

namespace pwreg {

// Built-in parametric oracle families, keyed as "name[:param[:param...]]".
//
// Sphere targets:
//   radial                 (x - centroid)/|x - centroid| into S^{m-1}
//   greatcircle:rate[:off] (cos(rate*x_0+off), sin(rate*x_0+off), 0, ...)
//   chartaffine:seed       inverse chart image of a small affine map (seeded)
//   constpoint:i:sign      the signed basis point
// Grassmann targets:
//   constgrass             span(e_1..e_r)
//   rotline:rate[:off]     G_1(R^2) line at angle rate*x_0+off
//   mobius                 G_1(R^2) line at angle theta(x)/2 around centroid
//   qline:rate             G_1(H^2) span(cos(rate*x_0) e1 + sin(rate*x_0) i e2)
//   rotline3:rate          G_1(R^3) line rotating in the e1-e2 plane
//   chartframe:seed        span of a seeded affine frame (snapped exactly)
//
// `table:<path>` loads a sampled-oracle JSON file (complex + vertex values)
// and interpolates piecewise-linearly before projecting to the target.
TargetOracle make_oracle(const std::string& spec, const TargetSpec& target,
                         const SimplicialComplex& domain);

// The PL-interpolation oracle used for `table:` specs, exposed for tests.
TargetOracle make_table_oracle(const std::string& json_text,
                               const TargetSpec& target);

}  // namespace pwreg
