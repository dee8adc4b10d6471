#pragma once

namespace ty {

// Explicit truncation window: all computations are exact within it.
struct Window {
  int K = 3;        // highest retained power of the deformation parameter
  int loopMin = -12;  // lowest admissible loop degree of a single mode
  int loopMax = 12;   // highest admissible loop degree of a single mode
  int zMin = -6;
  int zMax = 6;
};

}  // namespace ty
