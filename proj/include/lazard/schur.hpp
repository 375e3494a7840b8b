#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lazard/cohomology.hpp"

namespace lazard {

// ===========================================================================
// Multipliers as H^2 with coefficients in the colimit of the tower
// Z/p -> Z/p^2 -> ... (generator |-> p * generator), trivial action. Each
// finite level is an ordinary degree-2 computation; the colimit is detected
// through the images of the connecting maps.

struct MultiplierReport {
  // level i data sits at index i-1
  std::vector<InvariantFactors> level_inv;  // H^2(., Z/p^i)
  std::vector<Mat> induced;                 // class coords, level i -> i+1
  std::vector<InvariantFactors> image_inv;  // invariants of im(level i -> i+1)
  bool stabilized = false;
  int stabilization_level = -1;
  InvariantFactors stable;  // meaningful only when stabilized
  std::string note;         // "inconclusive" when the level cap was hit
};

// Stop at the least i where im(level i-1 -> i) and im(level i -> i+1) have
// equal invariant factors and the connecting map between the two images is
// an isomorphism; hard cap i <= e_max + ceil(log_p |object|). extra_levels
// keeps computing images past the stopping point (the stable value must not
// move).
//
// Both entry points take the Lie ring; the group side computes on its
// exponential group. Throws hypothesis_violation unless class < p-1.
MultiplierReport schur_lie(const NilLieRing& L, int extra_levels = 0,
                           i64 max_elements = -1);
MultiplierReport schur_group(const NilLieRing& L, int extra_levels = 0,
                             i64 max_elements = -1);

struct SchurCompare {
  MultiplierReport lie, group;
  bool stable_equal = false;
  bool squares_commute = false;  // coefficient inclusion vs exp/log transport
  std::vector<std::string> witnesses;
  bool verdict() const {
    return lie.stabilized && group.stabilized && stable_equal &&
           squares_commute;
  }
};

SchurCompare compare_schur(const NilLieRing& L, i64 max_elements = -1);

}  // namespace lazard
