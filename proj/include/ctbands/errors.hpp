#pragma once

#include <stdexcept>
#include <string>

namespace ctbands {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand shapes are incompatible (non-square coupling block, wrong vector length, ...).
struct DimensionMismatch : Error {
  using Error::Error;
};

/// A matrix handed to the Hermitian eigensolver fails the symmetry check.
struct NotHermitian : Error {
  using Error::Error;
};

/// The iterative eigensolver hit its sweep cap before reaching the target accuracy.
struct NoConvergence : Error {
  using Error::Error;
};

/// theta_of called with epsilon0 <= 0; the channel angle is undefined there.
struct ZeroEpsilon : Error {
  using Error::Error;
};

/// Bilayer builder needs an even linear size so the corner momentum lies on the grid.
struct OddSize : Error {
  using Error::Error;
};

/// A bond connects two sites of the same sublattice; the lattice is not bipartite.
struct BrokenBipartiteness : Error {
  using Error::Error;
};

/// Parameters fall outside the regime where the requested quantity is defined.
struct OutsideRegime : Error {
  using Error::Error;
};

/// Density of states requested for a spectrum with complex branches.
struct BrokenPhase : Error {
  using Error::Error;
};

/// Fit window covers fewer histogram bins than the fit needs.
struct InsufficientBins : Error {
  using Error::Error;
};

}  // namespace ctbands
