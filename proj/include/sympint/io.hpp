#pragma once

// File formats: JSON matrix files, CSV trajectories and JSON reports.
// All numbers are written with 17 significant digits so that outputs
// round-trip exactly and identical runs are byte identical.

#include <ostream>
#include <string>

#include "sympint/hamiltonian.hpp"
#include "sympint/linalg.hpp"
#include "sympint/verifier.hpp"

namespace sympint {

std::string format_double(double x);

/// Read {"n": <int>, "rows": [[...], ...]} with 2n rows of 2n finite
/// numbers.  Ragged rows, wrong counts and non-finite entries are
/// rejected with BadParams.
SquareMatrix load_matrix_file(const std::string& path);

/// Header t,q1..qn,p1..pn,H and one row per recorded state.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

std::string report_to_json(const VerificationReport& report);

std::string convergence_to_json(const ConvergenceEstimate& est);

}  // namespace sympint
