#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "arcqp/lqr.hpp"
#include "arcqp/qp_core.hpp"
#include "arcqp/solver.hpp"

namespace arcqp {

/// A problem read from (or written to) a JSON document. Two layouts:
///
///   {"type": "box_qp", "n": 2, "H": [[...], [...]], "c": [...]}
///   {"type": "lqr", "A": [[...]], "B": [[...]], "P": [[...]], "Q": [[...]],
///    "R": [[...]], "N": 50, "x0": [...], "weight_scale_h": 0.1}
///
/// Matrices are dense row-major arrays of arrays. weight_scale_h is
/// optional (default 1, i.e. no stage-cost scaling).
struct ProblemFile {
  enum class Kind { box_qp, lqr } kind = Kind::box_qp;
  BoxQP qp;            ///< valid when kind == box_qp
  LqrProblem lqr;      ///< valid when kind == lqr
  double weight_scale_h = 1.0;
};

/// Parses and validates a problem document. Throws std::invalid_argument
/// (schema/validation problems, with a diagnostic naming the offending
/// field or entries) or std::runtime_error (I/O).
ProblemFile load_problem(const std::filesystem::path& path);

/// Serializes the problem back to JSON. Doubles round-trip bit-exactly.
/// Writes are atomic: a temporary file in the target directory is renamed
/// over the destination.
void save_problem(const std::filesystem::path& path, const ProblemFile& pf);

/// solution CSV: header "index,x", one row per coordinate.
void write_solution_csv(const std::filesystem::path& path, const Vector& x);

/// iteration log CSV: header "k,mu,sin_alpha,kappa,rX,rY,rZ".
void write_iteration_log_csv(const std::filesystem::path& path,
                             const std::vector<IterationRecord>& records);

/// controls CSV: header "step,u1,...,um", one row per horizon step.
void write_controls_csv(const std::filesystem::path& path, const Matrix& u);

/// trajectory CSV: header "step,x1,...,xr", rows 0..N.
void write_trajectory_csv(const std::filesystem::path& path,
                          const Matrix& states);

/// Atomic text-file write (temp file + rename).
void atomic_write(const std::filesystem::path& path,
                  const std::string& content);

/// Shortest decimal form of v that parses back to the same double
/// (17 significant digits).
std::string format_double(double v);

}  // namespace arcqp
