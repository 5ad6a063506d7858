#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace petzlab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_construction_error = 3;

// Entropy-production scan as CSV: columns t,lhs,rhs_k<k>...,d_to_fixed with
// 15 significant digits, byte-deterministic for a fixed config and platform.
int cmd_scan(const std::string& config_path, std::ostream& out, std::ostream& err);

// Residual report, one `CHECK <name> residual=<r> tol=<tol> PASS|FAIL` line
// per check; the seed feeds the random states of the rate-positivity check.
int cmd_verify(const std::string& config_path, std::uint64_t seed, std::ostream& report,
               std::ostream& err);

// Correlation-bound sweep as CSV: columns lambda,alpha,lhs,rhs,pass.
int cmd_bathsim(const std::string& config_path, std::ostream& out, std::ostream& err);

}  // namespace petzlab::cli
