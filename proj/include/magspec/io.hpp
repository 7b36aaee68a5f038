#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "magspec/bounds.hpp"
#include "magspec/closedform.hpp"
#include "magspec/riesz.hpp"

namespace magspec {

/// FNV-1a hash of the canonical config string; embedded in every output.
uint64_t config_hash(const std::string& canonical);

/// Shortest round-trip decimal of a double ("%.17g").
std::string fmt_g17(double v);

/// CSV: index,lambda,residual,method,beta,domain_id,h
void write_spectrum_csv(std::ostream& os, const Spectrum& sp, uint64_t hash);

/// CSV: n,j,lambda,R,beta,residual
void write_branch_csv(std::ostream& os, const std::vector<DiskBranchPoint>& pts,
                      uint64_t hash);

/// CSV: z,R1_emp,R1_low,margin,valid
void write_riesz_csv(std::ostream& os, const RieszReport& rep, uint64_t hash);

/// JSON bound report entry:
/// {theorem, side, value, strict, hypotheses_ok, messages[], constants_used{}}
std::string bounds_to_json(const std::vector<Bound>& bounds,
                           const std::vector<Verdict>& verdicts,
                           const BoundConstants& constants, double fem_lambda1,
                           uint64_t hash);

}  // namespace magspec
