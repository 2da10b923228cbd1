#pragma once

// CSV / JSON emission. Numbers are printed with 17 significant digits through
// std::to_chars, so output is locale-independent and bitwise reproducible.
//
// Sweep header:
//   index,axis_name,axis_value,stable,max_real_eig_over_omega_m,EN_<A>_<B>...,
//   G_c_over_omega_m,G_w1_over_omega_m,G_w2_over_omega_m
// E_N fields of unstable (or failed) rows are empty in CSV and null in JSON.

#include "omech/sweep.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace omech {

std::string format_double(double x);

/// "EN_Opto_Micro1" etc.
std::string entanglement_column(const Bipartition& pair);

std::vector<std::string> sweep_columns(const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows);
void write_sweep_json(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Single-point report: couplings, stability, E_N for all six bipartitions
/// and the Lyapunov residual.
void write_point_csv(std::ostream& os, const PointEvaluation& eval, double omega_m);
void write_point_json(std::ostream& os, const PointEvaluation& eval, double omega_m);

}  // namespace omech
