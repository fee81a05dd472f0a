#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfma/pairing.hpp"
#include "sfma/power.hpp"

namespace sfma::power {

struct SolverConfig {
  double p_max_w = 1e4;
  double alpha = 0.1;
  std::int64_t delta_max = 4;
  InterferencePair profiles;
  /// Budget tolerance of the inter-group stage, relative to p_max.
  double inter_tol_rel = 1e-9;
  /// Golden-section bracket width of the intra-group stage, relative to p_k.
  double intra_tol_rel = 1e-9;

  void validate() const {
    if (!(p_max_w > 0.0)) throw std::invalid_argument("solver: p_max must be positive");
    if (!(alpha >= 0.0)) throw std::invalid_argument("solver: alpha must be non-negative");
    if (delta_max < 0) throw std::invalid_argument("solver: delta_max must be non-negative");
    if (!(inter_tol_rel > 0.0) || !(intra_tol_rel > 0.0))
      throw std::invalid_argument("solver: tolerances must be positive");
  }
};

enum class SolveStage { none, pairing, inter_group, intra_group };

inline const char* to_string(SolveStage s) {
  switch (s) {
    case SolveStage::none: return "none";
    case SolveStage::pairing: return "pairing";
    case SolveStage::inter_group: return "inter-group";
    case SolveStage::intra_group: return "intra-group";
  }
  return "?";
}

struct SolveResult {
  pairing::PairingAssignment pairing;
  std::vector<Group> groups;
  PowerAllocation allocation;
  double sum_rate = 0.0;
  SolveStage failed_stage = SolveStage::none;
  std::string message;

  bool feasible() const noexcept { return failed_stage == SolveStage::none; }
};

inline std::vector<Group> make_groups(const std::vector<UserTerminal>& users,
                                      const pairing::PairingAssignment& assignment,
                                      const InterferencePair& profiles) {
  std::vector<Group> groups;
  groups.reserve(assignment.pairs.size());
  for (const auto& [a, b] : assignment.pairs) groups.push_back(Group{users.at(a), users.at(b), profiles});
  return groups;
}

/// Power-only part of the pipeline for an already formed set of groups:
/// inter-group totals at equal split, then the per-group split.
inline PowerAllocation allocate(const std::vector<Group>& groups, const SolverConfig& cfg,
                                SolveStage& failed, std::string& message) {
  PowerAllocation alloc = inter_group_allocate(groups, cfg.p_max_w, cfg.inter_tol_rel * cfg.p_max_w);
  if (!alloc.feasible()) {
    failed = SolveStage::inter_group;
    message = alloc.message;
    return alloc;
  }
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const double p_k = alloc.group_totals[k];
    if (p_k <= 0.0) {
      alloc.splits[k] = {0.0, 0.0};
      continue;
    }
    const IntraSplit s = intra_group_allocate(groups[k], p_k, cfg.intra_tol_rel * p_k);
    if (!s.feasible) {
      failed = SolveStage::intra_group;
      message = "group " + std::to_string(k) + ": no split meets both minimum rates";
      return alloc;
    }
    alloc.splits[k] = {s.first, s.second};
  }
  return alloc;
}

inline double realized_sum_rate(const std::vector<Group>& groups, const PowerAllocation& alloc) {
  double total = 0.0;
  for (std::size_t k = 0; k < groups.size(); ++k)
    total += rate::pair_sum_rate(alloc.splits[k].first, alloc.splits[k].second, groups[k].profiles,
                                 groups[k].first.link, groups[k].second.link);
  return total;
}

/// Pairing under a fixed equal power (p_max / K per group, split evenly),
/// then inter-group totals, then intra-group splits.
inline SolveResult solve(const std::vector<UserTerminal>& users, const SolverConfig& cfg) {
  cfg.validate();
  if (users.size() < 2 || users.size() % 2 != 0)
    throw std::invalid_argument("solve: user count must be even and >= 2");

  SolveResult out;
  const double groups_k = static_cast<double>(users.size() / 2);
  const double per_user = cfg.p_max_w / groups_k / 2.0;
  out.pairing = pairing::pair_users(users, per_user, cfg.profiles, cfg.alpha, cfg.delta_max);
  if (!out.pairing.feasible()) {
    out.failed_stage = SolveStage::pairing;
    out.message = std::to_string(out.pairing.unmatched.size()) +
                  " user(s) left without a gap-feasible partner";
    return out;
  }

  out.groups = make_groups(users, out.pairing, cfg.profiles);
  out.allocation = allocate(out.groups, cfg, out.failed_stage, out.message);
  if (out.feasible()) out.sum_rate = realized_sum_rate(out.groups, out.allocation);
  return out;
}

}  // namespace sfma::power
