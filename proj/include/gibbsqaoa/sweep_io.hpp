#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gibbsqaoa/sweep.hpp"

namespace gibbsqaoa {

inline constexpr const char *kSweepHeader = "gamma,beta_angle,energy,entropy,beta_eff,tvd_min";
inline constexpr const char *kThresholdHeader = "threshold,best_beta_eff,t_eff,gamma,beta_angle";
inline constexpr const char *kTradeoffHeader = "t_eff,tvd_min,gamma,beta_angle";

/// Shortest-exact-enough text form: 17 significant digits ("%.17g").
std::string format_double(double v);

void write_sweep_csv(std::ostream &out, std::span<const SweepRecord> records);
void write_sweep_csv(const std::filesystem::path &path, std::span<const SweepRecord> records);

/// Columns are located by header name. Empty beta_eff/tvd_min cells become
/// absent values. Throws ParseError naming the line and column on bad input.
std::vector<SweepRecord> read_sweep_csv(std::istream &in);
std::vector<SweepRecord> read_sweep_csv(const std::filesystem::path &path);

void write_thresholds_csv(const std::filesystem::path &path,
                          std::span<const ThresholdPoint> points,
                          std::span<const SweepRecord> records);
void write_tradeoff_csv(const std::filesystem::path &path,
                        std::span<const TradeoffPoint> points,
                        std::span<const SweepRecord> records);

} // namespace gibbsqaoa
