#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nanonmr/io/config.hpp"

namespace nanonmr::cli {

using Json = nlohmann::json;

struct CommandContext {
  Config cfg;
  std::string command;
  std::string out_dir = ".";
  std::string format = "csv";  // csv | json
  std::uint64_t seed = 0;
  bool seed_given = false;
  Json report;

  /// Writes a CSV under out_dir (csv format) or embeds the table in the
  /// report (json format). Every table carries seed and config digest.
  void emit_table(const std::string& name,
                  const std::vector<std::string>& header,
                  const std::vector<std::vector<double>>& columns);
};

void cmd_simulate_xy8(CommandContext& ctx);
void cmd_fit(CommandContext& ctx);
void cmd_calibrate(CommandContext& ctx);
void cmd_sensitivity(CommandContext& ctx);
void cmd_volume_map(CommandContext& ctx);
void cmd_simulate_correlation(CommandContext& ctx);
void cmd_fit_correlation(CommandContext& ctx);
void cmd_fit_relaxation(CommandContext& ctx);

}  // namespace nanonmr::cli
