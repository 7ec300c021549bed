// sfqrm: command-line workbench for the RM(1,3) SFQ encoder link:
// encode/decode, gate-level simulation with fault injection, Monte-Carlo
// yield experiments, and the exhaustive fault-tolerance census.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sfqrm/census.h"
#include "sfqrm/errors.h"
#include "sfqrm/experiment.h"
#include "sfqrm/gate_sim.h"
#include "sfqrm/rm13.h"
#include "sfqrm/rm_code.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

sfqrm::BitBlock parse_bits_arg(const std::string& text, sfqrm::BlockRole role) {
  try {
    return sfqrm::BitBlock::from_string(text, role);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

sfqrm::RmCode code_from_flag(const std::string& rm_flag) {
  if (rm_flag.empty()) return sfqrm::build_rm_code(1, 3);
  const auto comma = rm_flag.find(',');
  if (comma == std::string::npos) {
    throw UsageError("--rm expects 'r,m' (e.g. --rm 1,3)");
  }
  try {
    return sfqrm::build_rm_code(std::stoi(rm_flag.substr(0, comma)),
                                std::stoi(rm_flag.substr(comma + 1)));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    if (comma > start) out.push_back(text.substr(start, comma - start));
    start = comma + 1;
    if (comma == text.size()) break;
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open '" + path.string() + "'");
  out << content;
  if (!out) throw std::ios_base::failure("write failed for '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string format_prob(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

sfqrm::Netlist load_netlist(const std::string& file, const std::string& builtin) {
  if (!file.empty()) return sfqrm::Netlist::parse_file(file);
  if (builtin == "rm13") return sfqrm::build_rm13_reference();
  if (builtin == "no_encoder") return sfqrm::build_no_encoder_reference();
  throw UsageError("unknown builtin netlist '" + builtin + "'");
}

sfqrm::FaultPlan plan_from_flag(const std::string& flag) {
  if (flag.empty()) return {};
  std::string text = flag;
  if (flag.front() == '@') text = read_file(flag.substr(1));
  return sfqrm::FaultPlan::from_json(text);
}

// ---------------------------------------------------------------------------

int cmd_encode(const std::string& bits, const std::string& rm_flag) {
  const sfqrm::RmCode code = code_from_flag(rm_flag);
  const auto message = parse_bits_arg(bits, sfqrm::BlockRole::kMessage);
  if (message.size() != static_cast<std::size_t>(code.message_length)) {
    throw UsageError("message must be " + std::to_string(code.message_length) +
                     " bits for this code");
  }
  std::cout << sfqrm::encode(code, message).to_string() << '\n';
  return kExitOk;
}

int cmd_decode(const std::string& bits, const std::string& rm_flag,
               const std::string& mode_flag) {
  const sfqrm::RmCode code = code_from_flag(rm_flag);
  const auto received = parse_bits_arg(bits, sfqrm::BlockRole::kCodeword);
  if (received.size() != static_cast<std::size_t>(code.block_length)) {
    throw UsageError("codeword must be " + std::to_string(code.block_length) +
                     " bits for this code");
  }
  const auto mode = mode_flag == "detect_only" ? sfqrm::DecodeMode::kDetectOnly
                                               : sfqrm::DecodeMode::kCorrect;
  const auto outcome = sfqrm::decode(code, received, mode);
  switch (outcome.status) {
    case sfqrm::DecodeStatus::kClean:
      std::cout << outcome.decoded->to_string() << " clean\n";
      break;
    case sfqrm::DecodeStatus::kCorrected: {
      std::cout << outcome.decoded->to_string() << " corrected @";
      for (std::size_t i = 0; i < outcome.corrected_positions.size(); ++i) {
        if (i) std::cout << ',';
        std::cout << outcome.corrected_positions[i];
      }
      std::cout << '\n';
      break;
    }
    case sfqrm::DecodeStatus::kDetectedUncorrectable:
      std::cout << "detected_uncorrectable\n";
      break;
  }
  return kExitOk;
}

int cmd_simulate(const std::string& netlist_file, const std::string& builtin,
                 const std::string& messages_flag, const std::string& faults_flag,
                 const std::string& trace_file, double noise_sigma,
                 std::uint64_t seed) {
  const sfqrm::Netlist net = load_netlist(netlist_file, builtin);
  sfqrm::SimConfig cfg;
  cfg.noise_sigma = noise_sigma;

  std::vector<sfqrm::BitBlock> messages;
  for (const auto& text : split_list(messages_flag)) {
    messages.push_back(parse_bits_arg(text, sfqrm::BlockRole::kMessage));
  }
  const sfqrm::FaultPlan plan = plan_from_flag(faults_flag);

  const auto clean = sfqrm::simulate(net, {}, messages, cfg);
  const auto sim = sfqrm::simulate(net, plan, messages, cfg, seed);
  const auto expected = sfqrm::received_blocks(clean, cfg, messages.size());
  const auto received = sfqrm::received_blocks(sim, cfg, messages.size());

  std::cout << "# idx message transmitted received status\n";
  for (std::size_t j = 0; j < messages.size(); ++j) {
    const int errors = sfqrm::hamming_distance(received[j], expected[j]);
    std::cout << j << ' ' << messages[j].to_string() << ' '
              << expected[j].to_string() << ' ' << received[j].to_string() << ' '
              << (errors == 0 ? "ok" : "errors=" + std::to_string(errors))
              << '\n';
  }
  if (!trace_file.empty()) {
    std::ostringstream buf;
    sfqrm::write_trace_csv(sim, cfg, buf);
    write_file(trace_file, buf.str());
  }
  return kExitOk;
}

int cmd_validate(const std::string& netlist_file, const std::string& builtin) {
  const sfqrm::Netlist net = load_netlist(netlist_file, builtin);
  const auto census = net.census();
  std::printf("ok: %d cells (%d XOR, %d DFF, %d SPLITTER of which %d clock, "
              "%d DC2SFQ, %d SFQ2DC)\n",
              census.total(), census.xor_count, census.dff_count,
              census.splitter_count, census.clock_splitter_count,
              census.dc2sfq_count, census.sfq2dc_count);
  std::printf("ports: %zu inputs, %zu outputs; pipeline latency %d cycle(s); "
              "%zu fault-eligible cells\n",
              net.input_ports().size(), net.output_ports().size(),
              net.pipeline_latency(), net.fault_eligible_cells().size());
  return kExitOk;
}

int cmd_montecarlo(const std::string& arm_flag, int realizations, int messages,
                   const std::string& fault_probs_flag, const std::string& ppv_flag,
                   std::uint64_t seed, const std::string& out_dir, int threads,
                   const std::string& format) {
  std::vector<sfqrm::Arm> arms;
  if (arm_flag == "all") {
    arms = {sfqrm::Arm::kRm13AfterEcc, sfqrm::Arm::kRm13BeforeEcc,
            sfqrm::Arm::kNoEncoder};
  } else {
    const auto arm = sfqrm::arm_from(arm_flag);
    if (!arm) throw UsageError("unknown arm '" + arm_flag + "'");
    arms = {*arm};
  }

  std::optional<sfqrm::SpreadModel> spread;
  if (ppv_flag != "off") {
    try {
      spread = sfqrm::SpreadModel::calibrated(std::stod(ppv_flag));
      spread->validate();
    } catch (const std::exception&) {
      throw UsageError("--ppv expects a spread fraction in [0, 0.5] or 'off'");
    }
  }

  std::vector<double> probs;
  for (const auto& p : split_list(fault_probs_flag)) {
    double value = -1.0;
    try {
      value = std::stod(p);
    } catch (const std::exception&) {
      throw UsageError("--fault-prob expects numbers in [0,1]");
    }
    if (value < 0.0 || value > 1.0) {
      throw UsageError("--fault-prob values must be in [0,1]");
    }
    probs.push_back(value);
  }
  if (probs.empty()) probs.push_back(0.0);

  std::filesystem::create_directories(out_dir);
  const bool write_csv = format == "csv" || format == "both";
  const bool write_json = format == "json" || format == "both";

  std::vector<sfqrm::CdfTable> per_prob_first_arm;
  for (double p : probs) {
    std::vector<sfqrm::ExperimentSpec> specs;
    for (const auto arm : arms) {
      sfqrm::ExperimentSpec spec;
      spec.arm = arm;
      spec.realizations = realizations;
      spec.messages_per_realization = messages;
      spec.fault_prob = p;
      spec.spread = spread;
      spec.seed = seed;
      specs.push_back(spec);
    }

    std::vector<sfqrm::CdfTable> tables;
    if (specs.size() > 1) {
      const auto cmp = sfqrm::compare_arms(specs, threads);
      tables = cmp.tables;
      if (cmp.dominance_violations) {
        std::printf("ECC dominance: after_ecc <= before_ecc on %d/%d realizations\n",
                    realizations - *cmp.dominance_violations, realizations);
      }
    } else {
      tables.push_back(sfqrm::run_experiment(specs[0], threads));
    }

    for (std::size_t i = 0; i < tables.size(); ++i) {
      const auto& table = tables[i];
      const std::string stem = "cdf_" + table.meta.arm + "_p" + format_prob(p) +
                               "_ppv" + (spread ? format_prob(spread->spread_pct)
                                                : std::string("off"));
      if (write_csv) {
        write_file(std::filesystem::path(out_dir) / (stem + ".csv"), table.to_csv());
      }
      if (write_json) {
        write_file(std::filesystem::path(out_dir) / (stem + ".json"), table.to_json());
      }
      std::printf("P(N_err=0) %s fault_prob=%s ppv=%s : %.4f\n",
                  table.meta.arm.c_str(), format_prob(p).c_str(),
                  spread ? format_prob(spread->spread_pct).c_str() : "off",
                  table.p_zero());
    }
    per_prob_first_arm.push_back(tables.front());
  }

  if (per_prob_first_arm.size() > 1) {
    bool ordered = true;
    for (std::size_t i = 1; i < per_prob_first_arm.size(); ++i) {
      ordered &= sfqrm::cdf_dominates(per_prob_first_arm[i - 1], per_prob_first_arm[i]);
    }
    std::printf("CDF ordering across fault probabilities: %s\n",
                ordered ? "pointwise ordered" : "NOT ordered");
  }
  return kExitOk;
}

int cmd_census(const std::string& netlist_file, const std::string& builtin,
               int max_size, const std::string& out_dir, const std::string& format) {
  if (max_size < 0 || max_size > 3) {
    throw UsageError("--max-size must be between 0 and 3");
  }
  const sfqrm::Netlist net = load_netlist(netlist_file, builtin);
  const auto report = sfqrm::fault_tolerance_census(net, max_size);

  std::filesystem::create_directories(out_dir);
  const std::string stem = "census_size" + std::to_string(max_size);
  if (format == "csv" || format == "both") {
    write_file(std::filesystem::path(out_dir) / (stem + ".csv"), report.to_csv());
  }
  if (format == "json" || format == "both") {
    write_file(std::filesystem::path(out_dir) / (stem + ".json"), report.to_json());
  }

  std::printf("fault-eligible cells: %d\n", report.cell_count);
  for (const auto& s : report.summaries) {
    std::printf("size %d: %ld sets, %ld harmless, %ld correctable, %ld uncorrectable\n",
                s.size, s.total(), s.harmless, s.correctable, s.uncorrectable);
  }
  return kExitOk;
}

// Config file: JSON object whose keys mirror the long flag names; explicit
// command-line flags win over config values.
nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw sfqrm::ParseError(std::string("config: ") + e.what());
  }
}

template <typename T>
void config_override(const nlohmann::json& config, const std::string& key,
                     const CLI::Option* flag, T& target) {
  if (!config.contains(key) || flag->count() > 0) return;
  try {
    if constexpr (std::is_same_v<T, std::string>) {
      const auto& v = config.at(key);
      target = v.is_string() ? v.template get<std::string>() : v.dump();
    } else {
      target = config.at(key).template get<T>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw sfqrm::ParseError("config key '" + key + "': " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RM(1,3) SFQ-to-CMOS encoder workbench"};
  app.require_subcommand(1);

  std::string config_file;
  app.add_option("--config", config_file, "JSON config file with flag defaults");
  std::uint64_t global_seed = 0;
  std::string global_out;
  auto* global_seed_opt =
      app.add_option("--seed", global_seed, "seed for any subcommand");
  auto* global_out_opt =
      app.add_option("--out", global_out, "output directory for any subcommand");

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "encode message bits into a codeword");
  std::string encode_bits, encode_rm;
  encode_cmd->add_option("bits", encode_bits, "message bits, e.g. 1010")->required();
  encode_cmd->add_option("--rm", encode_rm, "code parameters r,m (default 1,3)");

  // decode
  auto* decode_cmd = app.add_subcommand("decode", "decode a received codeword");
  std::string decode_bits, decode_rm, decode_mode = "correct";
  decode_cmd->add_option("bits", decode_bits, "codeword bits, e.g. 00110011")->required();
  decode_cmd->add_option("--rm", decode_rm, "code parameters r,m (default 1,3)");
  decode_cmd->add_option("--mode", decode_mode, "correct | detect_only")
      ->check(CLI::IsMember({"correct", "detect_only"}));

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "run the gate-level simulator");
  std::string sim_netlist, sim_builtin = "rm13", sim_messages, sim_faults, sim_trace;
  double sim_noise = 0.0;
  std::uint64_t sim_seed = 0;
  sim_cmd->add_option("--netlist", sim_netlist, "netlist file");
  sim_cmd->add_option("--builtin", sim_builtin, "rm13 | no_encoder");
  sim_cmd->add_option("--messages", sim_messages, "comma-separated message bit strings");
  sim_cmd->add_option("--faults", sim_faults, "fault plan JSON (inline or @file)");
  sim_cmd->add_option("--trace", sim_trace, "write waveform CSV to this file");
  sim_cmd->add_option("--noise-sigma", sim_noise, "waveform noise amplitude fraction");
  auto* sim_seed_opt = sim_cmd->add_option("--seed", sim_seed, "noise seed");

  // montecarlo
  auto* mc_cmd = app.add_subcommand("montecarlo", "run Monte-Carlo yield experiments");
  std::string mc_arm = "all", mc_probs = "0", mc_ppv = "off", mc_out = ".",
              mc_format = "both";
  int mc_realizations = 1000, mc_messages = 100, mc_threads = 0;
  std::uint64_t mc_seed = 0;
  std::map<std::string, CLI::Option*> mc_options;
  mc_options["arm"] = mc_cmd->add_option("--arm", mc_arm,
      "rm13_after_ecc | rm13_before_ecc | no_encoder | all");
  mc_options["realizations"] =
      mc_cmd->add_option("--realizations", mc_realizations, "circuit realizations")
          ->check(CLI::PositiveNumber);
  mc_options["messages"] =
      mc_cmd->add_option("--messages", mc_messages, "messages per realization")
          ->check(CLI::PositiveNumber);
  mc_options["fault_prob"] = mc_cmd->add_option(
      "--fault-prob", mc_probs, "per-cell open-fault probability (comma list)");
  mc_options["ppv"] = mc_cmd->add_option(
      "--ppv", mc_ppv, "parameter spread fraction (e.g. 0.2) or 'off'");
  mc_options["seed"] = mc_cmd->add_option("--seed", mc_seed, "master seed");
  mc_options["out"] = mc_cmd->add_option("--out", mc_out, "output directory");
  mc_options["threads"] =
      mc_cmd->add_option("--threads", mc_threads, "worker threads (0 = auto)");
  mc_options["format"] = mc_cmd->add_option("--format", mc_format, "csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}));

  // census
  auto* census_cmd = app.add_subcommand("census", "exhaustive fault-tolerance census");
  std::string census_netlist, census_builtin = "rm13", census_out = ".",
              census_format = "both";
  int census_max = 2;
  std::map<std::string, CLI::Option*> census_options;
  census_cmd->add_option("--netlist", census_netlist, "netlist file");
  census_cmd->add_option("--builtin", census_builtin, "rm13 | no_encoder");
  census_options["max_size"] =
      census_cmd->add_option("--max-size", census_max, "largest fault-set size (0..3)");
  census_options["out"] = census_cmd->add_option("--out", census_out, "output directory");
  census_options["format"] =
      census_cmd->add_option("--format", census_format, "csv | json | both")
          ->check(CLI::IsMember({"csv", "json", "both"}));

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "lint a netlist file");
  std::string validate_netlist, validate_builtin = "rm13";
  validate_cmd->add_option("--netlist", validate_netlist, "netlist file");
  validate_cmd->add_option("--builtin", validate_builtin, "rm13 | no_encoder");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    // Global --seed/--out supply values to whichever subcommand runs,
    // unless that subcommand was given its own flag.
    if (global_seed_opt->count()) {
      if (!mc_options.at("seed")->count()) mc_seed = global_seed;
      if (!sim_seed_opt->count()) sim_seed = global_seed;
    }
    if (global_out_opt->count()) {
      if (!mc_options.at("out")->count()) mc_out = global_out;
      if (!census_options.at("out")->count()) census_out = global_out;
    }

    const nlohmann::json config = load_config(config_file);
    config_override(config, "arm", mc_options.at("arm"), mc_arm);
    config_override(config, "realizations", mc_options.at("realizations"), mc_realizations);
    config_override(config, "messages", mc_options.at("messages"), mc_messages);
    config_override(config, "fault_prob", mc_options.at("fault_prob"), mc_probs);
    config_override(config, "ppv", mc_options.at("ppv"), mc_ppv);
    config_override(config, "seed", mc_options.at("seed"), mc_seed);
    config_override(config, "out", mc_options.at("out"), mc_out);
    config_override(config, "threads", mc_options.at("threads"), mc_threads);
    config_override(config, "format", mc_options.at("format"), mc_format);
    config_override(config, "max_size", census_options.at("max_size"), census_max);
    config_override(config, "out", census_options.at("out"), census_out);
    config_override(config, "format", census_options.at("format"), census_format);

    if (encode_cmd->parsed()) return cmd_encode(encode_bits, encode_rm);
    if (decode_cmd->parsed()) return cmd_decode(decode_bits, decode_rm, decode_mode);
    if (sim_cmd->parsed()) {
      return cmd_simulate(sim_netlist, sim_builtin, sim_messages, sim_faults,
                          sim_trace, sim_noise, sim_seed);
    }
    if (mc_cmd->parsed()) {
      return cmd_montecarlo(mc_arm, mc_realizations, mc_messages, mc_probs,
                            mc_ppv, mc_seed, mc_out, mc_threads, mc_format);
    }
    if (census_cmd->parsed()) {
      return cmd_census(census_netlist, census_builtin, census_max, census_out,
                        census_format);
    }
    if (validate_cmd->parsed()) return cmd_validate(validate_netlist, validate_builtin);
    std::cerr << "error: no subcommand\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sfqrm::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const sfqrm::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
