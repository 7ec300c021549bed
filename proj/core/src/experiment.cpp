#include "sfqrm/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "sfqrm/errors.h"
#include "sfqrm/rm13.h"
#include "sfqrm/rm_code.h"
#include "sfqrm/seed.h"

namespace sfqrm {

std::string_view to_string(Arm arm) {
  switch (arm) {
    case Arm::kRm13AfterEcc: return "rm13_after_ecc";
    case Arm::kRm13BeforeEcc: return "rm13_before_ecc";
    case Arm::kNoEncoder: return "no_encoder";
  }
  return "?";
}

std::optional<Arm> arm_from(std::string_view name) {
  if (name == "rm13_after_ecc") return Arm::kRm13AfterEcc;
  if (name == "rm13_before_ecc") return Arm::kRm13BeforeEcc;
  if (name == "no_encoder") return Arm::kNoEncoder;
  return std::nullopt;
}

void ExperimentSpec::validate() const {
  if (realizations < 1) {
    throw std::invalid_argument("ExperimentSpec: realizations must be >= 1");
  }
  if (messages_per_realization < 1) {
    throw std::invalid_argument(
        "ExperimentSpec: messages_per_realization must be >= 1");
  }
  if (fault_prob < 0.0 || fault_prob > 1.0) {
    throw std::invalid_argument("ExperimentSpec: fault_prob must be in [0, 1]");
  }
  if (spread) spread->validate();
  sim.validate();
}

double CdfTable::cum_prob(std::size_t idx) const {
  return static_cast<double>(points.at(idx).cum_count) /
         static_cast<double>(meta.realizations);
}

double CdfTable::p_zero() const {
  if (!points.empty() && points.front().n_err == 0) return cum_prob(0);
  return 0.0;
}

double CdfTable::cdf_at(int x) const {
  long count = 0;
  for (const auto& p : points) {
    if (p.n_err > x) break;
    count = p.cum_count;
  }
  return static_cast<double>(count) / static_cast<double>(meta.realizations);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string CdfTable::to_csv() const {
  std::ostringstream out;
  out << "# arm=" << meta.arm << '\n';
  out << "# seed=" << meta.seed << '\n';
  out << "# fault_prob=" << format_double(meta.fault_prob) << '\n';
  out << "# spread_pct="
      << (meta.spread_pct ? format_double(*meta.spread_pct) : "off") << '\n';
  out << "# realizations=" << meta.realizations << '\n';
  out << "# messages=" << meta.messages << '\n';
  out << "n_err,cum_prob\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << points[i].n_err << ',' << format_double(cum_prob(i)) << '\n';
  }
  return out.str();
}

CdfTable CdfTable::from_csv(std::string_view text) {
  CdfTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      const std::string value = line.substr(eq + 1);
      try {
        if (key == "arm") table.meta.arm = value;
        else if (key == "seed") table.meta.seed = std::stoull(value);
        else if (key == "fault_prob") table.meta.fault_prob = std::stod(value);
        else if (key == "spread_pct" && value != "off")
          table.meta.spread_pct = std::stod(value);
        else if (key == "realizations") table.meta.realizations = std::stoi(value);
        else if (key == "messages") table.meta.messages = std::stoi(value);
      } catch (const std::exception&) {
        throw ParseError("malformed meta value for '" + key + "'", line_no);
      }
      continue;
    }
    if (!header_seen) {
      if (line != "n_err,cum_prob") {
        throw ParseError("expected header 'n_err,cum_prob'", line_no);
      }
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("expected 'n_err,cum_prob' row", line_no);
    }
    Point p;
    try {
      p.n_err = std::stoi(line.substr(0, comma));
      const double prob = std::stod(line.substr(comma + 1));
      p.cum_count = std::lround(prob * table.meta.realizations);
    } catch (const std::exception&) {
      throw ParseError("malformed CDF row", line_no);
    }
    table.points.push_back(p);
  }
  if (!header_seen) throw ParseError("missing 'n_err,cum_prob' header");
  return table;
}

std::string CdfTable::to_json() const {
  nlohmann::ordered_json j;
  j["meta"]["arm"] = meta.arm;
  j["meta"]["seed"] = meta.seed;
  j["meta"]["fault_prob"] = meta.fault_prob;
  if (meta.spread_pct) {
    j["meta"]["spread_pct"] = *meta.spread_pct;
  } else {
    j["meta"]["spread_pct"] = nullptr;
  }
  j["meta"]["realizations"] = meta.realizations;
  j["meta"]["messages"] = meta.messages;
  j["points"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    j["points"].push_back({{"n_err", points[i].n_err},
                           {"cum_prob", cum_prob(i)}});
  }
  return j.dump(2) + "\n";
}

CdfTable CdfTable::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("CDF JSON: ") + e.what());
  }
  CdfTable table;
  try {
    const auto& meta = j.at("meta");
    table.meta.arm = meta.at("arm").get<std::string>();
    table.meta.seed = meta.at("seed").get<std::uint64_t>();
    table.meta.fault_prob = meta.at("fault_prob").get<double>();
    if (!meta.at("spread_pct").is_null()) {
      table.meta.spread_pct = meta.at("spread_pct").get<double>();
    }
    table.meta.realizations = meta.at("realizations").get<int>();
    table.meta.messages = meta.at("messages").get<int>();
    for (const auto& pj : j.at("points")) {
      Point p;
      p.n_err = pj.at("n_err").get<int>();
      p.cum_count =
          std::lround(pj.at("cum_prob").get<double>() * table.meta.realizations);
      table.points.push_back(p);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("CDF JSON: ") + e.what());
  }
  return table;
}

bool cdf_dominates(const CdfTable& a, const CdfTable& b) {
  std::vector<int> support;
  for (const auto& p : a.points) support.push_back(p.n_err);
  for (const auto& p : b.points) support.push_back(p.n_err);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  for (int x : support) {
    if (a.cdf_at(x) < b.cdf_at(x)) return false;
  }
  return true;
}

std::vector<BitBlock> random_messages(int count, int bits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BitBlock> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<std::uint8_t> b(static_cast<std::size_t>(bits));
    const std::uint64_t value = rng();
    for (int j = 0; j < bits; ++j) {
      b[static_cast<std::size_t>(j)] =
          static_cast<std::uint8_t>((value >> (bits - 1 - j)) & 1);
    }
    out.emplace_back(std::move(b), BlockRole::kMessage);
  }
  return out;
}

namespace {

int count_erroneous(Arm arm, const RmCode& code,
                    const std::vector<BitBlock>& messages,
                    const std::vector<BitBlock>& received) {
  int errors = 0;
  for (std::size_t j = 0; j < messages.size(); ++j) {
    bool erroneous = false;
    switch (arm) {
      case Arm::kRm13BeforeEcc:
        erroneous = !(received[j] == encode(code, messages[j]));
        break;
      case Arm::kRm13AfterEcc: {
        const DecodeOutcome out = decode(code, received[j], DecodeMode::kCorrect);
        erroneous = !(out.decoded && out.decoded->bits() == messages[j].bits());
        break;
      }
      case Arm::kNoEncoder:
        erroneous = received[j].bits() != messages[j].bits();
        break;
    }
    if (erroneous) ++errors;
  }
  return errors;
}

}  // namespace

std::vector<int> run_realizations(const ExperimentSpec& spec, int workers) {
  spec.validate();
  const Netlist net = spec.arm == Arm::kNoEncoder ? build_no_encoder_reference()
                                                  : build_rm13_reference();
  const RmCode& code = rm13();
  const int k = static_cast<int>(net.input_ports().size());

  std::vector<int> n_err(static_cast<std::size_t>(spec.realizations), 0);
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
  }
  workers = std::min(workers, spec.realizations);

  std::atomic<int> next{0};
  auto work = [&]() {
    for (int r = next.fetch_add(1); r < spec.realizations;
         r = next.fetch_add(1)) {
      FaultPlan plan = sample_fault_plan(
          net, spec.fault_prob, spec.spread,
          derive_seed(spec.seed, SeedStream::kFaults, static_cast<std::uint64_t>(r)));
      plan.realization_index = r;
      const auto messages = random_messages(
          spec.messages_per_realization, k,
          derive_seed(spec.seed, SeedStream::kMessages, static_cast<std::uint64_t>(r)));
      const SimResult sim = simulate(net, plan, messages, spec.sim);
      const auto received = received_blocks(sim, spec.sim, messages.size());
      n_err[static_cast<std::size_t>(r)] =
          count_erroneous(spec.arm, code, messages, received);
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return n_err;
}

CdfTable make_cdf_table(const ExperimentSpec& spec,
                        std::span<const int> n_err_per_realization) {
  std::map<int, long> histogram;
  for (int v : n_err_per_realization) ++histogram[v];
  CdfTable table;
  long cum = 0;
  for (const auto& [n, count] : histogram) {
    cum += count;
    table.points.push_back({n, cum});
  }
  table.meta.arm = std::string(to_string(spec.arm));
  table.meta.seed = spec.seed;
  table.meta.fault_prob = spec.fault_prob;
  if (spec.spread) table.meta.spread_pct = spec.spread->spread_pct;
  table.meta.realizations = spec.realizations;
  table.meta.messages = spec.messages_per_realization;
  return table;
}

CdfTable run_experiment(const ExperimentSpec& spec, int workers) {
  const auto n_err = run_realizations(spec, workers);
  return make_cdf_table(spec, n_err);
}

ArmComparison compare_arms(std::span<const ExperimentSpec> specs, int workers) {
  if (specs.size() < 2) {
    throw std::invalid_argument("compare_arms: need at least two specs");
  }
  for (std::size_t i = 1; i < specs.size(); ++i) {
    const auto& a = specs[0];
    const auto& b = specs[i];
    const bool comparable =
        a.realizations == b.realizations &&
        a.messages_per_realization == b.messages_per_realization &&
        a.fault_prob == b.fault_prob && a.seed == b.seed &&
        a.spread.has_value() == b.spread.has_value();
    if (!comparable || a.arm == b.arm) {
      throw std::invalid_argument(
          "compare_arms: specs must differ only in arm and share seeds");
    }
  }

  ArmComparison cmp;
  cmp.specs.assign(specs.begin(), specs.end());
  std::optional<std::size_t> after_idx, before_idx;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    cmp.n_err.push_back(run_realizations(specs[i], workers));
    cmp.tables.push_back(make_cdf_table(specs[i], cmp.n_err.back()));
    if (specs[i].arm == Arm::kRm13AfterEcc) after_idx = i;
    if (specs[i].arm == Arm::kRm13BeforeEcc) before_idx = i;
  }

  if (after_idx && before_idx) {
    int violations = 0;
    const auto& after = cmp.n_err[*after_idx];
    const auto& before = cmp.n_err[*before_idx];
    for (std::size_t r = 0; r < after.size(); ++r) {
      if (after[r] > before[r]) ++violations;
    }
    cmp.dominance_violations = violations;
  }
  return cmp;
}

}  // namespace sfqrm
