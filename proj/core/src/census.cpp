#include "sfqrm/census.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "sfqrm/errors.h"

namespace sfqrm {

std::string_view to_string(FaultSetClass cls) {
  switch (cls) {
    case FaultSetClass::kHarmless: return "harmless";
    case FaultSetClass::kCorrectable: return "correctable";
    case FaultSetClass::kUncorrectable: return "uncorrectable";
  }
  return "?";
}

std::optional<FaultSetClass> fault_set_class_from(std::string_view name) {
  if (name == "harmless") return FaultSetClass::kHarmless;
  if (name == "correctable") return FaultSetClass::kCorrectable;
  if (name == "uncorrectable") return FaultSetClass::kUncorrectable;
  return std::nullopt;
}

const CensusEntry* CensusReport::find(std::vector<std::string> cells) const {
  std::sort(cells.begin(), cells.end());
  for (const auto& e : entries) {
    if (e.cells == cells) return &e;
  }
  return nullptr;
}

std::string CensusReport::to_csv() const {
  std::ostringstream out;
  out << "# max_size=" << max_size << '\n';
  out << "# cell_count=" << cell_count << '\n';
  out << "size,fault_set,worst_bit_errors,class\n";
  for (const auto& e : entries) {
    out << e.cells.size() << ',';
    for (std::size_t i = 0; i < e.cells.size(); ++i) {
      if (i) out << '+';
      out << e.cells[i];
    }
    out << ',' << e.worst_bit_errors << ',' << to_string(e.cls) << '\n';
  }
  return out.str();
}

CensusReport CensusReport::from_csv(std::string_view text) {
  CensusReport report;
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
      if (key == "max_size") report.max_size = std::stoi(value);
      else if (key == "cell_count") report.cell_count = std::stoi(value);
      continue;
    }
    if (!header_seen) {
      if (line != "size,fault_set,worst_bit_errors,class") {
        throw ParseError("expected census CSV header", line_no);
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
      auto comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
      if (comma == line.size()) break;
    }
    if (fields.size() != 4) throw ParseError("expected 4 census columns", line_no);
    CensusEntry entry;
    std::size_t cell_start = 0;
    const std::string& set = fields[1];
    while (cell_start <= set.size()) {
      auto plus = set.find('+', cell_start);
      if (plus == std::string::npos) plus = set.size();
      entry.cells.push_back(set.substr(cell_start, plus - cell_start));
      cell_start = plus + 1;
      if (plus == set.size()) break;
    }
    try {
      if (std::stoul(fields[0]) != entry.cells.size()) {
        throw ParseError("size column does not match fault_set", line_no);
      }
      entry.worst_bit_errors = std::stoi(fields[2]);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("malformed census row", line_no);
    }
    const auto cls = fault_set_class_from(fields[3]);
    if (!cls) throw ParseError("unknown census class '" + fields[3] + "'", line_no);
    entry.cls = *cls;
    report.entries.push_back(std::move(entry));
  }
  if (!header_seen) throw ParseError("missing census CSV header");

  for (int s = 1; s <= report.max_size; ++s) {
    CensusSizeSummary sum;
    sum.size = s;
    for (const auto& e : report.entries) {
      if (static_cast<int>(e.cells.size()) != s) continue;
      switch (e.cls) {
        case FaultSetClass::kHarmless: ++sum.harmless; break;
        case FaultSetClass::kCorrectable: ++sum.correctable; break;
        case FaultSetClass::kUncorrectable: ++sum.uncorrectable; break;
      }
    }
    report.summaries.push_back(sum);
  }
  return report;
}

std::string CensusReport::to_json() const {
  nlohmann::ordered_json j;
  j["meta"]["max_size"] = max_size;
  j["meta"]["cell_count"] = cell_count;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    j["entries"].push_back({{"fault_set", e.cells},
                            {"worst_bit_errors", e.worst_bit_errors},
                            {"class", std::string(to_string(e.cls))}});
  }
  j["summary"] = nlohmann::ordered_json::array();
  for (const auto& s : summaries) {
    j["summary"].push_back({{"size", s.size},
                            {"harmless", s.harmless},
                            {"correctable", s.correctable},
                            {"uncorrectable", s.uncorrectable}});
  }
  return j.dump(2) + "\n";
}

CensusReport CensusReport::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("census JSON: ") + e.what());
  }
  CensusReport report;
  try {
    report.max_size = j.at("meta").at("max_size").get<int>();
    report.cell_count = j.at("meta").at("cell_count").get<int>();
    for (const auto& ej : j.at("entries")) {
      CensusEntry e;
      e.cells = ej.at("fault_set").get<std::vector<std::string>>();
      e.worst_bit_errors = ej.at("worst_bit_errors").get<int>();
      const auto cls = fault_set_class_from(ej.at("class").get<std::string>());
      if (!cls) throw ParseError("unknown census class in JSON");
      e.cls = *cls;
      report.entries.push_back(std::move(e));
    }
    for (const auto& sj : j.at("summary")) {
      CensusSizeSummary s;
      s.size = sj.at("size").get<int>();
      s.harmless = sj.at("harmless").get<long>();
      s.correctable = sj.at("correctable").get<long>();
      s.uncorrectable = sj.at("uncorrectable").get<long>();
      report.summaries.push_back(s);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("census JSON: ") + e.what());
  }
  return report;
}

namespace {

std::vector<BitBlock> all_input_patterns(int bits) {
  std::vector<BitBlock> out;
  out.reserve(1u << bits);
  for (int value = 0; value < (1 << bits); ++value) {
    std::vector<std::uint8_t> b(static_cast<std::size_t>(bits));
    for (int j = 0; j < bits; ++j) {
      b[static_cast<std::size_t>(j)] =
          static_cast<std::uint8_t>((value >> (bits - 1 - j)) & 1);
    }
    out.emplace_back(std::move(b), BlockRole::kMessage);
  }
  return out;
}

}  // namespace

CensusReport fault_tolerance_census(const Netlist& net, int max_size,
                                    const SimConfig& cfg) {
  if (max_size < 0 || max_size > 3) {
    throw std::invalid_argument(
        "fault_tolerance_census: max_size must be in [0, 3]");
  }
  net.validate();

  const auto cells = net.fault_eligible_cells();
  CensusReport report;
  report.max_size = max_size;
  report.cell_count = static_cast<int>(cells.size());

  const int k = static_cast<int>(net.input_ports().size());
  const auto patterns = all_input_patterns(k);

  const SimResult clean = simulate(net, FaultPlan{}, patterns, cfg);
  const auto expected = received_blocks(clean, cfg, patterns.size());

  auto evaluate = [&](const std::vector<std::string>& fault_set) {
    FaultPlan plan;
    plan.open_cells.insert(fault_set.begin(), fault_set.end());
    const SimResult sim = simulate(net, plan, patterns, cfg);
    const auto received = received_blocks(sim, cfg, patterns.size());
    int worst = 0;
    for (std::size_t j = 0; j < patterns.size(); ++j) {
      worst = std::max(worst, hamming_distance(received[j], expected[j]));
    }
    CensusEntry entry;
    entry.cells = fault_set;
    entry.worst_bit_errors = worst;
    entry.cls = worst == 0 ? FaultSetClass::kHarmless
                : worst == 1 ? FaultSetClass::kCorrectable
                             : FaultSetClass::kUncorrectable;
    report.entries.push_back(std::move(entry));
  };

  const int n = static_cast<int>(cells.size());
  for (int size = 1; size <= max_size; ++size) {
    std::vector<int> combo(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = i;
    if (size > n) break;
    while (true) {
      std::vector<std::string> fault_set;
      fault_set.reserve(static_cast<std::size_t>(size));
      for (int idx : combo) fault_set.push_back(cells[static_cast<std::size_t>(idx)]);
      evaluate(fault_set);

      int pos = size - 1;
      while (pos >= 0 && combo[static_cast<std::size_t>(pos)] == n - size + pos) {
        --pos;
      }
      if (pos < 0) break;
      ++combo[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < size; ++i) {
        combo[static_cast<std::size_t>(i)] = combo[static_cast<std::size_t>(i - 1)] + 1;
      }
    }
  }

  for (int s = 1; s <= max_size; ++s) {
    CensusSizeSummary sum;
    sum.size = s;
    for (const auto& e : report.entries) {
      if (static_cast<int>(e.cells.size()) != s) continue;
      switch (e.cls) {
        case FaultSetClass::kHarmless: ++sum.harmless; break;
        case FaultSetClass::kCorrectable: ++sum.correctable; break;
        case FaultSetClass::kUncorrectable: ++sum.uncorrectable; break;
      }
    }
    report.summaries.push_back(sum);
  }
  return report;
}

}  // namespace sfqrm
