// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "knapqaoa/uc_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "knapqaoa/errors.hpp"
#include "knapqaoa/knapsack_io.hpp"

namespace knapqaoa::uc {

using knap::format_double;
using knap::parse_double;

std::string to_text(const UcInstance& uc) {
  std::string out = std::to_string(uc.size()) + " " + format_double(uc.load) + "\n";
  for (const UcUnit& u : uc.units) {
    out += format_double(u.commit_cost) + " " + format_double(u.linear_cost) + " " +
           format_double(u.quadratic_cost) + " " + format_double(u.p_min) + " " +
           format_double(u.p_max) + "\n";
  }
  return out;
}

UcInstance from_text(const std::string& text, const std::string& source_name) {
  UcInstance uc;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected = 0;
  bool header_seen = false;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (!line.empty() && line[0] == '#') continue;
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (!header_seen) {
      if (tokens.size() != 2) throw ParseError(where + ": expected 'n L'");
      expected = static_cast<std::size_t>(parse_double(tokens[0], where + " field n"));
      uc.load = parse_double(tokens[1], where + " field L");
      header_seen = true;
      continue;
    }
    if (tokens.size() != 5) throw ParseError(where + ": expected 'A B C p_min p_max'");
    UcUnit u;
    u.commit_cost = parse_double(tokens[0], where + " field A");
    u.linear_cost = parse_double(tokens[1], where + " field B");
    u.quadratic_cost = parse_double(tokens[2], where + " field C");
    u.p_min = parse_double(tokens[3], where + " field p_min");
    u.p_max = parse_double(tokens[4], where + " field p_max");
    uc.units.push_back(u);
  }
  if (!header_seen) throw ParseError(source_name + ": missing header line");
  if (uc.units.size() != expected)
    throw ParseError(source_name + ": header declares " + std::to_string(expected) +
                     " units but " + std::to_string(uc.units.size()) + " were listed");
  try {
    uc.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(source_name + ": " + e.what());
  }
  return uc;
}

void save_uc_instance(const UcInstance& uc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << to_text(uc);
}

UcInstance load_uc_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str(), path.filename().string());
}

std::string scan_to_csv(const ScanResult& scan) {
  std::string out = "D,cost,feasible\n";
  for (const ScanPoint& p : scan.points) {
    out += format_double(p.marginal);
    out += ',';
    out += p.feasible ? format_double(p.cost) : "inf";
    out += ',';
    out += p.feasible ? '1' : '0';
    out += '\n';
  }
  return out;
}

void save_scan_csv(const ScanResult& scan, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << scan_to_csv(scan);
}

}  // namespace knapqaoa::uc
