// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#include "knapqaoa/knapsack_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "knapqaoa/errors.hpp"

namespace knapqaoa::knap {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token, const std::string& context) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ParseError(context + ": cannot parse number '" + token + "'");
  return value;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

std::string to_text(const KnapsackInstance& instance) {
  std::string out;
  if (!instance.id.empty()) out += "# id: " + instance.id + "\n";
  out += std::to_string(instance.size()) + " " + format_double(instance.capacity) + "\n";
  for (const Item& it : instance.items)
    out += format_double(it.value) + " " + format_double(it.weight) + "\n";
  return out;
}

KnapsackInstance from_text(const std::string& text, const std::string& source_name) {
  KnapsackInstance instance;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t expected = 0;
  bool header_seen = false;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (!line.empty() && line[0] == '#') {
      const std::string id_tag = "# id: ";
      if (instance.id.empty() && line.rfind(id_tag, 0) == 0) instance.id = line.substr(id_tag.size());
      continue;
    }
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (!header_seen) {
      if (tokens.size() != 2) throw ParseError(where + ": expected 'n capacity'");
      const double n = parse_double(tokens[0], where + " field n");
      if (n < 1 || n != static_cast<double>(static_cast<std::size_t>(n)))
        throw ParseError(where + ": item count must be a positive integer");
      expected = static_cast<std::size_t>(n);
      instance.capacity = parse_double(tokens[1], where + " field capacity");
      if (!(instance.capacity > 0.0)) throw ParseError(where + ": capacity must be positive");
      header_seen = true;
      continue;
    }
    if (tokens.size() != 2) throw ParseError(where + ": expected 'value weight'");
    Item item;
    item.value = parse_double(tokens[0], where + " field value");
    item.weight = parse_double(tokens[1], where + " field weight");
    if (!(item.weight > 0.0)) throw ParseError(where + ": weight must be positive");
    if (item.value < 0.0) throw ParseError(where + ": value must be nonnegative");
    instance.items.push_back(item);
  }
  if (!header_seen) throw ParseError(source_name + ": missing header line");
  if (instance.items.size() != expected)
    throw ParseError(source_name + ": header declares " + std::to_string(expected) +
                     " items but " + std::to_string(instance.items.size()) + " were listed");
  instance.validate();
  return instance;
}

void save_instance(const KnapsackInstance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << to_text(instance);
}

KnapsackInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str(), path.filename().string());
}

std::string to_json(const KnapsackInstance& instance) {
  nlohmann::json j;
  j["id"] = instance.id;
  j["capacity"] = instance.capacity;
  auto& items = j["items"] = nlohmann::json::array();
  for (const Item& it : instance.items) items.push_back({{"v", it.value}, {"w", it.weight}});
  return j.dump(2);
}

KnapsackInstance from_json(const std::string& json_text) {
  KnapsackInstance instance;
  try {
    const auto j = nlohmann::json::parse(json_text);
    instance.id = j.value("id", std::string{});
    instance.capacity = j.at("capacity").get<double>();
    for (const auto& item : j.at("items"))
      instance.items.push_back({item.at("v").get<double>(), item.at("w").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance json: ") + e.what());
  }
  instance.validate();
  return instance;
}

}  // namespace knapqaoa::knap
