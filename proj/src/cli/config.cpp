#include <algorithm>
#include <sstream>

#include "m23bkm/cli.hpp"

namespace m23bkm::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw UsageError("setting '" + key + "' expects an integer, got '" + v + "'");
  }
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + " has no '='");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "class") {
    cfg.class_order = value == "all" ? 0 : parse_int(key, value);
  } else if (key == "trunc") {
    cfg.trunc_B = parse_int(key, value);
  } else if (key == "height-cap" || key == "height_cap") {
    cfg.height_cap = parse_int(key, value);
  } else if (key == "norm-cap" || key == "norm_cap") {
    cfg.norm_cap = parse_int(key, value);
  } else if (key == "seed") {
    std::int64_t s = parse_int(key, value);
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key == "format") {
    cfg.format = value;
  } else if (key == "suites") {
    cfg.suites.clear();
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (!item.empty()) cfg.suites.push_back(item);
    }
  } else if (key == "data") {
    cfg.data_dir = value;
  } else {
    throw UsageError("unknown setting '" + key + "'");
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.class_order != 0) {
    const auto& orders = class_orders();
    if (std::find(orders.begin(), orders.end(), cfg.class_order) == orders.end())
      throw UsageError("class must be one of 1 2 3 5 6 7 11 14 15 23 or 'all'");
  }
  if (cfg.trunc_B < 1) throw UsageError("trunc must be at least 1");
  if (cfg.height_cap < 0) throw UsageError("height-cap must be non-negative");
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
    throw UsageError("format must be json, csv or text");
  expand_suites(cfg.suites);
}

std::vector<std::int64_t> selected_classes(const RunConfig& cfg) {
  if (cfg.class_order != 0) return {cfg.class_order};
  return class_orders();
}

std::vector<std::string> expand_suites(const std::vector<std::string>& suites) {
  static const std::vector<std::string> all{"lattice", "reflectivity", "characters", "roots", "vi24", "zhu"};
  std::vector<std::string> out;
  for (const auto& s : suites) {
    if (s == "all") {
      out = all;
      break;
    }
    if (std::find(all.begin(), all.end(), s) == all.end()) throw UsageError("unknown suite '" + s + "'");
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  if (out.empty()) throw UsageError("no suites selected");
  return out;
}

}  // namespace m23bkm::cli
