#include "fpm/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

namespace fpm {

namespace {

std::array<int, 3> parse_hex_color(const std::string& hex) {
  if (hex.size() != 7 || hex[0] != '#') {
    throw ConfigError(fmt::format("color '{}' is not of the form #rrggbb", hex));
  }
  std::array<int, 3> rgb{};
  for (int c = 0; c < 3; ++c) {
    rgb[c] = std::stoi(hex.substr(1 + 2 * c, 2), nullptr, 16);
  }
  return rgb;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

double rule_node_width(double confidence, const GraphStyle& style) {
  if (style.min_conf >= 1.0) return style.max_width;
  const double t = std::clamp((confidence - style.min_conf) / (1.0 - style.min_conf), 0.0, 1.0);
  return style.min_width + t * (style.max_width - style.min_width);
}

std::string lift_color(double lift, double lift_lo, double lift_hi, const GraphStyle& style) {
  const auto lo = parse_hex_color(style.low_color);
  const auto hi = parse_hex_color(style.high_color);
  const double t = lift_hi > lift_lo ? std::clamp((lift - lift_lo) / (lift_hi - lift_lo), 0.0, 1.0) : 1.0;
  std::array<int, 3> rgb{};
  for (int c = 0; c < 3; ++c) {
    rgb[c] = static_cast<int>(std::lround(lo[c] + t * (hi[c] - lo[c])));
  }
  return fmt::format("#{:02x}{:02x}{:02x}", rgb[0], rgb[1], rgb[2]);
}

std::vector<std::string> consequent_labels(const std::vector<io::RuleRow>& rows) {
  std::set<std::string> labels;
  for (const auto& r : rows) labels.insert(r.consequent.begin(), r.consequent.end());
  return {labels.begin(), labels.end()};
}

std::string render_rule_graph(const std::vector<io::RuleRow>& rows, std::string_view consequent,
                              const GraphStyle& style) {
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (contains(rows[i].consequent, consequent)) selected.push_back(i);
  }
  if (selected.empty()) {
    const auto available = consequent_labels(rows);
    throw DataError(fmt::format("consequent '{}' does not appear in the rule table; available: {}", consequent,
                                fmt::join(available, ", ")));
  }

  double lift_lo = rows.front().lift;
  double lift_hi = rows.front().lift;
  for (const auto& r : rows) {
    lift_lo = std::min(lift_lo, r.lift);
    lift_hi = std::max(lift_hi, r.lift);
  }

  // Item node ids in first-appearance order, consequent first.
  std::map<std::string, std::size_t, std::less<>> item_ids;
  std::vector<std::string> items;
  auto item_node = [&](const std::string& label) {
    auto [it, inserted] = item_ids.emplace(label, items.size());
    if (inserted) items.push_back(label);
    return fmt::format("item{}", it->second);
  };
  const std::string root = item_node(std::string(consequent));
  for (auto i : selected) {
    for (const auto& a : rows[i].antecedent) item_node(a);
    for (const auto& c : rows[i].consequent) item_node(c);
  }

  std::string dot;
  dot += fmt::format("digraph {} {{\n", quote(fmt::format("rules_{}", consequent)));
  dot += fmt::format("  graph [layout=twopi, root={}, overlap=false, ranksep=1.2];\n", quote(root));
  dot += "  edge [color=\"#555555\", arrowsize=0.6];\n";
  for (std::size_t k = 0; k < items.size(); ++k) {
    const bool is_root = items[k] == consequent;
    dot += fmt::format("  item{} [shape=plaintext, label={}, fontsize={}];\n", k, quote(items[k]),
                       is_root ? 18 : 12);
  }
  for (auto i : selected) {
    const auto& r = rows[i];
    const auto rule = fmt::format("rule{}", i + 1);
    dot += fmt::format(
        "  {} [shape=circle, style=filled, fixedsize=true, label=\"\", width={:.3f}, fillcolor=\"{}\", "
        "tooltip={}];\n",
        rule, rule_node_width(r.confidence, style), lift_color(r.lift, lift_lo, lift_hi, style),
        quote(fmt::format("rule {}: support={:.3f} confidence={:.3f} lift={:.3f}", i + 1, r.support,
                          r.confidence, r.lift)));
    for (const auto& a : r.antecedent) {
      dot += fmt::format("  item{} -> {};\n", item_ids.find(a)->second, rule);
    }
    for (const auto& c : r.consequent) {
      dot += fmt::format("  {} -> item{};\n", rule, item_ids.find(c)->second);
    }
  }
  dot += "}\n";
  return dot;
}

}  // namespace fpm
