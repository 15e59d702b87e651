#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fpm/io.hpp"

namespace fpm {

// Visual encoding of a rule graph. Rule-node width is affine in confidence
// over [min_conf, 1] -> [min_width, max_width] (inches); fill color is a
// linear RGB ramp from low_color to high_color over the lift range of the
// whole rule table.
struct GraphStyle {
  double min_conf = 0.7;
  double min_width = 0.3;
  double max_width = 1.2;
  std::string low_color = "#fee8c8";
  std::string high_color = "#e34a33";
};

double rule_node_width(double confidence, const GraphStyle& style);
std::string lift_color(double lift, double lift_lo, double lift_hi, const GraphStyle& style);

// Sorted unique consequent labels of the table.
std::vector<std::string> consequent_labels(const std::vector<io::RuleRow>& rows);

// Directed graph of every rule whose consequent contains `consequent`:
// plain-text item nodes, one circular node per rule, antecedent -> rule ->
// consequent edges. The consequent is the radial layout root so it renders at
// the centre. Throws DataError listing the available consequents when none
// match.
std::string render_rule_graph(const std::vector<io::RuleRow>& rows, std::string_view consequent,
                              const GraphStyle& style = {});

}  // namespace fpm
