#pragma once

#include <optional>
#include <string>

#include "roughsio/suite.hpp"

namespace rsio {

// kernel.json: {"dimension": 2, "cells": [{"angle_from", "angle_to",
// "value" | ["re","im"]}, ...] or "callable": {"id", "param",
// "resolution"}, "radial": {"kind", "param", "sigma", "epsilon", "h0"},
// "nonconv": {"id": "cos_dot", "bound": B} (optional)}
KernelSpec load_kernel_spec(const std::string& path);

// weight.json: {"family": "constant"|"power"|"exp", "value", "alpha",
// "direction": [dx, dy]}
Weight load_weight(const std::string& path);

struct FunctionInput {
  std::optional<TestFunction> analytic;
  std::optional<GridFunction> grid;
};

// f.json: {"analytic": {"family": "gaussian"|"bump"|"poly_bump", "center",
// "width", "amplitude"}} or {"grid": {"corner", "side", "res", "values"}}
FunctionInput load_function(const std::string& path);

// a.json: {"family": "linear"|"sin_prod", "vector": [v1, v2], "scale"}
LipschitzField load_field(const std::string& path);

// pts.json: [[x, y], ...]
std::vector<Point> load_points(const std::string& path);

// suite.json: overrides of SuiteConfig fields (all optional).
SuiteConfig load_suite_config(const std::string& path);

std::string grid_to_json(const GridFunction& g);
void save_grid(const GridFunction& g, const std::string& path);

std::string report_to_json(const Report& rep, const SuiteConfig& cfg);
void save_report(const Report& rep, const SuiteConfig& cfg,
                 const std::string& path);

std::string set_info_json(const StarSet& star);
std::string cover_to_json(const StratifiedCover& cover);
void save_text(const std::string& text, const std::string& path);

// CSV emitters (plot-ready).
std::string strata_csv(const StarSet& star);
std::string outline_csv(const StarSet& star);          // polygon of S (n=2)
std::string cover_rects_csv(const StratifiedCover& cover);
std::string rect_condition_csv(const RectConditionReport& rep);
std::string rect_condition_json(const RectConditionReport& rep);
std::string grid_slice_csv(const GridFunction& g);      // center-row slice
std::string checks_csv(const Report& rep);

}  // namespace rsio
