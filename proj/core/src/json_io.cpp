#include "roughsio/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rsio {

using Json = nlohmann::ordered_json;

namespace {

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Config, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorKind::Config, path + ": " + e.what());
  }
  return j;
}

Complex parse_complex(const Json& j, const std::string& field) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2)
    return Complex{j[0].get<double>(), j[1].get<double>()};
  fail(ErrorKind::Config, "field '" + field + "' must be a number or [re, im]");
}

Point parse_point(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() < 2)
    fail(ErrorKind::Config, "field '" + field + "' must be [x, y]");
  return point2(j[0].get<double>(), j[1].get<double>());
}

RadialKind radial_kind_of(const std::string& s) {
  if (s == "constant") return RadialKind::Constant;
  if (s == "power") return RadialKind::Power;
  if (s == "one_plus_r") return RadialKind::OnePlusR;
  if (s == "one_plus_sqrt") return RadialKind::OnePlusSqrt;
  if (s == "sin_log") return RadialKind::SinLog;
  if (s == "sqrt_log") return RadialKind::SqrtLog;
  fail(ErrorKind::Config, "unknown radial kind '" + s + "'");
}

}  // namespace

KernelSpec load_kernel_spec(const std::string& path) {
  const Json j = read_file(path);
  KernelSpec spec;
  const int dim = j.value("dimension", 2);
  if (dim != 2 && dim != 3)
    fail(ErrorKind::Config, path + ": field 'dimension' must be 2 or 3");
  if (j.contains("cells")) {
    if (dim != 2) fail(ErrorKind::Config, path + ": explicit cells need dimension 2");
    std::vector<double> edges;
    std::vector<Complex> vals;
    double cursor = 0.0;
    edges.push_back(0.0);
    for (const auto& cell : j.at("cells")) {
      const double from = cell.at("angle_from").get<double>();
      const double to = cell.at("angle_to").get<double>();
      if (std::abs(from - cursor) > 1e-12) {
        // gap: implicit zero cell
        edges.push_back(from);
        vals.push_back(Complex{0, 0});
      }
      edges.push_back(to);
      vals.push_back(parse_complex(cell.at("value"), "value"));
      cursor = to;
    }
    if (cursor < kTwoPi - 1e-12) {
      edges.push_back(kTwoPi);
      vals.push_back(Complex{0, 0});
    }
    spec.omega = AngularKernel::from_cells2(std::move(edges), std::move(vals));
  } else if (j.contains("callable")) {
    const auto& c = j.at("callable");
    const std::string id = c.at("id").get<std::string>();
    const double param = c.value("param", 0.0);
    const int res = c.value("resolution", 4096);
    spec.omega = catalogue_kernel(id, param, res);
  } else {
    fail(ErrorKind::Config, path + ": need field 'cells' or 'callable'");
  }
  if (j.contains("radial")) {
    const auto& r = j.at("radial");
    spec.h = make_radial(radial_kind_of(r.value("kind", std::string("constant"))),
                         r.value("param", 1.0), r.value("sigma", 1.0));
    spec.h.eps = r.value("epsilon", 0.0);
    if (r.contains("h0")) spec.h.h0 = r.at("h0").get<double>();
  } else {
    spec.h = make_radial(RadialKind::Constant, 1.0, 2.0);
  }
  if (j.contains("nonconv")) {
    const auto& nc = j.at("nonconv");
    const std::string id = nc.value("id", std::string("cos_dot"));
    if (id == "cos_dot") {
      spec.nonconv = [](const Point& x, const Point& y) {
        return std::cos(dot(x, y));
      };
      spec.nonconv_bound = 1.0;
    } else if (id == "one") {
      spec.nonconv = [](const Point&, const Point&) { return 1.0; };
      spec.nonconv_bound = 1.0;
    } else {
      fail(ErrorKind::Config, path + ": unknown nonconv id '" + id + "'");
    }
    spec.nonconv_bound = nc.value("bound", spec.nonconv_bound);
  }
  spec.name = j.value("name", std::string("kernel"));
  return spec;
}

Weight load_weight(const std::string& path) {
  const Json j = read_file(path);
  const std::string family = j.value("family", std::string("constant"));
  if (family == "constant") return Weight::constant(j.value("value", 1.0));
  if (family == "power") return Weight::power(j.value("alpha", 0.0));
  if (family == "exp")
    return Weight::exponential(parse_point(j.at("direction"), "direction"));
  fail(ErrorKind::Config, path + ": unknown weight family '" + family + "'");
}

FunctionInput load_function(const std::string& path) {
  const Json j = read_file(path);
  FunctionInput out;
  if (j.contains("analytic")) {
    const auto& a = j.at("analytic");
    const std::string fam = a.value("family", std::string("gaussian"));
    TestFunction::Family f;
    if (fam == "gaussian") {
      f = TestFunction::Family::Gaussian;
    } else if (fam == "bump") {
      f = TestFunction::Family::Bump;
    } else if (fam == "poly_bump") {
      f = TestFunction::Family::PolyBump;
    } else {
      fail(ErrorKind::Config, path + ": unknown analytic family '" + fam + "'");
    }
    out.analytic = make_test_function(f, parse_point(a.at("center"), "center"),
                                      a.value("width", 1.0),
                                      a.value("amplitude", 1.0));
  } else if (j.contains("grid")) {
    const auto& g = j.at("grid");
    GridFunction gf;
    gf.corner = parse_point(g.at("corner"), "corner");
    gf.side = {g.at("side")[0].get<double>(), g.at("side")[1].get<double>()};
    gf.res = {g.at("res")[0].get<int>(), g.at("res")[1].get<int>()};
    for (const auto& v : g.at("values"))
      gf.values.push_back(parse_complex(v, "values"));
    if (static_cast<int>(gf.values.size()) != gf.count())
      fail(ErrorKind::Config, path + ": field 'values' has the wrong length");
    gf.validate();
    out.grid = std::move(gf);
  } else {
    fail(ErrorKind::Config, path + ": need field 'analytic' or 'grid'");
  }
  return out;
}

LipschitzField load_field(const std::string& path) {
  const Json j = read_file(path);
  LipschitzField a;
  const std::string fam = j.value("family", std::string("linear"));
  if (fam == "linear") {
    a.family = LipschitzField::Family::Linear;
    a.v = parse_point(j.at("vector"), "vector");
  } else if (fam == "sin_prod") {
    a.family = LipschitzField::Family::SinProd;
    a.scale = j.value("scale", 1.0);
  } else {
    fail(ErrorKind::Config, path + ": unknown field family '" + fam + "'");
  }
  return a;
}

std::vector<Point> load_points(const std::string& path) {
  const Json j = read_file(path);
  if (!j.is_array()) fail(ErrorKind::Config, path + ": expected an array of points");
  std::vector<Point> pts;
  for (const auto& p : j) pts.push_back(parse_point(p, "point"));
  return pts;
}

SuiteConfig load_suite_config(const std::string& path) {
  const Json j = read_file(path);
  SuiteConfig cfg;
  cfg.seed = j.value("seed", cfg.seed);
  cfg.kernel_resolution = j.value("kernel_resolution", cfg.kernel_resolution);
  if (j.contains("kernels"))
    cfg.kernel_ids = j.at("kernels").get<std::vector<std::string>>();
  cfg.p = j.value("p", cfg.p);
  cfg.r = j.value("r", cfg.r);
  cfg.sigma = j.value("sigma", cfg.sigma);
  if (j.contains("eps_list"))
    cfg.eps_list = j.at("eps_list").get<std::vector<double>>();
  cfg.grid_extent = j.value("grid_extent", cfg.grid_extent);
  cfg.grid_res = j.value("grid_res", cfg.grid_res);
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    cfg.tol.identity_rel = t.value("identity_rel", cfg.tol.identity_rel);
    cfg.tol.cross_scale = t.value("cross_scale", cfg.tol.cross_scale);
    cfg.tol.trend_slope = t.value("trend_slope", cfg.tol.trend_slope);
    cfg.tol.cauchy_block = t.value("cauchy_block", cfg.tol.cauchy_block);
  }
  return cfg;
}

namespace {

Json grid_json(const GridFunction& g) {
  Json out;
  out["grid"]["corner"] = {g.corner.c[0], g.corner.c[1]};
  out["grid"]["side"] = {g.side[0], g.side[1]};
  out["grid"]["res"] = {g.res[0], g.res[1]};
  Json vals = Json::array();
  for (const auto& v : g.values) {
    if (v.imag() == 0.0) {
      vals.push_back(v.real());
    } else {
      vals.push_back({v.real(), v.imag()});
    }
  }
  out["grid"]["values"] = std::move(vals);
  return out;
}

}  // namespace

std::string grid_to_json(const GridFunction& g) { return grid_json(g).dump(2); }

void save_grid(const GridFunction& g, const std::string& path) {
  save_text(grid_to_json(g), path);
}

std::string report_to_json(const Report& rep, const SuiteConfig& cfg) {
  Json j;
  j["config"]["seed"] = cfg.seed;
  j["config"]["kernel_resolution"] = cfg.kernel_resolution;
  j["config"]["kernels"] = cfg.kernel_ids;
  j["config"]["p"] = cfg.p;
  j["config"]["r"] = cfg.r;
  j["config"]["sigma"] = cfg.sigma;
  j["config"]["eps_list"] = cfg.eps_list;
  j["config"]["tolerances"] = {{"identity_rel", cfg.tol.identity_rel},
                               {"cross_scale", cfg.tol.cross_scale},
                               {"trend_slope", cfg.tol.trend_slope},
                               {"cauchy_block", cfg.tol.cauchy_block}};
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json e;
    e["id"] = c.id;
    e["statement"] = c.statement;
    e["computed"] = c.computed;
    e["bound"] = c.bound;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    e["probe"] = c.probe;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["summary"]["total"] = rep.total();
  j["summary"]["failed_gating"] = rep.failed_gating();
  j["summary"]["failed_any"] = rep.failed_any();
  return j.dump(2);
}

void save_report(const Report& rep, const SuiteConfig& cfg,
                 const std::string& path) {
  save_text(report_to_json(rep, cfg), path);
}

std::string set_info_json(const StarSet& star) {
  const SetIntegrals si = star.set_integrals();
  Json j;
  j["dimension"] = star.dim();
  j["measure"] = si.measure;
  j["sgn_integral"] = {si.sgn_integral.real(), si.sgn_integral.imag()};
  j["logp_integral"] = si.logp_integral;
  j["logp_bound"] = si.logp_bound;
  j["log_integral"] = si.log_integral;
  j["log_bound"] = si.log_bound;
  j["weighted_strata_sum"] = si.weighted_strata_sum;
  j["strata_bound"] = si.strata_bound;
  j["achieved_cn"] = si.achieved_cn;
  j["rho_max"] = star.rho_max();
  j["residual_mass"] = star.residual_mass();
  Json strata = Json::array();
  for (const auto& st : star.strata()) {
    strata.push_back({{"m", st.m},
                      {"measure", st.measure},
                      {"sphere_measure", st.sphere_measure},
                      {"cells", st.cells.size()}});
  }
  j["strata"] = std::move(strata);
  return j.dump(2);
}

std::string cover_to_json(const StratifiedCover& cover) {
  Json j;
  j["beta_cover"] = cover.beta_cover;
  j["achieved_cn"] = cover.achieved_cn;
  j["gamma"] = cover.gamma;
  Json rects = Json::array();
  for (const auto& r : cover.rects) {
    Json e;
    e["m"] = r.m;
    e["k"] = r.k;
    if (r.rect.dim == 2) {
      e["angle"] = std::atan2(r.rect.axes[0].c[1], r.rect.axes[0].c[0]);
      e["half_extents"] = {r.rect.half[0], r.rect.half[1]};
    } else {
      e["frame"] = {{r.rect.axes[0].c[0], r.rect.axes[0].c[1], r.rect.axes[0].c[2]},
                    {r.rect.axes[1].c[0], r.rect.axes[1].c[1], r.rect.axes[1].c[2]},
                    {r.rect.axes[2].c[0], r.rect.axes[2].c[1], r.rect.axes[2].c[2]}};
      e["half_extents"] = {r.rect.half[0], r.rect.half[1], r.rect.half[2]};
    }
    rects.push_back(std::move(e));
  }
  j["rectangles"] = std::move(rects);
  return j.dump(2);
}

void save_text(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Config, "cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
}

std::string strata_csv(const StarSet& star) {
  std::ostringstream os;
  os << "m,measure,sphere_measure\n";
  for (const auto& st : star.strata())
    os << st.m << "," << st.measure << "," << st.sphere_measure << "\n";
  return os.str();
}

std::string outline_csv(const StarSet& star) {
  if (star.dim() != 2) fail(ErrorKind::Domain, "outline: n = 2 only");
  std::ostringstream os;
  os << "x,y\n";
  const auto& k = star.kernel();
  const auto& edges = k.edges2();
  for (int c = 0; c < k.cell_count(); ++c) {
    const double rho = star.cell_rho(c);
    const Point a = rho * direction2(edges[c]);
    const Point b = rho * direction2(edges[c + 1]);
    os << a.c[0] << "," << a.c[1] << "\n" << b.c[0] << "," << b.c[1] << "\n";
  }
  return os.str();
}

std::string cover_rects_csv(const StratifiedCover& cover) {
  std::ostringstream os;
  os << "m,k,x,y\n";
  for (const auto& r : cover.rects) {
    if (r.rect.dim != 2) continue;
    for (const auto& p : r.rect.outline2())
      os << r.m << "," << r.k << "," << p.c[0] << "," << p.c[1] << "\n";
  }
  return os.str();
}

std::string rect_condition_csv(const RectConditionReport& rep) {
  std::ostringstream os;
  os << "m,k,K,divergent\n";
  for (const auto& e : rep.entries)
    os << e.m << "," << e.k << "," << e.K << "," << (e.divergent ? 1 : 0) << "\n";
  return os.str();
}

std::string rect_condition_json(const RectConditionReport& rep) {
  Json j;
  j["mode"] = rep.mode == RectMode::Ca    ? "ca"
              : rep.mode == RectMode::Cb  ? "cb"
              : rep.mode == RectMode::B2  ? "b2"
                                          : "aunif";
  j["p"] = rep.p;
  j["r"] = rep.r;
  Json entries = Json::array();
  for (const auto& e : rep.entries)
    entries.push_back(
        {{"m", e.m}, {"k", e.k}, {"K", e.K}, {"divergent", e.divergent}});
  j["K_table"] = std::move(entries);
  j["partial_sums"] = rep.partial_sums;
  j["total"] = rep.total;
  j["cauchy_ok"] = rep.cauchy_ok;
  j["decay_rate"] = rep.decay_rate;
  j["finite_family"] = rep.finite_family;
  j["any_divergent"] = rep.any_divergent;
  j["uniform_sup"] = rep.uniform_sup;
  j["verdict"] = rep.certified ? "certified-at-probe-scale" : "not-certified";
  return j.dump(2);
}

std::string grid_slice_csv(const GridFunction& g) {
  std::ostringstream os;
  os << "x,re,im\n";
  const int j = g.res[1] / 2;
  for (int i = 0; i < g.res[0]; ++i) {
    const Point p = g.node(i, j);
    os << p.c[0] << "," << g.at(i, j).real() << "," << g.at(i, j).imag() << "\n";
  }
  return os.str();
}

std::string checks_csv(const Report& rep) {
  std::ostringstream os;
  os << "id,computed,bound,tolerance,pass,probe\n";
  for (const auto& c : rep.checks)
    os << c.id << "," << c.computed << "," << c.bound << "," << c.tolerance << ","
       << (c.pass ? 1 : 0) << "," << (c.probe ? 1 : 0) << "\n";
  return os.str();
}

}  // namespace rsio
