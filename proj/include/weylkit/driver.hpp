#pragma once

#include <chrono>
#include <future>

#include <json.hpp>

#include "weylkit/geodesic.hpp"
#include "weylkit/paracr.hpp"
#include "weylkit/quartic.hpp"
#include "weylkit/scene.hpp"

namespace weylkit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "weylkit 0.1.0";

// exit codes: 0 clean, 2 a checked property fails, 1 errors
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitPropertyFails = 2;

struct DriverOptions {
  std::string scene_path;
  std::string out_path;           // empty = stdout
  std::optional<int> signature;   // override
  int samples = 5;
  std::uint64_t seed = 1;
  int degree_bound = 64;
  bool timings = false;
  std::string quartic_coeffs;     // "C4,C3,C2,C1,C0"
  std::vector<double> x0, v0;     // geodesic initial data
  double step = 1e-3;
  int steps = 1000;
};

struct DriverResult {
  Json report;
  std::string csv; // geodesic output
  int exit_code = kExitOk;
  bool is_csv = false;
};

namespace detail {

inline std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json tensor_json(const TensorField& t) {
  std::function<Json(std::vector<int>&, int)> rec = [&](std::vector<int>& idx, int depth) -> Json {
    if (depth == t.rank()) return t.at(idx).to_string();
    Json arr = Json::array();
    for (int i = 0; i < t.n(); ++i) {
      idx.push_back(i);
      arr.push_back(rec(idx, depth + 1));
      idx.pop_back();
    }
    return arr;
  };
  std::vector<int> idx;
  return rec(idx, 0);
}

inline Json covector_json(const std::vector<Expr>& v) {
  Json arr = Json::array();
  for (auto& e : v) arr.push_back(e.to_string());
  return arr;
}

inline Json connection_json(const ConnectionField& c) {
  Json arr = Json::array();
  for (int i = 0; i < c.n(); ++i) {
    Json ai = Json::array();
    for (int j = 0; j < c.n(); ++j) {
      Json aj = Json::array();
      for (int k = 0; k < c.n(); ++k) aj.push_back(c.gamma(i, j, k).to_string());
      ai.push_back(aj);
    }
    arr.push_back(ai);
  }
  return arr;
}

inline Json root_type_json(const RootType& rt) {
  Json j;
  j["kind"] = rt.is_type_n() ? "TypeN" : (rt.kind == RootType::Kind::Zero ? "Zero" : "Typed");
  if (rt.kind == RootType::Kind::Zero) return j;
  if (rt.is_type_n()) {
    j["root"] = rt.real_roots[0].projective_string();
    j["multiplicity"] = 4;
  }
  Json rr = Json::array();
  for (auto& r : rt.real_roots) {
    Json e;
    e["root"] = r.projective_string();
    e["multiplicity"] = r.multiplicity;
    if (!r.at_infinity && !r.rational) e["algebraic_degree"] = r.algebraic_degree;
    rr.push_back(e);
  }
  j["real_roots"] = rr;
  j["complex_pair_multiplicities"] = rt.complex_pair_multiplicities;
  return j;
}

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return Rat(Int(s.substr(0, slash))) / Rat(Int(s.substr(slash + 1)));
}

struct StopWatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
};

} // namespace detail

inline DriverResult run_command(const std::string& command, const DriverOptions& opt) {
  DriverResult res;
  Json& rep = res.report;
  rep["tool"] = kToolVersion;
  rep["command"] = command;

  std::optional<Scene> scene;
  std::string scene_bytes;
  if (!opt.scene_path.empty()) {
    std::ifstream in(opt.scene_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open scene file: " + opt.scene_path);
    std::stringstream ss;
    ss << in.rdbuf();
    scene_bytes = ss.str();
    std::istringstream sin(scene_bytes);
    scene = load_scene(sin, opt.degree_bound);
    if (opt.signature) {
      scene->epsilon = *opt.signature;
      if (scene->metric) {
        TensorField g = scene->metric->tensor();
        scene->metric.emplace(scene->chart, std::move(g), *opt.signature);
      }
    }
  }
  rep["input_digest"] = "fnv1a:" + detail::fnv1a_hex(!scene_bytes.empty() ? scene_bytes
                                                                          : opt.quartic_coeffs);
  Json records = Json::array();
  Json timings;
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw std::runtime_error(std::string("scene section required by command: ") + what);
  };

  detail::StopWatch total;
  if (command == "analyze-metric") {
    need(scene && scene->metric, "[metric]");
    const MetricField& g = *scene->metric;
    Curvature cur = curvature(levi_civita(g));
    Json r;
    r["analysis"] = "metric";
    r["n"] = g.n();
    r["epsilon"] = g.epsilon();
    r["det"] = g.det().to_string();
    r["ricci"] = detail::tensor_json(cur.ricci);
    if (g.n() == 3) {
      CottonTensor Y = cotton(WeylStructureField::closed(g));
      r["conformally_flat"] = Y.is_zero();
      r["cotton"] = detail::tensor_json(Y.Y);
      auto tt = twistor_quartic_type(g);
      r["twistor_type"] = tt.kind == TwistorQuarticType::Kind::Zero ? "Zero" : "TypeN";
    } else {
      TensorField C = conformal_weyl_tensor(g);
      r["conformally_flat"] = C.is_zero();
      r["conformal_weyl"] = detail::tensor_json(C);
    }
    records.push_back(r);
  } else if (command == "analyze-connection") {
    need(scene && scene->connection, "[connection]");
    const ConnectionField& conn = *scene->connection;
    TensorField W = projective_weyl(conn);
    Json r;
    r["analysis"] = "connection";
    r["thomas"] = detail::connection_json(thomas(conn).as_connection());
    r["projectively_flat"] = W.is_zero();
    r["projective_weyl"] = detail::tensor_json(W);
    records.push_back(r);
  } else if (command == "thomas") {
    need(scene && scene->connection, "[connection]");
    Json r;
    r["analysis"] = "thomas";
    r["pi"] = detail::connection_json(thomas(*scene->connection).as_connection());
    records.push_back(r);
  } else if (command == "odes") {
    need(scene.has_value(), "[connection] or [odes]");
    Json r;
    r["analysis"] = "odes";
    if (scene->odes) {
      bool proj = odepair_is_projective(*scene->odes);
      r["is_projective"] = proj;
      if (proj) {
        try {
          r["thomas"] = detail::connection_json(thomas_from_odes(*scene->odes).as_connection());
        } catch (const OdeBridgeError& e) {
          r["is_projective"] = false;
          r["note"] = e.what();
        }
      }
      records.push_back(r);
      if (!r["is_projective"].get<bool>()) res.exit_code = kExitPropertyFails;
    } else {
      need(scene->connection.has_value(), "[connection]");
      ChartPtr fc = scene->chart->has_fiber() ? scene->chart
                                              : Chart::with_fiber(opt.degree_bound);
      ODEPair odes = odes_from_connection(*scene->connection, fc);
      r["F1"] = odes.F1.to_string();
      r["F2"] = odes.F2.to_string();
      records.push_back(r);
    }
  } else if (command == "equivalent") {
    need(scene && scene->connection && scene->connection2, "[connection] and [connection2]");
    auto f = projectively_equivalent(*scene->connection, *scene->connection2);
    Json r;
    r["analysis"] = "projective-equivalence";
    r["found"] = f.has_value();
    if (f) r["f"] = detail::covector_json(*f);
    records.push_back(r);
    if (!f) res.exit_code = kExitPropertyFails;
  } else if (command == "metrizable") {
    need(scene && scene->connection && scene->metric, "[connection] and [metric]");
    auto sol = weyl_metrizable_with(*scene->connection, *scene->metric);
    Json r;
    r["analysis"] = "weyl-metrizability";
    r["found"] = sol.has_value();
    if (sol) {
      r["beta"] = detail::covector_json(sol->first);
      r["f"] = detail::covector_json(sol->second);
    }
    records.push_back(r);
    if (!sol) res.exit_code = kExitPropertyFails;
  } else if (command == "beltrami") {
    need(scene && scene->metric, "[metric]");
    BeltramiVerdict v = beltrami_check(scene->weyl_structure());
    Json r;
    r["analysis"] = "conformal-beltrami";
    r["projectively_flat"] = v.projectively_flat;
    r["conformally_flat"] = v.conformally_flat;
    r["implication_holds"] = !(v.projectively_flat && !v.conformally_flat);
    r["projective_residual"] = detail::tensor_json(v.projective_residual);
    r["conformal_residual"] = detail::tensor_json(v.conformal_residual);
    records.push_back(r);
  } else if (command == "einstein-weyl") {
    need(scene && scene->metric, "[metric]");
    EinsteinWeylResult ew = einstein_weyl(scene->weyl_structure());
    Json r;
    r["analysis"] = "einstein-weyl";
    r["verdict"] = ew.verdict;
    r["factor"] = ew.factor.to_string();
    r["residual"] = detail::tensor_json(ew.residual);
    records.push_back(r);
    if (!ew.verdict) res.exit_code = kExitPropertyFails;
  } else if (command == "quartic") {
    if (opt.quartic_coeffs.empty()) throw std::runtime_error("quartic needs --coeffs C4,C3,C2,C1,C0");
    auto parts = detail::split(opt.quartic_coeffs, ',');
    if (parts.size() != 5) throw std::runtime_error("--coeffs wants 5 comma-separated rationals");
    QuarticCoefficients qc{detail::parse_rat(parts[0]), detail::parse_rat(parts[1]),
                           detail::parse_rat(parts[2]), detail::parse_rat(parts[3]),
                           detail::parse_rat(parts[4])};
    Json r = detail::root_type_json(classify_quartic(qc));
    r["analysis"] = "quartic";
    records.push_back(r);
  } else if (command == "twistor-type") {
    need(scene && scene->metric, "[metric]");
    auto tt = twistor_quartic_type(*scene->metric);
    Json r;
    r["analysis"] = "twistor-type";
    if (tt.kind == TwistorQuarticType::Kind::Zero) {
      r["kind"] = "Zero";
    } else {
      r["kind"] = "TypeN";
      r["root"] = tt.principal_root;
      r["multiplicity"] = tt.multiplicity;
    }
    records.push_back(r);
  } else if (command == "paracr") {
    need(scene && scene->connection, "[connection]");
    ChartPtr fc = scene->chart->has_fiber() ? scene->chart : Chart::with_fiber(opt.degree_bound);
    // deterministic sample points from the seed
    std::vector<std::vector<Rat>> samples;
    std::uint64_t state = opt.seed ? opt.seed : 1;
    auto next = [&]() {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return static_cast<long>(state % 9) - 4;
    };
    samples.push_back({Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)});
    for (int s = 1; s < opt.samples; ++s) {
      std::vector<Rat> pt;
      for (int c = 0; c < 5; ++c) pt.push_back(Rat(next(), 3));
      samples.push_back(pt);
    }
    auto report = paracr_torsion_diagnostics(*scene->connection, fc, samples);
    Json r;
    r["analysis"] = "paracr-torsion";
    r["bracket_identically_zero"] = report.bracket_identically_zero;
    Json rows = Json::array();
    for (auto& row : report.rows) {
      Json e;
      Json pt = Json::array();
      for (auto& q : row.point) pt.push_back(Rat(q).str());
      e["point"] = pt;
      e["defect_values"] = Json::array({row.defect_p1.str(), row.defect_p2.str()});
      e["weyl_components"] = Json::array({row.weyl_112.str(), row.weyl_212.str()});
      e["covanish"] = row.covanish;
      rows.push_back(e);
    }
    r["samples"] = rows;
    r["all_covanish"] = report.all_covanish;
    records.push_back(r);
  } else if (command == "identities") {
    need(scene && scene->metric, "[metric]");
    WeylStructureField w = scene->weyl_structure();
    // independent suite items; assembled in fixed order regardless of completion
    auto fq = std::async(std::launch::async, [&] { return verify_qp_identity(w); });
    auto fw = std::async(std::launch::async, [&] { return verify_w_trace_identity(w); });
    std::optional<std::future<TensorField>> fc;
    if (w.metric.n() >= 4)
      fc = std::async(std::launch::async, [&] { return verify_cwqp_identity(w); });
    TensorField qp = fq.get();
    TensorField wt = fw.get();
    bool all = qp.is_zero() && wt.is_zero();
    Json r;
    r["analysis"] = "identities";
    r["qp_zero"] = qp.is_zero();
    r["qp_residual"] = detail::tensor_json(qp);
    r["w_trace_zero"] = wt.is_zero();
    r["w_trace_residual"] = detail::tensor_json(wt);
    if (fc) {
      TensorField cw = fc->get();
      r["cwqp_zero"] = cw.is_zero();
      all = all && cw.is_zero();
    } else {
      r["cwqp_zero"] = nullptr; // degenerate for n = 3
    }
    r["all_zero"] = all;
    records.push_back(r);
    if (!all) res.exit_code = kExitPropertyFails;
  } else if (command == "geodesic") {
    need(scene && (scene->connection || scene->metric), "[connection] or [metric]");
    ConnectionField conn = scene->connection ? *scene->connection : levi_civita(*scene->metric);
    int d = conn.n();
    std::vector<double> x0 = opt.x0, v0 = opt.v0;
    if (x0.empty()) x0.assign(static_cast<std::size_t>(d), 0.0);
    if (v0.empty()) {
      v0.assign(static_cast<std::size_t>(d), 0.0);
      v0[0] = 1.0;
    }
    Polyline line = integrate_geodesic(conn, x0, v0, opt.step, opt.steps);
    std::ostringstream csv;
    csv << "t";
    for (int i = 0; i < d; ++i) csv << "," << conn.chart()->var_name(i);
    csv << "\n";
    csv.precision(17);
    for (auto& s : line) {
      csv << s.t;
      for (double x : s.x) csv << "," << x;
      csv << "\n";
    }
    res.csv = csv.str();
    res.is_csv = true;
  } else {
    throw std::runtime_error("unknown command: " + command);
  }

  if (opt.timings) timings["total"] = total.ms();
  rep["records"] = records;
  if (opt.timings) rep["timings_ms"] = timings;
  return res;
}

} // namespace weylkit
