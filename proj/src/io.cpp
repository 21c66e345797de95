#include "lsi/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lsi {

using json = nlohmann::ordered_json;

std::string format_17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

std::string scheme_name(Scheme s) {
  return s == Scheme::Midpoint ? "midpoint" : "trapezoidal";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "midpoint") return Scheme::Midpoint;
  if (name == "trapezoidal") return Scheme::Trapezoidal;
  throw std::invalid_argument("unknown scheme: " + name);
}

std::string model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::Lsi: return "lsi";
    case ModelKind::Lgp: return "lgp";
    case ModelKind::LgpExact: return "lgp-exact";
  }
  throw std::logic_error("unreachable model kind");
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "lsi") return ModelKind::Lsi;
  if (name == "lgp") return ModelKind::Lgp;
  if (name == "lgp-exact") return ModelKind::LgpExact;
  throw std::invalid_argument("unknown model kind: " + name);
}

namespace {

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const json& a) {
  Vec v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v[static_cast<int>(i)] = a[i].get<double>();
  return v;
}

}  // namespace

std::string dataset_to_json(const TrajectoryDataset& ds) {
  json doc;
  doc["n"] = ds.n;
  doc["h"] = ds.h;
  doc["domain"]["lo"] = vec_to_json(ds.domain.lo);
  doc["domain"]["hi"] = vec_to_json(ds.domain.hi);
  json trajs = json::array();
  for (const auto& tr : ds.trajectories) {
    json positions = json::array();
    for (const auto& q : tr.positions) positions.push_back(vec_to_json(q));
    trajs.push_back(positions);
  }
  doc["trajectories"] = std::move(trajs);
  return doc.dump(2) + "\n";
}

TrajectoryDataset dataset_from_json(const std::string& text) {
  const json doc = json::parse(text);
  TrajectoryDataset ds;
  ds.n = doc.at("n").get<int>();
  ds.h = doc.at("h").get<double>();
  ds.domain.lo = vec_from_json(doc.at("domain").at("lo"));
  ds.domain.hi = vec_from_json(doc.at("domain").at("hi"));
  for (const auto& positions : doc.at("trajectories")) {
    Trajectory tr;
    tr.h = ds.h;
    for (const auto& q : positions) tr.positions.push_back(vec_from_json(q));
    ds.trajectories.push_back(std::move(tr));
  }
  ds.validate();
  return ds;
}

void save_dataset(const TrajectoryDataset& ds, const std::string& path) {
  write_text_file(path, dataset_to_json(ds));
}

TrajectoryDataset load_dataset(const std::string& path) {
  return dataset_from_json(read_text_file(path));
}

std::string model_to_json(const KernelModel& model) {
  json doc;
  doc["kind"] = model_kind_name(model.kind());
  doc["scheme"] = scheme_name(model.scheme());
  doc["h"] = model.h();
  doc["n"] = model.dim();
  doc["kernel"]["epsilon"] = model.params().epsilon;
  doc["kernel"]["c_k"] = model.params().c_k;
  doc["c"] = model.meta().c;
  doc["normalisation_point"] = vec_to_json(model.meta().norm_point);
  json centers = json::array();
  for (int i = 0; i < model.centers().rows(); ++i)
    centers.push_back(vec_to_json(model.centers().row(i)));
  doc["centers"] = std::move(centers);
  doc["coefficients"] = vec_to_json(model.coefficients());
  doc["diagnostics"]["rank"] = model.diagnostics().rank;
  doc["diagnostics"]["residual"] = model.diagnostics().residual;
  doc["diagnostics"]["del_residual_inf"] = model.diagnostics().del_residual_inf;
  return doc.dump(2) + "\n";
}

KernelModel model_from_json(const std::string& text) {
  const json doc = json::parse(text);
  const int n = doc.at("n").get<int>();
  const auto& centers = doc.at("centers");
  Mat Z(centers.size(), 2 * n);
  for (size_t i = 0; i < centers.size(); ++i)
    Z.row(static_cast<int>(i)) = vec_from_json(centers[i]);
  Vec B = vec_from_json(doc.at("coefficients"));
  KernelParams params;
  params.epsilon = doc.at("kernel").at("epsilon").get<double>();
  params.c_k = doc.at("kernel").at("c_k").get<double>();
  KernelModel model(std::move(Z), std::move(B), params,
                    scheme_from_name(doc.at("scheme").get<std::string>()),
                    doc.at("h").get<double>(), n,
                    model_kind_from_name(doc.at("kind").get<std::string>()));
  model.meta().c = doc.at("c").get<double>();
  model.meta().norm_point = vec_from_json(doc.at("normalisation_point"));
  model.diagnostics().rank = doc.at("diagnostics").at("rank").get<int>();
  model.diagnostics().residual = doc.at("diagnostics").at("residual").get<double>();
  model.diagnostics().del_residual_inf =
      doc.at("diagnostics").at("del_residual_inf").get<double>();
  return model;
}

void save_model(const KernelModel& model, const std::string& path) {
  write_text_file(path, model_to_json(model));
}

KernelModel load_model(const std::string& path) {
  return model_from_json(read_text_file(path));
}

namespace {

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i)));
  return rows;
}

Mat mat_from_json(const json& rows, int cols) {
  Mat m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) m.row(static_cast<int>(i)) = vec_from_json(rows[i]);
  return m;
}

}  // namespace

std::string gpflow_to_json(const GpFlowModel& model) {
  json doc;
  doc["kind"] = "gpflow";
  doc["n"] = model.n;
  doc["h"] = model.h;
  doc["kernel"]["epsilon"] = model.params.epsilon;
  doc["kernel"]["c_k"] = model.params.c_k;
  doc["jitter"] = model.jitter;
  doc["log_marginal"] = model.log_marginal;
  doc["inputs"] = mat_to_json(model.X);
  doc["weights"] = mat_to_json(model.alpha);
  return doc.dump(2) + "\n";
}

GpFlowModel gpflow_from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.at("kind").get<std::string>() != "gpflow")
    throw std::invalid_argument("document is not a gpflow model");
  GpFlowModel m;
  m.n = doc.at("n").get<int>();
  m.h = doc.at("h").get<double>();
  m.params.epsilon = doc.at("kernel").at("epsilon").get<double>();
  m.params.c_k = doc.at("kernel").at("c_k").get<double>();
  m.jitter = doc.at("jitter").get<double>();
  m.log_marginal = doc.at("log_marginal").get<double>();
  m.X = mat_from_json(doc.at("inputs"), 2 * m.n);
  m.alpha = mat_from_json(doc.at("weights"), 2 * m.n);
  return m;
}

void save_gpflow(const GpFlowModel& model, const std::string& path) {
  write_text_file(path, gpflow_to_json(model));
}

GpFlowModel load_gpflow(const std::string& path) {
  return gpflow_from_json(read_text_file(path));
}

std::string model_document_kind(const std::string& path) {
  const json doc = json::parse(read_text_file(path));
  return doc.at("kind").get<std::string>();
}

void write_trajectory_csv(const std::string& path, const std::vector<Vec>& positions, double h,
                          const std::vector<Vec>* velocities, const std::vector<Vec>* momenta) {
  if (velocities && velocities->size() != positions.size())
    throw std::invalid_argument("write_trajectory_csv: velocity count mismatch");
  if (momenta && momenta->size() != positions.size())
    throw std::invalid_argument("write_trajectory_csv: momentum count mismatch");
  const int n = positions.empty() ? 0 : static_cast<int>(positions[0].size());

  std::ostringstream out;
  out << "t";
  for (int a = 0; a < n; ++a) out << ",q" << (a + 1);
  if (velocities)
    for (int a = 0; a < n; ++a) out << ",qd" << (a + 1);
  if (momenta)
    for (int a = 0; a < n; ++a) out << ",p" << (a + 1);
  out << "\n";
  for (size_t j = 0; j < positions.size(); ++j) {
    out << format_17(static_cast<double>(j) * h);
    for (int a = 0; a < n; ++a) out << "," << format_17(positions[j][a]);
    if (velocities)
      for (int a = 0; a < n; ++a) out << "," << format_17((*velocities)[j][a]);
    if (momenta)
      for (int a = 0; a < n; ++a) out << "," << format_17((*momenta)[j][a]);
    out << "\n";
  }
  write_text_file(path, out.str());
}

TrajectoryCsv read_trajectory_csv(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trajectory file: " + path);

  int nq = 0, nv = 0, np = 0;
  {
    std::istringstream hs(line);
    std::string col;
    bool first = true;
    while (std::getline(hs, col, ',')) {
      if (first) {
        if (col != "t") throw std::runtime_error("trajectory CSV must start with a t column");
        first = false;
      } else if (col.rfind("qd", 0) == 0) {
        ++nv;
      } else if (col.rfind("q", 0) == 0) {
        ++nq;
      } else if (col.rfind("p", 0) == 0) {
        ++np;
      } else {
        throw std::runtime_error("unrecognised trajectory CSV column: " + col);
      }
    }
  }
  if (nq < 1) throw std::runtime_error("trajectory CSV has no position columns");

  TrajectoryCsv out;
  std::vector<double> times;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (static_cast<int>(row.size()) != 1 + nq + nv + np)
      throw std::runtime_error("trajectory CSV row width mismatch");
    times.push_back(row[0]);
    out.positions.push_back(Eigen::Map<Vec>(row.data() + 1, nq));
    if (nv > 0) out.velocities.push_back(Eigen::Map<Vec>(row.data() + 1 + nq, nv));
    if (np > 0) out.momenta.push_back(Eigen::Map<Vec>(row.data() + 1 + nq + nv, np));
  }
  if (times.size() >= 2) out.h = times[1] - times[0];
  return out;
}

void write_energy_trace_csv(const std::string& path, const EnergyTrace& trace) {
  std::ostringstream out;
  out << "t,H\n";
  for (size_t j = 0; j < trace.t.size(); ++j)
    out << format_17(trace.t[j]) << "," << format_17(trace.H[j]) << "\n";
  write_text_file(path, out.str());
}

void write_contour_csv(const std::string& path, const ContourGrid& grid) {
  std::ostringstream out;
  // header row: empty corner cell, then x coordinates
  out << "y\\x";
  for (double x : grid.x) out << "," << format_17(x);
  out << "\n";
  for (int j = 0; j < grid.values.rows(); ++j) {
    out << format_17(grid.y.empty() ? 0.0 : grid.y[j]);
    for (int i = 0; i < grid.values.cols(); ++i) out << "," << format_17(grid.values(j, i));
    out << "\n";
  }
  write_text_file(path, out.str());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace lsi
