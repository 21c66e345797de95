#pragma once

#include <optional>
#include <string>

#include "lsi/analysis.hpp"
#include "lsi/gpflow.hpp"
#include "lsi/learn.hpp"
#include "lsi/types.hpp"

namespace lsi {

/// Decimal rendering with 17 significant digits.
std::string format_17(double v);

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);
std::string model_kind_name(ModelKind k);
ModelKind model_kind_from_name(const std::string& name);

// dataset document: {n, h, domain{lo,hi}, trajectories}
std::string dataset_to_json(const TrajectoryDataset& ds);
TrajectoryDataset dataset_from_json(const std::string& text);
void save_dataset(const TrajectoryDataset& ds, const std::string& path);
TrajectoryDataset load_dataset(const std::string& path);

// model document: {kind, scheme, h, n, kernel, c, normalisation_point,
// centers, coefficients, diagnostics}
std::string model_to_json(const KernelModel& model);
KernelModel model_from_json(const std::string& text);
void save_model(const KernelModel& model, const std::string& path);
KernelModel load_model(const std::string& path);

// flow-map baseline document: {kind:"gpflow", n, h, kernel, jitter,
// log_marginal, inputs, weights}
std::string gpflow_to_json(const GpFlowModel& model);
GpFlowModel gpflow_from_json(const std::string& text);
void save_gpflow(const GpFlowModel& model, const std::string& path);
GpFlowModel load_gpflow(const std::string& path);

/// Reads just the "kind" field of a model document.
std::string model_document_kind(const std::string& path);

/// Trajectory CSV: header t,q1..qn[,qd1..qdn,p1..pn], 17 significant digits.
void write_trajectory_csv(const std::string& path, const std::vector<Vec>& positions, double h,
                          const std::vector<Vec>* velocities = nullptr,
                          const std::vector<Vec>* momenta = nullptr);

struct TrajectoryCsv {
  std::vector<Vec> positions;
  std::vector<Vec> velocities;  // empty when the file has no qd columns
  std::vector<Vec> momenta;     // empty when the file has no p columns
  double h = 0.0;               // inferred from the t column (0 for one row)
};

TrajectoryCsv read_trajectory_csv(const std::string& path);

/// Energy trace CSV with header t,H.
void write_energy_trace_csv(const std::string& path, const EnergyTrace& trace);

/// Grid CSV: first row x coordinates, first column y coordinates.
void write_contour_csv(const std::string& path, const ContourGrid& grid);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace lsi
