#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace casimag {

/// Drude metal: plasma frequency and relaxation rate, both as hbar*omega in eV.
struct DrudeParams {
  double plasma_frequency;
  double relaxation_rate;

  void validate() const;
};

/// Two-oscillator insulator model with infrared and ultraviolet absorption
/// lines (strengths dimensionless, line positions in eV).
struct TwoOscillatorParams {
  double c_ir;
  double c_uv;
  double w_ir;
  double w_uv;

  void validate() const;
};

enum class TableKind { diagonal, off_diagonal };

struct OpticalRow {
  double energy_ev;
  double eps_real;
  double eps_imag;
};

/// Real-frequency optical constants, ascending in photon energy.
class OpticalDataTable {
 public:
  /// Throws DataError naming the first offending row.
  OpticalDataTable(std::vector<OpticalRow> rows, TableKind kind);

  /// Reads `energy_ev,eps_real,eps_imag` CSV. Lines starting with '#' are skipped.
  static OpticalDataTable read_csv(const std::string& path, TableKind kind);
  static OpticalDataTable read_csv(std::istream& in, TableKind kind,
                                   const std::string& source_name = "<stream>");

  /// Row-level problems without throwing; empty when the table is valid.
  static std::vector<std::string> check(const std::vector<OpticalRow>& rows, TableKind kind);

  const std::vector<OpticalRow>& rows() const { return rows_; }
  TableKind kind() const { return kind_; }
  double min_energy() const { return rows_.front().energy_ev; }
  double max_energy() const { return rows_.back().energy_ev; }

  /// Linear interpolation of the absorptive column; zero outside the table.
  double loss(double energy_ev) const;

 private:
  std::vector<OpticalRow> rows_;
  TableKind kind_;
};

enum class Provenance { constant, drude, two_oscillator, kramers_kronig_table, composite, tabulated };

const char* to_string(Provenance p);

/// A response function on the imaginary frequency axis, eps(i w) for w in eV.
/// Immutable and cheap to copy; evaluation is thread-safe.
class DielectricModel {
 public:
  using Evaluator = std::function<double(double)>;

  DielectricModel(Evaluator eval, Provenance provenance, TableKind kind, std::string label);

  double operator()(double w_ev) const { return (*eval_)(w_ev); }

  Provenance provenance() const { return provenance_; }
  TableKind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  /// Construction-time warnings (e.g. a poor Drude splice). Never fatal.
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }
  DielectricModel with_diagnostic(std::string message) const;

  /// Returns a spline interpolant of this model on a log-spaced grid, for use
  /// inside integration loops. Diagonal responses are interpolated as
  /// log(eps - 1) against log w; off-diagonal ones as eps against log w.
  /// Outside the grid the values continue as power laws.
  DielectricModel tabulated(double w_min = 1e-7, double w_max = 1e5, int per_decade = 48) const;

 private:
  std::shared_ptr<const Evaluator> eval_;
  Provenance provenance_;
  TableKind kind_;
  std::string label_;
  std::vector<std::string> diagnostics_;
};

DielectricModel constant_model(double value, std::string label = "constant");

double drude_epsilon(const DrudeParams& p, double w_ev);
double two_oscillator_epsilon(const TwoOscillatorParams& p, double w_ev);

/// Imaginary part of the real-frequency Drude permittivity.
double drude_loss(const DrudeParams& p, double x_ev);

/// 1 + (2/pi) * int x eps''(x) / (x^2 + w^2) dx over the tabulated range,
/// with eps'' piecewise linear between rows (integrated in closed form).
double kk_diagonal(const OpticalDataTable& table, double w_ev);

/// Same dispersion kernel applied to the imaginary column of eps_xy, with
/// eps_xy = 0 outside the tabulated range.
double kk_offdiagonal(const OpticalDataTable& table, double w_ev);

/// (2/pi) * int_0^x_max x * drude_loss(x) / (x^2 + w^2) dx in closed form.
double drude_kk_below(const DrudeParams& p, double x_max, double w_ev);

DielectricModel drude_model(const DrudeParams& p, std::string label = "drude");
DielectricModel two_oscillator_model(const TwoOscillatorParams& p,
                                     std::string label = "two-oscillator");
DielectricModel kk_diagonal_model(OpticalDataTable table, std::string label = "kk-diagonal");
DielectricModel kk_offdiagonal_model(OpticalDataTable table, std::string label = "kk-offdiagonal");

/// Tabulated loss inside the table range, Drude loss below the lowest row.
/// A >50% mismatch between the two at the splice is recorded as a diagnostic.
DielectricModel composite_metal_model(OpticalDataTable table, const DrudeParams& drude,
                                      std::string label = "composite");

/// Checks eps(i w) >= 1 and non-increasing on a log grid. Returns one
/// message per violation (empty when the model passes).
std::vector<std::string> check_model_invariants(const DielectricModel& model, double w_min = 1e-4,
                                                double w_max = 1e4, int points = 100);

}  // namespace casimag
