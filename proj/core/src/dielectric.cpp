#include "casimag/dielectric.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

#include "casimag/errors.hpp"
#include "casimag/units.hpp"

namespace casimag {

namespace {

constexpr double two_over_pi = 2.0 / units::pi;

void require_positive_frequency(double w_ev, const char* what) {
  if (!(w_ev > 0.0)) {
    throw DomainError(std::string(what) + ": frequency must be positive, got " +
                      std::to_string(w_ev));
  }
}

// r - atan(r), accurate for small r.
double r_minus_atan(double r) {
  if (std::abs(r) < 1e-2) {
    const double r2 = r * r;
    return r * r2 * (1.0 / 3.0 - r2 * (1.0 / 5.0 - r2 * (1.0 / 7.0 - r2 / 9.0)));
  }
  return r - std::atan(r);
}

// int_{x0}^{x1} (a x + b x^2) / (x^2 + w^2) dx in closed form.
double segment_kernel(double x0, double x1, double a, double b, double w) {
  const double w2 = w * w;
  const double log_part = 0.5 * std::log1p((x1 * x1 - x0 * x0) / (x0 * x0 + w2));
  // int s^2/(s^2+w^2) ds = w * (r - atan r) evaluated between the ends.
  const double quad_part = w * (r_minus_atan(x1 / w) - r_minus_atan(x0 / w));
  return a * log_part + b * quad_part;
}

// (2/pi) * int x L(x)/(x^2+w^2) dx for piecewise-linear L over the rows.
double kk_table_integral(const OpticalDataTable& table, double w) {
  const auto& rows = table.rows();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double x0 = rows[i].energy_ev;
    const double x1 = rows[i + 1].energy_ev;
    const double l0 = rows[i].eps_imag;
    const double l1 = rows[i + 1].eps_imag;
    if (l0 == 0.0 && l1 == 0.0) continue;
    const double slope = (l1 - l0) / (x1 - x0);
    const double intercept = l0 - slope * x0;
    sum += segment_kernel(x0, x1, intercept, slope, w);
  }
  return two_over_pi * sum;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  return fields;
}

double parse_number(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw DataError(where + ": not a number: '" + text + "'");
  }
  if (used != text.size()) throw DataError(where + ": trailing characters in '" + text + "'");
  return v;
}

}  // namespace

void DrudeParams::validate() const {
  if (!(plasma_frequency > 0.0)) throw DomainError("Drude plasma frequency must be > 0");
  if (!(relaxation_rate > 0.0)) throw DomainError("Drude relaxation rate must be > 0");
}

void TwoOscillatorParams::validate() const {
  if (!(c_ir > 0.0 && c_uv > 0.0)) {
    throw DomainError("two-oscillator strengths c_ir, c_uv must be > 0");
  }
  if (!(w_ir > 0.0 && w_uv > 0.0)) {
    throw DomainError("two-oscillator frequencies w_ir, w_uv must be > 0");
  }
  if (!(w_ir < w_uv)) {
    throw DomainError("two-oscillator invariant violated: w_ir (" + std::to_string(w_ir) +
                      " eV) must be below w_uv (" + std::to_string(w_uv) + " eV)");
  }
}

// ---------------------------------------------------------------------------
// OpticalDataTable

std::vector<std::string> OpticalDataTable::check(const std::vector<OpticalRow>& rows,
                                                 TableKind kind) {
  std::vector<std::string> problems;
  if (rows.empty()) {
    problems.emplace_back("optical table is empty");
    return problems;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string where = "row " + std::to_string(i + 1);
    if (!std::isfinite(r.energy_ev) || !std::isfinite(r.eps_real) || !std::isfinite(r.eps_imag)) {
      problems.push_back(where + ": non-finite value");
      continue;
    }
    if (!(r.energy_ev > 0.0)) problems.push_back(where + ": photon energy must be positive");
    if (i > 0 && !(r.energy_ev > rows[i - 1].energy_ev)) {
      problems.push_back(where + ": energy " + std::to_string(r.energy_ev) +
                         " eV not strictly above previous row (" +
                         std::to_string(rows[i - 1].energy_ev) + " eV)");
    }
    if (kind == TableKind::diagonal && r.eps_imag < 0.0) {
      problems.push_back(where + ": negative eps_imag in a diagonal table");
    }
  }
  return problems;
}

OpticalDataTable::OpticalDataTable(std::vector<OpticalRow> rows, TableKind kind)
    : rows_(std::move(rows)), kind_(kind) {
  const auto problems = check(rows_, kind_);
  if (!problems.empty()) throw DataError(problems.front());
}

OpticalDataTable OpticalDataTable::read_csv(const std::string& path, TableKind kind) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open optical data file '" + path + "'");
  return read_csv(in, kind, path);
}

OpticalDataTable OpticalDataTable::read_csv(std::istream& in, TableKind kind,
                                            const std::string& source_name) {
  std::vector<OpticalRow> rows;
  std::string line;
  bool header_seen = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    const auto fields = split_csv_line(line);
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 3 || fields[0] != "energy_ev" || fields[1] != "eps_real" ||
          fields[2] != "eps_imag") {
        throw DataError(where + ": expected header 'energy_ev,eps_real,eps_imag'");
      }
      continue;
    }
    if (fields.size() != 3) {
      throw DataError(where + ": expected 3 columns, found " + std::to_string(fields.size()));
    }
    rows.push_back({parse_number(fields[0], where), parse_number(fields[1], where),
                    parse_number(fields[2], where)});
  }
  if (!header_seen) throw DataError(source_name + ": missing header");
  auto problems = check(rows, kind);
  if (!problems.empty()) throw DataError(source_name + ": " + problems.front());
  return OpticalDataTable(std::move(rows), kind);
}

double OpticalDataTable::loss(double energy_ev) const {
  if (energy_ev < rows_.front().energy_ev || energy_ev > rows_.back().energy_ev) return 0.0;
  auto it = std::upper_bound(rows_.begin(), rows_.end(), energy_ev,
                             [](double e, const OpticalRow& r) { return e < r.energy_ev; });
  if (it == rows_.end()) return rows_.back().eps_imag;
  if (it == rows_.begin()) return rows_.front().eps_imag;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double f = (energy_ev - lo.energy_ev) / (hi.energy_ev - lo.energy_ev);
  return lo.eps_imag + f * (hi.eps_imag - lo.eps_imag);
}

// ---------------------------------------------------------------------------
// DielectricModel

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::constant: return "constant";
    case Provenance::drude: return "drude";
    case Provenance::two_oscillator: return "two-oscillator";
    case Provenance::kramers_kronig_table: return "kramers-kronig-table";
    case Provenance::composite: return "composite";
    case Provenance::tabulated: return "tabulated";
  }
  return "unknown";
}

DielectricModel::DielectricModel(Evaluator eval, Provenance provenance, TableKind kind,
                                 std::string label)
    : eval_(std::make_shared<const Evaluator>(std::move(eval))),
      provenance_(provenance),
      kind_(kind),
      label_(std::move(label)) {}

DielectricModel DielectricModel::with_diagnostic(std::string message) const {
  DielectricModel copy = *this;
  copy.diagnostics_.push_back(std::move(message));
  return copy;
}

DielectricModel DielectricModel::tabulated(double w_min, double w_max, int per_decade) const {
  const double log_min = std::log(w_min);
  const double log_max = std::log(w_max);
  const int n = static_cast<int>(std::ceil(per_decade * std::log10(w_max / w_min))) + 1;
  const double h = (log_max - log_min) / (n - 1);

  std::vector<double> values(n);
  bool log_scale = kind_ == TableKind::diagonal;
  for (int i = 0; i < n; ++i) {
    values[i] = (*this)(std::exp(log_min + i * h));
    if (log_scale && !(values[i] > 1.0)) log_scale = false;
  }

  using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
  Evaluator eval;
  if (log_scale) {
    for (auto& v : values) v = std::log(v - 1.0);
    const double slope_lo = (values[1] - values[0]) / h;
    const double slope_hi = (values[n - 1] - values[n - 2]) / h;
    auto spline = std::make_shared<Spline>(values.data(), values.size(), log_min, h);
    const double v_lo = values.front();
    const double v_hi = values.back();
    eval = [spline, log_min, log_max, slope_lo, slope_hi, v_lo, v_hi](double w) {
      const double lw = std::log(w);
      if (lw <= log_min) return 1.0 + std::exp(v_lo + slope_lo * (lw - log_min));
      if (lw >= log_max) return 1.0 + std::exp(v_hi + slope_hi * (lw - log_max));
      return 1.0 + std::exp((*spline)(lw));
    };
  } else {
    auto spline = std::make_shared<Spline>(values.data(), values.size(), log_min, h);
    const double v_lo = values.front();
    const double v_hi = values.back();
    const bool diagonal = kind_ == TableKind::diagonal;
    eval = [spline, log_min, log_max, v_lo, v_hi, w_max, diagonal](double w) {
      const double lw = std::log(w);
      if (lw <= log_min) return v_lo;
      if (lw >= log_max) {
        const double decay = (w_max / w) * (w_max / w);
        return diagonal ? 1.0 + (v_hi - 1.0) * decay : v_hi * decay;
      }
      return (*spline)(lw);
    };
  }
  DielectricModel out(std::move(eval), Provenance::tabulated, kind_, label_);
  out.diagnostics_ = diagnostics_;
  return out;
}

DielectricModel constant_model(double value, std::string label) {
  return DielectricModel([value](double) { return value; }, Provenance::constant,
                         TableKind::diagonal, std::move(label));
}

// ---------------------------------------------------------------------------
// Analytic models

double drude_epsilon(const DrudeParams& p, double w_ev) {
  require_positive_frequency(w_ev, "drude_epsilon");
  return 1.0 + p.plasma_frequency * p.plasma_frequency / (w_ev * (w_ev + p.relaxation_rate));
}

double drude_loss(const DrudeParams& p, double x_ev) {
  const double g = p.relaxation_rate;
  return p.plasma_frequency * p.plasma_frequency * g / (x_ev * (x_ev * x_ev + g * g));
}

double two_oscillator_epsilon(const TwoOscillatorParams& p, double w_ev) {
  if (w_ev < 0.0) throw DomainError("two_oscillator_epsilon: frequency must be >= 0");
  const double ir = w_ev / p.w_ir;
  const double uv = w_ev / p.w_uv;
  return 1.0 + p.c_ir / (1.0 + ir * ir) + p.c_uv / (1.0 + uv * uv);
}

DielectricModel drude_model(const DrudeParams& p, std::string label) {
  p.validate();
  return DielectricModel([p](double w) { return drude_epsilon(p, w); }, Provenance::drude,
                         TableKind::diagonal, std::move(label));
}

DielectricModel two_oscillator_model(const TwoOscillatorParams& p, std::string label) {
  p.validate();
  return DielectricModel([p](double w) { return two_oscillator_epsilon(p, w); },
                         Provenance::two_oscillator, TableKind::diagonal, std::move(label));
}

// ---------------------------------------------------------------------------
// Kramers-Kronig on the imaginary axis

double kk_diagonal(const OpticalDataTable& table, double w_ev) {
  if (table.kind() != TableKind::diagonal) {
    throw DomainError("kk_diagonal: table holds off-diagonal data");
  }
  require_positive_frequency(w_ev, "kk_diagonal");
  return 1.0 + kk_table_integral(table, w_ev);
}

double kk_offdiagonal(const OpticalDataTable& table, double w_ev) {
  if (table.kind() != TableKind::off_diagonal) {
    throw DomainError("kk_offdiagonal: table holds diagonal data");
  }
  require_positive_frequency(w_ev, "kk_offdiagonal");
  return kk_table_integral(table, w_ev);
}

double drude_kk_below(const DrudeParams& p, double x_max, double w_ev) {
  require_positive_frequency(w_ev, "drude_kk_below");
  const double g = p.relaxation_rate;
  const double wp2 = p.plasma_frequency * p.plasma_frequency;
  // int_0^xm dx / ((x^2+g^2)(x^2+w^2)) = (h(g) - h(w)) / (w^2 - g^2), h(a) = atan(xm/a)/a
  auto h = [x_max](double a) { return std::atan(x_max / a) / a; };
  double integral;
  if (std::abs(w_ev - g) < 1e-6 * g) {
    const double a = 0.5 * (w_ev + g);
    integral = (x_max / (a * (a * a + x_max * x_max)) + std::atan(x_max / a) / (a * a)) / (2 * a);
  } else {
    integral = (h(g) - h(w_ev)) / (w_ev * w_ev - g * g);
  }
  return two_over_pi * wp2 * g * integral;
}

DielectricModel kk_diagonal_model(OpticalDataTable table, std::string label) {
  auto shared = std::make_shared<const OpticalDataTable>(std::move(table));
  if (shared->kind() != TableKind::diagonal) {
    throw DomainError("kk_diagonal_model: table holds off-diagonal data");
  }
  return DielectricModel([shared](double w) { return kk_diagonal(*shared, w); },
                         Provenance::kramers_kronig_table, TableKind::diagonal, std::move(label));
}

DielectricModel kk_offdiagonal_model(OpticalDataTable table, std::string label) {
  auto shared = std::make_shared<const OpticalDataTable>(std::move(table));
  if (shared->kind() != TableKind::off_diagonal) {
    throw DomainError("kk_offdiagonal_model: table holds diagonal data");
  }
  return DielectricModel([shared](double w) { return kk_offdiagonal(*shared, w); },
                         Provenance::kramers_kronig_table, TableKind::off_diagonal,
                         std::move(label));
}

DielectricModel composite_metal_model(OpticalDataTable table, const DrudeParams& drude,
                                      std::string label) {
  drude.validate();
  if (table.kind() != TableKind::diagonal) {
    throw DomainError("composite_metal_model: table holds off-diagonal data");
  }
  auto shared = std::make_shared<const OpticalDataTable>(std::move(table));
  const double splice = shared->min_energy();
  DielectricModel model(
      [shared, drude, splice](double w) {
        return kk_diagonal(*shared, w) + drude_kk_below(drude, splice, w);
      },
      Provenance::composite, TableKind::diagonal, std::move(label));

  const double drude_at_splice = drude_loss(drude, splice);
  const double table_at_splice = shared->rows().front().eps_imag;
  const double scale = std::max(std::abs(drude_at_splice), std::abs(table_at_splice));
  if (scale > 0.0 && std::abs(drude_at_splice - table_at_splice) > 0.5 * scale) {
    model = model.with_diagnostic(
        "Drude loss (" + std::to_string(drude_at_splice) + ") and tabulated loss (" +
        std::to_string(table_at_splice) + ") differ by more than 50% at the splice energy " +
        std::to_string(splice) + " eV");
  }
  return model;
}

std::vector<std::string> check_model_invariants(const DielectricModel& model, double w_min,
                                                double w_max, int points) {
  std::vector<std::string> problems;
  if (model.kind() != TableKind::diagonal) return problems;
  double previous = 0.0;
  for (int i = 0; i < points; ++i) {
    const double w = w_min * std::pow(w_max / w_min, static_cast<double>(i) / (points - 1));
    const double eps = model(w);
    if (!(eps >= 1.0)) {
      problems.push_back(model.label() + ": eps(i w) = " + std::to_string(eps) + " < 1 at w = " +
                         std::to_string(w) + " eV");
    }
    if (i > 0 && eps > previous * (1.0 + 1e-12)) {
      problems.push_back(model.label() + ": eps(i w) increases at w = " + std::to_string(w) +
                         " eV");
    }
    previous = eps;
  }
  return problems;
}

}  // namespace casimag
