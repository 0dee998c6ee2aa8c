// Writes the synthetic optical tables shipped in data/.
//
//   gen_sample_data <output-dir>
//
// Au: Drude (9 eV, 0.035 eV) plus five Lorentz interband terms.
// Fe: Drude (3.54 eV, 0.019 eV) plus three Lorentz interband terms.
// Fe eps_xy: Hall-like intraband term plus one interband line, 0.1-6 eV.
// These are physically shaped stand-ins, not measured data.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

namespace {

using cplx = std::complex<double>;

struct Lorentz {
  double w0;
  double gamma;
  double strength;  // eV^2
};

cplx drude(double wp, double gamma, double x) { return -wp * wp / (x * cplx(x, gamma)); }

cplx lorentz(const Lorentz& l, double x) {
  return l.strength / cplx(l.w0 * l.w0 - x * x, -l.gamma * x);
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  const int n = static_cast<int>(std::round(std::log10(hi / lo) * per_decade));
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
  return g;
}

void write(const std::filesystem::path& path, const std::string& comment,
           const std::vector<double>& grid, const std::function<cplx(double)>& eps) {
  std::ofstream out(path);
  out << "# " << comment << "\n";
  out << "energy_ev,eps_real,eps_imag\n";
  char line[128];
  for (double x : grid) {
    const cplx e = eps(x);
    std::snprintf(line, sizeof line, "%.9e,%.9e,%.9e\n", x, e.real(), e.imag());
    out << line;
  }
  std::cout << "wrote " << path.string() << " (" << grid.size() << " rows)\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_sample_data <output-dir>\n";
    return 1;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);

  const double au_wp = 9.03;
  const std::vector<Lorentz> au_lines = {
      {0.415, 0.241, 0.024 * au_wp * au_wp}, {0.830, 0.345, 0.010 * au_wp * au_wp},
      {2.969, 0.870, 0.071 * au_wp * au_wp}, {4.304, 2.494, 0.601 * au_wp * au_wp},
      {13.32, 2.214, 4.384 * au_wp * au_wp}};
  write(dir / "au_eps_xx.csv", "synthetic Au permittivity: Drude (9, 0.035) eV + Lorentz interband",
        log_grid(0.1, 1e4, 40), [&](double x) {
          cplx e = 1.0 + drude(9.0, 0.035, x);
          for (const auto& l : au_lines) e += lorentz(l, x);
          return e;
        });

  const std::vector<Lorentz> fe_lines = {{1.5, 2.0, 60.0}, {4.0, 4.0, 80.0}, {12.0, 10.0, 120.0}};
  write(dir / "fe_eps_xx.csv", "synthetic Fe permittivity: Drude (3.54, 0.019) eV + Lorentz interband",
        log_grid(1e-3, 1e4, 40), [&](double x) {
          cplx e = 1.0 + drude(3.54, 0.019, x);
          for (const auto& l : fe_lines) e += lorentz(l, x);
          return e;
        });

  write(dir / "fe_eps_xy.csv", "synthetic Fe off-diagonal permittivity, 0.1-6 eV",
        log_grid(0.1, 6.0, 40), [&](double x) {
          return drude(std::sqrt(0.8), 0.1, x) + lorentz({1.8, 2.0, 8.0}, x);
        });
  return 0;
}
