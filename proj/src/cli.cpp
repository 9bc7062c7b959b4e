#include "superlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "superlab/energy_analysis.hpp"
#include "superlab/numerics.hpp"
#include "superlab/oscillator.hpp"
#include "superlab/plot.hpp"
#include "superlab/rotor.hpp"
#include "superlab/time_evolution.hpp"
#include "superlab/weak_value.hpp"

namespace superlab::cli {

namespace {

namespace fs = std::filesystem;
using cd = std::complex<double>;
using oscillator::FrequencyScaling;
using oscillator::OscillatorConfig;

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool flag_given(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Folds `--config FILE` into the argument list: each `key = value` line becomes
// `--key value` unless the flag is already on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (auto it = args.begin(); it != args.end(); ++it) {
    if (*it == "--config") {
      if (std::next(it) == args.end()) throw usage_error("--config requires a file name");
      path = *std::next(it);
      args.erase(it, it + 2);
      break;
    }
    if (it->rfind("--config=", 0) == 0) {
      path = it->substr(9);
      args.erase(it);
      break;
    }
  }
  if (path.empty()) return args;
  if (args.empty()) throw usage_error("no command given");

  std::ifstream in(path);
  if (!in) throw usage_error("cannot read config file '" + path + "'");
  std::vector<std::string> injected;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? "" : trim(line.substr(0, eq));
    if (key.empty()) {
      throw usage_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    if (flag_given(args, key)) continue;
    injected.push_back("--" + key);
    injected.push_back(trim(line.substr(eq + 1)));
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

FrequencyScaling parse_scaling(const std::string& s) {
  if (s == "inverse_N") return FrequencyScaling::inverse_N;
  if (s == "inverse_N2") return FrequencyScaling::inverse_N2;
  throw usage_error("scaling must be inverse_N or inverse_N2 (got '" + s + "')");
}

const char* scaling_name(FrequencyScaling s) {
  return s == FrequencyScaling::inverse_N ? "inverse_N" : "inverse_N2";
}

int nodes_per_unit(const Params& p) {
  if (p.quad_order) {
    if (*p.quad_order < 1) throw usage_error("quad-order must be positive");
    return *p.quad_order;
  }
  if (const char* env = std::getenv("SUPERLAB_QUAD_ORDER")) {
    const std::string s = env;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) {
      throw usage_error("SUPERLAB_QUAD_ORDER must be a positive integer (got '" + s + "')");
    }
    return v;
  }
  return kDefaultNodesPerUnit;
}

OscillatorConfig make_config(const Params& p, int default_N, FrequencyScaling default_scaling) {
  OscillatorConfig c;
  c.N = p.N.value_or(default_N);
  c.g = p.g.value_or(0.5);
  c.scaling = p.scaling ? parse_scaling(*p.scaling) : default_scaling;
  c.scale = p.scale;
  c.validate();
  return c;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw usage_error("points must be >= 2");
  if (!(a < b)) throw usage_error("grid needs min < max");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> column(std::size_t n) { return std::vector<double>(n); }

// Figures ------------------------------------------------------------------

struct FigureOutput {
  plot::Table table;
  std::vector<std::pair<std::string, plot::Figure>> panels;  // file suffix, figure
  std::vector<std::string> notes;                            // sidecar lines
};

std::string num(double v) { return plot::format_number(v, 12); }

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s;
}

void check_ladder(const std::vector<int>& ladder) {
  if (ladder.empty()) throw usage_error("N-ladder must not be empty");
  for (int N : ladder) {
    if (N < 1) throw usage_error("N-ladder entries must be >= 1");
  }
}

FigureOutput figure1(const Params& p) {
  const std::vector<int> ladder = p.N_ladder.empty() ? std::vector<int>{2, 5, 10, 20, 50} : p.N_ladder;
  check_ladder(ladder);
  const auto xs = linspace(p.x_min.value_or(-8.0), p.x_max.value_or(8.0), p.points.value_or(801));
  FigureOutput out;
  out.table.add_column("x", xs);
  plot::Figure fig{"Scaled local energy, omega_N = omega_0/N", "x", "Re E(x) / E_max", {}};
  out.notes.push_back("N_ladder = " + join(ladder));
  for (int N : ladder) {
    Params q = p;
    q.N = N;
    const OscillatorConfig c = make_config(q, N, FrequencyScaling::inverse_N);
    const ObservableProfile prof = oscillator::local_energy_profile(c, to_eigen(xs));
    auto col = column(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      col[i] = prof.values[static_cast<Eigen::Index>(i)].real() / c.max_energy();
    }
    out.table.add_column("ReE_over_Emax_N" + std::to_string(N), col);
    fig.series.push_back({"N = " + std::to_string(N), xs, col});

    std::string regions;
    for (const auto& [lo, hi] : detect_super_regions(prof)) regions += " [" + num(lo) + ", " + num(hi) + "]";
    out.notes.push_back("N = " + std::to_string(N) + ": E_max = " + num(c.max_energy()) +
                        ", super regions:" + (regions.empty() ? " none" : regions));
  }
  fig.series.push_back({"E_max", {xs.front(), xs.back()}, {1.0, 1.0}});
  out.panels.push_back({"", fig});
  return out;
}

FigureOutput figure2(const Params& p) {
  const std::vector<int> ladder = p.N_ladder.empty() ? std::vector<int>{2, 5, 10, 20, 50} : p.N_ladder;
  check_ladder(ladder);
  const auto xs = linspace(p.x_min.value_or(-10.0), p.x_max.value_or(10.0), p.points.value_or(801));
  FigureOutput out;
  out.table.add_column("x", xs);
  plot::Figure re{"Re h_N(x) / h_N(0), omega_N = omega_0/N^2", "x", "Re", {}};
  plot::Figure im{"Im h_N(x) / h_N(0), omega_N = omega_0/N^2", "x", "Im", {}};
  out.notes.push_back("N_ladder = " + join(ladder));
  OscillatorConfig last;
  for (int N : ladder) {
    Params q = p;
    q.N = N;
    const OscillatorConfig c = make_config(q, N, FrequencyScaling::inverse_N2);
    last = c;
    const LogComplex origin = oscillator::closed_form(c, 0.0);
    auto cr = column(xs.size()), ci = column(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const cd h = ratio(oscillator::closed_form(c, xs[i]), origin);
      cr[i] = h.real();
      ci[i] = h.imag();
    }
    out.table.add_column("Re_N" + std::to_string(N), cr);
    out.table.add_column("Im_N" + std::to_string(N), ci);
    re.series.push_back({"N = " + std::to_string(N), xs, cr});
    im.series.push_back({"N = " + std::to_string(N), xs, ci});
    if (c.scaling == FrequencyScaling::inverse_N2) {
      out.notes.push_back("N = " + std::to_string(N) + ": sup |h_N(x)/h_N(0) - exp(-s x^2/(2N^2) + i k0 x)| = " +
                          num(oscillator::limit_deviation(c, to_eigen(xs))));
    }
  }
  auto lr = column(xs.size()), li = column(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const cd v = oscillator::limit_plane_wave(last, xs[i]);
    lr[i] = v.real();
    li[i] = v.imag();
  }
  out.table.add_column("Re_limit", lr);
  out.table.add_column("Im_limit", li);
  re.series.push_back({"limit", xs, lr});
  im.series.push_back({"limit", xs, li});
  out.notes.push_back("k0 = " + num(oscillator::limit_wavenumber(last)));
  out.panels.push_back({"_re", re});
  out.panels.push_back({"_im", im});
  return out;
}

FigureOutput figure3(const Params& p) {
  const std::vector<double> gs = p.g_values.empty() ? std::vector<double>{0.3, 0.5, 1.0} : p.g_values;
  const int N_max = p.N_max.value_or(200);
  if (N_max < 1) throw usage_error("N-max must be >= 1");
  FigureOutput out;
  std::vector<double> cn, cg, ce, cb;
  plot::Figure fig{"Spectral energy, omega_N = omega_0/N^2", "N", "E_N / (hbar omega_0)", {}};
  plot::Series bound{"(N + 1/2) omega_N", {}, {}};
  for (double g : gs) {
    plot::Series s{"g = " + num(g), {}, {}};
    for (int N = 1; N <= N_max; ++N) {
      Params q = p;
      q.N = N;
      q.g = g;
      const OscillatorConfig c = make_config(q, N, FrequencyScaling::inverse_N2);
      const double e = energy::spectral_energy(oscillator::build_sequence_state(c));
      const double b = c.max_energy();
      if (!(e <= b * (1.0 + 1e-9))) {
        throw numerical_error("fig 3: spectral energy " + num(e) + " exceeds the bound " + num(b) +
                              " at N=" + std::to_string(N) + ", g=" + num(g));
      }
      cn.push_back(N);
      cg.push_back(g);
      ce.push_back(e);
      cb.push_back(b);
      s.x.push_back(N);
      s.y.push_back(e);
      if (g == gs.front()) {
        bound.x.push_back(N);
        bound.y.push_back(b);
      }
    }
    fig.series.push_back(std::move(s));
  }
  fig.series.push_back(std::move(bound));
  out.table.add_column("N", cn);
  out.table.add_column("g", cg);
  out.table.add_column("E_N_over_hw0", ce);
  out.table.add_column("bound", cb);
  out.notes.push_back("g_values = " + join(gs));
  out.notes.push_back("N_max = " + std::to_string(N_max));
  out.notes.push_back("bound check: every row satisfies E_N <= bound");
  out.panels.push_back({"", fig});
  return out;
}

FigureOutput figure4(const Params& p) {
  const std::vector<double> gs = p.g_values.empty() ? std::vector<double>{0.3, 0.5, 1.0} : p.g_values;
  const int N_max = p.N_max.value_or(500);
  const double L = p.L.value_or(2.0);
  if (N_max < 1) throw usage_error("N-max must be >= 1");
  if (!(L > 0.0)) throw usage_error("L must be positive");
  for (double g : gs) {
    if (!(g > 0.0)) throw usage_error("g-values must be positive");
  }
  const FrequencyScaling scaling = p.scaling ? parse_scaling(*p.scaling) : FrequencyScaling::inverse_N2;
  const auto reports = energy::mimicry_sweep(gs, N_max, L, scaling, p.scale, nodes_per_unit(p));

  FigureOutput out;
  std::vector<double> cn, cg, ce, ca, cp, cr;
  plot::Figure fig{"Windowed energy on (-L, L)", "N", "E_mim,N / (hbar omega_0)", {}};
  double worst_change = 0.0, worst_imag = 0.0;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    plot::Series s{"g = " + num(gs[k]), {}, {}};
    int outside = 0;
    for (int i = 0; i < N_max; ++i) {
      const auto& r = reports[k * static_cast<std::size_t>(N_max) + static_cast<std::size_t>(i)];
      const double asymptote = 1.0 / (2.0 * r.g * r.g);
      cn.push_back(r.N);
      cg.push_back(r.g);
      ce.push_back(r.windowed_energy);
      ca.push_back(asymptote);
      cp.push_back(r.log_postselection_prob);
      cr.push_back(r.mimicry_regime ? 1.0 : 0.0);
      s.x.push_back(r.N);
      s.y.push_back(r.windowed_energy);
      worst_change = std::max(worst_change, r.quadrature_change);
      worst_imag = std::max(worst_imag, r.imaginary_residue);
      if (!r.mimicry_regime) ++outside;
    }
    fig.series.push_back(std::move(s));
    fig.series.push_back({"1/(2g^2), g = " + num(gs[k]), {1.0, static_cast<double>(N_max)},
                          {1.0 / (2.0 * gs[k] * gs[k]), 1.0 / (2.0 * gs[k] * gs[k])}});
    out.notes.push_back("g = " + num(gs[k]) + ": " + std::to_string(outside) +
                        " values of N with L > g sqrt(N/s) (outside the mimicry regime)");
  }
  out.table.add_column("N", cn);
  out.table.add_column("g", cg);
  out.table.add_column("E_mim_over_hw0", ce);
  out.table.add_column("asymptote", ca);
  out.table.add_column("log_postselection_prob", cp);
  out.table.add_column("mimicry_regime", cr);
  out.notes.push_back("g_values = " + join(gs));
  out.notes.push_back("N_max = " + std::to_string(N_max));
  out.notes.push_back("L = " + num(L));
  out.notes.push_back("scaling = " + std::string(scaling_name(scaling)));
  out.notes.push_back("nodes_per_unit = " + std::to_string(nodes_per_unit(p)));
  out.notes.push_back("max relative change under order doubling = " + num(worst_change));
  out.notes.push_back("max |Im|/|Re| of the windowed numerator = " + num(worst_imag));
  out.panels.push_back({"", fig});
  return out;
}

FigureOutput figure5(const Params& p) {
  const std::vector<int> ladder =
      p.N_ladder.empty() ? std::vector<int>{10, 50, 100, 300, 1000} : p.N_ladder;
  check_ladder(ladder);
  const auto ts = linspace(p.t_min.value_or(0.0), p.t_max.value_or(2.0), p.points.value_or(401));
  FigureOutput out;
  out.table.add_column("t", ts);
  plot::Figure re{"Re h_N(0, t) / h_N(0, 0)", "omega_0 t", "Re", {}};
  plot::Figure im{"Im h_N(0, t) / h_N(0, 0)", "omega_0 t", "Im", {}};
  out.notes.push_back("N_ladder = " + join(ladder));
  Params q = p;
  q.N = ladder.front();
  const OscillatorConfig first = make_config(q, ladder.front(), FrequencyScaling::inverse_N2);
  if (first.scaling != FrequencyScaling::inverse_N2) throw usage_error("fig 5 requires scaling inverse_N2");
  const double freq = time_evolution::plane_wave_frequency(first);
  auto rr = column(ts.size()), ri = column(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const cd v = std::polar(1.0, -freq * ts[i]);
    rr[i] = v.real();
    ri[i] = v.imag();
  }
  for (int N : ladder) {
    q.N = N;
    const OscillatorConfig c = make_config(q, N, FrequencyScaling::inverse_N2);
    const auto trace = time_evolution::fig5_trace(c, ts);
    auto cr = column(ts.size()), ci = column(ts.size());
    double sup = 0.0;
    std::string window = "nowhere on the grid";
    bool crossed = false;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      cr[i] = trace[i].real();
      ci[i] = trace[i].imag();
      const double dev = std::abs(trace[i] - cd(rr[i], ri[i]));
      if (std::abs(ts[i]) <= 1.0) sup = std::max(sup, dev);
      if (!crossed && dev > 0.05) {
        crossed = true;
        window = "at t = " + num(ts[i]);
      }
    }
    out.table.add_column("Re_N" + std::to_string(N), cr);
    out.table.add_column("Im_N" + std::to_string(N), ci);
    re.series.push_back({"N = " + std::to_string(N), ts, cr});
    im.series.push_back({"N = " + std::to_string(N), ts, ci});
    out.notes.push_back("N = " + std::to_string(N) + ": sup deviation on |t| <= 1 = " + num(sup) +
                        "; deviation first exceeds 0.05 " + window + " (2 N g^2 = " +
                        num(2.0 * N * c.g * c.g) + ")");
  }
  out.table.add_column("Re_reference", rr);
  out.table.add_column("Im_reference", ri);
  re.series.push_back({"exp(-i t/(2g^2))", ts, rr});
  im.series.push_back({"exp(-i t/(2g^2))", ts, ri});
  out.panels.push_back({"_re", re});
  out.panels.push_back({"_im", im});
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

// Computation commands --------------------------------------------------------

int cmd_local_energy(const RunConfig& rc, std::ostream& out) {
  const Params& p = rc.params;
  const OscillatorConfig c = make_config(p, 20, FrequencyScaling::inverse_N);
  const auto xs = linspace(p.x_min.value_or(-8.0), p.x_max.value_or(8.0), p.points.value_or(801));
  const ObservableProfile prof = oscillator::local_energy_profile(c, to_eigen(xs));
  plot::Table t;
  auto re = column(xs.size()), im = column(xs.size()), sup = column(xs.size()), sing = column(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    re[i] = prof.values[k].real();
    im[i] = prof.values[k].imag();
    sup[i] = prof.super_flags[i] ? 1.0 : 0.0;
    sing[i] = prof.singular_flags[i] ? 1.0 : 0.0;
  }
  t.add_column("x", xs);
  t.add_column("Re_E", re);
  t.add_column("Im_E", im);
  t.add_column("super", sup);
  t.add_column("singular", sing);
  plot::write_csv(out, t, rc.precision);
  return kSuccess;
}

int cmd_spectral_energy(const RunConfig& rc, std::ostream& out) {
  const OscillatorConfig c = make_config(rc.params, 10, FrequencyScaling::inverse_N2);
  const double e = energy::spectral_energy(oscillator::build_sequence_state(c));
  out << "N,g,scaling,spectral_energy,bound\n"
      << c.N << ',' << plot::format_number(c.g, rc.precision) << ',' << scaling_name(c.scaling) << ','
      << plot::format_number(e, rc.precision) << ',' << plot::format_number(c.max_energy(), rc.precision) << '\n';
  return kSuccess;
}

int cmd_windowed_energy(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const Params& p = rc.params;
  const OscillatorConfig c = make_config(p, 100, FrequencyScaling::inverse_N2);
  const double L = p.L.value_or(2.0);
  if (!(L > 0.0)) throw usage_error("L must be positive");
  const auto r = energy::windowed_energy(c, L, nodes_per_unit(p));
  if (!r.mimicry_regime) {
    err << "superlab: warning: L = " << plot::format_number(L, 6)
        << " exceeds g sqrt(N hbar/(m omega_0)); outside the mimicry regime\n";
  }
  const int d = rc.precision;
  out << "N,g,L,windowed_energy,spectral_energy,bound,log_postselection_prob,postselection_prob,"
         "imaginary_residue,quadrature_change,tail_bound\n";
  out << r.N << ',' << plot::format_number(r.g, d) << ',' << plot::format_number(L, d) << ','
      << plot::format_number(r.windowed_energy, d) << ',' << plot::format_number(r.spectral_energy, d) << ','
      << plot::format_number(r.bound, d) << ',' << plot::format_number(r.log_postselection_prob, d) << ','
      << plot::format_number(r.postselection_prob, d) << ',' << plot::format_number(r.imaginary_residue, d) << ','
      << plot::format_number(r.quadrature_change, d) << ',' << plot::format_number(r.tail_bound, d) << '\n';
  return kSuccess;
}

int cmd_time_evolve(const RunConfig& rc, std::ostream& out) {
  const Params& p = rc.params;
  const OscillatorConfig c = make_config(p, 50, FrequencyScaling::inverse_N2);
  const auto ts = linspace(p.t_min.value_or(0.0), p.t_max.value_or(2.0), p.points.value_or(201));
  const LogComplex h0 = time_evolution::hN_time(c, p.x, 0.0);
  plot::Table t;
  auto lm = column(ts.size()), ph = column(ts.size()), rr = column(ts.size()), ri = column(ts.size()),
       er = column(ts.size()), ei = column(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const LogComplex h = time_evolution::hN_time(c, p.x, ts[i]);
    const cd e = time_evolution::local_time_energy(c, p.x, ts[i]);
    const cd r = ratio(h, h0);
    lm[i] = h.log_mag();
    ph[i] = h.phase();
    rr[i] = r.real();
    ri[i] = r.imag();
    er[i] = e.real();
    ei[i] = e.imag();
  }
  t.add_column("t", ts);
  t.add_column("log_abs_h", lm);
  t.add_column("phase_h", ph);
  t.add_column("Re_h_over_h0", rr);
  t.add_column("Im_h_over_h0", ri);
  t.add_column("Re_E", er);
  t.add_column("Im_E", ei);
  plot::write_csv(out, t, rc.precision);
  return kSuccess;
}

int cmd_rotor(const RunConfig& rc, std::ostream& out) {
  const Params& p = rc.params;
  rotor::RotorState s;
  s.c = p.c;
  s.mass_length_sq = p.mass_length_sq;
  s.validate();
  const int n = p.points.value_or(181);
  if (n < 2) throw usage_error("points must be >= 2");
  const Eigen::VectorXd grid = rotor::theta_grid(n);
  const ObservableProfile prof = rotor::local_L2_profile(s, grid);
  plot::Table t;
  auto th = column(grid.size()), closed = column(grid.size()), generic = column(grid.size()),
       sup = column(grid.size()), sing = column(grid.size()), pr = column(grid.size()), pi = column(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    th[k] = grid[i];
    closed[k] = rotor::local_L2(s, grid[i]);
    generic[k] = prof.values[i].real();
    sup[k] = prof.super_flags[k] ? 1.0 : 0.0;
    sing[k] = prof.singular_flags[k] ? 1.0 : 0.0;
    const cd ph = rotor::rotor_time_phase(s, grid[i], p.t);
    pr[k] = ph.real();
    pi[k] = ph.imag();
  }
  t.add_column("theta", th);
  t.add_column("local_L2", closed);
  t.add_column("local_L2_generic", generic);
  t.add_column("super", sup);
  t.add_column("singular", sing);
  t.add_column("time_phase_Re", pr);
  t.add_column("time_phase_Im", pi);
  plot::write_csv(out, t, rc.precision);
  return kSuccess;
}

int cmd_check_identity(const RunConfig& rc, std::ostream& out) {
  const Params& p = rc.params;
  if (!p.N) throw usage_error("check-identity requires --N");
  if (*p.N < 0) throw usage_error("N must be >= 0");
  const double tol = p.tol.value_or(1e-9);
  const cd lhs = oscillator::hermite_identity_sum(*p.N, p.a, p.b);
  const cd rhs = oscillator::hermite_identity_rhs(*p.N, p.a, p.b);
  const bool absolute = std::abs(rhs) == 0.0;
  const double error = absolute ? std::abs(lhs) : std::abs(lhs - rhs) / std::abs(rhs);
  const bool pass = error < tol || (absolute && error == 0.0);
  const int d = rc.precision;
  out << "lhs = " << plot::format_number(lhs.real(), d) << " + " << plot::format_number(lhs.imag(), d) << "i\n"
      << "rhs = " << plot::format_number(rhs.real(), d) << " + " << plot::format_number(rhs.imag(), d) << "i\n"
      << (absolute ? "abs_err = " : "rel_err = ") << plot::format_number(error, d) << '\n'
      << "tolerance = " << plot::format_number(tol, d) << '\n'
      << "result = " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kSuccess : kCheckFailed;
}

int cmd_sum_rule(const RunConfig& rc, std::ostream& out) {
  const Params& p = rc.params;
  const int npu = nodes_per_unit(p);
  BandLimitedState state;
  QuadratureRule rule;
  if (p.basis == "oscillator") {
    const OscillatorConfig c = make_config(p, 5, FrequencyScaling::inverse_N);
    const auto seq = oscillator::build_sequence_state(c);
    std::vector<int> levels;
    std::vector<cd> coeffs;
    for (int n = 0; n <= c.N; ++n) {
      levels.push_back(n);
      coeffs.push_back(seq.coeffs[static_cast<std::size_t>(n)].to_complex());
    }
    state = oscillator_state(levels, coeffs, c.mass(), c.omega());
    const double kappa = c.inverse_length();
    const double X = energy::full_line_half_width(c.N) / kappa;
    rule = composite_quadrature_panels(-X, X, panel_count(-X * kappa, X * kappa, npu));
  } else if (p.basis == "plane_wave") {
    state = superoscillation_state(p.N.value_or(20), p.a);
    rule = composite_quadrature(state.domain.first, state.domain.second, npu);
  } else if (p.basis == "legendre") {
    rotor::RotorState s;
    s.c = p.c;
    s.mass_length_sq = p.mass_length_sq;
    s.validate();
    state = rotor::rotor_band_state(s);
    rule = composite_quadrature(state.domain.first, state.domain.second, npu);
  } else {
    throw usage_error("basis must be oscillator, plane_wave or legendre (got '" + p.basis + "')");
  }
  SumRuleResult r = sum_rule_check(state, rule);
  if (p.tol) r.tolerance = *p.tol * std::max(1.0, std::abs(r.rhs));
  const double rel = std::abs(r.lhs - r.rhs) / std::max(1.0, std::abs(r.rhs));
  const int d = rc.precision;
  out << "basis = " << p.basis << '\n'
      << "lhs = " << plot::format_number(r.lhs, d) << '\n'
      << "rhs = " << plot::format_number(r.rhs, d) << '\n'
      << "rel_err = " << plot::format_number(rel, d) << '\n'
      << "tolerance = " << plot::format_number(r.tolerance, d) << '\n'
      << "result = " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return r.passed() ? kSuccess : kCheckFailed;
}

void add_common(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--precision", rc.precision, "Significant digits in text output")->check(CLI::Range(1, 17));
  sub->add_option("--N", rc.params.N, "Sequence index");
  sub->add_option("--g", rc.params.g, "Superoscillation parameter g > 0");
  sub->add_option("--scaling", rc.params.scaling, "inverse_N or inverse_N2");
  sub->add_option("--scale", rc.params.scale, "m omega_0 / hbar");
}

void add_grid(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--x-min", rc.params.x_min, "Grid start");
  sub->add_option("--x-max", rc.params.x_max, "Grid end");
  sub->add_option("--points", rc.params.points, "Grid size");
}

void add_quad(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--quad-order", rc.params.quad_order,
                  "Quadrature nodes per unit of the oscillator coordinate (default SUPERLAB_QUAD_ORDER or 200)");
}

}  // namespace

std::vector<std::string> run_fig(const RunConfig& config, std::ostream& err) {
  (void)err;
  const Params& p = config.params;
  FigureOutput fo;
  switch (p.id) {
    case 1: fo = figure1(p); break;
    case 2: fo = figure2(p); break;
    case 3: fo = figure3(p); break;
    case 4: fo = figure4(p); break;
    case 5: fo = figure5(p); break;
    default: throw usage_error("fig --id must be 1..5 (got " + std::to_string(p.id) + ")");
  }

  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  const std::string stem = "fig" + std::to_string(p.id);
  std::vector<std::string> written;
  if (config.format != OutputFormat::svg) {
    std::ostringstream csv;
    plot::write_csv(csv, fo.table, config.precision);
    write_file(dir / (stem + ".csv"), csv.str());
    written.push_back(stem + ".csv");
  }
  if (config.format != OutputFormat::csv) {
    for (const auto& [suffix, fig] : fo.panels) {
      std::ostringstream svg;
      plot::write_svg(svg, fig);
      write_file(dir / (stem + suffix + ".svg"), svg.str());
      written.push_back(stem + suffix + ".svg");
    }
  }
  std::ostringstream meta;
  meta << "command = fig\n" << "id = " << p.id << '\n' << "precision = " << config.precision << '\n';
  if (p.g) meta << "g = " << num(*p.g) << '\n';
  if (p.scaling) meta << "scaling = " << *p.scaling << '\n';
  meta << "scale = " << num(p.scale) << '\n';
  meta << "columns = ";
  for (std::size_t i = 0; i < fo.table.header.size(); ++i) meta << (i ? "," : "") << fo.table.header[i];
  meta << '\n';
  for (const auto& line : fo.notes) meta << line << '\n';
  write_file(dir / (stem + ".meta.txt"), meta.str());
  written.push_back(stem + ".meta.txt");
  return written;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Local super-observables of band-limited quantum states", "superlab"};
  app.require_subcommand(1);

  std::string format = "csv";
  auto* fig = app.add_subcommand("fig", "Reproduce a figure as CSV and/or SVG");
  fig->add_option("--id", rc.params.id, "Figure number 1-5")->required();
  fig->add_option("--output-dir", rc.output_dir, "Directory for figure files");
  fig->add_option("--format", format, "csv, svg or both")->check(CLI::IsMember({"csv", "svg", "both"}));
  fig->add_option("--N-ladder", rc.params.N_ladder, "Comma-separated N values")->delimiter(',');
  fig->add_option("--g-values", rc.params.g_values, "Comma-separated g values")->delimiter(',');
  fig->add_option("--N-max", rc.params.N_max, "Largest N for figures 3 and 4");
  fig->add_option("--L", rc.params.L, "Window half-width for figure 4");
  fig->add_option("--t-min", rc.params.t_min, "Time grid start");
  fig->add_option("--t-max", rc.params.t_max, "Time grid end");
  add_common(fig, rc);
  add_grid(fig, rc);
  add_quad(fig, rc);

  auto* le = app.add_subcommand("local-energy", "Local energy profile of the oscillator sequence");
  add_common(le, rc);
  add_grid(le, rc);

  auto* se = app.add_subcommand("spectral-energy", "Spectral energy expectation");
  add_common(se, rc);

  auto* we = app.add_subcommand("windowed-energy", "Windowed (postselected) energy");
  add_common(we, rc);
  add_quad(we, rc);
  we->add_option("--L", rc.params.L, "Window half-width");

  auto* te = app.add_subcommand("time-evolve", "h_N(x, t) and the local time energy at fixed x");
  add_common(te, rc);
  te->add_option("--x", rc.params.x, "Position");
  te->add_option("--t-min", rc.params.t_min, "Time grid start");
  te->add_option("--t-max", rc.params.t_max, "Time grid end");
  te->add_option("--points", rc.params.points, "Time grid size");

  auto* ro = app.add_subcommand("rotor", "Local L^2 of |0,0> + c|1,0>");
  ro->add_option("--precision", rc.precision, "Significant digits in text output")->check(CLI::Range(1, 17));
  ro->add_option("--c", rc.params.c, "Mixing amplitude c >= 0");
  ro->add_option("--mass-length-sq", rc.params.mass_length_sq, "m a^2");
  ro->add_option("--points", rc.params.points, "Number of theta samples");
  ro->add_option("--t", rc.params.t, "Time for the approximate phase");

  auto* ci = app.add_subcommand("check-identity", "Brute-force check of the Hermite sum identity");
  ci->add_option("--precision", rc.precision, "Significant digits in text output")->check(CLI::Range(1, 17));
  ci->add_option("--N", rc.params.N, "Order");
  ci->add_option("--a", rc.params.a, "Real argument a");
  ci->add_option("--b", rc.params.b, "Real argument b");
  ci->add_option("--tol", rc.params.tol, "Relative tolerance (absolute when the rhs vanishes)");

  auto* sr = app.add_subcommand("sum-rule", "Weighted local observable against the spectral expectation");
  add_common(sr, rc);
  add_quad(sr, rc);
  sr->add_option("--basis", rc.params.basis, "oscillator, plane_wave or legendre");
  sr->add_option("--a", rc.params.a, "Superoscillation parameter a (plane_wave)");
  sr->add_option("--c", rc.params.c, "Mixing amplitude (legendre)");
  sr->add_option("--mass-length-sq", rc.params.mass_length_sq, "m a^2 (legendre)");
  sr->add_option("--tol", rc.params.tol, "Relative tolerance");

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kSuccess;
    } catch (const CLI::ParseError& e) {
      err << "superlab: " << e.what() << "\n" << "Run 'superlab --help' for usage.\n";
      return kUsageError;
    }

    for (auto* sub : app.get_subcommands()) rc.command = sub->get_name();
    rc.format = format == "svg" ? OutputFormat::svg : format == "both" ? OutputFormat::both : OutputFormat::csv;

    if (rc.command == "fig") {
      run_fig(rc, err);
      return kSuccess;
    }
    if (rc.command == "local-energy") return cmd_local_energy(rc, out);
    if (rc.command == "spectral-energy") return cmd_spectral_energy(rc, out);
    if (rc.command == "windowed-energy") return cmd_windowed_energy(rc, out, err);
    if (rc.command == "time-evolve") return cmd_time_evolve(rc, out);
    if (rc.command == "rotor") return cmd_rotor(rc, out);
    if (rc.command == "check-identity") return cmd_check_identity(rc, out);
    if (rc.command == "sum-rule") return cmd_sum_rule(rc, out);
    err << "superlab: unknown command\n";
    return kUsageError;
  } catch (const usage_error& e) {
    err << "superlab: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "superlab: invalid parameter: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "superlab: invalid parameter: " << e.what() << "\n";
    return kUsageError;
  } catch (const numerical_error& e) {
    err << "superlab: numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "superlab: error: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace superlab::cli
