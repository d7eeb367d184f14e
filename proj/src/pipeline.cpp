#include "nri/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace nri {

Model Model::from_config(const RunConfig& cfg) {
  Model m;
  m.params = cfg.params();
  m.broadening.gammap = cfg.gammap();
  m.density = cfg.density_cm3;
  return m;
}

DarkStateSolution Model::dark() const {
  auto d = dark_state(params);
  if (nonchiral) d.rho41 = 0.0;
  return d;
}

PointResult evaluate_point(const Model& model, double Delta) {
  PointResult r;
  r.x = Delta;
  r.Delta = Delta;
  try {
    r.q = broadened_quartet(model.params, ProbeDetunings::sweep(Delta), model.dark(),
                            model.broadening);
    r.m = local_field_correct(r.q, model.density);
    r.n = refractive_index(r.m, Handedness::plus);
    r.zinv = inverse_impedance(r.m);
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int nt = std::min(hw, std::max(1, n / 64));
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += nt) fn(i);
    });
  for (auto& th : pool) th.join();
}

std::vector<PointResult> sweep(const Model& model, SweepVariable var,
                               const std::vector<double>& values, double Delta) {
  const int n = static_cast<int>(values.size());
  std::vector<PointResult> out(n);
  // the angle sweep shares one operating point
  PointResult base;
  if (var == SweepVariable::theta) base = evaluate_point(model, Delta);
  parallel_for(n, [&](int i) {
    const double v = values[i];
    Model m = model;
    PointResult r;
    switch (var) {
      case SweepVariable::detuning:
        r = evaluate_point(m, v);
        break;
      case SweepVariable::density:
        m.density = v;
        r = evaluate_point(m, Delta);
        break;
      case SweepVariable::phase:
        m.params.Omegac_phase = v;
        r = evaluate_point(m, Delta);
        break;
      case SweepVariable::omegac_abs:
        m.params.Omegac_abs = v;
        r = evaluate_point(m, Delta);
        break;
      case SweepVariable::theta:
        r = base;
        if (r.error.empty())
          r.n = index_vs_angle(r.m.eps, r.m.mu, r.m.xiEH, r.m.xiHE, v);
        break;
    }
    r.x = v;
    out[i] = r;
  });
  return out;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw Error(ErrorCode::configuration, "a sweep needs at least 2 points", n);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
  v.back() = b;
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  if (!(a > 0.0 && b > 0.0))
    throw Error(ErrorCode::configuration, "logarithmic sweep needs positive bounds");
  auto v = linspace(std::log10(a), std::log10(b), n);
  for (auto& x : v) x = std::pow(10.0, x);
  v.front() = a;
  v.back() = b;
  return v;
}

namespace {

struct Probe {
  const Model& model;
  double objective(double Delta, double log_oc) const {
    Model m = model;
    m.params.Omegac_abs = std::pow(10.0, log_oc) * m.params.gamma[2];
    const auto r = evaluate_point(m, Delta);
    if (!r.error.empty()) return std::numeric_limits<double>::infinity();
    const double v = std::abs(r.zinv - 1.0);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  }
};

// golden-section minimum of f on [a, b]; returns (x, f(x))
template <class F>
std::pair<double, double> golden(F f, double a, double b, double floor_rel) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200; ++it) {
    if (std::abs(b - a) <= floor_rel * std::max(1.0, std::abs(a) + std::abs(b))) break;
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace

ImpedanceReport impedance_find(const Model& model, const ImpedanceOptions& opt) {
  const double gp = model.broadening.gammap > 0.0 ? model.broadening.gammap : model.params.gamma[1];
  double dlo = opt.delta_lo, dhi = opt.delta_hi;
  if (dlo == 0.0 && dhi == 0.0) {
    dlo = -0.05 * gp;
    dhi = 0.05 * gp;
  }
  // equal |Omega_c| bounds pin the coupling strength: a search over Delta only
  const bool pinned = opt.log_oc_hi == opt.log_oc_lo;
  if (!(dhi > dlo) || !(opt.log_oc_hi >= opt.log_oc_lo) || opt.grid_delta < 2 ||
      (!pinned && opt.grid_oc < 2))
    throw Error(ErrorCode::configuration, "bad impedance search window");
  Probe probe{model};

  // coarse grid, evaluated in parallel, best point picked in index order
  const int nd = opt.grid_delta, no = pinned ? 1 : opt.grid_oc;
  const auto dg = linspace(dlo, dhi, nd);
  const auto og = pinned ? std::vector<double>{opt.log_oc_lo}
                         : linspace(opt.log_oc_lo, opt.log_oc_hi, no);
  std::vector<double> vals(static_cast<std::size_t>(nd) * no);
  parallel_for(nd * no, [&](int k) { vals[k] = probe.objective(dg[k / no], og[k % no]); });

  // grid local minima are the refinement seeds, lowest first
  std::vector<int> seeds;
  for (int a = 0; a < nd; ++a)
    for (int b = 0; b < no; ++b) {
      const double v = vals[a * no + b];
      if (!std::isfinite(v)) continue;
      bool low = true;
      for (int da = -1; da <= 1 && low; ++da)
        for (int db = -1; db <= 1; ++db) {
          const int aa = a + da, bb = b + db;
          if ((da || db) && aa >= 0 && aa < nd && bb >= 0 && bb < no && vals[aa * no + bb] < v) {
            low = false;
            break;
          }
        }
      if (low) seeds.push_back(a * no + b);
    }
  std::stable_sort(seeds.begin(), seeds.end(), [&](int x, int y) { return vals[x] < vals[y]; });
  if (static_cast<int>(seeds.size()) > opt.starts) seeds.resize(std::max(1, opt.starts));

  const double floor_rel = 1e-10;
  // alternating golden-section refinement, brackets clipped to the window
  auto refine = [&](double& xd, double& xo, double& fbest) {
    double wd = (dhi - dlo) / (nd - 1);
    double wo = pinned ? 0.0 : (opt.log_oc_hi - opt.log_oc_lo) / (no - 1);
    for (int s = 0; s < opt.max_sweeps && std::isfinite(fbest); ++s) {
      const double xd0 = xd, xo0 = xo, f0 = fbest;
      auto [nd_x, nd_f] = golden([&](double d) { return probe.objective(d, xo); },
                                 std::max(dlo, xd - wd), std::min(dhi, xd + wd), floor_rel);
      if (nd_f < fbest) {
        xd = nd_x;
        fbest = nd_f;
      }
      auto [no_x, no_f] =
          pinned ? std::make_pair(xo, fbest)
                 : golden([&](double o) { return probe.objective(xd, o); },
                          std::max(opt.log_oc_lo, xo - wo), std::min(opt.log_oc_hi, xo + wo),
                          floor_rel);
      if (no_f < fbest) {
        xo = no_x;
        fbest = no_f;
      }
      const double md = std::abs(xd - xd0), mo = std::abs(xo - xo0);
      // shrink the brackets once the walk slows down
      wd = std::max(std::min(wd, 8.0 * md), floor_rel * gp);
      if (!pinned) wo = std::max(std::min(wo, 8.0 * mo), floor_rel);
      if (fbest == 0.0 || (f0 - fbest) <= 1e-15 * f0) {
        if (md <= floor_rel * gp && mo <= floor_rel) break;
      }
    }
  };

  // Coordinate search crawls along the curved valley of |1/Z - 1|, so finish
  // with damped Newton steps on 1/Z - 1 = 0 (finite-difference Jacobian).
  auto polish = [&](double& xd, double& xo, double& fbest) {
    auto F = [&](double d, double o) {
      Model mm = model;
      mm.params.Omegac_abs = std::pow(10.0, o) * mm.params.gamma[2];
      const auto r = evaluate_point(mm, d);
      return r.error.empty() ? r.zinv - 1.0 : cd(std::nan(""), 0.0);
    };
    const double hd = 1e-7 * gp, ho = pinned ? 0.0 : 1e-7;
    for (int it = 0; it < 60 && fbest > 0.0 && std::isfinite(fbest); ++it) {
      const cd f0 = F(xd, xo);
      const cd jd = (F(xd + hd, xo) - F(xd - hd, xo)) / (2.0 * hd);
      double sd = 0.0, so = 0.0;
      if (pinned) {
        // least squares along Delta alone
        const double den = std::norm(jd);
        if (!(den > 0.0)) break;
        sd = -(std::conj(jd) * f0).real() / den;
      } else {
        const cd jo = (F(xd, xo + ho) - F(xd, xo - ho)) / (2.0 * ho);
        const double det = jd.real() * jo.imag() - jo.real() * jd.imag();
        if (!(std::abs(det) > 0.0)) break;
        sd = -(jo.imag() * f0.real() - jo.real() * f0.imag()) / det;
        so = -(-jd.imag() * f0.real() + jd.real() * f0.imag()) / det;
      }
      bool moved = false;
      for (double lam = 1.0; lam > 1e-6; lam *= 0.5) {
        const double nd2 = std::clamp(xd + lam * sd, dlo, dhi);
        const double no2 = pinned ? xo : std::clamp(xo + lam * so, opt.log_oc_lo, opt.log_oc_hi);
        const double fn = std::abs(F(nd2, no2));
        if (fn < fbest) {
          xd = nd2;
          xo = no2;
          fbest = fn;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
  };

  std::vector<std::array<double, 3>> done(seeds.size());
  parallel_for(static_cast<int>(seeds.size()) * 64, [&](int i) {
    if (i % 64) return;  // one task per seed; the factor keeps parallel_for threaded
    const int k = seeds[i / 64];
    double xd = dg[k / no], xo = og[k % no], f = vals[k];
    refine(xd, xo, f);
    polish(xd, xo, f);
    done[i / 64] = {xd, xo, f};
  });
  double xd = 0.0, xo = 0.0, fbest = std::numeric_limits<double>::infinity();
  for (const auto& d : done)
    if (d[2] < fbest) {
      xd = d[0];
      xo = d[1];
      fbest = d[2];
    }
  if (seeds.empty()) {
    xd = dg[0];
    xo = og[0];
  }

  ImpedanceReport rep;
  rep.Delta = xd;
  rep.Omegac_abs = std::pow(10.0, xo) * model.params.gamma[2];
  Model m = model;
  m.params.Omegac_abs = rep.Omegac_abs;
  rep.point = evaluate_point(m, xd);
  rep.objective = fbest;
  rep.found = fbest < opt.cap;
  return rep;
}

std::vector<SaturationRow> saturation(const Model& model, double OmegaE, double ratio,
                                      const std::vector<double>& Deltas) {
  if (!(ratio != 0.0)) throw Error(ErrorCode::configuration, "probe ratio must be nonzero");
  const int n = static_cast<int>(Deltas.size());
  std::vector<SaturationRow> rows(n);
  const auto dark = model.dark();
  const double gp = model.broadening.gammap;
  parallel_for(n, [&](int i) {
    SaturationRow r;
    r.OmegaE = OmegaE;
    r.OmegaB = OmegaE / ratio;
    r.Delta = Deltas[i];
    try {
      const auto det = ProbeDetunings::sweep(r.Delta);
      r.linear = polarizability_quartet(model.params, det, dark, model.broadening);
      r.exact = separated_polarizabilities_rabi(model.params, det, r.OmegaE, r.OmegaB, gp);
      const std::array<cd, 4> ex = {r.exact.aEE, r.exact.aEB, r.exact.aBE, r.exact.aBB};
      const std::array<cd, 4> li = {r.linear.aEE, r.linear.aEB, r.linear.aBE, r.linear.aBB};
      for (int c = 0; c < 4; ++c) {
        r.dev_complex[c] = deviation(ex[c], li[c]);
        const double sc = std::abs(li[c]);
        auto part = [&](double e, double l) {
          try {
            return deviation_part(e, l, sc);
          } catch (const Error&) {
            return std::numeric_limits<double>::quiet_NaN();
          }
        };
        r.dev_parts[2 * c] = part(ex[c].real(), li[c].real());
        r.dev_parts[2 * c + 1] = part(ex[c].imag(), li[c].imag());
      }
    } catch (const Error& e) {
      r.error = e.what();
    }
    rows[i] = r;
  });
  return rows;
}

}  // namespace nri
