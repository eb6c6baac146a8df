#include "symrmt/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "symrmt/errors.hpp"
#include "symrmt/moments.hpp"

namespace symrmt {

std::string to_string(Recipe recipe) {
  switch (recipe) {
    case Recipe::cyclic_shift: return "cyclic-shift";
    case Recipe::signature: return "signature";
    case Recipe::shift_diag: return "shift+diag";
    case Recipe::tridiag: return "tridiag";
  }
  return "?";
}

Recipe parse_recipe(const std::string& text) {
  for (Recipe r : {Recipe::cyclic_shift, Recipe::signature, Recipe::shift_diag, Recipe::tridiag})
    if (text == to_string(r)) return r;
  throw ArgumentError("unknown recipe '" + text + "' (cyclic-shift, signature, shift+diag, tridiag)");
}

ComplexMatrix recipe_matrix(Recipe recipe, const SymmetryClass& cls) {
  const int m = cls.ambient_size();
  ComplexMatrix a = ComplexMatrix::Zero(m, m);
  switch (recipe) {
    case Recipe::cyclic_shift:
      for (int j = 0; j < m; ++j) a(j, (j + 1) % m) += 1.0;
      break;
    case Recipe::signature:
      if (cls.tag == SymmetryTag::CII)
        a = doubled_signature(cls.p, cls.q);
      else if (cls.chiral())
        a = signature_matrix(cls.p, cls.q);
      else
        throw ArgumentError("recipe 'signature' needs a chiral class, got " + cls.to_string());
      break;
    case Recipe::shift_diag:
      for (int j = 0; j < m; ++j) {
        a(j, (j + 1) % m) += 1.0;
        a(j, j) += 1.0 / (j + 1);
      }
      break;
    case Recipe::tridiag:
      for (int j = 0; j < m; ++j) {
        a(j, j) += 1.0;
        a(j, (j + 1) % m) += 1.0;
        a((j + 1) % m, j) += 1.0;
      }
      break;
  }
  return project_W(cls, a);
}

int chiral_p(int n) {
  if (n < 2) throw ArgumentError("chiral classes need n >= 2");
  return std::clamp((3 * n + 4) / 5, 1, n - 1);
}

SymmetryClass class_at(SymmetryTag tag, int n) {
  if (!is_chiral(tag)) return SymmetryClass::make(tag, n);
  const int p = chiral_p(n);
  return SymmetryClass::make(tag, n, p, n - p);
}

// ---------------------------------------------------------------------------

double KStatistics::standardized_k3() const { return k2 > 0 ? k3 / std::pow(k2, 1.5) : 0.0; }
double KStatistics::standardized_k4() const { return k2 > 0 ? k4 / (k2 * k2) : 0.0; }

namespace {

struct Central {
  double mean = 0, m2 = 0, m3 = 0, m4 = 0;
};

Central central_moments(const std::vector<double>& x) {
  Central c;
  const double n = static_cast<double>(x.size());
  for (double v : x) c.mean += v;
  c.mean /= n;
  for (double v : x) {
    const double d = v - c.mean;
    const double d2 = d * d;
    c.m2 += d2;
    c.m3 += d2 * d;
    c.m4 += d2 * d2;
  }
  c.m2 /= n;
  c.m3 /= n;
  c.m4 /= n;
  return c;
}

}  // namespace

KStatistics k_statistics(const std::vector<double>& samples) {
  if (samples.size() <= 4) throw ArgumentError("k_statistics: need more than 4 samples");
  const Central c = central_moments(samples);
  const double n = static_cast<double>(samples.size());
  KStatistics k;
  k.count = static_cast<std::int64_t>(samples.size());
  k.mean = c.mean;
  k.k2 = n / (n - 1) * c.m2;
  k.k3 = n * n / ((n - 1) * (n - 2)) * c.m3;
  k.k4 = n * n * ((n + 1) * c.m4 - 3 * (n - 1) * c.m2 * c.m2) / ((n - 1) * (n - 2) * (n - 3));
  k.se_k3 = std::sqrt(6 * k.k2 * k.k2 * k.k2 / n);
  k.se_k4 = std::sqrt(24 * k.k2 * k.k2 * k.k2 * k.k2 / n);
  return k;
}

double variance_standard_error(const std::vector<double>& samples) {
  if (samples.size() < 4) throw ArgumentError("variance_standard_error: need at least 4 samples");
  const Central c = central_moments(samples);
  const double n = static_cast<double>(samples.size());
  const double var = (c.m4 - c.m2 * c.m2 * (n - 3) / (n - 1)) / n;
  return std::sqrt(std::max(var, 0.0));
}

std::string to_string(TargetMode mode) {
  switch (mode) {
    case TargetMode::exact: return "exact";
    case TargetMode::asymptotic: return "asymptotic";
    case TargetMode::both: return "both";
  }
  return "?";
}

TargetMode parse_target_mode(const std::string& text) {
  for (TargetMode m : {TargetMode::exact, TargetMode::asymptotic, TargetMode::both})
    if (text == to_string(m)) return m;
  throw ArgumentError("unknown target mode '" + text + "' (exact, asymptotic, both)");
}

ExperimentSpec recipe_spec(const SymmetryClass& cls, const std::vector<Recipe>& recipes,
                           std::int64_t samples, std::uint64_t seed, int workers) {
  ExperimentSpec spec;
  spec.cls = cls;
  spec.samples = samples;
  spec.seed = seed;
  spec.workers = workers;
  for (Recipe r : recipes) {
    spec.matrices.push_back(recipe_matrix(r, cls));
    spec.labels.push_back(to_string(r));
  }
  return spec;
}

bool SampleReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

const Verdict* SampleReport::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

std::vector<double> trace_values(const std::vector<ComplexMatrix>& projected, const ComplexMatrix& v) {
  std::vector<double> out;
  out.reserve(projected.size());
  for (const auto& p : projected) out.push_back((p.cwiseProduct(v.transpose())).sum().real());
  return out;
}

namespace {

// L as x -> L x with L_{j, perm[j]} = sign[j], when L is a signed permutation.
struct SignedPermutation {
  std::vector<int> perm;
  std::vector<double> sign;
};

std::optional<SignedPermutation> as_signed_permutation(const ComplexMatrix& l) {
  SignedPermutation out;
  const int m = static_cast<int>(l.rows());
  out.perm.assign(m, -1);
  out.sign.assign(m, 0.0);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      const Complex z = l(j, k);
      if (z == Complex(0.0, 0.0)) continue;
      if (out.perm[j] >= 0 || z.imag() != 0.0 || std::abs(z.real()) != 1.0) return std::nullopt;
      out.perm[j] = k;
      out.sign[j] = z.real();
    }
  for (int j = 0; j < m; ++j)
    if (out.perm[j] < 0) return std::nullopt;
  return out;
}

// T_mu = Re Tr(P_mu V) straight from g, without forming V.
//   degree 1: V = g.
//   degree 2: V = g L h R, Tr(P V) = Tr((R P g)(L h)), h = g' or g*.
class TraceEvaluator {
 public:
  TraceEvaluator(const SymmetryClass& cls, const std::vector<ComplexMatrix>& projected)
      : form_(cartan_form(cls)), projected_(projected) {
    if (form_.degree == 2) {
      for (const auto& p : projected_) rp_.push_back(form_.right * p);
      left_ = as_signed_permutation(form_.left);
    }
  }

  void evaluate(const ComplexMatrix& g, double* out) {
    const std::size_t r = projected_.size();
    if (form_.degree == 1) {
      for (std::size_t mu = 0; mu < r; ++mu) out[mu] = projected_[mu].cwiseProduct(g.transpose()).sum().real();
      return;
    }
    const int m = static_cast<int>(g.rows());
    if (!left_) {
      lh_.noalias() = form_.left * (form_.adjoint ? ComplexMatrix(g.adjoint()) : ComplexMatrix(g.transpose()));
    }
    for (std::size_t mu = 0; mu < r; ++mu) {
      c_.noalias() = rp_[mu] * g;
      double sum = 0;
      if (left_) {
        for (int j = 0; j < m; ++j) {
          const int k = left_->perm[j];
          const double s = left_->sign[j];
          // (L h)_{j i} = s h_{k i}; h_{k i} = g_{i k} or conj(g_{i k})
          double col = 0;
          if (form_.adjoint) {
            for (int i = 0; i < m; ++i) col += (c_(i, j) * std::conj(g(i, k))).real();
          } else {
            for (int i = 0; i < m; ++i) col += (c_(i, j) * g(i, k)).real();
          }
          sum += s * col;
        }
      } else {
        sum = c_.cwiseProduct(lh_.transpose()).sum().real();
      }
      out[mu] = sum;
    }
  }

 private:
  CartanForm form_;
  const std::vector<ComplexMatrix>& projected_;
  std::vector<ComplexMatrix> rp_;
  std::optional<SignedPermutation> left_;
  ComplexMatrix c_;
  ComplexMatrix lh_;
};

std::string format_check(double value, double target, double se) {
  std::ostringstream os;
  os.precision(6);
  os << "value " << value << " target " << target << " se " << se;
  return os.str();
}

}  // namespace

SampleReport run_experiment(const ExperimentSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  if (spec.samples < 5) throw ArgumentError("experiment: need at least 5 samples");
  if (spec.workers < 1) throw ArgumentError("experiment: worker count must be positive");
  if (spec.matrices.empty()) throw ArgumentError("experiment: no parameter matrices");
  if (!spec.labels.empty() && spec.labels.size() != spec.matrices.size())
    throw ArgumentError("experiment: label count does not match matrix count");

  const SymmetryClass& cls = spec.cls;
  const std::size_t r = spec.matrices.size();
  std::vector<ComplexMatrix> projected;
  std::vector<std::string> labels;
  for (std::size_t mu = 0; mu < r; ++mu) {
    projected.push_back(project_W(cls, spec.matrices[mu]));
    if (!membership_W(cls, projected.back(), 1e-9))
      throw ArgumentError("experiment: projected matrix fails membership in W_" + to_string(cls.tag));
    labels.push_back(spec.labels.empty() ? "A" + std::to_string(mu + 1) : spec.labels[mu]);
  }

  const std::int64_t total = spec.samples;
  std::vector<double> flat(static_cast<std::size_t>(total) * r);
  const int workers = static_cast<int>(std::min<std::int64_t>(spec.workers, total));
  std::vector<std::exception_ptr> errors(workers);
  auto job = [&](int w) {
    try {
      TraceEvaluator eval(cls, projected);
      const std::int64_t begin = total * w / workers;
      const std::int64_t end = total * (w + 1) / workers;
      for (std::int64_t i = begin; i < end; ++i) {
        RngStream rng(spec.seed, static_cast<std::uint64_t>(i));
        const HaarSample g = sample_haar(cls.group(), cls.group_parameter(), rng);
        eval.evaluate(g.matrix, &flat[static_cast<std::size_t>(i) * r]);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(job, w);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  SampleReport report;
  report.cls = cls;
  report.samples = total;
  report.seed = spec.seed;
  report.workers = spec.workers;
  report.values.assign(r, std::vector<double>(static_cast<std::size_t>(total)));
  for (std::int64_t i = 0; i < total; ++i)
    for (std::size_t mu = 0; mu < r; ++mu) report.values[mu][i] = flat[static_cast<std::size_t>(i) * r + mu];

  const double n_samples = static_cast<double>(total);
  const double sigma = spec.sigma_tolerance;
  const bool want_exact = spec.targets != TargetMode::asymptotic;
  const bool want_asymptotic = spec.targets != TargetMode::exact;
  report.target_covariance = theoretical_covariance(cls, projected);

  for (std::size_t mu = 0; mu < r; ++mu) {
    const auto& x = report.values[mu];
    MarginalReport m;
    m.label = labels[mu];
    m.cumulants = k_statistics(x);
    m.mean = m.cumulants.mean;
    m.variance = m.cumulants.k2;
    m.mean_se = std::sqrt(m.variance / n_samples);
    m.variance_se = variance_standard_error(x);
    m.target_mean = cls.chiral() ? chiral_mean(cls, projected[mu]) : 0.0;
    m.target_variance = report.target_covariance(mu, mu);
    if (want_exact) {
      try {
        const ExactMoments ex = exact_moments(cls, to_exact(projected[mu]));
        m.exact_mean = ex.mean.re.get_d();
        m.exact_variance = ex.variance.get_d();
      } catch (const SizeLimitError&) {
        if (spec.targets == TargetMode::exact) throw;
      } catch (const RegimeError&) {
        if (spec.targets == TargetMode::exact) throw;
      }
    }

    const std::string& tag = m.label;
    const double floor = 1e-9 * std::max(1.0, std::abs(m.target_mean));
    if (want_asymptotic) {
      report.verdicts.push_back({"mean:" + tag,
                                 std::abs(m.mean - m.target_mean) <= sigma * m.mean_se + floor,
                                 format_check(m.mean, m.target_mean, m.mean_se)});
      bool ok;
      if (m.target_variance > 1e-12) {
        const double dev = std::abs(m.variance - m.target_variance);
        ok = dev <= sigma * m.variance_se && dev <= spec.relative_tolerance * m.target_variance;
      } else {
        ok = m.variance <= 1e-9 * std::max(1.0, m.mean * m.mean);
      }
      report.verdicts.push_back({"variance:" + tag, ok, format_check(m.variance, m.target_variance, m.variance_se)});
    }
    if (m.exact_mean) {
      report.verdicts.push_back({"exact-mean:" + tag,
                                 std::abs(m.mean - *m.exact_mean) <= sigma * m.mean_se + floor,
                                 format_check(m.mean, *m.exact_mean, m.mean_se)});
      const double vfloor = 1e-9 * std::max(1.0, m.mean * m.mean);
      report.verdicts.push_back({"exact-variance:" + tag,
                                 std::abs(m.variance - *m.exact_variance) <= sigma * m.variance_se + vfloor,
                                 format_check(m.variance, *m.exact_variance, m.variance_se)});
    }
    const bool degenerate = m.variance <= 1e-12 * std::max(1.0, m.mean * m.mean);
    const double null3 = std::sqrt(6.0 / n_samples);
    const double null4 = std::sqrt(24.0 / n_samples);
    const double s3 = m.cumulants.standardized_k3();
    const double s4 = m.cumulants.standardized_k4();
    report.verdicts.push_back({"k3:" + tag, degenerate || std::abs(s3) <= sigma * null3,
                               degenerate ? "degenerate (zero variance)" : format_check(s3, 0.0, null3)});
    report.verdicts.push_back({"k4:" + tag, degenerate || std::abs(s4) <= sigma * null4,
                               degenerate ? "degenerate (zero variance)" : format_check(s4, 0.0, null4)});
    report.marginals.push_back(std::move(m));
  }

  report.covariance = Eigen::MatrixXd::Zero(r, r);
  report.covariance_se = Eigen::MatrixXd::Zero(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a; b < r; ++b) {
      const auto& x = report.values[a];
      const auto& y = report.values[b];
      const double mx = report.marginals[a].mean;
      const double my = report.marginals[b].mean;
      double s = 0, s2 = 0;
      for (std::int64_t i = 0; i < total; ++i) {
        const double z = (x[i] - mx) * (y[i] - my);
        s += z;
        s2 += z * z;
      }
      const double cov = s / (n_samples - 1);
      const double zm = s / n_samples;
      const double se = std::sqrt(std::max(s2 / n_samples - zm * zm, 0.0) / n_samples);
      report.covariance(a, b) = report.covariance(b, a) = cov;
      report.covariance_se(a, b) = report.covariance_se(b, a) = se;
      if (r > 1 && a != b && want_asymptotic) {
        const double target = report.target_covariance(a, b);
        const double dev = std::abs(cov - target);
        const bool ok = dev <= sigma * se + 1e-12 && dev <= spec.covariance_relative_tolerance * std::abs(target) + 1e-12;
        report.verdicts.push_back({"covariance:" + labels[a] + "," + labels[b], ok, format_check(cov, target, se)});
      }
    }

  if (!spec.keep_samples) report.values.clear();
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SweepRow> convergence_sweep(SymmetryTag tag, Recipe recipe, const std::vector<int>& n_grid,
                                        std::int64_t samples, std::uint64_t seed, int workers) {
  std::vector<SweepRow> rows;
  const double gamma_value = gamma(tag).get_d();
  for (int n : n_grid) {
    const SymmetryClass cls = class_at(tag, n);
    const SampleReport rep = run_experiment(recipe_spec(cls, {recipe}, samples, seed, workers));
    const MarginalReport& m = rep.marginals.front();
    SweepRow row;
    row.n = n;
    row.cls = cls;
    row.variance = m.variance;
    row.variance_se = m.variance_se;
    row.scaled_variance = m.variance * n / gamma_value;
    row.trace_target = m.target_variance * n / gamma_value;
    row.mean = m.mean;
    row.mean_se = m.mean_se;
    row.target_mean = m.target_mean;
    row.standardized_k3 = m.cumulants.standardized_k3();
    row.standardized_k4 = m.cumulants.standardized_k4();
    row.null_se = std::sqrt(6.0 / static_cast<double>(samples));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace symrmt
