#include "ctx/quantum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace ctx {

namespace {

double max_abs(const CMatrix& m) {
  double v = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      v = std::max(v, std::abs(m(i, j)));
  return v;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void check_projector(const CMatrix& p, double tol, const std::string& what) {
  if (p.rows() != p.cols())
    throw std::invalid_argument(what + ": projector must be square");
  if (max_abs(p - p.adjoint()) > tol)
    throw std::invalid_argument(what + ": projector not self-adjoint");
  if (max_abs(p * p - p) > tol)
    throw std::invalid_argument(what + ": projector not idempotent");
}

}  // namespace

double commutator_norm(const CMatrix& a, const CMatrix& b) {
  return max_abs(a * b - b * a);
}

DichotomicObservable make_observable(std::string label, CMatrix p0, CMatrix p1,
                                     double tol) {
  check_projector(p0, tol, "observable " + label);
  check_projector(p1, tol, "observable " + label);
  if (p0.rows() != p1.rows())
    throw std::invalid_argument("observable " + label + ": dimension mismatch");
  const CMatrix eye = CMatrix::Identity(p0.rows(), p0.cols());
  if (max_abs(p0 + p1 - eye) > tol)
    throw std::invalid_argument("observable " + label +
                                ": projectors do not resolve the identity");
  return DichotomicObservable{std::move(label), std::move(p0), std::move(p1)};
}

QuantumState make_state(CMatrix rho, double tol) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("state: density matrix must be square");
  if (max_abs(rho - rho.adjoint()) > tol)
    throw std::invalid_argument("state: density matrix not self-adjoint");
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol)
    throw std::invalid_argument("state: trace is not one");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("state: density matrix not positive semidefinite");
  return QuantumState{std::move(rho)};
}

QuantumState pure_state(const CVector& psi) {
  const double norm = psi.norm();
  if (norm == 0) throw std::invalid_argument("pure_state: zero vector");
  const CVector v = psi / norm;
  return QuantumState{v * v.adjoint()};
}

std::shared_ptr<const Scenario> commuting_cover(
    const std::vector<DichotomicObservable>& observables, double tol) {
  if (observables.empty())
    throw std::invalid_argument("commuting_cover: no observables");
  const Eigen::Index dim = observables.front().p1.rows();
  std::vector<std::string> labels;
  for (const auto& o : observables) {
    if (o.p1.rows() != dim)
      throw std::invalid_argument("commuting_cover: mixed dimensions");
    labels.push_back(o.label);
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < observables.size(); ++i)
    for (std::size_t j = i + 1; j < observables.size(); ++j)
      if (commutator_norm(observables[i].p1, observables[j].p1) <= tol)
        edges.emplace_back(labels[i], labels[j]);
  return clique_cover_scenario(Graph::make(labels, edges));
}

BornModel born_model(const QuantumState& state,
                     const std::vector<DichotomicObservable>& observables,
                     std::shared_ptr<const Scenario> cover, double tol) {
  std::map<std::string, const DichotomicObservable*> by_label;
  for (const auto& o : observables) by_label[o.label] = &o;

  BornModel model;
  model.scenario = cover;
  const int l = cover->outcome_count();
  if (l != 2)
    throw std::invalid_argument("born_model: dichotomic scenarios only");

  for (const auto& context : cover->cover()) {
    std::vector<const DichotomicObservable*> obs;
    for (int m : context) {
      auto it = by_label.find(cover->measurements()[m]);
      if (it == by_label.end())
        throw std::invalid_argument("born_model: no observable for measurement " +
                                    cover->measurements()[m]);
      obs.push_back(it->second);
    }
    for (std::size_t i = 0; i < obs.size(); ++i)
      for (std::size_t j = i + 1; j < obs.size(); ++j)
        if (commutator_norm(obs[i]->p1, obs[j]->p1) > tol)
          throw std::invalid_argument("born_model: non-commuting context");

    const std::uint64_t n = cover->section_count(context);
    std::vector<double> row(n);
    double sum = 0;
    for (std::uint64_t s = 0; s < n; ++s) {
      CMatrix p = CMatrix::Identity(state.rho.rows(), state.rho.cols());
      std::uint64_t rest = s;
      for (std::size_t i = 0; i < obs.size(); ++i) {
        p = p * ((rest % 2) ? obs[i]->p1 : obs[i]->p0);
        rest /= 2;
      }
      const double w = (state.rho * p).trace().real();
      if (w < -tol)
        throw std::invalid_argument("born_model: negative weight beyond tolerance");
      row[s] = w;
      sum += w;
    }
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument("born_model: table does not sum to one");
    model.tables.push_back(std::move(row));
  }
  return model;
}

BornCompatReport check_generalized_no_signalling(const BornModel& model,
                                                 double tol) {
  BornCompatReport rep;
  const Scenario& sc = *model.scenario;
  const auto& cover = sc.cover();
  for (std::size_t a = 0; a < cover.size(); ++a) {
    for (std::size_t b = a + 1; b < cover.size(); ++b) {
      std::vector<int> overlap;
      std::set_intersection(cover[a].begin(), cover[a].end(), cover[b].begin(),
                            cover[b].end(), std::back_inserter(overlap));
      if (overlap.empty()) continue;
      const int l = sc.outcome_count();
      const std::uint64_t n = sc.section_count(overlap);
      std::vector<double> ma(n, 0.0), mb(n, 0.0);
      for (std::uint64_t s = 0; s < sc.section_count(cover[a]); ++s)
        ma[restrict_section_index(cover[a], s, overlap, l)] += model.tables[a][s];
      for (std::uint64_t s = 0; s < sc.section_count(cover[b]); ++s)
        mb[restrict_section_index(cover[b], s, overlap, l)] += model.tables[b][s];
      for (std::uint64_t s = 0; s < n; ++s)
        if (std::abs(ma[s] - mb[s]) > tol)
          rep.violations.push_back({a, b, overlap, s, ma[s], mb[s]});
    }
  }
  return rep;
}

QuantumState ghz_state(int n) {
  if (n < 2) throw std::invalid_argument("ghz_state: n >= 2 required");
  const Eigen::Index dim = Eigen::Index{1} << n;
  CVector psi = CVector::Zero(dim);
  const double r = 1.0 / std::sqrt(2.0);
  psi(0) = r;        // |up...up>
  psi(dim - 1) = r;  // |down...down>
  return QuantumState{psi * psi.adjoint()};
}

std::vector<DichotomicObservable> ghz_observables(int n) {
  if (n < 2) throw std::invalid_argument("ghz_observables: n >= 2 required");
  using namespace std::complex_literals;
  const double r = 1.0 / std::sqrt(2.0);
  CVector x0(2), x1(2), y0(2), y1(2);
  x0 << r, r;         // spin right
  x1 << r, -r;        // spin left
  y0 << r, 1i * r;    // spin forward
  y1 << r, -1i * r;   // spin back

  auto proj = [](const CVector& v) { return CMatrix(v * v.adjoint()); };
  std::vector<DichotomicObservable> out;
  for (int i = 0; i < n; ++i) {
    const CMatrix before = CMatrix::Identity(Eigen::Index{1} << i, Eigen::Index{1} << i);
    const CMatrix after = CMatrix::Identity(Eigen::Index{1} << (n - i - 1),
                                            Eigen::Index{1} << (n - i - 1));
    auto extend = [&](const CMatrix& p) { return kron(kron(before, p), after); };
    out.push_back(make_observable("X" + std::to_string(i + 1), extend(proj(x0)),
                                  extend(proj(x1))));
    out.push_back(make_observable("Y" + std::to_string(i + 1), extend(proj(y0)),
                                  extend(proj(y1))));
  }
  return out;
}

KsObservables ks_observables(const VectorFamily& family) {
  const int d = family.dimension();
  const Graph orth = orthogonality_graph(family);
  const auto cliques = maximal_cliques(orth);

  // every ray must sit in at least one full-dimension orthogonal basis
  std::vector<char> in_basis(family.labels.size(), 0);
  for (const auto& clique : cliques)
    if (clique.size() == static_cast<std::size_t>(d))
      for (int v : clique) in_basis[v] = 1;
  for (std::size_t i = 0; i < family.labels.size(); ++i)
    if (!in_basis[i])
      throw std::invalid_argument("ks_observables: " + family.labels[i] +
                                  " lies in no in-family orthogonal basis");

  std::vector<DichotomicObservable> obs;
  for (std::size_t i = 0; i < family.labels.size(); ++i) {
    CVector v(d);
    double norm2 = 0;
    for (int k = 0; k < d; ++k) {
      v(k) = static_cast<double>(family.vectors[i][k]);
      norm2 += static_cast<double>(family.vectors[i][k]) *
               static_cast<double>(family.vectors[i][k]);
    }
    CMatrix p1 = (v * v.adjoint()) / norm2;
    CMatrix p0 = CMatrix::Identity(d, d) - p1;
    obs.push_back(make_observable(family.labels[i], std::move(p0), std::move(p1)));
  }
  auto cover = commuting_cover(obs);
  return KsObservables{std::move(obs), std::move(cover)};
}

EmpiricalModel support_of(const BornModel& model, double eps) {
  std::vector<Distribution> tables;
  const Scenario& sc = *model.scenario;
  for (std::size_t c = 0; c < sc.cover().size(); ++c) {
    Bits bits(model.tables[c].size());
    for (std::size_t s = 0; s < model.tables[c].size(); ++s)
      if (model.tables[c][s] > eps) bits.set(s);
    tables.push_back(Distribution::make_boolean(sc.cover()[c],
                                                sc.outcome_count(), std::move(bits)));
  }
  // thresholded floats carry no exactness guarantee; left raw for the caller
  return EmpiricalModel::make_raw(model.scenario, std::move(tables));
}

RationalizeOutcome rationalize(const BornModel& model,
                               std::uint64_t max_denominator) {
  std::vector<Distribution> tables;
  const Scenario& sc = *model.scenario;
  for (std::size_t c = 0; c < sc.cover().size(); ++c) {
    std::vector<Rational> weights;
    weights.reserve(model.tables[c].size());
    Rational sum = 0;
    for (double w : model.tables[c]) {
      Rational r = approximate_rational(w, max_denominator);
      if (r < 0) r = 0;
      sum += r;
      weights.push_back(std::move(r));
    }
    if (sum != 1)
      return {std::nullopt,
              "table " + std::to_string(c) + " rationalizes to total " +
                  to_string(sum) + ", not 1"};
    tables.push_back(Distribution::make(Semiring::NonNegRational, sc.cover()[c],
                                        sc.outcome_count(), std::move(weights)));
  }
  try {
    return {EmpiricalModel::make(model.scenario, std::move(tables)), ""};
  } catch (const std::invalid_argument& e) {
    return {std::nullopt, e.what()};
  }
}

CMatrix read_cmatrix(std::istream& in) {
  Eigen::Index dim = 0;
  if (!(in >> dim) || dim <= 0)
    throw std::invalid_argument("matrix file: bad dimension header");
  CMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      std::string tok;
      if (!(in >> tok))
        throw std::invalid_argument("matrix file: missing entries");
      const auto comma = tok.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("matrix file: entry is not 're,im': " + tok);
      m(i, j) = std::complex<double>(std::stod(tok.substr(0, comma)),
                                     std::stod(tok.substr(comma + 1)));
    }
  return m;
}

void write_cmatrix(std::ostream& out, const CMatrix& m) {
  out << m.rows() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j).real() << ',' << m(i, j).imag();
    }
    out << '\n';
  }
}

}  // namespace ctx
