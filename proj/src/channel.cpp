// Copyright 2026 The qrepsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrepsim/channel.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qrepsim {

namespace {

// Maps local (target) indices and the complementary "rest" indices of an
// n-qubit register onto full register indices.
struct IndexSplit {
  std::vector<std::size_t> local_offset;
  std::vector<std::size_t> rest_offset;

  IndexSplit(std::span<const std::size_t> targets, std::size_t n) {
    const std::size_t k = targets.size();
    local_offset.resize(std::size_t{1} << k);
    for (std::size_t loc = 0; loc < local_offset.size(); ++loc) {
      std::size_t idx = 0;
      for (std::size_t p = 0; p < k; ++p)
        if (loc & (std::size_t{1} << (k - 1 - p))) idx |= std::size_t{1} << (n - 1 - targets[p]);
      local_offset[loc] = idx;
    }
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < n; ++q) {
      bool is_target = false;
      for (auto t : targets) is_target = is_target || t == q;
      if (!is_target) rest.push_back(q);
    }
    rest_offset.resize(std::size_t{1} << rest.size());
    for (std::size_t r = 0; r < rest_offset.size(); ++r) {
      std::size_t idx = 0;
      for (std::size_t p = 0; p < rest.size(); ++p)
        if (r & (std::size_t{1} << p)) idx |= std::size_t{1} << (n - 1 - rest[p]);
      rest_offset[r] = idx;
    }
  }
};

Eigen::Index ix(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

Channel::Channel(std::size_t dim, Matrix superop, bool trace_preserving)
    : dim_(dim), superop_(std::move(superop)), trace_preserving_(trace_preserving) {
  if (!is_power_of_two(dim_)) throw std::invalid_argument("channel dimension must be a power of two");
  if (static_cast<std::size_t>(superop_.rows()) != dim_ * dim_ || superop_.rows() != superop_.cols())
    throw std::invalid_argument("superoperator shape does not match dimension");
}

Channel Channel::identity(std::size_t num_qubits) {
  const std::size_t d = std::size_t{1} << num_qubits;
  return Channel(d, Matrix::Identity(ix(d * d), ix(d * d)), true);
}

Channel Channel::unitary(const Matrix& u) { return kraus_to_channel(KrausSet{{u}}); }

Matrix Channel::choi() const {
  const std::size_t d = dim_;
  Matrix j(ix(d * d), ix(d * d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t jj = 0; jj < d; ++jj)
      for (std::size_t o1 = 0; o1 < d; ++o1)
        for (std::size_t o2 = 0; o2 < d; ++o2)
          j(ix(i * d + o1), ix(jj * d + o2)) = superop_(ix(o1 + o2 * d), ix(i + jj * d));
  return j;
}

Matrix Channel::apply(const Matrix& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != dim_) throw std::invalid_argument("state dimension mismatch");
  return unvec(superop_ * vec(rho), dim_);
}

DensityMatrix Channel::apply(const DensityMatrix& rho) const {
  const auto norm = (trace_preserving_ && rho.is_normalized()) ? DensityMatrix::Normalization::kUnit
                                                               : DensityMatrix::Normalization::kSubnormalized;
  return DensityMatrix::from_matrix(apply(rho.matrix()), norm);
}

bool Channel::is_completely_positive(double tol) const {
  const Matrix j = choi();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (j + j.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol && (j - j.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

namespace {
Matrix output_traced_choi(const Channel& c) {
  const std::size_t d = c.dim();
  const Matrix& s = c.superop();
  Matrix m = Matrix::Zero(ix(d), ix(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t o = 0; o < d; ++o) m(ix(i), ix(j)) += s(ix(o + o * d), ix(i + j * d));
  return m;
}
}  // namespace

bool Channel::is_trace_preserving(double tol) const {
  const Matrix m = output_traced_choi(*this);
  return (m - Matrix::Identity(ix(dim_), ix(dim_))).cwiseAbs().maxCoeff() <= tol;
}

bool Channel::is_trace_nonincreasing(double tol) const {
  const Matrix m = output_traced_choi(*this);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff() <= 1.0 + tol;
}

Channel kraus_to_channel(const KrausSet& kraus) {
  if (kraus.operators.empty()) throw std::invalid_argument("empty Kraus set");
  const auto d = kraus.operators.front().rows();
  Matrix s = Matrix::Zero(d * d, d * d);
  Matrix gram = Matrix::Zero(d, d);
  for (const auto& e : kraus.operators) {
    if (e.rows() != d || e.cols() != d) throw std::invalid_argument("Kraus operator dimension mismatch");
    s += kron(e.conjugate(), e);
    gram += e.adjoint() * e;
  }
  const double tol = check_tolerance();
  const Matrix id = Matrix::Identity(d, d);
  const bool tp = (gram - id).cwiseAbs().maxCoeff() <= tol;
  if (!tp) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().maxCoeff() > 1.0 + tol) throw NumericalError("Kraus set is trace-increasing");
  }
  return Channel(static_cast<std::size_t>(d), std::move(s), tp);
}

KrausSet channel_to_kraus(const Channel& channel) {
  const std::size_t d = channel.dim();
  const Matrix j = channel.choi();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (j + j.adjoint()));
  const double tol = check_tolerance();
  if (es.eigenvalues().minCoeff() < -tol)
    throw NumericalError("Choi matrix has negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()) +
                         "; map is not completely positive");
  KrausSet out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lambda = es.eigenvalues()(k);
    if (lambda < 1e-12) continue;
    const Vector v = es.eigenvectors().col(k) * std::sqrt(lambda);
    Matrix e(ix(d), ix(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t o = 0; o < d; ++o) e(ix(o), ix(i)) = v(ix(i * d + o));
    out.operators.push_back(std::move(e));
  }
  if (out.operators.empty()) out.operators.push_back(Matrix::Zero(ix(d), ix(d)));
  return out;
}

Channel compose(const Channel& second, const Channel& first) {
  if (second.dim() != first.dim()) throw std::invalid_argument("compose: dimension mismatch");
  return Channel(first.dim(), second.superop() * first.superop(),
                 first.trace_preserving() && second.trace_preserving());
}

Channel tensor_product(const Channel& a, const Channel& b) {
  const std::size_t na = a.num_qubits();
  const std::size_t nb = b.num_qubits();
  std::vector<std::size_t> ta(na), tb(nb);
  for (std::size_t i = 0; i < na; ++i) ta[i] = i;
  for (std::size_t i = 0; i < nb; ++i) tb[i] = na + i;
  return compose(embed(b, tb, na + nb), embed(a, ta, na + nb));
}

Channel sum(std::span<const Channel> channels) {
  if (channels.empty()) throw std::invalid_argument("sum of zero channels");
  Matrix s = channels.front().superop();
  for (std::size_t i = 1; i < channels.size(); ++i) {
    if (channels[i].dim() != channels.front().dim()) throw std::invalid_argument("sum: dimension mismatch");
    s += channels[i].superop();
  }
  Channel out(channels.front().dim(), std::move(s), false);
  const bool tp = out.is_trace_preserving(check_tolerance());
  return Channel(out.dim(), out.superop(), tp);
}

Matrix apply_local(const Channel& c, std::span<const std::size_t> targets, const Matrix& rho,
                   std::size_t num_qubits) {
  check_targets(targets, num_qubits);
  const std::size_t d = c.dim();
  if (d != (std::size_t{1} << targets.size())) throw std::invalid_argument("channel size does not match targets");
  if (static_cast<std::size_t>(rho.rows()) != (std::size_t{1} << num_qubits))
    throw std::invalid_argument("state size does not match register");
  const IndexSplit split(targets, num_qubits);
  const Matrix& s = c.superop();
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  Vector block(ix(d * d));
  for (auto rr : split.rest_offset) {
    for (auto rc : split.rest_offset) {
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i)
          block(ix(i + j * d)) = rho(ix(rr | split.local_offset[i]), ix(rc | split.local_offset[j]));
      const Vector mapped = s * block;
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i)
          out(ix(rr | split.local_offset[i]), ix(rc | split.local_offset[j])) = mapped(ix(i + j * d));
    }
  }
  return out;
}

Channel embed(const Channel& c, std::span<const std::size_t> targets, std::size_t system_qubits) {
  check_targets(targets, system_qubits);
  if (c.dim() != (std::size_t{1} << targets.size())) throw std::invalid_argument("embed: channel size mismatch");
  const std::size_t d = std::size_t{1} << system_qubits;
  Matrix s(ix(d * d), ix(d * d));
  Matrix basis = Matrix::Zero(ix(d), ix(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      basis(ix(i), ix(j)) = 1.0;
      s.col(ix(i + j * d)) = vec(apply_local(c, targets, basis, system_qubits));
      basis(ix(i), ix(j)) = 0.0;
    }
  return Channel(d, std::move(s), c.trace_preserving());
}

Channel classically_controlled(std::span<const Channel> branches, std::size_t record_qubits) {
  const std::size_t outcomes = std::size_t{1} << record_qubits;
  if (branches.size() != outcomes) throw std::invalid_argument("one branch per record pattern required");
  std::vector<Channel> terms;
  terms.reserve(outcomes);
  for (std::size_t m = 0; m < outcomes; ++m) {
    Matrix p = Matrix::Zero(ix(outcomes), ix(outcomes));
    p(ix(m), ix(m)) = 1.0;
    terms.push_back(tensor_product(kraus_to_channel(KrausSet{{p}}), branches[m]));
  }
  return sum(terms);
}

Channel constant_channel(const DensityMatrix& target) {
  const auto d = static_cast<Eigen::Index>(target.dim());
  const Vector out = vec(target.matrix());
  const Vector id = vec(Matrix::Identity(d, d));
  return Channel(target.dim(), out * id.transpose(), target.is_normalized());
}

namespace {
std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}
double parse_double(const std::string& s) {
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("malformed number '" + s + "' in serialized channel");
  return x;
}
}  // namespace

std::string serialize(const Channel& c) {
  std::ostringstream os;
  os << "qrepsim-channel dim=" << c.dim() << " convention=column-stacking trace_preserving="
     << (c.trace_preserving() ? 1 : 0) << '\n';
  const Matrix& s = c.superop();
  for (Eigen::Index r = 0; r < s.rows(); ++r)
    for (Eigen::Index col = 0; col < s.cols(); ++col)
      os << format_double(s(r, col).real()) << ' ' << format_double(s(r, col).imag()) << '\n';
  return os.str();
}

Channel deserialize(const std::string& text) {
  std::istringstream is(text);
  std::string magic, dim_tok, conv_tok, tp_tok;
  is >> magic >> dim_tok >> conv_tok >> tp_tok;
  if (magic != "qrepsim-channel" || dim_tok.rfind("dim=", 0) != 0 || conv_tok != "convention=column-stacking" ||
      tp_tok.rfind("trace_preserving=", 0) != 0)
    throw std::invalid_argument("unrecognized channel header");
  const auto d = static_cast<std::size_t>(std::stoul(dim_tok.substr(4)));
  const bool tp = tp_tok.substr(17) == "1";
  Matrix s(ix(d * d), ix(d * d));
  for (Eigen::Index r = 0; r < s.rows(); ++r)
    for (Eigen::Index col = 0; col < s.cols(); ++col) {
      std::string re, im;
      if (!(is >> re >> im)) throw std::invalid_argument("truncated channel data");
      s(r, col) = cplx(parse_double(re), parse_double(im));
    }
  return Channel(d, std::move(s), tp);
}

}  // namespace qrepsim
