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

#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qrepsim/channel.hpp"
#include "qrepsim/density_matrix.hpp"
#include "qrepsim/noise.hpp"

using namespace qrepsim;

namespace {

double dist(const Matrix& a, const Matrix& b) { return operator_norm(a - b); }

Matrix proj(int b) {
  Matrix p = Matrix::Zero(2, 2);
  p(b, b) = 1.0;
  return p;
}

}  // namespace

TEST(Vectorization, ColumnStackingKnownAnswer) {
  Matrix a(2, 2);
  a << 1, 2, 3, 4;
  const Vector v = vec(a);
  EXPECT_EQ(v(0), cplx(1));
  EXPECT_EQ(v(1), cplx(3));
  EXPECT_EQ(v(2), cplx(2));
  EXPECT_EQ(v(3), cplx(4));
  EXPECT_EQ(dist(unvec(v, 2), a), 0.0);

  // vec(E rho F) = (F^T (x) E) vec(rho)
  std::mt19937_64 rng(7);
  const Matrix e = oracle::random_unitary(2, rng);
  const Matrix f = oracle::random_unitary(2, rng);
  const Matrix rho = oracle::random_state(2, 2, rng);
  EXPECT_LT((vec(e * rho * f) - kron(f.transpose(), e) * vec(rho)).norm(), 1e-14);
  // A single Kraus operator gives conj(E) (x) E.
  EXPECT_LT(dist(Channel::unitary(e).superop(), kron(e.conjugate(), e)), 1e-14);
}

TEST(DensityMatrix, RejectsInvalidInput) {
  Matrix m = Matrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix::from_matrix(m), NumericalError);  // trace 2
  Matrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix::from_matrix(neg), NumericalError);
  Matrix herm(2, 2);
  herm << 0.5, 0.1, 0.3, 0.5;
  EXPECT_THROW(DensityMatrix::from_matrix(herm), NumericalError);
  EXPECT_THROW(DensityMatrix::from_matrix(Matrix::Identity(3, 3) / 3.0), std::invalid_argument);
  EXPECT_NO_THROW(DensityMatrix::from_matrix(0.4 * proj(0), DensityMatrix::Normalization::kSubnormalized));
}

TEST(PartialTrace, Examples) {
  const DensityMatrix phi = bell_state(Bell::kPhiPlus);
  const std::array<std::size_t, 1> keep0{0};
  const std::array<std::size_t, 1> keep1{1};
  EXPECT_LT(dist(partial_trace(phi, keep0).matrix(), Matrix::Identity(2, 2) / 2.0), 1e-15);

  const std::array<int, 2> bits{0, 1};
  EXPECT_LT(dist(partial_trace(DensityMatrix::basis(bits), keep0).matrix(), proj(0)), 1e-15);
  EXPECT_LT(dist(partial_trace(DensityMatrix::basis(bits), keep1).matrix(), proj(1)), 1e-15);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = DensityMatrix::from_matrix(oracle::random_state(4, 2, rng));
    const auto b = DensityMatrix::from_matrix(oracle::random_state(2, 2, rng));
    const std::array<std::size_t, 2> keep_a{0, 1};
    EXPECT_LT(dist(partial_trace(tensor(a, b), keep_a).matrix(), a.matrix()), 1e-13);
    const std::array<std::size_t, 1> keep_b{2};
    EXPECT_LT(dist(partial_trace(tensor(a, b), keep_b).matrix(), b.matrix()), 1e-13);
  }
  EXPECT_THROW(partial_trace(phi, std::array<std::size_t, 1>{2}), std::out_of_range);
  EXPECT_THROW(partial_trace(phi, std::array<std::size_t, 2>{0, 0}), std::invalid_argument);
}

TEST(PartialTrace, OrderingMatchesOracle) {
  std::mt19937_64 rng(5);
  const Matrix rho = oracle::random_state(8, 3, rng);
  const std::vector<std::size_t> keep{2, 0};
  EXPECT_LT(dist(partial_trace(rho, 3, keep), oracle::partial_trace(rho, 3, {2, 0})), 1e-14);
}

TEST(BellStates, OrthonormalAndExact) {
  const Bell all[] = {Bell::kPhiPlus, Bell::kPhiMinus, Bell::kPsiPlus, Bell::kPsiMinus};
  for (auto a : all)
    for (auto b : all) {
      const cplx overlap = bell_vector(a).dot(bell_vector(b));
      EXPECT_NEAR(std::abs(overlap), a == b ? 1.0 : 0.0, 1e-15);
    }
  const Vector phi = bell_vector(Bell::kPhiPlus);
  EXPECT_EQ(phi(0), cplx(1.0 / std::sqrt(2.0)));
  EXPECT_EQ(phi(3), cplx(1.0 / std::sqrt(2.0)));
  EXPECT_EQ(phi(1), cplx(0.0));
}

TEST(Fidelity, Examples) {
  EXPECT_NEAR(entanglement_fidelity(bell_state(Bell::kPhiPlus)), 1.0, 1e-15);
  EXPECT_NEAR(entanglement_fidelity(DensityMatrix::maximally_mixed(2)), 0.25, 1e-15);
  EXPECT_NEAR(entanglement_fidelity(werner_state(0.8)), 0.8, 1e-15);
  EXPECT_LT(dist(werner_state(1.0).matrix(), bell_state(Bell::kPhiPlus).matrix()), 1e-15);
  EXPECT_LT(dist(werner_state(0.25).matrix(), Matrix::Identity(4, 4) / 4.0), 1e-15);
  const DensityMatrix half = binary_state(0.5);
  EXPECT_NEAR(entanglement_fidelity(half), 0.5, 1e-15);
  // Dephased Bell pair: no coherence between |00> and |11>.
  EXPECT_NEAR(std::abs(half.matrix()(0, 3)), 0.0, 1e-15);
  EXPECT_THROW(werner_state(1.1), std::invalid_argument);
  EXPECT_THROW(binary_state(-0.1), std::invalid_argument);
  EXPECT_THROW(entanglement_fidelity(DensityMatrix::maximally_mixed(1)), std::invalid_argument);
}

TEST(Fidelity, LinearInState) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Matrix a = oracle::random_state(4, 4, rng);
    const Matrix b = oracle::random_state(4, 2, rng);
    const double w = 0.3;
    const double mixed = entanglement_fidelity(DensityMatrix::from_matrix(w * a + (1 - w) * b));
    const double sum = w * entanglement_fidelity(DensityMatrix::from_matrix(a)) +
                       (1 - w) * entanglement_fidelity(DensityMatrix::from_matrix(b));
    EXPECT_NEAR(mixed, sum, 1e-14);
    EXPECT_NEAR(entanglement_fidelity(DensityMatrix::from_matrix(a)), oracle::fidelity(a), 1e-14);
  }
}

TEST(KrausToChannel, Examples) {
  const Channel id = kraus_to_channel(KrausSet{{pauli::I()}});
  EXPECT_LT(dist(id.superop(), Matrix::Identity(4, 4)), 1e-15);
  EXPECT_TRUE(id.trace_preserving());

  const Channel full = kraus_to_channel(KrausSet{{std::sqrt(0.5) * pauli::I(), std::sqrt(0.5) * pauli::Z()}});
  std::mt19937_64 rng(1);
  const Matrix out = full.apply(Matrix(oracle::random_state(2, 2, rng)));
  EXPECT_NEAR(std::abs(out(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out(1, 0)), 0.0, 1e-15);

  const Channel meas = kraus_to_channel(KrausSet{{proj(0), proj(1)}});
  EXPECT_TRUE(meas.trace_preserving());
  EXPECT_LT(dist(compose(meas, meas).superop(), meas.superop()), 1e-15);

  EXPECT_THROW(kraus_to_channel(KrausSet{{pauli::I(), Matrix::Identity(4, 4)}}), std::invalid_argument);
  EXPECT_THROW(kraus_to_channel(KrausSet{{pauli::I(), pauli::X()}}), NumericalError);
  const Channel branch = kraus_to_channel(KrausSet{{proj(0)}});
  EXPECT_FALSE(branch.trace_preserving());
  EXPECT_TRUE(branch.is_trace_nonincreasing(1e-10));
}

TEST(ChannelToKraus, Examples) {
  const KrausSet id = channel_to_kraus(Channel::identity(1));
  ASSERT_EQ(id.operators.size(), 1u);
  const Matrix k = id.operators[0];
  EXPECT_LT(dist(k * k.adjoint(), pauli::I()), 1e-14);
  EXPECT_LT(dist(k / k(0, 0), pauli::I()), 1e-14);

  const Channel full = kraus_to_channel(KrausSet{{std::sqrt(0.5) * pauli::I(), std::sqrt(0.5) * pauli::Z()}});
  const KrausSet ops = channel_to_kraus(full);
  ASSERT_EQ(ops.operators.size(), 2u);
  for (const auto& e : ops.operators) {
    // Each operator lies in span{I, Z}/sqrt(2): diagonal with |entries|^2 summing to 1.
    EXPECT_NEAR(std::abs(e(0, 1)) + std::abs(e(1, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::norm(e(0, 0)) + std::norm(e(1, 1)), 1.0, 1e-14);
  }

  Matrix bad = Matrix::Identity(4, 4);
  bad(0, 0) = -1.0;
  EXPECT_THROW(channel_to_kraus(Channel(2, bad, false)), NumericalError);
}

// Randomized channel algebra: CP, TP, round trip, embedding.
TEST(ChannelProperties, RandomCptpMaps) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const int qubits = 1 + trial % 2;
    const int dim = 1 << qubits;
    const int rank = 1 + trial % 4;
    const auto ops = oracle::random_channel(dim, rank, rng);
    KrausSet set;
    for (const auto& e : ops) set.operators.push_back(e);
    const Channel c = kraus_to_channel(set);
    EXPECT_TRUE(c.trace_preserving());
    EXPECT_TRUE(c.is_completely_positive(1e-10));
    EXPECT_TRUE(c.is_trace_preserving(1e-10));
    const Channel back = kraus_to_channel(channel_to_kraus(c));
    EXPECT_LT(operator_norm(back.superop() - c.superop()), 1e-10);

    const Matrix rho = oracle::random_state(dim, dim, rng);
    Matrix expected = Matrix::Zero(dim, dim);
    for (const auto& e : ops) expected += e * rho * e.adjoint();
    EXPECT_LT(dist(c.apply(rho), expected), 1e-12);

    // Embedded action agrees with the brute-force lifted Kraus sum.
    const int n = 3;
    std::vector<std::size_t> targets;
    std::vector<int> otargets;
    for (int q = 0; q < qubits; ++q) {
      targets.push_back(static_cast<std::size_t>((trial + 2 * q) % n));
      otargets.push_back((trial + 2 * q) % n);
    }
    const Matrix big = oracle::random_state(8, 3, rng);
    EXPECT_LT(dist(apply_local(c, targets, big, n), oracle::kraus(big, ops, otargets, n)), 1e-12);
  }
}

TEST(Compose, Examples) {
  std::mt19937_64 rng(9);
  const Matrix u = oracle::random_unitary(2, rng);
  const Channel c = Channel::unitary(u);
  EXPECT_LT(dist(compose(c, Channel::identity(1)).superop(), c.superop()), 1e-15);

  const double gamma = 37.0;
  const Channel d12 = compose(dephase(gamma, 1e-3), dephase(gamma, 2.5e-3));
  EXPECT_LT(dist(d12.superop(), dephase(gamma, 3.5e-3).superop()), 1e-15);

  const Channel rot = Channel::unitary(oracle::rot(oracle::Y(), 0.7));
  const Channel meas = kraus_to_channel(KrausSet{{proj(0), proj(1)}});
  EXPECT_GT(dist(compose(rot, meas).superop(), compose(meas, rot).superop()), 0.1);
  EXPECT_THROW(compose(Channel::identity(1), Channel::identity(2)), std::invalid_argument);
}

TEST(DephasingSemigroup, Randomized) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double gamma = 100 * u(rng);
    const double t1 = 0.05 * u(rng);
    const double t2 = 0.05 * u(rng);
    const Channel lhs = compose(dephase(gamma, t1), dephase(gamma, t2));
    EXPECT_LT(operator_norm(lhs.superop() - dephase(gamma, t1 + t2).superop()), 1e-10);
    EXPECT_TRUE(lhs.is_completely_positive(1e-10));
  }
}

TEST(Embed, Examples) {
  const std::array<std::size_t, 1> t0{0};
  EXPECT_LT(dist(embed(Channel::identity(1), t0, 3).superop(), Matrix::Identity(64, 64)), 1e-15);

  const std::array<std::size_t, 1> t1{1};
  const Channel x = embed(Channel::unitary(pauli::X()), t1, 2);
  const std::array<int, 2> b00{0, 0};
  const std::array<int, 2> b01{0, 1};
  EXPECT_LT(dist(x.apply(DensityMatrix::basis(b00).matrix()), DensityMatrix::basis(b01).matrix()), 1e-15);

  const Channel cmz = Channel::unitary(controlled_minus_z_matrix());
  const std::array<std::size_t, 2> fwd{0, 1};
  const std::array<std::size_t, 2> rev{1, 0};
  EXPECT_GT(dist(embed(cmz, fwd, 2).superop(), embed(cmz, rev, 2).superop()), 1.0);

  EXPECT_THROW(embed(Channel::identity(1), std::array<std::size_t, 1>{3}, 3), std::out_of_range);
  EXPECT_THROW(embed(Channel::identity(2), std::array<std::size_t, 2>{1, 1}, 3), std::invalid_argument);
}

TEST(TensorProduct, MatchesKron) {
  std::mt19937_64 rng(21);
  const Matrix a = oracle::random_unitary(2, rng);
  const Matrix b = oracle::random_unitary(4, rng);
  const Channel t = tensor_product(Channel::unitary(a), Channel::unitary(b));
  EXPECT_LT(dist(t.superop(), Channel::unitary(kron(a, b)).superop()), 1e-13);
}

TEST(ConstantChannel, Examples) {
  const std::array<int, 2> b00{0, 0};
  const DensityMatrix zero = DensityMatrix::basis(b00);
  const Channel c = constant_channel(zero);
  EXPECT_TRUE(c.trace_preserving());
  EXPECT_TRUE(c.is_completely_positive(1e-12));
  EXPECT_LT(dist(c.apply(Matrix::Identity(4, 4) / 4.0), zero.matrix()), 1e-15);

  const Channel w = constant_channel(werner_state(0.9));
  EXPECT_LT(dist(w.apply(zero.matrix()), werner_state(0.9).matrix()), 1e-15);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    const Matrix r1 = oracle::random_state(4, 2, rng);
    const Matrix r2 = oracle::random_state(4, 4, rng);
    EXPECT_LT(dist(w.apply(r1), w.apply(r2)), 1e-12);
  }
}

TEST(ClassicallyControlled, SelectsBranchByRecord) {
  const std::array<Channel, 2> branches{Channel::identity(1), Channel::unitary(pauli::X())};
  const Channel c = classically_controlled(branches, 1);
  EXPECT_TRUE(c.trace_preserving());
  const std::array<int, 2> r1t0{1, 0};
  const std::array<int, 2> r1t1{1, 1};
  const std::array<int, 2> r0t0{0, 0};
  EXPECT_LT(dist(c.apply(DensityMatrix::basis(r1t0).matrix()), DensityMatrix::basis(r1t1).matrix()), 1e-15);
  EXPECT_LT(dist(c.apply(DensityMatrix::basis(r0t0).matrix()), DensityMatrix::basis(r0t0).matrix()), 1e-15);
}

TEST(Serialization, ExactRoundTrip) {
  std::mt19937_64 rng(99);
  const auto ops = oracle::random_channel(4, 3, rng);
  KrausSet set;
  for (const auto& e : ops) set.operators.push_back(e);
  const Channel c = kraus_to_channel(set);
  const Channel back = deserialize(serialize(c));
  EXPECT_EQ(back.dim(), c.dim());
  EXPECT_EQ(back.trace_preserving(), c.trace_preserving());
  EXPECT_TRUE((back.superop().array() == c.superop().array()).all());
  EXPECT_EQ(serialize(c).substr(0, 15), "qrepsim-channel");
  EXPECT_THROW(deserialize("bogus"), std::invalid_argument);
}
