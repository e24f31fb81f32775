#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "rdmgeo/spinops.hpp"

using namespace rdmgeo;
using Catch::Approx;

namespace {

Eigen::VectorXd dense_eigenvalues(const BandedHermitian& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

// Projection of sum_i A_i for two qubits onto the symmetric subspace
// {|00>, (|01>+|10>)/sqrt(2), |11>}, with the Dicke ordering k = -2, 0, 2.
Eigen::Matrix3cd symmetric_two_qubit(const Eigen::Matrix2cd& a) {
    Eigen::Matrix4cd full = Eigen::Matrix4cd::Zero();
    Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    auto kron = [](const Eigen::Matrix2cd& l, const Eigen::Matrix2cd& r) {
        Eigen::Matrix4cd out;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = l(i, j) * r;
        return out;
    };
    full = kron(a, id) + kron(id, a);
    // basis ordering |11>, (|01>+|10>)/sqrt(2), |00> where bit set = spin down;
    // (k = -2 is both spins down = |11> in bit convention)
    Eigen::Matrix<cplx, 4, 3> basis = Eigen::Matrix<cplx, 4, 3>::Zero();
    basis(3, 0) = 1.0;
    basis(1, 1) = 1.0 / std::sqrt(2.0);
    basis(2, 1) = 1.0 / std::sqrt(2.0);
    basis(0, 2) = 1.0;
    return basis.adjoint() * full * basis;
}

} // namespace

TEST_CASE("Jz is diagonal with eigenvalues -N..N step 2") {
    auto jz = build_operator(OperatorKind::jz, 2);
    REQUIRE(jz.dim == 3);
    REQUIRE(jz.bandwidth == 0);
    CHECK(jz.bands[0][0] == cplx(-2.0, 0.0));
    CHECK(jz.bands[0][1] == cplx(0.0, 0.0));
    CHECK(jz.bands[0][2] == cplx(2.0, 0.0));
}

TEST_CASE("Jx at N=2 matches the symmetric-subspace projection of X1+X2") {
    auto jx = build_operator(OperatorKind::jx, 2);
    REQUIRE(jx.bandwidth == 1);
    CHECK(jx.bands[1][0].real() == Approx(std::sqrt(2.0)).margin(1e-14));
    CHECK(jx.bands[1][1].real() == Approx(std::sqrt(2.0)).margin(1e-14));

    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    Eigen::Matrix3cd expected = symmetric_two_qubit(x);
    Eigen::Matrix3cd got = jx.to_dense();
    CHECK((expected - got).cwiseAbs().maxCoeff() < 1e-14);

    auto vals = dense_eigenvalues(jx);
    CHECK(vals[0] == Approx(-2.0).margin(1e-12));
    CHECK(vals[1] == Approx(0.0).margin(1e-12));
    CHECK(vals[2] == Approx(2.0).margin(1e-12));
}

TEST_CASE("Jy and Jz at N=2 match their two-qubit projections") {
    Eigen::Matrix2cd y, z;
    y << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
    z << 1, 0, 0, -1;
    CHECK((symmetric_two_qubit(y) - build_operator(OperatorKind::jy, 2).to_dense()).cwiseAbs().maxCoeff() <
          1e-14);
    CHECK((symmetric_two_qubit(z) - build_operator(OperatorKind::jz, 2).to_dense()).cwiseAbs().maxCoeff() <
          1e-14);
}

TEST_CASE("identity operator") {
    auto id = build_operator(OperatorKind::identity, 5);
    REQUIRE(id.dim == 6);
    REQUIRE(id.bandwidth == 0);
    for (auto v : id.bands[0]) CHECK(v == cplx(1.0, 0.0));
}

TEST_CASE("build_operator rejects n < 1") {
    CHECK_THROWS_AS(build_operator(OperatorKind::jx, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_operator(OperatorKind::jz2, -3), std::invalid_argument);
}

TEST_CASE("squares are pentadiagonal and real") {
    for (auto k : {OperatorKind::jx2, OperatorKind::jy2, OperatorKind::jz2}) {
        auto op = build_operator(k, 6);
        CHECK(op.bandwidth == 2);
        CHECK(op.is_real);
    }
    CHECK_FALSE(build_operator(OperatorKind::jy, 6).is_real);
    CHECK(build_operator(OperatorKind::jx, 6).is_real);
}

TEST_CASE("Ising Hamiltonian at N=4, lambda=(1,0,0) has spectrum k^2/N") {
    auto h = assemble_hamiltonian(model_preset(Model::ising).spec(4, {1.0, 0.0, 0.0}));
    auto vals = dense_eigenvalues(h);
    const double expect[] = {0.0, 1.0, 1.0, 4.0, 4.0};
    for (int i = 0; i < 5; ++i) CHECK(vals[i] == Approx(expect[i]).margin(1e-12));
}

TEST_CASE("zero coefficients give the zero matrix") {
    auto h = assemble_hamiltonian(model_preset(Model::xy).spec(7, {0.0, 0.0, 0.0}));
    CHECK(h.max_abs_entry() == 0.0);
    CHECK(h.bandwidth == 2); // max over the included terms
    CHECK(h.is_real);
}

TEST_CASE("XY Hamiltonian at N=4, lambda=(1,1,0) is diagonal (24 - k^2)/4") {
    auto h = assemble_hamiltonian(model_preset(Model::xy).spec(4, {1.0, 1.0, 0.0}));
    const double expect[] = {2.0, 5.0, 6.0, 5.0, 2.0};
    for (int i = 0; i < 5; ++i) CHECK(h.bands[0][i].real() == Approx(expect[i]).margin(1e-13));
    // off-diagonal bands cancel exactly between Jx^2 and Jy^2
    for (std::size_t d = 1; d <= h.bandwidth; ++d)
        for (auto v : h.bands[d]) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("realness flag false only for a live linear Jy term") {
    HamiltonianSpec spec{{OperatorKind::jy, OperatorKind::jz, OperatorKind::jx}, {0.5, 0.1, 0.2}, 6};
    CHECK_FALSE(assemble_hamiltonian(spec).is_real);
    spec.lambda = {0.0, 0.1, 0.2};
    CHECK(assemble_hamiltonian(spec).is_real);
    // quadratic Jy^2 is real even with nonzero coefficient
    CHECK(assemble_hamiltonian(model_preset(Model::xy).spec(6, {0.3, 0.9, -1.0})).is_real);
}

TEST_CASE("model presets") {
    auto ising = model_preset("ising");
    CHECK(ising.terms[0] == OperatorKind::jx2);
    CHECK(ising.terms[1] == OperatorKind::jz);
    CHECK(ising.terms[2] == OperatorKind::jx);
    auto xy = model_preset("xy");
    CHECK(xy.terms[0] == OperatorKind::jx2);
    CHECK(xy.terms[1] == OperatorKind::jy2);
    CHECK(xy.terms[2] == OperatorKind::jz);
    try {
        model_preset("heisenberg");
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("ising") != std::string::npos);
        CHECK(msg.find("xy") != std::string::npos);
    }
}

TEST_CASE("Hermitian storage: main diagonal exactly real") {
    for (auto k : {OperatorKind::jx, OperatorKind::jy, OperatorKind::jz, OperatorKind::jx2,
                   OperatorKind::jy2, OperatorKind::jz2}) {
        auto op = build_operator(k, 9);
        for (auto v : op.bands[0]) CHECK(v.imag() == 0.0);
    }
}

TEST_CASE("commutator [Jx, Jy] = 2i Jz at machine precision") {
    // entries of Jx Jy grow like N^2/4, so the attainable bound scales with it
    for (long n : {1L, 2L, 3L, 17L, 40L, 400L, 2000L}) {
        auto jx = build_operator(OperatorKind::jx, n);
        auto jy = build_operator(OperatorKind::jy, n);
        auto jz = build_operator(OperatorKind::jz, n);
        const auto dim = static_cast<Eigen::Index>(n) + 1;
        double worst = 0.0;
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim), t1, t2, t3;
        for (Eigen::Index j = 0; j < dim; ++j) {
            e[j] = 1.0;
            jy.matvec(e, t1);
            jx.matvec(t1, t2); // Jx Jy e
            jx.matvec(e, t1);
            jy.matvec(t1, t3); // Jy Jx e
            jz.matvec(e, t1);
            worst = std::max(worst, (t2 - t3 - cplx(0.0, 2.0) * t1).cwiseAbs().maxCoeff());
            e[j] = 0.0;
        }
        const double scale = 0.25 * static_cast<double>(n) * static_cast<double>(n);
        CHECK(worst <= std::max(1e-12, 64.0 * std::numeric_limits<double>::epsilon() * scale));
    }
}

TEST_CASE("Casimir Jx^2 + Jy^2 + Jz^2 = N(N+2) I") {
    for (long n : {2L, 5L, 60L, 2000L}) {
        BandedHermitian sum(static_cast<std::size_t>(n) + 1, 2);
        for (auto k : {OperatorKind::jx2, OperatorKind::jy2, OperatorKind::jz2})
            add_scaled(sum, 1.0, build_operator(k, n));
        const double target = static_cast<double>(n) * static_cast<double>(n + 2);
        double worst = 0.0;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i)
            worst = std::max(worst, std::abs(sum.bands[0][i] - target));
        for (std::size_t d = 1; d <= 2; ++d)
            for (auto v : sum.bands[d]) worst = std::max(worst, std::abs(v));
        CHECK(worst <= 1e-9 * static_cast<double>(n) * static_cast<double>(n));
    }
}

TEST_CASE("Jz eigenvalues share the parity of N") {
    for (long n : {3L, 4L, 11L, 20L}) {
        auto jz = build_operator(OperatorKind::jz, n);
        for (auto v : jz.bands[0]) {
            const long k = static_cast<long>(std::llround(v.real()));
            CHECK((k - n) % 2 == 0);
        }
    }
}

TEST_CASE("scaling factors: 1 for single-particle, 1/N for two-body") {
    CHECK(scaling_factor(OperatorKind::jx, 10) == 1.0);
    CHECK(scaling_factor(OperatorKind::identity, 10) == 1.0);
    CHECK(scaling_factor(OperatorKind::jx2, 10) == Approx(0.1));
    CHECK(scaling_factor(OperatorKind::jz2, 4) == Approx(0.25));
}
