#include <doctest.h>

#include "liedeconv/wigner.hpp"

#include "liedeconv/group.hpp"
#include "test_support.hpp"

using namespace liedeconv;

TEST_CASE("small-d matches the factorial sum through l = 10") {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const double beta = rng.uniform() * M_PI;
        const auto stack = wigner_d_stack(10, beta);
        for (int l = 0; l <= 10; ++l) {
            const Eigen::MatrixXd ref = testsupport::wigner_d_bruteforce(l, beta);
            CHECK((stack[l] - ref).cwiseAbs().maxCoeff() < 1e-11);
        }
    }
}

TEST_CASE("small-d endpoint values") {
    const auto id = wigner_d_stack(6, 0.0);
    for (int l = 0; l <= 6; ++l)
        CHECK((id[l] - Eigen::MatrixXd::Identity(2 * l + 1, 2 * l + 1)).cwiseAbs().maxCoeff() <
              1e-14);
    // beta = pi flips m -> -m up to sign
    const auto flip = wigner_d_stack(5, M_PI);
    for (int l = 0; l <= 5; ++l) {
        const Eigen::MatrixXd ref = testsupport::wigner_d_bruteforce(l, M_PI);
        CHECK((flip[l] - ref).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("small-d stays orthogonal at high degree") {
    Rng rng(11);
    for (int rep = 0; rep < 5; ++rep) {
        const double beta = 1e-3 + rng.uniform() * (M_PI - 2e-3);
        const auto stack = wigner_d_stack(31, beta);
        const auto& d = stack[31];
        CHECK((d * d.transpose() - Eigen::MatrixXd::Identity(63, 63)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("Euler extraction reproduces the rotation") {
    Rng rng(13);
    const GroupSpec so3(GroupKind::SO3);
    for (int rep = 0; rep < 200; ++rep) {
        const GroupElement g = haar_sample(so3, rng);
        const auto ang = euler_zyz(g);
        Eigen::Matrix3d R;
        const double ca = std::cos(ang[0]), sa = std::sin(ang[0]);
        const double cb = std::cos(ang[1]), sb = std::sin(ang[1]);
        const double cg = std::cos(ang[2]), sg = std::sin(ang[2]);
        Eigen::Matrix3d Rz1, Ry, Rz2;
        Rz1 << ca, -sa, 0, sa, ca, 0, 0, 0, 1;
        Ry << cb, 0, sb, 0, 1, 0, -sb, 0, cb;
        Rz2 << cg, -sg, 0, sg, cg, 0, 0, 0, 1;
        R = Rz1 * Ry * Rz2;
        CHECK((R - rotation_matrix(g)).cwiseAbs().maxCoeff() < 1e-12);
    }
    // degenerate beta = 0 and beta = pi
    const GroupElement rz = GroupElement::so3(std::cos(0.15), 0, 0, std::sin(0.15));
    const auto a0 = euler_zyz(rz);
    CHECK(a0[1] == 0.0);
    CHECK(std::abs(a0[0] - 0.3) < 1e-12);
    const GroupElement flip = group_op(rz, GroupElement::so3(0, 0, 1, 0));  // times Ry(pi)
    const auto a1 = euler_zyz(flip);
    CHECK(std::abs(a1[1] - M_PI) < 1e-12);
    CHECK((rotation_matrix(flip) -
           rotation_matrix(GroupElement::so3(std::cos(a1[0] / 2), 0, 0, std::sin(a1[0] / 2))) *
               rotation_matrix(GroupElement::so3(0, 0, 1, 0)))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("l = 1 Wigner-D equals the spherical-basis conjugation of R") {
    Rng rng(17);
    const GroupSpec so3(GroupKind::SO3);
    const Eigen::Matrix3cd U = testsupport::spherical_basis_map();
    const IrrepDescriptor l1 = make_irrep(so3, {1, 0});
    for (int rep = 0; rep < 100; ++rep) {
        const GroupElement g = haar_sample(so3, rng);
        const Eigen::Matrix3cd oracle = U.adjoint() * rotation_matrix(g) * U;
        const Eigen::MatrixXcd D = irrep_matrix(l1, g);
        CHECK((D - oracle).cwiseAbs().maxCoeff() < 1e-12);
    }
}
