#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "liedeconv/common.hpp"
#include "liedeconv/rng.hpp"

namespace liedeconv {

enum class GroupKind { Torus1, Torus2, SO3 };

/// One of the supported compact groups together with its manifold dimension.
struct GroupSpec {
    GroupKind kind = GroupKind::Torus1;
    int dim = 1;

    GroupSpec() = default;
    explicit GroupSpec(GroupKind k) : kind(k), dim(k == GroupKind::Torus1 ? 1 : k == GroupKind::Torus2 ? 2 : 3) {}

    bool operator==(const GroupSpec& o) const { return kind == o.kind; }
    bool operator!=(const GroupSpec& o) const { return kind != o.kind; }

    std::string name() const;
};

GroupSpec parse_group(const std::string& name);

/// Group element. Torus coordinates live in [0,1); SO(3) elements are unit
/// quaternions (w,x,y,z), sign-canonicalized so the first nonzero component
/// is positive.
struct GroupElement {
    GroupKind kind = GroupKind::Torus1;
    std::array<double, 4> data{0.0, 0.0, 0.0, 0.0};

    static GroupElement torus1(double x);
    static GroupElement torus2(double x, double y);
    static GroupElement so3(double w, double x, double y, double z);  // normalizes + canonicalizes
};

GroupElement identity(const GroupSpec& group);
GroupElement group_op(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);
GroupElement haar_sample(const GroupSpec& group, Rng& rng);

/// 3x3 rotation matrix of an SO(3) element.
Eigen::Matrix3d rotation_matrix(const GroupElement& g);

/// zyz Euler angles (alpha, beta, gamma) of an SO(3) element,
/// beta in [0, pi], reproducing rotation_matrix(g) exactly.
std::array<double, 3> euler_zyz(const GroupElement& g);

/// Rotation angle in [0, pi] of an SO(3) element.
double rotation_angle(const GroupElement& g);

/// One irreducible representation: group-specific index, dimension and
/// Laplace-Beltrami eigenvalue. Torus irreps have dim 1 and lambda = l^2
/// (resp. l1^2 + l2^2); SO(3) irreps have dim 2l+1 and lambda = l(l+1).
struct IrrepDescriptor {
    GroupKind kind = GroupKind::Torus1;
    std::array<int, 2> index{0, 0};  // second entry unused except for Torus2
    int dim = 1;
    double lambda = 0.0;

    bool trivial() const { return lambda == 0.0; }
    std::string label() const;

    bool operator==(const IrrepDescriptor& o) const {
        return kind == o.kind && index == o.index;
    }
};

IrrepDescriptor make_irrep(const GroupSpec& group, const std::array<int, 2>& index);

/// All irreps with lambda < lambda_cutoff (strict), ordered by ascending
/// lambda with lexicographic index tie-break. Deterministic.
std::vector<IrrepDescriptor> enumerate_irreps(const GroupSpec& group, double lambda_cutoff);

/// (|{pi : lambda < T}|, sum of d_pi^2 over that set).
std::pair<std::int64_t, std::int64_t> spectral_count(const GroupSpec& group, double T);

/// Unitary matrix pi(g), d_pi x d_pi. SO(3) uses Wigner-D matrices in the zyz
/// convention with rows/columns indexed m = -l..l ascending.
Eigen::MatrixXcd irrep_matrix(const IrrepDescriptor& irrep, const GroupElement& g);

}  // namespace liedeconv
