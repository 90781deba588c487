#include "liedeconv/group.hpp"

#include <algorithm>
#include <cmath>

#include "liedeconv/wigner.hpp"

namespace liedeconv {

namespace {

double wrap_unit(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r -= 1.0;  // guards against floor rounding at the boundary
    return r;
}

void canonicalize_quat(std::array<double, 4>& q) {
    double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    for (auto& v : q) v /= n;
    for (int i = 0; i < 4; ++i) {
        if (q[i] != 0.0) {
            if (q[i] < 0.0)
                for (auto& v : q) v = -v;
            break;
        }
    }
}

void require_same_group(const GroupElement& a, const GroupElement& b) {
    if (a.kind != b.kind) throw ConfigError("group elements belong to different groups");
}

}  // namespace

std::string GroupSpec::name() const {
    switch (kind) {
        case GroupKind::Torus1: return "torus1";
        case GroupKind::Torus2: return "torus2";
        case GroupKind::SO3: return "so3";
    }
    return "?";
}

GroupSpec parse_group(const std::string& name) {
    if (name == "torus1" || name == "T1" || name == "t1") return GroupSpec(GroupKind::Torus1);
    if (name == "torus2" || name == "T2" || name == "t2") return GroupSpec(GroupKind::Torus2);
    if (name == "so3" || name == "SO3") return GroupSpec(GroupKind::SO3);
    throw ConfigError("unknown group '" + name + "' (expected torus1, torus2 or so3)");
}

GroupElement GroupElement::torus1(double x) {
    GroupElement g;
    g.kind = GroupKind::Torus1;
    g.data[0] = wrap_unit(x);
    return g;
}

GroupElement GroupElement::torus2(double x, double y) {
    GroupElement g;
    g.kind = GroupKind::Torus2;
    g.data[0] = wrap_unit(x);
    g.data[1] = wrap_unit(y);
    return g;
}

GroupElement GroupElement::so3(double w, double x, double y, double z) {
    GroupElement g;
    g.kind = GroupKind::SO3;
    g.data = {w, x, y, z};
    canonicalize_quat(g.data);
    return g;
}

GroupElement identity(const GroupSpec& group) {
    GroupElement g;
    g.kind = group.kind;
    if (group.kind == GroupKind::SO3) g.data = {1.0, 0.0, 0.0, 0.0};
    return g;
}

GroupElement group_op(const GroupElement& a, const GroupElement& b) {
    require_same_group(a, b);
    switch (a.kind) {
        case GroupKind::Torus1:
            return GroupElement::torus1(a.data[0] + b.data[0]);
        case GroupKind::Torus2:
            return GroupElement::torus2(a.data[0] + b.data[0], a.data[1] + b.data[1]);
        case GroupKind::SO3: {
            const auto& p = a.data;
            const auto& q = b.data;
            return GroupElement::so3(p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
                                     p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
                                     p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
                                     p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]);
        }
    }
    throw ConfigError("bad group kind");
}

GroupElement inverse(const GroupElement& a) {
    switch (a.kind) {
        case GroupKind::Torus1:
            return GroupElement::torus1(-a.data[0]);
        case GroupKind::Torus2:
            return GroupElement::torus2(-a.data[0], -a.data[1]);
        case GroupKind::SO3:
            return GroupElement::so3(a.data[0], -a.data[1], -a.data[2], -a.data[3]);
    }
    throw ConfigError("bad group kind");
}

GroupElement haar_sample(const GroupSpec& group, Rng& rng) {
    switch (group.kind) {
        case GroupKind::Torus1:
            return GroupElement::torus1(rng.uniform());
        case GroupKind::Torus2: {
            const double x = rng.uniform();
            const double y = rng.uniform();
            return GroupElement::torus2(x, y);
        }
        case GroupKind::SO3: {
            while (true) {
                const double w = rng.normal(), x = rng.normal(), y = rng.normal(), z = rng.normal();
                if (w * w + x * x + y * y + z * z > 1e-12) return GroupElement::so3(w, x, y, z);
            }
        }
    }
    throw ConfigError("bad group kind");
}

Eigen::Matrix3d rotation_matrix(const GroupElement& g) {
    if (g.kind != GroupKind::SO3) throw ConfigError("rotation_matrix requires an SO(3) element");
    const double w = g.data[0], x = g.data[1], y = g.data[2], z = g.data[3];
    Eigen::Matrix3d R;
    R << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
         2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return R;
}

std::array<double, 3> euler_zyz(const GroupElement& g) {
    const Eigen::Matrix3d R = rotation_matrix(g);
    const double sb = std::hypot(R(0, 2), R(1, 2));
    if (sb < 1e-14) {
        if (R(2, 2) > 0.0) return {std::atan2(R(1, 0), R(0, 0)), 0.0, 0.0};
        return {std::atan2(-R(1, 0), R(1, 1)), M_PI, 0.0};
    }
    const double alpha = std::atan2(R(1, 2), R(0, 2));
    const double beta = std::atan2(sb, R(2, 2));
    const double gamma = std::atan2(R(2, 1), -R(2, 0));
    return {alpha, beta, gamma};
}

double rotation_angle(const GroupElement& g) {
    if (g.kind != GroupKind::SO3) throw ConfigError("rotation_angle requires an SO(3) element");
    const double w = std::abs(g.data[0]);
    const double v = std::sqrt(g.data[1] * g.data[1] + g.data[2] * g.data[2] + g.data[3] * g.data[3]);
    return 2.0 * std::atan2(v, w);
}

std::string IrrepDescriptor::label() const {
    switch (kind) {
        case GroupKind::Torus1: return "l=" + std::to_string(index[0]);
        case GroupKind::Torus2:
            return "l=(" + std::to_string(index[0]) + "," + std::to_string(index[1]) + ")";
        case GroupKind::SO3: return "l=" + std::to_string(index[0]);
    }
    return "?";
}

IrrepDescriptor make_irrep(const GroupSpec& group, const std::array<int, 2>& index) {
    IrrepDescriptor d;
    d.kind = group.kind;
    d.index = index;
    switch (group.kind) {
        case GroupKind::Torus1:
            d.index[1] = 0;
            d.dim = 1;
            d.lambda = double(index[0]) * index[0];
            break;
        case GroupKind::Torus2:
            d.dim = 1;
            d.lambda = double(index[0]) * index[0] + double(index[1]) * index[1];
            break;
        case GroupKind::SO3:
            if (index[0] < 0) throw ConfigError("SO(3) irrep index must be >= 0");
            d.index[1] = 0;
            d.dim = 2 * index[0] + 1;
            d.lambda = double(index[0]) * (index[0] + 1);
            break;
    }
    return d;
}

std::vector<IrrepDescriptor> enumerate_irreps(const GroupSpec& group, double lambda_cutoff) {
    if (lambda_cutoff < 0.0) throw ConfigError("lambda_cutoff must be >= 0");
    std::vector<IrrepDescriptor> out;
    switch (group.kind) {
        case GroupKind::Torus1: {
            for (int l = 0; double(l) * l < lambda_cutoff; ++l) {
                out.push_back(make_irrep(group, {l, 0}));
                if (l > 0) out.push_back(make_irrep(group, {-l, 0}));
            }
            break;
        }
        case GroupKind::Torus2: {
            const int lmax = static_cast<int>(std::ceil(std::sqrt(std::max(0.0, lambda_cutoff))));
            for (int l1 = -lmax; l1 <= lmax; ++l1)
                for (int l2 = -lmax; l2 <= lmax; ++l2)
                    if (double(l1) * l1 + double(l2) * l2 < lambda_cutoff)
                        out.push_back(make_irrep(group, {l1, l2}));
            break;
        }
        case GroupKind::SO3: {
            for (int l = 0; double(l) * (l + 1) < lambda_cutoff; ++l)
                out.push_back(make_irrep(group, {l, 0}));
            break;
        }
    }
    std::sort(out.begin(), out.end(), [](const IrrepDescriptor& a, const IrrepDescriptor& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        return a.index < b.index;
    });
    return out;
}

std::pair<std::int64_t, std::int64_t> spectral_count(const GroupSpec& group, double T) {
    if (T <= 0.0) throw ConfigError("spectral_count requires T > 0");
    const auto irreps = enumerate_irreps(group, T);
    std::int64_t sum = 0;
    for (const auto& p : irreps) sum += std::int64_t(p.dim) * p.dim;
    return {static_cast<std::int64_t>(irreps.size()), sum};
}

Eigen::MatrixXcd irrep_matrix(const IrrepDescriptor& irrep, const GroupElement& g) {
    if (irrep.kind != g.kind) throw ConfigError("irrep and element belong to different groups");
    constexpr double two_pi = 6.283185307179586476925287;
    switch (irrep.kind) {
        case GroupKind::Torus1: {
            Eigen::MatrixXcd m(1, 1);
            m(0, 0) = std::polar(1.0, two_pi * irrep.index[0] * g.data[0]);
            return m;
        }
        case GroupKind::Torus2: {
            Eigen::MatrixXcd m(1, 1);
            m(0, 0) = std::polar(1.0, two_pi * (irrep.index[0] * g.data[0] + irrep.index[1] * g.data[1]));
            return m;
        }
        case GroupKind::SO3: {
            const auto ang = euler_zyz(g);
            return wigner_D_stack(irrep.index[0], ang[0], ang[1], ang[2]).back();
        }
    }
    throw ConfigError("bad group kind");
}

}  // namespace liedeconv
