#include "curvadapt/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace curvadapt {

SelfAdjointOperator::SelfAdjointOperator(const Eigen::MatrixXd& m)
    : m_(0.5 * (m + m.transpose())), asymmetry_((m - m.transpose()).cwiseAbs().maxCoeff()) {}

int Spectrum::total_multiplicity() const {
    int n = 0;
    for (const auto& g : groups) n += g.multiplicity;
    return n;
}

const EigenGroup* Spectrum::find(double value, double tol) const {
    for (const auto& g : groups) {
        if (std::abs(g.value - value) <= tol) return &g;
    }
    return nullptr;
}

Spectrum decompose(const SelfAdjointOperator& op, double gap) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix());
    const Eigen::VectorXd& vals = solver.eigenvalues();
    const Eigen::MatrixXd& vecs = solver.eigenvectors();

    Spectrum s;
    Eigen::Index start = 0;
    const Eigen::Index n = vals.size();
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && vals[end] - vals[end - 1] <= gap) ++end;
        EigenGroup g;
        g.multiplicity = static_cast<int>(end - start);
        g.value = vals.segment(start, end - start).mean();
        g.basis = vecs.middleCols(start, end - start);
        s.groups.push_back(std::move(g));
        start = end;
    }

    for (const auto& g : s.groups) {
        for (Eigen::Index c = 0; c < g.basis.cols(); ++c) {
            const double r = (op.matrix() * g.basis.col(c) - g.value * g.basis.col(c)).norm();
            s.max_residual = std::max(s.max_residual, r);
        }
    }
    const Eigen::MatrixXd gram = vecs.transpose() * vecs;
    s.orthonormality_error = (gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    return s;
}

}  // namespace curvadapt
