#pragma once

#include <Eigen/Dense>

#include <vector>

namespace curvadapt {

/// Dense symmetric operator on a model tangent space, in an orthonormal basis.
class SelfAdjointOperator {
public:
    /// Symmetrizes `m`; `asymmetry()` records how far the input was from symmetric.
    explicit SelfAdjointOperator(const Eigen::MatrixXd& m);

    const Eigen::MatrixXd& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    double asymmetry() const { return asymmetry_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const { return m_ * v; }

private:
    Eigen::MatrixXd m_;
    double asymmetry_ = 0.0;
};

struct EigenGroup {
    double value = 0.0;
    int multiplicity = 0;
    Eigen::MatrixXd basis;  ///< orthonormal columns spanning the eigenspace
};

struct Spectrum {
    std::vector<EigenGroup> groups;  ///< ascending by value
    double max_residual = 0.0;       ///< max over basis vectors of |K v - lambda v|
    double orthonormality_error = 0.0;

    int total_multiplicity() const;
    /// Group whose value is within `tol` of `value`, or nullptr.
    const EigenGroup* find(double value, double tol = 1e-6) const;
};

/// Eigendecomposition with eigenvalues clustered into groups separated by more than `gap`.
Spectrum decompose(const SelfAdjointOperator& op, double gap = 1e-6);

}  // namespace curvadapt
