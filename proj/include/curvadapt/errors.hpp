#pragma once

#include <stdexcept>
#include <string>

namespace curvadapt {

/// Base class for every recoverable error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A tangent vector that must be a unit vector was not.
class NormalizationError : public Error {
public:
    NormalizationError(const std::string& what, double norm)
        : Error(what + " (norm = " + std::to_string(norm) + ")"), norm_(norm) {}
    double norm() const noexcept { return norm_; }

private:
    double norm_;
};

/// Sectional curvature requested on a (numerically) degenerate plane.
class DegeneratePlaneError : public Error {
public:
    explicit DegeneratePlaneError(double gram)
        : Error("degenerate plane: Gram determinant " + std::to_string(gram)), gram_(gram) {}
    double gram() const noexcept { return gram_; }

private:
    double gram_;
};

/// A principal-curvature flow was evaluated at or beyond its first pole.
class FocalPointError : public Error {
public:
    FocalPointError(const std::string& what, double focal_radius, int branch_index = -1)
        : Error(what), focal_radius_(focal_radius), branch_index_(branch_index) {}
    double focal_radius() const noexcept { return focal_radius_; }
    /// Index of the offending branch inside a PCSystem, or -1 when evaluated standalone.
    int branch_index() const noexcept { return branch_index_; }

private:
    double focal_radius_;
    int branch_index_;
};

/// The alpha-decomposition degenerates (alpha in {0, pi/2}) where a generic one is required.
class BoundaryError : public Error {
public:
    using Error::Error;
};

/// An angle whose cosine lies in the excluded set {0, 3/5, 4/5, 1}.
class ExcludedAngleError : public Error {
public:
    ExcludedAngleError(double alpha, double excluded_cos)
        : Error("alpha = " + std::to_string(alpha) + " has cos(alpha) = " +
                std::to_string(excluded_cos) + ", which is excluded"),
          alpha_(alpha) {}
    double alpha() const noexcept { return alpha_; }

private:
    double alpha_;
};

/// Power sums that do not come from a real multiset.
class InconsistentPowerSumsError : public Error {
public:
    using Error::Error;
};

/// A branch regime outside the hypothesis under which an oracle is valid.
class UnsupportedRegimeError : public Error {
public:
    using Error::Error;
};

/// Malformed input (bad descriptor, bad JSON, unknown option).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace curvadapt
