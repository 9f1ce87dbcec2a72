#pragma once

#include <stdexcept>
#include <string>

namespace hypflow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// surface
struct NonManifoldEdge : Error { using Error::Error; };
struct InconsistentOrientation : Error { using Error::Error; };
struct SelfGluedEdge : Error { using Error::Error; };

// geometry
struct SeparationViolated : Error { using Error::Error; };
struct DegenerateTriangle : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct NonPositiveFactor : Error { using Error::Error; };

// delaunay / quadrature
struct FlipBudgetExceeded : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };

// flows / solver
struct StepUnderflow : Error { using Error::Error; };
struct SingularHessian : Error { using Error::Error; };
struct LineSearchFailed : Error { using Error::Error; };
struct TargetOutOfRange : Error { using Error::Error; };

// io / fixtures
struct ParseError : Error { using Error::Error; };
struct SamplingExhausted : Error { using Error::Error; };

} // namespace hypflow
