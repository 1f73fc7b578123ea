#pragma once

#include <stdexcept>
#include <string>

namespace mandel {

// Base for all domain errors raised by the library. CLI maps these to exit 1.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateFixedPoint : DomainError {
    explicit DegenerateFixedPoint(const std::string& w) : DomainError(w) {}
};
struct NotPeriodic : DomainError {
    explicit NotPeriodic(const std::string& w) : DomainError(w) {}
};
struct TooCloseToJulia : DomainError {
    explicit TooCloseToJulia(const std::string& w) : DomainError(w) {}
};
struct NewtonDivergence : DomainError {
    explicit NewtonDivergence(const std::string& w) : DomainError(w) {}
};
struct NoCycleFound : DomainError {
    explicit NoCycleFound(const std::string& w) : DomainError(w) {}
};
struct NotRepelling : DomainError {
    explicit NotRepelling(const std::string& w) : DomainError(w) {}
};
struct RayTraceFailure : DomainError {
    explicit RayTraceFailure(const std::string& w) : DomainError(w) {}
};
struct OnBoundary : DomainError {
    explicit OnBoundary(const std::string& w) : DomainError(w) {}
};
struct NotInPuzzle : DomainError {
    explicit NotInPuzzle(const std::string& w) : DomainError(w) {}
};
struct ExpansionNotFound : DomainError {
    explicit ExpansionNotFound(const std::string& w) : DomainError(w) {}
};
struct InverseBranchAmbiguity : DomainError {
    explicit InverseBranchAmbiguity(const std::string& w) : DomainError(w) {}
};
struct OnCut : DomainError {
    explicit OnCut(const std::string& w) : DomainError(w) {}
};
struct ResolutionLoss : DomainError {
    explicit ResolutionLoss(const std::string& w) : DomainError(w) {}
};
struct DegenerateDomain : DomainError {
    explicit DegenerateDomain(const std::string& w) : DomainError(w) {}
};
struct NoConvergence : DomainError {
    explicit NoConvergence(const std::string& w) : DomainError(w) {}
};
struct WrongBasin : DomainError {
    explicit WrongBasin(const std::string& w) : DomainError(w) {}
};
struct IncompleteRootSet : DomainError {
    explicit IncompleteRootSet(const std::string& w) : DomainError(w) {}
};
struct ContinuationBreakdown : DomainError {
    explicit ContinuationBreakdown(const std::string& w) : DomainError(w) {}
};
struct CenterEscaped : DomainError {
    explicit CenterEscaped(const std::string& w) : DomainError(w) {}
};
struct FloorNotFound : DomainError {
    explicit FloorNotFound(const std::string& w) : DomainError(w) {}
};
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& w) : std::runtime_error(w) {}
};

}  // namespace mandel
