#ifndef CONFSURF_ERRORS_HPP
#define CONFSURF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace confsurf {

// Numerical failures carry a stable tag so the CLI can map them to exit codes
// and the batch report can name the failing operation.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string tag, const std::string& msg)
        : std::runtime_error(tag + ": " + msg), tag_(std::move(tag)) {}
    const std::string& tag() const { return tag_; }
private:
    std::string tag_;
};

#define CONFSURF_DEFINE_ERROR(Name)                                      \
    class Name : public NumericalError {                                 \
    public:                                                              \
        explicit Name(const std::string& msg) : NumericalError(#Name, msg) {} \
    };

CONFSURF_DEFINE_ERROR(PoleHit)
CONFSURF_DEFINE_ERROR(OrderOverflow)
CONFSURF_DEFINE_ERROR(NotIntegrableToRational)
CONFSURF_DEFINE_ERROR(LinearGrowth)
CONFSURF_DEFINE_ERROR(ZeroModeError)
CONFSURF_DEFINE_ERROR(ContinuationUnreliable)
CONFSURF_DEFINE_ERROR(AnalyticityLoss)
CONFSURF_DEFINE_ERROR(StepRejected)
CONFSURF_DEFINE_ERROR(Blowup)
CONFSURF_DEFINE_ERROR(SingularTime)
CONFSURF_DEFINE_ERROR(BranchAmbiguity)
CONFSURF_DEFINE_ERROR(NonMonotone)
CONFSURF_DEFINE_ERROR(NoConvergence)
CONFSURF_DEFINE_ERROR(LeftValidityRegion)
CONFSURF_DEFINE_ERROR(ContourThroughZero)
CONFSURF_DEFINE_ERROR(TrackLost)
CONFSURF_DEFINE_ERROR(DivisionByZeroOnGrid)

#undef CONFSURF_DEFINE_ERROR

// Configuration problems are a separate family: the CLI exits 2 on these and
// 3 on NumericalError.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace confsurf

#endif
