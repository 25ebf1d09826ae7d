#pragma once

#include <stdexcept>
#include <string>

namespace efekit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define EFEKIT_ERROR_TYPE(NAME)                                                \
    class NAME : public Error {                                                \
    public:                                                                    \
        using Error::Error;                                                    \
    }

// prob_core
EFEKIT_ERROR_TYPE(InvalidDistributionError);
EFEKIT_ERROR_TYPE(AllZeroError);
EFEKIT_ERROR_TYPE(NegativeWeightError);
EFEKIT_ERROR_TYPE(LengthMismatchError);
EFEKIT_ERROR_TYPE(UnknownAxisError);
EFEKIT_ERROR_TYPE(ZeroMassEventError);

// gen_model
EFEKIT_ERROR_TYPE(ParseError);
EFEKIT_ERROR_TYPE(InvalidDagError);

// inference
EFEKIT_ERROR_TYPE(SupportError);
EFEKIT_ERROR_TYPE(IndexError);

// predictive
EFEKIT_ERROR_TYPE(DepthTooLargeError);
EFEKIT_ERROR_TYPE(DepthMismatchError);

// preferences
EFEKIT_ERROR_TYPE(DimMismatchError);

// dsep
EFEKIT_ERROR_TYPE(InvalidTrailError);
EFEKIT_ERROR_TYPE(OverlappingSetsError);
EFEKIT_ERROR_TYPE(UnknownVertexError);

// planner / experiment
EFEKIT_ERROR_TYPE(TooManyPoliciesError);
EFEKIT_ERROR_TYPE(IoError);

#undef EFEKIT_ERROR_TYPE

/// Raised when an observation sequence has probability zero under a model.
/// Carries the step index at which the evidence first vanished.
class ZeroEvidenceError : public Error {
public:
    explicit ZeroEvidenceError(const std::string& what, std::size_t step = 0)
        : Error(what), step_(step) {}
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

} // namespace efekit
