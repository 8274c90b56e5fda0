#pragma once

#include <stdexcept>
#include <string>

namespace infspace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed configuration, incompatible grids, out-of-range
// parameters. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// The inputs were well formed but the computation has no meaningful result
// (vanishing mass, division by a zero neutral density, ...). Exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

struct InvalidAxis : InputError { using InputError::InputError; };
struct InvalidDensity : InputError { using InputError::InputError; };
struct UnknownAxis : InputError { using InputError::InputError; };
struct OutOfDomain : InputError { using InputError::InputError; };
struct GridMismatch : InputError { using InputError::InputError; };
struct NegativeScalar : InputError { using InputError::InputError; };
struct DomainMismatch : InputError { using InputError::InputError; };
struct InvalidBounds : InputError { using InputError::InputError; };
struct ModelAxisMismatch : InputError { using InputError::InputError; };
struct EmptyInput : InputError { using InputError::InputError; };
struct InvalidGrid : InputError { using InputError::InputError; };
struct SliceCountMismatch : InputError { using InputError::InputError; };
struct SchemaError : InputError { using InputError::InputError; };
struct IOFailure : InputError { using InputError::InputError; };
struct ConfigInvalid : InputError { using InputError::InputError; };
struct UnknownCommand : InputError { using InputError::InputError; };

struct ZeroMass : NumericalError { using NumericalError::NumericalError; };
struct NonFinite : NumericalError { using NumericalError::NumericalError; };
struct NeutralZero : NumericalError { using NumericalError::NumericalError; };
struct SupportViolation : NumericalError { using NumericalError::NumericalError; };
struct SingularJacobian : NumericalError { using NumericalError::NumericalError; };
struct UnnormalizedSlice : NumericalError { using NumericalError::NumericalError; };
struct ZeroSlice : NumericalError { using NumericalError::NumericalError; };
struct EnvelopeFailure : NumericalError { using NumericalError::NumericalError; };

}  // namespace infspace
