#pragma once

#include <stdexcept>
#include <string>

namespace flowlab {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridError : public Error {
    using Error::Error;
};
class DomainMismatch : public Error {
    using Error::Error;
};
class NonFiniteField : public Error {
    using Error::Error;
};
class UnknownComponent : public Error {
    using Error::Error;
};

class NonConvergence : public Error {
    using Error::Error;
};
class SingularLinearSystem : public Error {
    using Error::Error;
};
class ScheduleExhausted : public Error {
    using Error::Error;
};

class StepCollapse : public Error {
    using Error::Error;
};
class NonFiniteState : public Error {
    using Error::Error;
};
class MissingTimeDerivative : public Error {
    using Error::Error;
};

class InvalidParameter : public Error {
    using Error::Error;
};
class EmptyWindow : public Error {
    using Error::Error;
};

class IoError : public Error {
    using Error::Error;
};

}  // namespace flowlab
