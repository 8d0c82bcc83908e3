#pragma once

#include <stdexcept>
#include <string>

namespace cychom {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed dimensions: operand shapes that can never be composed.
struct ShapeError : Error {
    using Error::Error;
};

// Module file could not be read or does not follow the format.
struct ParseError : Error {
    using Error::Error;
};

// The request needs degrees beyond what the object stores.
struct IncompleteData : Error {
    using Error::Error;
};

struct NotAChainMap : Error {
    using Error::Error;
};

// The connecting homomorphism could not pull a boundary back into the subcomplex.
struct LiftNotInSubcomplex : Error {
    using Error::Error;
};

struct MissingLastDegeneracy : Error {
    using Error::Error;
};

// A map expected to be an isomorphism on homology could not be inverted.
struct QuasiIsoInversionFailure : Error {
    using Error::Error;
};

struct SizeGuardExceeded : Error {
    using Error::Error;
};

struct NonAssociative : Error {
    using Error::Error;
};

} // namespace cychom
