#pragma once

#include <stdexcept>
#include <string>

namespace symdet {

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

struct ParseError : Error { using Error::Error; };
struct MissingImage : Error { using Error::Error; };
struct ZeroPolynomial : Error { using Error::Error; };
struct NotSquareMatrix : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct RingMismatch : Error { using Error::Error; };
struct InhomogeneousInput : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct NotDivisible : Error { using Error::Error; };
struct ZeroPoint : Error { using Error::Error; };
struct NotBlockForm : Error { using Error::Error; };
struct DecompositionFailure : Error { using Error::Error; };
struct SharedRoot : Error { using Error::Error; };
struct DegenerateInstance : Error { using Error::Error; };
struct WrongStratum : Error { using Error::Error; };
struct MembershipFailure : Error { using Error::Error; };
struct CertificateMismatch : Error { using Error::Error; };
struct DegenerateBranch : Error { using Error::Error; };
struct BadPrime : Error { using Error::Error; };
struct UnknownFormat : Error { using Error::Error; };
struct ExhaustedRejection : Error { using Error::Error; };

}  // namespace symdet
