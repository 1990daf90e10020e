#pragma once

#include <stdexcept>
#include <string>

namespace amalgam {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// stepfn
struct OverlappingPieces : Error { using Error::Error; };
struct NegativeCoefficient : Error { using Error::Error; };
struct UnsupportedCombination : Error { using Error::Error; };
struct InvalidProfile : Error { using Error::Error; };
struct InexactResult : Error { using Error::Error; };

// norms
struct InvalidSpec : Error { using Error::Error; };
struct NotNormable : Error { using Error::Error; };
struct Undecided : Error { using Error::Error; };

// duality
struct EmptyCandidates : Error { using Error::Error; };

// laws
struct DominationFailed : Error { using Error::Error; };
struct WitnessUnavailable : Error { using Error::Error; };

// witnesses
struct UnsupportedIndices : Error { using Error::Error; };
struct IndicesNotApplicable : Error { using Error::Error; };

// serialization / CLI
struct ParseError : Error { using Error::Error; };

} // namespace amalgam
