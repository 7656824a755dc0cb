#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polar {

enum class Errc {
    // gf
    NonPrimeCharacteristic,
    DegreeZero,
    CapExceeded,
    DivisionByZero,
    ContextMismatch,
    OddExtensionDegree,
    EvenCharacteristic,
    // forms
    BadDimensionParity,
    ParabolicEvenCharacteristic,
    KindMismatch,
    DimMismatch,
    Degenerate,
    // polar space
    DimensionOutOfRange,
    OrderNotWellDefined,
    NotSingular,
    WrongDimension,
    NotPairwiseCollinear,
    // graphs
    RankTooLow,
    NotRegular,
    NotStronglyRegular,
    Imprimitive,
    IrrationalEigenvalues,
    FewerThanTwoCliques,
    // eigenfunctions
    NotAnEigenfunction,
    ZeroFunction,
    NotNonPrincipal,
    NotInSigmaL,
    NotDelsarte,
    NotMaxIntersection,
    TNotInPerp,
    TInAffM,
    // oracle
    WitnessNotFound,
    // io
    BadInput,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace polar
