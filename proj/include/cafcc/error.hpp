#pragma once

#include <stdexcept>
#include <string>

namespace cafcc {

enum class Errc {
    DivisionByZero,
    Parse,
    ZeroSeed,
    InadmissibleDeltas,
    DomainViolation,
    MissingSurd,
    DegenerateSlot,
    DegenerateSolve,
    InadmissibleConfig,
    TypeBNotAllowed,
    NotTypeC,
    SingularMatrix,
    RegimeMismatch,
    NoCatalogueEntry,
    EmptyScope,
    RetriesExhausted,
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::Parse: return "Parse";
    case Errc::ZeroSeed: return "ZeroSeed";
    case Errc::InadmissibleDeltas: return "InadmissibleDeltas";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::MissingSurd: return "MissingSurd";
    case Errc::DegenerateSlot: return "DegenerateSlot";
    case Errc::DegenerateSolve: return "DegenerateSolve";
    case Errc::InadmissibleConfig: return "InadmissibleConfig";
    case Errc::TypeBNotAllowed: return "TypeBNotAllowed";
    case Errc::NotTypeC: return "NotTypeC";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::RegimeMismatch: return "RegimeMismatch";
    case Errc::NoCatalogueEntry: return "NoCatalogueEntry";
    case Errc::EmptyScope: return "EmptyScope";
    case Errc::RetriesExhausted: return "RetriesExhausted";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

    // degeneracies are measure-zero events the samplers resample on
    bool degenerate() const noexcept {
        return code_ == Errc::DivisionByZero || code_ == Errc::DegenerateSlot ||
               code_ == Errc::DegenerateSolve || code_ == Errc::DomainViolation ||
               code_ == Errc::SingularMatrix;
    }

private:
    Errc code_;
};

} // namespace cafcc
