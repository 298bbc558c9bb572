#pragma once

#include <stdexcept>
#include <string>

namespace qq {

enum class Errc {
    WrongShape,
    Reorientation,
    ParityViolation,
    EmptySupport,
    NotContained,
    NotDominant,
    NotInSupport,
    TooLarge,
    NegativeDegree,
    InconsistentConnector,
    InexactDivision,
    UnknownRoot,
    Incomparable,
    BadInput,
};

inline const char* errc_name(Errc e) {
    switch (e) {
    case Errc::WrongShape: return "WrongShape";
    case Errc::Reorientation: return "Reorientation";
    case Errc::ParityViolation: return "ParityViolation";
    case Errc::EmptySupport: return "EmptySupport";
    case Errc::NotContained: return "NotContained";
    case Errc::NotDominant: return "NotDominant";
    case Errc::NotInSupport: return "NotInSupport";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NegativeDegree: return "NegativeDegree";
    case Errc::InconsistentConnector: return "InconsistentConnector";
    case Errc::InexactDivision: return "InexactDivision";
    case Errc::UnknownRoot: return "UnknownRoot";
    case Errc::Incomparable: return "Incomparable";
    case Errc::BadInput: return "BadInput";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace qq
