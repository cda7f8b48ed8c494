#include "levycds/error.hpp"

namespace levycds {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeParameter: return "NegativeParameter";
        case ErrorCode::NonIncreasingRates: return "NonIncreasingRates";
        case ErrorCode::WeightsNotNormalized: return "WeightsNotNormalized";
        case ErrorCode::NegativeSubordinator: return "NegativeSubordinator";
        case ErrorCode::PoleEvaluation: return "PoleEvaluation";
        case ErrorCode::NoAdmissibleSolution: return "NoAdmissibleSolution";
        case ErrorCode::RootMultiplicity: return "RootMultiplicity";
        case ErrorCode::ComplexRoots: return "ComplexRoots";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::DegenerateAtDefault: return "DegenerateAtDefault";
        case ErrorCode::BracketExhausted: return "BracketExhausted";
        case ErrorCode::InconsistentBoundedVariation: return "InconsistentBoundedVariation";
        case ErrorCode::InvalidContract: return "InvalidContract";
        case ErrorCode::MirrorInadmissible: return "MirrorInadmissible";
        case ErrorCode::NoSignChange: return "NoSignChange";
        case ErrorCode::InvalidSimConfig: return "InvalidSimConfig";
        case ErrorCode::HorizonTooShort: return "HorizonTooShort";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
    }
    return "Unknown";
}

}  // namespace levycds
