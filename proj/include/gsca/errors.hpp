#pragma once

#include <stdexcept>
#include <string>

namespace gsca {

/// Classified failure causes. The CLI maps these onto exit codes:
/// input/validation problems -> 1, failed mathematical checks -> 2,
/// internal assertion failures -> 3.
enum class errc {
    non_prime,
    even_characteristic,
    reducible_min_poly,
    division_by_zero,
    field_mismatch,
    not_mu_symmetric,
    mu_constraint_violation,
    dependent_matrices,
    theorem_violation,
    budget_exceeded,
    schema_error,
    parse_error,
    non_homogeneous,
    unsupported,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::non_prime: return "NonPrime";
        case errc::even_characteristic: return "EvenCharacteristic";
        case errc::reducible_min_poly: return "ReducibleMinPoly";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::field_mismatch: return "FieldMismatch";
        case errc::not_mu_symmetric: return "NotMuSymmetric";
        case errc::mu_constraint_violation: return "MuConstraintViolation";
        case errc::dependent_matrices: return "DependentMatrices";
        case errc::theorem_violation: return "TheoremViolation";
        case errc::budget_exceeded: return "BudgetExceeded";
        case errc::schema_error: return "SchemaError";
        case errc::parse_error: return "ParseError";
        case errc::non_homogeneous: return "NonHomogeneous";
        case errc::unsupported: return "Unsupported";
        case errc::internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace gsca
