#pragma once

#include <stdexcept>
#include <string>

namespace qtoric {

enum class Errc {
    Indeterminate,
    Singular,
    UnsupportedEntries,
    NotGammaComplete,
    DomainMismatch,
    EmptyIntersection,
    NotBalanced,
    NoIndispensable,
    NotEven,
    NotComplete,
    NonRationalInput,
    RankDeficient,
    NotUnimodular,
    SingularBlock,
    UnsupportedField,
    OutOfDomain,
    NotRational,
    OutOfZone,
    SearchBoundExceeded,
    InvalidInput,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }
    Errc code() const { return code_; }

  private:
    Errc code_;
};

} // namespace qtoric
