#pragma once

#include <stdexcept>
#include <string>

namespace tropvert {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define TROPVERT_DEFINE_ERROR(Name)                                            \
    struct Name : Error {                                                      \
        explicit Name(const std::string &msg) : Error(#Name ": " + msg) {}     \
    }

TROPVERT_DEFINE_ERROR(CapMismatch);
TROPVERT_DEFINE_ERROR(NotInvertible);
TROPVERT_DEFINE_ERROR(BadConstantTerm);
TROPVERT_DEFINE_ERROR(OutOfCap);
TROPVERT_DEFINE_ERROR(NotInGroup);
TROPVERT_DEFINE_ERROR(NotNilpotent);
TROPVERT_DEFINE_ERROR(IncompleteTable);
TROPVERT_DEFINE_ERROR(CapTooLarge);
TROPVERT_DEFINE_ERROR(IndexOutOfRange);

#undef TROPVERT_DEFINE_ERROR

} // namespace tropvert
