#pragma once

#include "lieks/realform.hpp"

#include <string>

namespace lieks {

// `<type><rank>:<inner|outer>[:k<n>|:compact]`, e.g. "A2:inner:k1", "A3:outer:k2". A form's label
// ("su(2,1)", "sl(3,R)") is accepted too when it names exactly one enumerated form.
struct FormId {
    char letter = 'A';
    int rank = 0;
    std::string descriptor;  // the full id string

    std::string str() const { return descriptor; }
};

// Throws std::invalid_argument for malformed, unsupported or unknown ids.
FormId parse_form_id(const std::string& text);
InvolutionSpec resolve_form(const FormId& id);
RealForm build_form(const FormId& id);

}  // namespace lieks
