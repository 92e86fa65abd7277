#pragma once

#include <json.hpp>

#include "opcomm/algebra.hpp"
#include "opcomm/construction.hpp"
#include "opcomm/dyadic.hpp"
#include "opcomm/injections.hpp"
#include "opcomm/matrix.hpp"
#include "opcomm/rational.hpp"

namespace opcomm {

/// Insertion-ordered JSON keeps report output byte-stable.
using Json = nlohmann::ordered_json;

/// {num, den}; each side a JSON integer when it fits in 64 bits, else a
/// decimal string. Parsing also accepts a bare integer or a "num/den" string.
Json rational_to_json(const Rational& value);
Rational rational_from_json(const Json& node);

/// Array of {level, index}, canonical order.
Json to_json(const DyadicSet& set);
DyadicSet dyadic_set_from_json(const Json& node);

/// Array of {source: {level, index}, target: {level, index}, coefficient}.
Json to_json(const AlgebraElement& element);
AlgebraElement algebra_element_from_json(const Json& node);

/// Array of {modulus, residue, scale_num, scale_den, shift, coefficient};
/// modulus = scale_den = 2^dom_log, scale_num = 2^im_log.
Json to_json(const InjectionElement& element);
InjectionElement injection_element_from_json(const Json& node);

/// Array of rows; entries are "num/den" strings.
Json to_json(const RationalMatrix& matrix);
RationalMatrix matrix_from_json(const Json& node);

/// {k, pass, residual_atoms, trace_of_identity, initial_projection_measure}.
Json certificate_to_json(const CommutatorCertificate& certificate);

}  // namespace opcomm
