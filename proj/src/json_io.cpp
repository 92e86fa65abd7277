#include "opcomm/json_io.hpp"

#include <cstdint>
#include <string>

#include "opcomm/errors.hpp"

namespace opcomm {

namespace {

Json integer_to_json(const Integer& value) {
  if (value.fits_slong_p()) {
    return std::int64_t(value.get_si());
  }
  return value.get_str();
}

Integer integer_from_json(const Json& node) {
  if (node.is_number_integer()) {
    return Integer(node.get<std::int64_t>());
  }
  if (node.is_string()) {
    Integer value;
    if (value.set_str(node.get<std::string>(), 10) != 0) {
      throw Error("malformed integer literal: " + node.dump());
    }
    return value;
  }
  throw Error("expected an integer or decimal string, got " + node.dump());
}

std::int64_t int64_from_json(const Json& node, const char* what) {
  if (!node.is_number_integer()) {
    throw Error(std::string("expected an integer for ") + what + ", got " + node.dump());
  }
  return node.get<std::int64_t>();
}

int log2_exact(std::int64_t value, const char* what) {
  if (value <= 0 || (value & (value - 1)) != 0) {
    throw Error(std::string(what) + " must be a positive power of two, got " +
                std::to_string(value));
  }
  int log = 0;
  while ((std::int64_t(1) << log) < value) {
    ++log;
  }
  return log;
}

StandardInterval interval_from_json(const Json& node) {
  if (!node.is_object()) {
    throw Error("expected {level, index}, got " + node.dump());
  }
  return {int(int64_from_json(node.at("level"), "level")),
          int64_from_json(node.at("index"), "index")};
}

Json interval_to_json(const StandardInterval& interval) {
  return Json{{"level", interval.level}, {"index", interval.index}};
}

}  // namespace

Json rational_to_json(const Rational& value) {
  return Json{{"num", integer_to_json(value.get_num())},
              {"den", integer_to_json(value.get_den())}};
}

Rational rational_from_json(const Json& node) {
  if (node.is_number_integer()) {
    return Rational(node.get<std::int64_t>());
  }
  if (node.is_string()) {
    return rational_from_string(node.get<std::string>());
  }
  if (node.is_object()) {
    return make_rational(integer_from_json(node.at("num")),
                         integer_from_json(node.at("den")));
  }
  throw Error("expected a rational (integer, \"num/den\" or {num, den}), got " +
              node.dump());
}

Json to_json(const DyadicSet& set) {
  Json out = Json::array();
  for (const auto& atom : set.atoms()) {
    out.push_back(interval_to_json(atom));
  }
  return out;
}

DyadicSet dyadic_set_from_json(const Json& node) {
  if (!node.is_array()) {
    throw Error("expected an array of {level, index}, got " + node.dump());
  }
  std::vector<StandardInterval> intervals;
  for (const auto& entry : node) {
    intervals.push_back(interval_from_json(entry));
  }
  return DyadicSet::normalize(intervals);
}

Json to_json(const AlgebraElement& element) {
  Json out = Json::array();
  for (const auto& atom : element.atoms()) {
    out.push_back(Json{{"source", interval_to_json(atom.source)},
                       {"target", interval_to_json(atom.target)},
                       {"coefficient", rational_to_json(atom.coefficient)}});
  }
  return out;
}

AlgebraElement algebra_element_from_json(const Json& node) {
  if (!node.is_array()) {
    throw Error("expected an array of translation atoms, got " + node.dump());
  }
  std::vector<TranslationAtom> atoms;
  for (const auto& entry : node) {
    atoms.push_back({interval_from_json(entry.at("source")),
                     interval_from_json(entry.at("target")),
                     rational_from_json(entry.at("coefficient"))});
  }
  return AlgebraElement::from_atoms(std::move(atoms));
}

Json to_json(const InjectionElement& element) {
  Json out = Json::array();
  for (const auto& atom : element.atoms()) {
    out.push_back(Json{{"modulus", std::int64_t(1) << atom.map.dom_log},
                       {"residue", atom.map.residue},
                       {"scale_num", std::int64_t(1) << atom.map.im_log},
                       {"scale_den", std::int64_t(1) << atom.map.dom_log},
                       {"shift", atom.map.shift},
                       {"coefficient", rational_to_json(atom.coefficient)}});
  }
  return out;
}

InjectionElement injection_element_from_json(const Json& node) {
  if (!node.is_array()) {
    throw Error("expected an array of weighted injections, got " + node.dump());
  }
  std::vector<WeightedInjection> atoms;
  for (const auto& entry : node) {
    const int dom_log = log2_exact(int64_from_json(entry.at("modulus"), "modulus"), "modulus");
    const int den_log =
        log2_exact(int64_from_json(entry.at("scale_den"), "scale_den"), "scale_den");
    if (den_log != dom_log) {
      throw Error("scale_den must equal the domain modulus");
    }
    const int im_log =
        log2_exact(int64_from_json(entry.at("scale_num"), "scale_num"), "scale_num");
    atoms.push_back({make_injection(dom_log, int64_from_json(entry.at("residue"), "residue"),
                                    im_log, int64_from_json(entry.at("shift"), "shift")),
                     rational_from_json(entry.at("coefficient"))});
  }
  return InjectionElement::from_atoms(std::move(atoms));
}

Json to_json(const RationalMatrix& matrix) {
  Json out = Json::array();
  for (std::size_t i = 0; i < matrix.dimension(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < matrix.dimension(); ++j) {
      row.push_back(rational_to_string(matrix.at(i, j)));
    }
    out.push_back(std::move(row));
  }
  return out;
}

RationalMatrix matrix_from_json(const Json& node) {
  if (!node.is_array()) {
    throw Error("expected an array of matrix rows, got " + node.dump());
  }
  const std::size_t dimension = node.size();
  RationalMatrix matrix(dimension);
  for (std::size_t i = 0; i < dimension; ++i) {
    const Json& row = node.at(i);
    if (!row.is_array() || row.size() != dimension) {
      throw Error("matrix rows must all have length " + std::to_string(dimension));
    }
    for (std::size_t j = 0; j < dimension; ++j) {
      matrix.at(i, j) = rational_from_json(row.at(j));
    }
  }
  return matrix;
}

Json certificate_to_json(const CommutatorCertificate& certificate) {
  const auto initial = (certificate.u1.adjoint() * certificate.u1).as_projection();
  return Json{
      {"k", certificate.k},
      {"pass", certificate.pass},
      {"residual_atoms", certificate.residual.atoms().size()},
      {"trace_of_identity", rational_to_string(AlgebraElement::identity().trace())},
      {"initial_projection_measure",
       initial ? initial->measure().str() : std::string("undefined")},
  };
}

}  // namespace opcomm
