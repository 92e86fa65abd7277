#include "opcomm/injections.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "opcomm/errors.hpp"

namespace opcomm {

namespace {

constexpr int kMaxLog = 48;  // dyadic moduli stay far below desk scale

std::int64_t pow2i(int log) { return std::int64_t(1) << log; }

void validate(const AffineInjection& map) {
  if (map.dom_log < 0 || map.im_log < 0 || map.dom_log > kMaxLog || map.im_log > kMaxLog) {
    throw PreconditionError("injection modulus exponent outside 0.." +
                            std::to_string(kMaxLog));
  }
  if (map.residue < 0 || map.residue >= pow2i(map.dom_log)) {
    throw PreconditionError("injection residue not reduced mod its modulus");
  }
  if (map.shift < 0 || map.shift >= pow2i(map.im_log)) {
    throw PreconditionError("injection shift not reduced mod its image modulus");
  }
}

auto atom_key(const WeightedInjection& a) {
  return std::tuple(a.map.residue, a.map.im_log, a.map.shift);
}

bool atom_order(const WeightedInjection& a, const WeightedInjection& b) {
  return atom_key(a) < atom_key(b);
}

// Splits the domain class mod 2^j into its two subclasses mod 2^{j+1}.
std::pair<AffineInjection, AffineInjection> split(const AffineInjection& map) {
  const AffineInjection even{map.dom_log + 1, map.residue, map.im_log + 1, map.shift};
  const AffineInjection odd{map.dom_log + 1, map.residue + pow2i(map.dom_log),
                            map.im_log + 1, map.shift + pow2i(map.im_log)};
  return {even, odd};
}

std::vector<WeightedInjection> refine_atoms(const std::vector<WeightedInjection>& atoms,
                                            int level) {
  std::vector<WeightedInjection> out = atoms;
  bool more = true;
  while (more) {
    more = false;
    std::vector<WeightedInjection> next;
    next.reserve(2 * out.size());
    for (const auto& atom : out) {
      if (atom.map.dom_log < level) {
        const auto [even, odd] = split(atom.map);
        next.push_back({even, atom.coefficient});
        next.push_back({odd, atom.coefficient});
        more = true;
      } else {
        next.push_back(atom);
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), atom_order);
  return out;
}

std::vector<WeightedInjection> merge_atoms(std::vector<WeightedInjection> atoms) {
  std::vector<WeightedInjection> out;
  for (auto& atom : atoms) {
    if (!out.empty() && out.back().map == atom.map) {
      out.back().coefficient += atom.coefficient;
    } else {
      out.push_back(std::move(atom));
    }
  }
  std::erase_if(out, [](const WeightedInjection& a) { return a.coefficient == 0; });
  return out;
}

// One joint coarsening step: succeeds iff the atoms pair up exactly as the
// two split() halves of modulus-2^{J-1} parents.
bool coarsen_once(std::vector<WeightedInjection>& atoms, int& level) {
  if (level == 0 || atoms.empty()) {
    return false;
  }
  const std::int64_t half = pow2i(level - 1);
  std::vector<WeightedInjection> parents;
  std::map<std::tuple<std::int64_t, int, std::int64_t>, Rational> upper;
  for (const auto& atom : atoms) {
    if (atom.map.residue >= half) {
      upper.emplace(atom_key(atom), atom.coefficient);
    }
  }
  for (const auto& atom : atoms) {
    if (atom.map.residue >= half) {
      continue;
    }
    if (atom.map.im_log == 0) {
      return false;
    }
    const std::int64_t sibling_shift = atom.map.shift + pow2i(atom.map.im_log - 1);
    if (atom.map.shift >= pow2i(atom.map.im_log - 1)) {
      return false;
    }
    auto it = upper.find({atom.map.residue + half, atom.map.im_log, sibling_shift});
    if (it == upper.end() || it->second != atom.coefficient) {
      return false;
    }
    upper.erase(it);
    parents.push_back({{level - 1, atom.map.residue, atom.map.im_log - 1, atom.map.shift},
                       atom.coefficient});
  }
  if (!upper.empty()) {
    return false;
  }
  atoms = std::move(parents);
  --level;
  return true;
}

}  // namespace

AffineInjection make_injection(int dom_log, std::int64_t residue, int im_log,
                               std::int64_t shift) {
  const AffineInjection map{dom_log, residue, im_log, shift};
  validate(map);
  return map;
}

std::optional<std::int64_t> apply(const AffineInjection& map, std::int64_t n) {
  if (n < 0 || n % pow2i(map.dom_log) != map.residue) {
    return std::nullopt;
  }
  const std::int64_t m = (n - map.residue) >> map.dom_log;
  return map.shift + (m << map.im_log);
}

AffineInjection inverse(const AffineInjection& map) {
  return {map.im_log, map.shift, map.dom_log, map.residue};
}

std::optional<AffineInjection> compose(const AffineInjection& after,
                                       const AffineInjection& before) {
  const int jg = before.dom_log, ig = before.im_log;
  const std::int64_t rg = before.residue, sg = before.shift;
  const int jf = after.dom_log, i_f = after.im_log;
  const std::int64_t rf = after.residue, sf = after.shift;

  if (ig >= jf) {
    // before's step 2^ig vanishes mod 2^jf: all of before's image lands in
    // one class, so the composite keeps before's whole domain or none of it.
    if (((sg - rf) % pow2i(jf) + pow2i(jf)) % pow2i(jf) != 0) {
      return std::nullopt;
    }
    const std::int64_t c0 = (sg - rf) >> jf;
    return make_injection(jg, rg, i_f + ig - jf, sf + (c0 << i_f));
  }
  // Solve sg + m*2^ig = rf (mod 2^jf) for m; solutions form one class
  // mod 2^{jf-ig} when 2^ig divides the gap, else there are none.
  const std::int64_t gap = (((rf - sg) % pow2i(jf)) + pow2i(jf)) % pow2i(jf);
  if (gap % pow2i(ig) != 0) {
    return std::nullopt;
  }
  const std::int64_t t = gap >> ig;
  return make_injection(jg + jf - ig, rg + (t << jg), i_f, sf);
}

InjectionElement InjectionElement::identity() {
  return atom(make_injection(0, 0, 0, 0));
}

InjectionElement InjectionElement::atom(const AffineInjection& map,
                                        const Rational& coefficient) {
  return from_atoms({{map, coefficient}});
}

InjectionElement InjectionElement::from_atoms(std::vector<WeightedInjection> atoms) {
  int level = 0;
  for (const auto& atom : atoms) {
    validate(atom.map);
    level = std::max(level, atom.map.dom_log);
  }
  InjectionElement result;
  result.atoms_ = merge_atoms(refine_atoms(atoms, level));
  result.modulus_log_ = result.atoms_.empty() ? 0 : level;
  while (coarsen_once(result.atoms_, result.modulus_log_)) {
  }
  return result;
}

std::vector<WeightedInjection> InjectionElement::refined_atoms(int level) const {
  if (level < modulus_log_ || level > kMaxLog) {
    throw RefinementError("cannot refine modulus-2^" + std::to_string(modulus_log_) +
                          " element to modulus 2^" + std::to_string(level));
  }
  return refine_atoms(atoms_, level);
}

InjectionElement InjectionElement::adjoint() const {
  std::vector<WeightedInjection> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& atom : atoms_) {
    atoms.push_back({inverse(atom.map), atom.coefficient});
  }
  return from_atoms(std::move(atoms));
}

InjectionElement InjectionElement::scaled(const Rational& factor) const {
  std::vector<WeightedInjection> atoms = atoms_;
  for (auto& atom : atoms) {
    atom.coefficient *= factor;
  }
  return from_atoms(std::move(atoms));
}

InjectionElement operator+(const InjectionElement& x, const InjectionElement& y) {
  std::vector<WeightedInjection> atoms = x.atoms_;
  atoms.insert(atoms.end(), y.atoms_.begin(), y.atoms_.end());
  return InjectionElement::from_atoms(std::move(atoms));
}

InjectionElement operator-(const InjectionElement& x, const InjectionElement& y) {
  return x + y.scaled(Rational(-1));
}

InjectionElement operator*(const InjectionElement& x, const InjectionElement& y) {
  std::vector<WeightedInjection> atoms;
  for (const auto& xa : x.atoms_) {
    for (const auto& ya : y.atoms_) {
      if (const auto composite = compose(xa.map, ya.map)) {
        atoms.push_back({*composite, xa.coefficient * ya.coefficient});
      }
    }
  }
  return InjectionElement::from_atoms(std::move(atoms));
}

InjectionElement injection_algebra(const InjectionElement& x, const InjectionElement& y,
                                   InjectionOp op) {
  switch (op) {
    case InjectionOp::Add:
      return x + y;
    case InjectionOp::Multiply:
      return x * y;
    case InjectionOp::AdjointOfX:
      return x.adjoint();
  }
  throw Error("unknown injection-algebra operation");
}

HalvingIsometries build_halving_isometries() {
  HalvingIsometries pair;
  pair.v = InjectionElement::atom(make_injection(0, 0, 1, 0));
  pair.w = InjectionElement::atom(make_injection(0, 0, 1, 1));

  const InjectionElement id = InjectionElement::identity();
  const InjectionElement evens = InjectionElement::atom(make_injection(1, 0, 1, 0));
  const InjectionElement odds = InjectionElement::atom(make_injection(1, 1, 1, 1));
  if (pair.v.adjoint() * pair.v != id || pair.w.adjoint() * pair.w != id) {
    throw Error("halving maps are not isometries");
  }
  if (pair.v * pair.v.adjoint() != evens || pair.w * pair.w.adjoint() != odds) {
    throw Error("halving maps do not split into the even/odd classes");
  }
  if (pair.v * pair.v.adjoint() + pair.w * pair.w.adjoint() != id) {
    throw Error("even and odd range projections do not sum to the identity");
  }
  return pair;
}

InjectionReport verify_identity_t2() {
  const auto [v, w] = build_halving_isometries();
  const InjectionElement id = InjectionElement::identity();
  const InjectionElement vs = v.adjoint();
  const InjectionElement ws = w.adjoint();

  InjectionReport report;
  report.identity = "halving-isometry-commutator-sum";
  const InjectionElement direct = vs * v - v * vs + ws * w - w * ws;
  const InjectionElement grouped = commutator(vs, v) + commutator(ws, w);
  report.residual = direct - id;
  report.exact_pass = report.residual.is_zero() && grouped == direct;
  return report;
}

RationalMatrix shadow_matrix(const InjectionElement& x, std::size_t size) {
  RationalMatrix m(size);
  for (const auto& atom : x.atoms()) {
    for (std::size_t n = 0; n < size; ++n) {
      const auto image = apply(atom.map, std::int64_t(n));
      if (image && *image < std::int64_t(size)) {
        m.at(std::size_t(*image), n) += atom.coefficient;
      }
    }
  }
  return m;
}

bool verify_identity_t2_shadow(std::size_t n) {
  const std::size_t size = 2 * n;
  const auto [v, w] = build_halving_isometries();
  const RationalMatrix mv = shadow_matrix(v, size);
  const RationalMatrix mw = shadow_matrix(w, size);
  const RationalMatrix mvt = mv.transpose();
  const RationalMatrix mwt = mw.transpose();

  RationalMatrix window(size);  // projection onto {0..n-1}
  for (std::size_t idx = 0; idx < n; ++idx) {
    window.at(idx, idx) = 1;
  }

  // The window compression must agree with the symbolic products: the maps
  // involved never leave {0..2n-1} when started below n.
  const std::pair<InjectionElement, RationalMatrix> products[] = {
      {v.adjoint() * v, mvt * mv},
      {v * v.adjoint(), mv * mvt},
      {w.adjoint() * w, mwt * mw},
      {w * w.adjoint(), mw * mwt},
  };
  for (const auto& [symbolic, matrix] : products) {
    if (window * shadow_matrix(symbolic, size) * window != window * matrix * window) {
      return false;
    }
  }

  const RationalMatrix combination = mvt * mv - mv * mvt + mwt * mw - mw * mwt;
  return window * combination * window == window;
}

}  // namespace opcomm
