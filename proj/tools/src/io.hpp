#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pidc/commutator/criterion.hpp"
#include "pidc/matrix/matrix.hpp"
#include "pidc/matrix/witness.hpp"
#include "pidc/regularity/regularity.hpp"
#include "pidc/ring/integer_ring.hpp"
#include "pidc/ring/poly_ring.hpp"
#include "pidc/similarity/lr_form.hpp"

namespace pidc::io {

using json = nlohmann::json;

/// Malformed input; the CLI maps it to exit code 64.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RingKind { Z, PolyFp, ZmodN, Fp };

/// Z, F_p[x], Z/N (entries in [0, N)) or the prime field F_p (entries in [0, p)).
struct RingDesc {
  RingKind kind = RingKind::Z;
  std::uint64_t p = 0;
  Integer modulus;

  friend bool operator==(const RingDesc& a, const RingDesc& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == RingKind::PolyFp || a.kind == RingKind::Fp) return a.p == b.p;
    if (a.kind == RingKind::ZmodN) return a.modulus == b.modulus;
    return true;
  }
};

RingDesc parse_ring(const json& j);
/// "Z", "F5[x]", "Z/12", "F7".
RingDesc parse_ring_flag(const std::string& s);
json ring_json(const RingDesc& d);
std::string ring_name(const RingDesc& d);

json encode(const Integer& v);
json encode(const Poly& v);
Integer decode_integer(const json& j);
Poly decode_poly(const json& j, std::uint64_t p);

template <class E>
json encode_vector(const std::vector<E>& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(encode(e));
  return out;
}

template <class E>
json matrix_json(const RingDesc& d, const Matrix<E>& m) {
  json out = ring_json(d);
  out["n"] = m.rows();
  if (m.rows() != m.cols()) out["cols"] = m.cols();
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
    rows.push_back(row);
  }
  out["entries"] = rows;
  return out;
}

/// Integer entries; rejects Z/N and F_p entries outside [0, N).
Matrix<Integer> parse_int_matrix(const json& j, const RingDesc& d);
Matrix<Poly> parse_poly_matrix(const json& j, const RingDesc& d);

/// Ring of a matrix document; `fallback` when it carries no tag.
RingDesc matrix_ring(const json& j, const RingDesc* fallback);

template <class E>
json witness_json(const RingDesc& d, const SimilarityWitness<E>& w) {
  return {{"g", matrix_json(d, w.g)}, {"gInverse", matrix_json(d, w.g_inverse)}, {"det", encode(w.det)}};
}

template <class E>
json commutator_json(const RingDesc& d, const CommutatorWitness<E>& w) {
  json log = json::array();
  for (const auto& [k, v] : w.log) log.push_back({{"step", k}, {"value", v}});
  return {{"X", matrix_json(d, w.x)}, {"Y", matrix_json(d, w.y)}, {"log", log}};
}

template <class E>
json lr_json(const RingDesc& d, const LaffeyReamsForm<E>& f) {
  json log = json::array();
  for (const auto& p : f.probe_log)
    log.push_back({{"probe", p.probe},
                   {"oldPivot", encode(p.old_pivot)},
                   {"newPivot", encode(p.new_pivot)},
                   {"oldFactors", p.old_factors},
                   {"newFactors", p.new_factors}});
  return {{"B", matrix_json(d, f.b)}, {"witness", witness_json(d, f.witness)}, {"pivot", encode(f.pivot)},
          {"probeLog", log}};
}

template <class E>
json certificate_json(const RegularityCertificate<E>& c) {
  return {{"vector", encode_vector(c.vector)}, {"krylovDet", encode(c.krylov_det)}};
}

SimilarityWitness<Integer> parse_int_witness(const json& j, const RingDesc& d);
SimilarityWitness<Poly> parse_poly_witness(const json& j, const RingDesc& d);
CommutatorWitness<Integer> parse_int_commutator(const json& j, const RingDesc& d);
CommutatorWitness<Poly> parse_poly_commutator(const json& j, const RingDesc& d);
LaffeyReamsForm<Integer> parse_int_lr(const json& j, const RingDesc& d);
LaffeyReamsForm<Poly> parse_poly_lr(const json& j, const RingDesc& d);

}  // namespace pidc::io
