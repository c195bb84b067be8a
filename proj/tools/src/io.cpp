#include "io.hpp"

#include <cctype>

namespace pidc::io {

namespace {

bool is_prime_u64(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t parse_u64(const std::string& s, const char* what) {
  if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ParseError(std::string("bad ") + what + ": " + s);
  return std::stoull(s);
}

std::uint64_t prime_field(const json& j) {
  if (!j.contains("p")) throw ParseError("ring descriptor needs \"p\"");
  const json& pj = j.at("p");
  std::uint64_t p = 0;
  if (pj.is_number_integer() && pj.get<long long>() > 0) p = pj.get<std::uint64_t>();
  else if (pj.is_string()) p = parse_u64(pj.get<std::string>(), "p");
  else throw ParseError("\"p\" must be a positive integer");
  if (!is_prime_u64(p)) throw ParseError("p is not prime: " + std::to_string(p));
  return p;
}

template <class E, class F>
Matrix<E> parse_entries(const json& j, const E& zero, F&& decode) {
  if (!j.is_object() || !j.contains("entries")) throw ParseError("matrix needs \"entries\"");
  const json& rows = j.at("entries");
  if (!rows.is_array() || rows.empty()) throw ParseError("\"entries\" must be a non-empty array");
  const std::size_t n = rows.size();
  const std::size_t cols = rows[0].is_array() ? rows[0].size() : 0;
  if (j.contains("n") && (!j.at("n").is_number_unsigned() || j.at("n").get<std::size_t>() != n))
    throw ParseError("\"n\" does not match the number of rows");
  Matrix<E> m(n, cols, zero);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != cols) throw ParseError("ragged \"entries\"");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = decode(rows[i][c]);
  }
  return m;
}

}  // namespace

RingDesc parse_ring(const json& j) {
  if (!j.is_object() || !j.contains("ring") || !j.at("ring").is_string()) throw ParseError("missing ring tag");
  const std::string tag = j.at("ring").get<std::string>();
  RingDesc d;
  if (tag == "Z") {
    d.kind = RingKind::Z;
  } else if (tag == "Fp[x]") {
    d.kind = RingKind::PolyFp;
    d.p = prime_field(j);
  } else if (tag == "Fp") {
    d.kind = RingKind::Fp;
    d.p = prime_field(j);
  } else if (tag == "Z/N") {
    d.kind = RingKind::ZmodN;
    if (!j.contains("N")) throw ParseError("Z/N descriptor needs \"N\"");
    d.modulus = decode_integer(j.at("N"));
    if (d.modulus < 2) throw ParseError("N must be at least 2");
  } else {
    throw ParseError("unknown ring tag: " + tag);
  }
  return d;
}

RingDesc parse_ring_flag(const std::string& s) {
  if (s == "Z") return parse_ring(json{{"ring", "Z"}});
  if (s.rfind("Z/", 0) == 0) return parse_ring(json{{"ring", "Z/N"}, {"N", s.substr(2)}});
  if (s.size() > 4 && s[0] == 'F' && s.substr(s.size() - 3) == "[x]")
    return parse_ring(json{{"ring", "Fp[x]"}, {"p", parse_u64(s.substr(1, s.size() - 4), "p")}});
  if (s.size() > 1 && s[0] == 'F') return parse_ring(json{{"ring", "Fp"}, {"p", parse_u64(s.substr(1), "p")}});
  throw ParseError("unknown ring: " + s + " (expected Z, Fp[x] as F5[x], Z/N as Z/12, or Fp as F5)");
}

json ring_json(const RingDesc& d) {
  switch (d.kind) {
    case RingKind::Z:
      return {{"ring", "Z"}};
    case RingKind::PolyFp:
      return {{"ring", "Fp[x]"}, {"p", d.p}};
    case RingKind::Fp:
      return {{"ring", "Fp"}, {"p", d.p}};
    case RingKind::ZmodN:
      return {{"ring", "Z/N"}, {"N", d.modulus.get_str()}};
  }
  return {};
}

std::string ring_name(const RingDesc& d) {
  switch (d.kind) {
    case RingKind::Z:
      return "Z";
    case RingKind::PolyFp:
      return "F" + std::to_string(d.p) + "[x]";
    case RingKind::Fp:
      return "F" + std::to_string(d.p);
    case RingKind::ZmodN:
      return "Z/" + d.modulus.get_str();
  }
  return "?";
}

json encode(const Integer& v) { return v.get_str(); }

json encode(const Poly& v) {
  json out = json::array();
  for (auto c : v.coeffs()) out.push_back(std::to_string(c));
  return out;
}

Integer decode_integer(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (!j.is_string()) throw ParseError("integer must be a decimal string");
  const std::string s = j.get<std::string>();
  std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (s.size() == start || !std::all_of(s.begin() + static_cast<long>(start), s.end(),
                                        [](unsigned char c) { return std::isdigit(c); }))
    throw ParseError("not a decimal integer: " + s);
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

Poly decode_poly(const json& j, std::uint64_t p) {
  if (!j.is_array()) throw ParseError("polynomial must be an array of coefficients");
  const Integer pz(static_cast<unsigned long>(p));
  std::vector<std::uint64_t> c;
  for (const auto& e : j) {
    Integer v = decode_integer(e) % pz;
    if (v < 0) v += pz;
    c.push_back(v.get_ui());
  }
  return Poly(p, std::move(c));
}

RingDesc matrix_ring(const json& j, const RingDesc* fallback) {
  if (j.is_object() && j.contains("ring")) {
    RingDesc d = parse_ring(j);
    if (fallback && !(d == *fallback))
      throw ParseError("ring tag " + ring_name(d) + " does not match " + ring_name(*fallback));
    return d;
  }
  if (!fallback) throw ParseError("missing ring tag");
  return *fallback;
}

Matrix<Integer> parse_int_matrix(const json& j, const RingDesc& d) {
  if (d.kind == RingKind::PolyFp) throw ParseError("expected an integer ring");
  matrix_ring(j, &d);
  Integer bound = d.kind == RingKind::ZmodN ? d.modulus
                  : d.kind == RingKind::Fp  ? Integer(static_cast<unsigned long>(d.p))
                                            : Integer(0);
  return parse_entries(j, Integer(0), [&](const json& e) {
    Integer v = decode_integer(e);
    if (bound != 0 && (v < 0 || v >= bound)) throw ParseError("entry " + v.get_str() + " outside [0, " + bound.get_str() + ")");
    return v;
  });
}

Matrix<Poly> parse_poly_matrix(const json& j, const RingDesc& d) {
  if (d.kind != RingKind::PolyFp) throw ParseError("expected Fp[x]");
  matrix_ring(j, &d);
  return parse_entries(j, Poly(d.p), [&](const json& e) { return decode_poly(e, d.p); });
}

namespace {

template <class E, class M, class D>
SimilarityWitness<E> parse_witness(const json& j, const RingDesc& d, M&& mat, D&& dec) {
  if (!j.is_object() || !j.contains("g") || !j.contains("gInverse") || !j.contains("det"))
    throw ParseError("witness needs g, gInverse, det");
  return {mat(j.at("g"), d), mat(j.at("gInverse"), d), dec(j.at("det"))};
}

template <class E, class M>
CommutatorWitness<E> parse_commutator(const json& j, const RingDesc& d, M&& mat) {
  if (!j.is_object() || !j.contains("X") || !j.contains("Y")) throw ParseError("commutator witness needs X and Y");
  CommutatorWitness<E> w{mat(j.at("X"), d), mat(j.at("Y"), d), {}};
  if (j.contains("log")) {
    for (const auto& e : j.at("log")) {
      if (!e.is_object() || !e.contains("step") || !e.contains("value")) throw ParseError("bad log entry");
      w.log.emplace_back(e.at("step").get<std::string>(), e.at("value").get<std::string>());
    }
  }
  return w;
}

template <class E, class M, class D>
LaffeyReamsForm<E> parse_lr(const json& j, const RingDesc& d, M&& mat, D&& dec) {
  if (!j.is_object() || !j.contains("B") || !j.contains("witness") || !j.contains("pivot"))
    throw ParseError("normal form needs B, witness, pivot");
  LaffeyReamsForm<E> f{mat(j.at("B"), d), parse_witness<E>(j.at("witness"), d, mat, dec), dec(j.at("pivot")), {}};
  if (j.contains("probeLog")) {
    for (const auto& e : j.at("probeLog"))
      f.probe_log.push_back({e.at("probe").get<std::string>(), dec(e.at("oldPivot")), dec(e.at("newPivot")),
                             e.at("oldFactors").get<unsigned>(), e.at("newFactors").get<unsigned>()});
  }
  return f;
}

}  // namespace

SimilarityWitness<Integer> parse_int_witness(const json& j, const RingDesc& d) {
  return parse_witness<Integer>(j, d, parse_int_matrix, decode_integer);
}

SimilarityWitness<Poly> parse_poly_witness(const json& j, const RingDesc& d) {
  return parse_witness<Poly>(j, d, parse_poly_matrix, [&](const json& e) { return decode_poly(e, d.p); });
}

CommutatorWitness<Integer> parse_int_commutator(const json& j, const RingDesc& d) {
  return parse_commutator<Integer>(j, d, parse_int_matrix);
}

CommutatorWitness<Poly> parse_poly_commutator(const json& j, const RingDesc& d) {
  return parse_commutator<Poly>(j, d, parse_poly_matrix);
}

LaffeyReamsForm<Integer> parse_int_lr(const json& j, const RingDesc& d) {
  return parse_lr<Integer>(j, d, parse_int_matrix, decode_integer);
}

LaffeyReamsForm<Poly> parse_poly_lr(const json& j, const RingDesc& d) {
  return parse_lr<Poly>(j, d, parse_poly_matrix, [&](const json& e) { return decode_poly(e, d.p); });
}

}  // namespace pidc::io
