#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>
#include <random>
#include <sstream>
#include <thread>

#include "pidc/commutator/decompose.hpp"
#include "pidc/commutator/field.hpp"
#include "pidc/oracle/oracle.hpp"
#include "pidc/regularity/regularity.hpp"
#include "pidc/similarity/lr_form.hpp"
#include "pidc/similarity/zero_diagonal.hpp"

namespace pidc::cli {

using io::json;
using io::RingDesc;
using io::RingKind;

namespace {

// Thrown when a recomputed identity does not hold.
class Mismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using FpField = ResidueField<IntegerRing>;

const IntegerRing ZZ;

FpField prime_field(const RingDesc& d) { return FpField(ZZ, Integer(static_cast<unsigned long>(d.p))); }

template <class R>
std::string str(const R& r, const typename R::Element& v) {
  return r.to_string(v);
}

template <class R>
void expect_equal(const R& r, const MatrixOf<R>& want, const MatrixOf<R>& got, const std::string& what) {
  if (want.rows() != got.rows() || want.cols() != got.cols()) throw Mismatch(what + ": shape differs");
  for (std::size_t i = 0; i < want.rows(); ++i)
    for (std::size_t j = 0; j < want.cols(); ++j)
      if (!(want(i, j) == got(i, j)))
        throw Mismatch(what + ": entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is " +
                       str(r, got(i, j)) + ", expected " + str(r, want(i, j)));
}

template <class R>
void require_square(const MatrixOf<R>& a) {
  if (!a.square()) throw PreconditionError("matrix is not square");
}

template <class R>
void require_trace_zero(const R& r, const MatrixOf<R>& a) {
  require_square<R>(a);
  typename R::Element t = a.trace();
  if (!(t == r.zero())) throw PreconditionError("trace is " + r.to_string(t) + ", not zero");
}

// Z/N and F_p matrices are stored as canonical integer representatives.
Matrix<Integer> canonical(const Matrix<Integer>& a, const Integer& m) {
  return a.map([&](const Integer& v) {
    Integer r = v % m;
    if (r < 0) r += m;
    return r;
  });
}

Integer modulus_of(const RingDesc& d) {
  return d.kind == RingKind::ZmodN ? d.modulus : Integer(static_cast<unsigned long>(d.p));
}

const json& matrix_doc(const json& item) { return item.contains("A") ? item.at("A") : item; }

RingDesc ring_of(const json& item, const Options& opt) {
  const RingDesc* fb = opt.ring ? &*opt.ring : nullptr;
  return io::matrix_ring(matrix_doc(item), fb);
}

// decompose / field-decompose

template <class R>
json decompose_over(const R& r, const RingDesc& d, const MatrixOf<R>& a, const Options& opt) {
  require_trace_zero(r, a);
  auto w = opt.regular_x ? decompose_3x3_regular(r, a) : decompose(r, a);
  expect_equal(r, a, commutator(w.x, w.y), "XY - YX");
  json out = io::commutator_json(d, w);
  out["A"] = io::matrix_json(d, a);
  if (opt.regular_x) {
    auto cert = find_cyclic_vector(r, w.x);
    out["xCertificate"] = cert ? io::certificate_json(*cert) : json(nullptr);
  }
  out["verified"] = true;
  return out;
}

json field_decompose(const RingDesc& d, const Matrix<Integer>& a) {
  auto f = prime_field(d);
  auto af = reduce_mod(f, a);
  require_trace_zero(f, af);
  auto w = field_commutator(f, af);
  expect_equal(f, af, commutator(w.x, w.y), "XY - YX");
  if (min_poly_degree(f, w.x) != a.rows()) throw Mismatch("X is not regular");
  CommutatorWitness<Integer> lifted{lift_residues(f, w.x), lift_residues(f, w.y), w.log};
  json out = io::commutator_json(d, lifted);
  out["A"] = io::matrix_json(d, a);
  out["verified"] = true;
  return out;
}

json cmd_decompose(const json& item, const Options& opt, bool field_only) {
  RingDesc d = ring_of(item, opt);
  const json& m = matrix_doc(item);
  if (field_only && d.kind != RingKind::Fp) throw PreconditionError("field-decompose needs a prime field, e.g. --ring F5");
  if (opt.regular_x && d.kind != RingKind::Z && d.kind != RingKind::PolyFp)
    throw PreconditionError("--regular-x needs Z or Fp[x]");
  switch (d.kind) {
    case RingKind::Z:
      return decompose_over(ZZ, d, io::parse_int_matrix(m, d), opt);
    case RingKind::PolyFp: {
      PolyRing r(d.p);
      return decompose_over(r, d, io::parse_poly_matrix(m, d), opt);
    }
    case RingKind::Fp:
      return field_decompose(d, io::parse_int_matrix(m, d));
    case RingKind::ZmodN: {
      auto a = io::parse_int_matrix(m, d);
      require_square<IntegerRing>(a);
      Integer t = a.trace() % d.modulus;
      if (t != 0) throw PreconditionError("trace is " + t.get_str() + " mod " + d.modulus.get_str() + ", not zero");
      auto w = decompose_mod_n(d.modulus, a);
      w.x = canonical(w.x, d.modulus);
      w.y = canonical(w.y, d.modulus);
      if (!verifies_mod_n(d.modulus, w, a)) throw Mismatch("XY - YX differs from A mod N");
      json out = io::commutator_json(d, w);
      out["A"] = io::matrix_json(d, a);
      out["verified"] = true;
      return out;
    }
  }
  return nullptr;
}

// normal-form / zero-diag

template <class R>
void check_similarity(const R& r, const MatrixOf<R>& a, const SimilarityWitness<typename R::Element>& w,
                      const MatrixOf<R>& b) {
  expect_equal(r, identity(r, a.rows()), MatrixOf<R>(w.g * w.g_inverse), "g gInverse");
  expect_equal(r, b, w.conjugate(a), "g A gInverse");
}

template <class R>
json normal_form_over(const R& r, const RingDesc& d, const MatrixOf<R>& a) {
  require_square<R>(a);
  if (a.rows() < 3) throw PreconditionError("n >= 3 required");
  if (is_scalar(r, a)) throw PreconditionError("matrix is scalar");
  auto f = lr_form(r, a);
  check_similarity(r, a, f.witness, f.b);
  json out = io::lr_json(d, f);
  out["A"] = io::matrix_json(d, a);
  out["verified"] = true;
  return out;
}

template <class R>
json zero_diag_over(const R& r, const RingDesc& d, const MatrixOf<R>& a) {
  require_trace_zero(r, a);
  auto z = zero_diagonal_form(r, a);
  check_similarity(r, a, z.witness, z.b);
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (!r.is_zero(z.b(i, i))) throw Mismatch("diagonal entry " + std::to_string(i + 1) + " is nonzero");
  json out{{"A", io::matrix_json(d, a)}, {"B", io::matrix_json(d, z.b)}, {"witness", io::witness_json(d, z.witness)}};
  out["verified"] = true;
  return out;
}

template <class F>
json integral_domain_only(const json& item, const Options& opt, const char* verb, F&& body) {
  RingDesc d = ring_of(item, opt);
  const json& m = matrix_doc(item);
  if (d.kind == RingKind::Z) return body(ZZ, d, io::parse_int_matrix(m, d));
  if (d.kind == RingKind::PolyFp) {
    PolyRing r(d.p);
    return body(r, d, io::parse_poly_matrix(m, d));
  }
  throw PreconditionError(std::string(verb) + " needs Z or Fp[x]");
}

// verify

json oracle_report(const RingDesc& d, const Matrix<Integer>& x) {
  json rep = json::object();
  if (d.kind == RingKind::Fp) {
    bool regular = oracle::brute_regularity(x, d.p);
    rep["xRegular"] = regular;
    rep["centraliserDim"] = oracle::brute_centralizer_dim(x, d.p);
    if (!regular) throw Mismatch("oracle: X is not regular over F" + std::to_string(d.p));
    return rep;
  }
  json dims = json::object();
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) dims[std::to_string(p)] = oracle::brute_centralizer_dim(x, p);
  rep["centraliserDimModP"] = dims;
  return rep;
}

template <class R, class ParseM, class ParseC, class ParseW>
json verify_over(const R& r, const RingDesc& d, const json& item, ParseM&& pm, ParseC&& pc, ParseW&& pw,
                 const Options& opt, const std::optional<Integer>& modulus) {
  auto a = pm(item.at("A"), d);
  json out{{"verified", true}};
  if (item.contains("X") || item.contains("Y")) {
    auto w = pc(item, d);
    MatrixOf<R> c = commutator(w.x, w.y);
    if constexpr (std::is_same_v<MatrixOf<R>, Matrix<Integer>>) {
      if (modulus) c = canonical(c, *modulus);
    }
    expect_equal(r, a, c, "XY - YX");
    out["kind"] = "commutator";
    if (opt.oracle) {
      if constexpr (std::is_same_v<MatrixOf<R>, Matrix<Integer>>) out["oracle"] = oracle_report(d, w.x);
    }
  } else if (item.contains("B") && item.contains("witness")) {
    auto b = pm(item.at("B"), d);
    auto w = pw(item.at("witness"), d);
    MatrixOf<R> gg = w.g * w.g_inverse, gab = w.conjugate(a);
    if constexpr (std::is_same_v<MatrixOf<R>, Matrix<Integer>>) {
      if (modulus) {
        gg = canonical(gg, *modulus);
        gab = canonical(gab, *modulus);
      }
    }
    expect_equal(r, identity(r, a.rows()), gg, "g gInverse");
    expect_equal(r, b, gab, "g A gInverse");
    out["kind"] = "similarity";
  } else {
    throw io::ParseError("verify needs A with X, Y or with B, witness");
  }
  return out;
}

json cmd_verify(const json& item, const Options& opt) {
  if (!item.is_object() || !item.contains("A")) throw io::ParseError("verify needs an object with \"A\"");
  RingDesc d = ring_of(item, opt);
  if (d.kind == RingKind::PolyFp) {
    PolyRing r(d.p);
    return verify_over(r, d, item, io::parse_poly_matrix, io::parse_poly_commutator, io::parse_poly_witness, opt,
                       std::nullopt);
  }
  std::optional<Integer> mod;
  if (d.kind != RingKind::Z) mod = modulus_of(d);
  return verify_over(ZZ, d, item, io::parse_int_matrix, io::parse_int_commutator, io::parse_int_witness, opt, mod);
}

// regular-check

Poly parse_poly_flag(const std::string& s, std::uint64_t p) {
  json arr = json::array();
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) arr.push_back(tok);
  return io::decode_poly(arr, p);
}

template <class R>
json regular_over(const R& r, const RingDesc& d, const MatrixOf<R>& x, const std::optional<typename R::Element>& p,
                  const Options& opt) {
  require_square<R>(x);
  json out{{"A", io::matrix_json(d, x)}, {"regularOverFractions", is_regular_over_fractions(r, x)}};
  auto cert = find_cyclic_vector(r, x);
  if (cert && !check_certificate(r, x, *cert)) throw Mismatch("certificate failed its own check");
  out["certificate"] = cert ? io::certificate_json(*cert) : json(nullptr);
  if (p) {
    auto m = is_regular_mod_prime(r, x, *p);
    json mp{{"p", io::encode(*p)}, {"regular", m.regular}};
    mp["cyclicVector"] = m.cyclic_vector ? io::encode_vector(*m.cyclic_vector) : json(nullptr);
    if constexpr (std::is_same_v<R, IntegerRing>) {
      if (opt.oracle) {
        bool brute = oracle::brute_regularity(x, p->get_ui());
        mp["oracle"] = {{"regular", brute}, {"centraliserDim", oracle::brute_centralizer_dim(x, p->get_ui())}};
        if (brute != m.regular) throw Mismatch("oracle disagrees with is_regular_mod_prime");
      }
    }
    out["modPrime"] = mp;
  }
  return out;
}

json cmd_regular_check(const json& item, const Options& opt) {
  RingDesc d = ring_of(item, opt);
  const json& m = matrix_doc(item);
  switch (d.kind) {
    case RingKind::Z: {
      std::optional<Integer> p;
      if (opt.prime) {
        p = io::decode_integer(*opt.prime);
        if (p->fits_ulong_p() == 0 || !ZZ.is_irreducible(*p)) throw PreconditionError("--prime is not a prime");
      }
      return regular_over(ZZ, d, io::parse_int_matrix(m, d), p, opt);
    }
    case RingKind::PolyFp: {
      PolyRing r(d.p);
      std::optional<Poly> p;
      if (opt.prime) {
        p = parse_poly_flag(*opt.prime, d.p);
        if (!r.is_irreducible(*p)) throw PreconditionError("--prime is not irreducible");
      }
      return regular_over(r, d, io::parse_poly_matrix(m, d), p, opt);
    }
    case RingKind::Fp: {
      auto a = io::parse_int_matrix(m, d);
      require_square<IntegerRing>(a);
      auto f = prime_field(d);
      bool regular = min_poly_degree(f, reduce_mod(f, a)) == a.rows();
      json out{{"A", io::matrix_json(d, a)}, {"regular", regular}};
      if (opt.oracle) {
        bool brute = oracle::brute_regularity(a, d.p);
        out["oracle"] = {{"regular", brute}, {"centraliserDim", oracle::brute_centralizer_dim(a, d.p)}};
        if (brute != regular) throw Mismatch("oracle disagrees with the minimal polynomial degree");
      }
      return out;
    }
    case RingKind::ZmodN:
      break;
  }
  throw PreconditionError("regular-check needs Z, Fp[x] or Fp");
}

Outcome guarded(const std::function<json()>& f) {
  Outcome o;
  try {
    o.output = f();
    return o;
  } catch (const Mismatch& e) {
    o.code = kVerificationFailure;
    o.message = e.what();
  } catch (const io::ParseError& e) {
    o.code = kUsage;
    o.message = e.what();
  } catch (const json::exception& e) {
    o.code = kUsage;
    o.message = std::string("malformed JSON: ") + e.what();
  } catch (const InvariantFailure& e) {
    o.code = kVerificationFailure;
    o.message = std::string("internal check failed: ") + e.what();
  } catch (const WitnessInvalid& e) {
    o.code = kVerificationFailure;
    o.message = e.what();
  } catch (const NotApplicable& e) {
    o.code = kPrecondition;
    o.message = e.what();
  } catch (const Error& e) {
    o.code = kPrecondition;
    o.message = e.what();
  } catch (const std::exception& e) {
    o.code = kVerificationFailure;
    o.message = std::string("unexpected error: ") + e.what();
  }
  o.output = nullptr;
  return o;
}

std::function<json(const json&)> handler(const std::string& verb, const Options& opt) {
  if (verb == "decompose") return [opt](const json& i) { return cmd_decompose(i, opt, false); };
  if (verb == "field-decompose") return [opt](const json& i) { return cmd_decompose(i, opt, true); };
  if (verb == "normal-form")
    return [opt](const json& i) {
      return integral_domain_only(i, opt, "normal-form",
                                  [](const auto& r, const RingDesc& d, const auto& a) { return normal_form_over(r, d, a); });
    };
  if (verb == "zero-diag")
    return [opt](const json& i) {
      return integral_domain_only(i, opt, "zero-diag",
                                  [](const auto& r, const RingDesc& d, const auto& a) { return zero_diag_over(r, d, a); });
    };
  if (verb == "verify") return [opt](const json& i) { return cmd_verify(i, opt); };
  if (verb == "regular-check") return [opt](const json& i) { return cmd_regular_check(i, opt); };
  return nullptr;
}

}  // namespace

Outcome run(const std::string& verb, const json& input, const Options& opt) {
  if (verb == "gen") return generate(opt);
  auto h = handler(verb, opt);
  if (!h) return {kUsage, nullptr, "unknown verb: " + verb};

  // A batch is a JSON array, or an object with "matrices" (gen output) or
  // "results" (decompose output); a batch-level ring tag applies to items.
  const json* items = nullptr;
  if (input.is_array()) items = &input;
  else if (input.is_object() && input.contains("matrices")) items = &input.at("matrices");
  else if (input.is_object() && input.contains("results")) items = &input.at("results");
  if (!items) return guarded([&] { return h(input); });
  if (!items->is_array()) return {kUsage, nullptr, "batch must be an array"};

  Options item_opt = opt;
  if (input.is_object() && input.contains("ring")) {
    Outcome bad = guarded([&] {
      RingDesc d = io::parse_ring(input);
      if (opt.ring && !(d == *opt.ring)) throw io::ParseError("batch ring differs from --ring");
      item_opt.ring = d;
      return json(nullptr);
    });
    if (bad.code != kOk) return bad;
  }
  auto ih = handler(verb, item_opt);

  const std::size_t count = items->size();
  std::vector<Outcome> results(count);
  unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i; (i = next++) < count;) results[i] = guarded([&] { return ih((*items)[i]); });
    }));
  for (auto& f : pool) f.get();

  json out = json::array();
  for (std::size_t i = 0; i < count; ++i) {
    if (results[i].code != kOk)
      return {results[i].code, nullptr, "item " + std::to_string(i) + ": " + results[i].message};
    out.push_back(std::move(results[i].output));
  }
  json doc = json::object();
  if (item_opt.ring) doc = io::ring_json(*item_opt.ring);
  doc["count"] = count;
  doc["results"] = std::move(out);
  return {kOk, std::move(doc), ""};
}

Outcome generate(const Options& opt) {
  return guarded([&] {
    if (!opt.ring) throw io::ParseError("gen needs --ring");
    if (opt.bound < 1) throw io::ParseError("--bound must be at least 1");
    if (opt.n < 1) throw io::ParseError("--n must be at least 1");
    const RingDesc& d = *opt.ring;
    const std::size_t n = opt.n;
    std::mt19937_64 rng(opt.seed);
    gmp_randclass big(gmp_randinit_mt);
    big.seed(static_cast<unsigned long>(opt.seed));
    json mats = json::array();
    for (std::size_t k = 0; k < opt.count; ++k) {
      if (d.kind == RingKind::PolyFp) {
        PolyRing r(d.p);
        std::uniform_int_distribution<std::uint64_t> coeff(0, d.p - 1);
        Matrix<Poly> a(n, n, r.zero());
        Poly t = r.zero();
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            if (i == n - 1 && j == n - 1) continue;
            std::vector<std::uint64_t> c(static_cast<std::size_t>(opt.bound) + 1);
            for (auto& v : c) v = coeff(rng);
            a(i, j) = Poly(d.p, c);
            if (i == j) t = t + a(i, j);
          }
        a(n - 1, n - 1) = -t;
        mats.push_back(io::matrix_json(d, a));
        continue;
      }
      Matrix<Integer> a(n, n, Integer(0));
      std::uniform_int_distribution<long> entry(-opt.bound, opt.bound);
      const bool modular = d.kind != RingKind::Z;
      const Integer m = modular ? modulus_of(d) : Integer(0);
      Integer t = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (i == n - 1 && j == n - 1) continue;
          a(i, j) = modular ? Integer(big.get_z_range(m)) : Integer(entry(rng));
          if (i == j) t += a(i, j);
        }
      a(n - 1, n - 1) = -t;
      if (modular) a = canonical(a, m);
      mats.push_back(io::matrix_json(d, a));
    }
    json doc = io::ring_json(d);
    doc["seed"] = opt.seed;
    doc["n"] = n;
    doc["count"] = opt.count;
    doc["bound"] = opt.bound;
    doc["matrices"] = mats;
    return doc;
  });
}

}  // namespace pidc::cli
