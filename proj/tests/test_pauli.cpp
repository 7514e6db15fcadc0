#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <unordered_set>

#include "oracles.hpp"
#include "syndromest/codes.hpp"
#include "syndromest/errors.hpp"
#include "syndromest/pauli.hpp"

using namespace syndromest;

TEST_CASE("single-qubit Pauli algebra") {
  CHECK(Pauli::X * Pauli::Z == Pauli::Y);
  CHECK(Pauli::Z * Pauli::X == Pauli::Y);  // phase-free
  CHECK(Pauli::X * Pauli::X == Pauli::I);
  CHECK(Pauli::Y * Pauli::Z == Pauli::X);
  for (Pauli e : kPaulis) CHECK(e * Pauli::I == e);
  CHECK(anticommute(Pauli::X, Pauli::Z));
  CHECK(!anticommute(Pauli::X, Pauli::X));
  CHECK(!anticommute(Pauli::I, Pauli::Z));
}

TEST_CASE("commutes matches the matrix oracle") {
  CHECK(commutes(PauliString::from_string("XI"), PauliString::from_string("XI")));
  CHECK(!commutes(PauliString::from_string("XI"), PauliString::from_string("ZI")));
  // two anti-commuting positions cancel
  const PauliString a = PauliString::from_string("XZ");
  const PauliString b = PauliString::from_string("ZX");
  CHECK(commutes(a, b));
  CHECK(oracle::commute_matrices(a, b));

  // exhaustive n = 2 against the 4x4 matrix multiplication oracle
  for (int ai = 0; ai < 16; ++ai)
    for (int bi = 0; bi < 16; ++bi) {
      PauliString pa(2), pb(2);
      pa.set(0, static_cast<Pauli>(ai & 3));
      pa.set(1, static_cast<Pauli>(ai >> 2));
      pb.set(0, static_cast<Pauli>(bi & 3));
      pb.set(1, static_cast<Pauli>(bi >> 2));
      CHECK(commutes(pa, pb) == oracle::commute_matrices(pa, pb));
    }

  CHECK_THROWS_AS(commutes(PauliString(2), PauliString(3)), std::invalid_argument);
}

TEST_CASE("symplectic product is symmetric and bilinear (exhaustive n <= 2)") {
  for (int ai = 0; ai < 16; ++ai)
    for (int bi = 0; bi < 16; ++bi) {
      PauliString pa(2), pb(2);
      pa.set(0, static_cast<Pauli>(ai & 3));
      pa.set(1, static_cast<Pauli>(ai >> 2));
      pb.set(0, static_cast<Pauli>(bi & 3));
      pb.set(1, static_cast<Pauli>(bi >> 2));
      CHECK(commutes(pa, pb) == commutes(pb, pa));
      // bilinearity: <a, b*c> = <a,b> xor <a,c>
      for (int ci = 0; ci < 16; ++ci) {
        PauliString pc(2);
        pc.set(0, static_cast<Pauli>(ci & 3));
        pc.set(1, static_cast<Pauli>(ci >> 2));
        const bool lhs = !commutes(pa, pb * pc);
        const bool rhs = !commutes(pa, pb) != !commutes(pa, pc);
        CHECK(lhs == rhs);
      }
    }
}

TEST_CASE("5-qubit code syndromes") {
  const StabilizerCode code = five_qubit_code();
  CHECK(code.syndrome(PauliString::from_string("XXXII")).str() == "0101");
  CHECK(code.syndrome(PauliString::from_string("XIZZI")).str() == "1010");
  CHECK(code.syndrome(PauliString(5)).str() == "0000");
  CHECK_THROWS_AS(code.syndrome(PauliString(4)), std::invalid_argument);
}

TEST_CASE("syndrome is a homomorphism (exhaustive n = 5)") {
  const StabilizerCode code = five_qubit_code();
  std::vector<Syndrome> syn;
  std::vector<PauliString> all;
  for (std::uint64_t a = 0; a < 1024; ++a) {
    PauliString p(5);
    for (int q = 0; q < 5; ++q) p.set(q, static_cast<Pauli>((a >> (2 * q)) & 3));
    syn.push_back(code.syndrome(p));
    all.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); j += 7) {  // stride keeps it quick
      const Syndrome expect = syn[i] ^ syn[j];
      CHECK(code.syndrome(all[i] * all[j]) == expect);
    }
}

TEST_CASE("syndrome_inverse on the perfect 5-qubit code") {
  const StabilizerCode code = five_qubit_code();
  REQUIRE(code.is_perfect());
  CHECK(code.syndrome_inverse(Syndrome::from_string("1100")) ==
        PauliString::from_string("IIXII"));
  CHECK(code.syndrome_inverse(Syndrome::from_string("0011")) ==
        PauliString::from_string("IIIIX"));

  // bijection: every nonzero syndrome maps to a distinct weight-1 error
  std::set<std::string> seen;
  for (std::uint64_t v = 1; v < 16; ++v) {
    const PauliString e = code.syndrome_inverse(Syndrome::from_uint(4, v));
    CHECK(e.weight() == 1);
    CHECK(code.syndrome(e).to_uint() == v);
    seen.insert(e.str());
  }
  CHECK(seen.size() == 15);

  CHECK_THROWS_AS(code.syndrome_inverse(Syndrome(4)), std::domain_error);
  CHECK_THROWS_AS(repetition_code(3).syndrome_inverse(Syndrome::from_string("10")),
                  UnsupportedError);
}

TEST_CASE("weight-1 syndromes of the 5-qubit code are a bijection onto F_2^4") {
  const StabilizerCode code = five_qubit_code();
  std::set<std::uint64_t> values = {0};  // identity
  for (int q = 0; q < 5; ++q)
    for (Pauli e : {Pauli::X, Pauli::Y, Pauli::Z})
      values.insert(code.syndrome(PauliString::single(5, q, e)).to_uint());
  CHECK(values.size() == 16);
}

TEST_CASE("logical_class basics and coset-table oracle") {
  const StabilizerCode code = five_qubit_code();
  for (const auto& g : code.generators()) CHECK(code.logical_class(g).value == Pauli::I);
  const PauliString xl = PauliString::from_string("XXXXX");
  const PauliString zl = PauliString::from_string("ZZZZZ");
  CHECK(code.logical_class(xl).value == Pauli::X);
  CHECK(code.logical_class(zl).value == Pauli::Z);
  CHECK(code.logical_class(code.generators()[0] * xl).value == Pauli::X);

  // oracle: within a syndrome coset, equal class iff the product lies in the
  // stabilizer group
  const auto stab = oracle::stabilizer_group(code);
  std::unordered_set<PauliString, PauliStringHash> stab_set(stab.begin(), stab.end());
  const auto coset = enumerate_coset(code, Syndrome::from_string("0110"));
  REQUIRE(coset.size() == 64);
  for (std::size_t i = 0; i < coset.size(); i += 3)
    for (std::size_t j = 0; j < coset.size(); j += 5) {
      const bool same_class =
          code.logical_class(coset[i]).value == code.logical_class(coset[j]).value;
      const bool stab_related = stab_set.count(coset[i] * coset[j]) > 0;
      CHECK(same_class == stab_related);
    }

  CHECK_THROWS_AS(repetition_code(3).logical_class(PauliString(3)), std::exception);
  StabilizerCode no_logicals(5, five_qubit_code().generators());
  CHECK_THROWS_AS(no_logicals.logical_class(PauliString(5)), UnsupportedError);
}

TEST_CASE("logical_class is multiplicative and coset-constant") {
  const StabilizerCode code = five_qubit_code();
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    PauliString a(5), b(5);
    for (int q = 0; q < 5; ++q) {
      a.set(q, static_cast<Pauli>(rng.next_u64() & 3));
      b.set(q, static_cast<Pauli>(rng.next_u64() & 3));
    }
    CHECK(code.logical_class(a * b).value ==
          code.logical_class(a).value * code.logical_class(b).value);
    const PauliString g = code.generators()[rng.next_u64() % 4];
    CHECK(code.logical_class(a * g).value == code.logical_class(a).value);
  }
}

TEST_CASE("enumerate_coset partitions the full group") {
  const StabilizerCode code = five_qubit_code();
  std::size_t total = 0;
  std::unordered_set<PauliString, PauliStringHash> seen;
  for (std::uint64_t v = 0; v < 16; ++v) {
    const auto coset = enumerate_coset(code, Syndrome::from_uint(4, v));
    CHECK(coset.size() == 64);
    for (const auto& e : coset) {
      CHECK(seen.insert(e).second);  // disjoint
      CHECK(code.syndrome(e).to_uint() == v);
    }
    total += coset.size();
  }
  CHECK(total == 1024);
  const auto zero_coset = enumerate_coset(code, Syndrome(4));
  CHECK(std::find(zero_coset.begin(), zero_coset.end(), PauliString(5)) != zero_coset.end());
}

TEST_CASE("PauliString parsing rejects bad letters") {
  CHECK_THROWS_AS(PauliString::from_string("IXQ"), std::invalid_argument);
  const PauliString p = PauliString::from_string("IXYZI");
  CHECK(p.str() == "IXYZI");
  CHECK(p.weight() == 3);
  CHECK(Syndrome::from_string("0101").str() == "0101");
  CHECK_THROWS_AS(Syndrome::from_string("012"), std::invalid_argument);
}

TEST_CASE("large PauliString spans several words") {
  PauliString p(125);
  p.set(0, Pauli::X);
  p.set(77, Pauli::Y);
  p.set(124, Pauli::Z);
  CHECK(p.weight() == 3);
  CHECK(p.at(77) == Pauli::Y);
  PauliString q(125);
  q.set(77, Pauli::X);
  CHECK(!p.commutes_with(q));  // only qubit 77 contributes, Y vs X
  q.set(77, Pauli::Y);
  CHECK(p.commutes_with(q));
  CHECK((p * q).weight() == 2);
}
