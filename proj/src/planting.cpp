#include "codequiv/planting.hpp"

#include <algorithm>
#include <numeric>

#include "codequiv/linalg.hpp"
#include "codequiv/linearized.hpp"

namespace codequiv {

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

Elem random_element(const Field& field, Rng& rng) {
  return std::uniform_int_distribution<Elem>(0, field.q() - 1)(rng);
}

Elem random_nonzero(const Field& field, Rng& rng) {
  return std::uniform_int_distribution<Elem>(1, field.q() - 1)(rng);
}

SemiLinearWitness random_semilinear_witness(const Field& field, std::size_t n, std::uint32_t t,
                                            Rng& rng) {
  SemiLinearWitness w{random_permutation(n, rng), {}, t};
  for (std::size_t i = 0; i < n; ++i) w.lambdas.push_back(random_nonzero(field, rng));
  return w;
}

AdditiveWitness random_additive_witness(const FieldPtr& field, std::size_t n, Rng& rng) {
  const auto perms = additive_permutations(field);
  std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
  AdditiveWitness w{random_permutation(n, rng), {}};
  for (std::size_t i = 0; i < n; ++i) w.maps.push_back(perms[pick(rng)]);
  return w;
}

Word random_codeword(const LinearCode& code, Rng& rng) {
  std::vector<Elem> message(code.dimension());
  for (auto& m : message) m = random_element(*code.field(), rng);
  return code.encode(message);
}

Word random_codeword(const AdditiveCode& code, Rng& rng) {
  const Field& f = *code.field();
  const Matrix& g = code.generators();
  Word w(code.length(), 0);
  std::uniform_int_distribution<Elem> coef(0, f.p() - 1);
  for (std::size_t r = 0; r < g.rows(); ++r) {
    // c * x for c in F_p is repeated addition.
    const Elem c = coef(rng);
    for (Elem i = 0; i < c; ++i) {
      for (std::size_t j = 0; j < w.size(); ++j) w[j] = f.add(w[j], g(r, j));
    }
  }
  return w;
}

Matrix random_generator(const FieldPtr& field, std::size_t k, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix m(field, k, n);
    for (std::size_t r = 0; r < k; ++r) {
      for (auto& x : m.row(r)) x = random_element(*field, rng);
    }
    if (rank(m) == k) return m;
  }
}

}  // namespace codequiv
