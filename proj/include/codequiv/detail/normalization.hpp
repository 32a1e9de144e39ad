#pragma once

// Translation stripping shared by the linear and the additive extractors. The
// two differ only in how a generator entry acts on a message symbol: as a
// field scalar, or as an h x h block over F_p acting on digit row vectors.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "codequiv/code_core.hpp"
#include "codequiv/errors.hpp"
#include "codequiv/finite_field.hpp"
#include "codequiv/linalg.hpp"

namespace codequiv::detail {

struct ScalarAction {
  const Field* field;
  Elem apply(Elem coef, Elem x) const { return field->mul(coef, x); }
  bool is_zero(Elem coef) const { return coef == 0; }
};

struct BlockAction {
  const Field* field;
  Elem apply(const Matrix& block, Elem x) const {
    return field->from_digits(block.left_multiply(field->digits(x)));
  }
  bool is_zero(const Matrix& block) const {
    return std::all_of(block.data().begin(), block.data().end(), [](Elem x) { return x == 0; });
  }
};

// Systematic generator: entry(j, r) is how message symbol j contributes to
// coordinate r. Positions 0..k-1 carry the identity.
template <class Coef>
struct Systematic {
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<Coef> entries;

  const Coef& operator()(std::size_t j, std::size_t r) const { return entries[j * n + r]; }
};

struct Normalized {
  std::vector<std::vector<Elem>> taus;
  Word translation;
};

template <class Action, class Coef>
Elem encode_coordinate(const Action& act, const Systematic<Coef>& g, std::span<const Elem> msg,
                       std::size_t r) {
  Elem acc = 0;
  for (std::size_t j = 0; j < g.k; ++j) acc = act.field->add(acc, act.apply(g(j, r), msg[j]));
  return acc;
}

// Computes tau_r = sigma_r - sigma_r(0) for every coordinate after checking,
// for every parity coordinate r,
//   sum_i beta_{ir} sigma_i(0) = sigma_r(0)
// and, over all messages when q^k <= budget (else those of weight <= 2),
//   sum_j tau_r(alpha_{jr} a_j) = tau_r(sum_j alpha_{jr} a_j).
// The first identity also shows that the translation is a codeword of b.
template <class Action, class Coef>
Normalized normalize_translation(const Action& act, const Systematic<Coef>& a,
                                 const Systematic<Coef>& b,
                                 std::span<const std::vector<Elem>> sigmas,
                                 std::uint64_t budget) {
  const Field& f = *act.field;
  const std::size_t k = a.k;
  const std::size_t n = a.n;
  Normalized out;
  out.translation.resize(n);
  for (std::size_t r = 0; r < n; ++r) out.translation[r] = sigmas[r][0];

  const std::span<const Elem> info(out.translation.data(), k);
  for (std::size_t r = k; r < n; ++r) {
    if (encode_coordinate(act, b, info, r) != out.translation[r]) {
      throw ExtractionError(ExtractionError::Kind::kInvalidWitness,
                            "translation vector is not a codeword of the target (coordinate " +
                                std::to_string(r + 1) + ")");
    }
  }

  out.taus.assign(n, std::vector<Elem>(f.q()));
  for (std::size_t r = 0; r < n; ++r) {
    for (Elem x = 0; x < f.q(); ++x) out.taus[r][x] = f.sub(sigmas[r][x], out.translation[r]);
  }

  std::uint64_t total = 1;
  bool exhaustive = true;
  for (std::size_t j = 0; j < k; ++j) {
    total *= f.q();
    if (total > budget) {
      exhaustive = false;
      break;
    }
  }
  auto check_message = [&](std::span<const Elem> msg) {
    for (std::size_t r = k; r < n; ++r) {
      const auto& tau = out.taus[r];
      Elem lhs = 0;
      for (std::size_t j = 0; j < k; ++j) lhs = f.add(lhs, tau[act.apply(a(j, r), msg[j])]);
      if (lhs != tau[encode_coordinate(act, a, msg, r)]) {
        throw ExtractionError(ExtractionError::Kind::kInvalidWitness,
                              "normalized map is not additive along column " +
                                  std::to_string(r + 1));
      }
    }
  };
  std::vector<Elem> msg(k, 0);
  if (exhaustive) {
    for (;;) {
      check_message(msg);
      std::size_t i = 0;
      while (i < k && msg[i] == f.q() - 1) msg[i++] = 0;
      if (i == k) break;
      ++msg[i];
    }
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        for (Elem x = 1; x < f.q(); ++x) {
          for (Elem y = 1; y < f.q(); ++y) {
            msg[i] = x;
            msg[j] = y;
            check_message(msg);
          }
        }
        msg[j] = 0;
      }
      msg[i] = 0;
    }
  }
  return out;
}

}  // namespace codequiv::detail
