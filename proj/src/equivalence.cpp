#include "codequiv/equivalence.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "codequiv/detail/normalization.hpp"
#include "codequiv/errors.hpp"

namespace codequiv {
namespace {

using Kind = ExtractionError::Kind;

bool is_bijection(const Field& f, std::span<const Elem> table) {
  if (table.size() != f.q()) return false;
  std::vector<bool> seen(f.q(), false);
  for (Elem y : table) {
    if (y >= f.q() || seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

void require_compatible(const Code& a, const Code& b) {
  require_same_field(*a.field(), *b.field());
  if (a.length() != b.length()) throw CodeError("codes have different lengths");
}

// Both codes in standard form on the leftmost information set of the source
// after its coordinates were moved by alpha.
struct Aligned {
  Matrix a;
  Matrix b;
  std::vector<std::size_t> order;
  std::vector<std::vector<Elem>> sigmas;
};

Aligned align(const GeneralWitness& w, const LinearCode& a, const LinearCode& b) {
  require_compatible(a, b);
  if (a.dimension() != b.dimension()) {
    throw ExtractionError(Kind::kInvalidWitness, "codes have different dimensions");
  }
  try {
    validate_witness(*a.field(), w, a.length());
  } catch (const WitnessError& e) {
    throw ExtractionError(Kind::kInvalidWitness, e.what());
  }
  const LinearCode moved = permute_coordinates(a, w.alpha);
  StandardForm sf = standard_form(moved.generator().matrix());
  const Matrix b_perm = b.generator().matrix().select_columns(sf.permutation);
  std::vector<std::size_t> head(a.dimension());
  std::iota(head.begin(), head.end(), 0);
  const auto inv = inverse(b_perm.select_columns(head));
  if (!inv) {
    throw ExtractionError(Kind::kInvalidWitness,
                          "information set of the source is not one of the target");
  }
  Aligned out{std::move(sf.matrix), *inv * b_perm, std::move(sf.permutation), {}};
  for (auto pos : out.order) out.sigmas.push_back(w.sigmas[pos]);
  for (std::size_t j = 0; j < out.a.rows(); ++j) {
    for (std::size_t r = 0; r < out.a.cols(); ++r) {
      if ((out.a(j, r) == 0) != (out.b(j, r) == 0)) {
        throw ExtractionError(Kind::kInvalidWitness,
                              "standard forms have different supports at row " +
                                  std::to_string(j + 1) + ", column " + std::to_string(r + 1));
      }
    }
  }
  return out;
}

detail::Systematic<Elem> systematic(const Matrix& m) {
  return {m.rows(), m.cols(), m.data()};
}

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t x, std::size_t y) { parent[find(x)] = find(y); }
  std::vector<std::size_t> parent;
};

std::vector<Elem> nonzero_support(const Matrix& g, std::size_t col) {
  std::vector<Elem> rows;
  for (std::size_t j = 0; j < g.rows(); ++j) {
    if (g(j, col) != 0) rows.push_back(static_cast<Elem>(j));
  }
  return rows;
}

WeightOneProfile weight_one_profile(const Field& f, const Aligned& al) {
  const std::size_t k = al.a.rows();
  const std::size_t n = al.a.cols();
  WeightOneProfile profile;
  profile.row_of.resize(n);
  profile.multiplicities.assign(k, 0);
  profile.thetas.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t j = nonzero_support(al.a, r).front();
    profile.row_of[r] = j;
    ++profile.multiplicities[j];
    auto& theta = profile.thetas[r];
    theta.resize(f.q());
    const Elem beta_inv = f.inv(al.b(j, r));
    for (Elem x = 0; x < f.q(); ++x) {
      theta[x] = f.mul(beta_inv, al.sigmas[r][f.mul(al.a(j, r), x)]);
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (profile.thetas[r] != profile.thetas[profile.row_of[r]]) {
      throw ExtractionError(Kind::kInvalidWitness,
                            "coordinates " + std::to_string(r + 1) + " and " +
                                std::to_string(profile.row_of[r] + 1) +
                                " repeat the same symbol but carry different maps");
    }
  }
  return profile;
}

SemiLinearWitness to_target_positions(const GeneralWitness& w, const Aligned& al,
                                      const std::vector<Elem>& lambdas, std::uint32_t t) {
  SemiLinearWitness out{w.alpha, std::vector<Elem>(lambdas.size()), t};
  for (std::size_t m = 0; m < lambdas.size(); ++m) out.lambdas[al.order[m]] = lambdas[m];
  return out;
}

}  // namespace

GeneralWitness identity_witness(const Field& field, std::size_t n) {
  GeneralWitness w;
  w.alpha.resize(n);
  std::iota(w.alpha.begin(), w.alpha.end(), 0);
  std::vector<Elem> id(field.q());
  std::iota(id.begin(), id.end(), 0);
  w.sigmas.assign(n, id);
  return w;
}

GeneralWitness to_general(const Field& field, const SemiLinearWitness& w) {
  validate_witness(field, w, w.alpha.size());
  GeneralWitness out{w.alpha, {}};
  for (Elem lambda : w.lambdas) {
    std::vector<Elem> table(field.q());
    for (Elem x = 0; x < field.q(); ++x) table[x] = field.mul(lambda, field.frobenius(x, w.t));
    out.sigmas.push_back(std::move(table));
  }
  return out;
}

GeneralWitness to_general(const AdditiveWitness& w) {
  validate_witness(w, w.alpha.size());
  GeneralWitness out{w.alpha, {}};
  for (const auto& m : w.maps) out.sigmas.push_back(m.table());
  return out;
}

GeneralWitness compose_translation(const Field& field, GeneralWitness w, std::span<const Elem> c) {
  if (c.size() != w.sigmas.size()) throw CodeError("translation length does not match the witness");
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (auto& y : w.sigmas[i]) y = field.add(y, c[i]);
  }
  return w;
}

void validate_witness(const Field& field, const GeneralWitness& w, std::size_t n) {
  if (!is_permutation(w.alpha, n)) throw WitnessError("alpha is not a permutation of the coordinates");
  if (w.sigmas.size() != n) throw WitnessError("witness needs one symbol map per coordinate");
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_bijection(field, w.sigmas[i])) {
      throw WitnessError("sigma" + std::to_string(i + 1) + " is not a permutation of the field");
    }
  }
}

void validate_witness(const Field& field, const SemiLinearWitness& w, std::size_t n) {
  if (!is_permutation(w.alpha, n)) throw WitnessError("alpha is not a permutation of the coordinates");
  if (w.lambdas.size() != n) throw WitnessError("witness needs one scalar per coordinate");
  if (w.t >= field.h()) throw WitnessError("Frobenius exponent out of range");
  for (Elem l : w.lambdas) {
    if (l == 0 || !field.contains(l)) throw WitnessError("scalars must be nonzero field elements");
  }
}

void validate_witness(const AdditiveWitness& w, std::size_t n) {
  if (!is_permutation(w.alpha, n)) throw WitnessError("alpha is not a permutation of the coordinates");
  if (w.maps.size() != n) throw WitnessError("witness needs one additive map per coordinate");
  for (std::size_t i = 0; i < n; ++i) {
    if (!w.maps[i].is_permutation()) {
      throw WitnessError("map c" + std::to_string(i + 1) + " is not invertible");
    }
  }
}

Word apply_witness(const Field& field, const GeneralWitness& w, std::span<const Elem> u) {
  if (u.size() != w.alpha.size()) throw CodeError("word length does not match the witness");
  Word out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (!field.contains(u[j])) throw CodeError("word symbol outside the field");
    out[w.alpha[j]] = w.sigmas[w.alpha[j]][u[j]];
  }
  return out;
}

Word apply_witness(const Field& field, const SemiLinearWitness& w, std::span<const Elem> u) {
  if (u.size() != w.alpha.size()) throw CodeError("word length does not match the witness");
  Word out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const std::size_t i = w.alpha[j];
    out[i] = field.mul(w.lambdas[i], field.frobenius(u[j], w.t));
  }
  return out;
}

Word apply_witness(const AdditiveWitness& w, std::span<const Elem> u) {
  if (u.size() != w.alpha.size()) throw CodeError("word length does not match the witness");
  Word out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) out[w.alpha[j]] = w.maps[w.alpha[j]](u[j]);
  return out;
}

bool is_equivalence(const GeneralWitness& w, const Code& a, const Code& b, std::uint64_t budget) {
  require_compatible(a, b);
  const Field& f = *a.field();
  try {
    validate_witness(f, w, a.length());
  } catch (const WitnessError&) {
    return false;
  }
  if (a.prime_dimension() != b.prime_dimension()) return false;
  // Coordinatewise bijections are injective on words, so image inside b and
  // equal sizes give image == b.
  bool ok = true;
  a.for_each_codeword(
      [&](std::span<const Elem> u) {
        if (ok && !b.contains(apply_witness(f, w, u))) ok = false;
      },
      budget);
  return ok;
}

bool is_equivalence(const SemiLinearWitness& w, const Code& a, const Code& b, std::uint64_t budget) {
  require_compatible(a, b);
  try {
    validate_witness(*a.field(), w, a.length());
  } catch (const WitnessError&) {
    return false;
  }
  return is_equivalence(to_general(*a.field(), w), a, b, budget);
}

bool is_equivalence(const AdditiveWitness& w, const Code& a, const Code& b, std::uint64_t budget) {
  require_compatible(a, b);
  try {
    validate_witness(w, a.length());
  } catch (const WitnessError&) {
    return false;
  }
  return is_equivalence(to_general(w), a, b, budget);
}

bool preserves_distance(const GeneralWitness& w, const Code& a, std::uint64_t budget) {
  const Field& f = *a.field();
  const auto words = a.codewords(budget);
  std::vector<Word> images;
  images.reserve(words.size());
  for (const auto& u : words) images.push_back(apply_witness(f, w, u));
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (hamming_distance(words[i], words[j]) != hamming_distance(images[i], images[j])) {
        return false;
      }
    }
  }
  return true;
}

TranslationVector translation_component(const GeneralWitness& w) {
  TranslationVector out;
  for (const auto& table : w.sigmas) {
    if (table.empty()) throw WitnessError("empty symbol table");
    out.v.push_back(table[0]);
  }
  return out;
}

TranslationVector translation_component(const GeneralWitness& w, const Code& b) {
  auto out = translation_component(w);
  if (out.v.size() != b.length()) throw CodeError("witness length does not match the code");
  if (!b.contains(out.v)) {
    throw WitnessError("translation vector (sigma_i(0)) is not a codeword of the target code");
  }
  return out;
}

LinearCode apply_to_code(const LinearCode& a, const SemiLinearWitness& w) {
  const Field& f = *a.field();
  validate_witness(f, w, a.length());
  const Matrix& g = a.generator().matrix();
  Matrix out(a.field(), g.rows(), g.cols());
  for (std::size_t j = 0; j < g.cols(); ++j) {
    const std::size_t i = w.alpha[j];
    for (std::size_t r = 0; r < g.rows(); ++r) {
      out(r, i) = f.mul(w.lambdas[i], f.frobenius(g(r, j), w.t));
    }
  }
  return LinearCode(std::move(out));
}

AdditiveWitness normalize_to_additive(const GeneralWitness& w, const LinearCode& a,
                                      const LinearCode& b) {
  const Aligned al = align(w, a, b);
  if (all_columns_weight_one(al.a, al.b)) {
    throw HypothesisViolation(
        "every column of both standard-form generators has weight one; "
        "use the repetition-code route");
  }
  const FieldPtr& field = a.field();
  const detail::ScalarAction act{field.get()};
  const auto normalized =
      detail::normalize_translation(act, systematic(al.a), systematic(al.b), al.sigmas,
                                    kDefaultEnumerationBudget);
  AdditiveWitness out{w.alpha, std::vector<LinearizedMap>(a.length(), LinearizedMap::identity(field))};
  for (std::size_t m = 0; m < a.length(); ++m) {
    out.maps[al.order[m]] = LinearizedMap::from_table(field, normalized.taus[m]);
  }
  if (!is_equivalence(out, a, b)) {
    throw ExtractionError(Kind::kInvalidWitness, "normalized witness does not map the codes");
  }
  return out;
}

SemiLinearExtraction extract_semilinear(const GeneralWitness& w, const LinearCode& a,
                                        const LinearCode& b) {
  const FieldPtr& field = a.field();
  const Field& f = *field;
  const Aligned al = align(w, a, b);
  const std::size_t k = al.a.rows();
  const std::size_t n = al.a.cols();

  SemiLinearExtraction result;
  result.reordering = al.order;

  if (all_columns_weight_one(al.a, al.b)) {
    result.branch = SemiLinearExtraction::Branch::kWeightOne;
    result.profile = weight_one_profile(f, al);
    std::vector<Elem> lambdas(n);
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t j = result.profile->row_of[r];
      lambdas[r] = f.div(al.b(j, r), al.a(j, r));
    }
    result.witness = to_target_positions(w, al, lambdas, 0);
    if (!is_equivalence(result.witness, a, b)) {
      throw ExtractionError(Kind::kInvalidWitness, "witness does not map the repetition codes");
    }
    return result;
  }

  result.branch = SemiLinearExtraction::Branch::kAdditive;
  const detail::ScalarAction act{field.get()};
  const auto normalized = detail::normalize_translation(act, systematic(al.a), systematic(al.b),
                                                        al.sigmas, kDefaultEnumerationBudget);

  // Rows linked through columns of weight >= 2 form independent summands; the
  // remaining rows together with their weight-one columns are repetition codes.
  const auto weights = column_weights(al.a);
  DisjointSets sets(k);
  std::vector<bool> heavy_row(k, false);
  for (std::size_t r = k; r < n; ++r) {
    if (weights[r] < 2) continue;
    const auto rows = nonzero_support(al.a, r);
    for (auto j : rows) {
      heavy_row[j] = true;
      sets.unite(rows.front(), j);
    }
  }

  std::vector<Elem> lambdas(n, 1);
  std::set<std::uint32_t> exponents;
  std::vector<std::size_t> roots;
  for (std::size_t j = 0; j < k; ++j) {
    if (heavy_row[j] && sets.find(j) == j) roots.push_back(j);
  }

  for (const std::size_t root : roots) {
    std::vector<std::size_t> rows;
    for (std::size_t j = 0; j < k; ++j) {
      if (heavy_row[j] && sets.find(j) == root) rows.push_back(j);
    }
    std::vector<std::size_t> cols;
    for (std::size_t r = k; r < n; ++r) {
      if (weights[r] > 0 && sets.find(nonzero_support(al.a, r).front()) == root &&
          heavy_row[nonzero_support(al.a, r).front()]) {
        cols.push_back(r);
      }
    }

    // c[r][i]: coefficient of x^{p^i} in tau_r.
    std::vector<std::vector<Elem>> c(n);
    for (auto j : rows) c[j] = LinearizedMap::from_table(field, normalized.taus[j]).coeffs();
    for (auto r : cols) c[r] = LinearizedMap::from_table(field, normalized.taus[r]).coeffs();

    std::uint32_t t = f.h();
    for (auto j : rows) {
      for (std::uint32_t i = 0; i < f.h(); ++i) {
        if (c[j][i] != 0) {
          t = std::min(t, i);
          break;
        }
      }
    }
    if (t == f.h()) throw ExtractionError(Kind::kInvalidWitness, "a symbol map is constant");
    std::size_t lead = rows.front();
    for (auto j : rows) {
      if (c[j][t] != 0) {
        lead = j;
        break;
      }
    }

    // beta_{jr} c_{ji} = c_{ri} alpha_{jr}^{p^i}.
    for (auto j : rows) {
      for (auto r : cols) {
        const Elem alpha = al.a(j, r);
        const Elem beta = al.b(j, r);
        if (alpha == 0 && beta == 0) continue;
        for (std::uint32_t i = 0; i < f.h(); ++i) {
          if (f.mul(beta, c[j][i]) != f.mul(c[r][i], f.frobenius(alpha, i))) {
            throw ExtractionError(Kind::kInvalidWitness,
                                  "coefficient identity fails at row " + std::to_string(j + 1) +
                                      ", column " + std::to_string(r + 1));
          }
        }
      }
    }

    // Row j of the target times c_{jt}/c_{lead,t}; column r divided by its
    // pivot entry and multiplied back so that the target becomes a^{p^t}.
    std::vector<Elem> row_scale(k, 1);
    for (auto j : rows) {
      if (c[j][t] == 0) {
        throw ExtractionError(Kind::kInvalidWitness,
                              "row " + std::to_string(j + 1) + " has no term of degree p^t");
      }
      row_scale[j] = f.div(c[j][t], c[lead][t]);
    }
    for (auto r : cols) {
      const std::size_t pivot = nonzero_support(al.a, r).front();
      const Elem col_scale = f.mul(f.div(c[lead][t], c[pivot][t]),
                                   f.div(f.frobenius(al.a(pivot, r), t), al.b(pivot, r)));
      for (std::size_t j = 0; j < k; ++j) {
        const Elem transformed = f.mul(f.mul(row_scale[j], al.b(j, r)), col_scale);
        if (transformed != f.frobenius(al.a(j, r), t)) {
          throw ExtractionError(Kind::kInternal, "rescaled target differs from the source at row " +
                                                     std::to_string(j + 1) + ", column " +
                                                     std::to_string(r + 1));
        }
      }
      lambdas[r] = f.inv(col_scale);
    }
    for (auto j : rows) lambdas[j] = row_scale[j];
    exponents.insert(t);
  }

  if (exponents.size() > 1) {
    throw ExtractionError(Kind::kInconsistentAutomorphism,
                          "independent summands of the code require different Frobenius exponents");
  }
  const std::uint32_t t = exponents.empty() ? 0 : *exponents.begin();

  for (std::size_t r = k; r < n; ++r) {
    if (weights[r] != 1) continue;
    const std::size_t j = nonzero_support(al.a, r).front();
    if (heavy_row[j]) continue;
    lambdas[r] = f.div(al.b(j, r), f.frobenius(al.a(j, r), t));
  }

  result.witness = to_target_positions(w, al, lambdas, t);
  if (!is_equivalence(result.witness, a, b)) {
    throw ExtractionError(Kind::kInternal, "extracted semi-linear witness does not map the codes");
  }
  return result;
}

}  // namespace codequiv
