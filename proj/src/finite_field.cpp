#include "codequiv/finite_field.hpp"

#include <algorithm>
#include <charconv>

#include "codequiv/errors.hpp"

namespace codequiv {
namespace {

// Powers of x modulo the monic polynomial `monic`, as base-p encoded elements,
// stopping at the first return to 1. Returns an empty vector when x is not a
// unit modulo `monic`.
std::vector<Elem> powers_of_x(std::uint32_t p, std::span<const Elem> monic, std::uint32_t q) {
  const std::size_t h = monic.size() - 1;
  std::vector<Elem> cur(h, 0);
  cur[0] = 1;
  auto encode = [&](const std::vector<Elem>& d) {
    Elem v = 0;
    for (std::size_t i = h; i-- > 0;) v = v * p + d[i];
    return v;
  };
  std::vector<Elem> out{1};
  for (std::uint32_t m = 1; m < q; ++m) {
    const Elem top = cur[h - 1];
    for (std::size_t i = h - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (std::size_t i = 0; i < h; ++i) {
      cur[i] = (cur[i] + (p - top) * monic[i]) % p;
    }
    const Elem v = encode(cur);
    if (v == 1) return out;
    if (v == 0) return {};
    out.push_back(v);
  }
  return {};
}

bool is_primitive(std::uint32_t p, std::span<const Elem> monic, std::uint32_t q) {
  return powers_of_x(p, monic, q).size() == q - 1;
}

// Remainder of a modulo monic b over F_p, both constant term first.
std::vector<Elem> poly_mod(std::vector<Elem> a, std::span<const Elem> b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const Elem lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (std::size_t i = 0; i <= db; ++i) {
        a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const Elem> monic) {
  const std::size_t deg = monic.size() - 1;
  if (deg <= 1) return deg == 1;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<Elem> divisor(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<Elem>(c % p);
        c /= p;
      }
      divisor[d] = 1;
      const auto rem = poly_mod(std::vector<Elem>(monic.begin(), monic.end()), divisor, p);
      if (std::all_of(rem.begin(), rem.end(), [](Elem x) { return x == 0; })) return false;
    }
  }
  return true;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t h, const FieldOptions& options) {
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (h == 0) throw FieldError("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < h; ++i) {
    q *= p;
    if (q > options.max_order) {
      throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(h) +
                       " exceeds the bound " + std::to_string(options.max_order));
    }
  }
  const auto q32 = static_cast<std::uint32_t>(q);

  std::vector<Elem> modulus;
  if (!options.modulus.empty()) {
    modulus = options.modulus;
    if (modulus.size() != h + 1 || modulus.back() != 1) {
      throw FieldError("modulus must be monic of degree " + std::to_string(h));
    }
    for (Elem c : modulus) {
      if (c >= p) throw FieldError("modulus coefficient out of range");
    }
    if (!is_irreducible(p, modulus)) throw FieldError("modulus is reducible");
    if (!is_primitive(p, modulus, q32)) throw FieldError("modulus is irreducible but not primitive");
  } else if (p == 3 && h == 2) {
    modulus = {2, 2, 1};  // x^2 - x - 1
  } else {
    // Walk (a1, ..., ah) lexicographically; coefficient of x^{h-i} is (-1)^i a_i.
    std::vector<Elem> a(h, 0);
    for (;;) {
      modulus.assign(h + 1, 0);
      modulus[h] = 1;
      for (std::uint32_t i = 1; i <= h; ++i) {
        modulus[h - i] = (i % 2 == 0 || a[i - 1] == 0) ? a[i - 1] : p - a[i - 1];
      }
      if (is_primitive(p, modulus, q32)) break;
      std::size_t i = h;
      while (i > 0 && a[i - 1] == p - 1) a[--i] = 0;
      if (i == 0) throw FieldError("no primitive polynomial found");
      ++a[i - 1];
    }
  }

  auto field = std::shared_ptr<Field>(new Field(p, h, std::move(modulus)));
  if (h > 1) field->prime_ = make(p, 1);
  return field;
}

Field::Field(std::uint32_t p, std::uint32_t h, std::vector<Elem> modulus)
    : p_(p), h_(h), modulus_(std::move(modulus)) {
  q_ = 1;
  for (std::uint32_t i = 0; i < h_; ++i) q_ *= p_;
  exp_ = powers_of_x(p_, modulus_, q_);
  log_.assign(q_, 0);
  for (std::uint32_t k = 0; k < exp_.size(); ++k) log_[exp_[k]] = k;

  neg_table_.resize(q_);
  for (Elem x = 0; x < q_; ++x) {
    Elem v = 0;
    Elem scale = 1;
    Elem rest = x;
    for (std::uint32_t i = 0; i < h_; ++i) {
      const Elem d = rest % p_;
      rest /= p_;
      v += ((p_ - d) % p_) * scale;
      scale *= p_;
    }
    neg_table_[x] = v;
  }
  if (q_ <= 256) {
    add_table_.resize(std::size_t{q_} * q_);
    for (Elem a = 0; a < q_; ++a) {
      for (Elem b = 0; b < q_; ++b) {
        Elem v = 0;
        Elem scale = 1;
        Elem ra = a;
        Elem rb = b;
        for (std::uint32_t i = 0; i < h_; ++i) {
          v += ((ra % p_ + rb % p_) % p_) * scale;
          ra /= p_;
          rb /= p_;
          scale *= p_;
        }
        add_table_[std::size_t{a} * q_ + b] = v;
      }
    }
  }
  std::uint64_t pp = 1;
  for (std::uint32_t i = 0; i < h_; ++i) {
    frob_mult_.push_back(pp % (q_ - 1 == 0 ? 1 : q_ - 1));
    pp *= p_;
  }
  canonical_.push_back(0);
  for (Elem x : exp_) canonical_.push_back(x);
}

FieldPtr Field::prime_field() const {
  if (h_ == 1) return shared_from_this();
  return prime_;
}

Elem Field::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + b];
  Elem v = 0;
  Elem scale = 1;
  for (std::uint32_t i = 0; i < h_; ++i) {
    v += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return v;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg_table_[b]); }

Elem Field::neg(Elem a) const { return neg_table_[a]; }

Elem Field::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(std::uint64_t{log_[a]} + log_[b]) % (q_ - 1)];
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw FieldError("division by zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem Field::pow(Elem a, std::uint64_t n) const {
  if (a == 0) return n == 0 ? 1 : 0;
  return exp_[(std::uint64_t{log_[a]} * (n % (q_ - 1))) % (q_ - 1)];
}

Elem Field::frobenius(Elem x, std::uint32_t i) const {
  if (x == 0) return 0;
  return exp_[(std::uint64_t{log_[x]} * frob_mult_[i % h_]) % (q_ - 1)];
}

std::uint32_t Field::log(Elem x) const {
  if (x == 0) throw FieldError("logarithm of zero");
  return log_[x];
}

Elem Field::digit(Elem x, std::uint32_t i) const {
  for (std::uint32_t j = 0; j < i; ++j) x /= p_;
  return x % p_;
}

std::vector<Elem> Field::digits(Elem x) const {
  std::vector<Elem> out(h_);
  for (std::uint32_t i = 0; i < h_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

Elem Field::from_digits(std::span<const Elem> d) const {
  if (d.size() != h_) throw FieldError("expected " + std::to_string(h_) + " coefficients");
  Elem v = 0;
  for (std::size_t i = h_; i-- > 0;) {
    if (d[i] >= p_) throw FieldError("coefficient out of range");
    v = v * p_ + d[i];
  }
  return v;
}

bool Field::same_as(const Field& other) const {
  return this == &other || (p_ == other.p_ && h_ == other.h_ && modulus_ == other.modulus_);
}

std::string Field::format(Elem x) const {
  if (x == 0) return "0";
  const std::uint32_t k = log_[x];
  if (k == 0) return "1";
  if (k == 1) return "e";
  return "e^" + std::to_string(k);
}

Elem Field::parse(std::string_view token) const {
  auto fail = [&]() -> Elem {
    throw ParseError(0, "invalid element token '" + std::string(token) + "'");
  };
  if (token == "0") return 0;
  if (token == "1") return 1;
  if (token == "e") return exp(1);
  if (token.starts_with("e^")) {
    std::uint64_t k = 0;
    const auto digits = token.substr(2);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) fail();
    return exp(k);
  }
  if (h_ == 1 && !token.empty() && token.front() >= '0' && token.front() <= '9') {
    Elem c = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), c);
    if (ec != std::errc() || ptr != token.data() + token.size() || c >= p_) fail();
    return c;
  }
  if (token.size() >= 2 && token.front() == '[' && token.back() == ']') {
    std::vector<Elem> coeffs;
    std::string_view body = token.substr(1, token.size() - 2);
    while (true) {
      const auto comma = body.find(',');
      std::string_view part = body.substr(0, comma);
      while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
      while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
      Elem c = 0;
      const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), c);
      if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || c >= p_) fail();
      coeffs.push_back(c);
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    if (coeffs.size() != h_) fail();
    return from_digits(coeffs);
  }
  return fail();
}

void require_same_field(const Field& a, const Field& b) {
  if (!a.same_as(b)) {
    throw FieldError("operands belong to different fields (F_" + std::to_string(a.q()) + " vs F_" +
                     std::to_string(b.q()) + ")");
  }
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
  if (!field_) throw FieldError("element without a field");
  if (!field_->contains(value_)) throw FieldError("element value out of range");
}

FieldElement FieldElement::primitive(FieldPtr field) {
  const Elem e = field->primitive();
  return {std::move(field), e};
}

FieldElement FieldElement::parse(FieldPtr field, std::string_view token) {
  const Elem v = field->parse(token);
  return {std::move(field), v};
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_field(*field_, *o.field_);
  return {field_, field_->add(value_, o.value_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_field(*field_, *o.field_);
  return {field_, field_->sub(value_, o.value_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_field(*field_, *o.field_);
  return {field_, field_->mul(value_, o.value_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same_field(*field_, *o.field_);
  return {field_, field_->div(value_, o.value_)};
}

FieldElement FieldElement::inverse() const { return {field_, field_->inv(value_)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  return field_->same_as(*o.field_) && value_ == o.value_;
}

}  // namespace codequiv
