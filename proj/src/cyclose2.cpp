#include "hopfbound/cyclose2.hpp"

#include <stdexcept>

namespace hopfbound::cyclose2 {

CycloInt::CycloInt(std::uint32_t ell) : ell_(ell), coeffs_(ell, 0) {
  if (ell == 0) throw std::invalid_argument("CycloInt: ell must be positive");
}

CycloInt::CycloInt(std::uint32_t ell, std::vector<std::int64_t> coeffs)
    : ell_(ell), coeffs_(std::move(coeffs)) {
  if (ell == 0 || coeffs_.size() != ell)
    throw std::invalid_argument("CycloInt: need exactly ell coefficients");
}

CycloInt CycloInt::one(std::uint32_t ell) { return zeta_power(ell, 0); }

CycloInt CycloInt::zeta_power(std::uint32_t ell, std::int64_t k) {
  CycloInt x(ell);
  const std::int64_t m = static_cast<std::int64_t>(ell);
  x.coeffs_[static_cast<std::size_t>(((k % m) + m) % m)] = 1;
  return x;
}

std::int64_t CycloInt::augmentation() const {
  std::int64_t s = 0;
  for (std::int64_t c : coeffs_) s += c;
  return s;
}

namespace {
void check_same(const CycloInt& x, const CycloInt& y) {
  if (x.ell() != y.ell()) throw std::invalid_argument("cyclotomic integers over different ell");
}
}  // namespace

CycloInt operator+(const CycloInt& x, const CycloInt& y) {
  check_same(x, y);
  std::vector<std::int64_t> c(x.ell());
  for (std::size_t t = 0; t < c.size(); ++t) c[t] = x[t] + y[t];
  return CycloInt(x.ell(), std::move(c));
}

CycloInt operator-(const CycloInt& x, const CycloInt& y) {
  check_same(x, y);
  std::vector<std::int64_t> c(x.ell());
  for (std::size_t t = 0; t < c.size(); ++t) c[t] = x[t] - y[t];
  return CycloInt(x.ell(), std::move(c));
}

CycloInt cyclo_mul(const CycloInt& x, const CycloInt& y) {
  check_same(x, y);
  const std::size_t ell = x.ell();
  std::vector<std::int64_t> c(ell, 0);
  for (std::size_t i = 0; i < ell; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < ell; ++j) c[(i + j) % ell] += x[i] * y[j];
  }
  return CycloInt(x.ell(), std::move(c));
}

bool is_odd_prime(std::uint32_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::uint32_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

CycloInt c_coeffs(std::uint32_t ell, const std::vector<std::uint32_t>& subset) {
  if (!is_odd_prime(ell)) throw std::invalid_argument("c_coeffs: ell must be an odd prime");
  if (subset.empty()) throw std::invalid_argument("c_coeffs: subset must be nonempty");
  const std::uint32_t r = (ell - 1) / 2;
  CycloInt acc = CycloInt::one(ell);
  std::vector<bool> seen(r + 1, false);
  for (std::uint32_t i : subset) {
    if (i < 1 || i > r) throw std::invalid_argument("c_coeffs: index outside {1..r}");
    if (seen[i]) throw std::invalid_argument("c_coeffs: repeated index");
    seen[i] = true;
    acc = cyclo_mul(acc, CycloInt::one(ell) - CycloInt::zeta_power(ell, i));
  }
  return acc;
}

std::uint32_t c_constant(std::uint32_t ell) {
  if (!is_odd_prime(ell)) throw std::invalid_argument("c_constant: ell must be an odd prime");
  const std::uint64_t r = (ell - 1) / 2;
  const std::uint64_t target = (r * r + r * (r + 1) / 2) % ell;
  for (std::uint32_t c = 0; c < ell; ++c)
    if ((2 * static_cast<std::uint64_t>(c)) % ell == target) return c;
  throw std::logic_error("c_constant: no solution");  // unreachable for odd ell
}

void SE2Params::validate() const {
  if (!is_odd_prime(ell)) throw std::invalid_argument("SE2: ell must be an odd prime");
}

std::size_t se2_relator_count(std::uint32_t ell) {
  const std::size_t r = (ell - 1) / 2;
  const std::size_t n = 2 * r + 1;
  return 6 + r + r * (r - 1) / 2 + r + n * (n - 1) / 2 + ((std::size_t{1} << r) - 1) + 1 + r + n +
         r + n;
}

namespace {

// Generator layout shared by both modes: z, u1..ur, a, b, then (extended
// only) b0..b{2r}, w.
struct Layout {
  std::uint32_t ell;
  std::uint32_t r;
  bool extended;

  GenIndex z() const { return 0; }
  GenIndex u(std::uint32_t i) const { return i; }  // 1-based
  GenIndex a() const { return r + 1; }
  GenIndex b() const { return r + 2; }
  GenIndex bt(std::uint32_t t) const { return r + 3 + t; }
  GenIndex w() const { return r + 3 + 2 * r + 1; }

  std::vector<std::string> names() const {
    std::vector<std::string> g{"z"};
    for (std::uint32_t i = 1; i <= r; ++i) g.push_back("u" + std::to_string(i));
    g.push_back("a");
    g.push_back("b");
    if (extended) {
      for (std::uint32_t t = 0; t <= 2 * r; ++t) g.push_back("b" + std::to_string(t));
      g.push_back("w");
    }
    return g;
  }
};

Word gen(GenIndex g, std::int64_t e = 1) {
  const Syllable s{g, e};
  return Word::from_syllables(std::span<const Syllable>(&s, 1));
}

// z^{rt} b z^{rt} a
Word bt_definition(const Layout& L, std::uint32_t t) {
  const auto rt = static_cast<std::int64_t>(L.r) * t;
  return gen(L.z(), rt) * gen(L.b()) * gen(L.z(), rt) * gen(L.a());
}

// z^c u1 ... ur
Word w_definition(const Layout& L) {
  Word w = gen(L.z(), c_constant(L.ell));
  for (std::uint32_t i = 1; i <= L.r; ++i) w *= gen(L.u(i));
  return w;
}

Word bt(const Layout& L, std::uint32_t t) {
  t %= L.ell;
  return L.extended ? gen(L.bt(t)) : bt_definition(L, t);
}

Word wgen(const Layout& L) { return L.extended ? gen(L.w()) : w_definition(L); }

}  // namespace

std::vector<Word> extended_to_expanded(std::uint32_t ell) {
  SE2Params{ell, Se2Mode::extended}.validate();
  const Layout ext{ell, (ell - 1) / 2, true};
  const Layout exp{ell, (ell - 1) / 2, false};
  std::vector<Word> images;
  images.push_back(gen(exp.z()));
  for (std::uint32_t i = 1; i <= ext.r; ++i) images.push_back(gen(exp.u(i)));
  images.push_back(gen(exp.a()));
  images.push_back(gen(exp.b()));
  for (std::uint32_t t = 0; t <= 2 * ext.r; ++t) images.push_back(bt_definition(exp, t));
  images.push_back(w_definition(exp));
  return images;
}

Presentation se2_presentation(const SE2Params& params) {
  params.validate();
  const std::uint32_t ell = params.ell;
  const std::uint32_t r = params.r();
  const Layout L{ell, r, params.mode == Se2Mode::extended};
  const auto n = static_cast<std::int64_t>(ell);
  const auto rr = static_cast<std::int64_t>(r);
  const Word z = gen(L.z());
  const Word a = gen(L.a());
  const Word b = gen(L.b());
  const Word a2 = power(a, 2);

  std::vector<Word> rels;
  rels.push_back(power(z, n));
  for (std::uint32_t i = 1; i <= r; ++i) rels.push_back(commutator(z, gen(L.u(i))));
  for (std::uint32_t i = 1; i <= r; ++i)
    for (std::uint32_t j = i + 1; j <= r; ++j) rels.push_back(commutator(gen(L.u(i)), gen(L.u(j))));
  rels.push_back(power(a, 4));
  rels.push_back(commutator(a2, z));
  for (std::uint32_t i = 1; i <= r; ++i) rels.push_back(commutator(a2, gen(L.u(i))));
  for (std::uint32_t s = 0; s <= 2 * r; ++s)
    for (std::uint32_t t = s + 1; t <= 2 * r; ++t) rels.push_back(commutator(bt(L, s), bt(L, t)));

  // c(I) = (prod_t b_t^{c_t(I)}) a^-1 prod_{i in I} u_i, cubed.
  for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
    std::vector<std::uint32_t> subset;
    for (std::uint32_t i = 1; i <= r; ++i)
      if (mask & (1u << (i - 1))) subset.push_back(i);
    const CycloInt coeffs = c_coeffs(ell, subset);
    Word cI;
    for (std::uint32_t t = 0; t <= 2 * r; ++t) cI *= power(bt(L, t), coeffs[t]);
    cI *= a.inverse();
    for (std::uint32_t i : subset) cI *= gen(L.u(i));
    rels.push_back(power(cI, 3));
  }

  rels.push_back(a.inverse() * z * a * z);
  for (std::uint32_t i = 1; i <= r; ++i) rels.push_back(a.inverse() * gen(L.u(i)) * a * gen(L.u(i)));
  rels.push_back(power(b, 3) * power(a, -2));
  {
    Word prod = power(a, -2);
    for (std::uint32_t t = 0; t <= 2 * r; ++t) prod *= bt(L, t);
    rels.push_back(prod);
  }

  const Word w = wgen(L);
  const std::int64_t sign = (r % 2 == 0) ? 1 : -1;
  for (std::uint32_t t = 0; t <= 2 * r; ++t) {
    // b_t^ell = w^-1 b_t^{(-1)^r} w
    const Word rhs = w.inverse() * power(bt(L, t), sign) * w;
    rels.push_back(power(bt(L, t), n) * rhs.inverse());
  }
  for (std::uint32_t i = 1; i <= r; ++i) {
    // b a^2 = u_i b z^{-ri} b^-1 b_0^-1 z^{ri} b z^-i u_i
    const auto ri = rr * static_cast<std::int64_t>(i);
    const Word ui = gen(L.u(i));
    const Word rhs = ui * b * power(z, -ri) * b.inverse() * bt(L, 0).inverse() * power(z, ri) * b *
                     power(z, -static_cast<std::int64_t>(i)) * ui;
    rels.push_back(b * a2 * rhs.inverse());
  }

  if (L.extended) {
    for (std::uint32_t t = 0; t <= 2 * r; ++t)
      rels.push_back(gen(L.bt(t)).inverse() * bt_definition(L, t));
    rels.push_back(gen(L.w()).inverse() * w_definition(L));
  }

  Presentation p(L.names(), std::move(rels),
                 "SE2_" + std::to_string(ell) + (L.extended ? "" : "_expanded"));
  return p;
}

std::vector<std::pair<std::string, std::string>> obstruction_pairs(std::uint32_t ell) {
  if (!is_odd_prime(ell)) throw std::invalid_argument("obstruction_pairs: ell must be an odd prime");
  std::vector<std::string> names{"z"};
  for (std::uint32_t i = 1; i <= (ell - 1) / 2; ++i) names.push_back("u" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j) out.emplace_back(names[i], names[j]);
  return out;
}

}  // namespace hopfbound::cyclose2
