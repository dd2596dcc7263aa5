#include "hopfbound/symbols.hpp"

#include <sstream>
#include <stdexcept>

namespace hopfbound::symbols {

AbGroup::AbGroup(std::vector<std::int64_t> orders, std::vector<std::string> labels)
    : orders_(std::move(orders)), labels_(std::move(labels)) {
  for (std::int64_t n : orders_)
    if (n < 0 || n == 1) throw std::invalid_argument("AbGroup: cyclic orders must be 0 or >= 2");
  if (!labels_.empty() && labels_.size() != orders_.size())
    throw std::invalid_argument("AbGroup: one label per cyclic factor");
}

AbGroup AbGroup::from_invariants(const std::vector<std::int64_t>& torsion, std::size_t free_rank) {
  std::vector<std::int64_t> orders = torsion;
  for (std::int64_t t : torsion)
    if (t < 2) throw std::invalid_argument("AbGroup: torsion orders must be >= 2");
  orders.insert(orders.end(), free_rank, 0);
  return AbGroup(std::move(orders));
}

std::vector<std::int64_t> AbGroup::torsion() const {
  std::vector<std::int64_t> out;
  for (std::int64_t n : orders_)
    if (n != 0) out.push_back(n);
  return out;
}

std::size_t AbGroup::free_rank() const {
  std::size_t k = 0;
  for (std::int64_t n : orders_) k += (n == 0);
  return k;
}

AbElt AbGroup::basis(std::size_t k) const {
  if (k >= rank()) throw std::out_of_range("AbGroup::basis");
  AbElt x = identity();
  x[k] = 1;
  return canonical(std::move(x));
}

AbElt AbGroup::canonical(AbElt x) const {
  if (x.size() != rank()) throw std::invalid_argument("element has the wrong number of coordinates");
  for (std::size_t k = 0; k < rank(); ++k)
    if (orders_[k] != 0) x[k] = ((x[k] % orders_[k]) + orders_[k]) % orders_[k];
  return x;
}

AbElt AbGroup::add(const AbElt& x, const AbElt& y) const {
  if (x.size() != rank() || y.size() != rank())
    throw std::invalid_argument("element has the wrong number of coordinates");
  AbElt z(rank());
  for (std::size_t k = 0; k < rank(); ++k) z[k] = x[k] + y[k];
  return canonical(std::move(z));
}

AbElt AbGroup::negate(const AbElt& x) const {
  AbElt z(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) z[k] = -x[k];
  return canonical(std::move(z));
}

bool AbGroup::is_identity(const AbElt& x) const {
  const AbElt c = canonical(x);
  for (std::int64_t v : c)
    if (v != 0) return false;
  return true;
}

bool AbGroup::contains(const AbElt& x) const { return x.size() == rank(); }

AbGroup direct_sum(const AbGroup& a, const AbGroup& b) {
  std::vector<std::int64_t> orders = a.orders();
  orders.insert(orders.end(), b.orders().begin(), b.orders().end());
  std::vector<std::string> labels;
  if (!a.labels().empty() && !b.labels().empty()) {
    labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  }
  return AbGroup(std::move(orders), std::move(labels));
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

void require_odd_prime(std::uint32_t ell) {
  if (ell < 3 || !is_prime(ell)) throw std::invalid_argument("ell must be an odd prime");
}

}  // namespace

AbGroup gl1(std::uint32_t ell) {
  require_odd_prime(ell);
  const std::uint32_t r = (ell - 1) / 2;
  std::vector<std::int64_t> orders{2 * static_cast<std::int64_t>(ell)};
  std::vector<std::string> labels{unit_label(0)};
  for (std::uint32_t k = 1; k <= r; ++k) {
    orders.push_back(0);
    labels.push_back(unit_label(k));
  }
  return AbGroup(std::move(orders), std::move(labels));
}

AbElt zeta_power(std::uint32_t ell, std::int64_t j) {
  const AbGroup g = gl1(ell);
  AbElt x = g.identity();
  x[0] = (static_cast<std::int64_t>(ell) + 1) * j;
  return g.canonical(std::move(x));
}

std::string unit_label(std::uint32_t unit) {
  if (unit == 0) return "-zeta";
  return unit == 1 ? "1-zeta" : "1-zeta^" + std::to_string(unit);
}

// BarChain

BarChain::BarChain(std::uint32_t ell, AbGroup group, std::size_t degree)
    : ell_(ell), group_(std::move(group)), degree_(degree) {
  if (!is_prime(ell)) throw std::invalid_argument("BarChain: ell must be prime");
}

BarChain BarChain::unit(std::uint32_t ell, const AbGroup& group) {
  return symbol(ell, group, Symbol{}, 1);
}

BarChain BarChain::symbol(std::uint32_t ell, const AbGroup& group, const Symbol& s,
                          std::int64_t coef) {
  BarChain ch(ell, group, s.size());
  ch.add_term(s, coef);
  return ch;
}

std::uint32_t BarChain::coefficient(const Symbol& s) const {
  const auto it = terms_.find(s);
  return it == terms_.end() ? 0 : it->second;
}

void BarChain::add_term(Symbol s, std::int64_t coef) {
  if (s.size() != degree_) throw std::invalid_argument("BarChain: symbol of the wrong degree");
  for (AbElt& x : s) {
    if (!group_.contains(x)) throw std::invalid_argument("BarChain: entry outside the group");
    x = group_.canonical(std::move(x));
    if (group_.is_identity(x)) throw std::invalid_argument("BarChain: identity entry in a bar symbol");
  }
  accumulate(std::move(s), coef);
}

void BarChain::accumulate(Symbol s, std::int64_t coef) {
  const std::int64_t l = ell_;
  const std::int64_t c = ((coef % l) + l) % l;
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(s), 0);
  it->second = static_cast<std::uint32_t>((it->second + c) % l);
  if (it->second == 0) terms_.erase(it);
}

void BarChain::require_compatible(const BarChain& o) const {
  if (ell_ != o.ell_ || !(group_ == o.group_))
    throw std::invalid_argument("BarChain: mismatched prime or ambient group");
  if (degree_ != o.degree_) throw std::invalid_argument("BarChain: mismatched degree");
}

BarChain& BarChain::operator+=(const BarChain& o) {
  require_compatible(o);
  for (const auto& [s, c] : o.terms_) accumulate(s, c);
  return *this;
}

BarChain& BarChain::operator-=(const BarChain& o) {
  require_compatible(o);
  for (const auto& [s, c] : o.terms_) accumulate(s, -static_cast<std::int64_t>(c));
  return *this;
}

BarChain BarChain::scaled(std::int64_t k) const {
  BarChain out(ell_, group_, degree_);
  for (const auto& [s, c] : terms_) out.accumulate(s, k * static_cast<std::int64_t>(c));
  return out;
}

bool operator==(const BarChain& x, const BarChain& y) {
  return x.ell_ == y.ell_ && x.group_ == y.group_ && x.degree_ == y.degree_ && x.terms_ == y.terms_;
}

std::string format_elt(const AbElt& x) {
  std::string out = "(";
  for (std::size_t k = 0; k < x.size(); ++k) out += (k ? "," : "") + std::to_string(x[k]);
  return out + ")";
}

std::string BarChain::to_text() const {
  std::ostringstream os;
  for (const auto& [s, c] : terms_) {
    os << c << "·[";
    for (std::size_t k = 0; k < s.size(); ++k) os << (k ? "|" : "") << format_elt(s[k]);
    os << "]\n";
  }
  return os.str();
}

// Operations

BarChain boundary(const BarChain& ch) {
  if (ch.degree() == 0) throw std::invalid_argument("boundary: degree 0 chain");
  const AbGroup& g = ch.group();
  const std::size_t n = ch.degree();
  BarChain out(ch.ell(), g, n - 1);
  for (const auto& [s, c] : ch.terms()) {
    const std::int64_t coef = c;
    out.add_term(Symbol(s.begin() + 1, s.end()), coef);
    for (std::size_t j = 1; j < n; ++j) {
      AbElt merged = g.add(s[j - 1], s[j]);
      if (g.is_identity(merged)) continue;
      Symbol t;
      t.reserve(n - 1);
      t.insert(t.end(), s.begin(), s.begin() + static_cast<std::ptrdiff_t>(j - 1));
      t.push_back(std::move(merged));
      t.insert(t.end(), s.begin() + static_cast<std::ptrdiff_t>(j + 1), s.end());
      out.add_term(std::move(t), (j % 2 == 0) ? coef : -coef);
    }
    out.add_term(Symbol(s.begin(), s.end() - 1), (n % 2 == 0) ? coef : -coef);
  }
  return out;
}

namespace {

// Appends every shuffle of x[i..] and y[j..] onto prefix; sign counts the
// transpositions needed to move y entries past remaining x entries.
void shuffles(const Symbol& x, std::size_t i, const Symbol& y, std::size_t j, Symbol& prefix,
              bool negative, std::int64_t coef, BarChain& out) {
  if (i == x.size() && j == y.size()) {
    out.add_term(prefix, negative ? -coef : coef);
    return;
  }
  if (i < x.size()) {
    prefix.push_back(x[i]);
    shuffles(x, i + 1, y, j, prefix, negative, coef, out);
    prefix.pop_back();
  }
  if (j < y.size()) {
    prefix.push_back(y[j]);
    const bool flip = (x.size() - i) % 2 == 1;
    shuffles(x, i, y, j + 1, prefix, negative != flip, coef, out);
    prefix.pop_back();
  }
}

Symbol embed_symbol(const Symbol& s, std::size_t before, std::size_t after) {
  Symbol out;
  out.reserve(s.size());
  for (const AbElt& x : s) {
    AbElt y(before, 0);
    y.insert(y.end(), x.begin(), x.end());
    y.insert(y.end(), after, 0);
    out.push_back(std::move(y));
  }
  return out;
}

}  // namespace

BarChain shuffle(const BarChain& a, const BarChain& b) {
  if (a.ell() != b.ell() || !(a.group() == b.group()))
    throw std::invalid_argument("shuffle: mismatched prime or ambient group");
  BarChain out(a.ell(), a.group(), a.degree() + b.degree());
  Symbol prefix;
  for (const auto& [sa, ca] : a.terms())
    for (const auto& [sb, cb] : b.terms())
      shuffles(sa, 0, sb, 0, prefix, false,
               static_cast<std::int64_t>(ca) * static_cast<std::int64_t>(cb), out);
  return out;
}

BarChain embed(const BarChain& ch, const AbGroup& other, bool second) {
  const AbGroup sum = second ? direct_sum(other, ch.group()) : direct_sum(ch.group(), other);
  const std::size_t before = second ? other.rank() : 0;
  const std::size_t after = second ? 0 : other.rank();
  BarChain out(ch.ell(), sum, ch.degree());
  for (const auto& [s, c] : ch.terms()) out.add_term(embed_symbol(s, before, after), c);
  return out;
}

BarChain cross(const BarChain& a, const BarChain& b) {
  if (a.ell() != b.ell()) throw std::invalid_argument("cross: mismatched prime");
  return shuffle(embed(a, b.group(), false), embed(b, a.group(), true));
}

BarChain eq1_cycle(std::uint32_t ell, const CycleSpec& spec) {
  const AbGroup g = gl1(ell);
  const std::uint32_t r = (ell - 1) / 2;
  std::vector<bool> seen(r + 1, false);
  for (std::uint32_t v : spec.units) {
    if (v > r) throw std::invalid_argument("eq1_cycle: unit " + std::to_string(v) + " not in S");
    if (seen[v]) throw std::invalid_argument("eq1_cycle: repeated unit " + unit_label(v));
    seen[v] = true;
  }

  // Leading factor: all exponent tuples (i_1..i_s) in [1, ell-1]^s.
  BarChain lead(ell, g, 2 * spec.s);
  const AbElt z = zeta_power(ell, 1);
  std::vector<std::uint32_t> idx(spec.s, 1);
  for (;;) {
    Symbol s;
    for (std::uint32_t k = 0; k < spec.s; ++k) {
      s.push_back(zeta_power(ell, idx[k]));
      s.push_back(z);
    }
    lead.add_term(std::move(s), 1);
    std::size_t k = 0;
    while (k < spec.s && idx[k] == ell - 1) idx[k++] = 1;
    if (k == spec.s) break;
    ++idx[k];
  }

  BarChain out = lead;
  for (std::uint32_t v : spec.units) out = shuffle(out, BarChain::symbol(ell, g, {g.basis(v)}));
  return out;
}

std::string_view to_string(CycleClass c) {
  switch (c) {
    case CycleClass::etale_obstruction: return "etale_obstruction";
    case CycleClass::odd: return "odd";
    case CycleClass::neither: break;
  }
  return "neither";
}

CycleClass classify_cycle(const CycleSpec& spec) {
  const auto i = static_cast<std::int64_t>(spec.i());
  const auto s = static_cast<std::int64_t>(spec.s);
  if (i - s > 0 && (i - s) % 2 == 0) return CycleClass::etale_obstruction;
  if ((i + s) % 2 == 1) return CycleClass::odd;
  return CycleClass::neither;
}

BarChain t_star(const BarChain& ch) {
  const AbGroup& a = ch.group();
  BarChain out(ch.ell(), direct_sum(a, a), ch.degree());
  for (const auto& [s, c] : ch.terms()) {
    Symbol t;
    t.reserve(s.size());
    for (const AbElt& u : s) {
      AbElt img = a.negate(u);
      img.insert(img.end(), u.begin(), u.end());
      t.push_back(std::move(img));
    }
    out.add_term(std::move(t), c);
  }
  return out;
}

RhoResult rho_star(const BarChain& ch, const AbGroup& base) {
  const AbGroup two = direct_sum(base, base);
  if (!(ch.group() == direct_sum(two, base)))
    throw std::invalid_argument("rho_star: chain does not live over a threefold sum of the base");
  const std::size_t n = base.rank();
  RhoResult out{BarChain(ch.ell(), two, ch.degree()), 0};
  for (const auto& [s, c] : ch.terms()) {
    Symbol t;
    bool deleted = false;
    for (const AbElt& x : s) {
      const AbElt u(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
      const AbElt v(x.begin() + static_cast<std::ptrdiff_t>(n), x.begin() + static_cast<std::ptrdiff_t>(2 * n));
      const AbElt w(x.begin() + static_cast<std::ptrdiff_t>(2 * n), x.end());
      AbElt img = base.add(u, w);
      const AbElt second = base.add(v, w);
      img.insert(img.end(), second.begin(), second.end());
      if (two.is_identity(img)) {
        deleted = true;
        break;
      }
      t.push_back(std::move(img));
    }
    if (deleted) {
      ++out.deleted_terms;
      continue;
    }
    out.chain.add_term(std::move(t), c);
  }
  return out;
}

EtaleRelation etale_relation_chain(const CycleSpec& z, const CycleSpec& zprime, std::uint32_t ell) {
  if (classify_cycle(z) != CycleClass::etale_obstruction)
    throw std::invalid_argument("etale_relation_chain: first cycle is not an etale obstruction cycle");
  if (classify_cycle(zprime) != CycleClass::odd)
    throw std::invalid_argument("etale_relation_chain: second cycle is not odd");
  const AbGroup g = gl1(ell);
  const BarChain product = cross(t_star(eq1_cycle(ell, z)), eq1_cycle(ell, zprime));
  EtaleRelation out{rho_star(product, g)};
  out.degree = out.image.chain.degree();
  out.bidegree_first = z.degree() + zprime.degree();
  out.bidegree_second = 2;
  out.is_cycle = out.degree == 0 || boundary(out.image.chain).is_zero();
  return out;
}

std::vector<std::uint64_t> hilbert_series(const std::vector<std::uint32_t>& poly_degrees,
                                          const std::vector<std::uint32_t>& exterior_degrees,
                                          std::size_t max_degree) {
  std::vector<std::uint64_t> h(max_degree + 1, 0);
  h[0] = 1;
  for (std::uint32_t e : exterior_degrees) {
    if (e == 0) throw std::invalid_argument("hilbert_series: degrees must be positive");
    for (std::size_t k = max_degree + 1; k-- > e;) h[k] += h[k - e];
  }
  for (std::uint32_t d : poly_degrees) {
    if (d == 0) throw std::invalid_argument("hilbert_series: degrees must be positive");
    for (std::size_t k = d; k <= max_degree; ++k) h[k] += h[k - d];
  }
  return h;
}

}  // namespace hopfbound::symbols
