#include "hopfbound/words.hpp"

#include <algorithm>
#include <sstream>

namespace hopfbound {

Word Word::generator(GenIndex g, int sign) {
  Word w;
  w.syllables_.push_back({g, sign < 0 ? -1 : 1});
  return w;
}

Word Word::from_syllables(std::span<const Syllable> syllables) {
  Word w;
  for (const Syllable& s : syllables) w.append(s);
  return w;
}

std::size_t Word::length() const {
  std::size_t n = 0;
  for (const Syllable& s : syllables_)
    n += static_cast<std::size_t>(s.exp < 0 ? -s.exp : s.exp);
  return n;
}

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out;
  out.reserve(length());
  for (const Syllable& s : syllables_) {
    const int sign = s.exp < 0 ? -1 : 1;
    for (std::int64_t k = 0; k < s.exp * sign; ++k) out.push_back({s.gen, sign});
  }
  return out;
}

Word Word::inverse() const {
  Word w;
  w.syllables_.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
    w.syllables_.push_back({it->gen, -it->exp});
  return w;
}

std::int64_t Word::exponent_sum(GenIndex g) const {
  std::int64_t sum = 0;
  for (const Syllable& s : syllables_)
    if (s.gen == g) sum += s.exp;
  return sum;
}

GenIndex Word::generator_bound() const {
  GenIndex bound = 0;
  for (const Syllable& s : syllables_) bound = std::max(bound, s.gen + 1);
  return bound;
}

void Word::append(Syllable s) {
  if (s.exp == 0) return;
  if (!syllables_.empty() && syllables_.back().gen == s.gen) {
    syllables_.back().exp += s.exp;
    if (syllables_.back().exp == 0) syllables_.pop_back();
    return;
  }
  syllables_.push_back(s);
}

Word& Word::operator*=(const Word& rhs) {
  // Cancellation only happens at the junction; after the first syllable of
  // rhs fails to cancel completely, the rest is appended verbatim.
  std::size_t i = 0;
  while (i < rhs.syllables_.size()) {
    const Syllable s = rhs.syllables_[i++];
    const std::size_t before = syllables_.size();
    const bool merges = before != 0 && syllables_.back().gen == s.gen;
    append(s);
    if (!merges || syllables_.size() == before) break;
  }
  syllables_.insert(syllables_.end(), rhs.syllables_.begin() + static_cast<std::ptrdiff_t>(i),
                    rhs.syllables_.end());
  return *this;
}

Word free_reduce(std::span<const Letter> letters) {
  std::vector<Syllable> syl;
  for (const Letter& l : letters) {
    const std::int64_t e = l.sign < 0 ? -1 : 1;
    if (!syl.empty() && syl.back().gen == l.gen) {
      syl.back().exp += e;
      if (syl.back().exp == 0) syl.pop_back();
    } else {
      syl.push_back({l.gen, e});
    }
  }
  return Word::from_syllables(syl);
}

Word commutator(const Word& x, const Word& y) {
  return x * y * x.inverse() * y.inverse();
}

Word power(const Word& x, std::int64_t n) {
  Word base = n < 0 ? x.inverse() : x;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  Word result;
  while (k != 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k != 0) base *= Word(base);
  }
  return result;
}

Word substitute(const Word& w, std::span<const Word> images) {
  Word out;
  for (const Syllable& s : w.syllables()) {
    if (s.gen >= images.size())
      throw std::invalid_argument("substitute: no image for generator " + std::to_string(s.gen));
    out *= power(images[s.gen], s.exp);
  }
  return out;
}

Presentation::Presentation(std::vector<std::string> generators, std::vector<Word> relators,
                           std::string name)
    : name_(std::move(name)), generators_(std::move(generators)) {
  if (generators_.size() > kMaxGenerators)
    throw std::invalid_argument("presentation: too many generators");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].empty()) throw std::invalid_argument("presentation: empty generator name");
    for (std::size_t j = 0; j < i; ++j)
      if (generators_[i] == generators_[j])
        throw std::invalid_argument("presentation: duplicate generator '" + generators_[i] + "'");
  }
  relators_.reserve(relators.size());
  for (Word& r : relators) {
    if (r.generator_bound() > generators_.size())
      throw std::invalid_argument("presentation: relator uses an undeclared generator");
    if (r.is_identity()) {
      ++dropped_;
      continue;
    }
    relators_.push_back(std::move(r));
  }
}

std::optional<GenIndex> Presentation::find_generator(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i] == name) return static_cast<GenIndex>(i);
  return std::nullopt;
}

Word Presentation::generator_word(std::string_view name) const {
  auto g = find_generator(name);
  if (!g) throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
  return Word::generator(*g);
}

std::string Presentation::format_word(const Word& w) const {
  if (w.is_identity()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const Syllable& s : w.syllables()) {
    if (!first) os << ' ';
    first = false;
    os << generators_.at(s.gen);
    if (s.exp != 1) os << '^' << s.exp;
  }
  return os.str();
}

std::string Presentation::to_text() const {
  std::ostringstream os;
  if (!name_.empty()) os << "group " << name_ << '\n';
  os << "gens";
  for (const auto& g : generators_) os << ' ' << g;
  os << '\n';
  for (const Word& r : relators_) os << "rel " << format_word(r) << '\n';
  return os.str();
}

Presentation hopf_quotient_presentation(const Presentation& p, std::uint32_t ell,
                                        std::span<const Word> extra) {
  const std::size_t g = p.generator_count();
  for (const Word& w : extra)
    if (w.generator_bound() > g)
      throw std::invalid_argument("hopf_quotient_presentation: extra word outside the generator alphabet");

  std::vector<Word> rels;
  rels.reserve(g * p.relators().size() + p.relators().size() + extra.size());
  for (std::size_t x = 0; x < g; ++x)
    for (const Word& s : p.relators())
      rels.push_back(commutator(Word::generator(static_cast<GenIndex>(x)), s));
  for (const Word& s : p.relators()) rels.push_back(power(s, ell));
  rels.insert(rels.end(), extra.begin(), extra.end());

  Presentation q(p.generators(), std::move(rels), p.name());
  return q;
}

}  // namespace hopfbound
