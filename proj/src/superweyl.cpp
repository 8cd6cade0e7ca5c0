#include "gaudin/superweyl.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "gaudin/error.hpp"

namespace gaudin {

namespace {

using Exponents = std::array<std::uint8_t, kMaxGenerators>;

std::uint32_t odd_bits(const Layout& layout, const Exponents& e) {
  std::uint32_t bits = 0;
  std::uint32_t mask = layout.odd_mask();
  while (mask != 0) {
    int g = std::countr_zero(mask);
    mask &= mask - 1;
    if (e[g] != 0) bits |= 1u << g;
  }
  return bits;
}

std::uint32_t above(int g) { return g >= 31 ? 0u : ~((2u << g) - 1u); }

int sign_of(int count) { return (count & 1) ? -1 : 1; }

std::int64_t small_binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

struct State {
  Exponents x;
  Exponents d;
  std::int64_t coeff;
};

}  // namespace

ParitySequence::ParitySequence(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e != 1 && e != -1) throw Error(ErrorCode::InvalidSizes, "parity entries must be +1 or -1");
}

ParitySequence ParitySequence::standard(int m, int n) { return blocks({{m, 1}, {n, -1}}); }

ParitySequence ParitySequence::blocks(std::initializer_list<std::pair<int, int>> runs) {
  std::vector<int> e;
  for (auto [count, sign] : runs) e.insert(e.end(), count, sign);
  return ParitySequence(std::move(e));
}

int ParitySequence::m() const {
  return static_cast<int>(std::count(entries_.begin(), entries_.end(), 1));
}

ParitySequence ParitySequence::slice(int begin, int count) const {
  return ParitySequence(std::vector<int>(entries_.begin() + begin, entries_.begin() + begin + count));
}

Layout::Layout(int m, int n, int k) : m_(m), n_(n), k_(k) {
  if (m < 0 || n < 0 || k < 0)
    throw Error(ErrorCode::InvalidSizes, "negative layout size");
  if (rows() * k > kMaxGenerators)
    throw Error(ErrorCode::InvalidSizes, "(m+n)*k exceeds " + std::to_string(kMaxGenerators));
  for (int g = 0; g < generators(); ++g)
    if (row_of(g) > m_) odd_mask_ |= 1u << g;
}

Layout merge_layouts(const Layout& a, const Layout& b) {
  if (a.empty()) return b;
  if (b.empty() || a == b) return a;
  throw Error(ErrorCode::InvalidSizes, "mixing elements of different Weyl superalgebras");
}

bool NOWord::is_identity() const {
  for (int g = 0; g < kMaxGenerators; ++g)
    if (x[g] != 0 || d[g] != 0) return false;
  return true;
}

bool NOWord::has_derivations() const {
  return std::any_of(d.begin(), d.end(), [](std::uint8_t e) { return e != 0; });
}

int NOWord::parity(const Layout& layout) const {
  return std::popcount(odd_bits(layout, x) ^ odd_bits(layout, d)) & 1;
}

bool operator==(const Term& a, const Term& b) { return a.word == b.word && a.coeff == b.coeff; }

void multiply_words(const Layout& layout, const NOWord& a, const NOWord& b,
                    std::vector<std::pair<NOWord, std::int64_t>>& out) {
  std::vector<State> states{{a.x, a.d, 1}};
  std::vector<State> next;
  const int gens = layout.generators();

  // Push each x of b through the derivations accumulated so far.
  for (int g = 0; g < gens; ++g) {
    const int e = b.x[g];
    if (e == 0) continue;
    next.clear();
    for (const State& st : states) {
      if (!layout.odd(g)) {
        const int dg = st.d[g];
        std::int64_t fact = 1;
        for (int c = 0; c <= std::min(dg, e); ++c) {
          if (c > 0) fact *= c;
          State s = st;
          s.coeff *= small_binomial(dg, c) * small_binomial(e, c) * fact;
          s.d[g] = static_cast<std::uint8_t>(dg - c);
          s.x[g] = static_cast<std::uint8_t>(s.x[g] + e - c);
          next.push_back(s);
        }
      } else {
        const std::uint32_t dbits = odd_bits(layout, st.d);
        if (st.d[g] != 0) {
          State s = st;
          s.coeff *= sign_of(std::popcount(dbits & above(g)));
          s.d[g] = 0;
          next.push_back(s);
        }
        if (st.x[g] != 0) continue;  // x_g^2 = 0
        State s = st;
        const std::uint32_t xbits = odd_bits(layout, st.x);
        s.coeff *= sign_of(std::popcount(dbits) + std::popcount(xbits & above(g)));
        s.x[g] = 1;
        next.push_back(s);
      }
    }
    states.swap(next);
  }

  for (State& st : states) {
    bool zero = false;
    for (int g = 0; g < gens && !zero; ++g) {
      const int e = b.d[g];
      if (e == 0) continue;
      if (layout.odd(g)) {
        if (st.d[g] != 0) {
          zero = true;
          break;
        }
        st.coeff *= sign_of(std::popcount(odd_bits(layout, st.d) & above(g)));
        st.d[g] = 1;
      } else {
        st.d[g] = static_cast<std::uint8_t>(st.d[g] + e);
      }
    }
    if (zero || st.coeff == 0) continue;
    NOWord w;
    w.x = st.x;
    w.d = st.d;
    out.emplace_back(w, st.coeff);
  }
}

// ---------------------------------------------------------------------------

void TermBuffer::push(const NOWord& w, const Rational& c, std::int64_t mult) {
  terms_.push_back({w, c * Rational(mult)});
}

void TermBuffer::note_layout(const Layout& layout) { layout_ = merge_layouts(layout_, layout); }

void TermBuffer::add(const NOElement& e, const Rational& scale) {
  if (e.is_zero() || scale.is_zero()) return;
  note_layout(e.layout());
  for (const Term& t : e.terms()) terms_.push_back({t.word, t.coeff * scale});
}

void TermBuffer::add_product(const NOElement& p, const NOElement& q, const Rational& scale) {
  if (p.is_zero() || q.is_zero() || scale.is_zero()) return;
  const Layout layout = merge_layouts(p.layout(), q.layout());
  note_layout(layout);
  std::vector<std::pair<NOWord, std::int64_t>> scratch;
  for (const Term& tp : p.terms()) {
    Rational cp = tp.coeff * scale;
    for (const Term& tq : q.terms()) {
      Rational c = cp * tq.coeff;
      if (tp.word.is_identity()) {
        terms_.push_back({tq.word, std::move(c)});
        continue;
      }
      if (tq.word.is_identity()) {
        terms_.push_back({tp.word, std::move(c)});
        continue;
      }
      scratch.clear();
      multiply_words(layout, tp.word, tq.word, scratch);
      for (auto& [w, mult] : scratch) terms_.push_back({w, c * Rational(mult)});
    }
  }
}

NOElement TermBuffer::finish() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.word < b.word; });
  NOElement out;
  out.layout_ = layout_;
  for (Term& t : terms_) {
    if (!out.terms_.empty() && out.terms_.back().word == t.word) {
      out.terms_.back().coeff += t.coeff;
      if (out.terms_.back().coeff.is_zero()) out.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      out.terms_.push_back(std::move(t));
    }
  }
  terms_.clear();
  return out;
}

// ---------------------------------------------------------------------------

NOElement::NOElement(Rational scalar) {
  if (!scalar.is_zero()) terms_.push_back({NOWord{}, std::move(scalar)});
}

NOElement::NOElement(const Layout& layout, const NOWord& word, Rational coeff) : layout_(layout) {
  if (!coeff.is_zero()) terms_.push_back({word, std::move(coeff)});
}

NOElement NOElement::letter(const Layout& layout, const Letter& l) {
  if (l.row < 1 || l.row > layout.rows() || l.col < 1 || l.col > layout.k())
    throw Error(ErrorCode::InvalidSizes, "generator index out of range");
  NOWord w;
  (l.kind == Kind::X ? w.x : w.d)[layout.index(l.row, l.col)] = 1;
  return NOElement(layout, w, Rational(1));
}

NOElement NOElement::x(const Layout& layout, int row, int col) {
  return letter(layout, {Kind::X, row, col});
}

NOElement NOElement::del(const Layout& layout, int row, int col) {
  return letter(layout, {Kind::Del, row, col});
}

bool NOElement::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().word.is_identity());
}

Rational NOElement::scalar_part() const { return coeff(NOWord{}); }

Rational NOElement::coeff(const NOWord& w) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), w,
                             [](const Term& t, const NOWord& key) { return t.word < key; });
  if (it != terms_.end() && it->word == w) return it->coeff;
  return Rational(0);
}

std::optional<int> NOElement::parity() const {
  std::optional<int> p;
  for (const Term& t : terms_) {
    int q = t.word.parity(layout_);
    if (p && *p != q) return std::nullopt;
    p = q;
  }
  return p.value_or(0);
}

bool NOElement::has_odd_generators() const {
  for (const Term& t : terms_)
    if (odd_bits(layout_, t.word.x) != 0 || odd_bits(layout_, t.word.d) != 0) return true;
  return false;
}

NOElement& NOElement::operator+=(const NOElement& rhs) {
  if (rhs.is_zero()) return *this;
  layout_ = merge_layouts(layout_, rhs.layout_);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  auto a = terms_.begin();
  auto b = rhs.terms_.begin();
  while (a != terms_.end() || b != rhs.terms_.end()) {
    if (b == rhs.terms_.end() || (a != terms_.end() && a->word < b->word)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->word < a->word) {
      merged.push_back(*b++);
    } else {
      Rational c = a->coeff + b->coeff;
      if (!c.is_zero()) merged.push_back({a->word, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

NOElement& NOElement::operator-=(const NOElement& rhs) { return *this += -rhs; }

NOElement& NOElement::operator*=(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= s;
  return *this;
}

NOElement NOElement::operator-() const {
  NOElement r(*this);
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

NOElement operator*(const NOElement& a, const NOElement& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_scalar()) return b * a.scalar_part();
  if (b.is_scalar()) return a * b.scalar_part();
  TermBuffer buf;
  buf.add_product(a, b, Rational(1));
  return buf.finish();
}

std::string word_to_string(const Layout& layout, const NOWord& w) {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](char name, const Exponents& e) {
    for (int g = 0; g < layout.generators(); ++g) {
      if (e[g] == 0) continue;
      if (!first) os << ' ';
      first = false;
      os << name << '[' << layout.row_of(g) << ',' << layout.col_of(g) << ']';
      if (e[g] > 1) os << '^' << static_cast<int>(e[g]);
    }
  };
  emit('x', w.x);
  emit('d', w.d);
  return first ? std::string("1") : os.str();
}

std::string NOElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    Rational c = t.coeff;
    if (!first) {
      os << (c.sign() < 0 ? " - " : " + ");
      if (c.sign() < 0) c = -c;
    } else if (c.sign() < 0) {
      os << '-';
      c = -c;
    }
    first = false;
    if (t.word.is_identity()) {
      os << c;
    } else {
      if (!c.is_one()) os << c << ' ';
      os << word_to_string(layout_, t.word);
    }
  }
  return os.str();
}

OrderedSymbol normal_order_symbol(const Layout& layout, std::span<const Letter> letters) {
  struct Key {
    int rank;
    bool odd;
  };
  std::vector<Key> keys;
  keys.reserve(letters.size());
  for (const Letter& l : letters) {
    if (l.row < 1 || l.row > layout.rows() || l.col < 1 || l.col > layout.k())
      throw Error(ErrorCode::InvalidSizes, "generator index out of range");
    int g = layout.index(l.row, l.col);
    keys.push_back({(l.kind == Kind::Del ? kMaxGenerators : 0) + g, layout.odd(g)});
  }
  OrderedSymbol out;
  int inversions = 0;
  for (std::size_t p = 0; p < keys.size(); ++p) {
    for (std::size_t q = p + 1; q < keys.size(); ++q) {
      if (!keys[p].odd || !keys[q].odd) continue;
      if (keys[p].rank == keys[q].rank) return {1, std::nullopt};
      if (keys[p].rank > keys[q].rank) ++inversions;
    }
  }
  out.sign = sign_of(inversions);
  NOWord w;
  for (const Key& key : keys) {
    if (key.rank >= kMaxGenerators)
      ++w.d[key.rank - kMaxGenerators];
    else
      ++w.x[key.rank];
  }
  out.word = w;
  return out;
}

NOElement super_commutator(const NOElement& p, const NOElement& q) {
  auto pp = p.parity();
  auto pq = q.parity();
  if (!pp || !pq) throw Error(ErrorCode::NonHomogeneous, "supercommutator of inhomogeneous elements");
  NOElement r = p * q;
  NOElement s = q * p;
  if (*pp && *pq)
    r += s;
  else
    r -= s;
  return r;
}

NOElement pi_mn(const Layout& layout, int i, int j) {
  TermBuffer buf;
  for (int a = 1; a <= layout.k(); ++a)
    buf.add_product(NOElement::x(layout, i, a), NOElement::del(layout, j, a), Rational(1));
  buf.note_layout(layout);
  return buf.finish();
}

NOElement pi_k(const Layout& layout, int a, int b) {
  TermBuffer buf;
  for (int i = 1; i <= layout.rows(); ++i)
    buf.add_product(NOElement::x(layout, i, a), NOElement::del(layout, i, b), Rational(1));
  buf.note_layout(layout);
  return buf.finish();
}

}  // namespace gaudin
