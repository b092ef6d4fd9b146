#pragma once

// Finite words and infinite symbol streams over the alphabet {1, ..., k}.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nhifs/error.hpp"

namespace nhifs {

using Symbol = std::uint16_t;

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    for (auto s : symbols_)
      if (s == 0) throw InvalidArgument("symbols are numbered from 1");
  }
  Word(std::initializer_list<Symbol> symbols) : Word(std::vector<Symbol>(symbols)) {}

  /// Digit string such as "112"; only for alphabets of at most nine symbols.
  static Word parse(std::string_view digits) {
    std::vector<Symbol> out;
    for (char ch : digits) {
      if (ch < '1' || ch > '9') throw InvalidArgument("bad symbol '" + std::string(1, ch) + "'");
      out.push_back(static_cast<Symbol>(ch - '0'));
    }
    return Word(std::move(out));
  }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  void push_back(Symbol s) {
    if (s == 0) throw InvalidArgument("symbols are numbered from 1");
    symbols_.push_back(s);
  }
  void pop_back() { symbols_.pop_back(); }

  Word operator+(const Word& tail) const {
    auto out = symbols_;
    out.insert(out.end(), tail.symbols_.begin(), tail.symbols_.end());
    return Word(std::move(out));
  }

  Word reversed() const { return Word(std::vector<Symbol>(symbols_.rbegin(), symbols_.rend())); }

  Word prefix(std::size_t n) const {
    return Word(std::vector<Symbol>(symbols_.begin(), symbols_.begin() + static_cast<long>(n)));
  }

  /// True when `factor` occurs as a contiguous block.
  bool contains_factor(const Word& factor) const {
    if (factor.size() > size()) return false;
    for (std::size_t i = 0; i + factor.size() <= size(); ++i) {
      bool hit = true;
      for (std::size_t j = 0; j < factor.size() && hit; ++j) hit = symbols_[i + j] == factor[j];
      if (hit) return true;
    }
    return false;
  }

  void check_alphabet(std::size_t k) const {
    for (auto s : symbols_)
      if (s > k)
        throw InvalidArgument("symbol " + std::to_string(s) + " outside alphabet of size " +
                              std::to_string(k));
  }

  /// Digits run together for k <= 9, dot-separated otherwise.
  std::string to_string() const {
    bool wide = false;
    for (auto s : symbols_) wide = wide || s > 9;
    std::string out;
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (wide && i) out += '.';
      out += std::to_string(symbols_[i]);
    }
    return out;
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Counter-based generator: the n-th draw for a seed is a pure function of
/// (seed, n), so orbits are reproducible regardless of how they are split.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t at(std::uint64_t counter) const { return mix(mix(seed_) ^ counter); }
  std::uint64_t next() { return at(counter_++); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Inverse-CDF draw of a symbol in 1..weights.size().
inline Symbol draw_symbol(double u, std::span<const double> weights) {
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return static_cast<Symbol>(i + 1);
  }
  return static_cast<Symbol>(weights.size());
}

/// Enumerates every word over {1..k} by length, then lexicographically,
/// and emits their concatenation symbol by symbol. Every finite word
/// occurs as a factor, so the resulting sequence is disjunctive.
class DisjunctiveGenerator {
 public:
  explicit DisjunctiveGenerator(std::size_t k) : k_(k), digits_(1, 0) {
    if (k == 0) throw InvalidArgument("alphabet must be non-empty");
  }

  Symbol next() {
    const Symbol s = static_cast<Symbol>(digits_[pos_] + 1);
    if (++pos_ == digits_.size()) {
      pos_ = 0;
      advance();
    }
    return s;
  }

 private:
  void advance() {
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (++digits_[i] < k_) return;
      digits_[i] = 0;
    }
    digits_.assign(digits_.size() + 1, 0);
  }

  std::size_t k_;
  std::vector<std::size_t> digits_;
  std::size_t pos_ = 0;
};

/// First n symbols of the canonical disjunctive sequence.
inline Word disjunctive_prefix(std::size_t k, std::size_t n) {
  if (n == 0) throw InvalidArgument("prefix length must be at least 1");
  DisjunctiveGenerator gen(k);
  std::vector<Symbol> out(n);
  for (auto& s : out) s = gen.next();
  return Word(std::move(out));
}

/// A source of symbols: periodic, disjunctive, seeded i.i.d., or an
/// explicit finite list that throws once exhausted.
class SymbolStream {
 public:
  struct Periodic {
    Word word;
  };
  struct Disjunctive {
    std::size_t k;
  };
  struct Random {
    std::uint64_t seed;
    std::vector<double> weights;
  };
  struct Explicit {
    Word symbols;
  };

  static SymbolStream periodic(Word w) {
    if (w.empty()) throw InvalidArgument("periodic word must be non-empty");
    return SymbolStream(Periodic{std::move(w)});
  }
  static SymbolStream disjunctive(std::size_t k) { return SymbolStream(Disjunctive{k}); }
  static SymbolStream random(std::uint64_t seed, std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) {
      if (!(w > 0.0)) throw InvalidArgument("weights must be strictly positive");
      sum += w;
    }
    if (weights.empty() || std::abs(sum - 1.0) > 1e-12) throw InvalidArgument("weights must sum to 1");
    return SymbolStream(Random{seed, std::move(weights)});
  }
  static SymbolStream explicit_list(Word w) { return SymbolStream(Explicit{std::move(w)}); }

  Symbol next() {
    const std::size_t n = taken_++;
    return std::visit(
        [&](auto& s) -> Symbol {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, Periodic>) {
            return s.word[n % s.word.size()];
          } else if constexpr (std::is_same_v<T, Disjunctive>) {
            return gen_.next();
          } else if constexpr (std::is_same_v<T, Random>) {
            return draw_symbol(rng_.uniform(), s.weights);
          } else {
            if (n >= s.symbols.size()) {
              --taken_;
              throw StreamExhausted("explicit symbol list exhausted after " +
                                    std::to_string(s.symbols.size()) + " symbols");
            }
            return s.symbols[n];
          }
        },
        kind_);
  }

  /// Number of symbols consumed so far.
  std::size_t taken() const { return taken_; }

  /// Largest symbol the stream can emit (0 when unbounded by construction).
  std::size_t max_symbol() const {
    return std::visit(
        [](const auto& s) -> std::size_t {
          using T = std::decay_t<decltype(s)>;
          std::size_t m = 0;
          if constexpr (std::is_same_v<T, Periodic>) {
            for (auto x : s.word) m = std::max<std::size_t>(m, x);
          } else if constexpr (std::is_same_v<T, Disjunctive>) {
            m = s.k;
          } else if constexpr (std::is_same_v<T, Random>) {
            m = s.weights.size();
          } else {
            for (auto x : s.symbols) m = std::max<std::size_t>(m, x);
          }
          return m;
        },
        kind_);
  }

 private:
  template <class Kind>
  explicit SymbolStream(Kind k)
      : kind_(std::move(k)),
        gen_(std::holds_alternative<Disjunctive>(kind_) ? std::get<Disjunctive>(kind_).k : 1),
        rng_(std::holds_alternative<Random>(kind_) ? std::get<Random>(kind_).seed : 0) {}

  std::variant<Periodic, Disjunctive, Random, Explicit> kind_;
  DisjunctiveGenerator gen_;
  CounterRng rng_;
  std::size_t taken_ = 0;
};

}  // namespace nhifs
