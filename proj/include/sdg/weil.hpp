#pragma once

/**
 * @file weil.hpp
 * @brief Exact arithmetic in R[d1,...,dn]/(di^2 = 0, killed monomials).
 *
 * An element is stored densely: one rational coefficient per square-free
 * monomial, indexed by the bit mask of the generators it contains. A killed
 * monomial generates an ideal, so every monomial containing it is dead as
 * well. D(2) is the quotient killing d1*d2; D^2 v D kills d1*e and d2*e.
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdg/error.hpp"
#include "sdg/rational.hpp"

namespace sdg {

using Mask = std::uint32_t;
inline constexpr std::size_t max_generators = 12;

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Ordered generator names plus the killed-monomial ideal.
class Algebra {
 public:
  static AlgebraPtr create(std::vector<std::string> names, std::vector<Mask> killed = {}) {
    return AlgebraPtr(new Algebra(std::move(names), std::move(killed)));
  }

  [[nodiscard]] std::size_t generators() const noexcept { return names_.size(); }
  [[nodiscard]] std::size_t slots() const noexcept { return std::size_t{1} << names_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] const std::string& name(std::size_t i) const { return names_.at(i); }
  [[nodiscard]] const std::vector<Mask>& killed() const noexcept { return killed_; }
  [[nodiscard]] Mask full_mask() const noexcept { return static_cast<Mask>(slots() - 1); }

  [[nodiscard]] bool alive(Mask m) const noexcept { return alive_[m]; }

  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  [[nodiscard]] std::size_t index(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw PreconditionError("unknown generator '" + std::string(name) + "'");
  }

  [[nodiscard]] Mask mask(std::initializer_list<std::string_view> gens) const {
    Mask m = 0;
    for (auto g : gens) m |= Mask{1} << index(g);
    return m;
  }

  /// Quotient by additional monomials.
  [[nodiscard]] AlgebraPtr with_killed(const std::vector<Mask>& extra) const {
    auto k = killed_;
    k.insert(k.end(), extra.begin(), extra.end());
    return create(names_, std::move(k));
  }

  /// Appends generators; existing masks keep their meaning.
  [[nodiscard]] AlgebraPtr extended(const std::vector<std::string>& extra) const {
    auto n = names_;
    n.insert(n.end(), extra.begin(), extra.end());
    return create(std::move(n), killed_);
  }

  /// Appends `count` generators named so they cannot clash with existing ones.
  [[nodiscard]] AlgebraPtr with_fresh(std::size_t count) const {
    std::vector<std::string> extra;
    for (std::size_t k = 0; extra.size() < count; ++k) {
      std::string candidate = "_" + std::to_string(k);
      if (!find(candidate)) extra.push_back(std::move(candidate));
    }
    return extended(extra);
  }

  [[nodiscard]] bool same_as(const Algebra& other) const noexcept {
    return this == &other || (names_ == other.names_ && killed_ == other.killed_);
  }

  [[nodiscard]] std::string monomial_name(Mask m) const {
    if (m == 0) return "1";
    std::string out;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!(m & (Mask{1} << i))) continue;
      if (!out.empty()) out += '*';
      out += names_[i];
    }
    return out;
  }

 private:
  Algebra(std::vector<std::string> names, std::vector<Mask> killed) : names_(std::move(names)) {
    if (names_.size() > max_generators) throw PreconditionError("too many generators");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw PreconditionError("empty generator name");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) throw PreconditionError("duplicate generator '" + names_[i] + "'");
    }
    const Mask full = static_cast<Mask>(slots() - 1);
    for (Mask k : killed) {
      if (k == 0) throw PreconditionError("cannot kill the unit monomial");
      if ((k & ~full) != 0) throw PreconditionError("killed monomial uses an unknown generator");
    }
    // Keep only minimal generators of the ideal, sorted.
    std::sort(killed.begin(), killed.end());
    killed.erase(std::unique(killed.begin(), killed.end()), killed.end());
    for (Mask k : killed) {
      bool minimal = std::none_of(killed.begin(), killed.end(),
                                  [k](Mask o) { return o != k && (o & k) == o; });
      if (minimal) killed_.push_back(k);
    }
    alive_.assign(slots(), true);
    for (Mask m = 0; m <= full; ++m)
      for (Mask k : killed_)
        if ((m & k) == k) alive_[m] = false;
  }

  std::vector<std::string> names_;
  std::vector<Mask> killed_;
  std::vector<bool> alive_;
};

inline void require_same(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->same_as(*b)) throw AlgebraMismatch("operands live in different Weil algebras");
}

/// Element of a Weil algebra with exact rational coefficients.
class WeilElement {
 public:
  explicit WeilElement(AlgebraPtr alg, const Rational& constant = 0)
      : alg_(std::move(alg)), coeffs_(alg_->slots()) {
    coeffs_[0] = constant;
  }

  static WeilElement monomial(AlgebraPtr alg, Mask m, const Rational& coefficient = 1) {
    WeilElement out(std::move(alg));
    if ((m & ~out.alg_->full_mask()) != 0) throw PreconditionError("monomial uses an unknown generator");
    if (out.alg_->alive(m)) out.coeffs_[m] = coefficient;
    return out;
  }

  static WeilElement generator(AlgebraPtr alg, std::size_t i, const Rational& coefficient = 1) {
    return monomial(std::move(alg), Mask{1} << i, coefficient);
  }

  static WeilElement generator(const AlgebraPtr& alg, std::string_view name, const Rational& coefficient = 1) {
    return generator(alg, alg->index(name), coefficient);
  }

  [[nodiscard]] const AlgebraPtr& algebra() const noexcept { return alg_; }
  [[nodiscard]] const Rational& operator[](Mask m) const { return coeffs_.at(m); }
  [[nodiscard]] const Rational& constant() const { return coeffs_[0]; }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
  }

  [[nodiscard]] bool is_constant() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
  }

  /// True when some nonzero coefficient sits on a monomial meeting `gens`.
  [[nodiscard]] bool depends_on(Mask gens) const {
    for (Mask m = 0; m < coeffs_.size(); ++m)
      if ((m & gens) != 0 && coeffs_[m] != 0) return true;
    return false;
  }

  /// Nonzero monomials in ascending mask order.
  [[nodiscard]] std::vector<std::pair<Mask, Rational>> terms() const {
    std::vector<std::pair<Mask, Rational>> out;
    for (Mask m = 0; m < coeffs_.size(); ++m)
      if (coeffs_[m] != 0) out.emplace_back(m, coeffs_[m]);
    return out;
  }

  WeilElement& operator+=(const WeilElement& o) {
    require_same(alg_, o.alg_);
    for (std::size_t m = 0; m < coeffs_.size(); ++m) coeffs_[m] += o.coeffs_[m];
    return *this;
  }

  WeilElement& operator-=(const WeilElement& o) {
    require_same(alg_, o.alg_);
    for (std::size_t m = 0; m < coeffs_.size(); ++m) coeffs_[m] -= o.coeffs_[m];
    return *this;
  }

  WeilElement& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend WeilElement operator+(WeilElement a, const WeilElement& b) { return a += b; }
  friend WeilElement operator-(WeilElement a, const WeilElement& b) { return a -= b; }
  friend WeilElement operator*(WeilElement a, const Rational& s) { return a *= s; }
  friend WeilElement operator*(const Rational& s, WeilElement a) { return a *= s; }
  friend WeilElement operator-(WeilElement a) { return a *= Rational(-1); }

  friend WeilElement operator*(const WeilElement& a, const WeilElement& b) {
    require_same(a.alg_, b.alg_);
    WeilElement out(a.alg_);
    const auto& alg = *a.alg_;
    const Mask full = alg.full_mask();
    Rational term;
    for (Mask i = 0; i <= full; ++i) {
      if (a.coeffs_[i] == 0) continue;
      const Mask rest = full & ~i;
      for (Mask j = rest;; j = (j - 1) & rest) {
        if (b.coeffs_[j] != 0 && alg.alive(i | j)) {
          mpq_mul(term.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[j].get_mpq_t());
          out.coeffs_[i | j] += term;
        }
        if (j == 0) break;
      }
    }
    return out;
  }

  WeilElement& operator*=(const WeilElement& o) { return *this = *this * o; }

  friend bool operator==(const WeilElement& a, const WeilElement& b) {
    if (a.alg_.get() != b.alg_.get() && !a.alg_->same_as(*b.alg_)) return false;
    return a.coeffs_ == b.coeffs_;
  }

  /// Two-sided inverse via the finite geometric series of the nilpotent part.
  [[nodiscard]] WeilElement inverse() const {
    const Rational c = constant();
    if (c == 0) throw NotInvertible("Weil element with zero constant term is not invertible");
    WeilElement q = *this;
    q.coeffs_[0] = 0;
    q *= Rational(-1) / c;
    WeilElement sum(alg_, 1);
    WeilElement power(alg_, 1);
    for (std::size_t k = 0; k <= alg_->generators(); ++k) {
      power = power * q;
      if (power.is_zero()) break;
      sum += power;
    }
    return sum *= Rational(1) / c;
  }

  /// Image in the quotient that additionally kills `kill`.
  [[nodiscard]] WeilElement restricted(const std::vector<Mask>& kill) const {
    WeilElement out(alg_->with_killed(kill));
    for (Mask m = 0; m < coeffs_.size(); ++m)
      if (out.alg_->alive(m)) out.coeffs_[m] = coeffs_[m];
    return out;
  }

  /// Coefficient of the monomial `exponent` in the generators `over`, as an
  /// element of the same algebra that no longer involves `over`.
  [[nodiscard]] WeilElement coefficient(Mask over, Mask exponent) const {
    if ((exponent & ~over) != 0) throw PreconditionError("exponent outside the extraction generators");
    WeilElement out(alg_);
    for (Mask m = 0; m < coeffs_.size(); ++m)
      if ((m & over) == 0) out.coeffs_[m] = coeffs_[m | exponent];
    return out;
  }

  /// Copy into an algebra obtained from this one by appending generators.
  [[nodiscard]] WeilElement embedded(const AlgebraPtr& ext) const {
    check_prefix(*alg_, *ext);
    WeilElement out(ext);
    std::copy(coeffs_.begin(), coeffs_.end(), out.coeffs_.begin());
    return out;
  }

  /// Inverse of `embedded`; the element must not involve the appended generators.
  [[nodiscard]] WeilElement projected(const AlgebraPtr& base) const {
    check_prefix(*base, *alg_);
    const Mask extra = alg_->full_mask() & ~base->full_mask();
    if (depends_on(extra)) throw InvariantViolation("element still depends on auxiliary generators");
    WeilElement out(base);
    std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(base->slots()),
              out.coeffs_.begin());
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    auto order = terms();
    std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
      return std::popcount(x.first) < std::popcount(y.first);
    });
    for (const auto& [m, c] : order) {
      Rational mag = abs(c);
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      if (m == 0)
        os << mag.get_str();
      else if (mag == 1)
        os << alg_->monomial_name(m);
      else
        os << mag.get_str() << '*' << alg_->monomial_name(m);
      first = false;
    }
    return first ? "0" : os.str();
  }

 private:
  friend class Substitution;

  static void check_prefix(const Algebra& base, const Algebra& ext) {
    const auto& bn = base.names();
    const auto& en = ext.names();
    if (en.size() < bn.size() || !std::equal(bn.begin(), bn.end(), en.begin()) || base.killed() != ext.killed())
      throw AlgebraMismatch("algebra is not an extension by fresh generators");
  }

  AlgebraPtr alg_;
  std::vector<Rational> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const WeilElement& a) { return os << a.to_string(); }

/// Images sending every generator of `source` to the same-named generator of `target`.
inline std::vector<WeilElement> identity_images(const AlgebraPtr& source, const AlgebraPtr& target) {
  std::vector<WeilElement> out;
  out.reserve(source->generators());
  for (const auto& name : source->names()) out.push_back(WeilElement::generator(target, name));
  return out;
}

/**
 * Algebra homomorphism determined by generator images.
 *
 * Each image must have zero constant term and square to zero in the target,
 * and every killed monomial of the source must map to zero; otherwise the
 * assignment does not define a homomorphism and construction throws.
 */
class Substitution {
 public:
  Substitution(AlgebraPtr source, AlgebraPtr target, std::vector<WeilElement> images)
      : source_(std::move(source)), target_(std::move(target)) {
    if (images.size() != source_->generators()) throw PreconditionError("one image per generator required");
    for (std::size_t i = 0; i < images.size(); ++i) {
      require_same(images[i].algebra(), target_);
      if (images[i].constant() != 0)
        throw PreconditionError("image of " + source_->name(i) + " has a nonzero constant term");
      if (!(images[i] * images[i]).is_zero())
        throw PreconditionError("image of " + source_->name(i) + " is not square-zero in the target algebra");
    }
    table_.reserve(source_->slots());
    table_.emplace_back(target_, 1);
    for (Mask m = 1; m < source_->slots(); ++m) {
      const int low = std::countr_zero(m);
      table_.push_back(table_[m & (m - 1)] * images[static_cast<std::size_t>(low)]);
    }
    for (Mask k : source_->killed())
      if (!table_[k].is_zero())
        throw PreconditionError("substitution does not respect killed monomial " + source_->monomial_name(k));
  }

  /// Same algebra, every generator fixed except the listed ones.
  static Substitution assign(const AlgebraPtr& alg, const std::vector<std::pair<std::size_t, WeilElement>>& changes) {
    auto images = identity_images(alg, alg);
    for (const auto& [gen, image] : changes) images.at(gen) = image;
    return Substitution(alg, alg, std::move(images));
  }

  [[nodiscard]] const AlgebraPtr& source() const noexcept { return source_; }
  [[nodiscard]] const AlgebraPtr& target() const noexcept { return target_; }

  [[nodiscard]] WeilElement operator()(const WeilElement& a) const {
    require_same(a.algebra(), source_);
    WeilElement out(target_);
    for (Mask m = 0; m < a.coeffs_.size(); ++m) {
      if (a.coeffs_[m] == 0) continue;
      const auto& image = table_[m].coeffs_;
      for (std::size_t k = 0; k < image.size(); ++k)
        if (image[k] != 0) out.coeffs_[k] += a.coeffs_[m] * image[k];
    }
    return out;
  }

 private:
  AlgebraPtr source_;
  AlgebraPtr target_;
  std::vector<WeilElement> table_;
};

}  // namespace sdg
