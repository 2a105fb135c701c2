#pragma once

// Monomial orders. Every order is a total order on exponent vectors of a
// fixed length; all of them except lex refine total degree.

#include "quadgb/monomial.hpp"

#include <compare>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace quadgb {

namespace detail {

inline std::strong_ordering lex_compare(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

/// Graded reverse lexicographic order where variable `rank[k]` is the
/// position of x_k in the descending variable order (identity = x_0 > x_1 > ...).
inline std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b, const std::vector<std::size_t>* by_position = nullptr) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  const std::size_t n = a.size();
  for (std::size_t pos = n; pos-- > 0;) {
    std::size_t k = by_position ? (*by_position)[pos] : pos;
    if (a[k] != b[k]) return b[k] <=> a[k];
  }
  return std::strong_ordering::equal;
}

}  // namespace detail

/// ν(m) for a monomial m: entry (i, j) is 0 when x_j^i divides m and 1
/// otherwise, for i = 1..cap, flattened row by row.
inline std::vector<int> nu_vector(const Monomial& m, int cap) {
  if (cap < 0) throw std::invalid_argument("nu_vector: negative cap");
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(cap) * m.size());
  for (int i = 1; i <= cap; ++i)
    for (std::size_t j = 0; j < m.size(); ++j) v.push_back(m[j] >= i ? 0 : 1);
  return v;
}

/// The ν comparison of two monomials of equal degree: larger ν vector in
/// lexicographic order means larger monomial. Not multiplicative on S; it is
/// used only to rank the variables of a Veronese ring.
inline std::strong_ordering compare_nu(const Monomial& a, const Monomial& b, int cap) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  auto va = nu_vector(a, cap), vb = nu_vector(b, cap);
  return va <=> vb;
}

class MonomialOrder {
 public:
  struct Lex {};
  struct Grevlex {};
  /// Total degree, then each row in turn, then grevlex.
  struct Weight {
    std::vector<std::vector<std::int64_t>> rows;
  };
  /// Order on a ring whose variables map to monomials `images` of a base
  /// ring: compare images in the base order, break ties by grevlex.
  struct Induced {
    std::shared_ptr<const MonomialOrder> base;
    std::vector<Monomial> images;
  };
  /// Grevlex on a Veronese ring whose variables are ranked by the ν order
  /// of their images.
  struct Nu {
    int cap = 0;
    std::vector<Monomial> images;
    std::vector<std::size_t> by_position;  // variable index at each rank, largest first
  };

  using Kind = std::variant<Lex, Grevlex, Weight, Induced, Nu>;

  static MonomialOrder lex(std::size_t nvars) { return MonomialOrder(nvars, Lex{}); }
  static MonomialOrder grevlex(std::size_t nvars) { return MonomialOrder(nvars, Grevlex{}); }
  static MonomialOrder weight(std::size_t nvars, std::vector<std::vector<std::int64_t>> rows) {
    for (const auto& r : rows)
      if (r.size() != nvars) throw std::invalid_argument("weight row length does not match the number of variables");
    return MonomialOrder(nvars, Weight{std::move(rows)});
  }
  static MonomialOrder induced(std::shared_ptr<const MonomialOrder> base, std::vector<Monomial> images) {
    for (const auto& m : images)
      if (m.size() != base->nvars()) throw std::invalid_argument("induced order: image lives in the wrong ring");
    std::size_t n = images.size();
    return MonomialOrder(n, Induced{std::move(base), std::move(images)});
  }
  static MonomialOrder nu(std::vector<Monomial> images, int cap) {
    Nu k{cap, std::move(images), {}};
    k.by_position.resize(k.images.size());
    for (std::size_t i = 0; i < k.by_position.size(); ++i) k.by_position[i] = i;
    std::stable_sort(k.by_position.begin(), k.by_position.end(), [&](std::size_t a, std::size_t b) {
      return compare_nu(k.images[a], k.images[b], cap) == std::strong_ordering::greater;
    });
    std::size_t n = k.images.size();
    return MonomialOrder(n, std::move(k));
  }

  std::size_t nvars() const { return nvars_; }
  const Kind& kind() const { return kind_; }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (a.size() != nvars_ || b.size() != nvars_)
      throw std::invalid_argument("monomial length does not match the order's ring");
    return std::visit([&](const auto& k) { return compare_kind(k, a, b); }, kind_);
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) == std::strong_ordering::greater; }
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) == std::strong_ordering::less; }

  bool is_graded() const { return !std::holds_alternative<Lex>(kind_); }

  std::string name() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Lex>) return "lex";
          else if constexpr (std::is_same_v<K, Grevlex>) return "grevlex";
          else if constexpr (std::is_same_v<K, Weight>) {
            std::ostringstream os;
            os << "weight(";
            for (std::size_t r = 0; r < k.rows.size(); ++r) {
              os << (r ? "," : "") << "(";
              for (std::size_t i = 0; i < k.rows[r].size(); ++i) os << (i ? "," : "") << k.rows[r][i];
              os << ")";
            }
            os << ")";
            return os.str();
          } else if constexpr (std::is_same_v<K, Induced>) return "induced(" + k.base->name() + ")";
          else return "nu";
        },
        kind_);
  }

 private:
  MonomialOrder(std::size_t n, Kind k) : nvars_(n), kind_(std::move(k)) {}

  static std::strong_ordering compare_kind(const Lex&, const Monomial& a, const Monomial& b) {
    return detail::lex_compare(a, b);
  }
  static std::strong_ordering compare_kind(const Grevlex&, const Monomial& a, const Monomial& b) {
    return detail::grevlex_compare(a, b);
  }
  static std::strong_ordering compare_kind(const Weight& w, const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    for (const auto& row : w.rows) {
      std::int64_t wa = 0, wb = 0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        wa += row[i] * a[i];
        wb += row[i] * b[i];
      }
      if (wa != wb) return wa <=> wb;
    }
    return detail::grevlex_compare(a, b);
  }
  static std::strong_ordering compare_kind(const Induced& ind, const Monomial& a, const Monomial& b) {
    auto c = ind.base->compare(image(ind.images, a), image(ind.images, b));
    if (c != std::strong_ordering::equal) return c;
    return detail::grevlex_compare(a, b);
  }
  static std::strong_ordering compare_kind(const Nu& nu, const Monomial& a, const Monomial& b) {
    return detail::grevlex_compare(a, b, &nu.by_position);
  }

 public:
  /// φ(a) = product of images[k]^a_k.
  static Monomial image(const std::vector<Monomial>& images, const Monomial& a) {
    Monomial r(images.empty() ? 0 : images.front().size());
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k] != 0)
        for (std::size_t i = 0; i < r.size(); ++i) r.set(i, r[i] + a[k] * images[k][i]);
    return r;
  }

 private:
  std::size_t nvars_;
  Kind kind_;
};

}  // namespace quadgb
