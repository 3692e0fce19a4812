#pragma once

/**
 * @file bianchi.hpp
 * @brief The cube of a micro-3-cube: edge arrows P_XY, face loops R_XYZW,
 *        the abstract Bianchi word and the classical identity d_nabla Omega = 0.
 *
 * Vertices are bit masks over the three arguments: O = 000, A = d1, B = d2,
 * C = d3, D = d1 d2, E = d1 d3, F = d2 d3, G = d1 d2 d3. The edge X -> Y
 * moves along the one direction in which they differ, the other two slots
 * being held at the values X assigns them.
 */

#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdg/forms.hpp"

namespace sdg {

using Vertex = unsigned;

inline constexpr std::array<char, 8> vertex_names{'O', 'A', 'B', 'D', 'C', 'E', 'F', 'G'};

inline char vertex_name(Vertex v) { return vertex_names.at(v); }

inline Vertex vertex_from_name(char c) {
  for (Vertex v = 0; v < 8; ++v)
    if (vertex_names[v] == c) return v;
  throw PreconditionError(std::string("unknown cube vertex '") + c + "'");
}

inline bool adjacent(Vertex x, Vertex y) { return x < 8 && y < 8 && std::popcount(x ^ y) == 1; }

/// Edge letter P_XY; its inverse is P_YX.
struct EdgeLetter {
  Vertex from;
  Vertex to;

  friend bool operator==(const EdgeLetter&, const EdgeLetter&) = default;
  [[nodiscard]] EdgeLetter inverse() const { return {to, from}; }
  [[nodiscard]] std::string to_string() const { return std::string("P_") + vertex_name(from) + vertex_name(to); }
};

/// Left-to-right product of edge letters.
using EdgeWord = std::vector<EdgeLetter>;

inline std::string to_string(const EdgeWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w) out += (out.empty() ? "" : " ") + l.to_string();
  return out;
}

inline EdgeWord inverse(const EdgeWord& w) {
  EdgeWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

/// Free reduction, scanning left to right.
inline EdgeWord reduce_word(const EdgeWord& w) {
  EdgeWord out;
  for (const auto& l : w) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

/// Free reduction, scanning right to left.
inline EdgeWord reduce_word_from_right(const EdgeWord& w) {
  EdgeWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (!out.empty() && out.back() == it->inverse())
      out.pop_back();
    else
      out.push_back(*it);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

/// R_XYZW = P_WX P_ZW P_YZ P_XY.
inline EdgeWord face_word(std::string_view face) {
  if (face.size() != 4) throw PreconditionError("a face is named by four vertices");
  std::array<Vertex, 4> v{};
  for (std::size_t k = 0; k < 4; ++k) v[k] = vertex_from_name(face[k]);
  for (std::size_t k = 0; k < 4; ++k)
    if (!adjacent(v[k], v[(k + 1) % 4])) throw PreconditionError(std::string(face) + " is not a face of the cube");
  if ((v[0] ^ v[1]) == (v[2] ^ v[3]) && (v[1] ^ v[2]) == (v[3] ^ v[0]) && (v[0] ^ v[1]) != (v[1] ^ v[2]))
    return {{v[3], v[0]}, {v[2], v[3]}, {v[1], v[2]}, {v[0], v[1]}};
  throw PreconditionError(std::string(face) + " is not a face of the cube");
}

/**
 * Parses a word of tokens "P_XY" and "R_XYZW", expanding the latter into
 * edge letters.
 */
inline EdgeWord parse_word(std::string_view text) {
  EdgeWord out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok.size() == 4 && tok.starts_with("P_")) {
      const Vertex x = vertex_from_name(tok[2]);
      const Vertex y = vertex_from_name(tok[3]);
      if (!adjacent(x, y)) throw PreconditionError(tok + " is not an edge of the cube");
      out.push_back({x, y});
    } else if (tok.size() == 6 && tok.starts_with("R_")) {
      const auto f = face_word(std::string_view(tok).substr(2));
      out.insert(out.end(), f.begin(), f.end());
    } else {
      throw PreconditionError("unrecognised cube token '" + tok + "'");
    }
  }
  return out;
}

inline constexpr std::string_view abstract_bianchi_text =
    "P_AO P_DA P_GD R_GFBD R_GECF R_GDAE P_DG P_AD P_OA R_OCEA R_OBFC R_OADB";

inline EdgeWord abstract_bianchi_word() { return parse_word(abstract_bianchi_text); }

/// The arrows of the twelve edges, each stored in both directions.
class CubeLabeling {
 public:
  CubeLabeling(const Connection& c, const Microcube& g) : gamma_(g) {
    if (g.degree() != 3) throw PreconditionError("the cube needs a micro-3-cube");
    for (Vertex x = 0; x < 8; ++x)
      for (unsigned k = 0; k < 3; ++k) {
        if (x & (1u << k)) continue;
        const Vertex y = x | (1u << k);
        std::array<std::size_t, 2> fixed{};
        std::size_t n = 0;
        for (unsigned j = 0; j < 3; ++j)
          if (j != k) fixed[n++] = j;
        auto value = [&](std::size_t j) { return (x & (1u << j)) ? g.arg(j) : WeilElement(g.algebra()); };
        const Microcube s = slice2(g, fixed[0], fixed[1], value(fixed[0]), value(fixed[1]));
        Arrow p = c.apply(as_tangent(s)).at(g.arg(k));
        if (!c.sequence().H.validate(p)) throw InvariantViolation("cube edge leaves H");
        backward_[index(x, y)] = inverse(p);
        forward_[index(x, y)] = std::move(p);
      }
  }

  [[nodiscard]] const Microcube& gamma() const noexcept { return gamma_; }

  [[nodiscard]] const Arrow& edge(Vertex x, Vertex y) const {
    if (!adjacent(x, y)) throw PreconditionError("not an edge of the cube");
    return x < y ? *forward_[index(x, y)] : *backward_[index(y, x)];
  }

  [[nodiscard]] const Arrow& edge(const EdgeLetter& l) const { return edge(l.from, l.to); }

  [[nodiscard]] Arrow evaluate(const EdgeWord& w) const {
    if (w.empty()) throw PreconditionError("empty edge word has no base point");
    std::vector<Arrow> arrows;
    for (const auto& l : w) arrows.push_back(edge(l));
    return compose_all(arrows);
  }

  [[nodiscard]] Arrow face_loop(std::string_view face) const { return evaluate(face_word(face)); }

  /// Replaces the stored forward arrow of x -> y only, leaving P_YX untouched.
  void corrupt_forward(Vertex x, Vertex y, const WeilMatrix& right_factor) {
    if (!adjacent(x, y) || x > y) throw PreconditionError("corrupt_forward expects an edge X -> Y with X < Y");
    auto& p = *forward_[index(x, y)];
    p.body = p.body * right_factor;
  }

 private:
  static std::size_t index(Vertex x, Vertex y) { return x * 8 + y; }

  Microcube gamma_;
  std::array<std::optional<Arrow>, 64> forward_;
  std::array<std::optional<Arrow>, 64> backward_;
};

inline CubeLabeling build_cube(const Connection& c, const Microcube& g) { return CubeLabeling(c, g); }

struct CheckEntry {
  std::string name;
  bool ok;
  std::string detail;
};

struct BianchiReport {
  std::vector<CheckEntry> entries;

  [[nodiscard]] bool ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.ok; });
  }
  [[nodiscard]] const CheckEntry* find(std::string_view name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
  [[nodiscard]] std::string failures() const {
    std::string out;
    for (const auto& e : entries)
      if (!e.ok) out += (out.empty() ? "" : "; ") + e.name + (e.detail.empty() ? "" : ": " + e.detail);
    return out;
  }
  void add(std::string name, bool ok, std::string detail = {}) {
    entries.push_back({std::move(name), ok, std::move(detail)});
  }
};

/// Symbolic free reduction of the abstract word (both scan orders) and its numeric value.
inline BianchiReport verify_abstract_bianchi(const CubeLabeling& cube) {
  BianchiReport r;
  const EdgeWord w = abstract_bianchi_word();
  const EdgeWord left = reduce_word(w);
  const EdgeWord right = reduce_word_from_right(w);
  r.add("symbolic", left.empty(), left.empty() ? "" : "reduces to " + to_string(left));
  r.add("confluence", left == right);
  const Arrow value = cube.evaluate(w);
  const bool numeric = is_identity_arrow(value) && value.source == cube.gamma().anchor();
  r.add("numeric", numeric, numeric ? "" : "word evaluates to " + value.to_string());
  return r;
}

namespace detail {

inline bool commute(const Arrow& a, const Arrow& b) { return compose(a, b) == compose(b, a); }

inline Arrow conjugate(const Arrow& by, const Arrow& a) { return compose_all({inverse(by), a, by}); }

}  // namespace detail

/// The three displayed curvature identities of the base faces.
inline BianchiReport verify_face_curvature(const Connection& c, const CubeLabeling& cube) {
  BianchiReport r;
  const Microcube& g = cube.gamma();
  const WeilElement zero(g.algebra());
  const auto m = [&](std::size_t i, std::size_t j) { return g.arg(i) * g.arg(j); };
  r.add("R_OADB", cube.face_loop("OADB") == c.curvature(slice(g, 2, zero)).at(-m(0, 1)));
  r.add("R_OBFC", cube.face_loop("OBFC") == c.curvature(slice(g, 0, zero)).at(-m(1, 2)));
  r.add("R_OCEA", cube.face_loop("OCEA") == c.curvature(slice(g, 1, zero)).at(m(0, 2)));
  return r;
}

/**
 * (d_nabla Omega)(gamma) = 0 together with the commutation lemmas and the
 * three conjugation calculations its proof relies on.
 */
inline BianchiReport verify_classical_bianchi(const Connection& c, const Microcube& g) {
  BianchiReport r;
  const CubeLabeling cube(c, g);
  const WeilElement zero(g.algebra());
  const auto m = [&](std::size_t i, std::size_t j) { return g.arg(i) * g.arg(j); };
  const auto omega = [&](std::size_t slot, const WeilElement& e) { return c.curvature(slice(g, slot, e)); };

  const Tangent value = d_nabla(c, curvature_form(c))(g);
  r.add("d_nabla Omega = 0", value.is_zero(), value.is_zero() ? "" : value.to_string());

  const Vertex O = 0, A = 1, B = 2, C = 4, E = 5;
  const Arrow& p_oa = cube.edge(O, A);
  const Arrow& p_ob = cube.edge(O, B);
  const Arrow& p_oc = cube.edge(O, C);

  const Arrow w1 = omega(0, zero).at(-m(1, 2));  // Omega(gamma^1_0)_{-d2 d3}
  const Arrow w2 = omega(1, zero).at(m(0, 2));   // Omega(gamma^2_0)_{d1 d3}
  const Arrow w2n = omega(1, zero).at(-m(0, 2));
  const Arrow w3n = omega(2, zero).at(-m(0, 1));  // Omega(gamma^3_0)_{-d1 d2}
  const Arrow c1 = detail::conjugate(p_oa, omega(0, g.arg(0)).at(m(1, 2)));
  const Arrow c2 = detail::conjugate(p_ob, omega(1, g.arg(1)).at(-m(0, 2)));
  const Arrow c3 = detail::conjugate(p_oc, omega(2, g.arg(2)).at(m(0, 1)));
  const Arrow at_c = compose_all(
      {cube.edge(E, C), cube.edge(A, E), omega(0, g.arg(0)).at(-m(1, 2)), cube.edge(E, A), cube.edge(C, E)});

  r.add("commutation 1", detail::commute(at_c, omega(2, g.arg(2)).at(m(0, 1))));
  r.add("commutation 2", detail::commute(c3, w2n));
  r.add("commutation 3", detail::commute(c2, w3n));
  r.add("commutation 4", detail::commute(c3, w1));
  r.add("commutation 5", detail::commute(c2, w1));
  r.add("commutation 6", detail::commute(c3, w1));
  r.add("commutation 7", detail::commute(c2, w2));
  r.add("commutation 8", detail::commute(c3, w2));
  r.add("commutation 9", detail::commute(c3, w3n));
  r.add("commutation 10", detail::commute(c1, c2));
  r.add("commutation 11", detail::commute(c1, c3));
  r.add("commutation 12", detail::commute(w1, w2));

  const std::string prefix = "P_AO P_DA P_GD ";
  const std::string suffix = " P_DG P_AD P_OA";
  r.add("conjugate R_GDAE", cube.evaluate(parse_word(prefix + "R_GDAE" + suffix)) == c1);
  r.add("conjugate R_GECF", cube.evaluate(parse_word(prefix + "R_GECF" + suffix)) == c3);
  r.add("conjugate R_GFBD", cube.evaluate(parse_word(prefix + "R_GFBD" + suffix)) == c2);
  return r;
}

/**
 * Corrupts the forward arrow P_OA by a top-degree factor id + d1 d2 d3 V with
 * V a nonzero element of the Lie algebra of H. The free reduction is
 * unaffected, while the numeric word picks up the corruption.
 */
inline CubeLabeling mutated_cube(const Connection& c, const Microcube& g) {
  CubeLabeling cube(c, g);
  const auto& spec = c.sequence().H.group;
  const auto& alg = g.algebra();
  WeilMatrix v(alg, spec.dim, spec.dim);
  for (std::size_t k = 0; k < spec.dim * spec.dim; ++k)
    if (spec.is_free(k / spec.dim, k % spec.dim) && k / spec.dim != k % spec.dim) {
      v.at(k / spec.dim, k % spec.dim) = WeilElement(alg, 1);
      break;
    }
  if (v == WeilMatrix(alg, spec.dim, spec.dim)) {
    // Diagonal-only algebras such as gl1.
    for (std::size_t i = 0; i < spec.dim; ++i)
      if (spec.is_free(i, i)) {
        v.at(i, i) = WeilElement(alg, 1);
        break;
      }
  }
  cube.corrupt_forward(0, 1, WeilMatrix::identity(alg, spec.dim) + g.arg_product() * v);
  return cube;
}

}  // namespace sdg
