#include "bifree/fock.hpp"

#include <algorithm>
#include <cmath>

namespace bifree {

namespace {

// Orthonormal basis [xi, f_1, ..., f_{d^2-1}] of C^{d^2}, built by
// Gram-Schmidt over xi followed by the standard basis in index order.
Eigen::MatrixXcd component_basis(const MatrixModel& model) {
  const Eigen::Index n = model.state().size();
  Eigen::MatrixXcd basis(n, n);
  Eigen::Index kept = 0;
  auto try_keep = [&](Eigen::VectorXcd v) {
    for (Eigen::Index u = 0; u < kept; ++u)
      v -= basis.col(u).dot(v) * basis.col(u);
    const double norm = v.norm();
    if (norm > 1e-9 && kept < n) basis.col(kept++) = v / norm;
  };
  try_keep(model.state());
  for (Eigen::Index k = 0; k < n; ++k)
    try_keep(Eigen::VectorXcd::Unit(n, k));
  if (kept != n)
    throw Error("FreeProductSpace: Gram-Schmidt produced a defective basis");
  return basis;
}

}  // namespace

FreeProductSpace::FreeProductSpace(std::vector<MatrixModel> models, int depth,
                                   std::size_t dim_cap)
    : depth_(depth) {
  if (depth < 1) throw std::invalid_argument("FreeProductSpace: depth < 1");
  if (models.empty())
    throw ModelError("FreeProductSpace: at least one component required");

  for (const MatrixModel& m : models) {
    Component c;
    c.excitations = m.dim() * m.dim() - 1;
    const Eigen::MatrixXcd basis = component_basis(m);
    for (int g = 0; g < m.generator_count(); ++g) {
      const Eigen::MatrixXcd& gen = m.generator(g);
      c.pos_ops.push_back(basis.adjoint() * m.positive_action(gen) * basis);
      c.neg_ops.push_back(basis.adjoint() * m.reflected_action(gen) * basis);
    }
    components_.push_back(std::move(c));
  }

  // Alternating-tensor basis, grouped by length, lexicographic within.
  Slots prefix;
  auto grow = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      index_.emplace(prefix, static_cast<Eigen::Index>(slots_.size()));
      slots_.push_back(prefix);
      if (slots_.size() > dim_cap)
        throw CapExceeded("FreeProductSpace: dimension cap exceeded");
      return;
    }
    for (std::int32_t comp = 0;
         comp < static_cast<std::int32_t>(components_.size()); ++comp) {
      if (!prefix.empty() && prefix.back().first == comp) continue;
      const int m = components_[static_cast<std::size_t>(comp)].excitations;
      for (std::int32_t exc = 0; exc < m; ++exc) {
        prefix.emplace_back(comp, exc);
        self(self, remaining - 1);
        prefix.pop_back();
      }
    }
  };
  for (int len = 0; len <= depth_; ++len) grow(grow, len);
}

Eigen::Index FreeProductSpace::index_of(const Slots& s) const {
  auto it = index_.find(s);
  if (it == index_.end())
    throw Error("FreeProductSpace: basis lookup failed");
  return it->second;
}

Eigen::VectorXcd FreeProductSpace::vacuum() const {
  return Eigen::VectorXcd::Unit(dimension(), 0);
}

Eigen::VectorXcd FreeProductSpace::act(const Letter& letter,
                                       const Eigen::VectorXcd& v) const {
  if (v.size() != dimension())
    throw std::invalid_argument("FreeProductSpace::act: vector size mismatch");
  const auto comp_id = letter.gen.algebra_id;
  if (comp_id < 0 ||
      static_cast<std::size_t>(comp_id) >= components_.size())
    throw ModelError("FreeProductSpace: component out of range");
  const Component& comp = components_[static_cast<std::size_t>(comp_id)];
  if (letter.gen.local_id < 0 ||
      static_cast<std::size_t>(letter.gen.local_id) >= comp.pos_ops.size())
    throw ModelError("FreeProductSpace: generator out of range");
  const Eigen::MatrixXcd& op =
      letter.reflected ? comp.neg_ops[static_cast<std::size_t>(letter.gen.local_id)]
                       : comp.pos_ops[static_cast<std::size_t>(letter.gen.local_id)];

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dimension());
  const int m = comp.excitations;

  for (Eigen::Index b = 0; b < dimension(); ++b) {
    const Scalar amp = v(b);
    if (amp == Scalar(0.0)) continue;
    const Slots& s = slots_[static_cast<std::size_t>(b)];

    // Left actions touch the first slot, right actions the last.
    const bool at_front = !letter.reflected;
    const bool boundary_is_comp =
        !s.empty() && (at_front ? s.front().first : s.back().first) == comp_id;

    if (!boundary_is_comp) {
      // The boundary slot (or vacuum) plays the xi role: scalar part stays,
      // the H° part of op*xi creates a new slot.
      out(b) += op(0, 0) * amp;
      for (int t = 1; t <= m; ++t) {
        const Scalar c = op(t, 0) * amp;
        if (std::abs(c) < 1e-16) continue;
        if (static_cast<int>(s.size()) + 1 > depth_) {
          if (std::abs(c) > 1e-14)
            throw CapExceeded("FreeProductSpace: depth overflow");
          continue;
        }
        Slots ns;
        ns.reserve(s.size() + 1);
        if (at_front) {
          ns.emplace_back(comp_id, t - 1);
          ns.insert(ns.end(), s.begin(), s.end());
        } else {
          ns = s;
          ns.emplace_back(comp_id, t - 1);
        }
        out(index_of(ns)) += c;
      }
    } else {
      const int k = at_front ? s.front().second : s.back().second;
      // Annihilation: the xi component of op*f_k shortens the tensor.
      Slots shorter(at_front ? s.begin() + 1 : s.begin(),
                    at_front ? s.end() : s.end() - 1);
      out(index_of(shorter)) += op(0, k + 1) * amp;
      // Transformation within H°.
      for (int t = 1; t <= m; ++t) {
        const Scalar c = op(t, k + 1) * amp;
        if (std::abs(c) < 1e-16) continue;
        Slots ns = s;
        (at_front ? ns.front() : ns.back()).second = t - 1;
        out(index_of(ns)) += c;
      }
    }
  }
  return out;
}

Scalar FreeProductSpace::tau(const NCPoly& p) const {
  Scalar total(0.0);
  for (const auto& [w, c] : p.terms()) {
    if (static_cast<int>(w.size()) > depth_)
      throw CapExceeded("FreeProductSpace: word longer than depth");
    Eigen::VectorXcd v = vacuum();
    const auto& letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      v = act(*it, v);
    total += c * v(0);
  }
  return total;
}

Scalar oracle_tau(const std::vector<MatrixModel>& models, const NCPoly& p) {
  int depth = 1;
  for (const auto& [w, c] : p.terms())
    depth = std::max(depth, static_cast<int>(w.size()));
  return FreeProductSpace(models, depth).tau(p);
}

}  // namespace bifree
