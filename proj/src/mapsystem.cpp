#include "cah/mapsystem.hpp"

#include <algorithm>
#include <stdexcept>

namespace cah {

std::vector<Polynomial::Monomial> monomials_of_degree(const std::vector<int>& vars, int degree) {
  std::vector<Polynomial::Monomial> out;
  if (degree < 0 || degree % 2) return out;
  const int n = degree / 2;
  std::array<int, Polynomial::kVars> e{};
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == vars.size()) {
      e[vars[pos]] = left;
      out.push_back(Polynomial::make_monomial(e));
      e[vars[pos]] = 0;
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[vars[pos]] = k;
      self(self, pos + 1, left - k);
    }
    e[vars[pos]] = 0;
  };
  if (vars.empty()) {
    if (n == 0) out.push_back(0);
    return out;
  }
  rec(rec, 0, n);
  std::sort(out.begin(), out.end());
  return out;
}

int MapSystem::add_map(const std::vector<int>& src_degrees, const std::vector<int>& tgt_degrees, int degree) {
  Layout l;
  l.rows = static_cast<int>(tgt_degrees.size());
  l.cols = static_cast<int>(src_degrees.size());
  l.offset.resize(l.rows * l.cols);
  l.monos.resize(l.rows * l.cols);
  for (int k = 0; k < l.rows; ++k)
    for (int c = 0; c < l.cols; ++c) {
      int e = k * l.cols + c;
      l.offset[e] = unknowns_;
      l.monos[e] = monomials_of_degree(vars_, src_degrees[c] - tgt_degrees[k] + degree);
      unknowns_ += static_cast<int>(l.monos[e].size());
    }
  maps_.push_back(std::move(l));
  dirty_ = true;
  return static_cast<int>(maps_.size()) - 1;
}

void MapSystem::add_term(int family, int handle, const PolyMatrix* left, const PolyMatrix* right, int sign) {
  const Layout& lay = maps_.at(handle);
  if (left && left->cols() != lay.rows) throw std::invalid_argument("left factor has wrong shape");
  if (right && right->rows() != lay.cols) throw std::invalid_argument("right factor has wrong shape");
  const Polynomial one(1);
  // Nonzero pattern of L's columns and R's rows.
  std::vector<std::vector<std::pair<int, const Polynomial*>>> lcol(lay.rows), rrow(lay.cols);
  for (int k = 0; k < lay.rows; ++k) {
    if (!left) {
      lcol[k].emplace_back(k, &one);
      continue;
    }
    for (int a = 0; a < left->rows(); ++a)
      if (!(*left)(a, k).is_zero()) lcol[k].emplace_back(a, &(*left)(a, k));
  }
  for (int c = 0; c < lay.cols; ++c) {
    if (!right) {
      rrow[c].emplace_back(c, &one);
      continue;
    }
    for (int b = 0; b < right->cols(); ++b)
      if (!(*right)(c, b).is_zero()) rrow[c].emplace_back(b, &(*right)(c, b));
  }
  const Rational s(sign);
  for (int k = 0; k < lay.rows; ++k)
    for (int c = 0; c < lay.cols; ++c) {
      const int e = k * lay.cols + c;
      const auto& monos = lay.monos[e];
      if (monos.empty()) continue;
      for (const auto& [a, lp] : lcol[k])
        for (const auto& [b, rp] : rrow[c]) {
          Polynomial coef = (*lp) * (*rp);
          for (const auto& [nu, x] : coef.terms()) {
            Rational sx = s * x;
            for (std::size_t t = 0; t < monos.size(); ++t) {
              Polynomial::Monomial m = Polynomial::multiply(nu, monos[t]);
              std::pair<std::uint64_t, std::uint64_t> key{
                  (static_cast<std::uint64_t>(family) << 40) | (static_cast<std::uint64_t>(a) << 20) |
                      static_cast<std::uint64_t>(b),
                  m};
              auto [it, inserted] = row_index_.emplace(key, static_cast<int>(rows_.size()));
              if (inserted) rows_.emplace_back();
              rows_[it->second].emplace_back(lay.offset[e] + static_cast<int>(t), sx);
            }
          }
        }
    }
  dirty_ = true;
}

const SparseSystem& MapSystem::system() {
  if (!dirty_) return system_;
  system_.cols = unknowns_;
  system_.rows.clear();
  for (auto& r : rows_) {
    std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseVector merged;
    for (const auto& [c, x] : r) {
      if (!merged.empty() && merged.back().first == c) {
        merged.back().second += x;
        if (cah::is_zero(merged.back().second)) merged.pop_back();
      } else {
        merged.emplace_back(c, x);
      }
    }
    r = merged;
    if (!merged.empty()) system_.rows.push_back(std::move(merged));
  }
  dirty_ = false;
  return system_;
}

PolyMatrix MapSystem::realize(int handle, const SparseVector& x) const {
  const Layout& lay = maps_.at(handle);
  PolyMatrix f = poly_zero(lay.rows, lay.cols);
  const int lo = lay.offset.empty() ? 0 : lay.offset.front();
  int hi = lo;
  for (std::size_t e = 0; e < lay.offset.size(); ++e)
    hi = std::max(hi, lay.offset[e] + static_cast<int>(lay.monos[e].size()));
  // Entry lookup by unknown index.
  for (const auto& [col, val] : x) {
    if (col < lo || col >= hi) continue;
    auto it = std::upper_bound(lay.offset.begin(), lay.offset.end(), col);
    int e = static_cast<int>(it - lay.offset.begin()) - 1;
    while (e >= 0 && col - lay.offset[e] >= static_cast<int>(lay.monos[e].size())) --e;
    if (e < 0) continue;
    f(e / lay.cols, e % lay.cols) += Polynomial::term(lay.monos[e][col - lay.offset[e]], val);
  }
  return f;
}

SparseVector MapSystem::coordinates(int handle, const PolyMatrix& f) const {
  const Layout& lay = maps_.at(handle);
  SparseVector out;
  for (int k = 0; k < lay.rows; ++k)
    for (int c = 0; c < lay.cols; ++c) {
      const int e = k * lay.cols + c;
      for (const auto& [m, x] : f(k, c).terms()) {
        auto it = std::lower_bound(lay.monos[e].begin(), lay.monos[e].end(), m);
        if (it == lay.monos[e].end() || *it != m) throw std::invalid_argument("matrix entry outside the layout");
        out.emplace_back(lay.offset[e] + static_cast<int>(it - lay.monos[e].begin()), x);
      }
    }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

}  // namespace cah
