#include "cah/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace cah {

std::string to_string(CartanType t) {
  switch (t) {
    case CartanType::A1: return "A1";
    case CartanType::A2: return "A2";
    case CartanType::B2: return "B2";
    case CartanType::G2: return "G2";
    case CartanType::A1xA1: return "A1xA1";
  }
  return "?";
}

std::string to_string(LatticeMode m) { return m == LatticeMode::weight ? "weight" : "root"; }

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::LT: return "LT";
    case Comparison::GT: return "GT";
    case Comparison::EQ: return "EQ";
    case Comparison::INCOMPARABLE: return "INCOMPARABLE";
  }
  return "?";
}

CartanType parse_cartan_type(const std::string& s) {
  for (auto t : {CartanType::A1, CartanType::A2, CartanType::B2, CartanType::G2, CartanType::A1xA1})
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown Cartan type '" + s + "'");
}

LatticeMode parse_lattice_mode(const std::string& s) {
  if (s == "weight") return LatticeMode::weight;
  if (s == "root") return LatticeMode::root;
  throw std::invalid_argument("unknown lattice mode '" + s + "'");
}

bool WeightLess::operator()(const Weight& a, const Weight& b) const {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

bool same_weight(const Weight& a, const Weight& b) { return a.size() == b.size() && a == b; }

std::string format_weight(const Weight& w) {
  std::string s;
  for (int i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s;
}

namespace {

IntMatrix cartan_matrix(CartanType t) {
  IntMatrix c;
  switch (t) {
    case CartanType::A1:
      c.resize(1, 1);
      c << 2;
      break;
    case CartanType::A2:
      c.resize(2, 2);
      c << 2, -1, -1, 2;
      break;
    case CartanType::B2:  // α1 long, α2 short
      c.resize(2, 2);
      c << 2, -1, -2, 2;
      break;
    case CartanType::G2:  // α1 short, α2 long
      c.resize(2, 2);
      c << 2, -3, -1, 2;
      break;
    case CartanType::A1xA1:
      c.resize(2, 2);
      c << 2, 0, 0, 2;
      break;
  }
  return c;
}

struct IntMatrixLess {
  bool operator()(const IntMatrix& a, const IntMatrix& b) const {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  }
};

}  // namespace

RootDatum::RootDatum(CartanType type, LatticeMode mode) : type_(type), mode_(mode) {
  cartan_ = cartan_matrix(type);
  rank_ = static_cast<int>(cartan_.rows());
  build_roots();
  build_weyl();
  build_omega();
}

std::string RootDatum::name() const { return to_string(type_) + "/" + to_string(mode_); }

Weight RootDatum::simple_root(int i) const {
  if (mode_ == LatticeMode::weight) return cartan_.col(i);
  Weight e = zero();
  e[i] = 1;
  return e;
}

Weight RootDatum::fundamental_weight(int i) const {
  if (mode_ != LatticeMode::weight)
    throw std::logic_error("fundamental weights are not in the root lattice");
  Weight e = zero();
  e[i] = 1;
  return e;
}

int RootDatum::pairing(const Weight& lambda, int i) const {
  if (mode_ == LatticeMode::weight) return lambda[i];
  return cartan_.row(i).dot(lambda);
}

int RootDatum::pairing_with_coroot(const Weight& lambda, const Weight& coroot) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i) s += coroot[i] * pairing(lambda, i);
  return s;
}

Weight RootDatum::weight_coords(const Weight& lambda) const {
  if (mode_ == LatticeMode::weight) return lambda;
  return cartan_ * lambda;
}

std::optional<Weight> RootDatum::root_coords(const Weight& lambda) const {
  if (mode_ == LatticeMode::root) return lambda;
  // Solve cartan * c = λ with the adjugate; rank ≤ 2.
  const IntMatrix& a = cartan_;
  Weight c = zero();
  if (rank_ == 1) {
    if (lambda[0] % a(0, 0) != 0) return std::nullopt;
    c[0] = lambda[0] / a(0, 0);
    return c;
  }
  int det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  int n0 = a(1, 1) * lambda[0] - a(0, 1) * lambda[1];
  int n1 = -a(1, 0) * lambda[0] + a(0, 0) * lambda[1];
  if (n0 % det != 0 || n1 % det != 0) return std::nullopt;
  c[0] = n0 / det;
  c[1] = n1 / det;
  return c;
}

Weight RootDatum::from_root_coords(const Weight& c) const {
  if (mode_ == LatticeMode::root) return c;
  return cartan_ * c;
}

bool RootDatum::is_dominant(const Weight& lambda) const {
  for (int i = 0; i < rank_; ++i)
    if (pairing(lambda, i) < 0) return false;
  return true;
}

void RootDatum::build_roots() {
  // Generate (root, coroot) pairs in the simple bases by reflecting simple pairs.
  std::vector<std::pair<Weight, Weight>> all;
  std::deque<std::pair<Weight, Weight>> queue;
  auto seen = [&](const Weight& r) {
    return std::any_of(all.begin(), all.end(), [&](const auto& p) { return same_weight(p.first, r); });
  };
  for (int i = 0; i < rank_; ++i) {
    Weight e = zero();
    e[i] = 1;
    all.emplace_back(e, e);
    queue.emplace_back(e, e);
  }
  while (!queue.empty()) {
    auto [r, cr] = queue.front();
    queue.pop_front();
    for (int j = 0; j < rank_; ++j) {
      int rp = cartan_.row(j).dot(r);      // <β, α̌_j>
      int cp = cartan_.col(j).dot(cr);     // <α_j, β̌>
      Weight r2 = r;
      r2[j] -= rp;
      Weight c2 = cr;
      c2[j] -= cp;
      if (!seen(r2)) {
        all.emplace_back(r2, c2);
        queue.emplace_back(r2, c2);
      }
    }
  }
  std::vector<std::pair<Weight, Weight>> pos;
  for (auto& p : all)
    if (p.first.minCoeff() >= 0) pos.push_back(p);
  std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) {
    int ha = a.first.sum(), hb = b.first.sum();
    if (ha != hb) return ha < hb;
    return WeightLess{}(a.first, b.first);
  });
  for (auto& [r, c] : pos) {
    pos_roots_.push_back(r);
    pos_coroots_.push_back(c);
  }
  theta_index_ = 0;
  for (int k = 0; k < static_cast<int>(pos_coroots_.size()); ++k)
    if (pos_coroots_[k].sum() > pos_coroots_[theta_index_].sum()) theta_index_ = k;
  if (type_ == CartanType::A1xA1) {
    // The two components are the simple roots themselves.
    for (int k = 0; k < static_cast<int>(pos_roots_.size()); ++k)
      if (pos_roots_[k].sum() == 1) affine_thetas_.push_back(k);
    theta_index_ = affine_thetas_[0];
  } else {
    affine_thetas_.push_back(theta_index_);
  }
}

Weight RootDatum::highest_root() const { return from_root_coords(pos_roots_[theta_index_]); }

void RootDatum::build_weyl() {
  std::vector<IntMatrix> gens, cogens;
  for (int i = 0; i < rank_; ++i) {
    IntMatrix m(rank_, rank_), cm(rank_, rank_);
    for (int k = 0; k < rank_; ++k) {
      Weight e = zero();
      e[k] = 1;
      m.col(k) = e - pairing(e, i) * simple_root(i);
      Weight ce = zero();
      ce[k] = 1;
      ce[i] -= cartan_(k, i);  // s_i(α̌_k) = α̌_k - <α_i, α̌_k> α̌_i
      cm.col(k) = ce;
    }
    gens.push_back(m);
    cogens.push_back(cm);
  }
  std::map<IntMatrix, int, IntMatrixLess> index;
  IntMatrix id = IntMatrix::Identity(rank_, rank_);
  words_.push_back({});
  mats_.push_back(id);
  comats_.push_back(id);
  index[id] = 0;
  for (std::size_t head = 0; head < words_.size(); ++head) {
    for (int i = 0; i < rank_; ++i) {
      IntMatrix m = mats_[head] * gens[i];
      if (index.count(m)) continue;
      index[m] = static_cast<int>(words_.size());
      auto w = words_[head];
      w.push_back(i);
      words_.push_back(w);
      mats_.push_back(m);
      comats_.push_back(comats_[head] * cogens[i]);
    }
  }
  const int n = static_cast<int>(words_.size());
  mult_.assign(n, std::vector<int>(n));
  inv_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      mult_[a][b] = index.at(mats_[a] * mats_[b]);
      if (mult_[a][b] == 0) inv_[a] = b;
    }
  for (int i = 0; i < rank_; ++i) simple_.push_back(index.at(gens[i]));
  longest_ = 0;
  for (int a = 0; a < n; ++a)
    if (words_[a].size() > words_[longest_].size()) longest_ = a;
}

FiniteWeylElement RootDatum::from_word(const std::vector<int>& word) const {
  FiniteWeylElement w;
  for (int i : word) {
    if (i < 0 || i >= rank_) throw std::out_of_range("simple reflection index out of range");
    w = multiply(w, simple_reflection(i));
  }
  return w;
}

FiniteWeylElement RootDatum::reflection(int k) const {
  // s_β(λ) = λ - <λ, β̌> β; find the table entry with that matrix.
  Weight beta = from_root_coords(pos_roots_[k]);
  IntMatrix m(rank_, rank_);
  for (int c = 0; c < rank_; ++c) {
    Weight e = zero();
    e[c] = 1;
    m.col(c) = e - pairing_with_coroot(e, pos_coroots_[k]) * beta;
  }
  for (int a = 0; a < weyl_order(); ++a)
    if (mats_[a] == m) return {a};
  throw std::logic_error("reflection not found in Weyl group table");
}

Weight RootDatum::act(FiniteWeylElement w, const Weight& lambda) const { return mats_[w.id] * lambda; }

Weight RootDatum::act_on_coroot(FiniteWeylElement w, const Weight& coroot) const {
  return comats_[w.id] * coroot;
}

std::vector<FiniteWeylElement> RootDatum::elements() const {
  std::vector<FiniteWeylElement> out;
  for (int a = 0; a < weyl_order(); ++a) out.push_back({a});
  return out;
}

void RootDatum::build_omega() {
  // Affine pairs (λ, w) multiply as (λ,u)(μ,v) = (λ + uμ, uv).
  struct Aff {
    Weight t;
    FiniteWeylElement w;
  };
  auto mul = [&](const Aff& a, const Aff& b) { return Aff{a.t + act(a.w, b.t), multiply(a.w, b.w)}; };
  auto inv = [&](const Aff& a) {
    FiniteWeylElement wi = inverse(a.w);
    return Aff{Weight(-act(wi, a.t)), wi};
  };
  std::vector<Aff> simples;
  for (int i = 0; i < affine_count(); ++i) {
    if (is_affine_node(i)) {
      int k = affine_theta_index(i);
      simples.push_back({from_root_coords(pos_roots_[k]), reflection(k)});
    } else {
      simples.push_back({zero(), simple_reflection(i - 1)});
    }
  }

  std::vector<Weight> reps{zero()};
  if (mode_ == LatticeMode::weight) {
    for (int mask = 1; mask < (1 << rank_); ++mask) {
      Weight lam = zero();
      for (int i = 0; i < rank_; ++i)
        if (mask & (1 << i)) lam[i] = 1;
      bool minuscule = std::all_of(pos_coroots_.begin(), pos_coroots_.end(),
                                   [&](const Weight& c) { return pairing_with_coroot(lam, c) <= 1; });
      if (minuscule) reps.push_back(lam);
    }
  }
  // Identity first, then ω_1, ω_2, ..., then sums.
  std::sort(reps.begin(), reps.end(), [](const Weight& a, const Weight& b) {
    if (a.sum() != b.sum()) return a.sum() < b.sum();
    return WeightLess{}(b, a);
  });
  for (const Weight& lam : reps) {
    // w_0^λ w_0, where w_0^λ is the longest element fixing λ.
    FiniteWeylElement stab_longest;
    for (int a = 0; a < weyl_order(); ++a)
      if (same_weight(act({a}, lam), lam) && words_[a].size() > words_[stab_longest.id].size())
        stab_longest = {a};
    FiniteWeylElement w = multiply(stab_longest, longest());
    Aff om{lam, w};
    Aff om_inv = inv(om);
    const int n = affine_count();
    std::vector<int> perm(n, -1);
    for (int i = 0; i < n; ++i) {
      Aff conj = mul(mul(om, simples[i]), om_inv);
      for (int j = 0; j < n; ++j)
        if (same_weight(conj.t, simples[j].t) && conj.w == simples[j].w) perm[i] = j;
      if (perm[i] < 0) throw std::logic_error("Ω element does not permute affine simple reflections");
    }
    omega_.push_back({lam, w, perm});
  }
}

int RootDatum::omega_index_of_coset(const Weight& lambda) const {
  for (int k = 0; k < static_cast<int>(omega_.size()); ++k)
    if (root_coords(lambda - omega_[k].translation)) return k;
  throw std::logic_error("weight lies in no Ω coset");
}

DominantRepresentative dominant_representative(const RootDatum& d, const Weight& lambda) {
  // Elements are enumerated in (length, lex word) order, so the first hit wins.
  for (FiniteWeylElement w : d.elements()) {
    Weight mu = d.act(w, lambda);
    if (d.is_dominant(mu)) return {mu, w};
  }
  throw std::logic_error("no dominant representative");
}

Comparison order_on_X(const RootDatum& d, const Weight& lambda, const Weight& nu) {
  if (same_weight(lambda, nu)) return Comparison::EQ;
  Weight lp = dominant_representative(d, lambda).dominant;
  Weight np = dominant_representative(d, nu).dominant;
  if (same_weight(lp, np)) return Comparison::INCOMPARABLE;
  auto diff = d.root_coords(np - lp);
  if (!diff) return Comparison::INCOMPARABLE;
  if (diff->minCoeff() >= 0) return Comparison::LT;
  if (diff->maxCoeff() <= 0) return Comparison::GT;
  return Comparison::INCOMPARABLE;
}

bool total_order_less(const RootDatum& d, const Weight& lambda, const Weight& nu) {
  auto key = [&](const Weight& x) {
    Weight xp = d.weight_coords(dominant_representative(d, x).dominant);
    int height = 0;
    for (const Weight& c : d.positive_coroots()) height += d.pairing_with_coroot(dominant_representative(d, x).dominant, c);
    std::vector<int> k{height};
    for (int i = 0; i < xp.size(); ++i) k.push_back(xp[i]);
    k.push_back(d.omega_index_of_coset(x));
    for (int i = 0; i < x.size(); ++i) k.push_back(x[i]);
    return k;
  };
  return key(lambda) < key(nu);
}

}  // namespace cah
