#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace cah {

enum class CartanType { A1, A2, B2, G2, A1xA1 };
enum class LatticeMode { weight, root };

std::string to_string(CartanType t);
std::string to_string(LatticeMode m);
CartanType parse_cartan_type(const std::string& s);
LatticeMode parse_lattice_mode(const std::string& s);

// Rank is at most 2, so weights and Weyl matrices never allocate.
using Weight = Eigen::Matrix<int, Eigen::Dynamic, 1, 0, 2, 1>;
using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2>;

struct WeightLess {
  bool operator()(const Weight& a, const Weight& b) const;
};
bool same_weight(const Weight& a, const Weight& b);

// Handle into the Weyl group table owned by a RootDatum; id 0 is the identity.
struct FiniteWeylElement {
  int id = 0;
  friend bool operator==(FiniteWeylElement, FiniteWeylElement) = default;
  friend auto operator<=>(FiniteWeylElement, FiniteWeylElement) = default;
};

enum class Comparison { LT, GT, EQ, INCOMPARABLE };
std::string to_string(Comparison c);

// Length-zero element t_λ·w of the extended affine Weyl group, together with
// the permutation it induces on affine simple indices.
struct OmegaElement {
  Weight translation;
  FiniteWeylElement finite;
  std::vector<int> permutation;
};

class RootDatum {
 public:
  RootDatum(CartanType type, LatticeMode mode);

  CartanType type() const { return type_; }
  LatticeMode mode() const { return mode_; }
  int rank() const { return rank_; }
  std::string name() const;

  // a(i, j) = <α_j, α̌_i>.
  const IntMatrix& cartan() const { return cartan_; }
  bool operator==(const RootDatum& o) const { return type_ == o.type_ && mode_ == o.mode_; }

  Weight zero() const { return Weight::Zero(rank_); }
  // Coordinates of α_i in the lattice basis.
  Weight simple_root(int i) const;
  // Only meaningful in weight mode.
  Weight fundamental_weight(int i) const;

  int pairing(const Weight& lambda, int i) const;
  // <λ, β̌> for a coroot given by its coefficients in the simple-coroot basis.
  int pairing_with_coroot(const Weight& lambda, const Weight& coroot) const;
  // (<λ, α̌_i>)_i: coordinates in the fundamental-weight basis.
  Weight weight_coords(const Weight& lambda) const;
  // Coefficients of λ in the simple-root basis, when λ ∈ ZΦ.
  std::optional<Weight> root_coords(const Weight& lambda) const;
  Weight from_root_coords(const Weight& c) const;
  bool is_dominant(const Weight& lambda) const;

  // Positive roots in the simple-root basis; positive_coroots()[k] is the coroot
  // of positive_roots()[k] in the simple-coroot basis.
  const std::vector<Weight>& positive_roots() const { return pos_roots_; }
  const std::vector<Weight>& positive_coroots() const { return pos_coroots_; }
  // Highest short root θ (lattice coords) and its coroot, the highest coroot.
  Weight highest_root() const;
  Weight highest_coroot() const { return pos_coroots_[theta_index_]; }
  int highest_root_index() const { return theta_index_; }

  // Affine simple indices: 0 is α_0, i in 1..n is the finite simple root i-1,
  // and n+k (k ≥ 1) is the affine node of the k-th further irreducible
  // component (only A1xA1 has one).
  int affine_count() const { return rank_ + static_cast<int>(affine_thetas_.size()); }
  bool is_affine_node(int i) const { return i == 0 || i > rank_; }
  // Positive-root index of the highest short root attached to an affine node.
  int affine_theta_index(int i) const { return affine_thetas_[i == 0 ? 0 : i - rank_]; }

  // Finite Weyl group.
  int weyl_order() const { return static_cast<int>(words_.size()); }
  const std::vector<int>& word(FiniteWeylElement w) const { return words_[w.id]; }
  int length(FiniteWeylElement w) const { return static_cast<int>(words_[w.id].size()); }
  // Action on lattice coordinates.
  const IntMatrix& matrix(FiniteWeylElement w) const { return mats_[w.id]; }
  // Action on h in the simple-coroot basis.
  const IntMatrix& coroot_matrix(FiniteWeylElement w) const { return comats_[w.id]; }
  FiniteWeylElement identity() const { return {}; }
  FiniteWeylElement simple_reflection(int i) const { return {simple_[i]}; }
  FiniteWeylElement multiply(FiniteWeylElement a, FiniteWeylElement b) const {
    return {mult_[a.id][b.id]};
  }
  FiniteWeylElement inverse(FiniteWeylElement a) const { return {inv_[a.id]}; }
  FiniteWeylElement from_word(const std::vector<int>& word) const;
  FiniteWeylElement longest() const { return {longest_}; }
  // Reflection in the k-th positive root.
  FiniteWeylElement reflection(int positive_root_index) const;
  Weight act(FiniteWeylElement w, const Weight& lambda) const;
  // Coroot-basis vector moved by w.
  Weight act_on_coroot(FiniteWeylElement w, const Weight& coroot) const;
  // Elements sorted by (length, word): the canonical enumeration order.
  std::vector<FiniteWeylElement> elements() const;

  // Ω = X / ZΦ as length-zero affine elements t_λ·w_0^λ·w_0 (λ minuscule),
  // ordered by (height of λ, reverse lex); index 0 is the identity.
  const std::vector<OmegaElement>& omega() const { return omega_; }
  int omega_index_of_coset(const Weight& lambda) const;

 private:
  void build_roots();
  void build_weyl();
  void build_omega();

  CartanType type_;
  LatticeMode mode_;
  int rank_ = 0;
  IntMatrix cartan_;
  std::vector<Weight> pos_roots_;
  std::vector<Weight> pos_coroots_;
  int theta_index_ = 0;
  std::vector<int> affine_thetas_;
  std::vector<std::vector<int>> words_;
  std::vector<IntMatrix> mats_;
  std::vector<IntMatrix> comats_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
  std::vector<int> simple_;
  int longest_ = 0;
  std::vector<OmegaElement> omega_;
};

// Returns ⟨λ, α̌⟩ for the i-th simple coroot.
inline int pairing(const RootDatum& d, const Weight& lambda, int i) { return d.pairing(lambda, i); }

struct DominantRepresentative {
  Weight dominant;
  FiniteWeylElement element;
};

// w·λ dominant with w of minimal length; ties broken by the lexicographically
// least reduced word.
DominantRepresentative dominant_representative(const RootDatum& d, const Weight& lambda);

// λ ≤ ν iff the dominant representative of ν minus that of λ is a
// non-negative integer combination of simple roots.
Comparison order_on_X(const RootDatum& d, const Weight& lambda, const Weight& nu);

// Total order completing order_on_X: (⟨λ⁺, 2ρ̌⟩, weight coords of λ⁺),
// then Ω-component, then the coordinates of λ.
bool total_order_less(const RootDatum& d, const Weight& lambda, const Weight& nu);

std::string format_weight(const Weight& w);

}  // namespace cah
