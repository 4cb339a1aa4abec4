#pragma once

#include <bipolar/algebra/matrix.hpp>
#include <bipolar/algebra/smith.hpp>
#include <bipolar/seifert/seifert.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bipolar::covers {

using algebra::Integer;
using algebra::IntMatrix;
using algebra::IntVector;
using algebra::Rational;
using algebra::RatMatrix;

// Symmetric framing/linking matrix with one label per meridian generator.
struct FramedPresentation {
  IntMatrix P;
  std::vector<std::string> labels;

  FramedPresentation() = default;
  // Empty labels become g1, g2, ... . Throws DomainError unless P is square
  // and symmetric and the label count matches.
  FramedPresentation(IntMatrix p, std::vector<std::string> labels = {});
  std::size_t size() const { return P.rows(); }
  std::size_t label_index(const std::string& name) const;
};

// Coker P in Smith coordinates: element = residues modulo factors().
class FiniteAbelianGroup {
 public:
  // Throws DomainError when det P = 0 (infinite H_1).
  explicit FiniteAbelianGroup(const IntMatrix& p);
  FiniteAbelianGroup(std::vector<Integer> factors);

  const std::vector<Integer>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  Integer order() const;

  IntVector reduce(IntVector x) const;
  IntVector add(const IntVector& a, const IntVector& b) const;
  IntVector scale(const Integer& k, const IntVector& a) const;
  bool is_zero(const IntVector& x) const;
  Integer element_order(const IntVector& x) const;
  // Image of an integer combination of the original generators.
  IntVector image(const IntVector& original) const;
  IntVector generator_image(std::size_t i) const;
  // Original-coordinate vector representing Smith generator k.
  IntVector lift(std::size_t k) const;
  std::size_t original_rank() const { return u_.cols(); }

  // Mixed-radix index of an element in [0, order).
  std::uint64_t index_of(const IntVector& x) const;
  IntVector element_at(std::uint64_t idx) const;
  // Size of the subgroup generated by gens.
  Integer subgroup_order(const std::vector<IntVector>& gens) const;
  // Canonical generators of the subgroup: HNF rows of the generator lattice
  // together with the relations, reduced and without zero rows.
  std::vector<IntVector> canonical_generators(const std::vector<IntVector>& gens) const;

 private:
  std::vector<Integer> factors_;
  std::vector<std::size_t> coords_;  // rows of U that carry the factors
  IntMatrix u_, u_inv_;
};

// Relation "label = sum c_i basis_i" among the labeled generators.
struct LabelRelation {
  std::string label;
  std::vector<std::pair<Integer, std::string>> terms;
  std::string to_string() const;
};

struct LabelBasis {
  std::vector<std::string> basis;
  std::vector<LabelRelation> relations;
};

// Greedy basis by label order, then every other label expressed in it.
LabelBasis derived_relations(const FramedPresentation& fp, const FiniteAbelianGroup& g,
                             std::uint64_t enum_bound = 1000000);

FiniteAbelianGroup homology_from_presentation(const FramedPresentation& fp);

FramedPresentation branched_cover_presentation(const seifert::SeifertMatrix& v, long q);

class LinkingForm {
 public:
  // lambda(m_i, m_j) = -(P^-1)_ij mod 1, moved to Smith generators.
  explicit LinkingForm(const FramedPresentation& fp);
  LinkingForm(FiniteAbelianGroup g, RatMatrix pairing);

  const FiniteAbelianGroup& group() const { return group_; }
  const RatMatrix& pairing() const { return pairing_; }
  // Value in [0, 1).
  Rational operator()(const IntVector& x, const IntVector& y) const;
  LinkingForm negated() const;
  // Names and images of the labeled generators (g1.. for a bare group).
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<IntVector>& label_images() const { return images_; }

 private:
  FiniteAbelianGroup group_;
  RatMatrix pairing_;
  std::vector<std::string> labels_;
  std::vector<IntVector> images_;
};

struct Metabolizer {
  std::vector<IntVector> generators;  // canonical, Smith coordinates
  std::vector<std::uint64_t> elements;  // sorted element indices
  std::string description;              // e.g. "<x1>" or "<5g>"
};

struct MetabolizerSearch {
  std::vector<Metabolizer> found;
  std::string reason;  // set when the order is not a square
};

// Every subgroup G with lambda|GxG = 0 and |G|^2 = |H|. Throws BoundExceeded
// ("enum-bound") when |H| exceeds enum_bound.
MetabolizerSearch metabolizers(const LinkingForm& form, std::uint64_t enum_bound = 1000000);

bool verify_metabolizer(const LinkingForm& form, const Metabolizer& m);

// lk_ambient - a^T P^-1 b.
Rational hoste_linking(const FramedPresentation& fp, const IntVector& a, const IntVector& b,
                       const Rational& lk_ambient);

// Entries k_i k_j (lk_ij - q_i^T P^-1 q_j) with q_i the columns of curves and
// lk_ii the framings. Throws DomainError if some k_i q_i is not in the image
// of P or an entry is not integral.
IntMatrix cobordism_intersection_matrix(const FramedPresentation& fp, const IntMatrix& curves,
                                        const std::vector<Integer>& framings,
                                        const std::vector<Integer>& orders,
                                        const std::optional<RatMatrix>& ambient_lk = std::nullopt);

}  // namespace bipolar::covers
