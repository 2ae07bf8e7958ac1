#include "dpp/solver/fieldsplit.hpp"

#include <numeric>
#include <stdexcept>

#include "dpp/linalg/amg.hpp"
#include "dpp/linalg/ilu0.hpp"
#include "dpp/linalg/schur.hpp"

namespace dpp::solver {

namespace {

using linalg::CsrMatrix;
using linalg::LinearOperator;
using linalg::Vector;
using Op = std::unique_ptr<LinearOperator>;

struct Group {
  std::vector<int> index;  // positions in the parent's unknowns
  std::vector<int> sizes;  // field sizes inside the group
};

Group make_group(const std::vector<int>& fields, const std::vector<int>& sizes) {
  std::vector<int> offset(sizes.size() + 1, 0);
  std::partial_sum(sizes.begin(), sizes.end(), offset.begin() + 1);
  Group g;
  for (int f : fields) {
    g.sizes.push_back(sizes[f]);
    for (int i = offset[f]; i < offset[f + 1]; ++i) g.index.push_back(i);
  }
  return g;
}

void gather(std::span<const double> x, const std::vector<int>& idx, Vector& out) {
  out.resize(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = x[idx[i]];
}

void scatter(const Vector& v, const std::vector<int>& idx, std::span<double> y) {
  for (std::size_t i = 0; i < idx.size(); ++i) y[idx[i]] = v[i];
}

class AdditivePc final : public LinearOperator {
 public:
  AdditivePc(int n, std::vector<Group> groups, std::vector<Op> children)
      : n_(n), groups_(std::move(groups)), children_(std::move(children)) {}
  int size() const override { return n_; }
  void apply(std::span<const double> r, std::span<double> z) const override {
    Vector rg, zg;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      gather(r, groups_[g].index, rg);
      zg.resize(rg.size());
      children_[g]->apply(rg, zg);
      scatter(zg, groups_[g].index, z);
    }
  }
  using LinearOperator::apply;

 private:
  int n_;
  std::vector<Group> groups_;
  std::vector<Op> children_;
};

// Full block factorization with approximate inner inverses:
//   y1 = S^{-1} (r1 - A10 A00^{-1} r0),  z0 = A00^{-1} (r0 - A01 y1),  z1 = y1.
class SchurFullPc final : public LinearOperator {
 public:
  SchurFullPc(int n, Group g0, Group g1, Op inv_a, Op inv_s, CsrMatrix a01, CsrMatrix a10)
      : n_(n), g0_(std::move(g0)), g1_(std::move(g1)), inv_a_(std::move(inv_a)), inv_s_(std::move(inv_s)),
        a01_(std::move(a01)), a10_(std::move(a10)) {}
  int size() const override { return n_; }
  void apply(std::span<const double> r, std::span<double> z) const override {
    Vector r0, r1;
    gather(r, g0_.index, r0);
    gather(r, g1_.index, r1);
    Vector y0(r0.size()), y1(r1.size());
    inv_a_->apply(r0, y0);
    a10_.multiply_add(-1.0, y0, r1);
    inv_s_->apply(r1, y1);
    a01_.multiply_add(-1.0, y1, r0);
    inv_a_->apply(r0, y0);
    scatter(y0, g0_.index, z);
    scatter(y1, g1_.index, z);
  }
  using LinearOperator::apply;

 private:
  int n_;
  Group g0_, g1_;
  Op inv_a_, inv_s_;
  CsrMatrix a01_, a10_;
};

}  // namespace

Op build_preconditioner(const CsrMatrix& a, const std::vector<int>& field_sizes, const PcSpec& spec) {
  if (a.rows() != a.cols()) throw std::invalid_argument("preconditioner needs a square matrix");
  if (std::accumulate(field_sizes.begin(), field_sizes.end(), 0) != a.rows())
    throw std::invalid_argument("field sizes do not add up to the matrix size");
  switch (spec.type) {
    case PcType::None: return std::make_unique<linalg::IdentityOperator>(a.rows());
    case PcType::Ilu0: return std::make_unique<linalg::Ilu0>(a);
    case PcType::Amg: return std::make_unique<linalg::AmgPreconditioner>(a);
    case PcType::FieldSplit: break;
  }
  spec.validate(static_cast<int>(field_sizes.size()));
  if (spec.children.size() != spec.groups.size()) throw std::invalid_argument("fieldsplit node without child specs");

  std::vector<Group> groups;
  for (const auto& g : spec.groups) groups.push_back(make_group(g, field_sizes));

  if (spec.split_type == SplitType::Additive) {
    std::vector<Op> children;
    for (std::size_t i = 0; i < groups.size(); ++i)
      children.push_back(build_preconditioner(linalg::extract(a, groups[i].index, groups[i].index), groups[i].sizes,
                                              spec.children[i]));
    return std::make_unique<AdditivePc>(a.rows(), std::move(groups), std::move(children));
  }

  const Group& g0 = groups[0];
  const Group& g1 = groups[1];
  const CsrMatrix a00 = linalg::extract(a, g0.index, g0.index);
  CsrMatrix a01 = linalg::extract(a, g0.index, g1.index);
  CsrMatrix a10 = linalg::extract(a, g1.index, g0.index);
  const CsrMatrix a11 = linalg::extract(a, g1.index, g1.index);
  const CsrMatrix sp = linalg::schur_selfp(a11, a10, linalg::diag_lump(a00), a01);
  Op inv_a = build_preconditioner(a00, g0.sizes, spec.children[0]);
  Op inv_s = build_preconditioner(sp, g1.sizes, spec.children[1]);
  return std::make_unique<SchurFullPc>(a.rows(), g0, g1, std::move(inv_a), std::move(inv_s), std::move(a01),
                                       std::move(a10));
}

namespace {

Op build_method(const BlockSystem& sys, Method m) {
  const MonolithicSystem mono = monolithic_view(sys);
  return build_preconditioner(mono.matrix, {sys.sizes.begin(), sys.sizes.end()}, method_config(m).pc);
}

}  // namespace

Op build_scale_split(const BlockSystem& system) { return build_method(system, Method::ScaleSplit); }
Op build_field_split(const BlockSystem& system) { return build_method(system, Method::FieldSplit); }

}  // namespace dpp::solver
