#include "rbm/randomizer.hpp"

#include "rbm/error.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <string>

namespace rbm {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t payload_dimension(const Randomizer::Payload& p) {
  return std::visit(Overloaded{[](const SimpleButterfly& b) { return b.dimension(); },
                               [](const NonSimpleButterfly& b) { return b.dimension(); },
                               [](const std::vector<int>& s) { return s.size(); },
                               [](const HaarOrthogonal& q) { return q.dimension(); }},
                    p);
}

bool payload_matches(RandomizerKind kind, const Randomizer::Payload& p) {
  switch (kind) {
    case RandomizerKind::Hbdct: return std::holds_alternative<SimpleButterfly>(p);
    case RandomizerKind::Rbdct: return std::holds_alternative<NonSimpleButterfly>(p);
    case RandomizerKind::Rdct: return std::holds_alternative<std::vector<int>>(p);
    case RandomizerKind::Haar: return std::holds_alternative<HaarOrthogonal>(p);
  }
  return false;
}

}  // namespace

std::string_view to_string(RandomizerKind kind) {
  switch (kind) {
    case RandomizerKind::Hbdct: return "hbdct";
    case RandomizerKind::Rbdct: return "rbdct";
    case RandomizerKind::Rdct: return "rdct";
    case RandomizerKind::Haar: return "haar";
  }
  return "unknown";
}

RandomizerKind parse_randomizer(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "hbdct") return RandomizerKind::Hbdct;
  if (lower == "rbdct") return RandomizerKind::Rbdct;
  if (lower == "rdct") return RandomizerKind::Rdct;
  if (lower == "haar") return RandomizerKind::Haar;
  throw std::invalid_argument("unknown randomizer '" + std::string(name) +
                              "' (expected hbdct, rbdct, rdct or haar)");
}

Randomizer::Randomizer(RandomizerKind kind, int levels, Payload payload)
    : kind_(kind), levels_(levels), payload_(std::move(payload)) {
  if (levels_ < 0) throw std::invalid_argument("level count must be nonnegative");
  if (!payload_matches(kind_, payload_)) {
    throw std::invalid_argument("payload type does not match randomizer kind " +
                                std::string(to_string(kind_)));
  }
  if (payload_dimension(payload_) != dimension()) {
    throw DimensionError("randomizer payload dimension does not match 2^" +
                         std::to_string(levels_));
  }
  if (const auto* signs = std::get_if<std::vector<int>>(&payload_)) {
    for (int s : *signs) {
      if (s != 1 && s != -1) throw std::invalid_argument("RDCT signs must be +-1");
    }
  }
  if (kind_ != RandomizerKind::Haar) dct_ = std::make_shared<const DctPlan>(dimension());
}

Randomizer Randomizer::rdct_with_signs(std::vector<int> signs) {
  if (!std::has_single_bit(signs.size())) {
    throw DimensionError("RDCT sign vector length must be a power of two");
  }
  const int levels = std::countr_zero(signs.size());
  return Randomizer(RandomizerKind::Rdct, levels, std::move(signs));
}

void Randomizer::apply(std::span<double> x, OpCounter* counter) const {
  if (x.size() != dimension()) {
    throw DimensionError("vector length " + std::to_string(x.size()) +
                         " does not match randomizer dimension " + std::to_string(dimension()));
  }
  OpCounter local;
  std::vector<double> y = std::visit(
      Overloaded{[&](const SimpleButterfly& b) { return apply_simple(b, x, local); },
                 [&](const NonSimpleButterfly& b) { return apply_nonsimple(b, x, local); },
                 [&](const std::vector<int>& s) {
                   std::vector<double> out(x.begin(), x.end());
                   for (std::size_t i = 0; i < out.size(); ++i) out[i] *= s[i];
                   local.add(out.size());
                   return out;
                 },
                 [&](const HaarOrthogonal& q) { return apply_haar(q, x, local); }},
      payload_);
  if (dct_) {
    dct_->apply(y, x, &local);
  } else {
    std::copy(y.begin(), y.end(), x.begin());
  }
  if (counter != nullptr) counter->add(local.multiplications);
}

Matrix Randomizer::randomize_columns(const Matrix& a) const {
  if (static_cast<std::size_t>(a.rows()) != dimension()) {
    throw DimensionError("matrix has " + std::to_string(a.rows()) + " rows, randomizer expects " +
                         std::to_string(dimension()));
  }
  Matrix out = a;
  std::visit(Overloaded{[&](const SimpleButterfly& b) { apply_columns(b, out); },
                        [&](const NonSimpleButterfly& b) { apply_columns(b, out); },
                        [&](const std::vector<int>& s) {
                          for (std::size_t i = 0; i < s.size(); ++i) {
                            if (s[i] < 0) out.row(static_cast<Eigen::Index>(i)) *= -1.0;
                          }
                        },
                        [&](const HaarOrthogonal& q) { apply_haar_columns(q, out); }},
             payload_);
  if (dct_) {
    const auto rows = static_cast<std::size_t>(out.rows());
    const auto cols = static_cast<std::int64_t>(out.cols());
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < cols; ++j) {
      std::span<double> col(out.col(j).data(), rows);
      dct_->apply(col, col);
    }
  }
  return out;
}

Matrix Randomizer::materialize(int max_levels) const {
  if (levels_ > max_levels) throw CapacityError("dense materialization level", max_levels, levels_);
  const auto n = static_cast<Eigen::Index>(dimension());
  return randomize_columns(Matrix::Identity(n, n));
}

Randomizer sample_randomizer(RandomizerKind kind, int n, RngState& rng) {
  if (n < 0) throw std::invalid_argument("level count must be nonnegative");
  switch (kind) {
    case RandomizerKind::Hbdct: return Randomizer(kind, n, sample_simple(n, rng));
    case RandomizerKind::Rbdct: return Randomizer(kind, n, sample_nonsimple(n, rng));
    case RandomizerKind::Rdct: {
      std::vector<int> signs(dimension_for_levels(n));
      for (auto& s : signs) s = rademacher(rng);
      return Randomizer(kind, n, std::move(signs));
    }
    case RandomizerKind::Haar: return Randomizer(kind, n, sample_haar(dimension_for_levels(n), rng));
  }
  throw std::invalid_argument("unknown randomizer kind");
}

}  // namespace rbm
