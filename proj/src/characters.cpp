#include "ratioslab/characters.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ratioslab/errors.hpp"
#include "ratioslab/parallel.hpp"
#include "ratioslab/special.hpp"

namespace ratioslab::characters {

DirichletCharacter::DirichletCharacter(std::shared_ptr<const arith::DlogTable> table,
                                       std::uint32_t j)
    : table_(std::move(table)), j_(j) {
  if (!table_) throw argument_error("DirichletCharacter: null dlog table");
  const std::uint32_t order = table_->q - 1;
  if (j_ >= order)
    throw argument_error("DirichletCharacter: index " + std::to_string(j_) +
                         " out of range for q = " + std::to_string(table_->q));
  roots_.resize(order);
  for (std::uint32_t k = 0; k < order; ++k)
    roots_[k] = special::e_of(static_cast<double>(k) / order);
}

cplx DirichletCharacter::operator()(std::uint64_t n) const {
  const std::uint32_t q = table_->q;
  const std::uint64_t r = n % q;
  if (r == 0) return 0.0;
  const std::uint64_t k = table_->dlog[static_cast<std::size_t>(r)];
  return roots_[static_cast<std::size_t>(k * j_ % (q - 1))];
}

std::vector<DirichletCharacter> all_characters(std::uint32_t q) {
  auto table = std::make_shared<const arith::DlogTable>(arith::dlog_table(q));
  std::vector<DirichletCharacter> out;
  out.reserve(q - 1);
  for (std::uint32_t j = 0; j + 1 < q; ++j) out.emplace_back(table, j);
  return out;
}

cplx gauss_sum(const DirichletCharacter& chi) {
  if (chi.principal())
    throw argument_error("gauss_sum: principal character excluded");
  const std::uint32_t q = chi.q();
  cplx sum = 0.0;
  for (std::uint32_t k = 1; k < q; ++k)
    sum += chi(k) * special::e_of(static_cast<double>(k) / q);
  return sum;
}

FunctionalEquationData functional_equation_data(const DirichletCharacter& chi) {
  FunctionalEquationData fed;
  fed.gauss_sum = gauss_sum(chi);
  fed.parity = chi.parity();
  const cplx i_pow_a = fed.parity == 0 ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
  fed.sign = fed.gauss_sum / (i_pow_a * std::sqrt(static_cast<double>(chi.q())));
  return fed;
}

namespace {

std::vector<FunctionalEquationData> family_fed_impl(std::uint32_t q, bool parallel) {
  const auto chars = all_characters(q);
  std::vector<FunctionalEquationData> out(q - 2);
  if (parallel) {
    parallel::parallel_for(q - 2, [&](std::size_t i) {
      out[i] = functional_equation_data(chars[i + 1]);
    });
  } else {
    for (std::size_t i = 0; i + 2 < q; ++i)
      out[i] = functional_equation_data(chars[i + 1]);
  }
  return out;
}

}  // namespace

std::vector<FunctionalEquationData> family_functional_equation_data(std::uint32_t q) {
  return family_fed_impl(q, true);
}

std::vector<FunctionalEquationData> family_functional_equation_data_serial(
    std::uint32_t q) {
  return family_fed_impl(q, false);
}

cplx family_char_sum(std::uint32_t q, std::uint64_t r) {
  const std::uint64_t rm = r % q;
  if (rm == 0) return 0.0;
  if (rm == 1) return static_cast<double>(q - 2);
  return -1.0;
}

cplx family_char_sum_brute(std::uint32_t q, std::uint64_t r) {
  const auto chars = all_characters(q);
  cplx sum = 0.0;
  for (std::uint32_t j = 1; j + 1 < q; ++j) sum += chars[j](r);
  return sum;
}

}  // namespace ratioslab::characters
