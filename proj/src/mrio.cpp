#include "pballoc/mrio.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pballoc/error.hpp"
#include "pballoc/kernels.hpp"

namespace pballoc {

namespace {

std::string dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void check_shape(const MrioTable& t) {
  if (t.regions.empty()) throw Error(ErrorKind::Structural, "MRIO table has no regions");
  if (t.sectors.empty()) throw Error(ErrorKind::Structural, "MRIO table has no sectors");
  const std::size_t nm = t.size();
  if (t.z.rows() != nm || t.z.cols() != nm) {
    throw Error(ErrorKind::Structural,
                "Z is " + dims(t.z) + ", expected " + std::to_string(nm) + "x" + std::to_string(nm));
  }
  if (t.y.rows() != nm || t.y.cols() != t.n_regions()) {
    throw Error(ErrorKind::Structural, "Y is " + dims(t.y) + ", expected " + std::to_string(nm) +
                                           "x" + std::to_string(t.n_regions()));
  }
  if (t.x.size() != nm) {
    throw Error(ErrorKind::Structural,
                "x has " + std::to_string(t.x.size()) + " entries, expected " + std::to_string(nm));
  }
}

std::string label(const MrioTable& t, std::size_t i) {
  return t.regions[t.region_of(i)] + "/" + t.sectors[i % t.n_sectors()];
}

// (I - A) v = 1 with v > 0 certifies spectral radius of A below 1 for A >= 0.
void certify_productive(const LuFactorization& lu) {
  const Vector v = lu.solve(Vector(lu.size(), 1.0));
  for (double vi : v) {
    if (!(vi > 0.0) || !std::isfinite(vi)) {
      throw Error(ErrorKind::NonProductiveEconomy, "(I - A) has no non-negative inverse");
    }
  }
}

Matrix identity_minus(const Matrix& a) {
  Matrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = (i == j ? 1.0 : 0.0) - a(i, j);
  }
  return m;
}

LuFactorization factor_productive(const Matrix& a) {
  try {
    LuFactorization lu(identity_minus(a));
    certify_productive(lu);
    return lu;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonProductiveEconomy) throw;
    const Vector sums = a.column_sums();
    std::ostringstream msg;
    msg << e.message()
        << "; column sums of A >= 1:";
    bool any = false;
    for (std::size_t j = 0; j < sums.size(); ++j) {
      if (sums[j] >= 1.0) {
        msg << " [" << j << "]=" << sums[j];
        any = true;
      }
    }
    if (!any) msg << " none, spectral radius >= 1 through inter-industry cycles";
    throw Error(ErrorKind::NonProductiveEconomy, msg.str());
  }
}

void check_coefficients(const Matrix& a) {
  if (!a.square()) throw Error(ErrorKind::Structural, "coefficient matrix is " + dims(a));
  for (double v : a.data()) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::InvalidInput, "coefficient matrix must be finite and non-negative");
    }
  }
}

}  // namespace

void validate(const MrioTable& table, double balance_tol) {
  check_shape(table);
  const std::size_t nm = table.size();
  for (std::size_t i = 0; i < nm; ++i) {
    if (!std::isfinite(table.x[i]) || table.x[i] < 0.0) {
      throw Error(ErrorKind::InvalidInput, "gross output of " + label(table, i) +
                                               " must be finite and >= 0");
    }
    for (std::size_t j = 0; j < nm; ++j) {
      const double v = table.z(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorKind::InvalidInput, "Z(" + label(table, i) + ", " + label(table, j) +
                                                 ") must be finite and >= 0");
      }
    }
    for (std::size_t r = 0; r < table.n_regions(); ++r) {
      if (!std::isfinite(table.y(i, r))) {
        throw Error(ErrorKind::InvalidInput,
                    "Y(" + label(table, i) + ", " + table.regions[r] + ") is not finite");
      }
    }
  }
  std::vector<std::size_t> unbalanced;
  for (std::size_t i = 0; i < nm; ++i) {
    const double uses = kernels::sum(table.z.row(i)) + kernels::sum(table.y.row(i));
    if (std::fabs(table.x[i] - uses) > balance_tol * std::max(1.0, table.x[i])) {
      unbalanced.push_back(i);
    }
  }
  if (!unbalanced.empty()) {
    std::ostringstream msg;
    msg << "row balance violated beyond " << balance_tol << " at rows:";
    for (std::size_t k = 0; k < unbalanced.size() && k < 20; ++k) {
      msg << ' ' << unbalanced[k] << " (" << label(table, unbalanced[k]) << ")";
    }
    if (unbalanced.size() > 20) msg << " ... (" << unbalanced.size() << " total)";
    throw Error(ErrorKind::InvalidInput, msg.str());
  }
}

void validate(const ExtensionAccount& ext, const MrioTable& table) {
  if (ext.f.size() != table.size()) {
    throw Error(ErrorKind::Structural, "extension '" + ext.name + "' has " +
                                           std::to_string(ext.f.size()) +
                                           " industry values, table has " +
                                           std::to_string(table.size()));
  }
  if (ext.f_hh.size() != table.n_regions()) {
    throw Error(ErrorKind::Structural, "extension '" + ext.name + "' has " +
                                           std::to_string(ext.f_hh.size()) +
                                           " household values, table has " +
                                           std::to_string(table.n_regions()) + " regions");
  }
  for (double v : ext.f) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidInput, "extension '" + ext.name + "' is not finite");
  }
  for (double v : ext.f_hh) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidInput, "extension '" + ext.name + "' is not finite");
  }
}

Matrix technical_coefficients(const MrioTable& table) {
  const std::size_t nm = table.z.rows();
  if (!table.z.square() || table.x.size() != nm) {
    throw Error(ErrorKind::Structural,
                "Z is " + dims(table.z) + " but x has " + std::to_string(table.x.size()) + " entries");
  }
  Matrix a(nm, nm);
  for (std::size_t i = 0; i < nm; ++i) kernels::safe_divide(table.z.row(i), table.x, a.row(i));
  return a;
}

Matrix leontief_inverse(const Matrix& a) {
  check_coefficients(a);
  const std::size_t n = a.rows();
  const LuFactorization lu = factor_productive(a);
  Matrix l = lu.solve(Matrix::identity(n));

  Matrix residual = multiply(identity_minus(a), l);
  for (std::size_t i = 0; i < n; ++i) residual(i, i) -= 1.0;
  const double res = kernels::max_abs(residual.data());
  if (!(res <= kLeontiefResidualTolerance)) {
    throw Error(ErrorKind::NonProductiveEconomy,
                "Leontief residual " + std::to_string(res) + " exceeds tolerance");
  }
  return l;
}

LeontiefModel::LeontiefModel(const MrioTable& table) : table_(table) {
  check_shape(table_);
  a_ = technical_coefficients(table_);
  check_coefficients(a_);
  lu_.emplace(factor_productive(a_));
  ly_ = lu_->solve(table_.y);
  final_demand_ = table_.y.row_sums();
}

const Matrix& LeontiefModel::inverse() const {
  if (!inverse_) inverse_ = leontief_inverse(a_);
  return *inverse_;
}

Vector LeontiefModel::intensities(const ExtensionAccount& ext) const {
  validate(ext, table_);
  Vector q(table_.size());
  kernels::safe_divide(ext.f, table_.x, q);
  return q;
}

FootprintAccounts LeontiefModel::footprint(const ExtensionAccount& ext,
                                           const std::optional<std::string>& output_unit) const {
  double factor = 1.0;
  std::string unit = ext.unit;
  if (output_unit) {
    factor = convert(1.0, parse_unit(ext.unit), parse_unit(*output_unit));
    unit = parse_unit(*output_unit).symbol;
  }

  const Vector q = intensities(ext);
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_.x[i] == 0.0 && ext.f[i] != 0.0) {
      throw Error(ErrorKind::InvalidInput, "extension '" + ext.name + "' has pressure " +
                                               std::to_string(ext.f[i]) +
                                               " on zero-output industry " + label(table_, i));
    }
  }

  const std::size_t n = table_.n_regions();
  const std::size_t m = table_.n_sectors();
  FootprintAccounts out;
  out.extension = ext.name;
  out.unit = unit;
  out.e = Matrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < m; ++s) {
      const std::size_t i = table_.index(r, s);
      if (q[i] != 0.0) kernels::axpy(q[i], ly_.row(i), out.e.row(r));
    }
  }

  out.pba.assign(n, 0.0);
  out.cba.assign(n, 0.0);
  const Vector col = out.e.column_sums();
  for (std::size_t r = 0; r < n; ++r) {
    out.pba[r] = kernels::sum(out.e.row(r)) + ext.f_hh[r];
    out.cba[r] = col[r] + ext.f_hh[r];
  }

  out.sectoral_pba = ext.f;
  const Vector ql = lu_->solve_transposed(q);
  out.sectoral_cba.resize(table_.size());
  for (std::size_t i = 0; i < table_.size(); ++i) out.sectoral_cba[i] = ql[i] * final_demand_[i];

  if (factor != 1.0) {
    kernels::scale(factor, out.e.data());
    kernels::scale(factor, out.pba);
    kernels::scale(factor, out.cba);
    kernels::scale(factor, out.sectoral_pba);
    kernels::scale(factor, out.sectoral_cba);
  }
  return out;
}

FootprintAccounts footprint_accounts(const MrioTable& table, const ExtensionAccount& ext,
                                     const std::optional<std::string>& output_unit) {
  return LeontiefModel(table).footprint(ext, output_unit);
}

Vector per_capita(std::span<const double> values, std::span<const double> population,
                  std::span<const std::string> entity_ids) {
  if (values.size() != population.size()) {
    throw Error(ErrorKind::Structural, "values and population differ in length");
  }
  Vector out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0.0) {
      out[i] = 0.0;
    } else if (!(population[i] > 0.0)) {
      const std::string who = i < entity_ids.size() ? entity_ids[i] : "#" + std::to_string(i);
      throw Error(ErrorKind::DegenerateEntity,
                  "entity " + who + " has value " + std::to_string(values[i]) + " but no population");
    } else {
      out[i] = values[i] / population[i];
    }
  }
  return out;
}

Vector normalized_comparison(std::span<const double> values, std::span<const double> population,
                             AverageMode mode, std::span<const std::size_t> subset) {
  const Vector pc = per_capita(values, population);
  double average = 0.0;
  switch (mode) {
    case AverageMode::GlobalPopulationWeighted:
      average = kernels::sum(values) / kernels::sum(population);
      break;
    case AverageMode::CountryMean:
      if (pc.empty()) throw Error(ErrorKind::Configuration, "no entities to average");
      average = kernels::sum(pc) / static_cast<double>(pc.size());
      break;
    case AverageMode::SubsetMean: {
      if (subset.empty()) throw Error(ErrorKind::Configuration, "empty subset for subset mean");
      Vector picked;
      for (std::size_t idx : subset) {
        if (idx >= pc.size()) throw Error(ErrorKind::Configuration, "subset index out of range");
        picked.push_back(pc[idx]);
      }
      average = kernels::sum(picked) / static_cast<double>(picked.size());
      break;
    }
  }
  if (!(average > 0.0)) {
    throw Error(ErrorKind::DegenerateInput, "average per-capita value is not positive");
  }
  Vector out(pc.size());
  for (std::size_t i = 0; i < pc.size(); ++i) out[i] = pc[i] / average;
  return out;
}

}  // namespace pballoc
