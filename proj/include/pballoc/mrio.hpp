#pragma once

// Environmentally-extended multi-regional input-output core: technical
// coefficients, the Leontief inverse, embodied flows between regions and the
// production/consumption accounts derived from them.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pballoc/linalg.hpp"
#include "pballoc/units.hpp"

namespace pballoc {

/// Relative tolerance for |x_i - (sum_j Z_ij + sum_r Y_ir)| <= tol * max(1, x_i).
inline constexpr double kBalanceTolerance = 1e-6;
/// Max-norm bound on (I - A) L - I accepted from the solver.
inline constexpr double kLeontiefResidualTolerance = 1e-9;

/// Symmetric industry-by-industry MRIO table. Index i = region * n_sectors + sector.
struct MrioTable {
  std::vector<std::string> regions;
  std::vector<std::string> sectors;
  Matrix z;   ///< nm x nm inter-industry flows
  Matrix y;   ///< nm x n final demand by consuming region (may hold negatives)
  Vector x;   ///< nm gross output

  std::size_t n_regions() const noexcept { return regions.size(); }
  std::size_t n_sectors() const noexcept { return sectors.size(); }
  std::size_t size() const noexcept { return regions.size() * sectors.size(); }
  std::size_t index(std::size_t region, std::size_t sector) const noexcept {
    return region * sectors.size() + sector;
  }
  std::size_t region_of(std::size_t i) const noexcept { return i / sectors.size(); }

  bool operator==(const MrioTable&) const = default;
};

/// Throws Structural for shape problems and InvalidInput for negative or
/// non-finite Z/x entries, non-finite Y entries, or row-balance violations
/// (the message lists the offending rows).
void validate(const MrioTable& table, double balance_tol = kBalanceTolerance);

/// Satellite account for one pressure.
struct ExtensionAccount {
  std::string name;
  std::string unit;
  Vector f;     ///< nm direct pressure by industry
  Vector f_hh;  ///< n direct household pressure by region

  bool operator==(const ExtensionAccount&) const = default;
};

void validate(const ExtensionAccount& ext, const MrioTable& table);

struct FootprintAccounts {
  std::string extension;
  std::string unit;
  Matrix e;            ///< n x n embodied flows, producer region (row) to consumer region (column)
  Vector pba;          ///< production-based, per region
  Vector cba;          ///< consumption-based, per region
  Vector sectoral_pba; ///< nm, equals f
  Vector sectoral_cba; ///< nm, q L diag(Y i) i
};

/// A_ij = Z_ij / x_j; zero-output columns are all zero.
Matrix technical_coefficients(const MrioTable& table);

/// L = (I - A)^{-1} by a direct LU solve.
///
/// A must be non-negative. The economy is accepted as productive when the
/// solve succeeds, L is non-negative and the residual is within
/// kLeontiefResidualTolerance; otherwise NonProductiveEconomy is thrown with
/// the column sums of A that are >= 1.
Matrix leontief_inverse(const Matrix& a);

/// Factorized Leontief model of one table, reused across extensions.
class LeontiefModel {
 public:
  explicit LeontiefModel(const MrioTable& table);

  const MrioTable& table() const noexcept { return table_; }
  const Matrix& coefficients() const noexcept { return a_; }
  /// Total output needed per consuming region, L Y (nm x n).
  const Matrix& output_by_consumer() const noexcept { return ly_; }
  /// Explicit Leontief inverse, computed on first use.
  const Matrix& inverse() const;

  /// q = f / x, zero where x = 0.
  Vector intensities(const ExtensionAccount& ext) const;

  /// Footprints for one extension. When output_unit is given, results are
  /// converted to it; an incompatible unit is a Configuration error.
  FootprintAccounts footprint(const ExtensionAccount& ext,
                              const std::optional<std::string>& output_unit = std::nullopt) const;

 private:
  MrioTable table_;
  Matrix a_;
  std::optional<LuFactorization> lu_;
  Matrix ly_;
  Vector final_demand_;  // Y i_n
  mutable std::optional<Matrix> inverse_;
};

/// Convenience wrapper building a LeontiefModel for a single extension.
FootprintAccounts footprint_accounts(const MrioTable& table, const ExtensionAccount& ext,
                                     const std::optional<std::string>& output_unit = std::nullopt);

/// Elementwise values / population. Zero value gives 0 regardless of
/// population; a zero population with a nonzero value is DegenerateEntity.
Vector per_capita(std::span<const double> values, std::span<const double> population,
                  std::span<const std::string> entity_ids = {});

enum class AverageMode { GlobalPopulationWeighted, CountryMean, SubsetMean };

/// Ratio of each entity's per-capita value to the selected average.
///
/// GlobalPopulationWeighted divides by sum(values)/sum(population);
/// CountryMean by the unweighted mean of per-capita values; SubsetMean by the
/// unweighted mean over `subset` (indices into the entity list).
Vector normalized_comparison(std::span<const double> values, std::span<const double> population,
                             AverageMode mode, std::span<const std::size_t> subset = {});

}  // namespace pballoc
