#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sicpovm/enumerate.hpp"
#include "sicpovm/frame.hpp"
#include "sicpovm/search.hpp"
#include "sicpovm/types.hpp"
#include "sicpovm/wh_group.hpp"

namespace sicpovm {

inline constexpr int kFiducialFormatVersion = 1;

/// Amplitude vectors further than this from unit norm are rejected on load.
inline constexpr double kLoadNormTolerance = 1e-9;
/// Between this and kLoadNormTolerance the vector is renormalized with a warning.
inline constexpr double kLoadNormWarning = 1e-12;

/// {"d": int, "ops": [[[re,im],...],...], "labels": [[j,k] | "name", ...]}, row-major.
std::string serialize_error_basis(const ErrorBasis& basis);

/// Parses and validates at 1e-10, then moves the identity element to the front.
/// Throws ParseError on malformed input or a count/shape mismatch,
/// RejectedBasisError when validation fails.
ErrorBasis load_error_basis(std::istream& source);
ErrorBasis load_error_basis(const std::filesystem::path& path);

/// Parse only, without validation. Throws ParseError.
ErrorBasis parse_error_basis(std::istream& source);

struct Provenance {
  std::string method;  // "analytic" or "search"
  std::optional<std::uint64_t> seed;
  std::optional<double> objective;
  std::optional<double> sic_deviation;
  std::optional<std::string> timestamp;
};

struct FiducialFile {
  int format_version = kFiducialFormatVersion;
  Fiducial fiducial{Vector::Ones(1)};
  /// Non-null for an inline basis; null means "wh" unless basis_file is set.
  std::shared_ptr<const ErrorBasis> basis;
  /// Written as {"file": path} and resolved relative to the fiducial file on load.
  std::optional<std::string> basis_file;
  Provenance provenance;
  std::vector<std::string> warnings;  // filled on load

  /// Inline or referenced basis, or the Weyl-Heisenberg basis of the file's dimension.
  std::shared_ptr<const ErrorBasis> resolved_basis() const;
};

std::string serialize_fiducial_file(const FiducialFile& file);

/// `base_dir` anchors relative basis file references. Throws ParseError.
FiducialFile parse_fiducial_file(std::istream& source,
                                 const std::filesystem::path& base_dir = {});
FiducialFile read_fiducial_file(const std::filesystem::path& path);

/// {t, n, d, potential, threshold, deviation, max_overlap_error, passed, tol}
/// plus "flag" when one is set.
std::string serialize_certificate(const DesignCertificate& cert);

/// One JSON line: {restart, seed, objective, sic_deviation, iterations, converged}.
std::string serialize_search_record(const SearchResult& result);

std::string serialize_census(const Census& census);

}  // namespace sicpovm
