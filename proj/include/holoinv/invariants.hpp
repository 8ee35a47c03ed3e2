#pragma once

#include "holoinv/bounds.hpp"
#include "holoinv/domains.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace holoinv {

/// Squeezing function s_D(z).
BoundInterval squeezing_value(const DomainDescriptor& domain, std::span<const Complex> z);

/// Fridman invariant e_D(z) (tanh form).
BoundInterval fridman_value(const DomainDescriptor& domain, std::span<const Complex> z);

/// m_D(z) = s_D(z) / e_D(z), outward-rounded, never above 1.
BoundInterval quotient_bounds(const DomainDescriptor& domain, std::span<const Complex> z);

/// Same, from already computed factor intervals. `balancedConvexAtOrigin` forces m = 1.
BoundInterval quotient_from(const BoundInterval& s, const BoundInterval& e, bool balancedConvexAtOrigin);

/// (sum rho_i^{-2})^{-1/2} for a product of homogeneous balanced convex factors.
double product_constant(std::span<const double> rhos);

struct PolydiskConstants {
    double rho;
    double hConst;     // 0 when degenerate
    bool degenerate;   // n == 1
};

/// rho = n^{-1/2}, hConst = 2 / log((sqrt(n)+1)/(sqrt(n)-1)).
PolydiskConstants polydisk_constants(std::size_t n);

/// Common value of s_D = e_D on a homogeneous descriptor, nullopt otherwise.
std::optional<double> homogeneous_constant(const DomainDescriptor& domain);

/// Kubota's rho(D) = sup_z s_D(z). Exact on homogeneous domains, otherwise the best
/// squeezing lower bound over `samples`.
BoundInterval kubota_rho(const DomainDescriptor& domain, std::span<const Point> samples);

struct NamedConstant {
    std::string name;
    double rho;
};

/// Reads `name rho` lines; `#` starts a comment. Throws ParseError with the line number.
std::vector<NamedConstant> parse_constants(std::istream& in);
std::vector<NamedConstant> load_constants_file(const std::string& path);

} // namespace holoinv
