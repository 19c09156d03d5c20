#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace vps {

// Parameters of the three-branch velocity-porosity transform.
// Velocities in m/s, densities in g/cm3. The hydrate members (v_h, rho_h)
// describe the solid filling pore space when hydrate saturation is nonzero.
struct RhgParams {
    double v_ma = 0.0;   // matrix P-velocity
    double v_f = 0.0;    // pore-fluid P-velocity
    double rho_ma = 0.0; // matrix density
    double rho_f = 0.0;  // fluid density
    double v_h = 0.0;    // hydrate P-velocity
    double rho_h = 0.0;  // hydrate density

    // Throws std::domain_error unless all six values are strictly positive
    // and v_ma > v_f.
    void validate() const;
};

// The seven lithologies with published velocity-porosity-density relations.
// Order is fixed and meaningful: generated corpora and test logs emit blocks
// in this order.
enum class Lithology {
    Chalks,
    Dolomite,
    Sandstones,
    TightGasSandstones,
    Limestone,
    HighPorositySandstones,
    PoorlyConsolidatedSandstones,
};

inline constexpr std::array<Lithology, 7> kAllLithologies = {
    Lithology::Chalks,
    Lithology::Dolomite,
    Lithology::Sandstones,
    Lithology::TightGasSandstones,
    Lithology::Limestone,
    Lithology::HighPorositySandstones,
    Lithology::PoorlyConsolidatedSandstones,
};

std::string_view lithology_name(Lithology lith);
Lithology lithology_from_name(std::string_view name); // throws std::invalid_argument

// Polynomial of degree 1 or 2 mapping scalar to scalar, coefficients stored
// highest degree first. Leading coefficient must be nonzero.
class PolyLaw {
public:
    static PolyLaw affine(double c1, double c0);
    static PolyLaw quadratic(double c2, double c1, double c0);

    double operator()(double x) const {
        return degree_ == 2 ? (c2_ * x + c1_) * x + c0_ : c1_ * x + c0_;
    }

    int degree() const { return degree_; }
    // Coefficient of x^power, power in [0, 2]; zero above the degree.
    double coeff(int power) const;

private:
    PolyLaw(int degree, double c2, double c1, double c0);

    double c2_ = 0.0;
    double c1_ = 0.0;
    double c0_ = 0.0;
    int degree_ = 1;
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return v >= lo && v <= hi; }
    double width() const { return hi - lo; }
};

// Published applicability ranges of one lithology's empirical laws.
// phi is a fraction; rho in g/cm3; vp/vs in km/s.
struct ValidityBox {
    Range phi;
    Range rho;
    Range vp;
    Range vs;
};

// The dolomite density law as printed has a negative slope that contradicts
// the published density range; DolomiteSignCorrected flips that one sign and
// is the default everywhere. AsPrinted is retained for auditing.
enum class RhoLawMode { AsPrinted, DolomiteSignCorrected };

std::string_view rho_law_mode_name(RhoLawMode mode);
RhoLawMode rho_law_mode_from_name(std::string_view name); // throws std::invalid_argument

// One lithology's empirical laws: phi -> Vp (km/s), phi -> Vs (km/s),
// Vp -> rho (g/cm3), plus the validity envelope.
struct LithologyTransform {
    Lithology lith;
    PolyLaw vp_law;
    PolyLaw vs_law;
    PolyLaw rho_law;
    ValidityBox validity;
    RhoLawMode rho_law_mode;
};

// Immutable built-in tables; safe for unrestricted concurrent use.
const std::array<LithologyTransform, 7>&
lithology_table(RhoLawMode mode = RhoLawMode::DolomiteSignCorrected);

const LithologyTransform&
lithology_transform(Lithology lith, RhoLawMode mode = RhoLawMode::DolomiteSignCorrected);

// --- velocity-porosity transform, m/s ---------------------------------
//
// Three branches over porosity: a stiff-rock branch below 0.37, a suspension
// (fluid-supported) branch above 0.47, and a harmonic blend of the two on
// [0.37, 0.47]. The blend weights vanish at the interval ends, so the
// dispatch below evaluates the closed-interval endpoints through the reduced
// branch forms; the function is continuous across both knees.

// Stiff branch: (1 - phi)^2 * v_ma + phi * v_f.
double rhg_vp_stiff(double phi, const RhgParams& p);

// Mass-balance mixture density: (1-phi)*rho_ma + phi*s_h*rho_h + phi*(1-s_h)*rho_f.
double bulk_density(double phi, double s_h, const RhgParams& p);

// Suspension branch: solves 1/(rho vp^2) = phi/(rho_f v_f^2) + (1-phi)/(rho_ma v_ma^2)
// with rho = bulk_density(phi, 0, p).
double rhg_vp_suspension(double phi, const RhgParams& p);

// Piecewise dispatch over the three branches.
double rhg_vp(double phi, const RhgParams& p);

// Hydrate-bearing variant: hydrate is treated as load-bearing matrix.
// Effective porosity phi_eff = phi * (1 - s_h); the matrix velocity becomes
// the volume-weighted (v_ma*(1-phi) + v_h*phi*s_h) / (1 - phi_eff), and the
// plain transform is evaluated at phi_eff. s_h = 0 reduces exactly to
// rhg_vp(phi, p).
double rhg_hydrate_vp(double phi, double s_h, const RhgParams& p);

// --- lithology laws, km/s and g/cm3 ------------------------------------

double lith_vp(const LithologyTransform& t, double phi);
double lith_vs(const LithologyTransform& t, double phi);
double lith_rho(const LithologyTransform& t, double vp);

// True iff phi lies within the transform's published phi range (inclusive).
// Evaluation outside the range is allowed; this is the advisory flag.
bool in_validity(const LithologyTransform& t, double phi);

// --- coefficient audit --------------------------------------------------

struct CoeffRow {
    Lithology lith;
    std::string_view law; // "vp", "vs" or "rho"
    int degree;
    double c2;
    double c1;
    double c0;
};

// All 21 laws in table order, three rows per lithology.
std::vector<CoeffRow> coefficient_table(RhoLawMode mode);

// CSV re-emission of the built-in table: lithology,law,degree,c2,c1,c0.
std::string coefficient_table_csv(RhoLawMode mode);

} // namespace vps
