#include "vps/transforms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vps/csv.hpp"

namespace vps {

namespace {

void require_fraction(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error(std::string(name) + " must be in [0, 1]");
    }
}

} // namespace

void RhgParams::validate() const {
    const double values[] = {v_ma, v_f, rho_ma, rho_f, v_h, rho_h};
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::domain_error("RhgParams: all parameters must be strictly positive");
        }
    }
    if (!(v_ma > v_f)) {
        throw std::domain_error("RhgParams: matrix velocity must exceed fluid velocity");
    }
}

std::string_view lithology_name(Lithology lith) {
    switch (lith) {
    case Lithology::Chalks: return "chalks";
    case Lithology::Dolomite: return "dolomite";
    case Lithology::Sandstones: return "sandstones";
    case Lithology::TightGasSandstones: return "tight_gas_sandstones";
    case Lithology::Limestone: return "limestone";
    case Lithology::HighPorositySandstones: return "high_porosity_sandstones";
    case Lithology::PoorlyConsolidatedSandstones: return "poorly_consolidated_sandstones";
    }
    throw std::invalid_argument("unknown lithology value");
}

Lithology lithology_from_name(std::string_view name) {
    for (Lithology lith : kAllLithologies) {
        if (lithology_name(lith) == name) return lith;
    }
    throw std::invalid_argument("unknown lithology name: " + std::string(name));
}

PolyLaw::PolyLaw(int degree, double c2, double c1, double c0)
    : c2_(c2), c1_(c1), c0_(c0), degree_(degree) {
    const double leading = degree == 2 ? c2 : c1;
    if (leading == 0.0) {
        throw std::invalid_argument("PolyLaw: leading coefficient must be nonzero");
    }
}

PolyLaw PolyLaw::affine(double c1, double c0) { return PolyLaw(1, 0.0, c1, c0); }

PolyLaw PolyLaw::quadratic(double c2, double c1, double c0) { return PolyLaw(2, c2, c1, c0); }

double PolyLaw::coeff(int power) const {
    switch (power) {
    case 0: return c0_;
    case 1: return c1_;
    case 2: return c2_;
    default: throw std::invalid_argument("PolyLaw::coeff: power must be 0, 1 or 2");
    }
}

std::string_view rho_law_mode_name(RhoLawMode mode) {
    return mode == RhoLawMode::AsPrinted ? "printed" : "corrected";
}

RhoLawMode rho_law_mode_from_name(std::string_view name) {
    if (name == "printed") return RhoLawMode::AsPrinted;
    if (name == "corrected") return RhoLawMode::DolomiteSignCorrected;
    throw std::invalid_argument("unknown rho-law mode: " + std::string(name) +
                                " (expected 'printed' or 'corrected')");
}

namespace {

std::array<LithologyTransform, 7> build_table(RhoLawMode mode) {
    // Dolomite's printed rho slope -0.137 puts densities far below the
    // published 2.27-2.84 range; the corrected table flips it to +0.137.
    const double dolomite_rho_slope =
        mode == RhoLawMode::DolomiteSignCorrected ? 0.137 : -0.137;

    return {{
        {Lithology::Chalks,
         PolyLaw::quadratic(5.059, -8.505, 5.128),
         PolyLaw::affine(-2.933, 2.766),
         PolyLaw::affine(0.373, 1.045),
         {{0.10, 0.75}, {1.43, 2.57}, {1.53, 4.30}, {1.59, 2.51}},
         mode},
        {Lithology::Dolomite,
         PolyLaw::affine(-9.380, 6.606),
         PolyLaw::affine(-4.719, 3.581),
         PolyLaw::affine(dolomite_rho_slope, 1.843),
         {{0.00, 0.32}, {2.27, 2.84}, {3.41, 7.02}, {2.01, 3.64}},
         mode},
        {Lithology::Sandstones,
         PolyLaw::affine(-5.201, 4.944),
         PolyLaw::affine(-3.484, 2.981),
         PolyLaw::affine(0.195, 1.569),
         {{0.04, 0.30}, {2.09, 2.64}, {3.13, 5.52}, {1.73, 3.60}},
         mode},
        {Lithology::TightGasSandstones,
         PolyLaw::affine(-3.836, 4.868),
         PolyLaw::affine(-1.703, 3.149),
         PolyLaw::affine(0.117, 1.96),
         {{0.01, 0.14}, {2.26, 2.67}, {3.81, 5.57}, {2.59, 3.50}},
         mode},
        {Lithology::Limestone,
         PolyLaw::affine(-6.65, 5.624),
         PolyLaw::affine(-3.866, 3.053),
         PolyLaw::affine(0.202, 1.513),
         {{0.03, 0.41}, {2.00, 2.65}, {3.39, 5.79}, {1.67, 3.04}},
         mode},
        {Lithology::HighPorositySandstones,
         PolyLaw::affine(-2.227, 4.303),
         PolyLaw::affine(-1.626, 2.486),
         PolyLaw::affine(0.219, 1.450),
         {{0.02, 0.32}, {2.12, 2.69}, {3.46, 4.79}, {1.95, 2.66}},
         mode},
        {Lithology::PoorlyConsolidatedSandstones,
         PolyLaw::affine(-3.414, 3.774),
         PolyLaw::affine(-2.424, 2.100),
         PolyLaw::affine(0.224, 1.498),
         {{0.22, 0.36}, {2.01, 2.23}, {2.43, 3.14}, {1.21, 1.66}},
         mode},
    }};
}

} // namespace

const std::array<LithologyTransform, 7>& lithology_table(RhoLawMode mode) {
    static const std::array<LithologyTransform, 7> printed = build_table(RhoLawMode::AsPrinted);
    static const std::array<LithologyTransform, 7> corrected =
        build_table(RhoLawMode::DolomiteSignCorrected);
    return mode == RhoLawMode::AsPrinted ? printed : corrected;
}

const LithologyTransform& lithology_transform(Lithology lith, RhoLawMode mode) {
    return lithology_table(mode)[static_cast<std::size_t>(lith)];
}

double rhg_vp_stiff(double phi, const RhgParams& p) {
    require_fraction(phi, "phi");
    const double solid = 1.0 - phi;
    return solid * solid * p.v_ma + phi * p.v_f;
}

double bulk_density(double phi, double s_h, const RhgParams& p) {
    require_fraction(phi, "phi");
    require_fraction(s_h, "s_h");
    return (1.0 - phi) * p.rho_ma + phi * s_h * p.rho_h + phi * (1.0 - s_h) * p.rho_f;
}

double rhg_vp_suspension(double phi, const RhgParams& p) {
    require_fraction(phi, "phi");
    // The porosity limits reduce algebraically to the pure phases; return
    // them directly so the limits are exact.
    if (phi == 0.0) return p.v_ma;
    if (phi == 1.0) return p.v_f;
    const double rho = bulk_density(phi, 0.0, p);
    const double reciprocal = phi / (p.rho_f * p.v_f * p.v_f) +
                              (1.0 - phi) / (p.rho_ma * p.v_ma * p.v_ma);
    return std::sqrt(1.0 / (rho * reciprocal));
}

double rhg_vp(double phi, const RhgParams& p) {
    require_fraction(phi, "phi");
    // Blend weights vanish at 0.37 and 0.47; evaluating those endpoints
    // through the reduced forms keeps the boundary values exact.
    if (phi <= 0.37) return rhg_vp_stiff(phi, p);
    if (phi >= 0.47) return rhg_vp_suspension(phi, p);
    const double v1 = rhg_vp_stiff(phi, p);
    const double v2 = rhg_vp_suspension(phi, p);
    const double reciprocal = (phi - 0.37) / (0.1 * v2) + (0.47 - phi) / (0.1 * v1);
    return 1.0 / reciprocal;
}

double rhg_hydrate_vp(double phi, double s_h, const RhgParams& p) {
    require_fraction(phi, "phi");
    require_fraction(s_h, "s_h");
    // Zero saturation reduces to the plain transform; keep that identity exact.
    if (s_h == 0.0) return rhg_vp(phi, p);
    const double phi_eff = phi * (1.0 - s_h);
    const double solid = 1.0 - phi_eff;
    if (!(solid > 0.0)) {
        throw std::domain_error("rhg_hydrate_vp: effective porosity must be below 1");
    }
    RhgParams composite = p;
    composite.v_ma = (p.v_ma * (1.0 - phi) + p.v_h * phi * s_h) / solid;
    composite.validate();
    return rhg_vp(phi_eff, composite);
}

double lith_vp(const LithologyTransform& t, double phi) {
    require_fraction(phi, "phi");
    return t.vp_law(phi);
}

double lith_vs(const LithologyTransform& t, double phi) {
    require_fraction(phi, "phi");
    return t.vs_law(phi);
}

double lith_rho(const LithologyTransform& t, double vp) {
    if (!(vp > 0.0)) {
        throw std::domain_error("lith_rho: vp must be strictly positive");
    }
    return t.rho_law(vp);
}

bool in_validity(const LithologyTransform& t, double phi) {
    return t.validity.phi.contains(phi);
}

std::vector<CoeffRow> coefficient_table(RhoLawMode mode) {
    std::vector<CoeffRow> rows;
    rows.reserve(21);
    for (const auto& t : lithology_table(mode)) {
        const PolyLaw* laws[] = {&t.vp_law, &t.vs_law, &t.rho_law};
        const std::string_view names[] = {"vp", "vs", "rho"};
        for (int i = 0; i < 3; ++i) {
            rows.push_back({t.lith, names[i], laws[i]->degree(), laws[i]->coeff(2),
                            laws[i]->coeff(1), laws[i]->coeff(0)});
        }
    }
    return rows;
}

std::string coefficient_table_csv(RhoLawMode mode) {
    std::string out = "lithology,law,degree,c2,c1,c0\n";
    for (const auto& row : coefficient_table(mode)) {
        out += std::string(lithology_name(row.lith));
        out += ',';
        out += row.law;
        out += ',';
        out += std::to_string(row.degree);
        out += ',';
        out += format_double(row.c2);
        out += ',';
        out += format_double(row.c1);
        out += ',';
        out += format_double(row.c0);
        out += '\n';
    }
    return out;
}

} // namespace vps
