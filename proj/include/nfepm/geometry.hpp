#pragma once

#include <string>

namespace nfepm {

class Wave {
public:
    explicit Wave(double lambda, double e_in = 1.0);

    double lambda() const { return lambda_; }
    double k() const { return k_; }
    double e_in() const { return e_in_; }

private:
    double lambda_;
    double k_;
    double e_in_;
};

// Long strip of width l_s split into N = floor(D_r / l_s) square elements
// along y. An unbounded strip (D_r = +inf) is allowed for the closed-form
// limits; it has no elements.
class ArrayGeometry {
public:
    ArrayGeometry(double d_r, double l_s);
    static ArrayGeometry unbounded(double l_s);

    double d_r() const { return d_r_; }
    double l_s() const { return l_s_; }
    int n() const { return n_; }
    bool is_unbounded() const;

    // 1-based element centre.
    double element_y(int index) const;

private:
    double d_r_;
    double l_s_;
    int n_;
};

struct PriorUniform {
    PriorUniform(double h1, double h2);

    double h1() const { return h1_; }
    double h2() const { return h2_; }
    double ht() const { return h2_ - h1_; }

private:
    double h1_;
    double h2_;
};

enum class Region { CaseI, CaseII_PA, CaseII_SC, Unsupported };

struct RegionClass {
    Region region = Region::Unsupported;
    std::string reason;
};

const char* to_string(Region r);

double fraunhofer_distance(const ArrayGeometry& geom, const Wave& wave);
double fresnel_distance(const ArrayGeometry& geom, const Wave& wave);
// Requires D_r >= 4.8 lambda.
double phase_ambiguity_distance(const ArrayGeometry& geom, const Wave& wave);
double spacing_constraint_distance(const ArrayGeometry& geom, const Wave& wave);

RegionClass classify_region(const PriorUniform& prior, const ArrayGeometry& geom, const Wave& wave,
                            int alpha_idx, int beta_idx);

}  // namespace nfepm
