// Projects a point onto the vertical-axis geodesic and onto the axis of
// [[2,1],[1,1]], printing both optimization routes side by side.
#include <cstdio>

#include "teich/projection.hpp"

using namespace teich;

static void show(const char* name, const TeichPoint& sigma, const TeichGeodesic& L) {
    const Characterization ch = characterize_projection(sigma, L);
    std::printf("%s\n", name);
    std::printf("  closest point:   t* = %.12g at distance %.12g\n", ch.minmax.t_star,
                ch.minmax.distance_to_L);
    std::printf("  dual solution:   s  = %.12g with value %.12g (theta = %.12g)\n",
                ch.maxmin.t_tilde_Mm.empty() ? 0.0 : ch.maxmin.t_tilde_Mm.front(),
                ch.maxmin.r_max, ch.maxmin.witness_Mm.theta);
    std::printf("  diam_mM = %.3g   diam_Mm = %.3g   gap = %.3g\n\n", ch.diam_mM, ch.diam_Mm,
                ch.hausdorff_gap);
}

int main() {
    const TeichPoint sigma(1.0, 1.0);

    const TeichGeodesic vertical =
        geodesic_from_qd(TeichPoint(0.0, 1.0), MeasuredFoliation(1.0, 0.0), -2.0, 2.0);
    show("sigma = (1,1) onto the vertical axis segment [-2,2]:", sigma, vertical);

    const Axis golden = axis_of(MappingClass(2, 1, 1, 1));
    std::printf("golden axis: translation length %.12g\n", golden.translation_length);
    show("sigma = (1,1) onto the golden axis:", sigma, golden.line);
    return 0;
}
