// Build V for (alpha, beta) = (2, 3), compute its periods, evaluate the
// genus-2 wp functions at a random point and check two reduction identities.

#include "g2ell/g2ell.hpp"

#include <iostream>

using namespace g2ell;

int main()
{
    const CurveV V = curve_v_from_alpha_beta(2.0, 3.0);
    const ReductionContext C(V);
    std::cout << "lambda2 = " << V.lambda2 << ", lambda8 = " << V.lambda8 << "\n";
    std::cout << "tau = [" << C.periods().tau(0, 0) << ", " << C.periods().tau(0, 1) << "; " << C.periods().tau(1, 0)
              << ", " << C.periods().tau(1, 1) << "]\n";

    Sampler R(42);
    const Vec2 u = R.jacobian_point(C.sigma());
    const WpValues w = C.wp(u);
    std::cout << "p11 = " << w.p11 << ", p13 = " << w.p13 << ", p33 = " << w.p33 << "\n";

    // f1 from p_jk against wp of E1 at the push-forward of u
    std::cout << "f1 formula  = " << C.f_formula(1, w) << "\n";
    std::cout << "f1 directly = " << C.f_direct(1, u) << "\n";

    // Jacobi inversion: the two points whose Abel sum is u
    const auto [P, Q] = C.jacobi_inversion(u);
    std::cout << "divisor x = " << P.x << ", " << Q.x << "\n";

    const auto h = humbert_delta4(C.periods().tau);
    if (h) std::cout << "Humbert relation h = (" << h->h[0] << ", " << h->h[1] << ", " << h->h[2] << ", " << h->h[3]
                     << ", " << h->h[4] << ")\n";
    return 0;
}
