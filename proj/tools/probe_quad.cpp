// Scratch probe: worst-case quadrature error of g_reference under the
// adaptive rule, against a 2^17-point reference. Not installed.
#include <cmath>
#include <cstdio>

#include "eit3d/faddeev.hpp"

using namespace eit3d;

int main() {
    GreenEvalConfig ref_cfg;
    ref_cfg.quad_scale = 0.0;
    ref_cfg.truncate_tail = false;
    ref_cfg.n_quad = 1 << 17;

    for (double scale : {1.0, 2.0}) {
        double worst_abs = 0.0, worst_rel = 0.0, wr = 0, ws = 0;
        for (double r : {2.0, 10.0, 30.0, 60.0, 90.0, 122.0}) {
            for (double s = -0.999; s <= 1.0; s += 0.0421) {
                const double sp = std::sqrt(std::max(0.0, 1.0 - s * s));
                const Vec3 x{sp * r * 0.6, s * r, sp * r * 0.8};  // |x| != r; fix below
                const Vec3 xs = x / norm(x) * r;
                GreenEvalConfig cfg;
                cfg.quad_scale = scale;
                const Complex a = g_reference(xs, cfg);
                const Complex b = g_reference(xs, ref_cfg);
                const double err = std::abs(a - b);
                if (err > worst_abs) { worst_abs = err; wr = r; ws = s; }
                worst_rel = std::max(worst_rel, err / (std::abs(b) + 1e-12));
            }
        }
        std::printf("scale %.1f: worst abs %.3e (r=%.0f s=%.3f) worst rel-ish %.3e\n",
                    scale, worst_abs, wr, ws, worst_rel);
    }
    return 0;
}
