#include "phibound/kernels.hpp"

#include "bound_formulas.hpp"

namespace phibound::kernels {
namespace {

template <typename F>
void apply(F&& f, const double* xs, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(xs[i]);
}

}  // namespace

void eval_many_scalar(BoundKind kind, const double* xs, double* out,
                      std::size_t n) {
    using namespace formulas;
    switch (kind) {
        case BoundKind::polya: apply(polya, xs, out, n); return;
        case BoundKind::kouba: apply(kouba, xs, out, n); return;
        case BoundKind::alzer: apply(alzer, xs, out, n); return;
        case BoundKind::abreu: apply(abreu, xs, out, n); return;
        case BoundKind::neumann: apply(neumann, xs, out, n); return;
        case BoundKind::yang: apply(yang, xs, out, n); return;
        case BoundKind::bercu: apply(bercu, xs, out, n); return;
        case BoundKind::eidous: apply(eidous, xs, out, n); return;
        case BoundKind::eidous_star: apply(eidous_star, xs, out, n); return;
    }
}

}  // namespace phibound::kernels
