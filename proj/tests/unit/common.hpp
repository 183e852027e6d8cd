#pragma once

#include <random>

#include "hankel_scs/types.hpp"
#include "hankel_scs/signal_model.hpp"

namespace testing_util {

inline hscs::CMatrix randn(hscs::Index rows, hscs::Index cols, hscs::Rng& rng)
{
    std::normal_distribution<double> N(0.0, 1.0);
    hscs::CMatrix X(rows, cols);
    for (hscs::Index i = 0; i < X.size(); ++i) {
        const double re = N(rng);
        const double im = N(rng);
        X.data()[i] = {re, im};
    }
    return X;
}

inline hscs::ComplexSignal randv(hscs::Index n, hscs::Rng& rng) { return randn(n, 1, rng); }

}  // namespace testing_util
