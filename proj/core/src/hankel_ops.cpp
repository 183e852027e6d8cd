#include "hankel_scs/hankel_ops.hpp"

#include <cmath>

#include "hankel_scs/fft.hpp"

namespace hscs {

namespace {

struct Scratch {
    fft::Buffer signal;
    fft::Buffer columns;
    fft::Buffer other;
};

Scratch& scratch()
{
    thread_local Scratch s;
    return s;
}

// Copies each column of X (conjugated if requested) into consecutive
// zero-padded blocks of length len and transforms them.
void load_columns(const CMatrix& X, bool conjugate, Index len, fft::Buffer& buf)
{
    const Index cols = X.cols();
    buf.reserve(static_cast<std::size_t>(len * cols));
    for (Index c = 0; c < cols; ++c) {
        Eigen::Map<CVector> block(buf.data() + c * len, len);
        block.setZero();
        if (conjugate)
            block.head(X.rows()) = X.col(c).conjugate();
        else
            block.head(X.rows()) = X.col(c);
    }
    fft::forward(buf.data(), len, cols);
}

void load_signal(const ComplexSignal& u, Index len, fft::Buffer& buf)
{
    buf.reserve(static_cast<std::size_t>(len));
    Eigen::Map<CVector> block(buf.data(), len);
    block.setZero();
    block.head(u.size()) = u;
    fft::forward(buf.data(), len, 1);
}

// Returns out[i, c] = sum_j u[i + j] conj(a_c[j]) for i < out_rows, given
// transformed u and transformed columns a_c (overwritten).
CMatrix correlate(const fft::Buffer& u_hat, fft::Buffer& cols_hat, Index len, Index ncols,
                  Index out_rows)
{
    Eigen::Map<const CVector> uh(u_hat.data(), len);
    for (Index c = 0; c < ncols; ++c) {
        Eigen::Map<CVector> block(cols_hat.data() + c * len, len);
        block = uh.cwiseProduct(block.conjugate());
    }
    fft::inverse(cols_hat.data(), len, ncols);
    const double scale = 1.0 / static_cast<double>(len);
    CMatrix out(out_rows, ncols);
    for (Index c = 0; c < ncols; ++c)
        out.col(c) = Eigen::Map<const CVector>(cols_hat.data() + c * len, out_rows) * scale;
    return out;
}

void check_dense_dims(const HankelDims& dims)
{
    require(dims.rows <= kDenseLimit && dims.cols <= kDenseLimit,
            "dense Hankel oracle refuses dimensions above 2048");
}

}  // namespace

HankelDims HankelDims::square(Index n)
{
    require(n >= 1, "Hankel lift: empty signal");
    require(n % 2 == 1, "Hankel lift: square lift needs odd n; zero-pad the signal first");
    return {(n + 1) / 2, (n + 1) / 2};
}

HankelDims HankelDims::balanced(Index n)
{
    require(n >= 1, "Hankel lift: empty signal");
    if (n % 2 == 1) return square(n);
    return {n / 2, n / 2 + 1};
}

RVector skew_weights(const HankelDims& dims)
{
    const Index n = dims.length();
    RVector w(n);
    for (Index a = 0; a < n; ++a)
        w[a] = static_cast<double>(std::min({a + 1, dims.rows, dims.cols, n - a}));
    return w;
}

ComplexSignal apply_D(const ComplexSignal& x, const HankelDims& dims)
{
    require(x.size() == dims.length(), "apply_D: length mismatch");
    return x.cwiseProduct(skew_weights(dims).cwiseSqrt().cast<cplx>());
}

ComplexSignal apply_D_inv(const ComplexSignal& x, const HankelDims& dims)
{
    require(x.size() == dims.length(), "apply_D_inv: length mismatch");
    return x.cwiseQuotient(skew_weights(dims).cwiseSqrt().cast<cplx>());
}

CMatrix lift_dense(const ComplexSignal& x, const HankelDims& dims)
{
    require(x.size() == dims.length(), "lift_dense: length mismatch");
    check_dense_dims(dims);
    CMatrix M(dims.rows, dims.cols);
    for (Index j = 0; j < dims.cols; ++j)
        for (Index i = 0; i < dims.rows; ++i) M(i, j) = x[i + j];
    return M;
}

CMatrix lift_dense(const ComplexSignal& x) { return lift_dense(x, HankelDims::square(x.size())); }

ComplexSignal hankel_adjoint_dense(const CMatrix& M)
{
    check_dense_dims({M.rows(), M.cols()});
    ComplexSignal out = ComplexSignal::Zero(M.rows() + M.cols() - 1);
    for (Index j = 0; j < M.cols(); ++j)
        for (Index i = 0; i < M.rows(); ++i) out[i + j] += M(i, j);
    return out;
}

ComplexSignal p_omega(const ComplexSignal& x, const SamplingMask& mask)
{
    require(x.size() == mask.n(), "p_omega: length mismatch");
    ComplexSignal out = ComplexSignal::Zero(x.size());
    for (Index a : mask.indices()) out[a] += x[a];
    return out;
}

CMatrix hankel_times(const ComplexSignal& u, const HankelDims& dims, const CMatrix& X)
{
    require(u.size() == dims.length(), "hankel_times: signal length mismatch");
    require(X.rows() == dims.cols, "hankel_times: operand rows mismatch");
    if (X.cols() == 0) return CMatrix(dims.rows, 0);
    const Index len = fft::transform_length(dims.length());
    auto& s = scratch();
    load_signal(u, len, s.signal);
    load_columns(X, /*conjugate=*/true, len, s.columns);
    fft::counters().column_passes += static_cast<std::uint64_t>(X.cols());
    return correlate(s.signal, s.columns, len, X.cols(), dims.rows);
}

CMatrix hankel_adjoint_times(const ComplexSignal& u, const HankelDims& dims, const CMatrix& Y)
{
    require(u.size() == dims.length(), "hankel_adjoint_times: signal length mismatch");
    require(Y.rows() == dims.rows, "hankel_adjoint_times: operand rows mismatch");
    if (Y.cols() == 0) return CMatrix(dims.cols, 0);
    const Index len = fft::transform_length(dims.length());
    auto& s = scratch();
    load_signal(u, len, s.signal);
    load_columns(Y, /*conjugate=*/false, len, s.columns);
    fft::counters().column_passes += static_cast<std::uint64_t>(Y.cols());
    return correlate(s.signal, s.columns, len, Y.cols(), dims.cols).conjugate();
}

ComplexSignal gstar_gram(const Factor& Z)
{
    require(Z.rows() >= 1 && Z.cols() >= 1, "gstar_gram: empty factor");
    const HankelDims dims{Z.rows(), Z.rows()};
    const Index n = dims.length();
    const Index len = fft::transform_length(n);
    auto& s = scratch();
    load_columns(Z, false, len, s.columns);
    s.signal.reserve(static_cast<std::size_t>(len));
    Eigen::Map<CVector> acc(s.signal.data(), len);
    acc.setZero();
    for (Index c = 0; c < Z.cols(); ++c) {
        Eigen::Map<const CVector> col(s.columns.data() + c * len, len);
        acc += col.cwiseProduct(col);
    }
    fft::inverse(s.signal.data(), len, 1);
    fft::counters().column_passes += static_cast<std::uint64_t>(Z.cols());
    const RVector w = skew_weights(dims);
    const double scale = 1.0 / static_cast<double>(len);
    return (acc.head(n) * scale).cwiseQuotient(w.cwiseSqrt().cast<cplx>());
}

ComplexSignal gstar_cross(const CMatrix& L, const CMatrix& R)
{
    require(L.cols() == R.cols() && L.cols() >= 1, "gstar_cross: factor ranks differ");
    const HankelDims dims{L.rows(), R.rows()};
    const Index n = dims.length();
    const Index len = fft::transform_length(n);
    auto& s = scratch();
    load_columns(L, false, len, s.columns);
    load_columns(R, true, len, s.other);
    s.signal.reserve(static_cast<std::size_t>(len));
    Eigen::Map<CVector> acc(s.signal.data(), len);
    acc.setZero();
    for (Index c = 0; c < L.cols(); ++c) {
        Eigen::Map<const CVector> a(s.columns.data() + c * len, len);
        Eigen::Map<const CVector> b(s.other.data() + c * len, len);
        acc += a.cwiseProduct(b);
    }
    fft::inverse(s.signal.data(), len, 1);
    fft::counters().column_passes += static_cast<std::uint64_t>(L.cols());
    const RVector w = skew_weights(dims);
    const double scale = 1.0 / static_cast<double>(len);
    return (acc.head(n) * scale).cwiseQuotient(w.cwiseSqrt().cast<cplx>());
}

CMatrix g_apply_times_conj(const ComplexSignal& v, const Factor& Z)
{
    const HankelDims dims{Z.rows(), Z.rows()};
    require(v.size() == dims.length(), "g_apply_times_conj: need v.size() == 2 n_s - 1");
    const ComplexSignal u = apply_D_inv(v, dims);
    // H(u) conj(Z): hankel_times conjugates its operand before transforming,
    // so passing conj(Z) transforms Z itself.
    return hankel_times(u, dims, Z.conjugate());
}

}  // namespace hscs
