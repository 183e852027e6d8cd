#include "hankel_scs/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hscs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx standard_complex_normal(Rng& rng)
{
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    const double re = g(rng);
    const double im = g(rng);
    return {re, im};
}

}  // namespace

cplx SpectralModel::pole(Index k) const
{
    const auto i = static_cast<std::size_t>(k);
    return std::exp(cplx(-dampings[i], kTwoPi * freqs[i]));
}

void SpectralModel::validate() const
{
    const auto r = freqs.size();
    require(n >= 1, "model: n must be >= 1");
    require(r >= 1, "model: r must be >= 1");
    require(dampings.size() == r && amps.size() == r, "model: field lengths disagree");
    require(static_cast<Index>(r) <= (n + 1) / 2, "model: r must be <= floor((n+1)/2)");
    for (std::size_t k = 0; k < r; ++k) {
        require(freqs[k] >= 0.0 && freqs[k] < 1.0, "model: frequency outside [0,1)");
        require(dampings[k] >= 0.0, "model: negative damping");
        require(amps[k] != cplx(0.0, 0.0), "model: zero amplitude");
        require(std::isfinite(freqs[k]) && std::isfinite(dampings[k]) &&
                    std::isfinite(amps[k].real()) && std::isfinite(amps[k].imag()),
                "model: non-finite parameter");
    }
    require(min_separation(freqs) > 0.0, "model: frequencies must be pairwise distinct");
}

SamplingMask::SamplingMask(Index n, std::vector<Index> indices, bool with_replacement)
    : n_(n), indices_(std::move(indices)), with_replacement_(with_replacement)
{
    require(n_ >= 1, "mask: n must be >= 1");
    require(!indices_.empty(), "mask: at least one observed index is required");
    for (Index a : indices_) require(a >= 0 && a < n_, "mask: index outside [0, n)");
    if (!with_replacement_) {
        std::vector<Index> sorted = indices_;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                "mask: duplicate index in a without-replacement mask");
    }
}

SamplingMask SamplingMask::full(Index n)
{
    std::vector<Index> idx(static_cast<std::size_t>(n));
    for (Index a = 0; a < n; ++a) idx[static_cast<std::size_t>(a)] = a;
    return SamplingMask(n, std::move(idx), false);
}

RVector SamplingMask::multiplicity() const
{
    RVector w = RVector::Zero(n_);
    for (Index a : indices_) w[a] += 1.0;
    return w;
}

SamplingMask SamplingMask::embedded(Index new_n) const
{
    require(new_n >= n_, "mask: cannot embed into a shorter signal");
    return SamplingMask(new_n, indices_, with_replacement_);
}

double wrap_distance(double f, double g)
{
    const double d = std::abs(f - g);
    return std::min(d, 1.0 - d);
}

double min_separation(const std::vector<double>& freqs)
{
    double best = 1.0;
    for (std::size_t j = 0; j < freqs.size(); ++j)
        for (std::size_t k = j + 1; k < freqs.size(); ++k)
            best = std::min(best, wrap_distance(freqs[j], freqs[k]));
    return best;
}

ComplexSignal synthesize(const SpectralModel& model)
{
    model.validate();
    ComplexSignal x = ComplexSignal::Zero(model.n);
    for (Index k = 0; k < model.rank(); ++k) {
        const auto ks = static_cast<std::size_t>(k);
        for (Index t = 0; t < model.n; ++t) {
            const double td = static_cast<double>(t);
            x[t] += model.amps[ks] * std::exp(cplx(-model.dampings[ks] * td,
                                                   kTwoPi * model.freqs[ks] * td));
        }
    }
    return x;
}

SpectralModel random_model(Index n, Index r, const ModelOptions& opts, Rng& rng)
{
    require(r >= 1, "random_model: r must be >= 1");
    require(n >= 2 * r - 1, "random_model: need n >= 2r - 1");
    if (opts.min_sep) {
        require(*opts.min_sep >= 0.0, "random_model: min_sep must be nonnegative");
        require(static_cast<double>(r) * *opts.min_sep < 1.0,
                "random_model: r * min_sep must be < 1");
    }
    if (opts.damped)
        require(opts.damping_lo >= 0.0 && opts.damping_hi >= opts.damping_lo,
                "random_model: invalid damping range");

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SpectralModel model;
    model.n = n;

    // Frequencies are drawn one at a time; a candidate closer than min_sep to
    // an accepted frequency is redrawn. The total number of draws is capped.
    int attempts = 0;
    while (static_cast<Index>(model.freqs.size()) < r) {
        if (++attempts > opts.max_attempts) {
            std::ostringstream msg;
            msg << "random_model: could not place " << r
                << " frequencies with wrap-around separation >= " << opts.min_sep.value_or(0.0) << " after "
                << opts.max_attempts << " attempts";
            throw NumericalError(msg.str());
        }
        const double f = unit(rng);
        bool ok = true;
        for (double g : model.freqs) {
            const double d = wrap_distance(f, g);
            if (d == 0.0 || (opts.min_sep && d < *opts.min_sep)) {
                ok = false;
                break;
            }
        }
        if (ok) model.freqs.push_back(f);
    }

    for (Index k = 0; k < r; ++k) {
        const double c = unit(rng);
        const double phi = kTwoPi * unit(rng);
        const double mag = 1.0 + std::pow(10.0, 0.5 * c);
        model.amps.push_back(mag * std::exp(cplx(0.0, -phi)));
    }
    for (Index k = 0; k < r; ++k) {
        if (opts.damped)
            model.dampings.push_back(opts.damping_lo +
                                     (opts.damping_hi - opts.damping_lo) * unit(rng));
        else
            model.dampings.push_back(0.0);
    }
    return model;
}

SamplingMask uniform_mask(Index n, Index m, bool with_replacement, Rng& rng)
{
    require(n >= 1, "uniform_mask: n must be >= 1");
    require(m >= 1, "uniform_mask: m must be >= 1");
    std::vector<Index> idx;
    idx.reserve(static_cast<std::size_t>(m));
    if (with_replacement) {
        std::uniform_int_distribution<Index> pick(0, n - 1);
        for (Index j = 0; j < m; ++j) idx.push_back(pick(rng));
        std::sort(idx.begin(), idx.end());
    } else {
        require(m <= n, "uniform_mask: m > n is impossible without replacement");
        // Partial Fisher-Yates.
        std::vector<Index> all(static_cast<std::size_t>(n));
        for (Index a = 0; a < n; ++a) all[static_cast<std::size_t>(a)] = a;
        for (Index j = 0; j < m; ++j) {
            std::uniform_int_distribution<Index> pick(j, n - 1);
            std::swap(all[static_cast<std::size_t>(j)],
                      all[static_cast<std::size_t>(pick(rng))]);
        }
        idx.assign(all.begin(), all.begin() + m);
        std::sort(idx.begin(), idx.end());
    }
    return SamplingMask(n, std::move(idx), with_replacement);
}

ComplexSignal observe(const ComplexSignal& signal, const SamplingMask& mask, double sigma_e,
                      Rng& rng)
{
    require(signal.size() == mask.n(), "observe: signal and mask lengths differ");
    require(sigma_e >= 0.0, "observe: sigma_e must be nonnegative");

    ComplexSignal out = ComplexSignal::Zero(signal.size());
    std::vector<char> seen(static_cast<std::size_t>(signal.size()), 0);
    std::vector<Index> positions;
    for (Index a : mask.indices()) {
        if (!seen[static_cast<std::size_t>(a)]) {
            seen[static_cast<std::size_t>(a)] = 1;
            positions.push_back(a);
        }
    }
    for (Index a : positions) out[a] = signal[a];
    if (sigma_e == 0.0) return out;

    CVector w(static_cast<Index>(positions.size()));
    for (Index j = 0; j < w.size(); ++j) w[j] = standard_complex_normal(rng);
    const double scale = sigma_e * out.norm() / w.norm();
    for (Index j = 0; j < w.size(); ++j) out[positions[static_cast<std::size_t>(j)]] += scale * w[j];
    return out;
}

CMatrix vandermonde(const SpectralModel& model, Index rows)
{
    require(rows >= 1, "vandermonde: rows must be >= 1");
    CMatrix E(rows, model.rank());
    for (Index k = 0; k < model.rank(); ++k) {
        const auto ks = static_cast<std::size_t>(k);
        for (Index t = 0; t < rows; ++t) {
            const double td = static_cast<double>(t);
            E(t, k) = std::exp(cplx(-model.dampings[ks] * td, kTwoPi * model.freqs[ks] * td));
        }
    }
    return E;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b)
{
    auto splitmix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return splitmix(splitmix(a) ^ (b + 0x632be59bd9b4e019ULL + (a << 6) + (a >> 2)));
}

}  // namespace hscs
