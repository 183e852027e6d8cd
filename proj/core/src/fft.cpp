#include "hankel_scs/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace hscs::fft {

namespace {

struct PlanCache {
    std::mutex mutex;
    std::map<std::tuple<Index, Index, int>, fftw_plan> plans;

    ~PlanCache()
    {
        for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
    }

    fftw_plan get(Index len, Index howmany, int sign)
    {
        std::lock_guard lock(mutex);
        const auto key = std::make_tuple(len, howmany, sign);
        if (auto it = plans.find(key); it != plans.end()) return it->second;
        const std::size_t total = static_cast<std::size_t>(len * howmany);
        auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
        int n = static_cast<int>(len);
        fftw_plan plan = fftw_plan_many_dft(1, &n, static_cast<int>(howmany), scratch, nullptr, 1,
                                            n, scratch, nullptr, 1, n, sign, FFTW_ESTIMATE);
        fftw_free(scratch);
        if (plan == nullptr) throw NumericalError("fft: plan creation failed");
        plans.emplace(key, plan);
        return plan;
    }
};

PlanCache& cache()
{
    static PlanCache instance;
    return instance;
}

void run(cplx* data, Index len, Index howmany, int sign)
{
    if (len <= 0 || howmany <= 0) return;
    fftw_plan plan = cache().get(len, howmany, sign);
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
    counters().transforms += static_cast<std::uint64_t>(howmany);
}

}  // namespace

Counters& counters()
{
    thread_local Counters c;
    return c;
}

Index transform_length(Index min_len)
{
    Index len = 1;
    while (len < min_len) len <<= 1;
    return len;
}

Buffer::Buffer(std::size_t size) { reserve(size); }

Buffer::Buffer(Buffer&& other) noexcept : data_(other.data_), size_(other.size_)
{
    other.data_ = nullptr;
    other.size_ = 0;
}

Buffer& Buffer::operator=(Buffer&& other) noexcept
{
    if (this != &other) {
        if (data_) fftw_free(data_);
        data_ = other.data_;
        size_ = other.size_;
        other.data_ = nullptr;
        other.size_ = 0;
    }
    return *this;
}

Buffer::~Buffer()
{
    if (data_) fftw_free(data_);
}

void Buffer::reserve(std::size_t size)
{
    if (size <= size_) return;
    if (data_) fftw_free(data_);
    data_ = static_cast<cplx*>(fftw_malloc(sizeof(cplx) * size));
    if (data_ == nullptr) throw std::bad_alloc();
    size_ = size;
}

void forward(cplx* data, Index len, Index howmany) { run(data, len, howmany, FFTW_FORWARD); }

void inverse(cplx* data, Index len, Index howmany) { run(data, len, howmany, FFTW_BACKWARD); }

}  // namespace hscs::fft
