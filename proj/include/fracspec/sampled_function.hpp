#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fracspec/errors.hpp"

namespace fracspec {

/// Samples on the uniform grid t_i = t0 + i dt. Vector-valued data is stored
/// row-major: sample i occupies values[i*dim, (i+1)*dim).
class SampledFunction {
public:
    SampledFunction() = default;

    SampledFunction(double t0, double dt, std::vector<double> values, std::size_t dim = 1)
        : t0_(t0), dt_(dt), dim_(dim), values_(std::move(values))
    {
        if (!(dt_ > 0.0) || !std::isfinite(dt_))
            detail::throw_domain("SampledFunction", "dt must be positive");
        if (dim_ == 0)
            detail::throw_domain("SampledFunction", "dim must be at least 1");
        if (values_.empty() || values_.size() % dim_ != 0)
            detail::throw_domain("SampledFunction", "values must hold a positive multiple of dim entries");
    }

    template <class F>
    static SampledFunction sample(F&& f, double t0, double dt, std::size_t count)
    {
        std::vector<double> v(count);
        for (std::size_t i = 0; i < count; ++i)
            v[i] = f(t0 + static_cast<double>(i) * dt);
        return SampledFunction(t0, dt, std::move(v));
    }

    [[nodiscard]] double t0() const { return t0_; }
    [[nodiscard]] double dt() const { return dt_; }
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] std::size_t size() const { return values_.size() / dim_; }
    [[nodiscard]] double time(std::size_t i) const { return t0_ + static_cast<double>(i) * dt_; }

    [[nodiscard]] double operator()(std::size_t i, std::size_t d = 0) const { return values_[i * dim_ + d]; }
    double& operator()(std::size_t i, std::size_t d = 0) { return values_[i * dim_ + d]; }

    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] std::span<double> values() { return values_; }

    [[nodiscard]] std::vector<double> component(std::size_t d) const
    {
        std::vector<double> out(size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = (*this)(i, d);
        return out;
    }

    void set_component(std::size_t d, std::span<const double> column)
    {
        for (std::size_t i = 0; i < column.size(); ++i)
            (*this)(i, d) = column[i];
    }

    /// Same grid and dimension, zero values.
    [[nodiscard]] SampledFunction zeros_like() const
    {
        return SampledFunction(t0_, dt_, std::vector<double>(values_.size(), 0.0), dim_);
    }

private:
    double t0_ = 0.0;
    double dt_ = 1.0;
    std::size_t dim_ = 1;
    std::vector<double> values_{0.0};
};

}  // namespace fracspec
