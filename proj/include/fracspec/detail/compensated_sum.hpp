#pragma once

namespace fracspec::detail {

// Neumaier's variant of Kahan summation. Terms are consumed in call order.
template <class Real>
class NeumaierSum {
public:
    void add(Real term)
    {
        const Real t = sum_ + term;
        const Real big = sum_ < Real(0) ? -sum_ : sum_;
        const Real small = term < Real(0) ? -term : term;
        if (big >= small)
            carry_ += (sum_ - t) + term;
        else
            carry_ += (term - t) + sum_;
        sum_ = t;
    }

    [[nodiscard]] Real value() const { return sum_ + carry_; }

private:
    Real sum_ = 0;
    Real carry_ = 0;
};

}  // namespace fracspec::detail
