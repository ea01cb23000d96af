#pragma once

#include <functional>
#include <memory>
#include <mutex>

#include "entwine/coalgebra.hpp"

namespace entwine {

/// A linear map C -> P given on the basis of C. Group-like maps are
/// finitely described rules over the index p; matrix maps are either
/// multiplicative extensions of generator images or declared linear tables.
/// Evaluation is memoized per basis index.
class ConvolutionMap {
  public:
    using Fn = std::function<AlgebraElement(const CBasis&)>;

    ConvolutionMap() = default;

    static ConvolutionMap from_function(Fn f);
    /// The convolution unit c -> eps(c)*1.
    static ConvolutionMap unit(const CoalgebraSpec& spec);
    /// Multiplicative extension of generator images (matrix coalgebra);
    /// transpose precomposes with the antipode S(a_ij) = a_ji.
    static ConvolutionMap multiplicative(const CoalgebraSpec& spec, const Presentation& target,
                                         std::map<int, AlgebraElement> gen_images,
                                         bool transpose = false);
    /// Declared finite table; lookups outside it throw WindowExceeded.
    static ConvolutionMap table(std::map<CBasis, AlgebraElement> entries);

    AlgebraElement operator()(const CBasis& b) const;
    AlgebraElement apply(const CoalgebraElement& c) const;

    bool has_multiplicative_handle() const { return multiplicative_; }
    /// The transposed-image map (only for multiplicative matrix maps).
    ConvolutionMap antipode_precompose() const;

  private:
    struct State {
        Fn fn;
        std::map<CBasis, AlgebraElement> memo;
        std::mutex mu;
    };
    std::shared_ptr<State> state_;
    bool multiplicative_ = false;
    // kept to build the antipode precomposition
    std::shared_ptr<const CoalgebraSpec> mspec_;
    const Presentation* mtarget_ = nullptr;
    std::map<int, AlgebraElement> images_;
    bool transposed_ = false;
};

/// Convolution product f*g(c) = f(c_(1)) g(c_(2)).
ConvolutionMap convolve(const ConvolutionMap& f, const ConvolutionMap& g,
                        const CoalgebraSpec& spec, const Presentation& target);

/// Convolution inverse. Group-like: pointwise unit inversion (every f(c_p)
/// must be a unit on the checked window). Matrix: precompose with the
/// antipode; requires a multiplicative handle.
ConvolutionMap convolution_inverse(const ConvolutionMap& f, const CoalgebraSpec& spec,
                                   const Presentation& target);

/// Equality on the verification basis set.
bool maps_equal(const ConvolutionMap& f, const ConvolutionMap& g,
                const std::vector<CBasis>& basis);

}  // namespace entwine
