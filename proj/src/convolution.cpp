#include "entwine/convolution.hpp"

#include "entwine/errors.hpp"
#include "entwine/tensor.hpp"

namespace entwine {

ConvolutionMap ConvolutionMap::from_function(Fn f) {
    ConvolutionMap m;
    m.state_ = std::make_shared<State>();
    m.state_->fn = std::move(f);
    return m;
}

ConvolutionMap ConvolutionMap::unit(const CoalgebraSpec& spec) {
    auto sp = std::make_shared<CoalgebraSpec>(spec);
    return from_function(
        [sp](const CBasis& b) { return AlgebraElement::scalar(counit(b, *sp)); });
}

ConvolutionMap ConvolutionMap::multiplicative(const CoalgebraSpec& spec,
                                              const Presentation& target,
                                              std::map<int, AlgebraElement> gen_images,
                                              bool transpose) {
    if (spec.kind() != CoalgebraSpec::MatrixFunction)
        throw EngineError("ConvolutionMap::multiplicative: matrix coalgebras only");
    auto sp = std::make_shared<CoalgebraSpec>(spec);
    auto imgs = std::make_shared<std::map<int, AlgebraElement>>(std::move(gen_images));
    const Presentation* tgt = &target;
    int n = spec.dim();
    ConvolutionMap m = from_function([sp, imgs, tgt, n, transpose](const CBasis& b) {
        AlgebraElement r = AlgebraElement::one();
        for (const Letter& l : b.mono.word()) {
            int g = l.gen;
            if (transpose) {
                int i = g / n, j = g % n;
                g = j * n + i;
            }
            auto it = imgs->find(g);
            if (it == imgs->end()) throw MissingImage("no image for coalgebra generator");
            r = multiply(r, it->second, *tgt);
        }
        return r;
    });
    m.multiplicative_ = true;
    m.mspec_ = sp;
    m.mtarget_ = tgt;
    m.images_ = *imgs;
    m.transposed_ = transpose;
    return m;
}

ConvolutionMap ConvolutionMap::table(std::map<CBasis, AlgebraElement> entries) {
    auto tab = std::make_shared<std::map<CBasis, AlgebraElement>>(std::move(entries));
    return from_function([tab](const CBasis& b) {
        auto it = tab->find(b);
        if (it == tab->end()) throw WindowExceeded("basis index outside the declared table");
        return it->second;
    });
}

AlgebraElement ConvolutionMap::operator()(const CBasis& b) const {
    if (!state_) throw EngineError("ConvolutionMap: empty map");
    {
        std::lock_guard<std::mutex> lk(state_->mu);
        auto it = state_->memo.find(b);
        if (it != state_->memo.end()) return it->second;
    }
    AlgebraElement v = state_->fn(b);
    std::lock_guard<std::mutex> lk(state_->mu);
    state_->memo.emplace(b, v);
    return v;
}

AlgebraElement ConvolutionMap::apply(const CoalgebraElement& c) const {
    AlgebraElement r;
    for (const auto& [b, s] : c.terms()) r += (*this)(b).scaled(s);
    return r;
}

ConvolutionMap ConvolutionMap::antipode_precompose() const {
    if (!multiplicative_) throw NotMultiplicative("map has no multiplicative handle");
    return multiplicative(*mspec_, *mtarget_, images_, !transposed_);
}

ConvolutionMap convolve(const ConvolutionMap& f, const ConvolutionMap& g,
                        const CoalgebraSpec& spec, const Presentation& target) {
    auto sp = std::make_shared<CoalgebraSpec>(spec);
    const Presentation* tgt = &target;
    return ConvolutionMap::from_function([f, g, sp, tgt](const CBasis& b) {
        TensorExpression d = coproduct(b, *sp);
        AlgebraElement r;
        for (const auto& [legs, s] : d.terms()) {
            AlgebraElement a = f(std::get<CBasis>(legs[0]));
            AlgebraElement c = g(std::get<CBasis>(legs[1]));
            r += multiply(a, c, *tgt).scaled(s);
        }
        return r;
    });
}

ConvolutionMap convolution_inverse(const ConvolutionMap& f, const CoalgebraSpec& spec,
                                   const Presentation& target) {
    if (spec.kind() == CoalgebraSpec::MatrixFunction) {
        if (!f.has_multiplicative_handle())
            throw NotMultiplicative("matrix-coalgebra inverse needs a multiplicative handle");
        return f.antipode_precompose();
    }
    // group-like: f*g(c_p) = f(c_p) g(c_p), so invert pointwise
    const Presentation* tgt = &target;
    ConvolutionMap inv = ConvolutionMap::from_function([f, tgt](const CBasis& b) {
        AlgebraElement v = f(b);
        try {
            return invert_unit(v, *tgt);
        } catch (const NotAUnit& e) {
            throw NotInvertible(std::string("value at basis index ") + std::to_string(b.p) +
                                " is not a unit: " + e.what());
        }
    });
    for (const CBasis& b : spec.basis_window(spec.window())) inv(b);  // validate on the window
    return inv;
}

bool maps_equal(const ConvolutionMap& f, const ConvolutionMap& g,
                const std::vector<CBasis>& basis) {
    for (const CBasis& b : basis)
        if (!(f(b) == g(b))) return false;
    return true;
}

}  // namespace entwine
