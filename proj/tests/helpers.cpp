#include "helpers.hpp"

namespace msst::test {

Field strip_dc_and_nyquist(const Field& f) {
    const RealFft2 fft(f.height(), f.width());
    ComplexPlane spectrum = fft.forward(f.values);
    spectrum(0, 0) = 0.0;
    spectrum.row(f.height() / 2).setZero();
    spectrum.col(f.width() / 2).setZero();
    return Field(fft.inverse(std::move(spectrum)), f.dx);
}

}  // namespace msst::test
