#ifndef MSST_FFT_HPP
#define MSST_FFT_HPP

#include <Eigen/Core>

#include <complex>

namespace msst {

template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using ComplexPlane = Plane<std::complex<double>>;

// Real-to-half-complex 2D transform pair for one (rows, cols) geometry.
// The half spectrum has rows x (cols/2 + 1) entries. forward() is unnormalized,
// inverse() divides by rows*cols, so inverse(forward(f)) == f.
//
// Plans are created under a global lock (the FFTW planner is not reentrant);
// execution is lock-free, so one instance per thread is safe.
class RealFft2 {
public:
    RealFft2(Eigen::Index rows, Eigen::Index cols);
    ~RealFft2();
    RealFft2(const RealFft2&) = delete;
    RealFft2& operator=(const RealFft2&) = delete;

    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }
    Eigen::Index half_cols() const { return cols_ / 2 + 1; }

    ComplexPlane forward(const Plane<double>& in) const;
    // Takes the spectrum by value: the c2r kernel overwrites its input.
    Plane<double> inverse(ComplexPlane spectrum) const;
    void inverse(ComplexPlane& spectrum_scratch, Plane<double>& out) const;

private:
    Eigen::Index rows_;
    Eigen::Index cols_;
    void* forward_plan_ = nullptr;
    void* inverse_plan_ = nullptr;
};

// Full complex transforms, same normalization convention as RealFft2.
ComplexPlane fft2(const ComplexPlane& in);
ComplexPlane ifft2(const ComplexPlane& in);

}  // namespace msst

#endif  // MSST_FFT_HPP
