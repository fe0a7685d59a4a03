#include <omp.h>

#include "textevo/kernels.hpp"

namespace textevo::kernels {

namespace {

// Student-t kernel row i; returns its sum over j != i.
double kernel_row(std::span<const double> y, std::size_t n, std::size_t dims, std::size_t i, double* num) {
    const double* yi = y.data() + i * dims;
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) {
            num[j] = 0.0;
            continue;
        }
        const double* yj = y.data() + j * dims;
        double d2 = 0.0;
        for (std::size_t k = 0; k < dims; ++k) {
            const double diff = yi[k] - yj[k];
            d2 += diff * diff;
        }
        num[j] = 1.0 / (1.0 + d2);
        sum += num[j];
    }
    return sum;
}

void gradient_row(std::span<const double> p, std::span<const double> y, std::size_t n, std::size_t dims,
                  double exaggeration, double z, std::size_t i, const double* num, double* g) {
    const double* yi = y.data() + i * dims;
    for (std::size_t k = 0; k < dims; ++k) g[k] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double mult = (exaggeration * p[i * n + j] - num[j] / z) * num[j];
        const double* yj = y.data() + j * dims;
        for (std::size_t k = 0; k < dims; ++k) g[k] += mult * (yi[k] - yj[k]);
    }
    for (std::size_t k = 0; k < dims; ++k) g[k] *= 4.0;
}

}  // namespace

double tsne_gradient_serial(std::span<const double> p, std::span<const double> y, std::size_t n, std::size_t dims,
                            double exaggeration, std::span<double> grad) {
    std::vector<double> num(n * n);
    std::vector<double> row_sum(n);
    for (std::size_t i = 0; i < n; ++i) row_sum[i] = kernel_row(y, n, dims, i, num.data() + i * n);
    double z = 0.0;
    for (double s : row_sum) z += s;
    for (std::size_t i = 0; i < n; ++i) {
        gradient_row(p, y, n, dims, exaggeration, z, i, num.data() + i * n, grad.data() + i * dims);
    }
    return z;
}

double tsne_gradient_omp(std::span<const double> p, std::span<const double> y, std::size_t n, std::size_t dims,
                         double exaggeration, std::span<double> grad) {
    std::vector<double> num(n * n);
    std::vector<double> row_sum(n);
    const auto rows = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
        row_sum[i] = kernel_row(y, n, dims, static_cast<std::size_t>(i), num.data() + i * n);
    }
    // Row sums are reduced serially in index order so Z does not depend on
    // the thread count.
    double z = 0.0;
    for (double s : row_sum) z += s;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        gradient_row(p, y, n, dims, exaggeration, z, ui, num.data() + ui * n, grad.data() + ui * dims);
    }
    return z;
}

}  // namespace textevo::kernels
