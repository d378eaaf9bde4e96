#include "deloc/heat_trace.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace deloc::heat {

namespace {

int thread_budget() {
    if (const char* env = std::getenv("DELOC_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Evaluate fn(i) for i in [0, n) on the thread budget; results land in a
// preallocated vector so the caller reduces in a fixed order. The first
// worker exception is rethrown on the calling thread.
template <class Fn>
void parallel_for(long n, Fn&& fn) {
    int workers = static_cast<int>(std::min<long>(thread_budget(), n));
    if (workers <= 1 || n < 16) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([w, workers, n, &fn, &first_error, &error_mutex]() {
            try {
                for (long i = w; i < n; i += workers) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

LaurentEntry laurent_mul(const LaurentEntry& a, const LaurentEntry& b) {
    std::map<std::vector<long long>, Complex> acc;
    for (const auto& ta : a)
        for (const auto& tb : b) {
            std::vector<long long> e = ta.exponents;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += tb.exponents[i];
            acc[e] += ta.coeff * tb.coeff;
        }
    LaurentEntry out;
    for (auto& [e, c] : acc)
        if (std::abs(c) > 0.0) out.push_back({e, c});
    return out;
}

double entry_scale(const LaurentEntry& e) {
    double s = 0.0;
    for (const auto& t : e) s += std::abs(t.coeff);
    return s;
}

}  // namespace

LaurentComplex make_laurent_complex(int rank, std::vector<int> dims,
                                    std::vector<LaurentMatrix> differentials) {
    if (rank < 1) throw SchemaError("cover rank must be >= 1");
    if (dims.empty()) throw SchemaError("complex needs at least one degree");
    for (int d : dims)
        if (d < 0) throw SchemaError("cochain dimensions must be nonnegative");
    if (differentials.size() + 1 != dims.size())
        throw SchemaError("expected one differential per consecutive degree pair");

    for (std::size_t p = 0; p < differentials.size(); ++p) {
        const LaurentMatrix& m = differentials[p];
        if (m.rows != dims[p] || m.cols != dims[p + 1])
            throw SchemaError("differential " + std::to_string(p) +
                              " has shape " + std::to_string(m.rows) + "x" +
                              std::to_string(m.cols) + ", expected " +
                              std::to_string(dims[p]) + "x" +
                              std::to_string(dims[p + 1]));
        if (static_cast<int>(m.entries.size()) != m.rows * m.cols)
            throw SchemaError("differential " + std::to_string(p) +
                              " entry list does not match its shape");
        for (const auto& entry : m.entries)
            for (const auto& term : entry)
                if (static_cast<int>(term.exponents.size()) != rank)
                    throw SchemaError("Laurent exponent vector length must equal the rank");
    }

    // d o d = 0 as group-ring matrices.
    for (std::size_t p = 0; p + 1 < differentials.size(); ++p) {
        const LaurentMatrix& a = differentials[p];
        const LaurentMatrix& b = differentials[p + 1];
        double scale = 0.0;
        for (const auto& e : a.entries) scale += entry_scale(e);
        for (const auto& e : b.entries) scale += entry_scale(e);
        for (int r = 0; r < a.rows; ++r)
            for (int c = 0; c < b.cols; ++c) {
                std::map<std::vector<long long>, Complex> acc;
                for (int k = 0; k < a.cols; ++k) {
                    LaurentEntry prod = laurent_mul(a.at(r, k), b.at(k, c));
                    for (const auto& t : prod) acc[t.exponents] += t.coeff;
                }
                for (const auto& [e, coeff] : acc)
                    if (std::abs(coeff) > 1e-12 * std::max(1.0, scale))
                        throw SchemaError("d o d != 0 at degrees " + std::to_string(p) +
                                          "->" + std::to_string(p + 2));
            }
    }

    LaurentComplex x;
    x.rank = rank;
    x.dims = std::move(dims);
    x.differentials = std::move(differentials);
    return x;
}

Eigen::MatrixXcd evaluate_matrix(const LaurentMatrix& m,
                                 const std::vector<double>& theta, int rank) {
    if (static_cast<int>(theta.size()) != rank)
        throw SchemaError("theta must have one angle per cover generator");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) {
            Complex v{0.0, 0.0};
            for (const auto& term : m.at(r, c)) {
                double phase = 0.0;
                for (int a = 0; a < rank; ++a) phase += term.exponents[a] * theta[a];
                v += term.coeff * std::exp(Complex(0.0, phase));
            }
            out(r, c) = v;
        }
    return out;
}

Eigen::MatrixXcd twisted_laplacian(const LaurentComplex& x, int p,
                                   const std::vector<double>& theta) {
    if (p < 0 || p > x.top_degree())
        throw std::domain_error("degree outside the complex");
    const int dim = x.dims[p];
    Eigen::MatrixXcd lap = Eigen::MatrixXcd::Zero(dim, dim);
    if (p < x.top_degree()) {
        // Coefficient tables have the source on the row, so the map
        // C^p -> C^{p+1} acts on coordinate columns as the transpose.
        Eigen::MatrixXcd d = evaluate_matrix(x.differentials[p], theta, x.rank)
                                 .transpose();
        lap += d.adjoint() * d;
    }
    if (p > 0) {
        Eigen::MatrixXcd d = evaluate_matrix(x.differentials[p - 1], theta, x.rank)
                                 .transpose();
        lap += d * d.adjoint();
    }
    double scale = std::max(1.0, lap.cwiseAbs().maxCoeff());
    if ((lap - lap.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw InternalError("twisted Laplacian failed the Hermitian check");
    return lap;
}

namespace {

Complex torus_fourier_sum(const LaurentComplex& x, int p,
                          const std::vector<long long>& m, double t, long n) {
    const int rank = x.rank;
    long total = 1;
    for (int a = 0; a < rank; ++a) total *= n;

    std::vector<Complex> contrib(total);
    parallel_for(total, [&](long flat) {
        std::vector<double> theta(rank);
        long rest = flat;
        for (int a = 0; a < rank; ++a) {
            theta[a] = 2.0 * kPi * static_cast<double>(rest % n) / n;
            rest /= n;
        }
        Eigen::MatrixXcd lap = twisted_laplacian(x, p, theta);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(lap,
                                                           Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw InternalError("eigensolver failed on the twisted Laplacian");
        double scale = std::max(1.0, lap.cwiseAbs().maxCoeff());
        double trace = 0.0;
        for (int i = 0; i < lap.rows(); ++i) {
            double lambda = es.eigenvalues()(i);
            if (lambda < -1e-8 * scale)
                throw InternalError("twisted Laplacian has a negative eigenvalue");
            trace += std::exp(-t * std::max(lambda, 0.0));
        }
        double phase = 0.0;
        for (int a = 0; a < rank; ++a)
            phase -= static_cast<double>(m[a]) * theta[a];
        contrib[flat] = std::exp(Complex(0.0, phase)) * trace;
    });

    Complex acc{0.0, 0.0};
    for (const Complex& c : contrib) acc += c;  // fixed order reduction
    return acc / static_cast<double>(total);
}

}  // namespace

HeatTraceResult delocalized_heat_trace(const LaurentComplex& x, int p,
                                       const std::vector<long long>& m, double t,
                                       long grid) {
    if (p < 0 || p > x.top_degree())
        throw std::domain_error("degree outside the complex");
    if (static_cast<int>(m.size()) != x.rank)
        throw SchemaError("class vector length must equal the cover rank");
    if (!(t > 0.0)) throw std::domain_error("diffusion time must be positive");
    if (grid < 64) throw std::invalid_argument("grid must be >= 64 per torus dimension");

    const long cap = x.rank == 1 ? 16384 : (x.rank == 2 ? 1024 : 128);
    long n = std::min(grid, cap);
    Complex prev = torus_fourier_sum(x, p, m, t, n);
    HeatTraceResult out;
    double prev_residual = std::numeric_limits<double>::infinity();
    int growth = 0;
    while (true) {
        long next = n * 2;
        if (next > cap) {
            out.value = prev;
            out.grid_used = n;
            return out;
        }
        Complex cur = torus_fourier_sum(x, p, m, t, next);
        double residual = std::abs(cur - prev);
        out.value = cur;
        out.grid_used = next;
        out.refinement_residual = residual;
        if (residual <= std::max(1e-12, 1e-11 * std::abs(cur))) return out;
        if (residual > prev_residual * 1.5) {
            if (++growth >= 2)
                throw ConvergenceError(
                    "torus quadrature residual is not decreasing under refinement",
                    cur, residual);
        } else {
            growth = 0;
        }
        prev_residual = residual;
        prev = cur;
        n = next;
    }
}

DecayReport delocalized_betti(const LaurentComplex& x, int p,
                              const std::vector<long long>& m, double t_max,
                              long grid) {
    bool all_zero = true;
    for (long long v : m) all_zero = all_zero && v == 0;
    if (all_zero)
        throw std::invalid_argument(
            "m = 0 is the ordinary trace and outside this operation");
    if (!(t_max >= 2.0)) throw std::invalid_argument("t_max must be at least 2");

    DecayReport rep;
    for (double t = 1.0; t <= t_max * 1.0000001; t *= 2.0)
        rep.ladder.emplace_back(t, delocalized_heat_trace(x, p, m, t, grid).value);

    const int count = static_cast<int>(rep.ladder.size());
    int tail = std::min(5, count);
    // Fit both an exponential and a power-law slope over the ladder tail.
    double sxx_e = 0, sxy_e = 0, sxx_p = 0, sxy_p = 0;
    double mx_e = 0, mx_p = 0, my = 0;
    for (int i = count - tail; i < count; ++i) {
        mx_e += rep.ladder[i].first;
        mx_p += std::log(rep.ladder[i].first);
        my += std::log(std::max(std::abs(rep.ladder[i].second), 1e-300));
    }
    mx_e /= tail;
    mx_p /= tail;
    my /= tail;
    for (int i = count - tail; i < count; ++i) {
        double y = std::log(std::max(std::abs(rep.ladder[i].second), 1e-300));
        sxx_e += (rep.ladder[i].first - mx_e) * (rep.ladder[i].first - mx_e);
        sxy_e += (rep.ladder[i].first - mx_e) * (y - my);
        double lx = std::log(rep.ladder[i].first);
        sxx_p += (lx - mx_p) * (lx - mx_p);
        sxy_p += (lx - mx_p) * (y - my);
    }
    rep.exponential_rate = sxx_e > 0 ? -sxy_e / sxx_e : 0.0;
    rep.power_rate = sxx_p > 0 ? -sxy_p / sxx_p : 0.0;

    int increases = 0;
    for (int i = std::max(1, count - 3); i < count; ++i)
        if (std::abs(rep.ladder[i].second) >
            std::abs(rep.ladder[i - 1].second) * (1.0 + 1e-12))
            ++increases;
    if (increases > 0) {
        rep.anomaly = true;
        rep.extrapolated_limit = rep.ladder.back().second;
        rep.note = "trace magnitudes did not decay over the ladder tail; "
                   "no vanishing limit is claimed";
        return rep;
    }

    // Iterated Aitken extrapolation of the decaying tail; exact on geometric
    // sequences, which covers both spectral-gap and power-law decay on a
    // doubling ladder. Low Fourier classes rise toward their envelope before
    // the asymptotic regime, so the window starts after the last increase.
    int tail_start = 0;
    for (int i = 1; i < count; ++i)
        if (std::abs(rep.ladder[i].second) >
            std::abs(rep.ladder[i - 1].second) * (1.0 + 1e-12))
            tail_start = i;
    std::vector<Complex> seq;
    for (int i = std::max(tail_start, count - 7); i < count; ++i)
        seq.push_back(rep.ladder[i].second);
    while (seq.size() >= 3) {
        std::vector<Complex> next;
        for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
            Complex d1 = seq[i + 1] - seq[i];
            Complex d2 = seq[i + 2] - seq[i + 1];
            Complex denom = d2 - d1;
            if (std::abs(denom) < 1e-300)
                next.push_back(seq[i + 2]);
            else
                next.push_back(seq[i + 2] - d2 * d2 / denom);
        }
        seq = std::move(next);
    }
    rep.extrapolated_limit = seq.empty() ? rep.ladder.back().second : seq.back();
    rep.note = "ladder decayed; limit extrapolated by iterated Aitken steps";
    return rep;
}

}  // namespace deloc::heat
