#pragma once

// Small dense complex linear algebra: enough for 8x8 density operators
// (three qubits) and the 3x3 mixing matrix.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nuqrt {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(rows_ * cols_) +
                                  " entries, got " + std::to_string(data_.size()));
    }
  }

  /// Row-major nested initializer: {{a, b}, {c, d}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ComplexMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(const std::vector<Complex>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  const std::vector<Complex>& entries() const noexcept { return data_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Complex& at(std::size_t r, std::size_t c) {
    check_index(r, c);
    return data_[r * cols_ + c];
  }
  const Complex& at(std::size_t r, std::size_t c) const {
    check_index(r, c);
    return data_[r * cols_ + c];
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix out = *this;
    for (auto& z : out.data_) z = std::conj(z);
    return out;
  }

  Complex trace() const {
    require_square("trace");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest |m_ij - conj(m_ji)|.
  double hermiticity_error() const {
    require_square("hermiticity_error");
    double err = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        err = std::max(err, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return err;
  }

  bool is_hermitian(double tol = kHermitianTol) const {
    return square() && hermiticity_error() <= tol;
  }

  double max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw std::invalid_argument("max_abs_diff: shape mismatch");
    double err = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k)
      err = std::max(err, std::abs(data_[k] - other.data_[k]));
    return err;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: inner dimension mismatch");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void check_index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
      throw std::out_of_range("ComplexMatrix index (" + std::to_string(r) + "," + std::to_string(c) +
                              ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }
  void require_square(const char* what) const {
    if (!square()) throw std::invalid_argument(std::string(what) + ": matrix is not square");
  }
  void require_same_shape(const ComplexMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument(std::string("matrix ") + op + ": shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// ---------------------------------------------------------------------------
// Pauli basis and tensor products

enum class Axis { identity, x, y, z };

inline ComplexMatrix pauli(Axis axis) {
  constexpr Complex i{0.0, 1.0};
  switch (axis) {
    case Axis::x: return {{0.0, 1.0}, {1.0, 0.0}};
    case Axis::y: return {{0.0, -i}, {i, 0.0}};
    case Axis::z: return {{1.0, 0.0}, {0.0, -1.0}};
    case Axis::identity: break;
  }
  return ComplexMatrix::identity(2);
}

/// Kronecker product, left factor outermost.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Hermitian eigenproblem

struct Eigensystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

namespace detail {

inline double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

// Cyclic complex Jacobi. Each rotation first strips the phase of a_pq, then
// applies the real symmetric rotation that zeroes it.
inline Eigensystem jacobi(ComplexMatrix a) {
  const std::size_t n = a.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale = 0.0;
  for (const auto& z : a.entries()) scale += std::norm(z);
  const double stop = std::max(scale, 1e-300) * 1e-32;

  for (int sweep = 0; sweep < 100 && off_diagonal_norm2(a) > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;  // e^{i phi}

        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Rotation block acting on columns p, q:
        //   [ c            s           ]
        //   [ -s e^{-i phi}  c e^{-i phi} ]
        const Complex ph = std::conj(phase);
        const Complex r_pp = c, r_pq = s, r_qp = -s * ph, r_qq = c * ph;

        for (std::size_t k = 0; k < n; ++k) {  // A <- A R
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * r_pp + akq * r_qp;
          a(k, q) = akp * r_pq + akq * r_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- R^dagger A
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(r_pp) * apk + std::conj(r_qp) * aqk;
          a(q, k) = std::conj(r_pq) * apk + std::conj(r_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * r_pp + vkq * r_qp;
          v(k, q) = vkp * r_pq + vkq * r_qq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  Eigensystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

inline void require_hermitian(const ComplexMatrix& m, const char* who) {
  if (!m.square()) throw std::invalid_argument(std::string(who) + ": matrix is not square");
  const double err = m.hermiticity_error();
  if (err > kHermitianTol) {
    throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian (error " +
                                std::to_string(err) + ")");
  }
}

}  // namespace detail

/// Eigenvalues and orthonormal eigenvectors of a Hermitian matrix, values
/// in descending order.
inline Eigensystem hermitian_eigensystem(const ComplexMatrix& m) {
  detail::require_hermitian(m, "hermitian_eigensystem");
  return detail::jacobi(m);
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  return hermitian_eigensystem(m).values;
}

// ---------------------------------------------------------------------------
// Density operators over labelled qubits

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t qubit_count(std::size_t dim) {
  std::size_t q = 0;
  while ((std::size_t{1} << q) < dim) ++q;
  return q;
}

/// A validated density matrix on 1..3 qubits. Each qubit carries a
/// one-character label ("ABC" for the tripartite state, "AB" after tracing
/// out C, ...). Basis ordering is big-endian: the first label is the most
/// significant bit.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : DensityMatrix(std::move(m), std::string{}) {}

  DensityMatrix(ComplexMatrix m, std::string labels) : m_(std::move(m)), labels_(std::move(labels)) {
    if (!m_.square()) throw std::invalid_argument("DensityMatrix: matrix is not square");
    const std::size_t dim = m_.rows();
    if (dim != 2 && dim != 4 && dim != 8) {
      throw std::invalid_argument("DensityMatrix: dimension " + std::to_string(dim) +
                                  " is not 2, 4 or 8");
    }
    const std::size_t nq = qubit_count(dim);
    if (labels_.empty()) labels_ = std::string("ABC").substr(0, nq);
    if (labels_.size() != nq) {
      throw std::invalid_argument("DensityMatrix: " + std::to_string(nq) + " qubits but labels '" +
                                  labels_ + "'");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_.find(labels_[i], i + 1) != std::string::npos)
        throw std::invalid_argument("DensityMatrix: duplicate qubit label '" + labels_ + "'");

    detail::require_hermitian(m_, "DensityMatrix");
    const Complex tr = m_.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
      throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
    }
    eigenvalues_ = detail::jacobi(m_).values;
    if (eigenvalues_.back() < -kPsdTol) {
      throw std::invalid_argument("DensityMatrix: not positive semidefinite (eigenvalue " +
                                  std::to_string(eigenvalues_.back()) + ")");
    }
  }

  const ComplexMatrix& matrix() const noexcept { return m_; }
  const std::string& labels() const noexcept { return labels_; }
  std::size_t dim() const noexcept { return m_.rows(); }
  std::size_t qubits() const noexcept { return labels_.size(); }
  /// Spectrum computed during validation, descending.
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

  double purity() const {
    double s = 0.0;
    for (const auto& z : m_.entries()) s += std::norm(z);
    return s;
  }

 private:
  ComplexMatrix m_;
  std::string labels_;
  std::vector<double> eigenvalues_;
};

/// Traces out every qubit whose position is not in `keep` (positions are
/// 0-based, most significant first). Kept qubits stay in their original order.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& keep) {
  if (!m.square()) throw std::invalid_argument("partial_trace: matrix is not square");
  if (!is_power_of_two(m.rows()))
    throw std::invalid_argument("partial_trace: dimension " + std::to_string(m.rows()) +
                                " is not a power of two");
  if (keep.empty()) throw std::invalid_argument("partial_trace: nothing to keep");
  const std::size_t nq = qubit_count(m.rows());

  std::vector<std::size_t> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
    throw std::invalid_argument("partial_trace: duplicate qubit in keep set");
  if (kept.back() >= nq) throw std::invalid_argument("partial_trace: qubit index out of range");

  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < nq; ++q)
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);

  // Bit of qubit q inside a full index: most significant first.
  auto bit = [nq](std::size_t q) { return std::size_t{1} << (nq - 1 - q); };
  auto scatter = [&](const std::vector<std::size_t>& qs, std::size_t sub) {
    std::size_t full = 0;
    for (std::size_t k = 0; k < qs.size(); ++k)
      if (sub & (std::size_t{1} << (qs.size() - 1 - k))) full |= bit(qs[k]);
    return full;
  };

  const std::size_t kd = std::size_t{1} << kept.size();
  const std::size_t td = std::size_t{1} << traced.size();
  ComplexMatrix out(kd, kd);
  for (std::size_t r = 0; r < kd; ++r)
    for (std::size_t c = 0; c < kd; ++c) {
      Complex s = 0.0;
      const std::size_t rf = scatter(kept, r), cf = scatter(kept, c);
      for (std::size_t t = 0; t < td; ++t) {
        const std::size_t tf = scatter(traced, t);
        s += m(rf | tf, cf | tf);
      }
      out(r, c) = s;
    }
  return out;
}

/// Reduced state on the qubits named in `keep` (e.g. "AB").
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::string_view keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: nothing to keep");
  std::vector<std::size_t> positions;
  for (char label : keep) {
    const auto pos = rho.labels().find(label);
    if (pos == std::string::npos)
      throw std::invalid_argument(std::string("partial_trace: no qubit labelled '") + label + "'");
    positions.push_back(pos);
  }
  std::sort(positions.begin(), positions.end());
  std::string labels;
  for (auto p : positions) labels += rho.labels()[p];
  return DensityMatrix(partial_trace(rho.matrix(), positions), labels);
}

// ---------------------------------------------------------------------------
// Entropy

inline constexpr double kZeroProbability = 1e-15;

/// -sum p log2 p with 0 log 0 = 0.
inline double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > kZeroProbability) h -= x * std::log2(x);
  return h;
}

/// Entropy in bits.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  return std::max(0.0, shannon_entropy(rho.eigenvalues()));
}

}  // namespace nuqrt
