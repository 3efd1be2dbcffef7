#pragma once

// Complex-valued state on a GridSpec, tagged physical or spectral.
// Fields are values: operations elsewhere return new fields and never
// mutate their inputs, so sweeps can share them across threads freely.
//
// Storage is a 64-byte-aligned buffer that can be left uninitialized when
// the caller writes every element (std::vector would zero-fill, a full
// memory pass wasted on the large 3-d grids). The alignment also lets the
// FFT layer use SIMD-enabled plans on every field.

#include <complex>
#include <cstring>
#include <new>

#include "nlse/errors.hpp"
#include "nlse/grid.hpp"

namespace nlse {

enum class Representation { physical, spectral };

struct UninitializedTag {};
inline constexpr UninitializedTag uninitialized{};

namespace detail {

class AlignedBuffer {
  public:
    using value_type = std::complex<double>;
    static constexpr std::size_t kAlignment = 64;

    AlignedBuffer() = default;
    explicit AlignedBuffer(std::size_t n) : size_(n), data_(allocate(n)) {}

    AlignedBuffer(const AlignedBuffer& other) : size_(other.size_), data_(allocate(other.size_)) {
        std::memcpy(data_, other.data_, size_ * sizeof(value_type));
    }
    AlignedBuffer(AlignedBuffer&& other) noexcept : size_(other.size_), data_(other.data_) {
        other.size_ = 0;
        other.data_ = nullptr;
    }
    AlignedBuffer& operator=(const AlignedBuffer& other) {
        if (this != &other) {
            if (size_ != other.size_) {
                release();
                size_ = other.size_;
                data_ = allocate(size_);
            }
            std::memcpy(data_, other.data_, size_ * sizeof(value_type));
        }
        return *this;
    }
    AlignedBuffer& operator=(AlignedBuffer&& other) noexcept {
        if (this != &other) {
            release();
            size_ = other.size_;
            data_ = other.data_;
            other.size_ = 0;
            other.data_ = nullptr;
        }
        return *this;
    }
    ~AlignedBuffer() { release(); }

    std::size_t size() const { return size_; }
    value_type* data() { return data_; }
    const value_type* data() const { return data_; }
    value_type& operator[](std::size_t i) { return data_[i]; }
    const value_type& operator[](std::size_t i) const { return data_[i]; }
    value_type* begin() { return data_; }
    value_type* end() { return data_ + size_; }
    const value_type* begin() const { return data_; }
    const value_type* end() const { return data_ + size_; }

  private:
    static value_type* allocate(std::size_t n) {
        if (n == 0) return nullptr;
        return static_cast<value_type*>(
            ::operator new(n * sizeof(value_type), std::align_val_t(kAlignment)));
    }
    void release() {
        if (data_) ::operator delete(data_, std::align_val_t(kAlignment));
        data_ = nullptr;
    }

    std::size_t size_ = 0;
    value_type* data_ = nullptr;
};

} // namespace detail

class Field {
  public:
    using value_type = std::complex<double>;
    using storage_type = detail::AlignedBuffer;

    Field(GridSpec grid, Representation rep)
        : grid_(grid), rep_(rep), values_(grid.point_count()) {
        std::memset(values_.data(), 0, values_.size() * sizeof(value_type));
    }

    // Storage left uninitialized: the caller must write every element.
    Field(GridSpec grid, Representation rep, UninitializedTag)
        : grid_(grid), rep_(rep), values_(grid.point_count()) {}

    const GridSpec& grid() const { return grid_; }
    Representation representation() const { return rep_; }
    bool is_physical() const { return rep_ == Representation::physical; }
    bool is_spectral() const { return rep_ == Representation::spectral; }

    std::size_t size() const { return values_.size(); }
    const storage_type& values() const { return values_; }
    storage_type& values() { return values_; }
    const value_type& operator[](std::size_t i) const { return values_[i]; }
    value_type& operator[](std::size_t i) { return values_[i]; }

    void require(Representation rep, const char* what) const {
        if (rep_ != rep) throw RepresentationError(what);
    }

  private:
    GridSpec grid_;
    Representation rep_;
    storage_type values_;
};

inline void check_same_grid(const Field& a, const Field& b, const char* what) {
    if (a.grid() != b.grid()) throw DomainError(std::string(what) + ": grid mismatch");
}

inline Field operator+(const Field& a, const Field& b) {
    check_same_grid(a, b, "Field::operator+");
    if (a.representation() != b.representation())
        throw RepresentationError("Field::operator+: representation mismatch");
    Field out(a.grid(), a.representation(), uninitialized);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline Field operator-(const Field& a, const Field& b) {
    check_same_grid(a, b, "Field::operator-");
    if (a.representation() != b.representation())
        throw RepresentationError("Field::operator-: representation mismatch");
    Field out(a.grid(), a.representation(), uninitialized);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline Field operator*(std::complex<double> c, const Field& f) {
    Field out(f.grid(), f.representation(), uninitialized);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * f[i];
    return out;
}

} // namespace nlse
