# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-pixel kernels.

Numerically identical to the numpy fallback in ``_pure``: same evaluation
order, rint rounding, clamp before the uint8 cast.  Compiled with
-ffp-contract=off so no FMA fusion changes the rounding.
"""

from libc.math cimport rint


cdef inline unsigned char _clamp_u8(double v) noexcept nogil:
    if v < 0.0:
        return 0
    if v > 255.0:
        return 255
    return <unsigned char> v


def compose_clean(const double[:, ::1] base, unsigned char[:, :, ::1] out):
    cdef Py_ssize_t lines = out.shape[0]
    cdef Py_ssize_t width = out.shape[1]
    cdef Py_ssize_t l, c, ch
    cdef unsigned char px[3]
    with nogil:
        for l in range(lines):
            for ch in range(3):
                px[ch] = _clamp_u8(rint(base[l, ch]))
            for c in range(width):
                for ch in range(3):
                    out[l, c, ch] = px[ch]


def compose_noisy(const double[:, ::1] base, const double[:, :, ::1] noise,
                  unsigned char[:, :, ::1] out):
    cdef Py_ssize_t lines = out.shape[0]
    cdef Py_ssize_t width = out.shape[1]
    cdef Py_ssize_t l, c, ch
    with nogil:
        for l in range(lines):
            for c in range(width):
                for ch in range(3):
                    out[l, c, ch] = _clamp_u8(rint(base[l, ch] + noise[l, c, ch]))


def luma_u8(const unsigned char[:, :, ::1] pixels, unsigned char[:, ::1] out):
    cdef Py_ssize_t lines = pixels.shape[0]
    cdef Py_ssize_t width = pixels.shape[1]
    cdef Py_ssize_t l, c
    cdef double v
    with nogil:
        for l in range(lines):
            for c in range(width):
                v = (0.299 * pixels[l, c, 0] + 0.587 * pixels[l, c, 1]) \
                    + 0.114 * pixels[l, c, 2]
                out[l, c] = _clamp_u8(rint(v))


def line_sums(const unsigned char[:, ::1] luma, long long[::1] out):
    cdef Py_ssize_t lines = luma.shape[0]
    cdef Py_ssize_t width = luma.shape[1]
    cdef Py_ssize_t l, c
    cdef long long s
    with nogil:
        for l in range(lines):
            s = 0
            for c in range(width):
                s += luma[l, c]
            out[l] = s


def lut_u8(const unsigned char[:, :, ::1] pixels, const unsigned char[::1] lut,
           unsigned char[:, :, ::1] out):
    cdef Py_ssize_t lines = pixels.shape[0]
    cdef Py_ssize_t width = pixels.shape[1]
    cdef Py_ssize_t l, c, ch
    with nogil:
        for l in range(lines):
            for c in range(width):
                for ch in range(3):
                    out[l, c, ch] = lut[pixels[l, c, ch]]
