#ifndef FHLAB_IO_HPP
#define FHLAB_IO_HPP

#include <complex>
#include <string>

namespace fhlab::io {

// Locale-independent decimal text with 17 significant digits (round-trip safe).
std::string fmt(double v);
std::string fmt(std::complex<double> v);  // "re,im" pair for CSV columns

// Write via a temporary file and rename, so readers never observe a partial file.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace fhlab::io

#endif
